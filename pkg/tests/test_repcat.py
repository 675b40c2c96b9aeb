import random
from collections import Counter
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gl11 import repcat as rc
from gl11 import uqalgebra as uq
from gl11.repcat import (
    ALPHA,
    EPS1,
    EPS2,
    EquivariantMap,
    Factor,
    L,
    Ldual,
    Matrix,
    ModuleObject,
    Weight,
    WeightError,
    act_element,
    act_generator,
    character,
    check_equivariance,
    r_check,
    r_check_inverse,
    ribbon_v,
    triv,
    u_action,
    upsilon,
)
from gl11.scalar import LaurentPoly, quantum_int, rf

q = rf(LaurentPoly.monomial(1))
QQ = q - q ** -1

WEIGHTS = [EPS1, Weight(2, 0), Weight(1, 1), Weight(0, 1), Weight(-3, 1), Weight(2, -1), Weight(1, -2), Weight(3, 2)]
PAIRS = [(EPS1, EPS1), (Weight(2, 0), Weight(1, 1)), (Weight(-3, 1), Weight(0, 1)), (Weight(2, 1), Weight(1, -2)),
         (Weight(1, 1), EPS1), (Weight(3, -1), Weight(-1, 2))]

p_prime = st.tuples(st.integers(-3, 3), st.integers(-3, 3)).filter(lambda t: t[0] + t[1] != 0).map(lambda t: Weight(*t))


def vec(module, coords):
    """Column matrix from {basis tuple: coefficient}."""
    return Matrix.from_entries(module.dim, 1, {(module.to_index(t), 0): c for t, c in coords.items()})


# --- weights -------------------------------------------------------------------


def test_weight_arithmetic():
    lam = Weight(2, -3)
    assert lam.pair(1, 1) == -1
    assert lam.form(Weight(1, 1)) == 2 + 3
    assert lam.parity == 1
    assert EPS1.form(EPS1) == 1 and EPS2.form(EPS2) == -1 and EPS1.form(EPS2) == 0
    assert ALPHA == EPS1 - EPS2
    assert not Weight(1, -1).in_p_prime()
    with pytest.raises(WeightError):
        Factor.simple(Weight(2, -2))
    with pytest.raises(WeightError):
        Factor.triv(EPS1)


# --- actions -------------------------------------------------------------------


def test_generator_action_examples():
    f = act_generator("F", L(EPS1))
    assert f == Matrix.from_entries(2, 2, {(1, 0): 1})
    e = act_generator("E", Ldual(EPS1))
    assert e == Matrix.from_entries(2, 2, {(1, 0): -q})
    lam = Weight(3, -3)
    assert act_generator((2, 1), triv(lam)) == Matrix.diagonal([q ** 3])
    assert act_generator("E", triv(lam)).is_zero()
    assert act_generator("F", triv(lam)).is_zero()


def test_simple_module_table():
    for lam in WEIGHTS:
        V = L(lam)
        assert act_generator("E", V) == Matrix.from_entries(2, 2, {(0, 1): 1})
        assert act_generator("F", V) == Matrix.from_entries(2, 2, {(1, 0): quantum_int(lam.k)})
        assert act_generator("K", V) == Matrix.diagonal([q ** lam.k] * 2)


def _oracle_two_factor(g, V, W):
    """Hand expansion of Δ(g) on V ⊗ W with the sign (-1)^{|x2||v|}."""
    ev, ew = act_generator("E", V), act_generator("E", W)
    fv, fw = act_generator("F", V), act_generator("F", W)
    kw = act_generator((-1, -1), W)
    kv = act_generator("K", V)
    out = {}
    for i in range(V.dim):
        for j in range(W.dim):
            sign = -1 if V.parity_of(i) else 1
            col = {}

            def add(a, b, c):
                key = a * W.dim + b
                col[key] = col.get(key, rf(0)) + c

            if g == "E":
                for (a, c1) in ev.column(i).items():
                    for (b, c2) in kw.column(j).items():
                        add(a, b, c1 * c2)
                for (b, c2) in ew.column(j).items():
                    add(i, b, c2 * sign)
            else:
                for (a, c1) in fv.column(i).items():
                    add(a, j, c1)
                for (a, c1) in kv.column(i).items():
                    for (b, c2) in fw.column(j).items():
                        add(a, b, c1 * c2 * sign)
            for r, c in col.items():
                out[(r, i * W.dim + j)] = c
    return Matrix.from_entries(V.dim * W.dim, V.dim * W.dim, out)


@pytest.mark.parametrize("a,b", PAIRS)
def test_tensor_action_matches_hand_expansion(a, b):
    for V, W in [(L(a), L(b)), (Ldual(a), L(b)), (L(a), Ldual(b))]:
        for g in "EF":
            assert act_generator(g, V @ W) == _oracle_two_factor(g, V, W)


@st.composite
def words(draw):
    n = draw(st.integers(1, 3))
    fs = []
    for _ in range(n):
        lam = draw(p_prime)
        fs.append(Factor.simple(lam) if draw(st.booleans()) else Factor.dual(lam))
    return ModuleObject(tuple(fs))


@given(words(), st.integers(0, 10 ** 6), st.integers(0, 10 ** 6))
@settings(max_examples=25, deadline=None)
def test_action_is_a_representation(V, s1, s2):
    x = uq.random_element(random.Random(s1), max_terms=2, bound=2)
    y = uq.random_element(random.Random(s2), max_terms=2, bound=2)
    assert act_element(x * y, V) == act_element(x, V) @ act_element(y, V)


@given(words())
@settings(max_examples=25, deadline=None)
def test_defining_relations_on_tensor_words(V):
    e, f = act_generator("E", V), act_generator("F", V)
    k, kinv = act_generator("K", V), act_generator((-1, -1), V)
    assert (e @ e).is_zero() and (f @ f).is_zero()
    assert e @ f + f @ e == (k - kinv).scale(QQ.inv())


# --- Υ and Ř --------------------------------------------------------------------


def test_upsilon_entries():
    u = upsilon(L(EPS1), L(EPS1))
    assert u.get(0, 0) == q
    assert u.get(1, 1) == rf(1)
    assert u.get(2, 2) == rf(1)
    assert u.get(3, 3) == q ** -1
    assert not check_equivariance(EquivariantMap(L(EPS1) @ L(EPS1), L(EPS1) @ L(EPS1), u))


def test_r_check_on_vector_representation():
    R = r_check(L(EPS1), L(EPS1)).matrix
    assert R.get(0, 0) == q
    assert R.column(1) == {1: QQ, 2: rf(1)}
    assert check_equivariance(r_check(L(EPS1), L(EPS1)))


def test_r_inverse_reproduces_explicit_vector_table():
    Ri = r_check_inverse(EPS1, EPS1).matrix
    # basis order v0v0, v0v1, v1v0, v1v1
    expected = Matrix.from_entries(
        4,
        4,
        {(0, 0): q ** -1, (2, 1): 1, (1, 2): 1, (2, 2): q ** -1 - q, (3, 3): -q},
    )
    assert Ri == expected


def test_r_inverse_highest_weight_entry():
    for lam, mu in PAIRS:
        sign = -1 if lam.parity * mu.parity else 1
        assert r_check_inverse(lam, mu).matrix.get(0, 0) == q ** (-mu.form(lam)) * sign


@pytest.mark.parametrize("lam,mu", PAIRS + [(Weight(2, 0), Weight(1, -2))])
def test_explicit_inverse_matches_generic_inverse(lam, mu):
    V, W = L(lam), L(mu)
    explicit = r_check_inverse(lam, mu)
    assert explicit == rc.r_check_inverse_generic(V, W)
    assert explicit.matrix == r_check(W, V).matrix.inverse()
    assert (r_check(W, V).matrix @ explicit.matrix) == Matrix.identity(4)
    assert check_equivariance(explicit)
    assert explicit.is_even()


def test_r_inverse_rejects_weights_outside_p_prime():
    with pytest.raises(WeightError):
        r_check_inverse(Weight(1, -1), EPS1)


@given(p_prime, p_prime)
@settings(max_examples=25, deadline=None)
def test_braiding_is_equivariant(lam, mu):
    for V, W in [(L(lam), L(mu)), (Ldual(lam), L(mu)), (L(lam), Ldual(mu)), (Ldual(lam), Ldual(mu))]:
        f = r_check(V, W)
        assert check_equivariance(f)
        assert f.is_even()
        assert rc.r_check_inverse_generic(W, V).matrix @ f.matrix == Matrix.identity(4)


def _braid_relation(a, b, c):
    A, B, C = L(a), L(b), L(c)
    I = lambda M: Matrix.identity(M.dim)  # noqa: E731
    lhs = r_check(B, C).matrix.kron(I(A)) @ I(B).kron(r_check(A, C).matrix) @ r_check(A, B).matrix.kron(I(C))
    rhs = I(C).kron(r_check(A, B).matrix) @ r_check(A, C).matrix.kron(I(B)) @ I(A).kron(r_check(B, C).matrix)
    return lhs == rhs


def test_yang_baxter_vector_representation():
    assert _braid_relation(EPS1, EPS1, EPS1)


@pytest.mark.parametrize("a,b,c", [(Weight(2, 0), Weight(1, 1), Weight(-1, 3)), (Weight(3, -1), EPS1, Weight(0, 1))])
def test_yang_baxter_mixed_labels(a, b, c):
    assert _braid_relation(a, b, c)


def test_quadratic_relations():
    R = r_check(L(EPS1), L(EPS1)).matrix
    Ri = r_check_inverse(EPS1, EPS1).matrix
    I = Matrix.identity(4)
    assert Ri @ Ri == Ri.scale(q ** -1 - q) + I
    assert R == Ri + I.scale(QQ)


# --- ribbon operators --------------------------------------------------------


def test_v_on_vector_representation_and_dual():
    assert ribbon_v(L(EPS1)) == EquivariantMap.identity(L(EPS1))
    assert ribbon_v(Ldual(EPS1)) == EquivariantMap.identity(Ldual(EPS1))


@pytest.mark.parametrize("lam", WEIGHTS)
def test_v_scalar_on_simple_modules(lam):
    c = ribbon_v(L(lam)).scalar()
    assert c == q ** (lam.k + lam.lam2 ** 2 - lam.lam1 ** 2)
    # S(v) = v: the dual carries the same scalar
    assert ribbon_v(Ldual(lam)).scalar() == c


def test_v_examples():
    assert ribbon_v(L(Weight(2, 0))).scalar() == q ** -2
    assert ribbon_v(L(Weight(1, 1))).scalar() == q ** 2


def test_u_examples():
    assert u_action(L(EPS1)).scalar() == q
    lam = Weight(1, -2)
    assert rc.u_v_inverse(L(lam)) == rc.k_action(L(lam))
    for lam in [Weight(3, -3), Weight(-2, 2), Weight(0, 0)]:
        assert u_action(triv(lam)).scalar() == rf(1)


@pytest.mark.parametrize("lam", WEIGHTS)
def test_ribbon_identities_on_simple_modules(lam):
    V = L(lam)
    u, v, k = u_action(V).matrix, ribbon_v(V).matrix, rc.k_action(V).matrix
    s_u = rc.antipode_u_action(V).matrix
    kinv2 = rc.k_action(V, -2).matrix
    assert s_u == u @ kinv2
    assert v @ v == u @ s_u
    assert u @ v.inverse() == k
    assert check_equivariance(ribbon_v(V))


@pytest.mark.parametrize("a,b", PAIRS)
def test_coproduct_of_v(a, b):
    V, W = L(a), L(b)
    dv = ribbon_v(V @ W).matrix
    monodromy = r_check(W, V).matrix @ r_check(V, W).matrix
    assert dv == monodromy.inverse() @ ribbon_v(V).matrix.kron(ribbon_v(W).matrix)
    assert check_equivariance(ribbon_v(V @ W))


def test_v_on_trivial_module_is_one():
    assert ribbon_v(triv()).scalar() == rf(1)


# --- evaluation and coevaluation --------------------------------------------


def test_pairing_examples():
    ev = rc.ev(EPS1).matrix
    assert ev.get(0, 0) == rf(1)  # v0* ⊗ v0
    assert ev.get(0, 1) == rf(0)  # v0* ⊗ v1
    coev = rc.coev(EPS1).matrix
    assert coev.column(0) == {0: rf(1), 3: rf(1)}
    assert rc.ev_hat(EPS1).matrix.get(0, 3) == rf(-1)


@pytest.mark.parametrize("lam", WEIGHTS)
def test_pairings_are_equivariant_and_even(lam):
    for f in (rc.ev, rc.ev_hat, rc.coev, rc.coev_hat):
        m = f(lam)
        assert check_equivariance(m)
        assert m.is_even()


def test_pairings_reject_weights_outside_p_prime():
    for f in (rc.ev, rc.ev_hat, rc.coev, rc.coev_hat):
        with pytest.raises(WeightError):
            f(Weight(2, -2))


@pytest.mark.parametrize("lam", WEIGHTS)
def test_duality_isomorphism(lam):
    f = rc.dual_iso(lam)
    assert check_equivariance(f)
    assert f.matrix.inverse() is not None


@pytest.mark.parametrize("lam", WEIGHTS)
def test_circle_has_zero_value(lam):
    assert rc.circle_value(lam) == rf(0)


def test_identity_is_equivariant():
    for V in [L(EPS1), Ldual(Weight(2, 1)) @ L(EPS1), triv()]:
        assert check_equivariance(EquivariantMap.identity(V))


# --- characters ----------------------------------------------------------------


def test_character_examples():
    assert character(L(EPS1)) == Counter({(EPS1, 0): 1, (EPS2, 1): 1})
    c2 = character(L(EPS1) @ L(EPS1))
    assert sum(c2.values()) == 4
    weights = Counter()
    for (w, _), n in c2.items():
        weights[w] += n
    assert weights == Counter({Weight(2, 0): 1, Weight(1, 1): 2, Weight(0, 2): 1})
    assert character(triv()) == Counter({(Weight(0, 0), 0): 1})


def _power(factor, n):
    return ModuleObject((factor,) * n)


@pytest.mark.parametrize("m", range(1, 7))
def test_tensor_powers_decompose(m):
    V = _power(Factor.simple(EPS1), m)
    parts = [(comb(m - 1, l), L(m * EPS1 - l * ALPHA)) for l in range(m)]
    assert character(V) == rc.character_sum(parts)


MIXED = [(m, n) for m in range(5) for n in range(5) if m != n and m + n > 0]


@pytest.mark.parametrize("m,n", MIXED)
def test_mixed_tensor_products_decompose(m, n):
    V = ModuleObject((Factor.simple(EPS1),) * m + (Factor.dual(EPS1),) * n)
    top = Weight(m, -n)
    parts = [(comb(m + n - 1, l), L(top - l * ALPHA)) for l in range(m + n)]
    assert character(V) == rc.character_sum(parts)


def test_balanced_mixed_tensor_product_n1():
    V = L(EPS1) @ Ldual(EPS1)
    assert character(V) == character(L(EPS1) @ L(-EPS2))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_balanced_mixed_tensor_products(n):
    # 2^(2n-2) copies of L(ε1) ⊗ L(ε1)*, each shifted by a one-dimensional module
    V = ModuleObject((Factor.simple(EPS1),) * n + (Factor.dual(EPS1),) * n)
    block = L(EPS1) @ Ldual(EPS1)
    parts = [(comb(2 * n - 2, l), block @ triv((n - 1 - l) * ALPHA)) for l in range(2 * n - 1)]
    assert character(V) == rc.character_sum(parts)
    assert sum(mult for mult, _ in parts) == 2 ** (2 * n - 2)


@pytest.mark.parametrize("n", [2, 3])
def test_balanced_product_is_not_a_plain_multiple(n):
    # the weight nα occurs in V but never in L(ε1) ⊗ L(ε1)*
    V = ModuleObject((Factor.simple(EPS1),) * n + (Factor.dual(EPS1),) * n)
    plain = rc.character_sum([(2 ** (2 * n - 2), L(EPS1) @ Ldual(EPS1))])
    assert character(V) != plain
    assert any(w == n * ALPHA for (w, _) in character(V))


# --- tensor products of two simple modules -------------------------------------


def _e_on(V, t):
    return act_generator("E", V) @ vec(V, {t: 1})


def _f_on(V, t):
    return act_generator("F", V) @ vec(V, {t: 1})


@pytest.mark.parametrize("lam,mu", [p for p in PAIRS if (p[0] + p[1]).in_p_prime()])
def test_two_simple_summands(lam, mu):
    V = L(lam) @ L(mu)
    sign = -1 if lam.parity else 1
    e11 = _e_on(V, (1, 1))
    f00 = _f_on(V, (0, 0))
    assert e11 == vec(V, {(0, 1): q ** (-mu.k), (1, 0): -sign})
    assert f00 == vec(V, {(1, 0): quantum_int(lam.k), (0, 1): rf(quantum_int(mu.k)) * q ** lam.k * sign})
    # the four vectors are a basis
    basis = Matrix.from_entries(4, 4, {})
    cols = [vec(V, {(0, 0): 1}), f00, e11, vec(V, {(1, 1): 1})]
    entries = {(r, c): v for c, col in enumerate(cols) for (r, _), v in col.entries.items()}
    basis = Matrix.from_entries(4, 4, entries)
    basis.inverse()
    # embeddings of L(λ+μ) and L(λ+μ-α)
    nu = lam + mu
    top = EquivariantMap(L(nu), V, Matrix.from_entries(4, 2, {**{(r, 0): v for (r, _), v in vec(V, {(0, 0): 1}).entries.items()},
                                                              **{(r, 1): v / rf(quantum_int(nu.k)) for (r, _), v in f00.entries.items()}}))
    low = EquivariantMap(L(nu - ALPHA), V, Matrix.from_entries(4, 2, {**{(r, 0): v for (r, _), v in e11.entries.items()},
                                                                     (3, 1): 1}))
    assert check_equivariance(top)
    assert check_equivariance(low)
    assert character(V) == character(L(nu)) + character(L(nu - ALPHA))


@pytest.mark.parametrize("lam,mu", [(EPS1, Weight(-2, 1)), (Weight(2, 1), Weight(-1, -2)), (Weight(0, 1), Weight(1, -2))])
def test_non_generic_tensor_product(lam, mu):
    assert not (lam + mu).in_p_prime()
    V = L(lam) @ L(mu)
    sign = -1 if lam.parity else 1
    f00, e11 = _f_on(V, (0, 0)), _e_on(V, (1, 1))
    assert f00 == e11.scale(rf(quantum_int(lam.k)) * (-sign))
    # F(v0 ⊗ v0) spans a one-dimensional submodule
    assert (act_generator("E", V) @ f00).is_zero()
    assert (act_generator("F", V) @ f00).is_zero()
    # the character only depends on the weight sum
    other = L(lam + Weight(1, 0)) @ L(mu - Weight(1, 0))
    assert character(V) == character(other)


@pytest.mark.parametrize(
    "lam,mu,nu",
    [(EPS1, EPS1, EPS1), (Weight(2, 1), Weight(-1, 3), Weight(0, 1)), (Weight(3, -1), Weight(1, 1), Weight(-2, -1))],
)
def test_coproduct_of_theta_as_operators(lam, mu, nu):
    assert rc.theta_coproduct_identities(L(lam), L(mu), L(nu)) == (True, True)


def test_matrix_dump_format():
    m = Matrix.from_entries(2, 2, {(0, 1): q, (1, 0): -1})
    assert m.dump() == "0 1 q\n1 0 -1"


def test_composition_is_associative():
    mats = [r_check(L(EPS1), L(EPS1)).matrix, r_check_inverse(EPS1, EPS1).matrix, upsilon(L(EPS1), L(EPS1))]
    a, b, c = mats
    assert (a @ b) @ c == a @ (b @ c)


@pytest.mark.parametrize("a,b", PAIRS[:4])
def test_upsilon_intertwines_coproducts(a, b):
    V, W = L(a), L(b)
    ups = upsilon(V, W)
    for x in [uq.E, uq.F, uq.qh(1, 0), uq.qh(0, 1)] + uq.random_elements(5, seed=5):
        lhs = ups @ rc.act_tensor(uq.coproduct(x), (V, W))
        rhs = rc.act_tensor(uq.coproduct_op_bar(x), (V, W)) @ ups
        assert lhs == rhs
