"""Finite-dimensional weight representations of U_q(gl(1|1)).

A :class:`ModuleObject` is an ordered tensor word of factors ``L(λ)``,
``L(λ)*`` and ``C(q)_λ``; its basis is the lexicographic product of the
factor bases (leftmost factor most significant).  Operators are sparse exact
:class:`Matrix` objects; morphisms between modules are :class:`EquivariantMap`.
"""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product
from typing import Iterable, Iterator, Mapping

from . import uqalgebra as uq
from .scalar import LaurentPoly, RationalFunction, quantum_int, rf

ZERO = rf(0)
ONE = rf(1)


def qpow(n: int) -> RationalFunction:
    return RationalFunction._raw(LaurentPoly.monomial(n), LaurentPoly.const(1))


# ---------------------------------------------------------------------------
# weights


@dataclass(frozen=True, order=True)
class Weight:
    """``lam1 * eps1 + lam2 * eps2``."""

    lam1: int
    lam2: int

    def pair(self, c1: int, c2: int) -> int:
        """``<c1 h1 + c2 h2, λ>``."""
        return c1 * self.lam1 + c2 * self.lam2

    def form(self, other: "Weight") -> int:
        """Bilinear form with ``(eps1, eps1) = 1``, ``(eps2, eps2) = -1``."""
        return self.lam1 * other.lam1 - self.lam2 * other.lam2

    @property
    def parity(self) -> int:
        return self.lam2 % 2

    @property
    def k(self) -> int:
        """``<h1 + h2, λ>``; ``q^λ = q^k`` and ``[λ] = [k]``."""
        return self.lam1 + self.lam2

    def in_p_prime(self) -> bool:
        return self.k != 0

    def __add__(self, other: "Weight") -> "Weight":
        return Weight(self.lam1 + other.lam1, self.lam2 + other.lam2)

    def __sub__(self, other: "Weight") -> "Weight":
        return Weight(self.lam1 - other.lam1, self.lam2 - other.lam2)

    def __neg__(self) -> "Weight":
        return Weight(-self.lam1, -self.lam2)

    def __rmul__(self, n: int) -> "Weight":
        return Weight(n * self.lam1, n * self.lam2)

    def __str__(self):
        return f"({self.lam1},{self.lam2})"


ALPHA = Weight(1, -1)
EPS1 = Weight(1, 0)
EPS2 = Weight(0, 1)
ZERO_WEIGHT = Weight(0, 0)


class WeightError(ValueError):
    pass


def require_p_prime(lam: Weight) -> None:
    if not lam.in_p_prime():
        raise WeightError(f"weight {lam} is not in P' (lam1 + lam2 must be nonzero)")


# ---------------------------------------------------------------------------
# factors and tensor words


@dataclass(frozen=True)
class Factor:
    kind: str  # "simple", "dual" or "triv"
    weight: Weight

    @classmethod
    def simple(cls, lam: Weight) -> "Factor":
        require_p_prime(lam)
        return cls("simple", lam)

    @classmethod
    def dual(cls, lam: Weight) -> "Factor":
        require_p_prime(lam)
        return cls("dual", lam)

    @classmethod
    def triv(cls, lam: Weight = ZERO_WEIGHT) -> "Factor":
        if lam.in_p_prime():
            raise WeightError(f"C(q)_λ needs lam1 + lam2 = 0, got {lam}")
        return cls("triv", lam)

    @property
    def dim(self) -> int:
        return 1 if self.kind == "triv" else 2

    @property
    def basis_weights(self) -> tuple[Weight, ...]:
        lam = self.weight
        if self.kind == "simple":
            return (lam, lam - ALPHA)
        if self.kind == "dual":
            return (-lam, -(lam - ALPHA))
        return (lam,)

    @property
    def basis_parities(self) -> tuple[int, ...]:
        p = self.weight.parity
        return (p,) if self.kind == "triv" else (p, (p + 1) % 2)

    def __str__(self):
        if self.kind == "simple":
            return f"L{self.weight}"
        if self.kind == "dual":
            return f"L{self.weight}*"
        return f"C{self.weight}"


@dataclass(frozen=True)
class ModuleObject:
    factors: tuple[Factor, ...] = ()
    _dims: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        object.__setattr__(self, "factors", tuple(self.factors))
        object.__setattr__(self, "_dims", tuple(f.dim for f in self.factors))

    @classmethod
    def of(cls, *factors: Factor) -> "ModuleObject":
        return cls(tuple(factors))

    @property
    def dim(self) -> int:
        d = 1
        for x in self._dims:
            d *= x
        return d

    def __len__(self):
        return len(self.factors)

    def tensor(self, other: "ModuleObject") -> "ModuleObject":
        return ModuleObject(self.factors + other.factors)

    __matmul__ = tensor

    def index_tuples(self) -> Iterator[tuple[int, ...]]:
        return product(*(range(d) for d in self._dims))

    def to_index(self, t: tuple[int, ...]) -> int:
        i = 0
        for d, x in zip(self._dims, t):
            i = i * d + x
        return i

    def to_tuple(self, i: int) -> tuple[int, ...]:
        out = []
        for d in reversed(self._dims):
            i, r = divmod(i, d)
            out.append(r)
        return tuple(reversed(out))

    def weight_of(self, i: int) -> Weight:
        w = ZERO_WEIGHT
        for f, x in zip(self.factors, self.to_tuple(i)):
            w = w + f.basis_weights[x]
        return w

    def parity_of(self, i: int) -> int:
        return sum(f.basis_parities[x] for f, x in zip(self.factors, self.to_tuple(i))) % 2

    def __str__(self):
        return " ⊗ ".join(str(f) for f in self.factors) or "C"


def L(lam: Weight) -> ModuleObject:
    return ModuleObject.of(Factor.simple(lam))


def Ldual(lam: Weight) -> ModuleObject:
    return ModuleObject.of(Factor.dual(lam))


def triv(lam: Weight = ZERO_WEIGHT) -> ModuleObject:
    return ModuleObject.of(Factor.triv(lam))


UNIT_MODULE = ModuleObject()


# ---------------------------------------------------------------------------
# sparse exact matrices


class Matrix:
    """Sparse matrix with RationalFunction entries, stored column-major."""

    __slots__ = ("nrows", "ncols", "cols")

    def __init__(self, nrows: int, ncols: int, cols: Mapping[int, Mapping[int, object]] | None = None):
        self.nrows, self.ncols = nrows, ncols
        self.cols: dict[int, dict[int, RationalFunction]] = {}
        for c, col in (cols or {}).items():
            clean = {r: rf(v) for r, v in col.items() if not rf(v).is_zero()}
            if clean:
                self.cols[c] = clean

    @classmethod
    def _raw(cls, nrows, ncols, cols) -> "Matrix":
        m = cls.__new__(cls)
        m.nrows, m.ncols, m.cols = nrows, ncols, cols
        return m

    @classmethod
    def from_entries(cls, nrows: int, ncols: int, entries: Mapping[tuple[int, int], object]) -> "Matrix":
        cols: dict[int, dict[int, object]] = {}
        for (r, c), v in entries.items():
            cols.setdefault(c, {})[r] = v
        return cls(nrows, ncols, cols)

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(n, n, {i: {i: ONE} for i in range(n)})

    @classmethod
    def zero(cls, nrows: int, ncols: int) -> "Matrix":
        return cls._raw(nrows, ncols, {})

    @classmethod
    def diagonal(cls, values: Iterable) -> "Matrix":
        vals = [rf(v) for v in values]
        return cls._raw(len(vals), len(vals), {i: {i: v} for i, v in enumerate(vals) if not v.is_zero()})

    @property
    def entries(self) -> dict[tuple[int, int], RationalFunction]:
        return {(r, c): v for c, col in self.cols.items() for r, v in col.items()}

    def get(self, r: int, c: int) -> RationalFunction:
        return self.cols.get(c, {}).get(r, ZERO)

    def column(self, c: int) -> dict[int, RationalFunction]:
        return dict(self.cols.get(c, {}))

    def __matmul__(self, other: "Matrix") -> "Matrix":
        """Composition: ``(self @ other)(x) = self(other(x))``."""
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        cols = {}
        for c, col in other.cols.items():
            acc: dict[int, RationalFunction] = {}
            for k, v in col.items():
                for r, w in self.cols.get(k, {}).items():
                    s = acc.get(r)
                    acc[r] = w * v if s is None else s + w * v
            acc = {r: v for r, v in acc.items() if not v.is_zero()}
            if acc:
                cols[c] = acc
        return Matrix._raw(self.nrows, other.ncols, cols)

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        cols = {c: dict(col) for c, col in self.cols.items()}
        for c, col in other.cols.items():
            tgt = cols.setdefault(c, {})
            for r, v in col.items():
                s = tgt.get(r)
                s = v if s is None else s + v
                if s.is_zero():
                    tgt.pop(r, None)
                else:
                    tgt[r] = s
        return Matrix._raw(self.nrows, self.ncols, {c: col for c, col in cols.items() if col})

    def __neg__(self):
        return Matrix._raw(self.nrows, self.ncols, {c: {r: -v for r, v in col.items()} for c, col in self.cols.items()})

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, s) -> "Matrix":
        s = rf(s)
        if s.is_zero():
            return Matrix.zero(self.nrows, self.ncols)
        return Matrix._raw(self.nrows, self.ncols, {c: {r: v * s for r, v in col.items()} for c, col in self.cols.items()})

    def __mul__(self, s):
        return self.scale(s)

    __rmul__ = __mul__

    def kron(self, other: "Matrix") -> "Matrix":
        """Plain Kronecker product (leftmost factor most significant)."""
        cols = {}
        for c1, col1 in self.cols.items():
            for c2, col2 in other.cols.items():
                cols[c1 * other.ncols + c2] = {
                    r1 * other.nrows + r2: v1 * v2 for r1, v1 in col1.items() for r2, v2 in col2.items()
                }
        return Matrix._raw(self.nrows * other.nrows, self.ncols * other.ncols, cols)

    def is_zero(self) -> bool:
        return not self.cols

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.shape == other.shape and self.cols == other.cols

    def __hash__(self):
        return hash((self.shape, frozenset((c, frozenset(col.items())) for c, col in self.cols.items())))

    def is_scalar(self) -> RationalFunction | None:
        """Return c if the matrix equals c * Id, else None."""
        if self.nrows != self.ncols:
            return None
        c = self.get(0, 0)
        return c if self == Matrix.identity(self.nrows).scale(c) else None

    def inverse(self) -> "Matrix":
        """Exact Gauss-Jordan inverse; raises ZeroDivisionError if singular."""
        n = self.nrows
        if n != self.ncols:
            raise ValueError("inverse of a non-square matrix")
        rows = [{c: self.get(r, c) for c in range(n) if not self.get(r, c).is_zero()} for r in range(n)]
        inv = [{r: ONE} for r in range(n)]
        for col in range(n):
            pivot = next((r for r in range(col, n) if col in rows[r]), None)
            if pivot is None:
                raise ZeroDivisionError("singular matrix")
            rows[col], rows[pivot] = rows[pivot], rows[col]
            inv[col], inv[pivot] = inv[pivot], inv[col]
            p = rows[col][col].inv()
            rows[col] = {c: v * p for c, v in rows[col].items()}
            inv[col] = {c: v * p for c, v in inv[col].items()}
            for r in range(n):
                if r != col and col in rows[r]:
                    f = rows[r][col]
                    for tgt, src in ((rows, rows[col]), (inv, inv[col])):
                        row = tgt[r]
                        for c, v in src.items():
                            s = row.get(c, ZERO) - f * v
                            if s.is_zero():
                                row.pop(c, None)
                            else:
                                row[c] = s
        return Matrix.from_entries(n, n, {(r, c): v for r in range(n) for c, v in inv[r].items()})

    def dump(self) -> str:
        """Coordinate text form: one ``row col value`` line per nonzero entry."""
        return "\n".join(f"{r} {c} {v}" for (r, c), v in sorted(self.entries.items()))

    def __repr__(self):
        return f"Matrix({self.nrows}x{self.ncols}, nnz={len(self.entries)})"


def kron_signed(a: Matrix, pa: int, b: Matrix, pb: int, left: ModuleObject) -> Matrix:
    """(A ⊗ B)(v ⊗ w) = (-1)^{|B||v|} Av ⊗ Bw for homogeneous A, B of parities pa, pb."""
    out = a.kron(b)
    if pb % 2 == 0:
        return out
    cols = {}
    for c, col in out.cols.items():
        if left.parity_of(c // b.ncols):
            cols[c] = {r: -v for r, v in col.items()}
        else:
            cols[c] = col
    return Matrix._raw(out.nrows, out.ncols, cols)


# ---------------------------------------------------------------------------
# actions


@lru_cache(maxsize=None)
def _factor_generator(kind: str, factor: Factor) -> Matrix:
    lam = factor.weight
    if factor.kind == "triv":
        return Matrix.zero(1, 1)
    if factor.kind == "simple":
        if kind == "E":  # E v1 = v0
            return Matrix.from_entries(2, 2, {(0, 1): 1})
        # F v0 = [λ] v1
        return Matrix.from_entries(2, 2, {(1, 0): quantum_int(lam.k)})
    sign = -1 if lam.parity else 1
    if kind == "E":  # E v0* = -(-1)^|λ| q^λ v1*
        return Matrix.from_entries(2, 2, {(1, 0): qpow(lam.k) * (-sign)})
    # F v1* = (-1)^|λ| [λ] q^-λ v0*
    return Matrix.from_entries(2, 2, {(0, 1): rf(quantum_int(lam.k)) * qpow(-lam.k) * sign})


def _factor_cartan(factor: Factor, c1: int, c2: int) -> Matrix:
    return Matrix.diagonal(qpow(w.pair(c1, c2)) for w in factor.basis_weights)


@lru_cache(maxsize=None)
def act_monomial_factor(m: uq.Monomial, factor: Factor) -> Matrix:
    """Action of a single normal-ordered monomial on one factor."""
    out = _factor_cartan(factor, m.c1, m.c2)
    if m.f:
        out = _factor_generator("F", factor) @ out
    if m.e:
        out = _factor_generator("E", factor) @ out
    return out


def act_tensor(t: uq.TensorElement, modules: tuple[ModuleObject, ...] | list) -> Matrix:
    """Action of an n-tensor on ``modules[0] ⊗ ... ⊗ modules[n-1]`` with Koszul signs."""
    modules = tuple(modules)
    if t.arity != len(modules):
        raise ValueError("tensor arity does not match the number of modules")
    total_dim = 1
    for mod in modules:
        total_dim *= mod.dim
    out = Matrix.zero(total_dim, total_dim)
    for key, c in t.terms.items():
        mat = act_element(uq.as_element(key[0]), modules[0])
        par = key[0].parity
        left = modules[0]
        for m, mod in zip(key[1:], modules[1:]):
            mat = kron_signed(mat, par, act_element(uq.as_element(m), mod), m.parity, left)
            par += m.parity
            left = left.tensor(mod)
        out = out + mat.scale(c)
    return out


@lru_cache(maxsize=4096)
def _act_cached(x: uq.AlgebraElement, V: ModuleObject) -> Matrix:
    n = len(V.factors)
    if n == 0:
        return Matrix.identity(1).scale(uq.counit(x))
    if n == 1:
        out = Matrix.zero(V.dim, V.dim)
        for m, c in x.terms.items():
            out = out + act_monomial_factor(m, V.factors[0]).scale(c)
        return out
    singles = tuple(ModuleObject.of(f) for f in V.factors)
    return act_tensor(uq.iterated_coproduct(x, n), singles)


def act_element(x, V: ModuleObject) -> Matrix:
    """Matrix of an arbitrary algebra element on a tensor word (via iterated coproduct)."""
    return _act_cached(uq.as_element(x), V)


def act_generator(g, V: ModuleObject) -> Matrix:
    """Action of a generator: "E", "F", "K", a pair (c1, c2) for q^(c1 h1 + c2 h2), or an element."""
    if isinstance(g, str):
        if g == "K":
            g = uq.K
        else:
            g = uq.GENERATORS[g]
    elif isinstance(g, tuple):
        g = uq.qh(*g)
    return act_element(g, V)


# ---------------------------------------------------------------------------
# morphisms


@dataclass(frozen=True)
class EquivariantMap:
    source: ModuleObject
    target: ModuleObject
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ValueError(f"matrix shape {self.matrix.shape} does not fit {self.source} -> {self.target}")

    @classmethod
    def identity(cls, V: ModuleObject) -> "EquivariantMap":
        return cls(V, V, Matrix.identity(V.dim))

    def __matmul__(self, other: "EquivariantMap") -> "EquivariantMap":
        """``(self @ other)`` applies ``other`` first."""
        return EquivariantMap(other.source, self.target, self.matrix @ other.matrix)

    compose = __matmul__

    def tensor(self, other: "EquivariantMap") -> "EquivariantMap":
        # all morphisms in scope are even, so no Koszul correction
        return EquivariantMap(self.source @ other.source, self.target @ other.target, self.matrix.kron(other.matrix))

    def is_even(self) -> bool:
        return all(
            self.source.parity_of(c) == self.target.parity_of(r) for (r, c) in self.matrix.entries
        )

    def __eq__(self, other):
        return (
            isinstance(other, EquivariantMap)
            and self.source == other.source
            and self.target == other.target
            and self.matrix == other.matrix
        )

    def __hash__(self):
        return hash((self.source, self.target, self.matrix))

    def scalar(self) -> RationalFunction | None:
        return self.matrix.is_scalar()


def check_equivariance(f: EquivariantMap) -> bool:
    """f ∘ g_V == g_W ∘ f for g in E, F, q^h1, q^h2."""
    for g in uq.GENERATORS.values():
        if f.matrix @ act_element(g, f.source) != act_element(g, f.target) @ f.matrix:
            return False
    return True


# ---------------------------------------------------------------------------
# braiding


def upsilon(V: ModuleObject, W: ModuleObject) -> Matrix:
    """Diagonal operator q^{(μ1, μ2)} on V ⊗ W."""
    vals = []
    for i in range(V.dim):
        wv = V.weight_of(i)
        for j in range(W.dim):
            vals.append(qpow(wv.form(W.weight_of(j))))
    return Matrix.diagonal(vals)


def signed_flip(V: ModuleObject, W: ModuleObject) -> EquivariantMap:
    """σ(v ⊗ w) = (-1)^{|v||w|} w ⊗ v."""
    entries = {}
    for i in range(V.dim):
        pv = V.parity_of(i)
        for j in range(W.dim):
            entries[(j * V.dim + i, i * W.dim + j)] = -1 if pv * W.parity_of(j) else 1
    return EquivariantMap(V @ W, W @ V, Matrix.from_entries(W.dim * V.dim, V.dim * W.dim, entries))


def theta_action(V: ModuleObject, W: ModuleObject) -> Matrix:
    return act_tensor(uq.quasi_R(), (V, W))


def theta_bar_action(V: ModuleObject, W: ModuleObject) -> Matrix:
    return act_tensor(uq.bar_involution(uq.quasi_R()), (V, W))


@lru_cache(maxsize=None)
def r_check(V: ModuleObject, W: ModuleObject) -> EquivariantMap:
    """Ř_{V,W} = σ ∘ Θ ∘ Υ_{V,W} : V ⊗ W -> W ⊗ V."""
    m = signed_flip(V, W).matrix @ theta_action(V, W) @ upsilon(V, W)
    return EquivariantMap(V @ W, W @ V, m)


@lru_cache(maxsize=None)
def r_check_inverse_generic(V: ModuleObject, W: ModuleObject) -> EquivariantMap:
    """(Ř_{W,V})^{-1} = Υ_{W,V}^{-1} ∘ Θ̄ ∘ σ_{V,W} : V ⊗ W -> W ⊗ V."""
    ups_inv = Matrix.diagonal(v.inv() for _, v in sorted(upsilon(W, V).entries.items()))
    m = ups_inv @ theta_bar_action(W, V) @ signed_flip(V, W).matrix
    return EquivariantMap(V @ W, W @ V, m)


@lru_cache(maxsize=None)
def r_check_inverse(lam: Weight, mu: Weight) -> EquivariantMap:
    """Closed formula for Ř^{-1} : L(λ) ⊗ L(μ) -> L(μ) ⊗ L(λ)."""
    require_p_prime(lam)
    require_p_prime(mu)
    pl, pm = lam.parity, mu.parity

    def sgn(n):
        return -1 if n % 2 else 1

    # source index 2*i + j for v_i^λ ⊗ v_j^μ; target index 2*j + i for v_j^μ ⊗ v_i^λ
    e = {}
    e[(3, 3)] = qpow(-(mu - ALPHA).form(lam - ALPHA)) * sgn((pl + 1) * (pm + 1))
    s10 = sgn((pl + 1) * pm)
    e[(1, 2)] = qpow(-mu.form(lam - ALPHA)) * s10
    e[(2, 2)] = (
        qpow(-(mu - ALPHA).form(lam)) * rf(LaurentPoly({-1: 1, 1: -1})) * rf(quantum_int(mu.k)) * (s10 * sgn(pm))
    )
    e[(2, 1)] = qpow(-(mu - ALPHA).form(lam)) * sgn(pl * (pm + 1))
    e[(0, 0)] = qpow(-mu.form(lam)) * sgn(pl * pm)
    return EquivariantMap(L(lam) @ L(mu), L(mu) @ L(lam), Matrix.from_entries(4, 4, e))


# ---------------------------------------------------------------------------
# ribbon operators


def weight_square_operator(V: ModuleObject) -> Matrix:
    """Diagonal operator q^{μ2² - μ1²} on weight vectors (the action of e^{ħ(H2² - H1²)})."""
    vals = []
    for i in range(V.dim):
        w = V.weight_of(i)
        vals.append(qpow(w.lam2 ** 2 - w.lam1 ** 2))
    return Matrix.diagonal(vals)


_QQ = rf(LaurentPoly({1: 1, -1: -1}))


@lru_cache(maxsize=None)
def ribbon_v(V: ModuleObject) -> EquivariantMap:
    """v = (K^-1 + (q - q^-1) E F) e^{ħ(H2² - H1²)}."""
    el = uq.K_INV + (uq.E * uq.F) * _QQ
    return EquivariantMap(V, V, act_element(el, V) @ weight_square_operator(V))


@lru_cache(maxsize=None)
def u_action(V: ModuleObject) -> EquivariantMap:
    """u = (1 + (q - q^-1) E K F) e^{ħ(H2² - H1²)}."""
    el = uq.ONE + (uq.E * uq.K * uq.F) * _QQ
    return EquivariantMap(V, V, act_element(el, V) @ weight_square_operator(V))


def antipode_u_action(V: ModuleObject) -> EquivariantMap:
    """S(u) = e^{ħ(H2² - H1²)} (1 - (q - q^-1) F K^-1 E)."""
    el = uq.ONE - (uq.F * uq.K_INV * uq.E) * _QQ
    return EquivariantMap(V, V, weight_square_operator(V) @ act_element(el, V))


def k_action(V: ModuleObject, power: int = 1) -> EquivariantMap:
    return EquivariantMap(V, V, act_element(uq.qh(power, power), V))


@lru_cache(maxsize=None)
def u_v_inverse(V: ModuleObject) -> EquivariantMap:
    """The operator u ∘ v^{-1} (equal to the action of K)."""
    return u_action(V) @ EquivariantMap(V, V, ribbon_v(V).matrix.inverse())


@lru_cache(maxsize=None)
def v_u_inverse(V: ModuleObject) -> EquivariantMap:
    return ribbon_v(V) @ EquivariantMap(V, V, u_action(V).matrix.inverse())


# ---------------------------------------------------------------------------
# duality


def _pairing_sign(p: int) -> int:
    return -1 if p % 2 else 1


@lru_cache(maxsize=None)
def ev(lam: Weight) -> EquivariantMap:
    """ev: L(λ)* ⊗ L(λ) -> C, φ ⊗ w ↦ φ(w)."""
    require_p_prime(lam)
    return EquivariantMap(Ldual(lam) @ L(lam), triv(), Matrix.from_entries(1, 4, {(0, 0): 1, (0, 3): 1}))


@lru_cache(maxsize=None)
def ev_hat(lam: Weight) -> EquivariantMap:
    """ev_hat: L(λ) ⊗ L(λ)* -> C, w ⊗ φ ↦ (-1)^{|φ||w|} φ(w)."""
    require_p_prime(lam)
    p = lam.parity
    e = {(0, 0): _pairing_sign(p * p), (0, 3): _pairing_sign((p + 1) * (p + 1))}
    return EquivariantMap(L(lam) @ Ldual(lam), triv(), Matrix.from_entries(1, 4, e))


@lru_cache(maxsize=None)
def coev(lam: Weight) -> EquivariantMap:
    """coev: C -> L(λ) ⊗ L(λ)*, 1 ↦ Σ w_i ⊗ w_i*."""
    require_p_prime(lam)
    return EquivariantMap(triv(), L(lam) @ Ldual(lam), Matrix.from_entries(4, 1, {(0, 0): 1, (3, 0): 1}))


@lru_cache(maxsize=None)
def coev_hat(lam: Weight) -> EquivariantMap:
    """coev_hat: C -> L(λ)* ⊗ L(λ), 1 ↦ Σ (-1)^{|w_i|} w_i* ⊗ w_i."""
    require_p_prime(lam)
    p = lam.parity
    e = {(0, 0): _pairing_sign(p), (3, 0): _pairing_sign(p + 1)}
    return EquivariantMap(triv(), Ldual(lam) @ L(lam), Matrix.from_entries(4, 1, e))


def dual_iso(lam: Weight) -> EquivariantMap:
    """The isomorphism L(α - λ) -> L(λ)*."""
    require_p_prime(lam)
    sign = -1 if lam.parity else 1
    e = {(1, 0): qpow(lam.k) * (-sign), (0, 1): 1}
    return EquivariantMap(L(ALPHA - lam), Ldual(lam), Matrix.from_entries(2, 2, e))


def circle_value(lam: Weight) -> RationalFunction:
    """ev_hat ∘ (u v^{-1} ⊗ id) ∘ coev on C(q)."""
    cap = ev_hat(lam) @ u_v_inverse(L(lam)).tensor(EquivariantMap.identity(Ldual(lam)))
    return (cap @ coev(lam)).matrix.get(0, 0)


# ---------------------------------------------------------------------------
# characters


def character(V: ModuleObject) -> Counter:
    """Multiset of (weight, parity) over the basis of V."""
    return Counter((V.weight_of(i), V.parity_of(i)) for i in range(V.dim))


def character_sum(parts: Iterable[tuple[int, ModuleObject]]) -> Counter:
    out: Counter = Counter()
    for mult, V in parts:
        for key, n in character(V).items():
            out[key] += mult * n
    return out


# ---------------------------------------------------------------------------
# coproduct of the quasi-R-matrix, as operators on triple tensor products


def _upsilon_13(V: ModuleObject, W: ModuleObject, Z: ModuleObject, power: int = 1) -> Matrix:
    vals = []
    for i in range(V.dim):
        wv = V.weight_of(i)
        for _ in range(W.dim):
            for k in range(Z.dim):
                vals.append(qpow(power * wv.form(Z.weight_of(k))))
    return Matrix.diagonal(vals)


def _theta_legs(i: int, j: int) -> uq.TensorElement:
    legs = [uq.ONE] * 3
    legs[i], legs[j] = uq.F, uq.E
    return uq.TensorElement.identity(3) + uq.TensorElement.pure(*legs) * _QQ


def theta_coproduct_identities(V: ModuleObject, W: ModuleObject, Z: ModuleObject) -> tuple[bool, bool]:
    """(Δ⊗id)(Θ) = Θ13 Υ13 Θ23 Υ13^-1 and (id⊗Δ)(Θ) = Θ13 Υ13 Θ12 Υ13^-1 on V⊗W⊗Z."""
    mods = (V, W, Z)
    theta = uq.quasi_R()
    u13, u13_inv = _upsilon_13(V, W, Z), _upsilon_13(V, W, Z, -1)
    t13 = act_tensor(_theta_legs(0, 2), mods)
    t23 = act_tensor(_theta_legs(1, 2), mods)
    t12 = act_tensor(_theta_legs(0, 1), mods)
    left = act_tensor(uq.coproduct_at(theta, 0), mods) == t13 @ u13 @ t23 @ u13_inv
    right = act_tensor(uq.coproduct_at(theta, 1), mods) == t13 @ u13 @ t12 @ u13_inv
    return left, right
