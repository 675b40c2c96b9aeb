"""Symbolic U_q(gl(1|1)) in the normal-ordered basis E^a F^b q^(c1*h1 + c2*h2).

Elements are finite linear combinations of :class:`Monomial` with
:class:`~gl11.scalar.RationalFunction` coefficients.  Tensor powers are
represented by :class:`TensorElement`, whose multiplication carries the
Koszul sign of the super tensor product.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable, Mapping

from .scalar import LaurentPoly, RationalFunction, rf

Q_MINUS_QINV = rf(LaurentPoly({1: 1, -1: -1}))
INV_Q_MINUS_QINV = Q_MINUS_QINV.inv()


@dataclass(frozen=True, order=True)
class Monomial:
    """``E^e F^f q^(c1 h1 + c2 h2)`` with ``e, f`` in {0, 1}."""

    e: int = 0
    f: int = 0
    c1: int = 0
    c2: int = 0

    @property
    def parity(self) -> int:
        return (self.e + self.f) % 2

    @property
    def cartan(self) -> tuple[int, int]:
        return (self.c1, self.c2)

    def __str__(self):
        parts = []
        if self.e:
            parts.append("E")
        if self.f:
            parts.append("F")
        if self.c1 or self.c2:
            parts.append(f"q^({self.c1},{self.c2})")
        return " ".join(parts) or "1"


UNIT = Monomial()


def _alpha_pairing(c1: int, c2: int) -> int:
    # <c1 h1 + c2 h2, eps1 - eps2>
    return c1 - c2


def _merge(terms: dict, key, coeff) -> None:
    s = terms.get(key)
    s = coeff if s is None else s + coeff
    if s.is_zero():
        terms.pop(key, None)
    else:
        terms[key] = s


def _monomial_product(x: Monomial, y: Monomial) -> dict[Monomial, RationalFunction]:
    # move q^(c_x) to the right past E^{y.e} F^{y.f}
    shift = _alpha_pairing(x.c1, x.c2) * (y.e - y.f)
    scalar = rf(LaurentPoly.monomial(shift))
    c1, c2 = x.c1 + y.c1, x.c2 + y.c2
    # reduce E^{x.e} F^{x.f} E^{y.e} F^{y.f}
    if x.f == 1 and y.e == 1:
        out: dict[Monomial, RationalFunction] = {}
        # F E = -E F + (K - K^-1)/(q - q^-1)
        if x.e == 0 and y.f == 0:
            _merge(out, Monomial(1, 1, c1, c2), -scalar)
        _merge(out, Monomial(x.e, y.f, c1 + 1, c2 + 1), scalar * INV_Q_MINUS_QINV)
        _merge(out, Monomial(x.e, y.f, c1 - 1, c2 - 1), -scalar * INV_Q_MINUS_QINV)
        return out
    e, f = x.e + y.e, x.f + y.f
    if e > 1 or f > 1:
        return {}
    return {Monomial(e, f, c1, c2): scalar}


class AlgebraElement:
    """Element of U_q as a mapping Monomial -> RationalFunction."""

    __slots__ = ("terms",)

    def __init__(self, terms: Mapping[Monomial, object] | None = None):
        self.terms = {}
        for m, c in (terms or {}).items():
            c = rf(c)
            if not c.is_zero():
                self.terms[m] = c

    @classmethod
    def monomial(cls, m: Monomial, c=1) -> "AlgebraElement":
        return cls({m: c})

    @classmethod
    def scalar(cls, c) -> "AlgebraElement":
        return cls({UNIT: c})

    def __add__(self, other):
        other = as_element(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            _merge(out, m, c)
        return _element(out)

    __radd__ = __add__

    def __neg__(self):
        return _element({m: -c for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-as_element(other))

    def __rsub__(self, other):
        return as_element(other) - self

    def __mul__(self, other):
        if not isinstance(other, AlgebraElement):
            c = rf(other)
            return _element({m: v * c for m, v in self.terms.items() if not (v * c).is_zero()})
        return multiply(self, other)

    def __rmul__(self, other):
        c = rf(other)
        return _element({m: c * v for m, v in self.terms.items() if not (v * c).is_zero()})

    def __eq__(self, other):
        if not isinstance(other, AlgebraElement):
            try:
                other = as_element(other)
            except TypeError:
                return False
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def parity(self) -> int | None:
        """Parity if homogeneous, ``None`` otherwise (0 for the zero element)."""
        ps = {m.parity for m in self.terms}
        if len(ps) > 1:
            return None
        return ps.pop() if ps else 0

    def homogeneous_parts(self) -> dict[int, "AlgebraElement"]:
        parts: dict[int, dict] = {}
        for m, c in self.terms.items():
            parts.setdefault(m.parity, {})[m] = c
        return {p: _element(t) for p, t in parts.items()}

    def __repr__(self):
        return f"AlgebraElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{m} * ({c})" for m, c in sorted(self.terms.items()))


def _element(terms: dict) -> AlgebraElement:
    el = AlgebraElement.__new__(AlgebraElement)
    el.terms = terms
    return el


def as_element(x) -> AlgebraElement:
    if isinstance(x, AlgebraElement):
        return x
    if isinstance(x, Monomial):
        return AlgebraElement.monomial(x)
    return AlgebraElement.scalar(x)


def multiply(x: AlgebraElement, y: AlgebraElement) -> AlgebraElement:
    out: dict[Monomial, RationalFunction] = {}
    for mx, cx in x.terms.items():
        for my, cy in y.terms.items():
            c = cx * cy
            for m, s in _monomial_product(mx, my).items():
                _merge(out, m, c * s)
    return _element(out)


E = AlgebraElement.monomial(Monomial(e=1))
F = AlgebraElement.monomial(Monomial(f=1))
ONE = AlgebraElement.monomial(UNIT)


def qh(c1: int, c2: int) -> AlgebraElement:
    """The group-like element ``q^(c1 h1 + c2 h2)``."""
    return AlgebraElement.monomial(Monomial(0, 0, c1, c2))


K = qh(1, 1)
K_INV = qh(-1, -1)
GENERATORS = {"E": E, "F": F, "qh1": qh(1, 0), "qh2": qh(0, 1)}


# ---------------------------------------------------------------------------
# tensor powers


class TensorElement:
    """Element of the n-fold tensor power: mapping tuple[Monomial, ...] -> scalar."""

    __slots__ = ("terms", "arity")

    def __init__(self, terms: Mapping[tuple, object], arity: int | None = None):
        self.terms = {}
        for key, c in terms.items():
            c = rf(c)
            if not c.is_zero():
                self.terms[tuple(key)] = c
        if arity is None:
            if not self.terms:
                raise ValueError("arity required for the zero tensor")
            arity = len(next(iter(self.terms)))
        self.arity = arity

    @classmethod
    def pure(cls, *factors: AlgebraElement) -> "TensorElement":
        """``x1 ⊗ x2 ⊗ ... ⊗ xn`` (no signs: this is just multilinear expansion)."""
        terms: dict[tuple, RationalFunction] = {(): rf(1)}
        for x in factors:
            new: dict[tuple, RationalFunction] = {}
            for key, c in terms.items():
                for m, d in x.terms.items():
                    _merge(new, key + (m,), c * d)
            terms = new
        return _tensor(terms, len(factors))

    @classmethod
    def identity(cls, arity: int) -> "TensorElement":
        return _tensor({(UNIT,) * arity: rf(1)}, arity)

    def __add__(self, other):
        self._check(other)
        out = dict(self.terms)
        for k, c in other.terms.items():
            _merge(out, k, c)
        return _tensor(out, self.arity)

    def __neg__(self):
        return _tensor({k: -c for k, c in self.terms.items()}, self.arity)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, TensorElement):
            c = rf(other)
            return _tensor({k: v * c for k, v in self.terms.items() if not (v * c).is_zero()}, self.arity)
        self._check(other)
        return tensor_multiply(self, other)

    def __rmul__(self, other):
        return self * other

    def _check(self, other):
        if not isinstance(other, TensorElement) or other.arity != self.arity:
            raise TypeError("tensor arity mismatch")

    def __eq__(self, other):
        return isinstance(other, TensorElement) and self.arity == other.arity and self.terms == other.terms

    def __hash__(self):
        return hash((self.arity, frozenset(self.terms.items())))

    def map_factors(self, fn) -> "TensorElement":
        """Apply an even scalar-linear map factorwise: fn(index, Monomial) -> AlgebraElement."""
        out: dict[tuple, RationalFunction] = {}
        for key, c in self.terms.items():
            partial = {(): c}
            for i, m in enumerate(key):
                img = fn(i, m)
                new: dict[tuple, RationalFunction] = {}
                for k2, c2 in partial.items():
                    for m3, c3 in img.terms.items():
                        _merge(new, k2 + (m3,), c2 * c3)
                partial = new
            for k2, c2 in partial.items():
                _merge(out, k2, c2)
        return _tensor(out, self.arity)

    def __repr__(self):
        return f"TensorElement({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        return " + ".join(
            " ⊗ ".join(str(m) for m in key) + f" * ({c})" for key, c in sorted(self.terms.items())
        )


def _tensor(terms: dict, arity: int) -> TensorElement:
    t = TensorElement.__new__(TensorElement)
    t.terms = terms
    t.arity = arity
    return t


def tensor_multiply(x: TensorElement, y: TensorElement) -> TensorElement:
    """(a1⊗..⊗an)(b1⊗..⊗bn) = (-1)^{sum_{i<j} |a_j||b_i|} a1b1 ⊗ .. ⊗ anbn."""
    out: dict[tuple, RationalFunction] = {}
    n = x.arity
    for ka, ca in x.terms.items():
        for kb, cb in y.terms.items():
            sign = 0
            for j in range(1, n):
                if ka[j].parity:
                    sign += sum(kb[i].parity for i in range(j))
            c = ca * cb
            if sign % 2:
                c = -c
            partial = {(): c}
            for a, b in zip(ka, kb):
                prod = _monomial_product(a, b)
                new: dict[tuple, RationalFunction] = {}
                for k2, c2 in partial.items():
                    for m, s in prod.items():
                        _merge(new, k2 + (m,), c2 * s)
                partial = new
                if not partial:
                    break
            for k2, c2 in partial.items():
                _merge(out, k2, c2)
    return _tensor(out, n)


def flip(t: TensorElement) -> TensorElement:
    """Signed flip sigma(a ⊗ b) = (-1)^{|a||b|} b ⊗ a."""
    if t.arity != 2:
        raise ValueError("flip needs a 2-tensor")
    out = {}
    for (a, b), c in t.terms.items():
        _merge(out, (b, a), -c if a.parity * b.parity else c)
    return _tensor(out, 2)


# ---------------------------------------------------------------------------
# Hopf structure


def _power(x: AlgebraElement, n: int) -> AlgebraElement:
    out = ONE
    for _ in range(n):
        out = out * x
    return out


def _coproduct_monomial(m: Monomial) -> TensorElement:
    # Δ(E^e F^f q^c) = Δ(E)^e Δ(F)^f (q^c ⊗ q^c)
    out = TensorElement.pure(qh(m.c1, m.c2), qh(m.c1, m.c2))
    if m.f:
        out = _DELTA_F * out
    if m.e:
        out = _DELTA_E * out
    return out


_DELTA_E = TensorElement.pure(E, K_INV) + TensorElement.pure(ONE, E)
_DELTA_F = TensorElement.pure(F, ONE) + TensorElement.pure(K, F)


def coproduct(x: AlgebraElement) -> TensorElement:
    out = _tensor({}, 2)
    for m, c in x.terms.items():
        out = out + _coproduct_monomial(m) * c
    return out


def coproduct_at(t: TensorElement, index: int) -> TensorElement:
    """Apply Δ to tensor factor ``index`` (Δ is even, so no sign appears)."""
    out: dict[tuple, RationalFunction] = {}
    for key, c in t.terms.items():
        for (a, b), d in _coproduct_monomial(key[index]).terms.items():
            _merge(out, key[:index] + (a, b) + key[index + 1:], c * d)
    return _tensor(out, t.arity + 1)


def iterated_coproduct(x: AlgebraElement, n: int) -> TensorElement:
    """The (n-1)-fold coproduct of x, as an n-tensor (n >= 1)."""
    if n < 1:
        raise ValueError("need at least one tensor factor")
    t = _tensor({(m,): c for m, c in x.terms.items()}, 1)
    for _ in range(n - 1):
        t = coproduct_at(t, t.arity - 1)
    return t


def counit(x: AlgebraElement) -> RationalFunction:
    total = rf(0)
    for m, c in x.terms.items():
        if not m.e and not m.f:
            total = total + c
    return total


def _antipode_monomial(m: Monomial) -> AlgebraElement:
    # S(E^e F^f q^c) = (-1)^{ef} S(q^c) S(F)^f S(E)^e
    out = qh(-m.c1, -m.c2)
    if m.f:
        out = out * _S_F
    if m.e:
        out = out * _S_E
    if m.e and m.f:
        out = -out
    return out


_S_E = -(E * K)
_S_F = -(K_INV * F)


def antipode(x: AlgebraElement) -> AlgebraElement:
    out = AlgebraElement()
    for m, c in x.terms.items():
        out = out + _antipode_monomial(m) * c
    return out


def bar_involution(x):
    """E, F fixed; q^h -> q^-h; scalars conjugated by q -> q^-1.

    Accepts an AlgebraElement or a TensorElement (applied factorwise).
    """
    if isinstance(x, TensorElement):
        return _tensor(
            {tuple(Monomial(m.e, m.f, -m.c1, -m.c2) for m in key): c.bar() for key, c in x.terms.items()},
            x.arity,
        )
    return _element({Monomial(m.e, m.f, -m.c1, -m.c2): c.bar() for m, c in x.terms.items()})


def coproduct_op(x: AlgebraElement) -> TensorElement:
    return flip(coproduct(x))


def coproduct_op_bar(x: AlgebraElement) -> TensorElement:
    return bar_involution(coproduct_op(bar_involution(x)))


def multiply_tensor(t: TensorElement) -> AlgebraElement:
    """The multiplication map ∇ on a 2-tensor."""
    out = AlgebraElement()
    for (a, b), c in t.terms.items():
        out = out + multiply(as_element(a), as_element(b)) * c
    return out


def quasi_R() -> TensorElement:
    """Θ = 1⊗1 + (q - q^-1) F⊗E."""
    return TensorElement.identity(2) + TensorElement.pure(F, E) * Q_MINUS_QINV


def check_theta_intertwines(x: AlgebraElement) -> bool:
    """Θ · Δ̄^op(x) == Δ^op(x) · Θ."""
    theta = quasi_R()
    return theta * coproduct_op_bar(x) == coproduct_op(x) * theta


# ---------------------------------------------------------------------------
# Hopf axiom checks


def check_coassociative(x: AlgebraElement) -> bool:
    d = coproduct(x)
    return coproduct_at(d, 0) == coproduct_at(d, 1)


def check_counit(x: AlgebraElement) -> bool:
    d = coproduct(x)
    left = AlgebraElement()
    right = AlgebraElement()
    for (a, b), c in d.terms.items():
        left = left + as_element(b) * (counit(as_element(a)) * c)
        right = right + as_element(a) * (counit(as_element(b)) * c)
    return left == x and right == x


def check_antipode(x: AlgebraElement) -> bool:
    d = coproduct(x)
    expected = ONE * counit(x)
    left = multiply_tensor(d.map_factors(lambda i, m: antipode(as_element(m)) if i == 0 else as_element(m)))
    right = multiply_tensor(d.map_factors(lambda i, m: antipode(as_element(m)) if i == 1 else as_element(m)))
    return left == expected and right == expected


def check_coproduct_multiplicative(x: AlgebraElement, y: AlgebraElement) -> bool:
    return coproduct(x * y) == coproduct(x) * coproduct(y)


def check_counit_multiplicative(x: AlgebraElement, y: AlgebraElement) -> bool:
    return counit(x * y) == counit(x) * counit(y)


def all_monomials(bound: int = 3) -> Iterable[Monomial]:
    for e in (0, 1):
        for f in (0, 1):
            for c1 in range(-bound, bound + 1):
                for c2 in range(-bound, bound + 1):
                    yield Monomial(e, f, c1, c2)


COEFFICIENT_POOL = (
    rf(1),
    rf(-1),
    rf(LaurentPoly.monomial(1)),
    rf(LaurentPoly.monomial(-1)),
    INV_Q_MINUS_QINV,
)


def random_element(rng: random.Random, max_terms: int = 3, bound: int = 3) -> AlgebraElement:
    """Sum of 1..max_terms monomials with |c1|, |c2| <= bound and pooled coefficients."""
    terms: dict[Monomial, RationalFunction] = {}
    for _ in range(rng.randint(1, max_terms)):
        m = Monomial(rng.randint(0, 1), rng.randint(0, 1), rng.randint(-bound, bound), rng.randint(-bound, bound))
        _merge(terms, m, rng.choice(COEFFICIENT_POOL))
    return _element(terms)


def random_elements(n: int, seed: int = 0) -> list[AlgebraElement]:
    rng = random.Random(seed)
    return [random_element(rng) for _ in range(n)]

