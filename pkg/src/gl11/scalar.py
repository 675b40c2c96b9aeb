"""Exact scalars: Laurent polynomials in q and the field of rational functions.

Coefficients are Python ints or :class:`fractions.Fraction`; every value is
immutable and hashable.  A :class:`RationalFunction` is always kept in a
canonical form, so ``==`` is structural equality.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Union

Number = Union[int, Fraction]


class LaurentPoly:
    """Finite sum ``sum(c_n * q**n)`` with rational ``c_n`` and integer ``n``."""

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, Number] | None = None):
        self._c = {int(k): v for k, v in (coeffs or {}).items() if v != 0}
        self._hash = None

    @classmethod
    def _raw(cls, d: dict) -> "LaurentPoly":
        # d must already be free of zero coefficients
        p = cls.__new__(cls)
        p._c = d
        p._hash = None
        return p

    @classmethod
    def monomial(cls, n: int, c: Number = 1) -> "LaurentPoly":
        return cls._raw({n: c} if c != 0 else {})

    @classmethod
    def const(cls, c: Number) -> "LaurentPoly":
        return cls.monomial(0, c)

    @property
    def coeffs(self) -> dict[int, Number]:
        return dict(self._c)

    def items(self):
        return self._c.items()

    def is_zero(self) -> bool:
        return not self._c

    def is_monomial(self) -> bool:
        return len(self._c) == 1

    def min_exp(self) -> int:
        return min(self._c)

    def max_exp(self) -> int:
        return max(self._c)

    def coeff(self, n: int) -> Number:
        return self._c.get(n, 0)

    def __add__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        d = dict(self._c)
        for k, v in other._c.items():
            s = d.get(k, 0) + v
            if s == 0:
                d.pop(k, None)
            else:
                d[k] = s
        return LaurentPoly._raw(d)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({k: -v for k, v in self._c.items()})

    def __sub__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            return other
        a, b = self._c, other._c
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            ((m, c),) = b.items()
            return LaurentPoly._raw({k + m: v * c for k, v in a.items()})
        d: dict[int, Number] = {}
        for i, x in a.items():
            for j, y in b.items():
                d[i + j] = d.get(i + j, 0) + x * y
        return LaurentPoly._raw({k: v for k, v in d.items() if v != 0})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if not self.is_monomial():
                raise ValueError("negative power of a non-monomial Laurent polynomial")
            ((m, c),) = self._c.items()
            return LaurentPoly.monomial(m * n, _simplify(Fraction(1) / Fraction(c) ** (-n)))
        out = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def shift(self, n: int) -> "LaurentPoly":
        """Multiply by ``q**n``."""
        return LaurentPoly._raw({k + n: v for k, v in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """Substitute ``q -> q**-1``."""
        return LaurentPoly._raw({-k: v for k, v in self._c.items()})

    def substitute_power(self, m: int) -> "LaurentPoly":
        """Substitute ``q -> q**m``."""
        if m == 0:
            return LaurentPoly.const(sum(self._c.values()))
        return LaurentPoly._raw({k * m: v for k, v in self._c.items()})

    def __eq__(self, other):
        other = _as_laurent(other)
        if other is NotImplemented:
            if isinstance(other, RationalFunction):
                return NotImplemented
            return False
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def __bool__(self):
        return bool(self._c)

    def __repr__(self):
        return f"LaurentPoly({self})"

    def __str__(self):
        return render_laurent(self)


def _as_laurent(x):
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    return NotImplemented


q = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def quantum_int(k: int) -> LaurentPoly:
    """``[k] = (q^k - q^-k)/(q - q^-1)``, valid for every integer ``k``."""
    if k == 0:
        return ZERO
    sign = 1 if k > 0 else -1
    n = abs(k)
    return LaurentPoly._raw({e: sign for e in range(-n + 1, n, 2)})


# ---------------------------------------------------------------------------
# dense polynomial helpers (lists of coefficients, index = degree)


def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_divmod(a: list, b: list) -> tuple[list, list]:
    a = [Fraction(x) for x in a]
    lead = Fraction(b[-1])
    quot = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        s = len(a) - len(b)
        quot[s] = c
        for i, y in enumerate(b):
            a[s + i] -= c * y
        _trim(a)
    return quot, a


def _poly_gcd(a: list, b: list) -> list:
    a, b = _trim(list(a)), _trim(list(b))
    while b:
        _, r = _poly_divmod(a, b)
        a, b = b, r
    lead = Fraction(a[-1])
    return [Fraction(x) / lead for x in a]


def _to_dense(p: LaurentPoly) -> tuple[int, list]:
    lo = p.min_exp()
    out = [0] * (p.max_exp() - lo + 1)
    for k, v in p.items():
        out[k - lo] = v
    return lo, out


def _from_dense(dense: Iterable[Number], shift: int = 0) -> LaurentPoly:
    return LaurentPoly({i + shift: _simplify(v) for i, v in enumerate(dense)})


def _simplify(v: Number) -> Number:
    if isinstance(v, Fraction) and v.denominator == 1:
        return v.numerator
    return v


class RationalFunction:
    """Element of ``Q(q)`` stored as ``numerator / denominator``.

    Canonical form: the denominator is an ordinary polynomial with nonzero
    constant term, integer coefficients with content 1 and a positive leading
    coefficient, coprime to the numerator.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num, den=None):
        num = _coerce_laurent(num)
        if den is None:
            self.num, self.den = num, ONE
        else:
            self.num, self.den = _canonical(num, _coerce_laurent(den))
        self._hash = None

    @classmethod
    def _raw(cls, num: LaurentPoly, den: LaurentPoly) -> "RationalFunction":
        r = cls.__new__(cls)
        r.num, r.den, r._hash = num, den, None
        return r

    @classmethod
    def coerce(cls, x) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        return cls._raw(_coerce_laurent(x), ONE)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_laurent(self) -> bool:
        return self.den == ONE

    def as_laurent(self) -> LaurentPoly:
        if not self.is_laurent():
            raise ValueError(f"{self} is not a Laurent polynomial")
        return self.num

    def __add__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return other
        if self.den == ONE and other.den == ONE:
            return RationalFunction._raw(self.num + other.num, ONE)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction._raw(-self.num, self.den)

    def __sub__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return other
        if self.den == ONE and other.den == ONE:
            return RationalFunction._raw(self.num * other.num, ONE)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inv(self) -> "RationalFunction":
        if self.is_zero():
            raise ZeroDivisionError("inverse of the zero rational function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return other
        return self * other.inv()

    def __rtruediv__(self, other):
        return _as_rf(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        out = RationalFunction.coerce(1)
        for _ in range(n):
            out = out * self
        return out

    def bar(self) -> "RationalFunction":
        return RationalFunction(self.num.bar(), self.den.bar())

    def __eq__(self, other):
        other = _as_rf(other)
        if other is NotImplemented:
            return False
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    def __bool__(self):
        return not self.is_zero()

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den == ONE:
            return str(self.num)
        return f"({self.num})/({self.den})"


def _coerce_laurent(x) -> LaurentPoly:
    if isinstance(x, LaurentPoly):
        return x
    if isinstance(x, (int, Fraction)):
        return LaurentPoly.const(x)
    raise TypeError(f"cannot interpret {x!r} as a Laurent polynomial")


def _as_rf(x):
    if isinstance(x, RationalFunction):
        return x
    if isinstance(x, (LaurentPoly, int, Fraction)):
        return RationalFunction._raw(_coerce_laurent(x), ONE)
    return NotImplemented


def _canonical(num: LaurentPoly, den: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    if den.is_zero():
        raise ZeroDivisionError("rational function with zero denominator")
    if num.is_zero():
        return ZERO, ONE
    if den.is_monomial():
        ((m, c),) = den.items()
        inv_c = Fraction(1) / Fraction(c)
        return LaurentPoly({k - m: _simplify(v * inv_c) for k, v in num.items()}), ONE
    lo_n, n = _to_dense(num)
    lo_d, d = _to_dense(den)
    g = _poly_gcd(n, d)
    if len(g) > 1:
        n, _ = _poly_divmod(n, g)
        d, _ = _poly_divmod(d, g)
    # scale d to a primitive integer polynomial with positive leading coefficient
    d = [Fraction(x) for x in d]
    m = lcm(*(x.denominator for x in d if x != 0))
    ints = [int(x * m) for x in d]
    content = 0
    for x in ints:
        content = gcd(content, x)
    if ints[-1] < 0:
        content = -content
    scale = Fraction(m, content)
    d = [Fraction(x, content) for x in ints]
    n = [Fraction(x) * scale for x in n]
    num_out = _from_dense(n, lo_n - lo_d)
    den_out = _from_dense(d)
    if den_out.is_monomial():
        return num_out, ONE
    return num_out, den_out


def rf(x) -> RationalFunction:
    """Coerce ints, Fractions, Laurent polynomials and strings to a RationalFunction."""
    if isinstance(x, str):
        return parse_rational(x)
    return RationalFunction.coerce(x)


def bar(x):
    """The involution ``q -> q**-1`` on scalars."""
    if isinstance(x, (int, Fraction)):
        return x
    return x.bar()


# ---------------------------------------------------------------------------
# text format: ascending exponents, "a*q^n", q^0 elided, e.g. "q^-2 - 1 + q^2"


def _fmt_coeff(c: Number) -> str:
    c = _simplify(c)
    return str(c)


def render_laurent(p: LaurentPoly) -> str:
    if p.is_zero():
        return "0"
    parts = []
    for i, n in enumerate(sorted(p.coeffs)):
        c = p.coeff(n)
        neg = c < 0
        a = -c if neg else c
        if n == 0:
            body = _fmt_coeff(a)
        else:
            mono = "q" if n == 1 else f"q^{n}"
            body = mono if a == 1 else f"{_fmt_coeff(a)}*{mono}"
        if i == 0:
            parts.append(f"-{body}" if neg else body)
        else:
            parts.append(f"- {body}" if neg else f"+ {body}")
    return " ".join(parts)


_TERM = re.compile(
    r"""\s*(?P<sign>[+-])?\s*
        (?:
          (?P<coef>\d+(?:/\d+)?)\s*(?:\*?\s*(?P<q1>q)(?:\s*\^\s*(?P<e1>[+-]?\d+))?)?
        | (?P<q2>q)(?:\s*\^\s*(?P<e2>[+-]?\d+))?
        )\s*""",
    re.VERBOSE,
)


def parse_laurent(text: str) -> LaurentPoly:
    """Parse the rendering produced by :func:`render_laurent` (whitespace-tolerant)."""
    s = text.strip()
    if not s:
        raise ValueError("empty Laurent polynomial")
    pos = 0
    out = ZERO
    first = True
    while pos < len(s):
        m = _TERM.match(s, pos)
        if not m or m.end() == pos or (m.group("coef") is None and m.group("q2") is None):
            raise ValueError(f"cannot parse Laurent polynomial at column {pos}: {text!r}")
        if not first and m.group("sign") is None:
            raise ValueError(f"missing operator at column {pos}: {text!r}")
        sign = -1 if m.group("sign") == "-" else 1
        if m.group("coef") is not None:
            c = Fraction(m.group("coef"))
            if m.group("q1"):
                e = int(m.group("e1")) if m.group("e1") is not None else 1
            else:
                e = 0
        else:
            c = Fraction(1)
            e = int(m.group("e2")) if m.group("e2") is not None else 1
        out = out + LaurentPoly.monomial(e, _simplify(sign * c))
        pos = m.end()
        first = False
    return out


def parse_rational(text: str) -> RationalFunction:
    """Parse either a Laurent polynomial or ``(num)/(den)``."""
    s = text.strip()
    m = re.fullmatch(r"\((.*)\)\s*/\s*\((.*)\)", s)
    if m:
        return RationalFunction(parse_laurent(m.group(1)), parse_laurent(m.group(2)))
    return RationalFunction.coerce(parse_laurent(s))
