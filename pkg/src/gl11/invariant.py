"""Closed-link invariants built on the tangle evaluation.

``q_closed`` is the plain invariant (always zero on nonempty links).  ``hat_q``
cuts one strand open, evaluates the resulting (1,1)-tangle as ``c * id`` and
returns ``c``; with every strand labeled ``eps1`` this is the Conway-normalized
Alexander polynomial in ``q = t^(1/2)``.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .repcat import EPS1, Matrix, Weight
from .scalar import LaurentPoly, RationalFunction, rf
from .tangle import (
    DOWN,
    UP,
    LabelError,
    LabelingLike,
    SliceGen,
    TangleDiagram,
    TangleError,
    _macro_cup_labels,
    braid_closure,
    derived_crossing,
    evaluate,
    evaluate_raw,
    normalize_labeling,
    over_sign,
)

Q_MINUS_QINV = rf(LaurentPoly({1: 1, -1: -1}))


class NotClosedError(TangleError):
    pass


class ScalarityError(AssertionError):
    """A cut (1,1)-tangle did not evaluate to a multiple of the identity."""

    def __init__(self, matrix: Matrix):
        self.matrix = matrix
        super().__init__("cut tangle is not a scalar endomorphism:\n" + matrix.dump())


@dataclass(frozen=True)
class LinkInvariantResult:
    value: RationalFunction
    cut_component: str
    label: Weight
    writhes: tuple[tuple[str, int], ...] = ()


@dataclass(frozen=True)
class CutSite:
    component: int
    level: int
    position: int

    def __str__(self):
        return f"c{self.component}@{self.level}:{self.position}"


def _require_closed(d: TangleDiagram) -> None:
    if not d.is_closed():
        raise NotClosedError("diagram is not closed (source and target signatures must be empty)")


def q_closed(d: TangleDiagram, labeling: LabelingLike) -> RationalFunction:
    _require_closed(d)
    return evaluate(d, labeling).matrix.get(0, 0)


def _frozen_labeling(d: TangleDiagram, labeling: LabelingLike) -> tuple[Weight, ...]:
    lab = normalize_labeling(d, labeling)
    return tuple(lab[i] for i in range(len(lab)))


def cut_sites(d: TangleDiagram, labeling: LabelingLike, lam: Weight) -> list[CutSite]:
    """Downward strand segments on λ-labeled components, one site per segment.

    Sorted by component, then by height, then by position.
    """
    _require_closed(d)
    lab = normalize_labeling(d, labeling)
    tr = d.trace()
    seen, out = set(), []
    for k, (sig, comps, segs) in enumerate(zip(tr.signatures, tr.level_components, tr.level_segments)):
        for p, (o, c, s) in enumerate(zip(sig, comps, segs)):
            if o == DOWN and lab[c] == lam and s not in seen:
                seen.add(s)
                out.append(CutSite(c, k, p))
    out.sort(key=lambda site: (site.component, site.level, site.position))
    return out


def _move_right(sig, labels, p):
    """Slices carrying the strand at ``p`` over everything to its right, and their inverse."""
    sig, labels = list(sig), list(labels)
    forward, back = [], []
    for j in range(p, len(sig) - 1):
        o = (sig[j], sig[j + 1])
        s = over_sign(o, "left")
        forward.append(list(zip(derived_crossing(o, s, j), _macro_cup_labels(o, labels[j], labels[j + 1]))))
        sig[j], sig[j + 1] = sig[j + 1], sig[j]
        labels[j], labels[j + 1] = labels[j + 1], labels[j]
        o_back = (sig[j], sig[j + 1])
        back.append(list(zip(derived_crossing(o_back, -s, j), _macro_cup_labels(o_back, labels[j], labels[j + 1]))))
    fw = [x for step in forward for x in step]
    bw = [x for step in reversed(back) for x in step]
    return fw, bw


def cut_tangle(d: TangleDiagram, labeling: LabelingLike, site: CutSite):
    """The (1,1)-tangle obtained by opening ``d`` at ``site``.

    Returns (slices, cup_labels, λ); the tangle has a single upward strand at
    both ends, labeled λ.
    """
    lab = normalize_labeling(d, labeling)
    tr = d.trace()
    k, p = site.level, site.position
    sig = tr.signatures[k]
    if sig[p] != DOWN:
        raise ValueError(f"cut site {site} is not on a downward strand")
    labels = tuple(lab[c] for c in tr.level_components[k])
    lam = labels[p]
    cup_of = {i: lab[c] for i, c in tr.cup_components.items()}
    fw, bw = _move_right(sig, labels, p)
    m = len(sig)
    body: list[tuple[SliceGen, Weight | None]] = []
    body += [(s, cup_of.get(i)) for i, s in enumerate(d.slices[:k])]
    body += fw
    body += [(SliceGen("capl", m - 1), None), (SliceGen("cupl", m - 1), lam)]
    body += bw
    body += [(s, cup_of.get(i)) for i, s in enumerate(d.slices[k:], start=k)]
    slices = tuple(s for s, _ in body)
    cups = {i: w for i, (_, w) in enumerate(body) if w is not None}
    return slices, cups, lam


@lru_cache(maxsize=4096)
def _hat_q_at(d: TangleDiagram, frozen: tuple, site: CutSite) -> RationalFunction:
    slices, cups, lam = cut_tangle(d, dict(enumerate(frozen)), site)
    f = evaluate_raw((UP,), (lam,), slices, cups)
    c = f.matrix.is_scalar()
    if c is None:
        raise ScalarityError(f.matrix)
    return c


def hat_q_at(d: TangleDiagram, labeling: LabelingLike, site: CutSite) -> RationalFunction:
    return _hat_q_at(d, _frozen_labeling(d, labeling), site)


def hat_q(d: TangleDiagram, labeling: LabelingLike, lam: Weight | None = None, site: CutSite | None = None) -> RationalFunction:
    """The cut invariant: open a λ-labeled strand and read off the scalar."""
    return hat_q_result(d, labeling, lam, site).value


def hat_q_result(d, labeling, lam=None, site=None) -> LinkInvariantResult:
    _require_closed(d)
    lab = normalize_labeling(d, labeling)
    if not lab:
        raise LabelError("the empty diagram has no component to cut")
    if lam is None:
        lam = lab[0]
    if site is None:
        sites = cut_sites(d, lab, lam)
        if not sites:
            raise LabelError(f"no component is labeled {lam}")
        site = sites[0]
    value = hat_q_at(d, lab, site)
    writhes = tuple(sorted(d.trace().writhes().items()))
    return LinkInvariantResult(value, f"c{site.component}", lam, writhes)


def alexander(d: TangleDiagram) -> LaurentPoly:
    """Alexander-Conway polynomial in q (with t^(1/2) = q)."""
    value = hat_q(d, EPS1, EPS1)
    if not value.is_laurent():
        raise AssertionError(f"eps1 invariant is not a Laurent polynomial: {value}")
    return value.as_laurent()


def cut_independence_check(d: TangleDiagram, labeling: LabelingLike, lam: Weight) -> bool:
    sites = cut_sites(d, labeling, lam)
    values = {hat_q_at(d, labeling, s) for s in sites}
    return len(values) <= 1


def skein_check(d_plus: TangleDiagram, d_minus: TangleDiagram, d_zero: TangleDiagram) -> bool:
    """hat_q(D+) - hat_q(D-) == (q - q^-1) hat_q(D0) for constant eps1 labeling."""
    if d_plus == d_minus == d_zero:
        raise ValueError("degenerate skein triple: all three diagrams are identical")
    lhs = hat_q(d_plus, EPS1, EPS1) - hat_q(d_minus, EPS1, EPS1)
    return lhs == Q_MINUS_QINV * hat_q(d_zero, EPS1, EPS1)


# ---------------------------------------------------------------------------
# braid words


def skein_triples(word: Sequence[int], n: int):
    """(D+, D-, D0) at each crossing of a braid word; D0 deletes the generator."""
    out = []
    for i, g in enumerate(word):
        plus = list(word)
        minus = list(word)
        plus[i], minus[i] = abs(g), -abs(g)
        zero = list(word[:i]) + list(word[i + 1 :])
        out.append((braid_closure(plus, n), braid_closure(minus, n), braid_closure(zero, n)))
    return out


def mirror_word(word: Sequence[int]) -> list[int]:
    return [-g for g in word]


def conjugate(word: Sequence[int], g: int) -> list[int]:
    return [g] + list(word) + [-g]


def stabilize(word: Sequence[int], n: int, sign: int = 1) -> tuple[list[int], int]:
    return list(word) + [sign * n], n + 1


def braid_alexander(word: Sequence[int], n: int) -> LaurentPoly:
    return alexander(braid_closure(word, n))


def random_markov_pair(rng: random.Random, word: Sequence[int], n: int):
    """A random conjugation or stabilization of (word, n)."""
    if n >= 2 and rng.random() < 0.5:
        g = rng.choice([i for i in range(1, n)] + [-i for i in range(1, n)])
        return conjugate(word, g), n
    return stabilize(word, n, rng.choice([1, -1]))


@dataclass(frozen=True)
class CorpusLink:
    name: str
    word: tuple[int, ...]
    n: int
    components: int
    conway: str | None = None  # expected value in q, when known independently

    @property
    def diagram(self) -> TangleDiagram:
        return braid_closure(self.word, self.n)


# Conway values are standard tabulated data rewritten with z = q - q^-1.
CORPUS: tuple[CorpusLink, ...] = (
    CorpusLink("unknot", (), 1, 1, "1"),
    CorpusLink("unknot-s1", (1,), 2, 1, "1"),
    CorpusLink("unknot-s1inv", (-1,), 2, 1, "1"),
    CorpusLink("unlink2", (), 2, 2, "0"),
    CorpusLink("hopf", (1, 1), 2, 2, "-q^-1 + q"),
    CorpusLink("hopf-neg", (-1, -1), 2, 2, "q^-1 - q"),
    CorpusLink("trefoil", (1, 1, 1), 2, 1, "q^-2 - 1 + q^2"),
    CorpusLink("trefoil-mirror", (-1, -1, -1), 2, 1, "q^-2 - 1 + q^2"),
    CorpusLink("t24", (1, 1, 1, 1), 2, 2, "-q^-3 + q^-1 - q + q^3"),
    CorpusLink("figure-eight", (1, -2, 1, -2), 3, 1, "-q^-2 + 3 - q^2"),
    CorpusLink("cinquefoil", (1, 1, 1, 1, 1), 2, 1, "q^-4 - q^-2 + 1 - q^2 + q^4"),
    CorpusLink("5_2", (1, 1, 1, 2, -1, 2), 3, 1, "2*q^-2 - 3 + 2*q^2"),
    CorpusLink("hopf-sum", (1, 1, 2, 2), 3, 3, "q^-2 - 2 + q^2"),
    CorpusLink("borromean", (1, -2, 1, -2, 1, -2), 3, 3, "q^-4 - 4*q^-2 + 6 - 4*q^2 + q^4"),
    CorpusLink("unlink3", (), 3, 3, "0"),
)


def corpus_link(name: str) -> CorpusLink:
    for link in CORPUS:
        if link.name == name:
            return link
    raise KeyError(name)


# ---------------------------------------------------------------------------
# independent polynomial oracle


def burau_oracle(word: Sequence[int], n: int) -> LaurentPoly:
    """det(I - B(word)) / (1 + t + ... + t^(n-1)) for the reduced Burau matrix, at t = q^2.

    Computed with sympy; defined only up to a unit +-q^j.
    """
    import sympy

    t = sympy.Symbol("t")
    size = n - 1

    def gen(i: int):
        m = sympy.eye(size)
        # block [[1, t, 0], [0, -t, 0], [0, 1, 1]] centred on row i-1, truncated at the edges
        r = i - 1
        m[r, r] = -t
        if r - 1 >= 0:
            m[r - 1, r] = t
        if r + 1 < size:
            m[r + 1, r] = 1
        return m

    b = sympy.eye(size)
    for g in word:
        x = gen(abs(g))
        b = b * (x if g > 0 else x.inv())
    det = sympy.cancel((sympy.eye(size) - b).det()) if size else sympy.Integer(1)
    num, den = sympy.fraction(sympy.cancel(det / sum(t ** k for k in range(n))))
    quot, rem = sympy.div(sympy.Poly(sympy.expand(num * t ** 64), t), sympy.Poly(sympy.expand(den), t))
    if not rem.is_zero:
        raise AssertionError("Burau determinant is not divisible by the Burau normalizer")
    coeffs = {}
    for (e,), c in quot.terms():
        coeffs[2 * (e - 64)] = int(c)
    return LaurentPoly(coeffs)


def unit_ratio(a: LaurentPoly, b: LaurentPoly) -> tuple[int, int] | None:
    """(sign, j) with a == sign * q^j * b, or None.  Zero matches only zero."""
    if a.is_zero() or b.is_zero():
        return (1, 0) if a.is_zero() and b.is_zero() else None
    j = a.min_exp() - b.min_exp()
    sign = 1 if a.coeff(a.min_exp()) == b.coeff(b.min_exp()) else -1
    if a == b.shift(j) * LaurentPoly.const(sign):
        return sign, j
    return None
