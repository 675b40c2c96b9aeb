"""Oriented framed tangle diagrams as Morse words, and their evaluation.

A diagram is read bottom to top.  Each slice acts at a single strand position;
the running signature lists strand orientations (+1 up, -1 down).  Strands
going up carry ``L(λ)``, strands going down carry ``L(λ)*``.
"""
from __future__ import annotations

import re
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Mapping, Sequence, Union

from . import repcat as rc
from .repcat import EquivariantMap, Matrix, ModuleObject, Weight
from .scalar import RationalFunction

UP, DOWN = 1, -1

KINDS = ("idup", "iddown", "crosspos", "crossneg", "capr", "capl", "cupl", "cupr")
# strands consumed and produced by each slice kind
_ARITY = {
    "idup": (1, 1),
    "iddown": (1, 1),
    "crosspos": (2, 2),
    "crossneg": (2, 2),
    "capr": (2, 0),
    "capl": (2, 0),
    "cupl": (0, 2),
    "cupr": (0, 2),
}
_DOMAIN = {
    "idup": (UP,),
    "iddown": (DOWN,),
    "crosspos": (UP, UP),
    "crossneg": (UP, UP),
    "capr": (UP, DOWN),
    "capl": (DOWN, UP),
}
_PRODUCES = {"cupr": (UP, DOWN), "cupl": (DOWN, UP)}


class TangleError(ValueError):
    pass


class SignatureError(TangleError):
    pass


class CrossingOrientationError(SignatureError):
    pass


class LabelError(TangleError):
    pass


class ParseError(ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


@dataclass(frozen=True)
class SliceGen:
    kind: str
    position: int

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown slice kind {self.kind!r}")
        if self.position < 0:
            raise ValueError("slice position must be nonnegative")

    def __str__(self):
        return f"{self.kind} {self.position}"


def _sig_str(sig) -> str:
    return " ".join("+" if s == UP else "-" for s in sig)


def _apply_signature(sig: tuple, s: SliceGen, k: int) -> tuple:
    a, _ = _ARITY[s.kind]
    p = s.position
    if s.kind in _PRODUCES:
        if p > len(sig):
            raise SignatureError(f"slice {k} ({s}): position out of range for signature [{_sig_str(sig)}]")
        return sig[:p] + _PRODUCES[s.kind] + sig[p:]
    if p + a > len(sig):
        raise SignatureError(f"slice {k} ({s}): position out of range for signature [{_sig_str(sig)}]")
    if sig[p : p + a] != _DOMAIN[s.kind]:
        err = CrossingOrientationError if s.kind.startswith("cross") else SignatureError
        raise err(
            f"slice {k} ({s}): needs [{_sig_str(_DOMAIN[s.kind])}] at position {p}, "
            f"found [{_sig_str(sig[p:p + a])}]"
        )
    if s.kind.startswith("cap"):
        return sig[:p] + sig[p + 2 :]
    return sig


@dataclass(frozen=True)
class Crossing:
    slice_index: int
    sign: int
    components: tuple[int, int]  # (left-bottom strand, right-bottom strand)


@dataclass(frozen=True)
class Tracing:
    signatures: tuple[tuple[int, ...], ...]  # signature before slice k, and the final one
    level_components: tuple[tuple[int, ...], ...]
    level_segments: tuple[tuple[int, ...], ...]
    n_components: int
    cup_components: Mapping[int, int]
    crossings: tuple[Crossing, ...]
    closed: tuple[bool, ...]

    def writhe(self, component: int) -> int:
        return sum(c.sign for c in self.crossings if c.components == (component, component))

    def writhes(self) -> dict[str, int]:
        return {f"c{i}": self.writhe(i) for i in range(self.n_components)}


class _UnionFind:
    def __init__(self):
        self.parent: list[int] = []

    def make(self) -> int:
        self.parent.append(len(self.parent))
        return len(self.parent) - 1

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> None:
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.parent[max(ra, rb)] = min(ra, rb)


@dataclass(frozen=True)
class TangleDiagram:
    source: tuple[int, ...] = ()
    slices: tuple[SliceGen, ...] = ()
    _target: tuple[int, ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        src = tuple(int(s) for s in self.source)
        if any(s not in (UP, DOWN) for s in src):
            raise SignatureError("orientation signs must be +1 or -1")
        object.__setattr__(self, "source", src)
        object.__setattr__(self, "slices", tuple(self.slices))
        sig = src
        for k, s in enumerate(self.slices):
            sig = _apply_signature(sig, s, k)
        object.__setattr__(self, "_target", sig)

    @property
    def target(self) -> tuple[int, ...]:
        return self._target

    def is_closed(self) -> bool:
        return not self.source and not self._target

    def then(self, other: "TangleDiagram") -> "TangleDiagram":
        """Stack ``other`` on top of ``self``."""
        if self.target != other.source:
            raise SignatureError(f"cannot stack: [{_sig_str(self.target)}] vs [{_sig_str(other.source)}]")
        return TangleDiagram(self.source, self.slices + other.slices)

    def beside(self, other: "TangleDiagram") -> "TangleDiagram":
        """Place ``other`` to the right of ``self``."""
        shift = len(self.target)
        moved = tuple(SliceGen(s.kind, s.position + shift) for s in other.slices)
        return TangleDiagram(self.source + other.source, self.slices + moved)

    @lru_cache(maxsize=None)
    def trace(self) -> Tracing:
        uf = _UnionFind()
        segs = [uf.make() for _ in self.source]
        sig = self.source
        sigs, seg_levels = [sig], [tuple(segs)]
        cup_seg: dict[int, int] = {}
        cross_segs = []
        for k, s in enumerate(self.slices):
            p = s.position
            if s.kind.startswith("cross"):
                a, b = segs[p], segs[p + 1]
                na, nb = uf.make(), uf.make()
                uf.union(na, b)
                uf.union(nb, a)
                segs[p : p + 2] = [na, nb]
                cross_segs.append((k, 1 if s.kind == "crosspos" else -1, a, b))
            elif s.kind.startswith("cap"):
                uf.union(segs[p], segs[p + 1])
                del segs[p : p + 2]
            elif s.kind.startswith("cup"):
                x = uf.make()
                y = uf.make()
                uf.union(x, y)
                segs[p:p] = [x, y]
                cup_seg[k] = x
            sig = _apply_signature(sig, s, k)
            sigs.append(sig)
            seg_levels.append(tuple(segs))
        roots = sorted({uf.find(i) for i in range(len(uf.parent))})
        comp_of_root = {r: i for i, r in enumerate(roots)}

        def comp(x):
            return comp_of_root[uf.find(x)]

        boundary = {comp(x) for x in seg_levels[0]} | {comp(x) for x in seg_levels[-1]}
        return Tracing(
            signatures=tuple(sigs),
            level_components=tuple(tuple(comp(x) for x in lev) for lev in seg_levels),
            level_segments=tuple(seg_levels),
            n_components=len(roots),
            cup_components={k: comp(x) for k, x in cup_seg.items()},
            crossings=tuple(Crossing(k, sgn, (comp(a), comp(b))) for k, sgn, a, b in cross_segs),
            closed=tuple(i not in boundary for i in range(len(roots))),
        )

    def mirror(self) -> "TangleDiagram":
        swap = {"crosspos": "crossneg", "crossneg": "crosspos"}
        return TangleDiagram(self.source, tuple(SliceGen(swap.get(s.kind, s.kind), s.position) for s in self.slices))

    def __str__(self):
        return render_morse(self)


# ---------------------------------------------------------------------------
# labelings

LabelingLike = Union[Weight, Mapping]


def component_key(c) -> int:
    if isinstance(c, int):
        return c
    m = re.fullmatch(r"c(\d+)", str(c).strip())
    if not m:
        raise LabelError(f"bad component id {c!r}")
    return int(m.group(1))


def normalize_labeling(d: TangleDiagram, labeling: LabelingLike) -> dict[int, Weight]:
    """Map every component of ``d`` to a weight in P'."""
    tr = d.trace()
    if isinstance(labeling, Weight):
        out = {i: labeling for i in range(tr.n_components)}
    else:
        out = {component_key(k): v for k, v in labeling.items()}
        extra = sorted(set(out) - set(range(tr.n_components)))
        if extra:
            raise LabelError(f"labeling names unknown components {', '.join(f'c{i}' for i in extra)}")
        missing = [i for i in range(tr.n_components) if i not in out]
        if missing:
            raise LabelError(f"no label for component(s) {', '.join(f'c{i}' for i in missing)}")
    for i, w in out.items():
        if not isinstance(w, Weight):
            raise LabelError(f"label of c{i} is not a weight")
        if not w.in_p_prime():
            raise LabelError(f"label {w} of c{i} is not in P' (lam1 + lam2 must be nonzero)")
    return out


def strand_labels(d: TangleDiagram, labeling: LabelingLike) -> tuple[tuple[Weight, ...], dict[int, Weight]]:
    """Labels of the source strands and of each cup's strand."""
    lab = normalize_labeling(d, labeling)
    tr = d.trace()
    src = tuple(lab[c] for c in tr.level_components[0])
    cups = {k: lab[c] for k, c in tr.cup_components.items()}
    return src, cups


def validate(d: TangleDiagram, labeling: LabelingLike | None = None) -> Tracing:
    """Trace components and check the labeling; raises TangleError subclasses."""
    tr = d.trace()
    if labeling is not None:
        normalize_labeling(d, labeling)
    return tr


# ---------------------------------------------------------------------------
# local slice maps


def _strand_module(sign: int, lam: Weight) -> ModuleObject:
    return rc.L(lam) if sign == UP else rc.Ldual(lam)


def _columns(f: EquivariantMap) -> dict[tuple, dict[tuple, RationalFunction]]:
    # the unit object C(q)_0 has no strands: its basis vector is the empty tuple
    def key(mod, i):
        return () if mod == rc.triv() else mod.to_tuple(i)

    out: dict[tuple, dict[tuple, RationalFunction]] = {}
    for c, col in f.matrix.cols.items():
        out[key(f.source, c)] = {key(f.target, r): v for r, v in col.items()}
    return out


def cap_right_map(lam: Weight) -> EquivariantMap:
    """ev_hat ∘ (u v^-1 ⊗ id) : L(λ) ⊗ L(λ)* -> C."""
    return rc.ev_hat(lam) @ rc.u_v_inverse(rc.L(lam)).tensor(EquivariantMap.identity(rc.Ldual(lam)))


def cup_left_map(lam: Weight) -> EquivariantMap:
    """(id ⊗ v u^-1) ∘ coev_hat : C -> L(λ)* ⊗ L(λ)."""
    return EquivariantMap.identity(rc.Ldual(lam)).tensor(rc.v_u_inverse(rc.L(lam))) @ rc.coev_hat(lam)


def slice_map(kind: str, labels: tuple[Weight, ...]) -> EquivariantMap:
    """The map assigned to one elementary slice, given the labels of the strands it touches."""
    if kind == "crosspos":
        return rc.r_check(rc.L(labels[0]), rc.L(labels[1]))
    if kind == "crossneg":
        return rc.r_check_inverse(labels[0], labels[1])
    if kind == "capr":
        return cap_right_map(labels[0])
    if kind == "capl":
        return rc.ev(labels[0])
    if kind == "cupr":
        return rc.coev(labels[0])
    if kind == "cupl":
        return cup_left_map(labels[0])
    if kind == "idup":
        return EquivariantMap.identity(rc.L(labels[0]))
    return EquivariantMap.identity(rc.Ldual(labels[0]))


@lru_cache(maxsize=None)
def _local_columns(kind: str, labels: tuple[Weight, ...]):
    return _columns(slice_map(kind, labels))


Vector = dict  # basis tuple -> RationalFunction


def _advance(vectors: list[Vector], sig: tuple, labels: tuple, s: SliceGen, cup_label: Weight | None, k: int):
    """Apply one slice to a list of state vectors; returns (vectors, sig, labels)."""
    p = s.position
    a, b = _ARITY[s.kind]
    new_sig = _apply_signature(sig, s, k)
    if s.kind.startswith("cup"):
        if cup_label is None:
            raise LabelError(f"slice {k} ({s}): no label for the new strand")
        touched = (cup_label,)
        new_labels = labels[:p] + (cup_label, cup_label) + labels[p:]
    else:
        touched = labels[p : p + a]
        if s.kind.startswith("cap"):
            if touched[0] != touched[1]:
                raise LabelError(f"slice {k} ({s}): joins strands labeled {touched[0]} and {touched[1]}")
            touched = touched[:1]
            new_labels = labels[:p] + labels[p + 2 :]
        elif s.kind.startswith("cross"):
            new_labels = labels[:p] + (labels[p + 1], labels[p]) + labels[p + 2 :]
        else:
            new_labels = labels
    if s.kind.startswith("id"):
        return vectors, new_sig, new_labels
    cols = _local_columns(s.kind, touched)
    out = []
    for vec in vectors:
        acc: Vector = {}
        for t, c in vec.items():
            left, mid, right = t[:p], t[p : p + a], t[p + a :]
            for m2, w in cols.get(mid, {}).items():
                key = left + m2 + right
                prev = acc.get(key)
                acc[key] = c * w if prev is None else prev + c * w
        out.append({t: v for t, v in acc.items() if not v.is_zero()})
    return out, new_sig, new_labels


def run_slices(
    source_sig: tuple,
    source_labels: tuple,
    slices: Sequence[SliceGen],
    cup_labels: Mapping[int, Weight],
    vectors: list[Vector],
):
    """Evolve state vectors through a slice list.  Returns (vectors, final sig, final labels)."""
    sig, labels = tuple(source_sig), tuple(source_labels)
    for k, s in enumerate(slices):
        vectors, sig, labels = _advance(vectors, sig, labels, s, cup_labels.get(k), k)
    return vectors, sig, labels


def _word_module(sig, labels) -> ModuleObject:
    return ModuleObject(tuple(_strand_module(s, lab).factors[0] for s, lab in zip(sig, labels)))


def evaluate_raw(source_sig, source_labels, slices, cup_labels) -> EquivariantMap:
    src = _word_module(source_sig, source_labels)
    basis = [{t: rc.ONE} for t in src.index_tuples()]
    vectors, sig, labels = run_slices(source_sig, source_labels, slices, cup_labels, basis)
    tgt = _word_module(sig, labels)
    cols = {}
    for c, vec in enumerate(vectors):
        if vec:
            cols[c] = {tgt.to_index(t): v for t, v in vec.items()}
    return EquivariantMap(src, tgt, Matrix._raw(tgt.dim, src.dim, cols))


def evaluate(d: TangleDiagram, labeling: LabelingLike) -> EquivariantMap:
    """The equivariant map assigned to a labeled diagram."""
    src_labels, cups = strand_labels(d, labeling)
    return evaluate_raw(d.source, src_labels, d.slices, cups)


# ---------------------------------------------------------------------------
# standard diagrams and macros


def curl(sign: int = 1) -> TangleDiagram:
    """A kink on one upward strand; the ``+1`` kink is the full framing twist."""
    kind = "crosspos" if sign > 0 else "crossneg"
    return TangleDiagram((UP,), (SliceGen("cupr", 1), SliceGen(kind, 0), SliceGen("capr", 1)))


def full_twist(lam: Weight) -> EquivariantMap:
    rc.require_p_prime(lam)
    return evaluate(curl(1), lam)


def circle() -> TangleDiagram:
    return TangleDiagram((), (SliceGen("cupr", 0), SliceGen("capr", 0)))


def derived_crossing(orientations: tuple[int, int], sign: int, position: int = 0) -> list[SliceGen]:
    """Slices realizing a crossing of two adjacent strands with given bottom orientations.

    The internal crossing is always between upward strands, with the given sign;
    strands are bent around it with cups and caps.
    """
    kind = "crosspos" if sign > 0 else "crossneg"
    p = position
    o = tuple(orientations)
    if o == (UP, UP):
        return [SliceGen(kind, p)]
    if o == (UP, DOWN):
        return [SliceGen("cupl", p), SliceGen(kind, p + 1), SliceGen("capr", p + 2)]
    if o == (DOWN, UP):
        return [SliceGen("cupr", p + 2), SliceGen(kind, p + 1), SliceGen("capl", p)]
    if o == (DOWN, DOWN):
        return [
            SliceGen("cupr", p + 2),
            SliceGen("cupr", p + 3),
            SliceGen(kind, p + 2),
            SliceGen("capl", p + 1),
            SliceGen("capl", p),
        ]
    raise ValueError(f"bad orientations {orientations!r}")


def _macro_cup_labels(orientations, left: Weight, right: Weight) -> list[Weight | None]:
    """Cup labels, slice by slice, for derived_crossing with the given strand labels."""
    o = tuple(orientations)
    if o == (UP, UP):
        return [None]
    if o == (UP, DOWN):
        return [right, None, None]
    if o == (DOWN, UP):
        return [left, None, None]
    return [left, right, None, None, None]


def over_sign(orientations: tuple[int, int], mover: str = "left") -> int:
    """Sign of the internal crossing making the strand that starts on ``mover`` pass over."""
    same = orientations[0] == orientations[1]
    s = 1 if same else -1
    return s if mover == "left" else -s


def braid_closure(word: Sequence[int], n: int) -> TangleDiagram:
    """Closure of a braid word on ``n`` upward strands; return strands run down on the right."""
    if n < 1:
        raise ValueError("a braid needs at least one strand")
    for g in word:
        if g == 0 or abs(g) > n - 1:
            raise ValueError(f"generator {g} out of range for {n} strands")
    slices = [SliceGen("cupr", i) for i in range(n)]
    slices += [SliceGen("crosspos" if g > 0 else "crossneg", abs(g) - 1) for g in word]
    slices += [SliceGen("capr", i) for i in reversed(range(n))]
    return TangleDiagram((), tuple(slices))


def braid_tangle(word: Sequence[int], n: int) -> TangleDiagram:
    for g in word:
        if g == 0 or abs(g) > n - 1:
            raise ValueError(f"generator {g} out of range for {n} strands")
    return TangleDiagram((UP,) * n, tuple(SliceGen("crosspos" if g > 0 else "crossneg", abs(g) - 1) for g in word))


# ---------------------------------------------------------------------------
# text formats

_WEIGHT_RE = re.compile(r"\(\s*(-?\d+)\s*,\s*(-?\d+)\s*\)")
_BRAID_RE = re.compile(r"(?:braid\s+)?n\s*=\s*(\d+)\s*:(.*)", re.IGNORECASE)


def parse_weight(text: str) -> Weight:
    m = _WEIGHT_RE.fullmatch(text.strip())
    if not m:
        raise ParseError(f"bad weight literal {text!r}; expected (a,b)")
    return Weight(int(m.group(1)), int(m.group(2)))


def parse_braid(text: str) -> tuple[list[int], int]:
    """Parse ``"n=2: 1 1 -1"`` (optionally prefixed with ``braid``)."""
    m = _BRAID_RE.fullmatch(text.strip())
    if not m:
        raise ParseError(f"bad braid word {text.strip()!r}; expected 'n=<strands>: <generators>'")
    n = int(m.group(1))
    try:
        word = [int(tok) for tok in m.group(2).replace(",", " ").split()]
    except ValueError:
        raise ParseError(f"bad generator in braid word {text.strip()!r}") from None
    return word, n


@dataclass
class ParsedInput:
    diagram: TangleDiagram
    labels: dict[int, Weight]
    braid: tuple[list[int], int] | None = None


def parse_morse(text: str) -> ParsedInput:
    """Parse the Morse or braid text format; errors name the offending line."""
    source = None
    slices: list[SliceGen] = []
    labels: dict[int, Weight] = {}
    braid = None
    slice_lines: list[int] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        low = line.lower()
        if low.startswith("signature"):
            if source is not None or braid is not None:
                raise ParseError("duplicate header", lineno)
            body = line.split(":", 1)[1] if ":" in line else ""
            toks = body.split()
            if any(t not in "+-" or len(t) != 1 for t in toks):
                raise ParseError(f"bad signature {body.strip()!r}", lineno)
            source = tuple(UP if t == "+" else DOWN for t in toks)
        elif low.startswith("braid"):
            if source is not None or braid is not None:
                raise ParseError("duplicate header", lineno)
            try:
                braid = parse_braid(line)
            except ParseError as e:
                raise ParseError(str(e), lineno) from None
        elif low.startswith("label"):
            m = re.fullmatch(r"label\s+(c\d+)\s*=\s*(.+)", line, re.IGNORECASE)
            if not m:
                raise ParseError(f"bad label line {line!r}", lineno)
            try:
                labels[component_key(m.group(1).lower())] = parse_weight(m.group(2))
            except ParseError as e:
                raise ParseError(str(e), lineno) from None
        else:
            toks = line.split()
            if len(toks) != 2 or toks[0].lower() not in KINDS or not toks[1].isdigit():
                raise ParseError(f"bad slice {line!r}", lineno)
            if source is None:
                if braid is not None:
                    raise ParseError("slices cannot follow a braid header", lineno)
                raise ParseError("slice before the signature header", lineno)
            slices.append(SliceGen(toks[0].lower(), int(toks[1])))
            slice_lines.append(lineno)
    if braid is not None:
        try:
            d = braid_closure(braid[0], braid[1])
        except ValueError as e:
            raise ParseError(str(e)) from None
        return ParsedInput(d, labels, braid)
    if source is None:
        raise ParseError("missing 'signature:' or 'braid' header")
    try:
        d = TangleDiagram(source, tuple(slices))
    except SignatureError as e:
        # translate the slice index into a line number
        m = re.match(r"slice (\d+)", str(e))
        line = slice_lines[int(m.group(1))] if m else None
        raise type(e)(f"line {line}: {e}" if line else str(e)) from None
    return ParsedInput(d, labels)


def render_morse(d: TangleDiagram, labels: Mapping[int, Weight] | None = None) -> str:
    lines = [("signature: " + _sig_str(d.source)).rstrip()]
    lines += [str(s) for s in d.slices]
    for c, w in sorted((labels or {}).items()):
        lines.append(f"label c{c} = {w}")
    return "\n".join(lines) + "\n"
