"""Command-line front end.

Exit codes: 0 success, 1 parse error, 2 validation error, 3 internal
non-scalar assertion, 4 a requested check or golden comparison failed.
"""
from __future__ import annotations

import argparse
import re
import sys
from dataclasses import dataclass
from pathlib import Path

from .invariant import (
    ScalarityError,
    alexander,
    cut_independence_check,
    cut_sites,
    hat_q_result,
    q_closed,
    skein_check,
    skein_triples,
)
from .repcat import EPS1, WeightError
from .scalar import LaurentPoly, render_laurent, rf
from .tangle import (
    ParseError,
    ParsedInput,
    TangleError,
    braid_closure,
    component_key,
    normalize_labeling,
    parse_braid,
    parse_morse,
    parse_weight,
)

EXIT_OK, EXIT_PARSE, EXIT_VALIDATION, EXIT_INTERNAL, EXIT_CHECK = 0, 1, 2, 3, 4
INVARIANTS = ("q", "hatq", "alexander", "check-skein", "check-cuts")
INPUT_SUFFIXES = (".txt", ".morse", ".braid")


class CheckFailed(Exception):
    pass


@dataclass
class Job:
    source: str  # file path or inline braid text
    inline: bool
    invariant: str = "alexander"
    label: str | None = None
    cut: str | None = None
    fmt: str = "q"


def parse_labeling(text: str):
    """Either a single weight "(a,b)" or "c0=(a,b),c1=(c,d)"."""
    text = text.strip()
    if "=" not in text:
        return parse_weight(text)
    out = {}
    for m in re.finditer(r"\s*(c\d+)\s*=\s*(\([^)]*\))\s*(,|$)", text):
        out[component_key(m.group(1))] = parse_weight(m.group(2))
    rebuilt = ",".join(f"{k}={v}" for k, v in re.findall(r"(c\d+)\s*=\s*(\([^)]*\))", text))
    if not out or rebuilt.replace(" ", "") != text.replace(" ", ""):
        raise ParseError(f"bad labeling {text!r}; expected (a,b) or c0=(a,b),c1=...")
    return out


def render_t(p: LaurentPoly) -> str | None:
    """Render in t = q^2 when every exponent is even."""
    if any(e % 2 for e in p.coeffs):
        return None
    s = render_laurent(LaurentPoly({e // 2: c for e, c in p.coeffs.items()}))
    return s.replace("q", "t")


def _format_value(value, fmt: str) -> str:
    value = rf(value)
    if fmt == "t" and value.is_laurent():
        t = render_t(value.as_laurent())
        if t is not None:
            return t
    return str(value)


def load(job: Job) -> ParsedInput:
    if job.inline:
        word, n = parse_braid(job.source)
        try:
            d = braid_closure(word, n)
        except ValueError as e:
            raise TangleError(str(e)) from None
        return ParsedInput(d, {}, (word, n))
    return parse_morse(Path(job.source).read_text())


def resolve_labeling(job: Job, parsed: ParsedInput):
    if job.invariant == "alexander":
        if job.label is not None and parse_labeling(job.label) != EPS1:
            raise TangleError("alexander uses the constant labeling (1,0)")
        return EPS1
    if job.label is not None:
        return parse_labeling(job.label)
    return parsed.labels or EPS1


def resolve_cut(job: Job, d, labeling):
    """(λ, site) for a --cut value: a component id or a weight."""
    lab = normalize_labeling(d, labeling)
    if job.cut is None:
        return (lab[0] if lab else None), None
    if job.cut.strip().startswith("("):
        return parse_weight(job.cut), None
    comp = component_key(job.cut)
    if comp not in lab:
        raise TangleError(f"no component {job.cut}")
    sites = [s for s in cut_sites(d, lab, lab[comp]) if s.component == comp]
    return lab[comp], sites[0]


def run(job: Job) -> str:
    """Compute the report for one job; raises on error."""
    parsed = load(job)
    d = parsed.diagram
    labeling = resolve_labeling(job, parsed)
    inv = job.invariant
    if inv == "q":
        return _format_value(q_closed(d, labeling), job.fmt)
    if inv == "alexander":
        return _format_value(alexander(d), job.fmt)
    if inv == "hatq":
        lam, site = resolve_cut(job, d, labeling)
        res = hat_q_result(d, labeling, lam, site)
        out = _format_value(res.value, job.fmt)
        if any(w != EPS1 for w in normalize_labeling(d, labeling).values()):
            out += "\nwrithe: " + " ".join(f"{c}={w}" for c, w in res.writhes)
        return out
    if inv == "check-skein":
        if parsed.braid is None:
            raise TangleError("check-skein needs a braid word input")
        triples = skein_triples(*parsed.braid)
        bad = [i for i, t in enumerate(triples) if not skein_check(*t)]
        if bad:
            raise CheckFailed(f"skein relation fails at crossing(s) {', '.join(map(str, bad))}")
        return f"skein ok at {len(triples)} crossing(s)"
    if inv == "check-cuts":
        lam, _ = resolve_cut(job, d, labeling)
        n = len(cut_sites(d, labeling, lam))
        if not cut_independence_check(d, labeling, lam):
            raise CheckFailed(f"cut sites disagree for label {lam}")
        return f"cuts agree at {n} site(s)"
    raise ValueError(f"unknown invariant {inv!r}")


def _exit_code(exc: BaseException) -> int:
    if isinstance(exc, ParseError):
        return EXIT_PARSE
    if isinstance(exc, ScalarityError):
        return EXIT_INTERNAL
    if isinstance(exc, CheckFailed):
        return EXIT_CHECK
    return EXIT_VALIDATION


def run_safe(job: Job) -> tuple[int, str]:
    try:
        return EXIT_OK, run(job)
    except (ParseError, ScalarityError, CheckFailed, TangleError, WeightError, ValueError, OSError) as e:
        return _exit_code(e), f"error: {e}"


def read_golden(path: Path) -> dict[str, str]:
    out = {}
    for lineno, line in enumerate(path.read_text().splitlines(), 1):
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        if ":" not in line:
            raise ParseError(f"bad golden line {line!r}", lineno)
        name, value = line.split(":", 1)
        out[name.strip()] = value.strip()
    return out


def run_batch(args, out) -> int:
    root = Path(args.batch)
    if not root.is_dir():
        print(f"error: {root} is not a directory", file=sys.stderr)
        return EXIT_VALIDATION
    files = sorted(p for p in root.iterdir() if p.suffix in INPUT_SUFFIXES)
    results, worst = {}, EXIT_OK
    for path in files:
        job = Job(str(path), False, args.invariant, args.label, args.cut, args.format)
        code, text = run_safe(job)
        text = text.replace("\n", "; ")
        results[path.name] = text
        print(f"{path.name}: {text}", file=out)
        worst = max(worst, code)
    if args.golden:
        try:
            golden = read_golden(Path(args.golden))
        except (ParseError, OSError) as e:
            print(f"error: {e}", file=sys.stderr)
            return EXIT_PARSE if isinstance(e, ParseError) else EXIT_VALIDATION
        mismatches = [
            (name, golden.get(name), results.get(name)) for name in sorted(set(golden) | set(results))
            if golden.get(name) != results.get(name)
        ]
        for name, want, got in mismatches:
            print(f"mismatch {name}: expected {want!r}, got {got!r}", file=sys.stderr)
        if mismatches:
            return max(worst, EXIT_CHECK)
    return worst


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gl11", description="Quantum gl(1|1) invariants of tangles and links.")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--braid", help='inline braid word, e.g. "n=2: 1 1 1"')
    src.add_argument("--morse", metavar="FILE", help="Morse-word or braid file")
    src.add_argument("--batch", metavar="DIR", help="evaluate every input file in DIR")
    p.add_argument("--invariant", choices=INVARIANTS, default="alexander")
    p.add_argument("--label", help='constant weight "(a,b)" or "c0=(a,b),c1=(c,d)"')
    p.add_argument("--cut", help="component to cut (cN) or label weight (a,b)")
    p.add_argument("--format", choices=("q", "t"), default="q")
    p.add_argument("--golden", metavar="FILE", help="expected batch output (name: value per line)")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if args.golden and not args.batch:
        print("error: --golden requires --batch", file=sys.stderr)
        return EXIT_VALIDATION
    if args.batch:
        return run_batch(args, sys.stdout)
    if args.braid is not None:
        job = Job(args.braid, True, args.invariant, args.label, args.cut, args.format)
    else:
        job = Job(args.morse, False, args.invariant, args.label, args.cut, args.format)
    code, text = run_safe(job)
    print(text, file=sys.stdout if code == EXIT_OK else sys.stderr)
    return code


if __name__ == "__main__":
    sys.exit(main())
