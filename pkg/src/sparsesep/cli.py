"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 parse error, 3 input violates a
state invariant, 4 verification disagreement.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from pathlib import Path

from . import zoo
from .oracle import MAX_DENSE_QUBITS
from .separability import ClassificationReport, FactorTree, classify, factorize_fully
from .state import (
    PureState,
    StateInvariantError,
    StateParseError,
    format_label,
    load_state,
    serialize_state,
    state_to_dict,
    terms_to_list,
)
from .verify import concordance

EXIT_OK, EXIT_USAGE, EXIT_PARSE, EXIT_INVARIANT, EXIT_DISAGREE = 0, 1, 2, 3, 4


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


# ---------------------------------------------------------------------------
# report serialization


def report_to_dict(r: ClassificationReport, timing_ms: float | None = None) -> dict:
    out = {
        "n": r.n,
        "m": r.m,
        "family": int(r.family),
        "separable": r.separable,
        "fast_path": r.fast_path.value,
        "witness": None,
        "search": {
            "subsets_examined": r.search.subsets_examined,
            "canonical_forms": r.search.canonical_forms,
            "rank1_hits": r.search.rank1_hits,
        },
        "note": r.note,
    }
    if r.witness is not None:
        w = r.witness
        out["witness"] = {
            "subset": list(w.subset.qubits),
            "left_terms": terms_to_list(w.left),
            "right_terms": terms_to_list(w.right),
            "scale_convention": w.scale_convention,
        }
    if timing_ms is not None:
        out["timing_ms"] = round(timing_ms, 3)
    return out


def factor_tree_to_dict(t: FactorTree, timing_ms: float | None = None) -> dict:
    out = {
        "n": t.n,
        "factors": [
            {"qubits": list(sub.qubits), "terms": terms_to_list(f)} for sub, f in t.factors
        ],
    }
    if timing_ms is not None:
        out["timing_ms"] = round(timing_ms, 3)
    return out


def format_terms(s: PureState) -> str:
    return " + ".join(f"({c})|{format_label(b, s.n)}>" for b, c in s.terms)


def report_to_text(r: ClassificationReport, timing_ms: float | None = None) -> str:
    lines = [
        f"n = {r.n}, m = {r.m}",
        f"family: {int(r.family)} ({r.family.description})",
        f"separable: {'yes' if r.separable else 'no'}",
        f"fast path: {r.fast_path.value}",
    ]
    if r.witness is not None:
        w = r.witness
        lines += [
            f"witness subset: {w.subset}",
            f"  left factor on {w.subset}: {format_terms(w.left)}",
            f"  right factor on {w.subset.complement()}: {format_terms(w.right)}",
            f"  scale convention: {w.scale_convention}",
        ]
    s = r.search
    lines.append(
        f"search: subsets examined {s.subsets_examined}, canonical forms {s.canonical_forms},"
        f" rank-1 hits {s.rank1_hits}"
    )
    lines.append(f"note: {r.note}")
    if timing_ms is not None:
        lines += ["", f"timing: {timing_ms:.3f} ms"]
    return "\n".join(lines) + "\n"


def factor_tree_to_text(t: FactorTree, timing_ms: float | None = None) -> str:
    lines = [f"n = {t.n}, {len(t.factors)} factor(s)"]
    for sub, f in t.factors:
        lines.append(f"  {sub}: {format_terms(f)}")
    if timing_ms is not None:
        lines += ["", f"timing: {timing_ms:.3f} ms"]
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# argument handling


def _add_generator_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, help="qubit count")
    p.add_argument("--k", type=int, help="excitation count (dicke)")
    p.add_argument("--m", type=int, help="term count (random_sparse)")
    p.add_argument("--blocks", help="comma-separated block widths (random_product)")
    p.add_argument("--max-terms", type=int, default=4, help="max terms per random factor")
    p.add_argument("--seed", type=int, default=0)


def _add_common(p: argparse.ArgumentParser, with_source: bool = True) -> None:
    if with_source:
        p.add_argument("file", nargs="?", help="state file (text lines or structured object)")
        p.add_argument("--gen", choices=zoo.KINDS, help="generate the input instead of reading FILE")
    _add_generator_args(p)
    p.add_argument("--format", choices=["text", "json", "json-like"], default="text")
    p.add_argument("--workers", type=int, default=1, help="processes for the subset scan")
    p.add_argument("--no-timing", action="store_true", help="omit timing for reproducible output")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="sparsesep", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("classify", help="assign a state to one of the four families")
    _add_common(p)
    p.add_argument("--no-shortcuts", action="store_true", help="disable prime-m and m=4 paths")

    p = sub.add_parser("factorize", help="split a state into unsplittable factors")
    _add_common(p)

    p = sub.add_parser("verify", help="cross-check against the dense oracle")
    _add_common(p)
    p.add_argument("--max-n", type=int, default=10)
    p.add_argument("--count", type=int, default=1, help="number of seeded states (seed, seed+1, ...)")

    p = sub.add_parser("gen", help="write a generated state file")
    p.add_argument("kind", choices=zoo.KINDS)
    _add_generator_args(p)
    p.add_argument("-o", "--output", help="output path (default stdout)")
    p.add_argument("--format", choices=["text", "json", "json-like"], default="text")

    p = sub.add_parser("bench", help="timing table over named states")
    p.add_argument("--n-range", default="4..12", help="inclusive range A..B")
    p.add_argument("--kinds", default="ghz,w,dicke,linear_cluster")
    p.add_argument("--workers", type=int, default=1)
    return parser


def _spec_from_args(kind: str, args, seed: int | None = None) -> zoo.GeneratorSpec:
    blocks = ()
    if args.blocks:
        try:
            blocks = tuple(int(x) for x in args.blocks.split(","))
        except ValueError:
            raise UsageError(f"bad --blocks {args.blocks!r}") from None
    try:
        return zoo.GeneratorSpec(
            kind=kind,
            n=args.n,
            k=args.k,
            m=args.m,
            blocks=blocks,
            seed=args.seed if seed is None else seed,
            max_terms=args.max_terms,
        )
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _generate(spec: zoo.GeneratorSpec) -> PureState:
    try:
        return zoo.generate(spec)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def _load_inputs(args) -> list[PureState]:
    count = getattr(args, "count", 1)
    if args.gen:
        if args.file:
            raise UsageError("give either FILE or --gen, not both")
        return [_generate(_spec_from_args(args.gen, args, args.seed + i)) for i in range(count)]
    if not args.file:
        raise UsageError("no input: give FILE or --gen KIND")
    text = sys.stdin.read() if args.file == "-" else _read(args.file)
    return [load_state(text)]


def _read(path: str) -> str:
    try:
        return Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _is_json(args) -> bool:
    return args.format in ("json", "json-like")


def _emit_json(obj, out) -> None:
    out.write(json.dumps(obj, indent=2) + "\n")


# ---------------------------------------------------------------------------
# commands


def cmd_classify(args, out) -> int:
    (s,) = _load_inputs(args)
    t0 = time.perf_counter()
    r = classify(s, shortcuts=not args.no_shortcuts, workers=args.workers)
    ms = None if args.no_timing else (time.perf_counter() - t0) * 1e3
    if _is_json(args):
        _emit_json(report_to_dict(r, ms), out)
    else:
        out.write(report_to_text(r, ms))
    return EXIT_OK


def cmd_factorize(args, out) -> int:
    (s,) = _load_inputs(args)
    t0 = time.perf_counter()
    tree = factorize_fully(s, workers=args.workers)
    ms = None if args.no_timing else (time.perf_counter() - t0) * 1e3
    if _is_json(args):
        _emit_json(factor_tree_to_dict(tree, ms), out)
    else:
        out.write(factor_tree_to_text(tree, ms))
    return EXIT_OK


def cmd_verify(args, out) -> int:
    if not 1 <= args.max_n <= MAX_DENSE_QUBITS:
        raise UsageError(f"--max-n must be in 1..{MAX_DENSE_QUBITS}")
    states = _load_inputs(args)
    for s in states:
        if s.n > args.max_n:
            raise StateInvariantError(f"state has {s.n} qubits, above --max-n {args.max_n}")
    rows = []
    agree = 0
    for i, s in enumerate(states):
        c = concordance(s)
        agree += c.agree
        rows.append(
            {
                "index": i,
                "n": s.n,
                "m": s.m,
                "family": c.family,
                "oracle_family": c.oracle_family,
                "cuts_checked": c.cuts_checked,
                "cut_disagreements": [list(cut.qubits) for cut in c.cut_disagreements],
                "agree": c.agree,
            }
        )
    total = len(states)
    if _is_json(args):
        _emit_json({"agree": agree, "total": total, "states": rows}, out)
    else:
        for row in rows:
            mark = "ok  " if row["agree"] else "FAIL"
            out.write(
                f"{mark} #{row['index']}: n={row['n']} m={row['m']} family={row['family']}"
                f" oracle={row['oracle_family']} cuts={row['cuts_checked']}"
                f" cut-disagreements={len(row['cut_disagreements'])}\n"
            )
        out.write(f"agree: {agree}/{total}\n")
    return EXIT_OK if agree == total else EXIT_DISAGREE


def cmd_gen(args, out) -> int:
    s = _generate(_spec_from_args(args.kind, args))
    text = json.dumps(state_to_dict(s), indent=2) + "\n" if _is_json(args) else serialize_state(s)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    else:
        out.write(text)
    return EXIT_OK


def _parse_range(text: str) -> range:
    try:
        a, b = (int(x) for x in text.split(".."))
    except ValueError:
        raise UsageError(f"bad --n-range {text!r}; expected A..B") from None
    if a < 2 or b < a:
        raise UsageError("--n-range needs 2 <= A <= B")
    return range(a, b + 1)


def _bench_state(kind: str, n: int) -> PureState | None:
    if kind == "ghz":
        return zoo.ghz(n)
    if kind == "w":
        return zoo.w(n)
    if kind == "dicke":
        return zoo.dicke(n, 2) if n >= 3 else None
    if kind == "linear_cluster":
        return zoo.linear_cluster(n) if n <= 12 else None
    raise UsageError(f"bench does not support kind {kind!r}")


def cmd_bench(args, out) -> int:
    ns = _parse_range(args.n_range)
    kinds = [k.strip() for k in args.kinds.split(",") if k.strip()]
    out.write(f"{'kind':<16}{'n':>4}{'m':>8}{'family':>8}{'ms':>12}{'ms(no-shortcut)':>18}\n")
    for kind in kinds:
        for n in ns:
            s = _bench_state(kind, n)
            if s is None:
                continue
            t0 = time.perf_counter()
            r = classify(s, workers=args.workers)
            t1 = time.perf_counter()
            classify(s, shortcuts=False, workers=args.workers)
            t2 = time.perf_counter()
            out.write(
                f"{kind:<16}{n:>4}{s.m:>8}{int(r.family):>8}"
                f"{(t1 - t0) * 1e3:>12.2f}{(t2 - t1) * 1e3:>18.2f}\n"
            )
    return EXIT_OK


COMMANDS = {
    "classify": cmd_classify,
    "factorize": cmd_factorize,
    "verify": cmd_verify,
    "gen": cmd_gen,
    "bench": cmd_bench,
}


def run(argv: list[str] | None = None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    try:
        args = build_parser().parse_args(argv)
        return COMMANDS[args.command](args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return EXIT_USAGE
    except StateParseError as exc:
        err.write(f"parse error: {exc}\n")
        return EXIT_PARSE
    except StateInvariantError as exc:
        err.write(f"invalid state: {exc}\n")
        return EXIT_INVARIANT


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
