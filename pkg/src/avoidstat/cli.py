"""Command-line front end.

Exit status: 0 on success or a passed verification, 1 when a verification
finds a counterexample (the witness is printed), 2 on usage errors.

Output formats (``--format``):

  table  aligned columns for reading (default)
  csv    header line then one row per record
  json   an array of records or a single object; every integer is written
         as a decimal string so no precision is lost

Ranges are written ``a..b`` (inclusive) or as a single value. Permutations
are comma/space separated, or a bare digit string when n <= 9. The default
worker count comes from ``$AVOIDSTAT_THREADS``; output never depends on it.
"""

from __future__ import annotations

import argparse
import csv
import json
import sys
from typing import Iterable, Sequence

from . import avoiders, bijection, equiv, series
from .avoiders import THREADS_ENV, catalan, default_threads, total_occurrences
from .bijection import BijectionError, ColoredTree, apply_F, apply_F_inverse, verify_bijection
from .perms import (PermutationError, count_occurrences, ends_in_max, format_occurrence,
                    format_perm, list_occurrences, parse_perm)
from .trees import TreeError

MAX_N = 14


class UsageError(Exception):
    pass


def parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise UsageError(f"bad range {text!r}; use a..b or a single integer") from None
    if lo > hi:
        raise UsageError(f"empty range {text!r}")
    if lo < 0:
        raise UsageError("ranges must be nonnegative")
    return lo, hi


def _perm_arg(text: str, what: str = "permutation"):
    try:
        return parse_perm(text)
    except PermutationError as exc:
        raise UsageError(f"{what}: {exc}") from None


def _pattern_arg(text: str, what: str):
    p = _perm_arg(text, what)
    if not p:
        raise UsageError(f"{what} must be nonempty")
    return p


def _check_n(n: int, force: bool):
    if n > MAX_N and not force:
        raise UsageError(f"n={n} exceeds the guard ({MAX_N}); pass --force to override")


def _jsonable(obj):
    if isinstance(obj, bool) or obj is None:
        return obj
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    return obj if isinstance(obj, (str, float)) else str(obj)


def _cell(v) -> str:
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, (tuple, list)):
        return format_perm(v) if v and all(isinstance(x, int) for x in v) else str(v)
    return str(v)


class Output:
    def __init__(self, fmt: str, stream=None):
        self.fmt = fmt
        self.out = stream or sys.stdout

    def records(self, headers: Sequence[str], rows: Iterable[Sequence]):
        rows = [list(r) for r in rows]
        if self.fmt == "json":
            data = [dict(zip(headers, (_cell(v) if isinstance(v, (tuple, list)) else v for v in r)))
                    for r in rows]
            self.obj(data)
        elif self.fmt == "csv":
            w = csv.writer(self.out, lineterminator="\n")
            w.writerow(headers)
            for r in rows:
                w.writerow([_cell(v) for v in r])
        else:
            cells = [[_cell(v) for v in r] for r in rows]
            widths = [max([len(h)] + [len(r[i]) for r in cells]) for i, h in enumerate(headers)]
            print("  ".join(h.rjust(w) for h, w in zip(headers, widths)), file=self.out)
            for r in cells:
                print("  ".join(c.rjust(w) for c, w in zip(r, widths)), file=self.out)

    def obj(self, data):
        print(json.dumps(_jsonable(data), indent=2), file=self.out)

    def line(self, text: str):
        print(text, file=self.out)


# subcommands

def cmd_catalan(args, out: Output) -> int:
    lo, hi = parse_range(args.n)
    out.records(["n", "catalan"], ((n, catalan(n)) for n in range(lo, hi + 1)))
    return 0


def cmd_enumerate(args, out: Output) -> int:
    r = _pattern_arg(args.r, "--r")
    _check_n(args.n, args.force)
    stream = avoiders.enumerate_avoiders(args.n, r)
    if args.limit is not None:
        stream = (p for i, p in zip(range(args.limit), stream))
    if out.fmt == "json":
        out.obj([format_perm(p) for p in stream])
        return 0
    if out.fmt == "csv":
        out.line("perm")
    for p in stream:
        out.line(format_perm(p))
    return 0


def cmd_count(args, out: Output) -> int:
    p = _perm_arg(args.p, "--p")
    q = _pattern_arg(args.q, "--q")
    if args.list:
        occs = list(list_occurrences(p, q))
        if out.fmt == "json":
            out.obj({"p": format_perm(p), "q": format_perm(q), "count": len(occs),
                     "occurrences": [format_occurrence(o) for o in occs]})
        else:
            out.records(["occurrence"], ([format_occurrence(o)] for o in occs))
        return 0
    out.records(["p", "q", "count"], [(p, q, count_occurrences(p, q))])
    return 0


def cmd_total(args, out: Output) -> int:
    q = _pattern_arg(args.q, "--q")
    r = _pattern_arg(args.r, "--r")
    lo, hi = parse_range(args.n)
    _check_n(hi, args.force)
    rows = ((n, total_occurrences(n, q, r, args.threads)) for n in range(lo, hi + 1))
    out.records(["n", "total"], rows)
    return 0


def cmd_signature(args, out: Output) -> int:
    q = _pattern_arg(args.q, "--q")
    r = _pattern_arg(args.r, "--r")
    lo, hi = parse_range(args.n)
    _check_n(hi, args.force)
    sig = avoiders.signature(q, lo, hi, r, args.threads)
    if out.fmt == "json":
        out.obj({"q": format_perm(q), "r": format_perm(r), "n_range": [lo, hi],
                 "values": list(sig.values)})
    else:
        out.records(["n", "total"], zip(range(lo, hi + 1), sig.values))
    return 0


def cmd_verify_triple(args, out: Output) -> int:
    if args.n is not None:
        lo, hi = parse_range(args.n)
    else:
        lo, hi = 1, args.n_max
    _check_n(hi, args.force)
    rows, bad = [], None
    for n in range(lo, hi + 1):
        vals = [total_occurrences(n, q, threads=args.threads)
                for q in ((2, 3, 1), (3, 1, 2), (2, 1, 3))]
        same = len(set(vals)) == 1
        rows.append([n, *vals, same])
        if not same and bad is None:
            bad = n
    out.records(["n", "S(231)", "S(312)", "S(213)", "equal"], rows)
    if bad is not None:
        print(f"counterexample: n={bad}", file=sys.stderr)
        return 1
    return 0


def cmd_verify_general(args, out: Output) -> int:
    q = _pattern_arg(args.q, "--q")
    t = _pattern_arg(args.t, "--t")
    if not (ends_in_max(q) and ends_in_max(t)):
        raise UsageError("--q and --t must end in their largest entry")
    if args.u < 1:
        raise UsageError("--u must be at least 1")
    left, right = bijection.side_patterns(q, t, args.u)
    lo, hi = parse_range(args.n)
    _check_n(hi, args.force)
    pair = equiv.TheoremPair(left, right, q, t, args.u)
    extra = pair.corollary_patterns() if args.corollary else []
    headers = ["n", f"S({format_perm(left)})", f"S({format_perm(right)})"]
    headers += [f"S({format_perm(c)})" for c in extra] + ["equal"]
    rows, bad = [], None
    for n in range(lo, hi + 1):
        vals = [total_occurrences(n, pat, threads=args.threads) for pat in (left, right, *extra)]
        same = len(set(vals)) == 1
        rows.append([n, *vals, same])
        if not same and bad is None:
            bad = n
    out.records(headers, rows)
    if bad is not None:
        print(f"counterexample: n={bad}", file=sys.stderr)
        return 1
    return 0


def cmd_bijection(args, out: Output) -> int:
    if args.tree:
        try:
            ct = ColoredTree.from_text(args.tree)
        except (BijectionError, TreeError) as exc:
            raise UsageError(str(exc)) from None
        side = ct.side
        if side is None:
            raise UsageError(f"black entries {ct.entries} are neither A-side nor B-side")
        img = apply_F(ct) if side == "A" else apply_F_inverse(ct)
        data = {"input": ct.to_text(), "input_side": side, "input_perm": format_perm(ct.perm),
                "input_pattern": format_perm(ct.pattern),
                "output": img.to_text(), "output_side": img.side,
                "output_perm": format_perm(img.perm), "output_pattern": format_perm(img.pattern)}
        if out.fmt == "json":
            out.obj(data)
        else:
            out.records(list(data), [list(data.values())])
        return 0
    if args.n is None:
        raise UsageError("give --n (exhaustive check) or --tree (single colored tree)")
    q = _pattern_arg(args.q, "--q")
    t = _pattern_arg(args.t, "--t")
    lo, hi = parse_range(args.n)
    reports = []
    for n in range(lo, hi + 1):
        try:
            reports.append(verify_bijection(n, q, t, args.u, force=args.force, threads=args.threads))
        except BijectionError as exc:
            raise UsageError(str(exc)) from None
    if out.fmt == "json":
        out.obj([r.as_dict() for r in reports])
    else:
        out.records(["n", "|A_n|", "|B_n|", "S(A)", "S(B)", "case1", "case2", "injective",
                     "surjective", "round-trips", "left-subtrees", "ok"],
                    [[r.n, r.size_a, r.size_b, r.expected_a, r.expected_b, r.case_counts[1],
                      r.case_counts[2], r.injective and r.image_in_b, r.surjective,
                      r.round_trip_a and r.round_trip_b, r.left_subtrees_kept, r.ok]
                     for r in reports])
    failed = [r for r in reports if not r.ok]
    if failed:
        print(f"counterexample at n={failed[0].n}: {failed[0].counterexample}", file=sys.stderr)
        return 1
    return 0


def cmd_series(args, out: Output) -> int:
    if args.order < 0:
        raise UsageError("--order must be nonnegative")
    values = series.named_series(args.which, args.order).integers()
    if out.fmt == "json":
        out.obj(values)
    else:
        out.records(["n", "value"], enumerate(values))
    return 0


def cmd_closed_a(args, out: Output) -> int:
    lo, hi = parse_range(args.n)
    if lo < 3:
        raise UsageError("the closed form holds for n >= 3 (totals for n = 0, 1, 2 are 0)")
    out.records(["n", "a_n"], ((n, series.a_closed(n)) for n in range(lo, hi + 1)))
    return 0


def cmd_search(args, out: Output) -> int:
    if args.n is not None:
        lo, hi = parse_range(args.n)
    else:
        lo, hi = args.h, args.h + 4
    try:
        classes = equiv.classify_patterns(args.h, lo, hi, force=args.force, threads=args.threads)
    except equiv.GuardError as exc:
        raise UsageError(str(exc)) from None
    explanations = {}
    if args.explain:
        for c in classes:
            if c.degenerate or len(c.members) < 2:
                continue
            rep = c.members[0]
            explanations[c.members] = [equiv.explain_known(rep, other) for other in c.members[1:]]
    if out.fmt == "json":
        data = {"h": args.h, "n_range": [lo, hi], "evidence": "empirical, range-limited",
                "classes": []}
        for c in classes:
            d = c.as_dict()
            if c.members in explanations:
                d["explanations"] = [e.as_dict() for e in explanations[c.members]]
            data["classes"].append(d)
        out.obj(data)
        return 0
    rows = []
    for c in classes:
        members = " ".join(format_perm(m) for m in c.members)
        note = "degenerate (contains 132)" if c.degenerate else ""
        if c.members in explanations:
            note = "; ".join(f"{format_perm(e.q2)}: {e.tag}" for e in explanations[c.members])
        rows.append([members, " ".join(map(str, c.signature)), note])
    if out.fmt == "table":
        out.line(f"# h={args.h}, n in {lo}..{hi} (empirical, range-limited)")
    out.records(["members", "signature", "note"], rows)
    return 0


def cmd_explain(args, out: Output) -> int:
    q = _pattern_arg(args.q, "--q")
    q2 = _pattern_arg(args.q2, "--q2")
    if len(q) != len(q2) or q == q2:
        raise UsageError("--q and --q2 must be distinct patterns of the same length")
    lo, hi = parse_range(args.n) if args.n else (None, None)
    if hi is not None:
        _check_n(hi, args.force)
    try:
        e = equiv.explain_pair(q, q2, lo, hi, threads=args.threads)
    except equiv.NotEquivalentError as exc:
        print(f"counterexample: {exc}", file=sys.stderr)
        return 1
    if out.fmt == "json":
        out.obj(e.as_dict())
    else:
        out.line(f"{format_perm(q)} ~ {format_perm(q2)} on n in {e.n_min}..{e.n_max}: {e.tag}")
        for a, b, tag, w in e.chain:
            out.line(f"  {format_perm(a)} -> {format_perm(b)}: {tag}" + (f" {w}" if w else ""))
    return 0


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=("table", "json", "csv"), default="table")
    common.add_argument("--threads", type=int, default=None,
                        help=f"worker threads (default ${THREADS_ENV} or 1)")
    common.add_argument("--force", action="store_true", help="override size guards")

    parser = argparse.ArgumentParser(
        prog="avoidstat", description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter)
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, fn, help_):
        p = sub.add_parser(name, parents=[common], help=help_)
        p.set_defaults(func=fn)
        return p

    p = add("catalan", cmd_catalan, "Catalan numbers")
    p.add_argument("--n", required=True, help="n or a..b")

    p = add("enumerate", cmd_enumerate, "list r-avoiding permutations in lexicographic order")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--r", default="132", help="avoided pattern (default 132)")
    p.add_argument("--limit", type=int)

    p = add("count", cmd_count, "occurrences of q in p")
    p.add_argument("--p", required=True)
    p.add_argument("--q", required=True)
    p.add_argument("--list", action="store_true", help="print each occurrence (1-based indices)")

    p = add("total", cmd_total, "S_{n,r}(q) by brute force")
    p.add_argument("--q", required=True)
    p.add_argument("--n", required=True, help="n or a..b")
    p.add_argument("--r", default="132")

    p = add("signature", cmd_signature, "vector of S_{n,r}(q) over a range of n")
    p.add_argument("--q", required=True)
    p.add_argument("--n", required=True, help="a..b")
    p.add_argument("--r", default="132")

    p = add("verify-triple", cmd_verify_triple, "check S(231) = S(312) = S(213)")
    p.add_argument("--n-max", type=int, default=10)
    p.add_argument("--n", help="a..b (overrides --n-max)")

    p = add("verify-general", cmd_verify_general,
            "check S((q-t)+i_u) = S((q+i_u)-t) by brute force")
    p.add_argument("--q", required=True)
    p.add_argument("--t", required=True)
    p.add_argument("--u", type=int, required=True)
    p.add_argument("--n", required=True, help="n or a..b")
    p.add_argument("--corollary", action="store_true",
                   help="also check ((q+i_v)-t)+i_{u-v} for 1 <= v < u")

    p = add("bijection", cmd_bijection,
            "exhaustively verify the subtree-swap bijection, or apply it to one colored tree")
    p.add_argument("--q", default="1")
    p.add_argument("--t", default="1")
    p.add_argument("--u", type=int, default=1)
    p.add_argument("--n", help="n or a..b")
    p.add_argument("--tree", help="colored tree 'TREE;i1,i2,...;k,m,u', e.g. '((..)(..));1,2,3;1,1,1'")

    p = add("series", cmd_series, "coefficients of C, D, H, Z, A or B")
    p.add_argument("--which", required=True, choices=sorted(series.NAMED))
    p.add_argument("--order", type=int, default=series.DEFAULT_ORDER)

    p = add("closed-a", cmd_closed_a, "closed form for the number of 213 copies (n >= 3)")
    p.add_argument("--n", required=True, help="n or a..b")

    p = add("search", cmd_search, "group all length-h patterns by signature")
    p.add_argument("--h", type=int, required=True)
    p.add_argument("--n", help="a..b (default h..h+4)")
    p.add_argument("--explain", action="store_true", help="explain each class member against the first")

    p = add("explain", cmd_explain, "explain why two patterns have equal totals")
    p.add_argument("--q", required=True)
    p.add_argument("--q2", required=True)
    p.add_argument("--n", help="a..b (default h..h+4)")
    return parser


def run(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.threads is None:
        args.threads = default_threads()
    elif args.threads < 1:
        parser.error("--threads must be positive")
    out = Output(args.format)
    try:
        return args.func(args, out)
    except (UsageError, PermutationError, equiv.GuardError, series.SeriesError,
            BijectionError, TreeError, ValueError) as exc:
        print(f"avoidstat {args.command}: error: {exc}", file=sys.stderr)
        return 2


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
