"""Command-line front end.

Every subcommand prints one report: the request, the result, the tool
version and ``"exact": true`` (all arithmetic is over the integers).
Exit codes: 0 success, 1 a verification found a failed identity, 2 usage
error.
"""
from __future__ import annotations

import argparse
import json
import sys
from typing import Any, Sequence

from . import __version__
from .bg import bg_report
from .borel import (
    borel_cohomology_closed,
    borel_cohomology_recursive,
    borel_homology_closed,
    borel_homology_recursive,
    cohomology_h_multiplicity,
    homology_coefficients,
    homology_h_multiplicity,
)
from .grmod import InvalidPrime, Symbol, check_prime, specialize_p2_report
from .resolve import WindowTooWide, tor, verify_table_row
from .tate import consistency_check, tate_decomposition, tate_homotopy

__all__ = ["main", "run", "build_parser", "verify_all", "to_text", "parse_text"]


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# text format: one "path = json-value" line per leaf, '#' lines are comments


def _flatten(obj: Any, prefix: str, out: list[str]) -> None:
    if isinstance(obj, dict) and obj:
        for k, v in obj.items():
            if not isinstance(k, str) or any(c in k for c in ".[]= "):
                raise ValueError(f"key {k!r} cannot be written in text form")
            _flatten(v, f"{prefix}.{k}" if prefix else k, out)
    elif isinstance(obj, list) and obj:
        for i, v in enumerate(obj):
            _flatten(v, f"{prefix}[{i}]", out)
    else:
        out.append(f"{prefix} = {json.dumps(obj)}")


def to_text(report: dict, comments: Sequence[str] = ()) -> str:
    lines = [f"# {c}" for c in comments]
    _flatten(report, "", lines)
    return "\n".join(lines) + "\n"


def _split_path(path: str) -> list:
    parts: list = []
    for chunk in path.split("."):
        name, _, rest = chunk.partition("[")
        parts.append(name)
        if rest:
            for idx in ("[" + rest).strip("[]").split("]["):
                parts.append(int(idx))
    return parts


def parse_text(text: str) -> dict:
    """Inverse of :func:`to_text`."""
    root: dict = {}
    for line in text.splitlines():
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        path, _, value = line.partition(" = ")
        keys = _split_path(path)
        node: Any = root
        for key, nxt in zip(keys, keys[1:]):
            empty = [] if isinstance(nxt, int) else {}
            if isinstance(key, int):
                while len(node) <= key:
                    node.append(None)
                if node[key] is None:
                    node[key] = empty
                node = node[key]
            else:
                node = node.setdefault(key, empty)
        last = keys[-1]
        val = json.loads(value)
        if isinstance(last, int):
            while len(node) <= last:
                node.append(None)
            node[last] = val
        else:
            node[last] = val
    return root


# ---------------------------------------------------------------------------
# argument handling


def _window(text: str) -> tuple[int, int]:
    try:
        lo_s, hi_s = text.split(":")
        lo, hi = int(lo_s), int(hi_s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected lo:hi, got {text!r}")
    if lo > hi:
        raise argparse.ArgumentTypeError(f"reversed window {lo}:{hi}")
    return lo, hi


def _prime(text: str) -> int:
    try:
        return check_prime(int(text))
    except (ValueError, InvalidPrime):
        raise argparse.ArgumentTypeError(f"{text!r} is not a prime")


def _nonneg(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer")
    if v < 0:
        raise argparse.ArgumentTypeError(f"{text!r} is negative")
    return v


def _symbol(text: str) -> Symbol:
    try:
        return Symbol(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc))


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ktate",
        description="Exact Borel and Tate computations for connective K-theory of (Z/p)^n.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, n=True, window=False, default_window=None):
        p.add_argument("--p", type=_prime, default=2, help="prime (default 2)")
        if n:
            p.add_argument("--n", type=_nonneg, default=1, help="rank of the group (default 1)")
        if window:
            p.add_argument(
                "--degrees", type=_window, default=default_window, metavar="LO:HI",
                required=default_window is None,
            )
        p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("borel-homology", help="decomposition of k ^ B(Z/p)^n_+")
    common(p)
    p.add_argument("--method", choices=("closed", "recursive"), default="closed")

    p = sub.add_parser("borel-cohomology", help="decomposition of F(B(Z/p)^n, k)")
    common(p)
    p.add_argument("--method", choices=("closed", "recursive"), default="closed")
    p.add_argument("--unreduced", action="store_true", help="include the split-off k")

    p = sub.add_parser("tate", help="Tate decomposition")
    common(p)

    p = sub.add_parser("homotopy", help="homotopy groups in a degree window")
    common(p, window=True, default_window=(-10, 10))
    p.add_argument("--of", choices=("tate", "borel-homology"), default="tate")

    p = sub.add_parser("tor", help="Tor over Z[beta] from explicit resolutions")
    common(p, n=False, window=True, default_window=(0, 20))
    p.add_argument("--a", type=_symbol, required=True)
    p.add_argument("--b", type=_symbol, required=True)
    p.add_argument("--j", type=int, choices=(0, 1, 2), default=0)

    p = sub.add_parser("bg-check", help="reconciliation with the Bruner-Greenlees formula")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--r", type=int)
    g.add_argument("--r-max", type=int, default=10)
    p.add_argument("--format", choices=("text", "json"), default="text")

    p = sub.add_parser("verify-all", help="run every identity suite")
    p.add_argument("--p-max", type=int, default=5, help="check every prime up to this (default 5)")
    p.add_argument("--n-max", type=_nonneg, default=None, help="override the rank bound")
    p.add_argument("--degrees", type=_window, default=(-20, 40), metavar="LO:HI")
    p.add_argument("--format", choices=("text", "json"), default="text")
    return parser


# ---------------------------------------------------------------------------
# verification driver


def _primes_up_to(n: int) -> list[int]:
    return [q for q in range(2, n + 1) if all(q % d for d in range(2, int(q**0.5) + 1))]


def verify_all(primes: Sequence[int] = (2, 3, 5), n_max: int | None = None, window=(-20, 40)) -> dict:
    """Run every suite; failures are recorded, never raised."""
    lo, hi = window
    suites: dict[str, list[dict]] = {}

    def n_range(p):
        top = n_max if n_max is not None else (6 if p == 2 else 4)
        return range(0, top + 1)

    suites["specialize_p2"] = [{"case": name, "ok": ok} for name, ok in specialize_p2_report()]

    rows = []
    for p in primes:
        for a, b in (("M", "M"), ("M", "H"), ("M", "N")):
            case = f"p={p} {a}.{b} [{lo},{hi}]"
            try:
                rows.append({"case": case, "ok": verify_table_row(Symbol(a), Symbol(b), p, lo, hi)})
            except WindowTooWide as exc:
                rows.append({"case": case, "ok": None, "status": "WindowTooWide", "detail": str(exc)})
    suites["table_rows"] = rows

    borel, duality, tate_rows = [], [], []
    for p in primes:
        for n in n_range(p):
            hom = borel_homology_recursive(p, n).decomposition == borel_homology_closed(p, n).decomposition
            coh = (
                borel_cohomology_recursive(p, n).decomposition
                == borel_cohomology_closed(p, n).decomposition
            )
            borel.append({"case": f"p={p} n={n}", "ok": hom and coh, "homology": hom, "cohomology": coh})
            duality.append({
                "case": f"p={p} n={n}",
                "ok": cohomology_h_multiplicity(p, n) == homology_h_multiplicity(p, n).inverse_variable(),
            })
            tate_rows.append({"case": f"p={p} n={n}", "ok": consistency_check(p, n)})
    suites["borel_recursion"] = borel
    suites["duality"] = duality
    suites["tate_consistency"] = tate_rows

    bg_rows = []
    if 2 in primes:
        for r in range(2, max(n_range(2), default=0) + 1):
            rep = bg_report(r)
            bad = [i["name"] for i in rep["all_identities"] if not i["holds"]]
            bg_rows.append({"case": f"r={r}", "ok": not bad, **({"failed": bad} if bad else {})})
    suites["bg"] = bg_rows

    failed = [
        f"{name}: {row['case']}" for name, rows in suites.items() for row in rows if row["ok"] is False
    ]
    return {"suites": suites, "failed": failed, "ok": not failed}


# ---------------------------------------------------------------------------


def _request(args: argparse.Namespace) -> dict:
    out = {}
    for k, v in sorted(vars(args).items()):
        if k == "format" or v is None:
            continue
        if isinstance(v, Symbol):
            v = str(v)
        elif isinstance(v, tuple):
            v = f"{v[0]}:{v[1]}"
        out[k] = v
    return out


def _compute(args: argparse.Namespace) -> tuple[Any, int, list[str]]:
    cmd = args.command
    if cmd == "borel-homology":
        fn = borel_homology_closed if args.method == "closed" else borel_homology_recursive
        res = fn(args.p, args.n)
        return res.to_json(), 0, [str(res.decomposition)]
    if cmd == "borel-cohomology":
        if args.method == "closed":
            res = borel_cohomology_closed(args.p, args.n, unreduced=args.unreduced)
        else:
            res = borel_cohomology_recursive(args.p, args.n, unreduced=args.unreduced)
        return res.to_json(), 0, [str(res.decomposition)]
    if cmd == "tate":
        res = tate_decomposition(args.p, args.n)
        return res.to_json(), 0, [
            f"Q{args.n} multiplicity: {res.q_multiplicity}",
            f"H multiplicity (at zero): {res.f_hom}",
            f"H multiplicity (at infinity): {res.f_coh}",
        ]
    if cmd == "homotopy":
        lo, hi = args.degrees
        if args.of == "tate":
            g = tate_homotopy(args.p, args.n, lo, hi)
        else:
            g = homology_coefficients(args.p, args.n, lo, hi)
        return g.to_json(), 0, str(g).splitlines()
    if cmd == "tor":
        lo, hi = args.degrees
        g = tor(args.a, args.b, args.j, args.p, lo, hi)
        return g.to_json(), 0, str(g).splitlines()
    if cmd == "bg-check":
        rs = [args.r] if args.r is not None else list(range(2, args.r_max + 1))
        if not rs or min(rs) < 2:
            raise UsageError("r must be at least 2")
        reports = [bg_report(r) for r in rs]
        bad = [
            f"r={rep['r']} {i['name']}" for rep in reports for i in rep["all_identities"] if not i["holds"]
        ]
        notes = [f"r={rep['r']}: all identities hold" for rep in reports if not any(
            not i["holds"] for i in rep["all_identities"])] + [f"FAILED {b}" for b in bad]
        return reports, 1 if bad else 0, notes
    if cmd == "verify-all":
        primes = _primes_up_to(args.p_max)
        if not primes:
            raise UsageError("--p-max must be at least 2")
        res = verify_all(primes, args.n_max, args.degrees)
        notes = [
            f"{name}: {sum(r['ok'] is True for r in rows)} passed, "
            f"{sum(r['ok'] is False for r in rows)} failed, {sum(r['ok'] is None for r in rows)} skipped"
            for name, rows in res["suites"].items()
        ] + [f"FAILED {f}" for f in res["failed"]]
        return res, 0 if res["ok"] else 1, notes
    raise UsageError(f"unknown command {cmd!r}")


def _glue_windows(argv: Sequence[str]) -> list[str]:
    # let "--degrees -4:6" through; argparse would read -4:6 as an option
    out: list[str] = []
    it = iter(argv)
    for a in it:
        if a == "--degrees":
            nxt = next(it, None)
            out.append(a if nxt is None else f"{a}={nxt}")
        else:
            out.append(a)
    return out


def run(argv: Sequence[str] | None = None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    argv = _glue_windows(sys.argv[1:] if argv is None else argv)
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result, code, notes = _compute(args)
    except (UsageError, WindowTooWide, InvalidPrime, ValueError) as exc:
        print(f"ktate: error: {exc}", file=stderr)
        return 2
    report = {
        "request": {"command": args.command, **_request(args)},
        "result": result,
        "version": __version__,
        "exact": True,
    }
    if args.format == "json":
        stdout.write(json.dumps(report, indent=2) + "\n")
    else:
        stdout.write(to_text(report, notes))
    return code


def main(argv: Sequence[str] | None = None) -> None:
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
