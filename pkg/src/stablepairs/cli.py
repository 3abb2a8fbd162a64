"""Command line front end.

Exit codes: 0 success, 1 a check failed, 2 usage or input error,
3 internal consistency error (a localization sum was not constant).
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import golden
from .classify import Status, classify, iso_bound, properness_by_negativity
from .gv import (
    CheckReport,
    GvInputError,
    box,
    check_conj_g0,
    check_conj_g1,
    engine_P0,
    integrality_audit,
    load_dataset,
    render,
    solve_n1,
)
from .localization import (
    co_coincidence_report,
    co_exponent,
    co_product_series,
    co_series,
    make_request,
    stable_pair_invariant,
)
from .ring import ConsistencyError
from .toric import parse_class, parse_surface

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CONSISTENCY = 0, 1, 2, 3

_VALUE_FLAGS = ("--L1", "--L2", "--beta", "--beta-max")


class UsageError(Exception):
    pass


def _glue_negative_values(argv: list[str]) -> list[str]:
    # "--L1 -1,-2" would otherwise be read as an unknown option
    out = []
    i = 0
    while i < len(argv):
        tok = argv[i]
        if tok in _VALUE_FLAGS and i + 1 < len(argv) and argv[i + 1].startswith("-") and argv[i + 1][1:2].isdigit():
            out.append(f"{tok}={argv[i + 1]}")
            i += 2
            continue
        out.append(tok)
        i += 1
    return out


def _geometry_args(p: argparse.ArgumentParser, beta: bool = True, n: bool = True):
    p.add_argument("--surface", required=True, help="P2, P1xP1, F1, F2 or Fa:a")
    p.add_argument("--L1", required=True, help="coefficients c1[,c2] in the Picard basis")
    p.add_argument("--L2", required=True, help="coefficients c1[,c2] in the Picard basis")
    if beta:
        p.add_argument("--beta", required=True, help="curve class d1[,d2]")
    if n:
        p.add_argument("--n", type=int, required=True)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="stablepairs", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("human", "tsv"), default="human")
    parser.add_argument("--jobs", type=int, default=1)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariant", help="one invariant P_{n,beta}")
    _geometry_args(p)

    p = sub.add_parser("table", help="sweep a box of classes and n")
    _geometry_args(p, beta=False, n=False)
    p.add_argument("--beta-max", help="largest class d1[,d2] (default 4 per coordinate)")
    p.add_argument("--n-max", type=int, default=2)
    p.add_argument("--golden", action="store_true", help="only bundled reference cells, with a diff")

    for name in ("check-g0", "check-g1"):
        p = sub.add_parser(name, help=f"{'genus-0' if name == 'check-g0' else 'genus-1'} conjecture check")
        p.add_argument("--gv", required=True, help="dataset path")
        if name == "check-g0":
            p.add_argument("--n-max", type=int, default=2)

    p = sub.add_parser("classify", help="moduli-space status")
    _geometry_args(p)

    p = sub.add_parser("co", help="Euler numbers of twisted tangent bundles")
    _geometry_args(p, beta=False, n=False)
    p.add_argument("--m-max", type=int, default=4)
    p.add_argument("--beta", help="also compare with the invariant of this class")
    p.add_argument("--n", type=int, default=0)

    sub.add_parser("selftest", help="recompute every bundled reference value")

    for action in sub.choices.values():
        action.add_argument("--format", choices=("human", "tsv"), default=argparse.SUPPRESS)
        action.add_argument("--jobs", type=int, default=argparse.SUPPRESS)
    return parser


# ---------------------------------------------------------------------------
# machine rows


def format_row(surface: str, L1, L2, beta, n: int, value, status) -> str:
    def cls(x):
        return ",".join(str(c) for c in x)

    return "\t".join([surface, cls(L1), cls(L2), cls(beta), str(n), render(Fraction(value)), str(status)])


def parse_row(line: str) -> tuple:
    parts = line.rstrip("\n").split("\t")
    if len(parts) != 7:
        raise ValueError(f"expected 7 fields, got {len(parts)}")
    surface, l1, l2, beta, n, value, status = parts

    def cls(x):
        return tuple(int(c) for c in x.split(","))

    return surface, cls(l1), cls(l2), cls(beta), int(n), Fraction(value), status


# ---------------------------------------------------------------------------
# subcommands


def _geometry(args):
    try:
        S = parse_surface(args.surface)
        L1 = parse_class(S, args.L1)
        L2 = parse_class(S, args.L2)
        if (L1 + L2).coeffs != S.canonical.coeffs:
            raise ValueError(f"L1 + L2 must equal K_S = {S.canonical} on {S.name}")
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    return S, L1, L2


def _beta(S, text):
    try:
        return parse_class(S, text)
    except ValueError as exc:
        raise UsageError(str(exc)) from None


def cmd_invariant(args, out) -> int:
    S, L1, L2 = _geometry(args)
    beta = _beta(S, args.beta)
    if args.n < 0:
        raise UsageError("--n must be non-negative")
    res = stable_pair_invariant(make_request(S, L1, L2, beta, args.n))
    if args.format == "tsv":
        print(format_row(S.name, L1.coeffs, L2.coeffs, beta.coeffs, args.n, res.value, res.classification), file=out)
        return EXIT_OK
    print(render(res.value), file=out)
    print(f"sign={res.sign:+d} m={res.m} chi={res.chi} beta^2={res.beta_sq} beta.L2={res.beta_L2}", file=out)
    print(f"vanishing={res.vanishing_reason or 'none'} status={res.classification} fixed_points={res.fixed_points}", file=out)
    return EXIT_OK


def _cell(job):
    surface, l1, l2, beta, n = job
    S = parse_surface(surface)
    res = stable_pair_invariant(make_request(S, l1, l2, beta, n))
    return res.value, str(res.classification)


def _run_cells(jobs_list, jobs: int):
    if jobs > 1 and len(jobs_list) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(_cell, jobs_list, chunksize=4))
    return [_cell(j) for j in jobs_list]


def cmd_table(args, out) -> int:
    S, L1, L2 = _geometry(args)
    surface_text = args.surface
    if args.golden:
        return _table_golden(S, L1, L2, surface_text, args, out)
    cap = _beta(S, args.beta_max).coeffs if args.beta_max else (4,) * S.picard_rank
    if any(c < 0 for c in cap) or args.n_max < 0:
        raise UsageError("box bounds must be non-negative")
    cells = [(b, n) for n in range(args.n_max + 1) for b in box(cap)]
    jobs_list = [(surface_text, L1.coeffs, L2.coeffs, b, n) for b, n in cells]
    results = dict(zip(cells, _run_cells(jobs_list, args.jobs)))
    if args.format == "tsv":
        for (b, n), (v, st) in results.items():
            print(format_row(S.name, L1.coeffs, L2.coeffs, b, n, v, st), file=out)
        return EXIT_OK
    print(f"{S.name}  L1=({L1})  L2=({L2})", file=out)
    print("suffix ? marks classes outside the range where the moduli spaces on S and X agree", file=out)
    for n in range(args.n_max + 1):
        print(f"\nn = {n}", file=out)
        if S.picard_rank == 1:
            for d in range(cap[0] + 1):
                v, st = results[((d,), n)]
                print(f"  d={d:<3} {_show(v, st)}", file=out)
            continue
        header = "d1\\d2 " + "".join(f"{d2:>8}" for d2 in range(cap[1] + 1))
        print(header, file=out)
        for d1 in range(cap[0] + 1):
            row = "".join(f"{_show(*results[((d1, d2), n)]):>8}" for d2 in range(cap[1] + 1))
            print(f"{d1:<6}{row}", file=out)
    return EXIT_OK


def _show(value, status) -> str:
    text = render(value)
    if status in (Status.NON_PROPER.value, Status.PROPER_NOT_ISO.value, Status.UNKNOWN.value):
        text += "?"
    return text


def _table_golden(S, L1, L2, surface_text, args, out) -> int:
    gid = golden.find_geometry_id(S, L1, L2)
    if gid is None:
        raise UsageError("no bundled reference values for this geometry")
    entries = golden.entries(gid)
    todo = [e for e in entries if e.computable]
    jobs_list = [(surface_text, L1.coeffs, L2.coeffs, e.beta, e.n) for e in todo]
    computed = dict(zip(todo, _run_cells(jobs_list, args.jobs)))
    bad = 0
    for e in entries:
        if not e.computable:
            line = format_row(S.name, L1.coeffs, L2.coeffs, e.beta, e.n, e.value, "reference-only")
        else:
            v, st = computed[e]
            ok = v == e.value
            bad += not ok
            line = format_row(S.name, L1.coeffs, L2.coeffs, e.beta, e.n, v, st)
            if not ok:
                line += f"\texpected={e.value}"
        print(line if args.format == "tsv" else line.replace("\t", "  "), file=out)
    return EXIT_OK if bad == 0 else EXIT_FAIL


def _load(path):
    try:
        return load_dataset(path)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc}") from None


def _print_report(report: CheckReport, out):
    for r in report.rows:
        print(r.describe(), file=out)
    print(report.summary(), file=out)


def cmd_check_g0(args, out) -> int:
    ds = _load(args.gv)
    S = parse_surface(ds.surface_name)
    L1, L2 = S.divisor(ds.L1), S.divisor(ds.L2)
    requests = []
    for b in box(ds.cap):
        if not any(b):
            continue
        for n in range(1, args.n_max + 1):
            st = classify(S, L1, L2, S.divisor(b), n).status
            if st == Status.ISO_PROPER:
                requests.append((b, n))
    report = check_conj_g0(ds, requests)
    _print_report(report, out)
    flagged = integrality_audit(ds.gv0)
    if flagged:
        print(f"non-integral gv0 entries: {flagged}", file=out)
    return EXIT_OK if report.passed else EXIT_FAIL


def cmd_check_g1(args, out) -> int:
    ds = _load(args.gv)
    P0 = engine_P0(ds, ds.cap)
    if ds.n1:
        report = check_conj_g1(P0, ds.n1, ds.cap)
        _print_report(report, out)
        flagged = integrality_audit(ds.n1)
        if flagged:
            print(f"non-integral n1 entries: {flagged}", file=out)
        return EXIT_OK if report.passed else EXIT_FAIL
    n1 = solve_n1(P0, ds.cap)
    for b, v in n1.items():
        print(f"n1 beta={','.join(map(str, b))} value={render(v)}", file=out)
    flagged = integrality_audit(n1)
    print("integrality: " + ("all integers" if not flagged else f"non-integral at {flagged}"), file=out)
    return EXIT_OK


def cmd_classify(args, out) -> int:
    S, L1, L2 = _geometry(args)
    beta = _beta(S, args.beta)
    c = classify(S, L1, L2, beta, args.n)
    if args.format == "tsv":
        print(format_row(S.name, L1.coeffs, L2.coeffs, beta.coeffs, args.n, 0, c.status).rsplit("\t", 2)[0] + f"\t{c.status}", file=out)
        return EXIT_OK
    print(c.status, file=out)
    print(f"note: {c.note}", file=out)
    if all(x >= 0 for x in beta.coeffs) and not beta.is_zero():
        print(f"negativity criterion: {properness_by_negativity(S, L1, L2, beta)}", file=out)
    bound = iso_bound(S, L1, L2, beta)
    if bound is not None:
        print(f"iso bound: n <= {bound}", file=out)
    return EXIT_OK


def cmd_co(args, out) -> int:
    S, L1, L2 = _geometry(args)
    e = co_exponent(S, L1, L2)
    series = co_series(S, L1, args.m_max)
    product = co_product_series(e, args.m_max)
    status = EXIT_OK
    print(f"exponent e(S) - L1.L2 = {e}", file=out)
    for m, (a, b) in enumerate(zip(series, product)):
        ok = a == b
        status = status if ok else EXIT_FAIL
        print(f"m={m} localization={render(a)} product={b} {'ok' if ok else 'DIFFER'}", file=out)
    if args.beta:
        beta = _beta(S, args.beta)
        rep = co_coincidence_report(make_request(S, L1, L2, beta, args.n))
        co = "n/a" if rep.co_number is None else render(rep.co_number)
        print(f"beta={beta} n={args.n} m={rep.m} P={render(rep.value)} CO={co} {rep.note}", file=out)
    return status


def cmd_selftest(args, out) -> int:
    rows = golden.selftest()
    bad = [r for r in rows if not r.ok]
    skipped = sum(1 for r in rows if r.computed is None)
    for r in bad:
        e = r.entry
        print(f"MISMATCH {e.geometry} beta={e.beta} n={e.n} expected={e.value} computed={render(r.computed)}", file=out)
    checked = len(rows) - skipped
    if bad:
        print(f"{len(bad)} of {checked} golden entries differ", file=out)
        return EXIT_FAIL
    print(f"all golden entries match ({checked} checked, {skipped} reference-only)", file=out)
    return EXIT_OK


COMMANDS = {
    "invariant": cmd_invariant,
    "table": cmd_table,
    "check-g0": cmd_check_g0,
    "check-g1": cmd_check_g1,
    "classify": cmd_classify,
    "co": cmd_co,
    "selftest": cmd_selftest,
}


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(_glue_negative_values(argv))
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    if args.jobs < 1:
        print("error: --jobs must be positive", file=sys.stderr)
        return EXIT_USAGE
    try:
        return COMMANDS[args.command](args, out)
    except (UsageError, GvInputError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ConsistencyError as exc:
        print(f"consistency error: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY


if __name__ == "__main__":
    sys.exit(main())
