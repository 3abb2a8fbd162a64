"""Acceptance criteria 1-10, one pass/fail line each, exact equality throughout.

Run under pytest (lines appear in the terminal summary) or directly:
``python tests/test_acceptance.py``.
"""
import sys
import time
from fractions import Fraction
from pathlib import Path

sys.path.insert(0, str(Path(__file__).parent))

import pytest

import conftest
from oracles import (
    arm_leg_weights,
    brion_sum,
    lattice_point_series,
    p1xp1_cohomology,
    p2_cohomology,
    partitions_count_series,
    predict_by_tuples,
)
from stablepairs import golden
from stablepairs.gv import (
    GvDataset,
    box,
    check_conj_g0,
    check_conj_g1,
    gv0_from_gw0,
    gw0_from_gv0,
    macmahon,
    solve_n1,
)
from stablepairs.hilb import (
    FixedPoint,
    Partition,
    enumerate_fixed_points,
    local_tangent_character,
    partitions,
    tangent_weights,
)
from stablepairs.localization import (
    co_exponent,
    co_product_series,
    co_series,
    carlsson_okounkov,
    make_request,
    stable_pair_invariant,
    vanishing_reason,
)
from stablepairs.ring import Character, LinearForm, evaluate_linear_fractions
from stablepairs.toric import (
    build_surface,
    cohomology_dims,
    is_nef,
    riemann_roch_chi,
    shifted_lift,
    with_chart_order,
)


def value(gid, beta, n):
    S, L1, L2 = golden.geometry(gid)
    return stable_pair_invariant(make_request(S, L1, L2, beta, n)).value


def compare(gid, expected):
    """expected: list of (beta, n, value); returns list of mismatch strings."""
    bad = []
    for beta, n, want in expected:
        got = value(gid, beta, n)
        if got != want:
            bad.append(f"{gid} beta={beta} n={n}: got {got}, want {want}")
    return bad


# ---------------------------------------------------------------------------
# 1-5 reference tables


def check_1():
    exp = [((1,), 1, -1), ((2,), 0, 0), ((2,), 1, 1), ((2,), 2, 1), ((3,), 0, -1), ((3,), 1, -1), ((3,), 2, -2),
           ((4,), 0, 2), ((4,), 1, 3)] + [((1,), n, 0) for n in (2, 3, 4)]
    bad = []
    slowest = 0.0
    S, L1, L2 = golden.geometry("P2")
    for beta, n, want in exp:
        t0 = time.perf_counter()
        # bypass the memo so the timing is honest
        got = stable_pair_invariant(make_request(S, L1, L2, beta, n), keep_contributions=True).value
        slowest = max(slowest, time.perf_counter() - t0)
        if got != want:
            bad.append(f"P2 d={beta[0]} n={n}: got {got}, want {want}")
    if slowest >= 10:
        bad.append(f"slowest entry took {slowest:.2f} s")
    return bad, f"{len(exp)} entries, slowest {slowest * 1000:.0f} ms"


def check_2():
    exp = [((2, 2), 0, 1), ((2, 3), 0, 2), ((2, 4), 0, 5), ((3, 3), 0, 10), ((2, 2), 1, 2), ((2, 3), 1, 5),
           ((2, 2), 2, 5)]
    exp += [((1, d), 2, 2) for d in range(1, 5)]
    exp += [((0, d), n, int(n == d)) for d in range(0, 5) for n in range(0, d + 1)]
    table = [(e.beta, e.n, e.value) for e in golden.entries("P1xP1_a", computable_only=True) if e.n <= 2]
    bad = compare("P1xP1_a", exp + table)
    return bad, f"{len(exp)} listed + {len(table)} table cells"


def check_3():
    exp = [((2, 2), 0, 1), ((2, 3), 0, 2), ((2, 4), 0, 5), ((3, 2), 0, 2), ((2, 2), 1, 2), ((2, 3), 1, 5)]
    exp += [((1, d), 1, 1) for d in range(1, 5)] + [((d, 1), 1, 1) for d in range(1, 5)]
    exp += [((1, d), 2, 2) for d in (2, 3)] + [((0, n), n, 1) for n in range(0, 5)]
    return compare("P1xP1_b", exp), f"{len(exp)} entries"


def check_4():
    a = [((2, 3), 0, 1), ((2, 4), 0, 2), ((2, 5), 0, 5), ((3, 3), 0, -1), ((2, 2), 1, 1), ((2, 3), 1, 2),
         ((2, 4), 1, 5)]
    a += [((1, d), 1, -1) for d in range(1, 5)] + [((1, d), 2, -2) for d in (2, 3)]
    b = [((2, 3), 0, 1), ((2, 4), 0, 2), ((3, 3), 0, -1), ((2, 2), 1, 1), ((2, 3), 1, 2)]
    b += [((1, d), 1, -1) for d in range(1, 5)]
    return compare("F1_a", a) + compare("F1_b", b), f"{len(a) + len(b)} entries"


def check_5():
    exp = [((2, 4), 0, 1), ((2, 5), 0, 2), ((2, 6), 0, 5), ((2, 3), 1, 1), ((2, 4), 1, 2), ((2, 5), 1, 5)]
    exp += [((1, d), 1, 1) for d in range(1, 5)] + [((1, d), 2, 2) for d in range(2, 5)]
    exp += [((0, n), n, 1) for n in range(0, 5)]
    return compare("F2", exp), f"{len(exp)} entries"


# ---------------------------------------------------------------------------
# 6 vanishing


def check_6():
    bad = []
    F2 = build_surface("Fa", 2)
    for n in range(4):
        r = stable_pair_invariant(make_request(F2, (-1, -2), (-1, -2), (1, 0), n))
        if r.value != 0 or r.vanishing_reason != "beta_sq_negative":
            bad.append(f"F2 beta=B n={n}: {r.value} {r.vanishing_reason}")
    # chi <= 0 only occurs with beta^2 < 0 on these surfaces; sweep F2 and F3
    F3 = build_surface("Fa", 3)
    chi_cases = 0
    for S, L1, L2 in [(F2, (-1, -2), (-1, -2)), (F3, (-1, -2), (-1, -3))]:
        for d1 in range(5):
            for d2 in range(8):
                req = make_request(S, L1, L2, (d1, d2), 0)
                if req.beta.is_zero() or req.chi > 0:
                    continue
                chi_cases += 1
                if stable_pair_invariant(req).value != 0:
                    bad.append(f"{S.name} {(d1, d2)} chi={req.chi} nonzero")
    m_cases = 0
    for gid in golden.geometry_ids():
        S, L1, L2 = golden.geometry(gid)
        for beta in box((4,) * S.picard_rank):
            for n in range(3):
                req = make_request(S, L1, L2, beta, n)
                if vanishing_reason(req) != "m_negative":
                    continue
                m_cases += 1
                if stable_pair_invariant(req).value != 0:
                    bad.append(f"{gid} {beta} n={n} m<0 nonzero")
    for gid in golden.geometry_ids():
        if value(gid, (0,) * golden.geometry(gid)[0].picard_rank, 0) != 1:
            bad.append(f"{gid}: P_00 != 1")
    if not chi_cases or not m_cases:
        bad.append("sweep found no vanishing cases")
    return bad, f"beta^2<0: 4, chi<=0: {chi_cases}, m<0: {m_cases}, P_00 on 6 geometries"


# ---------------------------------------------------------------------------
# 7 Euler numbers of T(L1)


def check_7():
    bad = []
    agree = total = 0
    for gid in golden.geometry_ids():
        S, L1, L2 = golden.geometry(gid)
        series = co_series(S, L1, 4)
        product = co_product_series(co_exponent(S, L1, L2), 4)
        if series != product:
            bad.append(f"{gid}: series {series} vs product {product}")
        for e in golden.entries(gid, computable_only=True):
            if e.value == 0:
                continue
            req = make_request(S, L1, L2, e.beta, e.n)
            co = series[req.m] if req.m <= 4 else carlsson_okounkov(S, L1, req.m)
            total += 1
            if abs(stable_pair_invariant(req).value) == abs(co):
                agree += 1
            else:
                bad.append(f"{gid} {e.beta} n={e.n}: |P|={abs(e.value)} CO(m={req.m})={co}")
    return bad, f"series match through m=4 on 6 geometries; |P| = CO on {agree}/{total} nonzero entries"


# ---------------------------------------------------------------------------
# 8 property suites


def SURFACES():
    return [build_surface("P2"), build_surface("P1xP1"), build_surface("Fa", 1), build_surface("Fa", 2)]


def _single(S, idx, lam):
    parts = [Partition()] * len(S.charts)
    parts[idx] = Partition(lam)
    return FixedPoint(tuple(parts))


def check_8():
    t0 = time.perf_counter()
    bad = []
    # arm/leg identity
    for k in range(1, 7):
        for lam in partitions(k):
            if local_tangent_character(lam) != Character.from_exponents(arm_leg_weights(lam, (1, 0), (0, 1))):
                bad.append(f"arm/leg {lam}")
    # Hilb^1 tangent
    for S in SURFACES():
        for idx, ch in enumerate(S.charts):
            got = sorted(tangent_weights(S, _single(S, idx, (1,))))
            want = sorted([LinearForm(-ch.m1[0], -ch.m1[1]), LinearForm(-ch.m2[0], -ch.m2[1])])
            if got != want:
                bad.append(f"Hilb1 {S.name} chart {idx}")
    # constancy on every golden entry
    for e in golden.entries(computable_only=True):
        S, L1, L2 = golden.geometry(e.geometry)
        r = stable_pair_invariant(make_request(S, L1, L2, e.beta, e.n), keep_contributions=True)
        if r.contributions:
            a = evaluate_linear_fractions(r.contributions, 3, 11)
            b = evaluate_linear_fractions(r.contributions, -5, 2)
            if not (a == b == r.sign * r.value):
                bad.append(f"constancy {e.geometry} {e.beta} {e.n}")
    # RR and Serre duality, with closed forms where available
    for S in SURFACES():
        rng = range(-6, 7)
        coeffs = [(c,) for c in rng] if S.picard_rank == 1 else [(a, b) for a in rng for b in rng]
        for c in coeffs:
            D = S.divisor(c)
            h = cohomology_dims(S, D)
            if h[0] - h[1] + h[2] != riemann_roch_chi(S, D):
                bad.append(f"RR {S.name} {c}")
            if tuple(reversed(h)) != cohomology_dims(S, S.canonical - D):
                bad.append(f"Serre {S.name} {c}")
            if S.name == "P2" and h != p2_cohomology(c[0]):
                bad.append(f"P2 closed form {c}")
            if S.name == "P1xP1" and h != p1xp1_cohomology(*c):
                bad.append(f"Kunneth {c}")
    # Brion for nef D
    pt = (Fraction(2), Fraction(5, 3))
    for S in SURFACES():
        coeffs = [(c,) for c in range(5)] if S.picard_rank == 1 else [(a, b) for a in range(5) for b in range(5)]
        for c in coeffs:
            D = S.divisor(c)
            if is_nef(S, D) and lattice_point_series(S, D, pt) != brion_sum(S, D, pt):
                bad.append(f"Brion {S.name} {c}")
    # lift and chart-order independence
    for gid, beta, n in [("P2", (4,), 1), ("P1xP1_a", (2, 3), 1), ("F1_a", (2, 4), 0)]:
        S, L1, L2 = golden.geometry(gid)
        want = golden.lookup(gid, beta, n).value
        b = S.divisor(beta)
        req = make_request(S, shifted_lift(S, L1, (1, -2)), shifted_lift(S, L2, (0, 3)), shifted_lift(S, b, (-1, 1)), n)
        if stable_pair_invariant(req).value != want:
            bad.append(f"lift {gid}")
        k = len(S.charts)
        T = with_chart_order(S, list(reversed(range(k))))
        if stable_pair_invariant(make_request(T, L1.coeffs, L2.coeffs, beta, n)).value != want:
            bad.append(f"chart order {gid}")
    # fixed-point counts
    for S in SURFACES():
        series = partitions_count_series(4, S.euler_number)
        if [len(enumerate_fixed_points(S, m)) for m in range(5)] != series:
            bad.append(f"fixed points {S.name}")
    dt = time.perf_counter() - t0
    if dt >= 300:
        bad.append(f"took {dt:.0f} s")
    return bad, f"all suites in {dt:.1f} s"


# ---------------------------------------------------------------------------
# 9 conjecture machinery


def check_9():
    bad = []
    cap = (3, 2)
    classes = [b for b in box(cap) if any(b)]
    gw = {b: Fraction(3 * b[0] - 2 * b[1] + 1, 1 + b[1]) for b in classes}
    if gw0_from_gv0(gv0_from_gw0(gw, cap), cap) != gw:
        bad.append("gw0/gv0 round trip")
    P0 = {b: Fraction((-1) ** sum(b) * (sum(b) + b[0])) for b in box(cap)}
    P0[(0, 0)] = Fraction(1)
    if not check_conj_g1(P0, solve_n1(P0, cap), cap).passed:
        bad.append("solve_n1/check_conj_g1 round trip")
    M = {(k,): Fraction(c) for k, c in enumerate(macmahon(5))}
    n1 = solve_n1(M, (5,))
    if n1 != {(k,): Fraction(int(k == 1)) for k in range(1, 6)}:
        bad.append("n1 of MacMahon")
    # synthetic dataset satisfying the genus-0 formula by construction
    cap = (2, 2)
    P0 = {b: Fraction(i * (-1) ** i) for i, b in enumerate(box(cap))}
    P0[(0, 0)] = Fraction(1)
    gv0 = {b: Fraction(2 * b[0] - b[1] + 1) for b in box(cap) if any(b)}
    computed = {(b, n): predict_by_tuples(P0, gv0, b, n) for b in box(cap) if any(b) for n in (1, 2)}
    ds = GvDataset("P1xP1", None, (-1, -1), (-1, -1), cap, gv0=dict(gv0), provenance="synthetic")
    if not check_conj_g0(ds, list(computed), P0=P0, computed=computed).passed:
        bad.append("synthetic dataset does not pass")
    ds.gv0[(1, 1)] += 1
    rep = check_conj_g0(ds, list(computed), P0=P0, computed=computed)
    row = next((r for r in rep.failures if (r.beta, r.n) == ((1, 1), 1)), None)
    if rep.passed or row is None or row.predicted - row.computed != 1 or "FAIL" not in row.describe():
        bad.append("perturbed dataset not caught precisely")
    return bad, f"round trips ok; perturbed dataset gives {len(rep.failures)} failing rows with both values"


# ---------------------------------------------------------------------------
# 10 reference-only entries


def check_10():
    bad = []
    stars = [e for e in golden.entries() if e.star]
    p3 = golden.local_p3_entries()
    rows = golden.selftest()
    if any(r.computed is not None for r in rows if r.entry.star):
        bad.append("a starred entry was recomputed by selftest")
    if not any(e.geometry == "P2" and e.beta == (2,) and e.n == 3 and e.value == 0 for e in stars):
        bad.append("P2 d=2 n=3 star entry missing")
    if not any(e.get("value") == 11200 for e in p3):
        bad.append("local P3 11200 missing")
    return bad, f"not reproducible here: {len(stars)} starred surface cells and {len(p3)} local P3 values are fixture-only"


CRITERIA = {
    1: ("reference table, local P2", check_1),
    2: ("reference table, P1xP1 (-1,-1)/(-1,-1)", check_2),
    3: ("reference table, P1xP1 (-1,0)/(-1,-2)", check_3),
    4: ("reference tables, F1", check_4),
    5: ("reference table, F2", check_5),
    6: ("vanishing clauses", check_6),
    7: ("Euler numbers of T(L1) vs product formula", check_7),
    8: ("property suites", check_8),
    9: ("conjecture machinery round trips", check_9),
    10: ("vertex-formalism entries are reference-only", check_10),
}


def run_criterion(k):
    title, fn = CRITERIA[k]
    bad, detail = fn()
    status = "PASS" if not bad else "FAIL"
    line = f"[{status}] {k:>2}. {title}: {detail}"
    if bad:
        line += " | " + "; ".join(bad[:5])
    return not bad, line


@pytest.mark.parametrize("k", sorted(CRITERIA))
def test_criterion(k):
    ok, line = run_criterion(k)
    conftest.ACCEPTANCE_LINES[k] = line
    print(line)
    assert ok, line


if __name__ == "__main__":
    failed = 0
    for k in sorted(CRITERIA):
        ok, line = run_criterion(k)
        failed += not ok
        print(line)
    sys.exit(1 if failed else 0)
