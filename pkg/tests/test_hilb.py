import pytest

from oracles import arm_leg_weights, box_exponents, partitions_count_series
from stablepairs.hilb import (
    FixedPoint,
    Partition,
    arm_leg_character,
    enumerate_fixed_points,
    local_tangent_character,
    partition_character,
    partitions,
    taut_weights,
    tangent_weights,
    twisted_tangent_character,
)
from stablepairs.ring import Character, LinearForm
from stablepairs.toric import Chart, build_surface, vertex_character

SURFACES = [build_surface("P2"), build_surface("P1xP1"), build_surface("Fa", 1), build_surface("Fa", 2)]
STD = Chart((0, 1), (1, 0), (0, 1))


def single_chart_point(S, idx, lam):
    parts = [Partition()] * len(S.charts)
    parts[idx] = Partition(lam)
    return FixedPoint(tuple(parts))


def test_partition_validation():
    with pytest.raises(ValueError):
        Partition((1, 2))
    with pytest.raises(ValueError):
        Partition((2, 0))


def test_arm_leg_conjugate():
    lam = Partition((3, 1))
    assert lam.conjugate() == (2, 1, 1)
    assert (lam.arm(1, 1), lam.leg(1, 1)) == (2, 1)
    assert (lam.arm(2, 1), lam.leg(2, 1)) == (0, 0)


@pytest.mark.parametrize("k", range(0, 9))
def test_partition_counts_and_order(k):
    ps = partitions(k)
    assert len(ps) == partitions_count_series(8)[k]
    assert list(ps) == sorted(ps)
    assert all(p.size == k for p in ps)


def test_fixed_point_examples():
    Q = build_surface("P1xP1")
    assert len(enumerate_fixed_points(Q, 0)) == 1
    assert len(enumerate_fixed_points(Q, 1)) == 4
    assert len(enumerate_fixed_points(build_surface("P2"), 2)) == 9


@pytest.mark.parametrize("S", SURFACES, ids=lambda S: S.name)
def test_fixed_point_counts_match_generating_function(S):
    series = partitions_count_series(4, S.euler_number)
    for m in range(5):
        pts = enumerate_fixed_points(S, m)
        assert len(pts) == series[m]
        assert len(set(pts)) == len(pts)
        assert all(Z.size == m for Z in pts)


def test_enumeration_is_deterministic():
    S = build_surface("P2")
    assert enumerate_fixed_points(S, 3) == enumerate_fixed_points(S, 3)


def test_partition_character_examples():
    assert partition_character(Partition((2, 1)), STD) == Character.from_exponents([(0, 0), (0, 1), (1, 0)])
    assert partition_character(Partition((1,)), Chart((1, 2), (-1, -1), (0, 1))) == Character.monomial(0, 0)
    assert partition_character(Partition((3,)), STD) == Character.from_exponents([(0, 0), (0, 1), (0, 2)])


def test_taut_weight_examples():
    P2 = build_surface("P2")
    idx = next(i for i, c in enumerate(P2.charts) if set(c.rays) == {0, 1})
    Z = single_chart_point(P2, idx, (1,))
    assert taut_weights(P2, Z, P2.divisor((1,))) == [LinearForm(0, 0)]
    Z2 = single_chart_point(P2, idx, (2,))
    chart = P2.charts[idx]
    assert (chart.m1, chart.m2) == ((1, 0), (0, 1))
    assert sorted(taut_weights(P2, Z2, P2.divisor((1,)))) == [LinearForm(0, 0), LinearForm(0, 1)]
    Q = build_surface("P1xP1")
    idx = next(i for i, c in enumerate(Q.charts) if set(c.rays) == {0, 2})
    assert taut_weights(Q, single_chart_point(Q, idx, (1,)), Q.divisor((1, 2))) == [LinearForm(-1, -2)]


def test_tangent_character_examples():
    assert local_tangent_character(Partition((1,))) == Character.from_exponents([(-1, 0), (0, -1)])
    assert local_tangent_character(Partition((2,))) == Character.from_exponents([(-1, 0), (0, -1), (-1, 1), (0, -2)])


def test_tangent_weight_examples():
    P2 = build_surface("P2")
    idx = next(i for i, c in enumerate(P2.charts) if set(c.rays) == {0, 1})
    assert sorted(tangent_weights(P2, single_chart_point(P2, idx, (1,)))) == sorted([LinearForm(-1, 0), LinearForm(0, -1)])
    w = tangent_weights(P2, single_chart_point(P2, idx, (2,)))
    assert sorted(w) == sorted([LinearForm(-1, 0), LinearForm(0, -1), LinearForm(-1, 1), LinearForm(0, -2)])


@pytest.mark.parametrize("S", SURFACES, ids=lambda S: S.name)
def test_hilb1_tangent_is_minus_dual_basis_on_every_chart(S):
    for idx, chart in enumerate(S.charts):
        got = sorted(tangent_weights(S, single_chart_point(S, idx, (1,))))
        want = sorted([LinearForm(-chart.m1[0], -chart.m1[1]), LinearForm(-chart.m2[0], -chart.m2[1])])
        assert got == want


@pytest.mark.parametrize("k", range(1, 7))
def test_arm_leg_identity(k):
    for lam in partitions(k):
        assert local_tangent_character(lam) == arm_leg_character(lam)
        want = Character.from_exponents(arm_leg_weights(lam, (1, 0), (0, 1)))
        assert local_tangent_character(lam) == want


@pytest.mark.parametrize("S", SURFACES, ids=lambda S: S.name)
def test_tangent_weights_nonzero_and_rank(S):
    for m in range(5):
        for Z in enumerate_fixed_points(S, m):
            w = tangent_weights(S, Z)
            assert len(w) == 2 * m
            assert not any(x.is_zero() for x in w)


@pytest.mark.parametrize("S", SURFACES, ids=lambda S: S.name)
def test_twisted_rank_and_taut_consistency(S):
    sweep = [S.divisor(c) for c in ([(-2,), (1,), (3,)] if S.picard_rank == 1 else [(-1, -1), (0, -1), (2, 3), (-2, 1)])]
    for m in range(4):
        for Z in enumerate_fixed_points(S, m):
            for L in sweep:
                assert twisted_tangent_character(S, Z, L).rank == 2 * m
                w = taut_weights(S, Z, L)
                assert len(w) == m
                exps = [
                    e
                    for chart, lam in zip(S.charts, Z.partitions)
                    for e in box_exponents(lam, chart.m1, chart.m2, vertex_character(S, chart, L))
                ]
                assert (sum(x.a for x in w), sum(x.b for x in w)) == (sum(e[0] for e in exps), sum(e[1] for e in exps))
