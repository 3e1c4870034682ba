import csv
import io
import math
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vecriemann import gallery as G
from vecriemann.integration import IntegrationError, riemann_sum
from vecriemann.partitions import ConstantGauge, is_gauge_fine
from vecriemann.spaces import NestedL1, SeqLp, SeqSup, SeqVec, norm, pair, unit

F = Fraction
L1 = SeqLp(1)


# fat Cantor set


def test_cantor_first_levels():
    cl = G.fat_cantor(2)
    assert cl.removed_intervals(1) == [(F(1, 3), F(2, 3))]
    assert cl.kept_intervals(1) == [(0, F(1, 3)), (F(2, 3), 1)]
    assert cl.removed_intervals(2) == [(F(5, 36), F(7, 36)), (F(29, 36), F(31, 36))]
    assert all(hi - lo == F(1, 18) for lo, hi in cl.removed_intervals(2))
    assert all(hi - lo == F(5, 36) for lo, hi in cl.kept_intervals(2))


def test_cantor_measure_at_depth_20():
    cl = G.fat_cantor(20)
    assert cl.removed_measure() == (1 - F(1, 3 ** 20)) / 2
    assert abs(float(cl.removed_measure()) - 0.5) <= 1e-9


@pytest.mark.parametrize("K", [1, 2, 3, 7, 13, 20])
def test_cantor_invariants(K):
    cl = G.fat_cantor(K)
    cl.check()
    assert cl.removed_measure() == sum(F(1, 3 ** k) for k in range(1, K + 1))
    assert cl.removed_measure() + cl.kept_measure() == 1


def test_cantor_lengths_against_recursion():
    # independent oracle: build the kept intervals by repeated centred removal
    kept = [(F(0), F(1))]
    cl = G.fat_cantor(6)
    for k in range(1, 7):
        a = F(1, 2 ** (k - 1) * 3 ** k)
        removed, nxt = [], []
        for lo, hi in kept:
            c = (lo + hi) / 2
            removed.append((c - a / 2, c + a / 2))
            nxt += [(lo, c - a / 2), (c + a / 2, hi)]
        kept = nxt
        assert cl.removed_intervals(k) == removed
        assert cl.kept_intervals(k) == kept


def test_cantor_csv():
    text = G.fat_cantor(2).to_csv()
    rows = list(csv.reader(io.StringIO(text)))
    assert rows[0] == ["level", "kind", "left_num", "left_den", "right_num", "right_den"]
    assert rows[1] == ["1", "removed", "1", "3", "2", "3"]
    assert len(rows) == 1 + (1 + 2) + (2 + 4)


# bumps and the Kadets map


def test_bump_values():
    assert G.bump(1, 1, F(1, 2)) == 1
    assert G.bump(1, 1, F(1, 3)) == 0
    assert G.bump(1, 1, F(5, 12)) == 0.5
    assert G.bump(1, 1, F(1, 10)) == 0


def test_kadets_values():
    assert G.kadets_f(F(1, 2)) == unit(1, L1)
    assert G.kadets_f(0).entries == ()
    assert G.kadets_f(F(1, 6)) == unit(2, L1)


def test_removed_interval_matches_levels():
    cl = G.fat_cantor(8)
    for k in range(1, 9):
        for i in range(1, 2 ** (k - 1) + 1):
            assert G.removed_interval(k, i) == cl.removed_interval(k, i)


def test_kadets_partitions_small_stages():
    P1, P2 = G.kadets_partitions(1)
    assert P1.tags == (F(1, 2),) and P2.tags == (0,)
    P1, P2 = G.kadets_partitions(2)
    cl = G.fat_cantor(2)
    kept = cl.kept_intervals(1)
    assert all(iv in list(zip(P1.breakpoints, P1.breakpoints[1:])) for iv in kept)
    tags1 = {s for s, lo, hi in P1.pieces() if (lo, hi) in kept}
    tags2 = {s for s, lo, hi in P2.pieces() if (lo, hi) in kept}
    assert tags1 == {F(1, 6), F(5, 6)} and tags2 == {0, F(2, 3)}


@pytest.mark.parametrize("m", range(1, 9))
def test_kadets_partitions_structure(m):
    P1, P2 = G.kadets_partitions(m)
    assert P1.breakpoints == P2.breakpoints
    w = F(1, 2 ** (m - 1))
    assert is_gauge_fine(P1, ConstantGauge(float(w) * (1 + 1e-9)))
    kept = set(G.fat_cantor(m).kept_intervals(m - 1))
    for (s1, lo, hi), s2 in zip(P1.pieces(), P2.tags):
        if (lo, hi) in kept:
            assert G.kadets_f(s1, m) == unit(m, L1)
            assert G.kadets_f(s2, m).entries == ()
        else:
            assert s1 == s2 and hi - lo < w


def test_kadets_gap_examples():
    assert G.kadets_gap_closed_form(1) == 1
    assert G.kadets_gap_closed_form(2) == F(2, 3)
    assert G.kadets_gap_closed_form(5) == F(41, 81)


def test_kadets_gap_numeric_agrees():
    prev = math.inf
    for m in range(1, 11):
        closed, numeric = G.kadets_gap(m)
        assert abs(numeric - float(closed)) <= 1e-12
        assert 0.5 < numeric < prev
        prev = numeric


def test_kadets_certificate():
    P1, P2 = G.kadets_certificate(F(1, 8), depth=10)
    assert P1.mesh < F(1, 8)
    f = G.kadets_function(10)
    assert norm(riemann_sum(f, P1) - riemann_sum(f, P2)) >= 0.5
    with pytest.raises(IntegrationError):
        G.kadets_certificate(F(1, 2 ** 12), depth=5)


def test_kadets_hints_cover_peaks():
    hints = set(G.kadets_hints(4))
    cl = G.fat_cantor(4)
    for k in range(1, 5):
        for i in range(1, 2 ** (k - 1) + 1):
            lo, hi = cl.removed_interval(k, i)
            assert {lo, hi, (lo + hi) / 2} <= hints


def test_discontinuity_upper_exact():
    assert G.discontinuity_upper_exact(1, 20) == 1 - (1 - F(1, 3 ** 20)) / 2
    assert G.discontinuity_upper_exact(3, 20) == 0
    with pytest.raises(ValueError):
        G.discontinuity_upper_exact(0, 3)


battery = [SeqVec.of({k: 2.0 ** -k for k in range(1, 61)}, L1)]


def _probe_level(k, i):
    c = G.fat_cantor(k).midpoint(k, i)
    v = G.kadets_f(c, k)
    # f(c) lives in l_1; as a c_0 point it is paired against the l_1 battery
    as_c0 = SeqVec(v.entries, SeqSup())
    return pair(battery[0], as_c0), norm(v)


def test_weak_star_proxy_exhaustive():
    for k in range(1, 11):
        for i in range(1, 2 ** (k - 1) + 1):
            p, n = _probe_level(k, i)
            assert p == 2.0 ** -k and n == 1


@given(st.integers(11, 40), st.data())
@settings(max_examples=40, deadline=None)
def test_weak_star_proxy_deep(k, data):
    i = data.draw(st.integers(1, 2 ** (k - 1)))
    lo, hi = G.removed_interval(k, i)
    v = G.kadets_f((lo + hi) / 2, k)
    assert v == unit(k, L1)
    p = pair(battery[0], SeqVec(v.entries, SeqSup()))
    assert p == 2.0 ** -k and (k < 20 or p <= 1e-6)


# Rolewicz


@pytest.mark.parametrize("p", [0.5, 0.25])
@pytest.mark.parametrize("j", [1, 2, 3, 4])
def test_rolewicz_increment_and_quotient(p, j):
    h = 10.0 ** -j
    assert G.rolewicz_increment(F(1, 3), h, p) == pytest.approx(h ** (1 / p), rel=1e-12)
    assert G.rolewicz_quotient(F(1, 3), h, p) == pytest.approx(h ** (1 / p - 1), rel=1e-12)


def test_rolewicz_examples():
    assert G.rolewicz_increment(0, 0.01, 0.5) == pytest.approx(1e-4, rel=1e-12)
    assert G.rolewicz_quotient(0, 0.01, 0.5) == pytest.approx(1e-2, rel=1e-12)
    assert G.rolewicz_increment(F(1, 2), 0, 0.5) == 0
    assert G.rolewicz_increment(0, 0.1, 0.25) == pytest.approx(1e-4, rel=1e-12)
    assert G.rolewicz_quotient(0, 0.1, 0.25) == pytest.approx(1e-3, rel=1e-12)
    with pytest.raises(ValueError):
        G.rolewicz_f(F(3, 2))


def test_rolewicz_quotient_monotone():
    qs = [G.rolewicz_quotient(0, 10.0 ** -j, 0.5) for j in range(1, 5)]
    assert all(a > b for a, b in zip(qs, qs[1:]))


# blocks


def test_blocks_disjoint_exact():
    r = G.blocks_verify(G.blocks_build(3, 1.0, 0.01))
    assert r.ok and r.actual == 1.5 and r.lower_bound == pytest.approx(1.46)


@pytest.mark.parametrize("p, beta, eps", [(3, 1.0, 0.01), (8, 0.5, 0.001)])
def test_blocks_with_tails(p, beta, eps):
    r = G.blocks_verify(G.blocks_build(p, beta, eps, eps * 2.0 ** -p / 2))
    assert r.ok and r.actual >= r.lower_bound
    for i, off, cap, ynorm, floor in r.chain:
        assert off < cap and ynorm >= floor


def test_blocks_nested():
    r = G.blocks_verify(G.blocks_build(4, 1.0, 0.01, 1e-4, inner=SeqLp(2)))
    assert r.ok


def test_blocks_condition_a_fails():
    bs = G.blocks_build(3, 1.0, 0.01)
    bad = list(bs.blocks)
    bad[1] = 0.5 * bad[1]  # norm beta/4
    r = G.blocks_verify(G.BlockSeq(tuple(bad), bs.cuts, bs.beta, bs.eps))
    assert not r.ok and r.failed.startswith("(a) block 2")


def test_blocks_condition_b_and_c_fail():
    bs = G.blocks_build(3, 1.0, 0.01)
    z = bs.blocks[0] + SeqVec.of({bs.cuts[1]: 0.01}, L1)
    r = G.blocks_verify(G.BlockSeq((z,) + bs.blocks[1:], bs.cuts, bs.beta, bs.eps))
    assert r.failed.startswith("(b) block 1")
    z = bs.blocks[2] + SeqVec.of({1: 0.01}, L1)
    r = G.blocks_verify(G.BlockSeq(bs.blocks[:2] + (z,), bs.cuts, bs.beta, bs.eps))
    assert r.failed.startswith("(c) block 3")


def test_blocks_rejects_large_tail():
    with pytest.raises(ValueError):
        G.blocks_build(3, 1.0, 0.01, 0.01)


@pytest.mark.parametrize("p, beta, eps", [(3, 1.0, 0.01), (8, 0.5, 0.001)])
def test_blocks_random_tails(p, beta, eps):
    rng = random.Random(1234 + p)
    bound = G.separation_bound(p, beta, eps)
    for _ in range(1000):
        tail = rng.uniform(0, eps * 2.0 ** -p) * (1 - 1e-9)
        inner = rng.choice([None, SeqLp(1), SeqLp(2)])
        r = G.blocks_verify(G.blocks_build(p, beta, eps, tail, rng=rng, inner=inner))
        assert r.ok and r.actual >= bound


def test_nested_space_used():
    bs = G.blocks_build(2, 1.0, 0.01, inner=SeqLp(1))
    assert isinstance(bs.blocks[0].space, NestedL1)


# probes


def test_weak_null_probe_examples():
    vecs = [unit(n, SeqSup()) for n in range(1, 51)]
    decay, floor = G.weak_null_probe(vecs, [G.geometric_battery_element(60)])
    assert decay == [2.0 ** -n for n in range(1, 51)] and floor == 1
    zeros = [SeqVec((), SeqSup())] * 5
    decay, floor = G.weak_null_probe(zeros, [G.geometric_battery_element(10)])
    assert decay == [0] * 5 and floor == 0
    decay, floor = G.weak_null_probe(vecs[:4], [unit(1, L1)])
    assert decay == [1, 0, 0, 0] and floor == 1
    with pytest.raises(ValueError):
        G.weak_null_probe([], [unit(1, L1)])


def test_strong_star_seminorm():
    # p_B(e_k) = 1 on the unit ball of c_0: not strong*-null
    for k in (1, 5, 40):
        assert G.strong_star_seminorm(unit(k, L1)) == 1
    B = [SeqVec.dense([1, -1, 1], SeqSup()), SeqVec.dense([0.5], SeqSup())]
    assert G.strong_star_seminorm(SeqVec.dense([1, 1, 1], L1), B) == 1


def test_kadets_pairing_profile():
    cl = G.fat_cantor(12)
    rows = G.kadets_pairing_profile(
        range(1, 13),
        [G.geometric_battery_element(20, space=SeqSup())],
        lambda t: G.kadets_f(t, 12),
        lambda k: [cl.midpoint(k, i) for i in range(1, 2 ** (k - 1) + 1)],
    )
    for k, pairing, lo, hi in rows:
        assert pairing == 2.0 ** -k and lo == hi == 1


# derivative of x^2 sin(1/x^2)


def test_wild_derivative_matches_difference_quotient():
    for x in (0.3, 0.55, 0.9):
        h = 1e-7
        dq = (G.wild_primitive(x + h) - G.wild_primitive(x - h)) / (2 * h)
        assert G.wild_derivative(x) == pytest.approx(dq, rel=1e-5)
    assert G.wild_derivative(0.0) == 0


def test_wild_gauges_validation():
    assert len(G.wild_gauges(3, 5)) == 3
    with pytest.raises(ValueError):
        G.wild_gauges(5, 3)
