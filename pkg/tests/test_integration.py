import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from vecriemann import gallery as G
from vecriemann.integration import (
    DivergenceError,
    IntegrationError,
    VectorFn,
    Verdict,
    adversarial_gap,
    cauchy_gap,
    continuity_modulus,
    ftc_check,
    henstock_integrate,
    indefinite_integral,
    integrate,
    riemann_sum,
)
from vecriemann.partitions import ConstantGauge, TaggedPartition, uniform_partition
from vecriemann.spaces import InvalidInputError, SeqLp, SeqVec, StepFn, StepLp, norm

F = Fraction
L1 = SeqLp(1)


def const(vec):
    return VectorFn(lambda t: vec, vec.space)


# riemann_sum


def test_constant_sums_to_itself():
    c = SeqVec.dense([1.5, -2.0, 0.25], L1)
    P = TaggedPartition((0, F(1, 7), F(1, 2), 1), (0, F(1, 3), 1))
    assert norm(riemann_sum(const(c), P) - c) < 1e-15


def test_left_sum_of_identity():
    f = VectorFn.scalar(lambda x: x, vectorized=False)
    assert riemann_sum(f, uniform_partition(0, 1, 4, "left")).get(1) == 0.375


def test_dense_path_matches_sparse_path():
    P = uniform_partition(0, 1, 37, "mid")
    a = riemann_sum(VectorFn.scalar(np.sin), P).get(1)
    b = riemann_sum(VectorFn.scalar(math.sin, vectorized=False), P).get(1)
    assert a == pytest.approx(b, rel=1e-14)


def test_kadets_first_stage_sum_is_e1():
    P1, _ = G.kadets_partitions(1)
    assert riemann_sum(G.kadets_function(5), P1) == SeqVec.of({1: 1.0}, L1)


coeffs = st.floats(-5, 5, allow_nan=False)


@given(coeffs, coeffs, st.integers(1, 40), st.integers(0, 3))
@settings(max_examples=50, deadline=None)
def test_linearity(alpha, beta, n, shift):
    sp = SeqLp(0.5)
    f = VectorFn.components([lambda x: x, np.cos], sp, vectorized=False)
    g = VectorFn.components([lambda x: x * x + shift, np.exp], sp, vectorized=False)
    h = VectorFn(lambda t: alpha * f(t) + beta * g(t), sp)
    P = uniform_partition(0, 1, n, "left")
    lhs = riemann_sum(h, P)
    rhs = alpha * riemann_sum(f, P) + beta * riemann_sum(g, P)
    scale_ = max(norm(lhs), norm(rhs), 1.0)
    assert norm(lhs - rhs) <= 1e-12 * scale_ * 4  # l_1/2 quasi-norm of a difference of rounded sums


# cauchy_gap and integrate


@pytest.mark.parametrize("fn, L", [(lambda x: x, 1), (np.sin, 1), (lambda x: x * x, 2)])
def test_lipschitz_gap_bound(fn, L):
    f = VectorFn.scalar(fn)
    for k in range(3, 13):
        d = 2.0 ** -k
        assert cauchy_gap(f, d) <= L * d


def test_constant_has_zero_gap():
    assert cauchy_gap(const(SeqVec.dense([3, 4], L1)), F(1, 10)) == 0


def test_kadets_gap_is_certified_by_hints():
    f = G.kadets_function(10)
    for m in range(1, 8):
        gap = cauchy_gap(f, F(1, 2 ** (m - 1)))
        assert gap >= float(G.kadets_gap_closed_form(m)) - 1e-12


def test_integrate_identity():
    rep = integrate(VectorFn.scalar(lambda x: x), 1e-6, [1e-2, 1e-4, 5e-7])
    assert rep.verdict is Verdict.CONVERGENT
    assert abs(rep.estimate.get(1) - 0.5) <= 1e-6


@pytest.mark.parametrize("fn, exact", [(lambda x: x * x, 1 / 3), (np.sin, 1 - math.cos(1))])
def test_integrate_closed_forms(fn, exact):
    rep = integrate(VectorFn.scalar(fn), 1e-5, [1e-2, 1e-4, 1e-6])
    assert rep.verdict is Verdict.CONVERGENT
    assert rep.estimate.get(1) == pytest.approx(exact, abs=1e-5)


def test_integrate_zero():
    rep = integrate(VectorFn.scalar(lambda x: 0 * x), 1e-9, [F(1, 4), F(1, 16)])
    assert rep.verdict is Verdict.CONVERGENT and rep.estimate.get(1) == 0


def test_integrate_kadets_divergent():
    rep = integrate(G.kadets_function(8), 1e-6, [F(1, 2 ** (m - 1)) for m in range(1, 6)])
    assert rep.verdict is Verdict.DIVERGENT and rep.estimate is None
    assert all(c >= 0.5 for _, c in rep.certified_by_mesh)


def test_integrate_inconclusive_without_certificate():
    # the Kadets map stripped of its certificate: large sampled gaps, but no proof
    f = G.kadets_function(8)
    bare = VectorFn(f.fn, f.space, sampling_hints=f.sampling_hints)
    rep = integrate(bare, 1e-6, [F(1, 4), F(1, 8)])
    assert rep.verdict is Verdict.INCONCLUSIVE


def test_integrate_schedule_errors():
    f = VectorFn.scalar(lambda x: x)
    with pytest.raises(InvalidInputError):
        integrate(f, 1e-6, [])
    with pytest.raises(InvalidInputError):
        integrate(f, 1e-6, [0.1, 0.2])


def test_adversarial_witness_reproduces_gap():
    f = VectorFn.scalar(lambda x: x, vectorized=False)
    w = adversarial_gap(f, F(1, 8))
    hi = TaggedPartition(w.partition.breakpoints, w.tags_high)
    lo = TaggedPartition(w.partition.breakpoints, w.tags_low)
    assert norm(riemann_sum(f, hi) - riemann_sum(f, lo)) == pytest.approx(w.gap, rel=1e-12)


# indefinite integrals and continuity


def test_indefinite_of_constant():
    c = SeqVec.dense([2.0, -1.0], L1)
    tab = indefinite_integral(const(c), [0, F(1, 2), 1])
    assert [x for x, _ in tab] == [0, F(1, 2), 1]
    assert norm(tab[1][1] - 0.5 * c) < 1e-14 and norm(tab[2][1] - c) < 1e-14


def test_indefinite_of_identity():
    (x, v), = indefinite_integral(VectorFn.scalar(lambda t: t), [1])
    assert v.get(1) == pytest.approx(0.5, abs=1e-12)


def test_indefinite_rolewicz_matches_ramp():
    tab = indefinite_integral(G.rolewicz_function(0.5), [F(1, 2)], mesh=F(1, 1000))
    (_, Fx), = tab
    assert G.ramp_distance(Fx, F(1, 2)) <= 1e-3


def test_ramp_distance_against_quadrature():
    # brute-force midpoint quadrature oracle for the closed-form distance
    F_ = StepFn.build((0, F(1, 5), F(3, 5), 1), (0.4, 0.1, 0.0), StepLp(0.5))
    x = F(1, 2)
    s = (np.arange(200000) + 0.5) / 200000
    vals = np.array([F_(float(t)) for t in s[::1000]])  # piecewise constant: sample coarsely
    fine_vals = np.repeat(vals, 1000)
    ramp = np.maximum(float(x) - s, 0)
    brute = np.mean(np.abs(fine_vals - ramp) ** 0.5) ** 2
    assert G.ramp_distance(F_, x) == pytest.approx(brute, rel=1e-6)


def test_indefinite_of_divergent_reports_errors():
    tab = indefinite_integral(G.kadets_function(6), [0, F(1, 2)])
    assert norm(tab[0][1]) == 0
    assert isinstance(tab[1][1], DivergenceError)


def test_continuity_modulus_examples():
    tab = [(F(j, 8), 3.0) for j in range(9)]
    assert all(w == 0 for _, w in continuity_modulus(tab))
    sq = [(F(j, 64), (j / 64) ** 2) for j in range(65)]
    for h, w in continuity_modulus(sq):
        assert w <= 2 * float(h) + 1e-15


def test_continuity_modulus_rolewicz():
    grid = [F(j, 64) for j in range(65)]
    tab = indefinite_integral(G.rolewicz_function(0.5), grid, mesh=F(1, 1000))
    for h, w in continuity_modulus(tab, [F(1, 2 ** k) for k in range(2, 7)]):
        assert w <= float(h) * (1 + 1e-9)


# FTC


def test_ftc_polynomial_in_half_space():
    sp = SeqLp(0.5)
    f = VectorFn.components([lambda x: x, lambda x: x * x], sp)
    fp = VectorFn.components([lambda x: np.ones_like(x), lambda x: 2 * x], sp)
    res = ftc_check(f, fp)
    assert res.holds and res.defect < 1e-6 and str(res) == "HOLDS"


@pytest.mark.parametrize("p", [1, 2, 0.75])
def test_ftc_polynomial_other_exponents(p):
    sp = SeqLp(p)
    f = VectorFn.components([lambda x: x ** 3, lambda x: 1 - x], sp)
    fp = VectorFn.components([lambda x: 3 * x * x, lambda x: -np.ones_like(x)], sp)
    assert ftc_check(f, fp, tol=1e-6).holds


def test_ftc_constant():
    c = SeqVec.dense([1.0, 2.0], L1)
    res = ftc_check(const(c), const(SeqVec((), L1)))
    assert res.holds and res.defect == 0


@pytest.mark.parametrize("p", [0.5, 0.25])
def test_ftc_fails_for_rolewicz(p):
    res = ftc_check(G.rolewicz_function(p), G.rolewicz_derivative(p))
    assert not res.holds and res.defect == 1 and str(res) == "FAILS(1)"


def test_ftc_divergent_needs_closed_form():
    f = G.kadets_function(6)
    with pytest.raises(DivergenceError):
        ftc_check(f, f, mesh_schedule=[F(1, 2)])


# Henstock


def test_henstock_identity_constant_gauges():
    f = VectorFn.scalar(lambda x: x)
    # left-endpoint tags win under constant gauges, so the sum is 1/2 - delta/2
    v = henstock_integrate(f, [ConstantGauge(2.0 ** -k) for k in range(1, 20)], 1e-4)
    assert v.get(1) == pytest.approx(0.5, abs=1e-4)


def test_henstock_zero():
    f = VectorFn.scalar(lambda x: 0 * x)
    assert henstock_integrate(f, [ConstantGauge(0.5), ConstantGauge(0.25)], 1e-9).get(1) == 0


def test_henstock_agrees_with_integrate():
    tol = 1e-4
    f = VectorFn.scalar(np.cos)
    rep = integrate(f, tol, [1e-2, 1e-4, 1e-5])
    v = henstock_integrate(f, [ConstantGauge(2.0 ** -k) for k in range(1, 30)], tol)
    assert rep.verdict is Verdict.CONVERGENT
    assert abs(v.get(1) - rep.estimate.get(1)) <= 2 * tol


def test_henstock_exhausted_schedule():
    with pytest.raises(IntegrationError):
        henstock_integrate(G.wild_function(), G.wild_gauges(1, 2), 1e-9)
