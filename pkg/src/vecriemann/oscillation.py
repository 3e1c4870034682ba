"""Oscillation of vector-valued functions and discontinuity-set measure bounds.

Sampled values are lower estimates of the true suprema; a sample set can
miss a spike.  Functions that know their own structure (``continuity_measure``)
get an exact classification instead, and every result says which regime
produced it.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .integration import VectorFn
from .spaces import as_fraction, norm

__all__ = [
    "OscProfile",
    "OscPoint",
    "DEFAULT_RADII",
    "osc_interval",
    "osc_point",
    "discontinuity_measure_upper",
    "osc_profile",
]

DEFAULT_RADII = tuple(Fraction(1, 2 ** k) for k in range(3, 21))


@dataclass(frozen=True)
class OscPoint:
    value: float
    by_radius: tuple  # (radius, estimate), nonincreasing


@dataclass(frozen=True)
class OscProfile:
    points: tuple  # (t, estimated omega(f, t))
    beta: float
    estimated_measure_upper: object
    regime: str  # "exact" or "sampled"


def _sample_points(f: VectorFn, c: Fraction, d: Fraction, samples: int) -> list:
    n = max(samples, 2)
    step = (d - c) / (n - 1)
    pts = {c + j * step for j in range(n)}
    pts.update(h for h in f.sampling_hints if c <= h <= d)
    if f.local_hints is not None:
        pts.update(f.local_hints(c, d))
    return sorted(pts)


def _diameter(values: list) -> float:
    # identical values contribute nothing; hashing them first keeps the
    # pairwise loop small for functions with few distinct values
    distinct = list(dict.fromkeys(values))
    best = 0.0
    for i, u in enumerate(distinct):
        for v in distinct[i + 1:]:
            best = max(best, norm(u - v))
    return best


def osc_interval(f: VectorFn, c, d, samples: int = 33) -> float:
    """``max ||f(x) - f(y)||`` over an equispaced grid plus hints in ``[c, d]``."""
    c, d = as_fraction(c), as_fraction(d)
    if not c < d:
        raise ValueError(f"need c < d, got [{c}, {d}]")
    c, d = max(c, f.a), min(d, f.b)
    return _diameter([f(t) for t in _sample_points(f, c, d, samples)])


def osc_point(f: VectorFn, t, shrink_schedule: Sequence = DEFAULT_RADII, samples: int = 33) -> OscPoint:
    """Oscillation at ``t`` estimated on windows ``[t - r, t + r]`` of shrinking radius.

    A sample found inside a small window also lies inside every larger one,
    so each radius reports the best estimate seen at it or any smaller radius;
    the reported sequence is therefore nonincreasing.  ``value`` is the entry
    for the smallest radius.
    """
    t = as_fraction(t)
    radii = [as_fraction(r) for r in shrink_schedule]
    if not radii or any(r <= 0 for r in radii) or any(r2 >= r1 for r1, r2 in zip(radii, radii[1:])):
        raise ValueError("radii must be positive and strictly decreasing")
    raw = [osc_interval(f, max(t - r, f.a), min(t + r, f.b), samples) for r in radii]
    est = raw[:]
    for i in range(len(est) - 2, -1, -1):
        est[i] = max(est[i], est[i + 1])
    return OscPoint(est[-1], tuple(zip(radii, est)))


def discontinuity_measure_upper(f: VectorFn, beta, cells: int = 64, samples: int = 9,
                                depth: Optional[int] = None):
    """Upper estimate of ``mu{t : omega(f, t) >= beta}``.

    Exact regime (``depth`` given and ``f.continuity_measure`` available):
    ``(b - a)`` minus the measure certified continuous by level-``depth``
    classification, returned as a ``Fraction``.

    Sampled regime: ``[a, b]`` is cut into ``cells`` equal cells; a cell is
    certified when all samples and hints in it stay within ``beta / 2`` of the
    value at its left end.  Returns the total length of uncertified cells.
    """
    if not beta > 0:
        raise ValueError("beta must be positive")
    if depth is not None and f.continuity_measure is not None:
        return (f.b - f.a) - f.continuity_measure(beta, depth)
    step = (f.b - f.a) / cells
    bad = Fraction(0)
    for j in range(cells):
        lo, hi = f.a + j * step, f.a + (j + 1) * step
        pts = _sample_points(f, lo, hi, samples)
        ref = f(pts[0])
        if any(norm(f(s) - ref) > beta / 2 for s in pts[1:]):
            bad += step
    return float(bad)


def osc_profile(f: VectorFn, points: Sequence, beta, cells: int = 64, depth: Optional[int] = None,
                shrink_schedule: Sequence = DEFAULT_RADII) -> OscProfile:
    pts = tuple((as_fraction(t), osc_point(f, t, shrink_schedule).value) for t in points)
    exact = depth is not None and f.continuity_measure is not None
    measure = discontinuity_measure_upper(f, beta, cells=cells, depth=depth)
    return OscProfile(pts, float(beta), measure, "exact" if exact else "sampled")
