"""A weak*-continuous map ``[0, 1] -> l_1 = (c_0)*`` that is not Riemann integrable.

``f(t) = sum_k h_k(t) e_k`` where ``h_k`` is the sum of tent functions
supported on the level-``k`` removed intervals of the fat Cantor set.  The
removed intervals of all levels are pairwise disjoint, so at most one term is
non-zero at any ``t``.  Against ``c_0`` the coordinates ``e_k`` pair to
``x_k -> 0`` (weak*-null), but ``||e_k||_1 = 1`` for every ``k``.

Non-integrability is witnessed by the stage-``m`` partition pair: it keeps
the ``2^(m-1)`` intervals that survive level ``m - 1`` as whole pieces and tags
them at the level-``m`` peak (``f = e_m``) versus the left endpoint (a point
of the Cantor set, ``f = 0``).  The Riemann sums then differ by
``e_m`` times the total surviving length ``1 - sum_{j<m} 3^-j > 1/2``.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from ..integration import IntegrationError, VectorFn, riemann_sum
from ..partitions import TaggedPartition
from ..spaces import SeqLp, SeqVec, as_fraction, norm
from .cantor import fat_cantor, kept_length, removed_length

__all__ = [
    "L1",
    "removed_interval",
    "kept_interval",
    "bump",
    "locate",
    "kadets_f",
    "kadets_partitions",
    "kadets_gap_closed_form",
    "kadets_gap",
    "kadets_certificate",
    "kadets_hints",
    "kadets_local_hints",
    "kadets_function",
    "discontinuity_upper_exact",
]

L1 = SeqLp(1)
DEFAULT_DEPTH = 30


@lru_cache(maxsize=None)
def _offset(k: int) -> Fraction:
    # distance from the left end of a level-(k-1) kept interval to A_k inside it
    return (kept_length(k - 1) - removed_length(k)) / 2


def kept_interval(k: int, j: int) -> tuple:
    """The ``j``-th (1-based) interval kept after level ``k``."""
    if k < 0 or not 1 <= j <= 2 ** k:
        raise ValueError(f"no kept interval ({k}, {j})")
    left = Fraction(0)
    bits = j - 1
    for level in range(1, k + 1):
        if (bits >> (k - level)) & 1:
            left += _offset(level) + removed_length(level)
    return left, left + kept_length(k)


def removed_interval(k: int, i: int) -> tuple:
    """``A_k^(i) = [a_k^(i), b_k^(i)]``, the ``i``-th interval removed at level ``k``."""
    if k < 1 or not 1 <= i <= 2 ** (k - 1):
        raise ValueError(f"no removed interval ({k}, {i})")
    left, _ = kept_interval(k - 1, i)
    lo = left + _offset(k)
    return lo, lo + removed_length(k)


def _tent(t: Fraction, lo: Fraction, hi: Fraction) -> Fraction:
    if t <= lo or t >= hi:
        return Fraction(0)
    half = (hi - lo) / 2
    return 1 - abs(t - (lo + half)) / half


def bump(k: int, i: int, t) -> float:
    """Tent on ``A_k^(i)``: 0 at both ends, 1 at the midpoint ``c_k^(i)``, 0 outside."""
    lo, hi = removed_interval(k, i)
    return float(_tent(as_fraction(t), lo, hi))


def locate(t, depth: int = DEFAULT_DEPTH):
    """``(k, i, lo, hi)`` of the removed interval of level ``<= depth`` holding ``t``, else None.

    Walks down the kept-interval tree, ``O(depth)`` exact operations.
    """
    t = as_fraction(t)
    if not 0 <= t <= 1:
        raise ValueError(f"t={t} outside [0, 1]")
    left, j = Fraction(0), 1
    for k in range(1, depth + 1):
        lo = left + _offset(k)
        hi = lo + removed_length(k)
        if lo <= t <= hi:
            return k, j, lo, hi
        if t < lo:
            j = 2 * j - 1
        else:
            left, j = hi, 2 * j
    return None


def kadets_f(t, K: int = DEFAULT_DEPTH) -> SeqVec:
    """``f(t)`` truncated after level ``K``: ``bump(k, i, t) e_k`` on ``A_k^(i)``, else 0."""
    hit = locate(t, K)
    if hit is None:
        return SeqVec((), L1)
    k, _, lo, hi = hit
    return SeqVec.of({k: float(_tent(as_fraction(t), lo, hi))}, L1)


def kadets_partitions(m: int) -> tuple:
    """Stage-``m`` partition pair ``(P1, P2)`` sharing breakpoints.

    Pieces: every interval ``B_m^(i)`` kept after level ``m - 1`` (tagged at
    ``c_m^(i)`` in ``P1``, at its left endpoint in ``P2``) plus each removed
    interval of level ``< m`` cut into equal pieces shorter than
    ``2^-(m-1)``, tagged at their left endpoints in both.
    """
    if not isinstance(m, int) or m < 1:
        raise ValueError(f"stage must be a positive integer, got {m!r}")
    cl = fat_cantor(m)
    width = Fraction(1, 2 ** (m - 1))
    pieces = []
    for lo, hi in cl.kept_intervals(m - 1):
        c = lo + _offset(m) + removed_length(m) / 2
        pieces.append((lo, hi, c, lo))
    for k in range(1, m):
        for lo, hi in cl.removed_intervals(k):
            q = int((hi - lo) / width) + 1
            step = (hi - lo) / q
            for r in range(q):
                a = lo + r * step
                pieces.append((a, a + step, a, a))
    pieces.sort()
    bps = tuple([pieces[0][0]] + [p[1] for p in pieces])
    P1 = TaggedPartition(bps, tuple(p[2] for p in pieces))
    P2 = TaggedPartition(bps, tuple(p[3] for p in pieces))
    return P1, P2


def kadets_gap_closed_form(m: int) -> Fraction:
    """``1 - sum_{j=1}^{m-1} 3^-j``: total length kept after level ``m - 1``."""
    return 1 - sum((Fraction(1, 3 ** j) for j in range(1, m)), Fraction(0))


def kadets_gap(m: int) -> tuple:
    """``(closed_form, ||S(f, P1) - S(f, P2)||_1)`` for the stage-``m`` pair."""
    f = kadets_function(max(m, 1), hint_depth=0)
    P1, P2 = kadets_partitions(m)
    numeric = norm(riemann_sum(f, P1) - riemann_sum(f, P2))
    return kadets_gap_closed_form(m), numeric


def kadets_certificate(mesh, depth: int = DEFAULT_DEPTH) -> tuple:
    """First stage pair whose mesh is strictly below ``mesh``."""
    mesh = as_fraction(mesh)
    if not mesh > 0:
        raise ValueError("mesh must be positive")
    m = 1
    while Fraction(1, 2 ** (m - 1)) > mesh:
        m += 1
    # stage m has mesh < 2^-(m-1) for m >= 2; stage 1 is the single piece [0, 1]
    for stage in (m, m + 1):
        if stage > depth:
            break
        P1, P2 = kadets_partitions(stage)
        if P1.mesh < mesh:
            return P1, P2
    raise IntegrationError(f"mesh {mesh} needs a stage deeper than {depth}")


def kadets_hints(depth: int) -> tuple:
    """Endpoints and midpoints of every removed interval through ``depth``, plus 0 and 1."""
    pts = {Fraction(0), Fraction(1)}
    if depth >= 1:
        cl = fat_cantor(depth)
        for k in range(1, depth + 1):
            for lo, hi in cl.removed_intervals(k):
                pts.update((lo, hi, (lo + hi) / 2))
    return tuple(sorted(pts))


def kadets_local_hints(lo, hi, depth: int = DEFAULT_DEPTH, max_points: int = 4096) -> list:
    """Hint points inside ``[lo, hi]``, shallow levels first, at most about ``max_points``."""
    lo, hi = as_fraction(lo), as_fraction(hi)
    out = []
    frontier = [Fraction(0)]  # left ends of kept intervals after the previous level
    for k in range(1, depth + 1):
        L = kept_length(k - 1)
        nxt = []
        for left in frontier:
            if left > hi or left + L < lo:
                continue
            a = left + _offset(k)
            b = a + removed_length(k)
            out.extend(p for p in (a, (a + b) / 2, b) if lo <= p <= hi)
            nxt.extend((left, b))
        if len(out) >= max_points or not nxt:
            break
        frontier = nxt
    return sorted(set(out))


def discontinuity_upper_exact(beta, K: int) -> Fraction:
    """Measure of points not inside a removed interval of level ``<= K``.

    For ``beta <= 2`` every Cantor point has oscillation 2 (distinct peaks
    ``e_j``, ``e_k`` accumulate there) and every point of an open removed
    interval is a continuity point.  ``||f|| <= 1`` caps the oscillation at 2,
    so larger ``beta`` gives 0.
    """
    if not beta > 0:
        raise ValueError("beta must be positive")
    if beta > 2:
        return Fraction(0)
    return 1 - fat_cantor(K).removed_measure(K)


def kadets_function(depth: int = DEFAULT_DEPTH, hint_depth: int | None = None) -> VectorFn:
    """The Kadets map as a :class:`VectorFn` with hints and a divergence certificate.

    Evaluation is exact at every point of a stage-``m`` partition for
    ``m <= depth``.  ``hint_depth`` (default ``min(depth, 10)``) sets how many
    levels of peaks and endpoints are handed to the tag adversary.
    """
    hint_depth = min(depth, 10) if hint_depth is None else hint_depth
    return VectorFn(
        fn=lambda t: kadets_f(t, depth),
        space=L1,
        sampling_hints=kadets_hints(hint_depth),
        certificate=lambda mesh: kadets_certificate(mesh, depth),
        certified_gap=0.5,
        continuity_measure=lambda beta, K: 1 - discontinuity_upper_exact(beta, K),
        local_hints=lambda lo, hi: kadets_local_hints(lo, hi, depth, max_points=256),
        name=f"kadets(depth={depth})",
    )
