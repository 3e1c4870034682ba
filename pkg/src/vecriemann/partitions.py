"""Tagged partitions, mesh, gauges and gauge-fine partition search."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

from .spaces import as_fraction

__all__ = [
    "PartitionError",
    "InvalidGaugeError",
    "NoFinePartitionError",
    "TaggedPartition",
    "ConstantGauge",
    "PiecewiseGauge",
    "AnalyticGauge",
    "Gauge",
    "mesh",
    "uniform_partition",
    "tagged",
    "is_gauge_fine",
    "cousin_fine",
]

TAG_RULES = ("left", "right", "mid")


class PartitionError(ValueError):
    pass


class InvalidGaugeError(ValueError):
    pass


class NoFinePartitionError(RuntimeError):
    """Bisection hit ``depth_cap`` without finding a covering tag."""

    def __init__(self, lo, hi, depth):
        super().__init__(f"no gauge-fine tag found for [{lo}, {hi}] at depth {depth}")
        self.interval = (lo, hi)
        self.depth = depth


@dataclass(frozen=True)
class TaggedPartition:
    """Breakpoints ``t_0 < ... < t_j`` with one tag ``s_i in [t_{i-1}, t_i]`` per piece."""

    breakpoints: tuple
    tags: tuple

    def __post_init__(self):
        bps = tuple(as_fraction(b) for b in self.breakpoints)
        tags = tuple(as_fraction(s) for s in self.tags)
        object.__setattr__(self, "breakpoints", bps)
        object.__setattr__(self, "tags", tags)
        if len(bps) < 2:
            raise PartitionError("a partition needs at least one subinterval")
        if len(tags) != len(bps) - 1:
            raise PartitionError(f"{len(bps) - 1} subintervals but {len(tags)} tags")
        for lo, hi in zip(bps, bps[1:]):
            if not lo < hi:
                raise PartitionError(f"breakpoints not strictly increasing at {lo}, {hi}")
        for s, lo, hi in zip(tags, bps, bps[1:]):
            if not lo <= s <= hi:
                raise PartitionError(f"tag {s} outside its subinterval [{lo}, {hi}]")

    @property
    def a(self) -> Fraction:
        return self.breakpoints[0]

    @property
    def b(self) -> Fraction:
        return self.breakpoints[-1]

    def __len__(self):
        return len(self.tags)

    def lengths(self) -> list:
        b = self.breakpoints
        return [b[i + 1] - b[i] for i in range(len(self.tags))]

    def pieces(self):
        """Iterate ``(tag, lo, hi)`` in index order."""
        b = self.breakpoints
        for i, s in enumerate(self.tags):
            yield s, b[i], b[i + 1]

    @property
    def mesh(self) -> Fraction:
        return max(self.lengths())

    def retag(self, tags: Iterable) -> "TaggedPartition":
        return TaggedPartition(self.breakpoints, tuple(tags))


def mesh(P: TaggedPartition) -> Fraction:
    """Largest subinterval length ``max(t_i - t_{i-1})``, exact."""
    return P.mesh


def _tag(lo, hi, rule):
    if rule == "left":
        return lo
    if rule == "right":
        return hi
    if rule == "mid":
        return (lo + hi) / 2
    raise PartitionError(f"unknown tag rule {rule!r}; expected one of {TAG_RULES}")


def tagged(breakpoints: Sequence, tag_rule: str = "mid") -> TaggedPartition:
    bps = [as_fraction(b) for b in breakpoints]
    return TaggedPartition(tuple(bps), tuple(_tag(lo, hi, tag_rule) for lo, hi in zip(bps, bps[1:])))


def uniform_partition(a, b, n: int, tag_rule: str = "mid") -> TaggedPartition:
    """``n`` equal subintervals of ``[a, b]`` tagged left, right or at midpoints."""
    a, b = as_fraction(a), as_fraction(b)
    if not a < b:
        raise PartitionError(f"need a < b, got a={a}, b={b}")
    if not isinstance(n, int) or n < 1:
        raise PartitionError(f"n must be a positive integer, got {n!r}")
    step = (b - a) / n
    return tagged([a + k * step for k in range(n + 1)], tag_rule)


# --------------------------------------------------------------------------
# gauges
# --------------------------------------------------------------------------


@dataclass(frozen=True)
class ConstantGauge:
    delta: float

    def __post_init__(self):
        if not self.delta > 0:
            raise InvalidGaugeError(f"constant gauge must be positive, got {self.delta!r}")

    def __call__(self, t):
        return self.delta

    @property
    def special_points(self) -> tuple:
        return ()


@dataclass(frozen=True)
class PiecewiseGauge:
    """Positive width on each piece ``[breakpoints[i], breakpoints[i+1])``."""

    breakpoints: tuple
    widths: tuple

    def __post_init__(self):
        object.__setattr__(self, "breakpoints", tuple(as_fraction(b) for b in self.breakpoints))
        if len(self.widths) != len(self.breakpoints) - 1:
            raise InvalidGaugeError("need one width per piece")
        if any(not b1 < b2 for b1, b2 in zip(self.breakpoints, self.breakpoints[1:])):
            raise InvalidGaugeError("gauge breakpoints must be strictly increasing")
        if any(not w > 0 for w in self.widths):
            raise InvalidGaugeError("gauge widths must be positive")

    def __call__(self, t):
        t = as_fraction(t)
        bps = self.breakpoints
        if not bps[0] <= t <= bps[-1]:
            raise InvalidGaugeError(f"t={t} outside gauge domain [{bps[0]}, {bps[-1]}]")
        for i in range(len(self.widths) - 1, -1, -1):
            if bps[i] <= t:
                return self.widths[i]
        return self.widths[0]

    @property
    def special_points(self) -> tuple:
        return ()


@dataclass(frozen=True)
class AnalyticGauge:
    """The ``min-power`` family: ``delta(t) = min(cap, scale * |t - center|^power)``.

    At ``t = center`` the formula vanishes, so ``at_center`` supplies the
    (positive) value there.  ``center`` is offered as a candidate tag during
    the Cousin search.
    """

    cap: float
    scale: float
    power: float = 1
    center: Fraction = Fraction(0)
    at_center: float = 0.0
    family: str = field(default="min-power", init=False)

    def __post_init__(self):
        object.__setattr__(self, "center", as_fraction(self.center))
        if not (self.cap > 0 and self.scale > 0 and self.power > 0):
            raise InvalidGaugeError("cap, scale and power must be positive")

    def __call__(self, t):
        # evaluated in floats: the search compares it against dyadic lengths,
        # which floats hold exactly, so fineness checks stay reproducible
        if t == self.center:
            return float(self.at_center)
        d = abs(float(t) - float(self.center))
        return min(float(self.cap), float(self.scale) * d ** self.power)

    @property
    def special_points(self) -> tuple:
        return (self.center,)


Gauge = Union[ConstantGauge, PiecewiseGauge, AnalyticGauge]


def _width(g, t):
    w = g(t)
    if not w > 0:
        raise InvalidGaugeError(f"gauge is not positive at t={t} (value {w})")
    return w


def is_gauge_fine(P: TaggedPartition, g: Gauge) -> bool:
    """True iff every piece satisfies ``t_i - t_{i-1} <= g(s_i)``.

    With a :class:`ConstantGauge` this is plain delta-fineness.
    """
    return all(float(hi - lo) <= _width(g, s) for s, lo, hi in P.pieces())


def cousin_fine(a, b, g: Gauge, depth_cap: int = 60) -> TaggedPartition:
    """Gauge-fine tagged partition of ``[a, b]`` found by bisection.

    Each interval is accepted as soon as one candidate tag ``s`` in it has
    ``hi - lo <= g(s)``; candidates are tried in the order left endpoint,
    right endpoint, midpoint, then the gauge's special points.  Otherwise the
    interval is halved.  Breakpoints are therefore dyadic combinations of
    ``a`` and ``b``.
    """
    a, b = as_fraction(a), as_fraction(b)
    if not a < b:
        raise PartitionError(f"need a < b, got a={a}, b={b}")
    specials = [as_fraction(s) for s in g.special_points]
    bps, tags = [a], []
    stack = [(a, b, 0)]
    while stack:
        lo, hi, depth = stack.pop()
        length = float(hi - lo)
        mid = (lo + hi) / 2
        cands = [lo, hi, mid] + [s for s in specials if lo <= s <= hi]
        found = None
        for s in cands:
            if length <= _width(g, s):
                found = s
                break
        if found is not None:
            bps.append(hi)
            tags.append(found)
            continue
        if depth >= depth_cap:
            raise NoFinePartitionError(lo, hi, depth)
        # right half first so the left half is processed next
        stack.append((mid, hi, depth + 1))
        stack.append((lo, mid, depth + 1))
    return TaggedPartition(tuple(bps), tuple(tags))


def required_depth(a, b, delta) -> int:
    """Depth bound for constant gauges: ``ceil(log2((b - a) / delta)) + 1``."""
    ratio = float(as_fraction(b) - as_fraction(a)) / float(delta)
    return max(0, math.ceil(math.log2(ratio))) + 1 if ratio > 1 else 1
