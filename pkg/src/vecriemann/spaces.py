"""Computable models of sequence and function spaces.

Two vector types live here:

* :class:`SeqVec` -- a finitely supported sequence (1-based indices) tagged with
  the space it lives in.  Entries of a :class:`NestedL1` vector are themselves
  ``SeqVec`` instances of the inner space.
* :class:`StepFn` -- a piecewise-constant function on ``[0, 1]`` with exact
  rational breakpoints, measured in the ``L_p`` quasi-norm (``0 < p <= 1``).

Both are immutable.  Arithmetic always returns canonical form, so ``==`` is
structural equality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from numbers import Real
from typing import Iterable, Mapping, Union

import numpy as np

__all__ = [
    "InvalidInputError",
    "SpaceMismatchError",
    "FiniteDim",
    "SeqLp",
    "SeqSup",
    "NestedL1",
    "StepLp",
    "Space",
    "SeqVec",
    "StepFn",
    "as_fraction",
    "zero",
    "norm",
    "dense_norm",
    "quasi_constant",
    "add",
    "scale",
    "pair",
    "unit",
]


class InvalidInputError(ValueError):
    """Raised for non-finite entries, bad exponents and malformed vectors."""


class SpaceMismatchError(ValueError):
    """Raised when combining vectors that live in different spaces."""


def _check_p(p, upper=math.inf):
    if not (p > 0) or p > upper:
        raise InvalidInputError(f"exponent p must lie in (0, {upper}], got {p!r}")


@dataclass(frozen=True)
class FiniteDim:
    """``R^n`` with the sup norm."""

    n: int

    def __post_init__(self):
        if not isinstance(self.n, int) or self.n < 1:
            raise InvalidInputError(f"dimension must be a positive integer, got {self.n!r}")


@dataclass(frozen=True)
class SeqLp:
    """``l_p`` for ``0 < p <= inf``; a quasi-Banach space when ``p < 1``."""

    p: float

    def __post_init__(self):
        _check_p(self.p)


@dataclass(frozen=True)
class SeqSup:
    """Finitely supported sequences under the sup norm (a model of ``c_0``)."""


@dataclass(frozen=True)
class NestedL1:
    """``l_1(X)``: sequences of ``X``-vectors, normed by the sum of inner norms."""

    inner: "Space"

    def __post_init__(self):
        if not isinstance(self.inner, (FiniteDim, SeqLp, SeqSup, NestedL1)):
            raise InvalidInputError(f"NestedL1 inner space must be a sequence space, got {self.inner!r}")


@dataclass(frozen=True)
class StepLp:
    """Step functions on ``[0, 1]`` under the ``L_p`` quasi-norm, ``0 < p <= 1``."""

    p: float

    def __post_init__(self):
        _check_p(self.p, upper=1)


Space = Union[FiniteDim, SeqLp, SeqSup, NestedL1, StepLp]
SEQUENCE_SPACES = (FiniteDim, SeqLp, SeqSup, NestedL1)


def as_fraction(x) -> Fraction:
    """Exact rational for ``x``; floats convert to their exact binary value."""
    if isinstance(x, Fraction):
        return x
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, (float, np.floating)):
        if not math.isfinite(x):
            raise InvalidInputError(f"non-finite breakpoint {x!r}")
        return Fraction(float(x))
    if isinstance(x, str):
        return Fraction(x)
    raise InvalidInputError(f"cannot convert {x!r} to an exact rational")


def _finite_scalar(x) -> float:
    if not isinstance(x, (Real, np.floating, np.integer)):
        raise InvalidInputError(f"scalar entry expected, got {type(x).__name__}")
    x = float(x)
    if not math.isfinite(x):
        raise InvalidInputError(f"non-finite entry {x!r}")
    return x


# --------------------------------------------------------------------------
# sequences
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class SeqVec:
    """Finitely supported sequence in canonical form.

    ``entries`` is a tuple of ``(index, value)`` pairs with strictly increasing
    positive indices and no zero values.  Build instances with :meth:`of`,
    which sorts, drops zeros and validates.
    """

    entries: tuple
    space: Space

    @classmethod
    def of(cls, data: Union[Mapping[int, object], Iterable], space: Space) -> "SeqVec":
        if not isinstance(space, SEQUENCE_SPACES):
            raise InvalidInputError(f"SeqVec needs a sequence space, got {space!r}")
        items = data.items() if isinstance(data, Mapping) else data
        nested = isinstance(space, NestedL1)
        acc = {}
        for idx, val in items:
            if isinstance(idx, bool) or not isinstance(idx, (int, np.integer)) or idx < 1:
                raise InvalidInputError(f"indices must be positive integers, got {idx!r}")
            idx = int(idx)
            if idx in acc:
                raise InvalidInputError(f"duplicate index {idx}")
            if isinstance(space, FiniteDim) and idx > space.n:
                raise InvalidInputError(f"index {idx} exceeds dimension {space.n}")
            if nested:
                if not isinstance(val, SeqVec) or val.space != space.inner:
                    raise InvalidInputError("NestedL1 entries must be SeqVec in the inner space")
                if not val.entries:
                    continue
            else:
                val = _finite_scalar(val)
                if val == 0.0:
                    continue
            acc[idx] = val
        return cls(tuple(sorted(acc.items())), space)

    @classmethod
    def dense(cls, values: Iterable, space: Space) -> "SeqVec":
        """Vector with ``values[0]`` at index 1, ``values[1]`` at index 2, ..."""
        return cls.of(enumerate(values, start=1), space)

    def __post_init__(self):
        prev = 0
        for idx, val in self.entries:
            if idx <= prev:
                raise InvalidInputError("entries must have strictly increasing positive indices")
            prev = idx
            if isinstance(val, SeqVec):
                if not val.entries:
                    raise InvalidInputError("zero inner vectors are not stored")
            elif val == 0 or not math.isfinite(val):
                raise InvalidInputError(f"invalid stored value {val!r} at index {idx}")

    def as_dict(self) -> dict:
        return dict(self.entries)

    def get(self, idx: int):
        for i, v in self.entries:
            if i == idx:
                return v
        return zero(self.space.inner) if isinstance(self.space, NestedL1) else 0.0

    @property
    def support(self) -> tuple:
        return tuple(i for i, _ in self.entries)

    def __len__(self):
        return len(self.entries)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return add(self, scale(-1.0, other))

    def __neg__(self):
        return scale(-1.0, self)

    def __mul__(self, c):
        return scale(c, self)

    __rmul__ = __mul__


# --------------------------------------------------------------------------
# step functions
# --------------------------------------------------------------------------


@dataclass(frozen=True, eq=True)
class StepFn:
    """Piecewise-constant function on ``[0, 1]``.

    ``values[i]`` is taken on ``[breakpoints[i], breakpoints[i+1])``; the last
    value also holds at ``t = 1``.  The constructor only validates; use
    :meth:`build` to get the canonical form with adjacent equal pieces merged.
    """

    breakpoints: tuple
    values: tuple
    space: StepLp

    def __post_init__(self):
        if not isinstance(self.space, StepLp):
            raise InvalidInputError(f"StepFn lives in a StepLp space, got {self.space!r}")
        bps = self.breakpoints
        if len(bps) < 2 or bps[0] != 0 or bps[-1] != 1:
            raise InvalidInputError("breakpoints must start at 0 and end at 1")
        if any(not isinstance(b, Fraction) for b in bps):
            raise InvalidInputError("breakpoints must be Fractions; use StepFn.build")
        if any(b1 >= b2 for b1, b2 in zip(bps, bps[1:])):
            raise InvalidInputError("breakpoints must be strictly increasing")
        if len(self.values) != len(bps) - 1:
            raise InvalidInputError("need exactly one value per piece")
        for v in self.values:
            if not isinstance(v, float) or not math.isfinite(v):
                raise InvalidInputError(f"invalid step value {v!r}")

    @classmethod
    def build(cls, breakpoints: Iterable, values: Iterable, space: StepLp) -> "StepFn":
        bps = [as_fraction(b) for b in breakpoints]
        vals = [_finite_scalar(v) for v in values]
        if len(vals) != len(bps) - 1:
            raise InvalidInputError("need exactly one value per piece")
        out_b, out_v = [bps[0]], []
        for b, v in zip(bps[1:], vals):
            if out_v and out_v[-1] == v:
                out_b[-1] = b
            else:
                out_v.append(v)
                out_b.append(b)
        return cls(tuple(out_b), tuple(out_v), space)

    @classmethod
    def indicator(cls, lo, hi, space: StepLp, height: float = 1.0) -> "StepFn":
        """``height`` times the indicator of ``[lo, hi]`` (endpoints are measure zero)."""
        lo, hi = as_fraction(lo), as_fraction(hi)
        if not (0 <= lo <= hi <= 1):
            raise InvalidInputError(f"need 0 <= lo <= hi <= 1, got [{lo}, {hi}]")
        if lo == hi or height == 0:
            return zero(space)
        bps = [Fraction(0), lo, hi, Fraction(1)]
        vals = [0.0, float(height), 0.0]
        keep_b, keep_v = [bps[0]], []
        for b, v in zip(bps[1:], vals):
            if b > keep_b[-1]:
                keep_b.append(b)
                keep_v.append(v)
        return cls.build(keep_b, keep_v, space)

    def __call__(self, t) -> float:
        t = as_fraction(t)
        if not 0 <= t <= 1:
            raise InvalidInputError(f"t={t} outside [0, 1]")
        lo, hi = 0, len(self.values) - 1
        while lo < hi:
            mid = (lo + hi + 1) // 2
            if self.breakpoints[mid] <= t:
                lo = mid
            else:
                hi = mid - 1
        return self.values[lo]

    def lengths(self) -> list:
        return [b2 - b1 for b1, b2 in zip(self.breakpoints, self.breakpoints[1:])]

    def refine(self, extra: Iterable) -> "StepFn":
        """Same function with extra (redundant) breakpoints inserted; not canonical."""
        pts = sorted(set(self.breakpoints) | {as_fraction(x) for x in extra})
        vals = [self(b) for b in pts[:-1]]
        return StepFn(tuple(pts), tuple(vals), self.space)

    def __add__(self, other):
        return add(self, other)

    def __sub__(self, other):
        return _merge(self, other, lambda x, y: x - y)

    def __neg__(self):
        return scale(-1.0, self)

    def __mul__(self, c):
        return scale(c, self)

    __rmul__ = __mul__


def _merge(u: StepFn, v: StepFn, op) -> StepFn:
    if u.space != v.space:
        raise SpaceMismatchError(f"{u.space!r} vs {v.space!r}")
    bu, bv = u.breakpoints, v.breakpoints
    if bu == bv:
        return StepFn.build(bu, [op(x, y) for x, y in zip(u.values, v.values)], u.space)
    i = j = 1
    out_b, out_v = [bu[0]], []
    nu, nv = len(bu), len(bv)
    while i < nu and j < nv:
        out_v.append(op(u.values[i - 1], v.values[j - 1]))
        x, y = bu[i], bv[j]
        if x < y:
            out_b.append(x)
            i += 1
        elif y < x:
            out_b.append(y)
            j += 1
        else:
            out_b.append(x)
            i += 1
            j += 1
    return StepFn.build(out_b, out_v, u.space)


# --------------------------------------------------------------------------
# operations
# --------------------------------------------------------------------------


def zero(space: Space):
    if isinstance(space, StepLp):
        return StepFn((Fraction(0), Fraction(1)), (0.0,), space)
    return SeqVec((), space)


def unit(n: int, space: Space) -> SeqVec:
    """The n-th unit vector ``e_n``."""
    return SeqVec.of({n: 1.0}, space)


def _lp_sum(values, p) -> float:
    if p == 1:
        return sum(abs(v) for v in values)
    s = sum(abs(v) ** p for v in values)
    return s ** (1.0 / p)


def norm(v) -> float:
    """Norm or quasi-norm of ``v`` in its own space.

    ``l_p``: ``(sum |v_i|^p)^(1/p)``; sup spaces: ``max |v_i|``; ``l_1(X)``: sum of
    inner norms; ``StepLp``: ``(sum |v_i|^p * length_i)^(1/p)``.
    """
    if isinstance(v, StepFn):
        p = v.space.p
        for x in v.values:
            if not math.isfinite(x):
                raise InvalidInputError(f"non-finite value {x!r}")
        s = sum(abs(x) ** p * float(ln) for x, ln in zip(v.values, v.lengths()))
        return s if p == 1 else s ** (1.0 / p)
    if not isinstance(v, SeqVec):
        raise InvalidInputError(f"cannot take the norm of {type(v).__name__}")
    space = v.space
    if isinstance(space, NestedL1):
        return sum(norm(inner) for _, inner in v.entries)
    vals = [x for _, x in v.entries]
    for x in vals:
        if not math.isfinite(x):
            raise InvalidInputError(f"non-finite entry {x!r}")
    if not vals:
        return 0.0
    if isinstance(space, (FiniteDim, SeqSup)) or space.p == math.inf:
        return max(abs(x) for x in vals)
    return _lp_sum(vals, space.p)


def dense_norm(space: Space, arr) -> np.ndarray:
    """Row-wise norm of dense coordinate arrays (last axis = indices 1..n)."""
    arr = np.asarray(arr, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise InvalidInputError("non-finite entry in dense vector")
    a = np.abs(arr)
    if isinstance(space, (FiniteDim, SeqSup)) or (isinstance(space, SeqLp) and space.p == math.inf):
        return a.max(axis=-1) if a.shape[-1] else np.zeros(a.shape[:-1])
    if isinstance(space, SeqLp):
        p = space.p
        if p == 1:
            return a.sum(axis=-1)
        return (a ** p).sum(axis=-1) ** (1.0 / p)
    raise InvalidInputError(f"no dense representation for {space!r}")


def quasi_constant(space: Space) -> float:
    """Smallest ``k`` with ``||x + y|| <= k (||x|| + ||y||)`` for the space's quasi-norm.

    ``2^(1/p - 1)`` for ``p < 1`` (sharp: two disjointly supported unit vectors
    attain it), 1 for genuine norms.  ``l_1(X)`` inherits the constant of ``X``.
    """
    if isinstance(space, NestedL1):
        return quasi_constant(space.inner)
    if isinstance(space, (SeqLp, StepLp)) and space.p < 1:
        return 2.0 ** (1.0 / space.p - 1.0)
    return 1.0


def add(u, v):
    if isinstance(u, StepFn) and isinstance(v, StepFn):
        return _merge(u, v, lambda x, y: x + y)
    if not (isinstance(u, SeqVec) and isinstance(v, SeqVec)):
        raise SpaceMismatchError(f"cannot add {type(u).__name__} and {type(v).__name__}")
    if u.space != v.space:
        raise SpaceMismatchError(f"{u.space!r} vs {v.space!r}")
    if not v.entries:
        return u
    if not u.entries:
        return v
    acc = dict(u.entries)
    for i, x in v.entries:
        acc[i] = acc[i] + x if i in acc else x
    if isinstance(u.space, NestedL1):
        items = ((i, x) for i, x in acc.items() if x.entries)
    else:
        items = ((i, x) for i, x in acc.items() if x != 0.0)
    return SeqVec(tuple(sorted(items)), u.space)


def scale(c, v):
    c = _finite_scalar(c)
    if isinstance(v, StepFn):
        return StepFn.build(v.breakpoints, [c * x for x in v.values], v.space)
    if not isinstance(v, SeqVec):
        raise InvalidInputError(f"cannot scale {type(v).__name__}")
    if c == 0.0:
        return zero(v.space)
    if isinstance(v.space, NestedL1):
        return SeqVec(tuple((i, scale(c, x)) for i, x in v.entries), v.space)
    return SeqVec(tuple((i, c * x) for i, x in v.entries if c * x != 0.0), v.space)


def pair(functional: SeqVec, x: SeqVec) -> float:
    """Duality pairing ``<functional, x> = sum functional_i * x_i`` over common indices."""
    xs = dict(x.entries)
    return sum(w * xs[i] for i, w in functional.entries if i in xs)
