"""``F(x) = x^2 sin(1/x^2)``: differentiable on ``[0, 1]`` with unbounded ``F'``.

``F'`` is not Riemann integrable on ``[0, 1]`` (it is unbounded near 0) but
is gauge integrable with integral ``F(1) - F(0) = sin 1``.
"""

from __future__ import annotations

import math

import numpy as np

from ..integration import VectorFn
from ..partitions import AnalyticGauge

__all__ = ["wild_primitive", "wild_derivative", "wild_function", "wild_gauges"]


def wild_primitive(x: float) -> float:
    x = float(x)
    return 0.0 if x == 0 else x * x * math.sin(1 / (x * x))


def wild_derivative(x):
    """``2x sin(1/x^2) - (2/x) cos(1/x^2)``, and 0 at 0; accepts arrays."""
    x = np.asarray(x, dtype=float)
    out = np.zeros_like(x)
    nz = x != 0
    y = x[nz]
    out[nz] = 2 * y * np.sin(1 / y ** 2) - (2 / y) * np.cos(1 / y ** 2)
    return out if out.ndim else float(out)


def wild_function() -> VectorFn:
    return VectorFn.scalar(wild_derivative, 0, 1, name="d/dx x^2 sin(1/x^2)")


def wild_gauges(k_min: int = 5, k_max: int = 12, at_center: float = 0.01) -> list:
    """Gauges ``min(2^-k, 2^-k t^2)`` with ``delta(0) = at_center``.

    The piece tagged at 0 contributes nothing to the sum and misses at most
    ``|F(delta(0))| <= delta(0)^2`` of the integral.  Away from 0 the widths
    shrink like ``t^2`` so cells keep pace with the oscillation.
    """
    if not 1 <= k_min <= k_max:
        raise ValueError("need 1 <= k_min <= k_max")
    return [AnalyticGauge(cap=2.0 ** -k, scale=2.0 ** -k, power=2, center=0, at_center=at_center)
            for k in range(k_min, k_max + 1)]
