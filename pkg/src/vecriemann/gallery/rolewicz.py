"""Rolewicz's map ``t -> chi_[0,t]`` into ``L_p[0, 1]``, ``0 < p < 1``.

Increments have quasi-norm ``|h|^(1/p)``, so difference quotients have
quasi-norm ``|h|^(1/p - 1) -> 0``: the derivative vanishes everywhere while
the map itself is not constant.
"""

from __future__ import annotations

import math

from ..integration import VectorFn
from ..spaces import InvalidInputError, StepFn, StepLp, as_fraction, norm, zero

__all__ = [
    "rolewicz_f",
    "rolewicz_increment",
    "rolewicz_quotient",
    "rolewicz_function",
    "rolewicz_derivative",
    "ramp_distance",
    "primitive_oracle",
]


def _domain(t):
    t = as_fraction(t)
    if not 0 <= t <= 1:
        raise InvalidInputError(f"t={t} outside [0, 1]")
    return t


def rolewicz_f(t, p=0.5) -> StepFn:
    """``chi_[0,t]`` as a step function in ``L_p``."""
    return StepFn.indicator(0, _domain(t), StepLp(p))


def rolewicz_increment(t, h, p=0.5) -> float:
    """``||f(t + h) - f(t)||_p``, computed from the step functions."""
    t = _domain(t)
    s = _domain(t + as_fraction(h))
    return norm(rolewicz_f(s, p) - rolewicz_f(t, p))


def rolewicz_quotient(t, h, p=0.5) -> float:
    """Quasi-norm of the difference quotient ``(f(t + h) - f(t)) / h``."""
    h = as_fraction(h)
    if h == 0:
        raise InvalidInputError("difference quotient needs h != 0")
    return norm(float(1 / h) * (rolewicz_f(_domain(t) + h, p) - rolewicz_f(t, p)))


def rolewicz_function(p=0.5) -> VectorFn:
    return VectorFn(lambda t: rolewicz_f(t, p), StepLp(p), name=f"rolewicz(p={p})")


def rolewicz_derivative(p=0.5) -> VectorFn:
    """The pointwise derivative of :func:`rolewicz_function`, identically zero."""
    z = zero(StepLp(p))
    return VectorFn(lambda t: z, StepLp(p), name=f"rolewicz'(p={p})")


def _signed_pow_antideriv(u: float, p: float) -> float:
    # antiderivative of |u|^p
    return math.copysign(abs(u) ** (p + 1) / (p + 1), u)


def ramp_distance(F: StepFn, x, p=None) -> float:
    """Quasi-norm of ``F - (x - s)^+``, integrated in closed form piece by piece.

    ``(x - s)^+`` is the exact primitive ``int_0^x chi_[0,t] dt`` evaluated at
    ``s``.  On a piece with constant value ``c`` and ``s < x`` the integrand is
    ``|s - (x - c)|^p``, which has an elementary antiderivative.
    """
    p = F.space.p if p is None else p
    x = _domain(x)
    total = 0.0
    for (lo, hi), c in zip(zip(F.breakpoints, F.breakpoints[1:]), F.values):
        split = min(max(x, lo), hi)
        if split > lo:
            z0 = float(x) - c
            total += _signed_pow_antideriv(float(split) - z0, p) - _signed_pow_antideriv(float(lo) - z0, p)
        if hi > split:
            total += abs(c) ** p * float(hi - split)
    return total ** (1.0 / p)


def primitive_oracle(x, s) -> float:
    """``(x - s)^+``."""
    return max(float(x) - float(s), 0.0)

