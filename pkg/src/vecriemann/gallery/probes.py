"""Weak-null probing of sequences against a finite battery of functionals."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from ..spaces import SeqLp, SeqVec, norm, pair

__all__ = ["weak_null_probe", "strong_star_seminorm", "geometric_battery_element", "kadets_pairing_profile"]


def weak_null_probe(vectors: Sequence[SeqVec], battery: Sequence[SeqVec]) -> tuple:
    """``(decay, floor)``: ``decay[n] = max_y |<y, x_n>|`` and ``floor = min_n ||x_n||``.

    Pairings tending to zero against every battery element while the floor
    stays away from zero is what a weakly null, norm-separated sequence (the
    unit vectors of ``c_0``) looks like at finite size.
    """
    if not vectors or not battery:
        raise ValueError("need at least one vector and one battery element")
    decay = [max(abs(pair(y, x)) for y in battery) for x in vectors]
    return decay, min(norm(x) for x in vectors)


def strong_star_seminorm(functional: SeqVec, B: Optional[Iterable[SeqVec]] = None) -> float:
    """``p_B(f) = sup_{x in B} |f(x)|``.

    ``B=None`` means the unit ball of the ``c_0`` model, where the sup is the
    ``l_1`` norm of ``f`` (attained at the finitely supported sign vector).
    """
    if B is None:
        return norm(SeqVec(functional.entries, SeqLp(1)))
    return max(abs(pair(functional, x)) for x in B)


def geometric_battery_element(n: int, ratio: float = 0.5, space=None) -> SeqVec:
    """``y_k = ratio^k`` for ``k <= n``.

    Lives in ``l_1`` by default (a functional on ``c_0``); pass ``SeqSup()`` to
    use it as a ``c_0`` point tested against ``l_1`` functionals.
    """
    return SeqVec.of({k: ratio ** k for k in range(1, n + 1)}, space or SeqLp(1))


def kadets_pairing_profile(levels: Iterable[int], battery: Sequence[SeqVec], f, points_for_level) -> list:
    """Per level ``k``: ``(k, max |<y, f(c)>|, min ||f(c)||_1, max ||f(c)||_1)`` over given points."""
    rows = []
    for k in levels:
        vals = [f(c) for c in points_for_level(k)]
        pairing = max(abs(pair(y, v)) for y in battery for v in vals)
        norms = [norm(v) for v in vals]
        rows.append((k, pairing, min(norms), max(norms)))
    return rows

