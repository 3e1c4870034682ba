"""Fat Cantor set with measure 1/2.

At level ``k`` a centred interval of length ``1 / (2^(k-1) 3^k)`` is removed
from each of the ``2^(k-1)`` intervals kept after level ``k - 1``.  All
endpoints through depth ``K`` are integers over the common denominator
``2^(K+1) 3^K``, so levels are stored as integer numerator arrays and the
whole construction stays exact.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

import numpy as np

__all__ = ["CantorLevels", "fat_cantor", "removed_length", "kept_length", "removed_measure_closed_form"]


def removed_length(k: int) -> Fraction:
    """Length of each interval removed at level ``k``."""
    return Fraction(1, 2 ** (k - 1) * 3 ** k)


def kept_length(k: int) -> Fraction:
    """Length of each of the ``2^k`` intervals kept after level ``k`` (k >= 0)."""
    return Fraction(1, 2 ** k) * (1 - sum(Fraction(1, 3 ** j) for j in range(1, k + 1)))


def removed_measure_closed_form(K: int) -> Fraction:
    return (1 - Fraction(1, 3 ** K)) / 2


@dataclass(frozen=True, eq=False)
class CantorLevels:
    depth: int
    denominator: int
    # removed[k-1] = (lefts, rights) of the 2^(k-1) intervals removed at level k
    removed: tuple
    # kept[k] = (lefts, rights) of the 2^k intervals kept after level k, k = 0..depth
    kept: tuple

    def _check_level(self, k, lo):
        if not lo <= k <= self.depth:
            raise ValueError(f"level {k} outside [{lo}, {self.depth}]")

    def removed_intervals(self, k: int) -> list:
        """Exact ``A_k^(i)``, ``i = 1..2^(k-1)``, left to right."""
        self._check_level(k, 1)
        D = self.denominator
        ls, rs = self.removed[k - 1]
        return [(Fraction(int(l), D), Fraction(int(r), D)) for l, r in zip(ls, rs)]

    def kept_intervals(self, k: int) -> list:
        """Exact intervals kept after level ``k``; ``k = 0`` gives ``[(0, 1)]``."""
        self._check_level(k, 0)
        D = self.denominator
        ls, rs = self.kept[k]
        return [(Fraction(int(l), D), Fraction(int(r), D)) for l, r in zip(ls, rs)]

    def removed_interval(self, k: int, i: int) -> tuple:
        self._check_level(k, 1)
        ls, rs = self.removed[k - 1]
        if not 1 <= i <= len(ls):
            raise ValueError(f"level {k} has {len(ls)} removed intervals, got index {i}")
        D = self.denominator
        return Fraction(int(ls[i - 1]), D), Fraction(int(rs[i - 1]), D)

    def midpoint(self, k: int, i: int) -> Fraction:
        """``c_k^(i)``, centre of ``A_k^(i)``."""
        l, r = self.removed_interval(k, i)
        return (l + r) / 2

    def removed_measure(self, K: int | None = None) -> Fraction:
        """Total length removed through level ``K`` (default: full depth), summed exactly."""
        K = self.depth if K is None else K
        total = sum(int((rs - ls).sum()) for ls, rs in self.removed[:K])
        return Fraction(total, self.denominator)

    def kept_measure(self, K: int | None = None) -> Fraction:
        K = self.depth if K is None else K
        ls, rs = self.kept[K]
        return Fraction(int((rs - ls).sum()), self.denominator)

    def check(self) -> None:
        """Verify the construction invariants exactly; raise ``AssertionError`` on failure."""
        D = self.denominator
        for k in range(1, self.depth + 1):
            ls, rs = self.removed[k - 1]
            assert len(ls) == 2 ** (k - 1)
            assert all(Fraction(int(w), D) == removed_length(k) for w in np.unique(rs - ls))
            kl, kr = self.kept[k]
            assert len(kl) == 2 ** k
            assert all(Fraction(int(w), D) == kept_length(k) for w in np.unique(kr - kl))
        lefts = np.concatenate([r[0] for r in self.removed] + [self.kept[self.depth][0]])
        rights = np.concatenate([r[1] for r in self.removed] + [self.kept[self.depth][1]])
        order = np.argsort(lefts, kind="stable")
        lefts, rights = lefts[order], rights[order]
        assert lefts[0] == 0 and rights[-1] == D
        # pairwise disjoint and gap-free: each interval ends where the next begins
        assert np.all(rights[:-1] == lefts[1:])
        assert np.all(rights > lefts)

    def csv_rows(self) -> list:
        """``(level, kind, left_num, left_den, right_num, right_den)`` rows, level by level."""
        rows = []
        for k in range(1, self.depth + 1):
            for kind, ivs in (("removed", self.removed_intervals(k)), ("kept", self.kept_intervals(k))):
                for l, r in ivs:
                    rows.append((k, kind, l.numerator, l.denominator, r.numerator, r.denominator))
        return rows

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["level", "kind", "left_num", "left_den", "right_num", "right_den"])
        w.writerows(self.csv_rows())
        return buf.getvalue()


def _numerator_dtype(D: int):
    return np.int64 if D < 2 ** 62 else object


@lru_cache(maxsize=8)
def fat_cantor(K: int = 20) -> CantorLevels:
    """Build levels ``1..K`` of the fat Cantor set."""
    if not isinstance(K, int) or K < 1:
        raise ValueError(f"depth must be a positive integer, got {K!r}")
    D = 2 ** (K + 1) * 3 ** K
    dt = _numerator_dtype(D)
    kept = [(np.array([0], dtype=dt), np.array([D], dtype=dt))]
    removed = []
    for k in range(1, K + 1):
        alpha = D // (2 ** (k - 1) * 3 ** k)
        L = int(kept_length(k - 1) * D)
        off = (L - alpha) // 2
        ls, _ = kept[-1]
        rl = ls + off
        rr = rl + alpha
        removed.append((rl, rr))
        nl = np.empty(2 * len(ls), dtype=dt)
        nr = np.empty(2 * len(ls), dtype=dt)
        nl[0::2], nr[0::2] = ls, rl
        nl[1::2], nr[1::2] = rr, ls + L
        kept.append((nl, nr))
    return CantorLevels(K, D, tuple(removed), tuple(kept))
