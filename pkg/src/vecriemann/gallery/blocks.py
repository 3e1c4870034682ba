"""Almost-disjoint blocks in ``l_1`` and ``l_1(X)`` and their separation bound.

A block sequence ``z^(1..p)`` with cut indices ``0 = n_0 <= ... <= n_p``
satisfies

(a) ``||z^(i)|| >= beta / 2``,
(b) ``sum_{j >= n_i} ||z^(i)_j|| < eps 2^-i``,
(c) ``sum_{j <= n_{i-1}} ||z^(i)_j|| < eps 2^-i``,

and then ``||sum_i z^(i)|| >= p beta / 2 - 4 eps``.  The chain behind the
bound restricts each block to its window ``(n_{i-1}, n_i]``; the restrictions
are disjointly supported, so their norms add up.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from typing import Optional

from ..spaces import NestedL1, SeqLp, SeqVec, Space, norm

__all__ = ["BlockSeq", "BlockReport", "blocks_build", "blocks_verify", "separation_bound"]


@dataclass(frozen=True)
class BlockSeq:
    blocks: tuple
    cuts: tuple
    beta: float
    eps: float

    def __post_init__(self):
        if len(self.cuts) != len(self.blocks) + 1 or self.cuts[0] != 0:
            raise ValueError("need cuts n_0 = 0 <= n_1 <= ... <= n_p, one more than blocks")
        if any(c2 < c1 for c1, c2 in zip(self.cuts, self.cuts[1:])):
            raise ValueError("cut indices must be nondecreasing")


@dataclass
class BlockReport:
    ok: bool
    lower_bound: float
    actual: float
    failed: Optional[str] = None
    chain: list = field(default_factory=list)


def separation_bound(p: int, beta: float, eps: float) -> float:
    return p * beta / 2 - 4 * eps


def _entry_norm(x) -> float:
    return norm(x) if isinstance(x, SeqVec) else abs(x)


def _restrict(z: SeqVec, lo: int, hi: int) -> SeqVec:
    """Entries with ``lo < j <= hi``."""
    return SeqVec(tuple((j, x) for j, x in z.entries if lo < j <= hi), z.space)


def blocks_build(p: int, beta: float, eps: float, tail_mass: float = 0.0, *, margin: float = 0.0,
                 width: int = 2, inner: Optional[Space] = None, rng: Optional[random.Random] = None) -> BlockSeq:
    """Synthesize ``p`` blocks meeting (a), (b), (c).

    Block ``i`` carries mass ``beta / 2 + margin`` spread over ``width``
    indices just after ``n_{i-1}``; index ``n_i`` itself stays free so (b) can
    hold.  ``tail_mass`` goes once before the window (for ``i > 1``) and once
    at or after ``n_i``.  With ``rng`` the tail positions and all signs are
    random.  With ``inner`` the entries are vectors of ``l_1(inner)``.
    """
    if p < 1 or width < 1:
        raise ValueError("need p >= 1 blocks of width >= 1")
    if not beta > 0 or not eps > 0:
        raise ValueError("beta and eps must be positive")
    if not 0 <= tail_mass < eps * 2.0 ** -p:
        raise ValueError(f"tail_mass must lie in [0, eps 2^-p) = [0, {eps * 2.0 ** -p})")
    space = SeqLp(1) if inner is None else NestedL1(inner)
    cuts = [0]
    for _ in range(p):
        cuts.append(cuts[-1] + width + 1)
    last = cuts[-1] + width + 1

    def sign():
        return rng.choice((-1.0, 1.0)) if rng else 1.0

    def entry(mass):
        if inner is None:
            return sign() * mass
        # two equal coordinates so the inner norm is not trivially a single entry
        if isinstance(inner, SeqLp) and inner.p != float("inf"):
            c = mass / 2 ** (1 / inner.p)
            return SeqVec.of({1: sign() * c, 2: sign() * c}, inner)
        return SeqVec.of({1: sign() * mass}, inner)

    blocks = []
    main = (beta / 2 + margin) / width
    for i in range(1, p + 1):
        lo, hi = cuts[i - 1], cuts[i]
        acc = {lo + 1 + r: entry(main) for r in range(width)}
        if tail_mass > 0:
            if i > 1:
                acc_idx = rng.randint(1, lo) if rng else lo
                acc[acc_idx] = entry(tail_mass)
            t_idx = rng.randint(hi, last) if rng else hi
            acc[t_idx] = entry(tail_mass)
        blocks.append(SeqVec.of(acc, space))
    return BlockSeq(tuple(blocks), tuple(cuts), float(beta), float(eps))


def blocks_verify(bs: BlockSeq) -> BlockReport:
    """Check (a), (b), (c) and the separation bound; report the first failure.

    ``chain`` holds per block ``(i, ||z - y||, 2 eps 2^-i, ||y||, beta/2 - 2 eps 2^-i)``
    with ``y`` the restriction to ``(n_{i-1}, n_i]``.
    """
    p, beta, eps = len(bs.blocks), bs.beta, bs.eps
    bound = separation_bound(p, beta, eps)
    total = bs.blocks[0]
    for z in bs.blocks[1:]:
        total = total + z
    actual = norm(total)
    failed = None
    chain = []
    for i, z in enumerate(bs.blocks, start=1):
        lo, hi = bs.cuts[i - 1], bs.cuts[i]
        cap = eps * 2.0 ** -i
        head = sum(_entry_norm(x) for j, x in z.entries if j <= lo)
        tail = sum(_entry_norm(x) for j, x in z.entries if j >= hi)
        y = _restrict(z, lo, hi)
        chain.append((i, norm(z - y), 2 * cap, norm(y), beta / 2 - 2 * cap))
        if failed is None:
            if not norm(z) >= beta / 2:
                failed = f"(a) block {i}: norm {norm(z)!r} < beta/2"
            elif not tail < cap:
                failed = f"(b) block {i}: tail {tail!r} >= eps 2^-{i}"
            elif not head < cap:
                failed = f"(c) block {i}: head {head!r} >= eps 2^-{i}"
    if failed is None and not actual >= bound:
        failed = f"separation: {actual!r} < {bound!r}"
    return BlockReport(failed is None, bound, actual, failed, chain)
