"""Integer partitions and the small amount of arithmetic the rest of the
package needs from them: tail decompositions, padding with ones, the
Riemann-Hurwitz slot count, and the excluded-pair test.

Partitions are plain tuples of positive ints, weakly decreasing. Helpers
accept any iterable of positive ints and normalize.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Iterable, Iterator


Partition = tuple[int, ...]


def normalize(parts: Iterable[int]) -> Partition:
    p = tuple(sorted((int(x) for x in parts), reverse=True))
    if any(x <= 0 for x in p):
        raise ValueError(f"partition entries must be positive, got {p}")
    return p


def weight(p: Iterable[int]) -> int:
    return sum(p)


def length(p: Iterable[int]) -> int:
    return len(tuple(p))


def aut_order(p: Iterable[int]) -> int:
    """Order of the permutation group preserving the multiset of parts."""
    p = normalize(p)
    out = 1
    run = 1
    for a, b in zip(p, p[1:]):
        run = run + 1 if a == b else 1
        if a == b:
            out *= run
    # the incremental product above multiplies 2,3,...,mult for each run
    return out


def partitions_of(d: int, max_part: int | None = None) -> Iterator[Partition]:
    """All partitions of d, parts weakly decreasing."""
    if d < 0:
        return
    if d == 0:
        yield ()
        return
    top = d if max_part is None else min(d, max_part)
    for first in range(top, 0, -1):
        for rest in partitions_of(d - first, first):
            yield (first,) + rest


@dataclass(frozen=True)
class TailDecomposition:
    """Split of a partition by value multiplicity and parity.

    Each value with multiplicity m contributes floor(m/2) copies to the
    doubled block (oo for odd values, ee for even) and m mod 2 copies to
    the simple block (o / e). The original partition is the multiset
    union of oo twice, ee twice, o and e.
    """

    oo: Partition
    ee: Partition
    o: Partition
    e: Partition

    def reassemble(self) -> Partition:
        return normalize(self.oo + self.oo + self.ee + self.ee + self.o + self.e)


def tail_decompose(p: Iterable[int]) -> TailDecomposition:
    p = normalize(p)
    counts: dict[int, int] = {}
    for v in p:
        counts[v] = counts.get(v, 0) + 1
    oo: list[int] = []
    ee: list[int] = []
    o: list[int] = []
    e: list[int] = []
    for v, m in counts.items():
        (oo if v % 2 else ee).extend([v] * (m // 2))
        if m % 2:
            (o if v % 2 else e).append(v)
    return TailDecomposition(normalize(oo), normalize(ee), normalize(o), normalize(e))


def extend_with_ones(p: Iterable[int], k: int) -> Partition:
    if k < 0:
        raise ValueError("cannot extend by a negative number of ones")
    return normalize(tuple(p) + (1,) * k)


def riemann_hurwitz_ok(g: int, lam: Iterable[int], mu: Iterable[int], s: int, t: int) -> bool:
    """True iff (g, λ, μ, s, t) can be the type of a cover: equal weights,
    non-negative counters, and 2s + t = l(λ) + l(μ) + 2g − 2."""
    lam, mu = normalize(lam), normalize(mu)
    if g < 0 or s < 0 or t < 0:
        return False
    if weight(lam) != weight(mu):
        return False
    return 2 * s + t == len(lam) + len(mu) + 2 * g - 2


def is_excluded_pair(lam: Iterable[int], mu: Iterable[int]) -> bool:
    """The standing assumption bans {λ, μ} ⊆ {(2k), (k,k)}: both partitions
    of an even d, each either the single row (d) or the split (d/2, d/2)."""
    lam, mu = normalize(lam), normalize(mu)
    d = weight(lam)
    if weight(mu) != d or d % 2:
        return False
    shapes = {(d,), (d // 2, d // 2)}
    return lam in shapes and mu in shapes


def factorial_of(n: int) -> int:
    return factorial(n)
