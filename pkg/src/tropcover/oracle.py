"""Brute-force factorization oracle for complex double Hurwitz numbers with
triple ramification.

The number of degree-d covers with ramification λ over one end, μ over the
other, and an ordered list of intermediate branch points that are either
triple (one length-3 cycle) or simple (one transposition) equals the number
of tuples

    (σ0, α1, ..., α_{s+t}, σ∞),   σ0 of type λ, σ∞ of type μ,
    αi of the prescribed intermediate type, σ0·α1···α_{s+t}·σ∞ = id,
    joint action transitive,

divided by d!, each cover class being counted with weight 1/|Aut|.

The search is a dynamic program over states (partial product, orbit
partition of the subgroup generated so far). σ0 ranges over a single class
representative, and the result is scaled by the class size; conjugating a
whole tuple is a bijection between the fibers over different σ0, so this is
exact. A restricted variant confines every factor to a given subset of the
symmetric group; Burnside's lemma over simultaneous conjugation then yields
the unweighted class count used by the normalization reconciliation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .errors import DomainError, ResourceError
from .partitions import Partition, normalize, weight

TRIPLE = "TRIPLE"
SIMPLE = "SIMPLE"

DEGREE_BOUND_DEFAULT = 7

Perm = tuple[int, ...]


def identity(d: int) -> Perm:
    return tuple(range(d))


def compose(p: Perm, q: Perm) -> Perm:
    """Apply p first, then q."""
    return tuple(q[p[i]] for i in range(len(p)))


def inverse(p: Perm) -> Perm:
    out = [0] * len(p)
    for i, j in enumerate(p):
        out[j] = i
    return tuple(out)


def cycle_type(p: Perm) -> Partition:
    seen = [False] * len(p)
    lengths = []
    for i in range(len(p)):
        if seen[i]:
            continue
        n, j = 0, i
        while not seen[j]:
            seen[j] = True
            j = p[j]
            n += 1
        lengths.append(n)
    return normalize(lengths)


def orbit_labels(p: Perm) -> tuple[int, ...]:
    """Cycle partition of p as a min-element labeling of {0..d-1}."""
    labels = list(range(len(p)))
    seen = [False] * len(p)
    for i in range(len(p)):
        if seen[i]:
            continue
        cyc, j = [], i
        while not seen[j]:
            seen[j] = True
            cyc.append(j)
            j = p[j]
        m = min(cyc)
        for x in cyc:
            labels[x] = m
    return tuple(labels)


def join_labels(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    """Finest common coarsening of two partitions, min-element labels."""
    parent = list(range(len(a)))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(x: int, y: int) -> None:
        rx, ry = find(x), find(y)
        if rx != ry:
            if rx > ry:
                rx, ry = ry, rx
            parent[ry] = rx

    for i in range(len(a)):
        union(i, a[i])
        union(i, b[i])
    return tuple(find(i) for i in range(len(a)))


@lru_cache(maxsize=None)
def perms_of_type(d: int, parts: Partition) -> tuple[Perm, ...]:
    if weight(parts) != d:
        return ()
    return tuple(p for p in itertools.permutations(range(d)) if cycle_type(p) == parts)


def intermediate_type(event: str, d: int) -> Partition:
    if event == TRIPLE:
        if d < 3:
            return ()  # no permutations of this type exist; count is 0
        return normalize((3,) + (1,) * (d - 3))
    if event == SIMPLE:
        if d < 2:
            return ()
        return normalize((2,) + (1,) * (d - 2))
    raise DomainError(f"unknown intermediate branch type {event!r}")


@dataclass(frozen=True)
class BranchSpec:
    """Ordered intermediate branch data: s triples and t simples, the order
    they sit in along the base, and how many of the leading events belong to
    the negative half of a signed splitting (bookkeeping only here)."""

    s: int
    t: int
    order: tuple[str, ...] = field(default=())
    split_index: int = 0

    def __post_init__(self):
        order = self.order or (TRIPLE,) * self.s + (SIMPLE,) * self.t
        object.__setattr__(self, "order", tuple(order))
        if len(self.order) != self.s + self.t:
            raise DomainError("branch order length disagrees with s + t")
        if self.order.count(TRIPLE) != self.s or self.order.count(SIMPLE) != self.t:
            raise DomainError("branch order content disagrees with s / t")
        if not 0 <= self.split_index <= self.s + self.t:
            raise DomainError("split index out of range")


def count_labeled_factorizations(
    lam, mu, spec: BranchSpec, allowed: frozenset[Perm] | None = None,
    degree_bound: int = DEGREE_BOUND_DEFAULT,
) -> int:
    """Number of transitive factorization tuples; see the module docstring.

    With `allowed` set, every tuple entry (including σ0 and the implied σ∞)
    is required to lie in that subset, and no class-representative shortcut
    is taken.
    """
    lam, mu = normalize(lam), normalize(mu)
    d = weight(lam)
    if weight(mu) != d:
        raise DomainError("λ and μ must have equal weight")
    if d > degree_bound:
        raise ResourceError(f"degree {d} exceeds bound {degree_bound}")
    if d == 0:
        return 0

    sigma0_pool = perms_of_type(d, lam)
    if allowed is not None:
        sigma0_pool = tuple(p for p in sigma0_pool if p in allowed)
    if not sigma0_pool:
        return 0

    if allowed is None:
        starts = [sigma0_pool[0]]
        scale = len(sigma0_pool)
    else:
        starts = list(sigma0_pool)
        scale = 1

    # state: (partial product, orbit labels of the generated subgroup)
    states: dict[tuple[Perm, tuple[int, ...]], int] = {}
    for s0 in starts:
        key = (s0, orbit_labels(s0))
        states[key] = states.get(key, 0) + 1

    for event in spec.order:
        cls = perms_of_type(d, intermediate_type(event, d))
        if allowed is not None:
            cls = tuple(p for p in cls if p in allowed)
        if not cls:
            return 0
        nxt: dict[tuple[Perm, tuple[int, ...]], int] = {}
        for (prod, labels), n in states.items():
            for alpha in cls:
                key = (compose(prod, alpha), join_labels(labels, orbit_labels(alpha)))
                nxt[key] = nxt.get(key, 0) + n
        states = nxt

    full = tuple([0] * d)
    total = 0
    for (prod, labels), n in states.items():
        if labels != full:
            continue
        sigma_inf = inverse(prod)
        if cycle_type(sigma_inf) != mu:
            continue
        if allowed is not None and sigma_inf not in allowed:
            continue
        total += n
    return total * scale


def hurwitz_complex(
    g: int, lam, mu, s: int, t: int, degree_bound: int = DEGREE_BOUND_DEFAULT
) -> Fraction:
    """Automorphism-weighted count of degree-|λ| covers: tuples / d!."""
    from .partitions import riemann_hurwitz_ok

    lam, mu = normalize(lam), normalize(mu)
    if not riemann_hurwitz_ok(g, lam, mu, s, t):
        raise DomainError(f"no covers: 2s+t != l(λ)+l(μ)+2g-2 for {(g, lam, mu, s, t)}")
    d = weight(lam)
    count = count_labeled_factorizations(lam, mu, BranchSpec(s, t), degree_bound=degree_bound)
    return Fraction(count, factorial(d))


def centralizer(c: Perm) -> frozenset[Perm]:
    d = len(c)
    return frozenset(p for p in itertools.permutations(range(d)) if compose(p, c) == compose(c, p))


def class_count_factorizations(lam, mu, spec: BranchSpec, degree_bound: int = 5) -> int:
    """Number of cover isomorphism classes (tuples up to simultaneous
    conjugation, unweighted). Burnside over the diagonal conjugation action;
    each term is the restricted tuple count inside one centralizer. Small
    inputs only: this exists to measure automorphism-convention gaps."""
    lam, mu = normalize(lam), normalize(mu)
    d = weight(lam)
    if d > degree_bound:
        raise ResourceError(f"class counting bounded to degree {degree_bound}, got {d}")
    total = 0
    by_type: dict[Partition, Perm] = {}
    type_sizes: dict[Partition, int] = {}
    for c in itertools.permutations(range(d)):
        ct = cycle_type(c)
        by_type.setdefault(ct, c)
        type_sizes[ct] = type_sizes.get(ct, 0) + 1
    for ct, rep in by_type.items():
        fixed = count_labeled_factorizations(
            lam, mu, spec, allowed=centralizer(rep), degree_bound=degree_bound
        )
        total += type_sizes[ct] * fixed
    q, r = divmod(total, factorial(d))
    if r:
        raise AssertionError("Burnside sum not divisible by d!; counting bug")
    return q
