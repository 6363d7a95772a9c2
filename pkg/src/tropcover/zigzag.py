"""Zigzag recognition and zigzag numbers.

A cover is a generalized zigzag cover when a connected subgraph S
containing all contractible edges (and no other even edges) leaves only
caterpillar-shaped tails behind: an even trunk chain of weight 2w
carrying optional odd symmetric cycles of weight w, finished by a bare
leaf or an odd symmetric fork (w, w). Tail shapes are exactly the ones
whose even edges stay in singleton colour components with a dotting
flip at every junction, which is what lets each event sign along a tail
be chosen freely.

The subgraph S is forced up to the degenerate bare-vertex case: odd
edges outside symmetric structures can never sit inside a tail, Sym2
structures can never sit inside S, and contractible edges must be in S.
So recognition builds the one candidate edge set and validates it,
falling back to single-vertex subgraphs when no edge qualifies.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .covers import Cover, classify_symmetric
from .enumeration import (
    distribution_from_tuple,
    enumerate_covers,
    match_pair_picture,
    trivial_distribution,
)
from .errors import DomainError, InvariantError
from .partitions import is_excluded_pair, normalize, riemann_hurwitz_ok

ODD = "ODD"
EVEN = "EVEN"

TAIL_END = "end"
TAIL_FORK = "fork"


@dataclass(frozen=True)
class Tail:
    """One component of the cover minus S.

    `weight` is the half-weight w: trunk edges weigh 2w, cycle halves and
    fork ends weigh w. `cycles` counts the symmetric cycles threaded on
    the trunk. Direction is "in" when the tail flows towards S."""

    kind: str
    weight: int
    cycles: int
    direction: str
    attach_vertex: int
    edge_ids: tuple[int, ...]


@dataclass(frozen=True)
class ZigzagWitness:
    subgraph_s: tuple[int, ...]
    s_vertices: tuple[int, ...]
    tails: tuple[Tail, ...]
    parity: str


def multiplicity_parity(cover: Cover) -> str:
    """Parity of the signed multiplicity, common to every effective
    colouring. Dotted cycles contribute their weights, and the dottable
    cycles are the non-contractible symmetric ones, so the product is
    odd exactly when all of those weights are odd. A cover where the
    choice of colouring could flip the parity (an even cycle that is
    dottable but not forced) has no well-defined answer and raises."""
    report = classify_symmetric(cover)
    forced_even = any(st.weight % 2 == 0 for st in report.symc & report.sym3)
    optional_even = any(
        st.weight % 2 == 0
        for st in report.sym2
        if st.kind == "cycle"
    )
    if optional_even and not forced_even:
        raise InvariantError("multiplicity parity depends on the colouring")
    return EVEN if forced_even else ODD


def _forced_s_edges(cover: Cover) -> set[int]:
    report = classify_symmetric(cover)
    sym2_edges = set()
    for st in report.sym2:
        sym2_edges.update(st.edge_ids)
    contractible = cover.contractible_ids()
    s_edges = set()
    for i, e in enumerate(cover.edges):
        if i in contractible:
            s_edges.add(i)
        elif e.weight % 2 == 1 and i not in sym2_edges:
            s_edges.add(i)
    return s_edges


def _edge_vertices(cover: Cover, edge_id: int) -> tuple[int, ...]:
    e = cover.edges[edge_id]
    return tuple(v for v in (e.tail, e.head) if v is not None)


def _connected(cover: Cover, edge_ids: set[int]) -> bool:
    verts: dict[int, int] = {}

    def find(x):
        while verts[x] != x:
            verts[x] = verts[verts[x]]
            x = verts[x]
        return x

    roots = set()
    for i in edge_ids:
        vs = _edge_vertices(cover, i)
        for v in vs:
            verts.setdefault(v, v)
        for a, b in zip(vs, vs[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                verts[ra] = rb
    # an edge with a single finite endpoint is joined through that vertex
    for i in edge_ids:
        vs = _edge_vertices(cover, i)
        if vs:
            roots.add(find(vs[0]))
    return len(roots) <= 1


def _tail_components(
    cover: Cover, s_edges: set[int], s_vertices: set[int]
) -> list[list[int]]:
    """Components of the cover minus S: non-S edges glued at shared
    vertices outside S. Tails meeting S at the same vertex stay apart."""
    rest = [i for i in range(len(cover.edges)) if i not in s_edges]
    parent = {i: i for i in rest}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_vertex: dict[int, list[int]] = {}
    for i in rest:
        for v in _edge_vertices(cover, i):
            if v not in s_vertices:
                by_vertex.setdefault(v, []).append(i)
    for ids in by_vertex.values():
        for a, b in zip(ids, ids[1:]):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[ra] = rb
    comps: dict[int, list[int]] = {}
    for i in rest:
        comps.setdefault(find(i), []).append(i)
    return [sorted(c) for c in comps.values()]


def _parse_tail(
    cover: Cover, comp: list[int], s_vertices: set[int]
) -> Optional[Tail]:
    touches = [
        (i, v)
        for i in comp
        for v in _edge_vertices(cover, i)
        if v in s_vertices
    ]
    if len(touches) != 1:
        return None
    attach_id, attach_vertex = touches[0]
    trunk = cover.edges[attach_id]
    if trunk.weight % 2:
        return None
    w = trunk.weight // 2
    direction = "in" if trunk.head == attach_vertex else "out"
    seen = {attach_id}
    cycles = 0
    prev_vertex = attach_vertex
    current = attach_id
    while True:
        e = cover.edges[current]
        ends = (e.tail, e.head)
        far = ends[0] if ends[1] == prev_vertex else ends[1]
        if far is None:
            kind = TAIL_END
            break
        others = [
            i
            for i in comp
            if i not in seen and far in _edge_vertices(cover, i)
        ]
        if len(others) != 2:
            return None
        e1, e2 = (cover.edges[i] for i in others)
        if e1.weight != w or e2.weight != w:
            return None
        if e1.is_in_end or e1.is_out_end:
            # fork terminal: two ends of weight w on the same side. Only
            # odd forks qualify: dotting is what frees a fork vertex's
            # sign from its trunk, and that flip exists for odd forks
            # only, so an even fork would lock two event signs together
            # and the cover could not realize every signed splitting.
            if w % 2 == 0:
                return None
            if not (e2.is_in_end or e2.is_out_end):
                return None
            if (e1.tail is None) != (e2.tail is None):
                return None
            seen.update(others)
            kind = TAIL_FORK
            break
        # symmetric cycle of odd weight, then the next trunk edge
        if w % 2 == 0:
            return None
        span1 = (e1.tail, e1.head)
        span2 = (e2.tail, e2.head)
        if span1 != span2:
            return None
        cycles += 1
        seen.update(others)
        far2 = span1[0] if span1[1] == far else span1[1]
        nxt = [
            i
            for i in comp
            if i not in seen and far2 in _edge_vertices(cover, i)
        ]
        if len(nxt) != 1:
            return None
        if cover.edges[nxt[0]].weight != 2 * w:
            return None
        seen.add(nxt[0])
        prev_vertex = far2
        current = nxt[0]
    if seen != set(comp):
        return None
    return Tail(
        kind=kind,
        weight=w,
        cycles=cycles,
        direction=direction,
        attach_vertex=attach_vertex,
        edge_ids=tuple(sorted(seen)),
    )


def _witness_for(
    cover: Cover, s_edges: set[int], s_vertices: set[int]
) -> Optional[ZigzagWitness]:
    contractible = cover.contractible_ids()
    if not contractible <= s_edges:
        return None
    for i in s_edges:
        e = cover.edges[i]
        if e.weight % 2 == 0 and i not in contractible:
            return None
    if not s_vertices:
        return None
    if s_edges and not _connected(cover, s_edges):
        return None
    if not s_edges and len(s_vertices) != 1:
        return None
    tails = []
    for comp in _tail_components(cover, s_edges, s_vertices):
        tail = _parse_tail(cover, comp, s_vertices)
        if tail is None:
            return None
        tails.append(tail)
    parity = multiplicity_parity(cover)
    return ZigzagWitness(
        subgraph_s=tuple(sorted(s_edges)),
        s_vertices=tuple(sorted(s_vertices)),
        tails=tuple(sorted(tails, key=lambda t: t.edge_ids)),
        parity=parity,
    )


def is_generalized_zigzag(cover: Cover) -> Optional[ZigzagWitness]:
    """Witness for the zigzag condition, or None.

    The candidate S is forced: contractible edges must be inside, even
    non-contractible edges and Sym2 structures must be outside, and odd
    edges outside Sym2 cannot be tail material, leaving no choice. When
    that set is empty the subgraph degenerates to one inner vertex, and
    each vertex is tried."""
    s_edges = _forced_s_edges(cover)
    if s_edges:
        s_vertices = {v for i in s_edges for v in _edge_vertices(cover, i)}
        return _witness_for(cover, s_edges, s_vertices)
    n_inner = max(
        (v + 1 for e in cover.edges for v in (e.tail, e.head) if v is not None),
        default=0,
    )
    for v in range(n_inner):
        witness = _witness_for(cover, set(), {v})
        if witness is not None:
            return witness
    return None


def zigzag_number(g: int, lam, mu, events) -> int:
    """Weighted count of zigzag classes for one event arrangement: each
    class contributes 2 when its multiplicity is even and 1 when odd.
    The signs of a splitting never enter, so the value is shared by all
    splittings of the arrangement."""
    lam = normalize(lam)
    mu = normalize(mu)
    dist = distribution_from_tuple(events)
    if not riemann_hurwitz_ok(g, lam, mu, dist.s, dist.t):
        raise DomainError("event arrangement violates the degree-genus constraint")
    if dist.s + dist.t == 0 or is_excluded_pair(lam, mu):
        raise DomainError("input outside the standing assumptions")
    total = 0
    for cover in enumerate_covers(g, lam, mu, dist):
        witness = is_generalized_zigzag(cover)
        if witness is not None:
            total += 1 if witness.parity == ODD else 2
    return total


@dataclass(frozen=True)
class ProperMixWitness:
    """Certificate that a cover is properly mixed.

    `characteristic_edge` is the index of the odd bridge whose removal
    separates the pair-event side from the point-event side; `v1_prime`
    and `v1` are the slots of the leading pair and `v2` the final slot,
    the two endpoints of the bridge sitting at v1 and v2."""

    characteristic_edge: int
    v1: int
    v1_prime: int
    v2: int


def is_properly_mixed(cover: Cover) -> Optional[ProperMixWitness]:
    """Witness that the cover is properly mixed, or None.

    Requires the trivial ordering (every pair before every point) with
    at least one of each. The leading pair must resolve as the generic
    odd/even/odd picture fed by two equal-weight odd ends, its second
    vertex must emit a single odd edge straight to the last slot, that
    edge must be the only one joining the pair side to the point side,
    the last vertex must absorb exactly two odd edges, and the bridge
    must lie inside the subgraph S of a zigzag witness."""
    n = cover.n_slots
    s = len(cover.pair_slots)
    t = n - 2 * s
    if s < 1 or t < 1:
        return None
    if cover.pair_slots != tuple(range(0, 2 * s, 2)):
        return None

    out_v1 = cover.out_edges(1)
    if len(out_v1) != 1:
        return None
    ec = out_v1[0]
    bridge = cover.edges[ec]
    if bridge.head != n - 1 or bridge.weight % 2 == 0:
        return None

    for i, e in enumerate(cover.edges):
        if i == ec or e.tail is None or e.head is None:
            continue
        if e.tail < 2 * s <= e.head:
            return None

    if match_pair_picture(cover, 0) != "xii":
        return None
    feed = [cover.edges[i] for i in cover.in_edges(0)]
    side = [cover.edges[i] for i in cover.in_edges(1) if not cover.edges[i].contractible]
    if len(feed) != 1 or len(side) != 1:
        return None
    if feed[0].tail is not None or side[0].tail is not None:
        return None
    if feed[0].weight != side[0].weight:
        return None

    in_v2 = [cover.edges[i] for i in cover.in_edges(n - 1)]
    if len(in_v2) != 2 or any(e.weight % 2 == 0 for e in in_v2):
        return None

    witness = is_generalized_zigzag(cover)
    if witness is None or ec not in witness.subgraph_s:
        return None
    return ProperMixWitness(characteristic_edge=ec, v1=1, v1_prime=0, v2=n - 1)


def proper_zigzag_number(g: int, lam, mu, s: int, t: int) -> int:
    """Number of properly mixed classes over the trivial ordering.

    Classes are counted without the parity weight used by
    zigzag_number. Zero when either event kind is absent, since a
    properly mixed cover needs a pair side and a point side."""
    lam = normalize(lam)
    mu = normalize(mu)
    if not riemann_hurwitz_ok(g, lam, mu, s, t):
        raise DomainError("event arrangement violates the degree-genus constraint")
    if s + t == 0 or is_excluded_pair(lam, mu):
        raise DomainError("input outside the standing assumptions")
    if s == 0 or t == 0:
        return 0
    total = 0
    for cover in enumerate_covers(g, lam, mu, trivial_distribution(s, t)):
        if is_properly_mixed(cover) is not None:
            total += 1
    return total
