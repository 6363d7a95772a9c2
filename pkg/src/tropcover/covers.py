"""Weighted oriented graphs underlying tropical covers of the line.

Inner vertices are the 3-valent branch vertices, identified with their slot
(position index) in the left-to-right event sequence; leaves live at the two
infinite ends and are implicit. An edge records its tail slot (None = the
left infinity), head slot (None = the right infinity), weight, and whether
it is contractible (created as the joining edge of a pair event).

Everything here is immutable and hashable; isomorphism of covers preserves
every slot, so the canonical key is just the sorted edge-record multiset.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from .errors import DomainError, InvariantError
from .partitions import Partition, normalize


@dataclass(frozen=True)
class Edge:
    tail: Optional[int]
    head: Optional[int]
    weight: int
    contractible: bool = False

    def __post_init__(self):
        if self.weight < 1:
            raise DomainError(f"edge weight must be positive, got {self.weight}")
        if self.tail is not None and self.head is not None and self.tail >= self.head:
            raise DomainError("inner edges must point to a strictly later slot")

    @property
    def is_in_end(self) -> bool:
        return self.tail is None and self.head is not None

    @property
    def is_out_end(self) -> bool:
        return self.head is None and self.tail is not None

    @property
    def is_through(self) -> bool:
        return self.tail is None and self.head is None

    @property
    def is_inner(self) -> bool:
        return self.tail is not None and self.head is not None


@dataclass(frozen=True)
class Cover:
    """A tropical cover: slots 0..n_slots-1, pair events owning the slot
    pairs (q, q+1) for q in pair_slots, and the weighted edge multiset."""

    n_slots: int
    pair_slots: tuple[int, ...]
    edges: tuple[Edge, ...]

    def __post_init__(self):
        for q in self.pair_slots:
            if not 0 <= q <= self.n_slots - 2:
                raise DomainError(f"pair slot {q} out of range")
        slots_used = set()
        for q in self.pair_slots:
            if q in slots_used or q + 1 in slots_used:
                raise DomainError("pair slots overlap")
            slots_used.update((q, q + 1))
        for e in self.edges:
            for v in (e.tail, e.head):
                if v is not None and not 0 <= v < self.n_slots:
                    raise DomainError(f"edge endpoint {v} out of range")

    # -- basic views ---------------------------------------------------

    def in_edges(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if e.head == v]

    def out_edges(self, v: int) -> list[int]:
        return [i for i, e in enumerate(self.edges) if e.tail == v]

    def lam(self) -> Partition:
        return normalize([e.weight for e in self.edges if e.tail is None])

    def mu(self) -> Partition:
        return normalize([e.weight for e in self.edges if e.head is None])

    @property
    def s(self) -> int:
        return len(self.pair_slots)

    @property
    def t(self) -> int:
        return self.n_slots - 2 * len(self.pair_slots)

    def point_slots(self) -> list[int]:
        owned = set()
        for q in self.pair_slots:
            owned.update((q, q + 1))
        return [v for v in range(self.n_slots) if v not in owned]

    def events(self) -> list[tuple[str, tuple[int, ...]]]:
        """Events in base order: ('PAIR', (q, q+1)) or ('POINT', (q,))."""
        out = []
        pair_starts = set(self.pair_slots)
        skip = set(q + 1 for q in self.pair_slots)
        for v in range(self.n_slots):
            if v in skip:
                continue
            if v in pair_starts:
                out.append(("PAIR", (v, v + 1)))
            else:
                out.append(("POINT", (v,)))
        return out

    def contractible_ids(self) -> frozenset[int]:
        return frozenset(i for i, e in enumerate(self.edges) if e.contractible)


# -- invariants ---------------------------------------------------------


def check_balancing(cover: Cover) -> bool:
    for v in range(cover.n_slots):
        ins = cover.in_edges(v)
        outs = cover.out_edges(v)
        if len(ins) + len(outs) != 3 or not ins or not outs:
            return False
        if sum(cover.edges[i].weight for i in ins) != sum(cover.edges[i].weight for i in outs):
            return False
    return True


def _component_roots(cover: Cover) -> int:
    nodes: dict[object, object] = {}

    def find(x):
        while nodes[x] != x:
            nodes[x] = nodes[nodes[x]]
            x = nodes[x]
        return x

    def union(x, y):
        nodes.setdefault(x, x)
        nodes.setdefault(y, y)
        rx, ry = find(x), find(y)
        if rx != ry:
            nodes[rx] = ry

    for v in range(cover.n_slots):
        nodes.setdefault(("v", v), ("v", v))
    for i, e in enumerate(cover.edges):
        a = ("v", e.tail) if e.tail is not None else ("leaf", i, "t")
        b = ("v", e.head) if e.head is not None else ("leaf", i, "h")
        union(a, b)
    return sum(1 for x in nodes if find(x) == x)


def is_connected(cover: Cover) -> bool:
    if not cover.edges:
        return False
    return _component_roots(cover) == 1


def genus(cover: Cover) -> int:
    """First Betti number, E - V + 1 over all vertices including leaves."""
    if not is_connected(cover):
        raise DomainError("genus is defined for connected covers only")
    leaves = sum((e.tail is None) + (e.head is None) for e in cover.edges)
    return len(cover.edges) - (cover.n_slots + leaves) + 1


def degree(cover: Cover) -> int:
    """Total weight over any cross-section; asserts all sections agree."""
    sections = []
    for p in range(cover.n_slots + 1):
        total = 0
        for e in cover.edges:
            tail_pos = -1 if e.tail is None else e.tail
            head_pos = cover.n_slots if e.head is None else e.head
            if tail_pos < p <= head_pos:
                total += e.weight
        sections.append(total)
    if len(set(sections)) != 1:
        raise InvariantError(f"cross-sections disagree: {sections}")
    return sections[0]


def validate_cover(cover: Cover, g: int | None = None, lam=None, mu=None) -> None:
    if not check_balancing(cover):
        raise InvariantError("balancing fails")
    if not is_connected(cover):
        raise InvariantError("cover is disconnected")
    d = degree(cover)
    b1 = genus(cover)
    if g is not None and b1 != g:
        raise InvariantError(f"genus {b1} != expected {g}")
    if lam is not None and cover.lam() != normalize(lam):
        raise InvariantError(f"λ mismatch: {cover.lam()} != {normalize(lam)}")
    if mu is not None and cover.mu() != normalize(mu):
        raise InvariantError(f"μ mismatch: {cover.mu()} != {normalize(mu)}")
    if lam is not None and sum(lam) != d:
        raise InvariantError("degree disagrees with λ")


# -- symmetric structures ------------------------------------------------


@dataclass(frozen=True, order=True)
class SymStructure:
    """A symmetric cycle (two parallel equal-weight inner edges) or a
    symmetric fork (two equal-weight ends at one vertex, same direction),
    or the nonsymmetric parallel pairs tracked alongside them."""

    kind: str  # "cycle" | "fork" | "ncycle"
    edge_ids: tuple[int, int]
    weight: int  # common weight for symmetric structures, else min weight
    vertices: tuple[int, ...]
    direction: str = ""  # forks: "in" | "out"


@dataclass(frozen=True)
class SymmetryReport:
    sym: frozenset[SymStructure]
    symc: frozenset[SymStructure]
    sym2: frozenset[SymStructure]
    sym3: frozenset[SymStructure]
    symc_c: frozenset[SymStructure]
    nsym_c: frozenset[SymStructure]
    e_c_set: frozenset[int]
    contractible: dict[int, int]  # edge id -> pair index

    def structure_edges(self, structures: Iterable[SymStructure]) -> set[int]:
        out: set[int] = set()
        for s in structures:
            out.update(s.edge_ids)
        return out


def classify_symmetric(cover: Cover, contractible: frozenset[int] | None = None) -> SymmetryReport:
    if contractible is None:
        contractible = cover.contractible_ids()
    pair_index = {}
    for i in sorted(contractible):
        e = cover.edges[i]
        for idx, q in enumerate(cover.pair_slots):
            if (e.tail, e.head) == (q, q + 1):
                pair_index[i] = idx
                break
        else:
            raise DomainError(f"edge {i} marked contractible but joins no pair")

    cycles: list[SymStructure] = []
    nonsym_parallel: list[SymStructure] = []
    by_span: dict[tuple[int, int], list[int]] = {}
    for i, e in enumerate(cover.edges):
        if e.is_inner:
            by_span.setdefault((e.tail, e.head), []).append(i)
    for (a, b), ids in by_span.items():
        if len(ids) < 2:
            continue
        if len(ids) > 2:
            raise InvariantError("more than two parallel edges at 3-valent vertices")
        i, j = sorted(ids)
        wi, wj = cover.edges[i].weight, cover.edges[j].weight
        if wi == wj:
            cycles.append(SymStructure("cycle", (i, j), wi, (a, b)))
        else:
            nonsym_parallel.append(SymStructure("ncycle", (i, j), min(wi, wj), (a, b)))

    forks: list[SymStructure] = []
    by_fork_key: dict[tuple[int, str, int], list[int]] = {}
    for i, e in enumerate(cover.edges):
        if e.is_in_end:
            by_fork_key.setdefault((e.head, "in", e.weight), []).append(i)
        elif e.is_out_end:
            by_fork_key.setdefault((e.tail, "out", e.weight), []).append(i)
    for (v, direction, w), ids in sorted(by_fork_key.items()):
        if len(ids) == 2:
            forks.append(SymStructure("fork", tuple(sorted(ids)), w, (v,), direction))
        elif len(ids) > 2:
            raise InvariantError("more than two equal ends at a 3-valent vertex")

    sym = frozenset(cycles + forks)
    symc = frozenset(cycles)
    symc_c = frozenset(
        c for c in cycles if all(i in contractible for i in c.edge_ids)
    )
    contact = set()
    for i in contractible:
        e = cover.edges[i]
        contact.update(x for x in (e.tail, e.head) if x is not None)
    non_contractible = [
        s for s in sym if not any(i in contractible for i in s.edge_ids)
    ]
    sym3 = frozenset(s for s in non_contractible if set(s.vertices) & contact)
    sym2 = frozenset(s for s in non_contractible if not set(s.vertices) & contact)
    nsym_c = frozenset(
        s
        for s in nonsym_parallel
        if all(i in contractible and cover.edges[i].weight % 2 == 0 for i in s.edge_ids)
    )
    e_c_set = frozenset(i for i in contractible if cover.edges[i].weight % 2 == 0)
    return SymmetryReport(sym, symc, sym2, sym3, symc_c, nsym_c, e_c_set, pair_index)


# -- canonical form and serialization ------------------------------------


def canonical_key(cover: Cover):
    n = cover.n_slots
    recs = sorted(
        (
            -1 if e.tail is None else e.tail,
            n if e.head is None else e.head,
            e.weight,
            e.contractible,
        )
        for e in cover.edges
    )
    return (n, cover.pair_slots, tuple(recs))


def is_resolving(cover: Cover) -> bool:
    """True iff every pair event matches one of the catalogued local
    pictures and every first-row flag pair is a symmetric fork or sits in a
    symmetric cycle. The picture catalog lives in the enumeration module."""
    from .enumeration import match_pair_picture

    for q in cover.pair_slots:
        if match_pair_picture(cover, q) is None:
            return False
    return True


def to_json_obj(cover: Cover) -> dict:
    vertices = list(range(cover.n_slots))
    edges = []
    ends = []
    for e in cover.edges:
        if e.is_inner:
            edges.append([e.tail, e.head, e.weight])
        elif e.is_in_end:
            ends.append([e.head, "in", e.weight])
        elif e.is_out_end:
            ends.append([e.tail, "out", e.weight])
        else:
            ends.append([None, "in", e.weight])
            ends.append([None, "out", e.weight])
    pairs = [[q, q + 1] for q in cover.pair_slots]
    return {"vertices": vertices, "edges": sorted(edges), "ends": sorted(ends, key=str), "pairs": pairs}


def from_json_obj(obj: dict) -> Cover:
    n = len(obj["vertices"])
    pair_slots = tuple(sorted(int(p[0]) for p in obj["pairs"]))
    pair_spans = {(q, q + 1) for q in pair_slots}
    edges: list[Edge] = []
    for t, h, w in obj["edges"]:
        edges.append(Edge(t, h, w, contractible=(t, h) in pair_spans))
    through_in: list[int] = []
    through_out: list[int] = []
    for v, direction, w in obj["ends"]:
        if v is None:
            (through_in if direction == "in" else through_out).append(w)
        elif direction == "in":
            edges.append(Edge(None, v, w))
        else:
            edges.append(Edge(v, None, w))
    if sorted(through_in) != sorted(through_out):
        raise DomainError("unpaired through-edge records")
    for w in through_in:
        edges.append(Edge(None, None, w))
    return Cover(n, pair_slots, tuple(sorted(edges, key=lambda e: (
        -1 if e.tail is None else e.tail, n if e.head is None else e.head, e.weight))))


def to_dot(cover: Cover) -> str:
    lines = ["digraph cover {", "  rankdir=LR;"]
    for v in range(cover.n_slots):
        shape = "box" if any(v in (q, q + 1) for q in cover.pair_slots) else "circle"
        lines.append(f'  v{v} [label="{v}", shape={shape}];')
    leaf = 0
    for i, e in enumerate(cover.edges):
        a = f"v{e.tail}" if e.tail is not None else f"l{(leaf := leaf + 1)}"
        if e.tail is None:
            lines.append(f"  {a} [shape=point];")
        b = f"v{e.head}" if e.head is not None else f"l{(leaf := leaf + 1)}"
        if e.head is None:
            lines.append(f"  {b} [shape=point];")
        style = ", style=dashed" if e.contractible else ""
        lines.append(f'  {a} -> {b} [label="{e.weight}"{style}];')
    lines.append("}")
    return "\n".join(lines)
