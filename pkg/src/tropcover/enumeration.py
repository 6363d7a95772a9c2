"""Slot-by-slot enumeration of covers for a given event distribution.

Covers are grown left to right. The frontier holds the open edges: weight,
creating slot (-1 for an edge entering from the left infinity), an
obligation flag for flag pairs that still owe a symmetric closure, and a
connected-component label. Point events merge two open edges or split one;
pair events expand into one of the catalogued local pictures.

Two constraints are not visible in a single picture and are enforced by
the move engine. A pair vertex that merges an equal-weight pair may only
do so when the pair is already symmetric (two left ends, or two edges out
of one vertex). A pair vertex that emits an equal-weight pair leaves an
obligation: the two edges must both survive as ends or be consumed
together at one later vertex. The declarative counterpart of these rules
lives in match_pair_picture, and reference_enumerate cross-checks the two.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence, Union

from .covers import (
    Cover,
    Edge,
    canonical_key,
    classify_symmetric,
    is_resolving,
    validate_cover,
)
from .errors import DomainError, ResourceError, UnsupportedOperationError
from .partitions import normalize, riemann_hurwitz_ok

EVENT_PAIR = "PAIR"
EVENT_POINT = "POINT"

_EVENT_ALIASES = {
    "PAIR": EVENT_PAIR,
    "TRIPLE": EVENT_PAIR,
    "3": EVENT_PAIR,
    "POINT": EVENT_POINT,
    "SIMPLE": EVENT_POINT,
    "2": EVENT_POINT,
}


@dataclass(frozen=True)
class Distribution:
    """Left-to-right event types: each PAIR owns two adjacent slots."""

    events: tuple[str, ...]

    def __post_init__(self):
        for e in self.events:
            if e not in (EVENT_PAIR, EVENT_POINT):
                raise DomainError(f"unknown event type {e!r}")

    @property
    def s(self) -> int:
        return sum(1 for e in self.events if e == EVENT_PAIR)

    @property
    def t(self) -> int:
        return sum(1 for e in self.events if e == EVENT_POINT)

    @property
    def n_slots(self) -> int:
        return 2 * self.s + self.t

    def pair_slots(self) -> tuple[int, ...]:
        out, cursor = [], 0
        for e in self.events:
            if e == EVENT_PAIR:
                out.append(cursor)
                cursor += 2
            else:
                cursor += 1
        return tuple(out)


def trivial_distribution(s: int, t: int) -> Distribution:
    if s < 0 or t < 0:
        raise DomainError("event counts must be non-negative")
    return Distribution((EVENT_PAIR,) * s + (EVENT_POINT,) * t)


def distribution_from_tuple(events) -> Distribution:
    if isinstance(events, Distribution):
        return events
    toks = list(events) if not isinstance(events, str) else list(events)
    normed = []
    for tok in toks:
        key = str(tok).strip().upper()
        if key not in _EVENT_ALIASES:
            raise DomainError(f"unknown event token {tok!r}")
        normed.append(_EVENT_ALIASES[key])
    return Distribution(tuple(normed))


# -- picture catalog ------------------------------------------------------

@dataclass(frozen=True)
class PictureRow:
    """One local picture for a pair event. Parities pin the named weights
    (0 even, 1 odd); weights not listed are free."""

    pid: str
    family: str  # flagmerge | flagsplit | generic | cycle
    parities: tuple[tuple[str, int], ...]


PICTURES: tuple[PictureRow, ...] = (
    PictureRow("i", "flagmerge", (("y", 0),)),
    PictureRow("ii", "flagmerge", (("y", 1),)),
    PictureRow("iii", "flagsplit", (("a", 0),)),
    PictureRow("iv", "flagsplit", (("a", 1),)),
    PictureRow("v", "generic", (("a", 0), ("c", 0), ("y", 0))),
    PictureRow("vi", "generic", (("a", 1), ("c", 1), ("y", 0))),
    PictureRow("vii", "generic", (("a", 1), ("c", 1), ("y", 1))),
    PictureRow("viii", "generic", (("a", 0), ("c", 0), ("y", 1))),
    PictureRow("ix", "generic", (("a", 0), ("c", 1), ("y", 0))),
    PictureRow("x", "generic", (("a", 1), ("c", 0), ("y", 0))),
    PictureRow("xi", "generic", (("a", 0), ("c", 1), ("y", 1))),
    PictureRow("xii", "generic", (("a", 1), ("c", 0), ("y", 1))),
    PictureRow("xiii", "cycle", (("w", 1),)),
    PictureRow("xiv", "cycle", (("w", 0),)),
)

_GENERIC_ID = {
    tuple(dict(row.parities)[k] for k in "acy"): row.pid
    for row in PICTURES
    if row.family == "generic"
}


def match_pair_picture(cover: Cover, q: int):
    """Classify the pair event at slots (q, q+1) of a finished cover.
    Returns the picture id, or None if the local shape is not catalogued
    or a flag pair fails to be symmetric."""
    if q not in cover.pair_slots:
        raise DomainError(f"slot {q} does not start a pair")
    v1, v2 = q, q + 1
    in1, out1 = cover.in_edges(v1), cover.out_edges(v1)
    in2, out2 = cover.in_edges(v2), cover.out_edges(v2)
    bridge = [i for i in out1 if cover.edges[i].head == v2]
    if not bridge:
        return None

    if len(bridge) == 2:
        # both joining edges parallel: a genus cycle between the two slots
        if len(in1) != 1 or len(out1) != 2 or len(in2) != 2 or len(out2) != 1:
            return None
        w1, w2 = sorted(cover.edges[i].weight for i in bridge)
        if w1 % 2 == 1 and w2 % 2 == 1:
            return None
        if w1 % 2 != w2 % 2:
            return "xiii"
        return "xiv"

    c_edge = cover.edges[bridge[0]]
    shape1 = (len(in1), len(out1))
    shape2 = (len(in2), len(out2))

    if shape1 == (2, 1):
        if shape2 != (2, 1):
            return None
        ka, kb = (cover.edges[i] for i in in1)
        if ka.weight != kb.weight:
            return None
        # the merged pair must already be symmetric
        if not ((ka.tail is None and kb.tail is None) or (ka.tail is not None and ka.tail == kb.tail)):
            return None
        y = next(cover.edges[i] for i in in2 if i != bridge[0])
        return "i" if y.weight % 2 == 0 else "ii"

    if shape1 == (1, 2):
        a_edge = next(cover.edges[i] for i in out1 if i != bridge[0])
        if shape2 == (1, 2):
            ka, kb = (cover.edges[i] for i in out2)
            if ka.weight != kb.weight:
                return None
            # twin obligation: both ends, or co-consumed at one vertex
            if not ((ka.head is None and kb.head is None) or (ka.head is not None and ka.head == kb.head)):
                return None
            return "iii" if a_edge.weight % 2 == 0 else "iv"
        if shape2 == (2, 1):
            y = next(cover.edges[i] for i in in2 if i != bridge[0])
            if y.tail == v1:
                return None
            key = (a_edge.weight % 2, c_edge.weight % 2, y.weight % 2)
            return _GENERIC_ID[key]
    return None


# -- the move engine ------------------------------------------------------

# frontier item: (weight, source slot or -1, obligated, component label)


def _canonical_items(items: Iterable[tuple[int, int, bool, int]]):
    members: dict[int, list] = {}
    for w, s, o, c in items:
        members.setdefault(c, []).append((w, s, o))
    profiles = {c: tuple(sorted(v)) for c, v in members.items()}
    order = sorted(profiles, key=lambda c: (profiles[c], c))
    label = {c: i for i, c in enumerate(order)}
    return tuple(sorted((w, s, o, label[c]) for (w, s, o, c) in items))


class _CompJoin:
    """Tracks component merges within one move; joining a component with
    itself closes a cycle and raises the genus by one."""

    def __init__(self):
        self._map: dict[int, int] = {}

    def resolve(self, c: int) -> int:
        while c in self._map:
            c = self._map[c]
        return c

    def join(self, c1: int, c2: int) -> int:
        r1, r2 = self.resolve(c1), self.resolve(c2)
        if r1 == r2:
            return 1
        self._map[max(r1, r2)] = min(r1, r2)
        return 0

    def apply(self, items: Iterable[tuple[int, int, bool, int]]) -> list:
        return [(w, s, o, self.resolve(c)) for (w, s, o, c) in items]


def _twin_ok(consumed: Sequence[tuple[int, int, bool, int]]) -> bool:
    for item in consumed:
        if item[2]:
            twins = sum(1 for x in consumed if x[2] and x[1] == item[1])
            if twins != 2:
                return False
    return True


def _point_moves(state, slot: int, free: bool):
    """Merge two open edges or split one at a 1-vertex event. With
    free=True obligations are ignored (reference engine)."""
    items, edges, b1 = state
    out = []
    for i, j in combinations(range(len(items)), 2):
        a, b = items[i], items[j]
        if not free and not _twin_ok((a, b)):
            continue
        join = _CompJoin()
        db = join.join(a[3], b[3])
        rest = join.apply(items[k] for k in range(len(items)) if k not in (i, j))
        new_items = rest + [(a[0] + b[0], slot, False, join.resolve(a[3]))]
        new_edges = edges + ((a[1], slot, a[0], False), (b[1], slot, b[0], False))
        out.append((new_items, new_edges, b1 + db))
    for i, a in enumerate(items):
        if a[0] < 2 or (not free and a[2]):
            continue
        rest = [items[k] for k in range(len(items)) if k != i]
        for cut in range(1, a[0] // 2 + 1):
            new_items = rest + [(cut, slot, False, a[3]), (a[0] - cut, slot, False, a[3])]
            new_edges = edges + ((a[1], slot, a[0], False),)
            out.append((new_items, new_edges, b1))
    return out


def _pair_moves(state, q: int):
    """All catalogued expansions of a pair event at slots (q, q+1)."""
    items, edges, b1 = state
    out = []

    # flagmerge: symmetric pair in at q, joined weight crosses to q+1
    for i, j in combinations(range(len(items)), 2):
        a, b = items[i], items[j]
        if a[0] != b[0]:
            continue
        if not (a[1] == b[1] == -1 or (a[1] >= 0 and a[1] == b[1])):
            continue
        for y_idx, y in enumerate(items):
            if y_idx in (i, j) or y[2]:
                continue
            join = _CompJoin()
            d1 = join.join(a[3], b[3])
            d2 = join.join(a[3], y[3])
            merged = join.apply(items[k] for k in range(len(items)) if k not in (i, j, y_idx))
            new_items = merged + [(2 * a[0] + y[0], q + 1, False, join.resolve(a[3]))]
            new_edges = edges + (
                (a[1], q, a[0], False),
                (b[1], q, b[0], False),
                (q, q + 1, 2 * a[0], True),
                (y[1], q + 1, y[0], False),
            )
            out.append((new_items, new_edges, b1 + d1 + d2))

    for i, a in enumerate(items):
        if a[2]:
            continue
        w = a[0]
        rest = [items[k] for k in range(len(items)) if k != i]

        # flagsplit: even part crosses and splits into an obligated twin pair
        for c in range(2, w, 2):
            k = c // 2
            new_items = rest + [
                (w - c, q, False, a[3]),
                (k, q + 1, True, a[3]),
                (k, q + 1, True, a[3]),
            ]
            new_edges = edges + ((a[1], q, w, False), (q, q + 1, c, True))
            out.append((new_items, new_edges, b1))

        # generic: one part dangles, the crossing part absorbs an older edge
        for c in range(1, w):
            for y_idx, y in enumerate(items):
                if y_idx == i or y[2]:
                    continue
                join = _CompJoin()
                db = join.join(a[3], y[3])
                merged = join.apply(items[k] for k in range(len(items)) if k not in (i, y_idx))
                comp = join.resolve(a[3])
                new_items = merged + [
                    (w - c, q, False, comp),
                    (c + y[0], q + 1, False, comp),
                ]
                new_edges = edges + (
                    (a[1], q, w, False),
                    (q, q + 1, c, True),
                    (y[1], q + 1, y[0], False),
                )
                out.append((new_items, new_edges, b1 + db))

        # cycle: both parts cross in parallel and rejoin at q+1
        if w % 2 == 1 and w >= 3:
            halves = [(o1, w - o1) for o1 in range(1, w - 1, 2)]
        elif w % 2 == 0 and w >= 4:
            halves = [(e1, w - e1) for e1 in range(2, w // 2 + 1, 2)]
        else:
            halves = []
        for h1, h2 in halves:
            new_items = rest + [(w, q + 1, False, a[3])]
            new_edges = edges + (
                (a[1], q, w, False),
                (q, q + 1, h1, True),
                (q, q + 1, h2, True),
            )
            out.append((new_items, new_edges, b1 + 1))

    return out


def _free_pair_moves(state, q: int):
    """Reference engine: a pair is just two adjacent 1-vertex events."""
    out = []
    for mid in _point_moves(state, q, free=True):
        out.extend(_point_moves(mid, q + 1, free=True))
    return out


def _state_key(state):
    items, edges, b1 = state
    return (_canonical_items(items), tuple(sorted(edges)), b1)


def _survivors_to_cover(state, dist: Distribution, mark_pairs: bool) -> Cover:
    items, edge_recs, _ = state
    n = dist.n_slots
    pair_spans = {(p, p + 1) for p in dist.pair_slots()}
    edges = []
    for t, h, w, contr in edge_recs:
        if mark_pairs:
            contr = (t, h) in pair_spans
        edges.append(Edge(None if t < 0 else t, h, w, contr))
    for w, src, _o, _c in items:
        edges.append(Edge(None if src < 0 else src, None, w))
    edges.sort(key=lambda e: (-1 if e.tail is None else e.tail,
                              n if e.head is None else e.head,
                              e.weight, e.contractible))
    return Cover(n, dist.pair_slots(), tuple(edges))


def _enumerate(g, lam, mu, dist: Distribution, free: bool, state_limit: int):
    lam = normalize(lam)
    mu = normalize(mu)
    mu_sorted = sorted(mu)
    if g < 0:
        raise DomainError("genus must be non-negative")

    suffix = []
    p_rest = s_rest = 0
    for e in reversed(dist.events):
        if e == EVENT_POINT:
            p_rest += 1
        else:
            s_rest += 1
        suffix.append((p_rest, s_rest))
    suffix.reverse()
    suffix.append((0, 0))

    def viable(state, ev_index):
        items, _edges, b1 = state
        p, s = suffix[ev_index]
        if b1 > g or b1 + p + 2 * s < g:
            return False
        diff = len(items) - len(mu)
        if abs(diff) > p + 2 * s or (diff + p) % 2:
            return False
        return True

    init_items = tuple((w, -1, False, idx) for idx, w in enumerate(lam))
    states = {_state_key((list(init_items), (), 0))}
    states = {k for k in states if viable(k, 0)}

    slot = 0
    for ev_index, ev in enumerate(dist.events):
        nxt = set()
        for items, edges, b1 in states:
            state = (list(items), edges, b1)
            if ev == EVENT_POINT:
                moves = _point_moves(state, slot, free)
            elif free:
                moves = _free_pair_moves(state, slot)
            else:
                moves = _pair_moves(state, slot)
            for m in moves:
                key = _state_key(m)
                if viable(key, ev_index + 1):
                    nxt.add(key)
        states = nxt
        if len(states) > state_limit:
            raise ResourceError(f"state frontier exceeded {state_limit}")
        slot += 2 if ev == EVENT_PAIR else 1

    found: dict = {}
    for items, edges, b1 in states:
        if b1 != g:
            continue
        if sorted(w for w, *_ in items) != mu_sorted:
            continue
        if len({c for *_, c in items}) != 1:
            continue
        cover = _survivors_to_cover((items, edges, b1), dist, mark_pairs=free)
        if free and not _joined_pairs(cover):
            continue
        validate_cover(cover, g, lam, mu)
        found[canonical_key(cover)] = cover
    return tuple(found[k] for k in sorted(found))


def _joined_pairs(cover: Cover) -> bool:
    spans = {(e.tail, e.head) for e in cover.edges}
    return all((q, q + 1) in spans for q in cover.pair_slots)


def enumerate_covers(g: int, lam, mu, events=(), *, state_limit: int = 2_000_000):
    """All isomorphism classes of covers of the given type whose pair
    events match the picture catalog, as a sorted tuple."""
    dist = distribution_from_tuple(events)
    return _enumerate(g, lam, mu, dist, free=False, state_limit=state_limit)


def reference_enumerate(g: int, lam, mu, events=(), *, state_limit: int = 2_000_000):
    """Independent generator: grow covers with unconstrained 3-valent
    moves, then keep those whose pairs pass match_pair_picture. Slow;
    used to cross-check enumerate_covers on small inputs."""
    dist = distribution_from_tuple(events)
    raw = _enumerate(g, lam, mu, dist, free=True, state_limit=state_limit)
    return tuple(c for c in raw if is_resolving(c))


def cover_multiplicity(cover: Cover) -> Fraction:
    """Weight of a 3-valent cover in the branched-count correspondence:
    the product of inner edge weights over 2 to the number of symmetric
    structures (each contributes an order-2 symmetry)."""
    prod = 1
    for e in cover.edges:
        if e.is_inner:
            prod *= e.weight
    report = classify_symmetric(cover)
    return Fraction(prod, 2 ** len(report.sym))


def complex_tropical_value(g: int, lam, mu, events=()) -> Fraction:
    """Branched-cover count through the tropical correspondence, for
    distributions without pair events."""
    dist = distribution_from_tuple(events)
    if dist.s:
        raise UnsupportedOperationError(
            "the correspondence weight is only implemented for 1-vertex events"
        )
    lam = normalize(lam)
    mu = normalize(mu)
    if not riemann_hurwitz_ok(g, lam, mu, 0, dist.t):
        raise DomainError("event count violates the degree-genus constraint")
    total = Fraction(0)
    for cover in enumerate_covers(g, lam, mu, dist):
        total += cover_multiplicity(cover)
    return total
