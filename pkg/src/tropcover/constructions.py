"""Hand-built cover families and the surgeries between them.

Everything in this module produces concrete Cover objects: gluing two
covers along a pair of odd ends, explicit families certifying that
certain zigzag and properly mixed counts are positive, and the
wall-crossing injection that turns a properly mixed cover over the
pairs-first ordering into a zigzag cover over any other ordering.

Builders assemble graphs slot by slot, so every function here ends by
running the full validity stack: balancing, genus, degree, and the
zigzag recognizer where the output is supposed to stay a zigzag cover.
A failed precondition raises DomainError; a construction that passes
its preconditions but produces an invalid cover raises InvariantError,
since that would mean the recipe itself is wrong.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

from .covers import (
    Cover,
    Edge,
    canonical_key,
    classify_symmetric,
    is_resolving,
    validate_cover,
)
from .enumeration import EVENT_PAIR, EVENT_POINT, distribution_from_tuple
from .errors import DomainError, InvariantError
from .partitions import normalize, tail_decompose
from .zigzag import is_generalized_zigzag, is_properly_mixed

EdgeSpec = tuple[Optional[int], Optional[int], int]


def _assemble(events: Sequence[str], edges: Iterable[EdgeSpec], *, g=None, lam=None, mu=None) -> Cover:
    """Build a validated Cover from event tokens and raw edge triples.

    Contractibility is not an input: an inner edge is contractible
    exactly when it spans the two slots of one pair event."""
    dist = distribution_from_tuple(events)
    n = dist.n_slots
    pair_slots = dist.pair_slots()
    spans = {(q, q + 1) for q in pair_slots}
    built = [
        Edge(tail, head, w, contractible=(tail, head) in spans)
        for tail, head, w in edges
    ]
    built.sort(
        key=lambda e: (
            -1 if e.tail is None else e.tail,
            n if e.head is None else e.head,
            e.weight,
            e.contractible,
        )
    )
    cover = Cover(n, pair_slots, tuple(built))
    validate_cover(cover, g, lam, mu)
    return cover


class _Builder:
    """Slot allocator for hand-built covers: call point() or pair() in
    left-to-right order, wire edges between the returned slots, then
    cover() to assemble and validate."""

    def __init__(self):
        self.events: list[str] = []
        self.edges: list[EdgeSpec] = []
        self._cursor = 0

    def point(self) -> int:
        self.events.append(EVENT_POINT)
        v = self._cursor
        self._cursor += 1
        return v

    def pair(self) -> tuple[int, int]:
        self.events.append(EVENT_PAIR)
        q = self._cursor
        self._cursor += 2
        return q, q + 1

    def edge(self, tail: Optional[int], head: Optional[int], weight: int) -> None:
        self.edges.append((tail, head, weight))

    def cover(self, *, g=None, lam=None, mu=None) -> Cover:
        return _assemble(self.events, self.edges, g=g, lam=lam, mu=mu)


def _event_tokens(cover: Cover) -> list[str]:
    return [kind for kind, _ in cover.events()]


def _require_zigzag(cover: Cover, label: str):
    witness = is_generalized_zigzag(cover)
    if witness is None:
        raise InvariantError(f"{label} is not a generalized zigzag cover")
    if not is_resolving(cover):
        raise InvariantError(f"{label} has an unresolvable pair event")
    return witness


# -- gluing ---------------------------------------------------------------


@dataclass(frozen=True)
class GlueSpec:
    """One gluing: the outgoing end `left_end` of `left` is welded to
    the incoming end `right_end` of `right`, both of the same odd
    weight, producing a single inner edge."""

    left: Cover
    left_end: int
    right: Cover
    right_end: int


def _check_glue_end(cover: Cover, edge_id: int, direction: str, side: str) -> None:
    if not 0 <= edge_id < len(cover.edges):
        raise DomainError(f"{side} end index out of range")
    e = cover.edges[edge_id]
    if direction == "out" and not e.is_out_end:
        raise DomainError(f"{side} end must be an outgoing end")
    if direction == "in" and not e.is_in_end:
        raise DomainError(f"{side} end must be an incoming end")
    witness = is_generalized_zigzag(cover)
    if witness is None:
        raise DomainError(f"{side} cover is not a generalized zigzag cover")
    if edge_id not in witness.subgraph_s:
        raise DomainError(f"{side} end lies outside the subgraph S")
    report = classify_symmetric(cover)
    for st in report.sym:
        if st.kind == "fork" and edge_id in st.edge_ids:
            raise DomainError(f"{side} end sits in a symmetric fork")


def glue(spec: GlueSpec) -> Cover:
    """Weld two zigzag covers along a shared odd end weight.

    The left cover keeps its slots; the right cover's slots shift past
    them, so the glued string edge always points left to right. Degrees
    add and the sum of the genera is preserved. The result is checked
    to be a zigzag cover again."""
    left, right = spec.left, spec.right
    wl = left.edges[spec.left_end].weight
    wr = right.edges[spec.right_end].weight
    if wl != wr:
        raise DomainError(f"glue weights differ: {wl} vs {wr}")
    if wl % 2 == 0:
        raise DomainError("glue weight must be odd")
    _check_glue_end(left, spec.left_end, "out", "left")
    _check_glue_end(right, spec.right_end, "in", "right")

    shift = left.n_slots
    edges: list[EdgeSpec] = []
    for i, e in enumerate(left.edges):
        if i != spec.left_end:
            edges.append((e.tail, e.head, e.weight))
    for i, e in enumerate(right.edges):
        if i != spec.right_end:
            tail = None if e.tail is None else e.tail + shift
            head = None if e.head is None else e.head + shift
            edges.append((tail, head, e.weight))
    edges.append((left.edges[spec.left_end].tail, right.edges[spec.right_end].head + shift, wl))

    tokens = _event_tokens(left) + _event_tokens(right)
    cover = _assemble(tokens, edges)
    _require_zigzag(cover, "glued cover")
    return cover


def find_glue_ends(cover: Cover, weight: int, direction: str) -> list[int]:
    """Edge indices of ends usable for gluing: given weight and
    direction, inside the subgraph S, not part of a symmetric fork."""
    if direction not in ("in", "out"):
        raise DomainError(f"direction must be 'in' or 'out', got {direction!r}")
    witness = is_generalized_zigzag(cover)
    if witness is None:
        raise DomainError("cover is not a generalized zigzag cover")
    s_set = set(witness.subgraph_s)
    report = classify_symmetric(cover)
    forked = set()
    for st in report.sym:
        if st.kind == "fork":
            forked.update(st.edge_ids)
    out = []
    for i, e in enumerate(cover.edges):
        wanted = e.is_out_end if direction == "out" else e.is_in_end
        if wanted and e.weight == weight and i in s_set and i not in forked:
            out.append(i)
    return out


def _glue_first(left: Cover, right: Cover, weight: int) -> Cover:
    lefts = find_glue_ends(left, weight, "out")
    rights = find_glue_ends(right, weight, "in")
    if not lefts or not rights:
        raise DomainError(f"no glueable end of weight {weight}")
    return glue(GlueSpec(left, lefts[0], right, rights[0]))


# -- the non-vanishing witness --------------------------------------------


def build_nonvanishing_cover(g: int, lam, mu) -> Cover:
    """One zigzag cover of type (g, λ, μ) over a pairs-only ordering.

    Exists whenever both partitions are free of unpaired even entries,
    both keep at least one unpaired odd entry, and the surplus of
    unpaired odd entries on either side is small enough to be absorbed
    by the doubled odd entries of the other. The shape is a chain of
    strings: unpaired odd entries enter one per string, doubled entries
    ride on fork tails at the two chain ends, and genus is added as
    contractible circles threaded on the first string."""
    lam = normalize(lam)
    mu = normalize(mu)
    if g < 0:
        raise DomainError("genus must be non-negative")
    if sum(lam) != sum(mu):
        raise DomainError("partition weights differ")
    dl = tail_decompose(lam)
    dm = tail_decompose(mu)
    if dl.e or dm.e:
        raise DomainError("unpaired even entries obstruct the string chain")
    if not dl.o or not dm.o:
        raise DomainError("each side needs an unpaired odd entry")
    a2 = len(dl.o) - len(dm.o)
    if abs(a2) >= 2 * min(len(dl.oo), len(dm.oo)):
        raise DomainError(
            "odd-entry surplus too large: |l(lam_o)-l(mu_o)| must stay below "
            "2*min(l(lam_oo), l(mu_oo))"
        )
    a = a2 // 2

    lam_oo, mu_oo = list(dl.oo), list(dm.oo)
    lam_string, mu_string = list(dl.o), list(dm.o)
    if a > 0:
        moved = mu_oo[-a:]
        mu_oo = mu_oo[:-a]
        mu_string += moved * 2
    elif a < 0:
        moved = lam_oo[a:]
        lam_oo = lam_oo[:a]
        lam_string += moved * 2
    lam_string.sort()
    mu_string.sort()
    k = len(lam_string)
    if k != len(mu_string):
        raise InvariantError("merged string lists must have equal length")

    lam_tails = sorted(lam_oo + list(dl.ee), reverse=True)
    mu_tails = sorted(mu_oo + list(dm.ee), reverse=True)

    b = _Builder()
    # first string: its odd source end, the lambda-side fork tails, then
    # the genus circles, all feeding the first chain vertex
    acc = lam_string[-1]
    prev: Optional[int] = None
    for w in lam_tails:
        u, att = b.pair()
        b.edge(None, u, w)
        b.edge(None, u, w)
        b.edge(u, att, 2 * w)
        b.edge(prev, att, acc)
        prev = att
        acc += 2 * w
    if g > 0 and (acc % 2 == 0 or acc < 3):
        raise InvariantError("circle host segment must be odd and at least 3")
    for _ in range(g):
        split, merge = b.pair()
        b.edge(prev, split, acc)
        b.edge(split, merge, 1)
        b.edge(split, merge, acc - 1)
        prev = merge
    for i in range(k - 1):
        vi, vnext = b.pair()
        b.edge(prev, vi, acc)
        b.edge(vi, None, mu_string[i])
        bridge = acc - mu_string[i]
        if bridge <= 0 or bridge % 2:
            raise InvariantError("chain bridge weight must be positive and even")
        b.edge(vi, vnext, bridge)
        b.edge(None, vnext, lam_string[k - 2 - i])
        prev = vnext
        acc = bridge + lam_string[k - 2 - i]
    for w in mu_tails:
        att, fork = b.pair()
        b.edge(prev, att, acc)
        b.edge(att, fork, 2 * w)
        b.edge(fork, None, w)
        b.edge(fork, None, w)
        prev = att
        acc -= 2 * w
    if acc != mu_string[-1]:
        raise InvariantError("final end weight disagrees with the merged list")
    b.edge(prev, None, acc)

    cover = b.cover(g=g, lam=lam, mu=mu)
    _require_zigzag(cover, "non-vanishing cover")
    return cover


# -- the permutation family ----------------------------------------------


def _block_sizes(m: int) -> list[int]:
    n = (m - 1) // 3
    first = {1: 4, 2: 5, 0: 6}[m % 3]
    return [first] + [4] * (n - 1)


def build_permutation_family(m: int) -> tuple[Cover, ...]:
    """All zigzag covers of type (0, (1^m), (1^m)) over m-1 pair events
    obtained by chaining staircase blocks in every possible order.

    Each block is a staircase of weight-3 streams between pair events;
    consecutive blocks (by label) are connected by one weight-1 edge
    whose direction depends on whether the later label sits before or
    after the earlier one, so each permutation of the blocks yields a
    distinct cover. The family has floor((m-1)/3)! members."""
    if m <= 3:
        raise DomainError("degree must exceed 3")
    sizes = _block_sizes(m)
    n = len(sizes)
    out = []
    for sigma in itertools.permutations(range(n)):
        out.append(_permutation_cover(sizes, sigma))
    return tuple(out)


def _permutation_cover(sizes: Sequence[int], sigma: Sequence[int]) -> Cover:
    n = len(sizes)
    pos = {label: p for p, label in enumerate(sigma)}
    # surgery plan: replaced[label] flags which designated ends of each
    # block give way to an inner connector
    eaten_e = {i: i > 0 and pos[i] > pos[i - 1] for i in range(n)}
    eaten_bar_e = {i: i < n - 1 and pos[i + 1] < pos[i] for i in range(n)}
    eaten_ep = {i: i > 0 and pos[i] < pos[i - 1] for i in range(n)}
    eaten_bar_ep = {i: i < n - 1 and pos[i + 1] > pos[i] for i in range(n)}

    b = _Builder()
    anchors: dict[int, dict[str, int]] = {}
    for label in sigma:
        size = sizes[label]
        u, a_v = b.pair()
        b.edge(None, u, 1)
        b.edge(None, u, 1)
        b.edge(u, a_v, 2)
        if not eaten_e[label]:
            b.edge(None, a_v, 1)
        stream_from = a_v
        first_p = last_q = None
        for z in range(size - 3):
            p, q = b.pair()
            if first_p is None:
                first_p = p
            last_q = q
            b.edge(stream_from, p, 3)
            if not (z == 0 and eaten_ep[label]):
                b.edge(p, None, 1)
            b.edge(p, q, 2)
            if not (z == size - 4 and eaten_bar_e[label]):
                b.edge(None, q, 1)
            stream_from = q
        y, z_v = b.pair()
        b.edge(stream_from, y, 3)
        if not eaten_bar_ep[label]:
            b.edge(y, None, 1)
        b.edge(y, z_v, 2)
        b.edge(z_v, None, 1)
        b.edge(z_v, None, 1)
        anchors[label] = {"a": a_v, "first_p": first_p, "last_q": last_q, "y": y}

    for i in range(n - 1):
        if pos[i + 1] > pos[i]:
            b.edge(anchors[i]["y"], anchors[i + 1]["a"], 1)
        else:
            b.edge(anchors[i + 1]["first_p"], anchors[i]["last_q"], 1)

    m = sum(sizes) - (n - 1)
    cover = b.cover(g=0, lam=(1,) * m, mu=(1,) * m)
    _require_zigzag(cover, "permutation-family cover")
    return cover


# -- snake families over points-only orderings ----------------------------


def _cycle_assignment(m: int, g: int, cycle_assignment) -> list[int]:
    if cycle_assignment is None:
        q, r = divmod(g, m)
        return [q + 1] * r + [q] * (m - r)
    cycles = list(cycle_assignment)
    if len(cycles) != m or any(c < 0 for c in cycles) or sum(cycles) != g:
        raise DomainError("cycle assignment must be m non-negative counts summing to g")
    return cycles


def _distinct_permutations(items: Sequence[int]):
    if not items:
        yield ()
        return
    counts = {}
    for x in items:
        counts[x] = counts.get(x, 0) + 1

    def rec(prefix, remaining, counts):
        if remaining == 0:
            yield tuple(prefix)
            return
        for x in sorted(counts):
            if counts[x]:
                counts[x] -= 1
                prefix.append(x)
                yield from rec(prefix, remaining - 1, counts)
                prefix.pop()
                counts[x] += 1

    yield from rec([], len(items), counts)


def _default_interleave(cycles: Sequence[int]) -> tuple[int, ...]:
    out: list[int] = []
    for i, c in enumerate(cycles):
        out.extend([i] * (2 * c))
    return tuple(out)


def _snake_cover(
    m: int,
    cycles: Sequence[int],
    orders,
    *,
    closed_top: bool,
) -> Cover:
    """Shared snake assembly. With closed_top=False the string starts at
    an incoming end and every left peak feeds two right peaks (the last
    one exiting), giving type (1^(2m+1)) on both sides. closed_top=True
    drops the incoming end and the last right peak: both extreme left
    peaks exit directly and the type is (1^(2m)) on both sides."""
    u_ord, interleave, l_ord, r_ord, w_ord = orders
    n_r = m if not closed_top else m - 1
    b = _Builder()
    u_slot = {}
    for tail in u_ord:
        u_slot[tail] = b.point()
        b.edge(None, u_slot[tail], 1)
        b.edge(None, u_slot[tail], 1)
    trunk_from = dict(u_slot)
    # each interleave entry places one circle vertex of its tail; the
    # odd occurrences open a circle, the even ones close it
    open_split: dict[int, Optional[int]] = dict.fromkeys(range(m))
    for tail in interleave:
        v = b.point()
        if open_split[tail] is None:
            b.edge(trunk_from[tail], v, 2)
            open_split[tail] = v
        else:
            b.edge(open_split[tail], v, 1)
            b.edge(open_split[tail], v, 1)
            trunk_from[tail] = v
            open_split[tail] = None
    l_slot = {}
    for i in l_ord:
        l_slot[i] = b.point()
        b.edge(trunk_from[i], l_slot[i], 2)
    r_slot = {}
    for j in r_ord:
        r_slot[j] = b.point()
    w_slot = {}
    for j in w_ord:
        w_slot[j] = b.point()

    if closed_top:
        b.edge(l_slot[0], None, 1)
        for i in range(m):
            if i > 0:
                b.edge(l_slot[i], r_slot[i - 1], 1)
            if i < m - 1:
                b.edge(l_slot[i], r_slot[i], 1)
        b.edge(l_slot[m - 1], None, 1)
    else:
        b.edge(None, r_slot[0], 1)
        for i in range(m):
            b.edge(l_slot[i], r_slot[i], 1)
            if i < m - 1:
                b.edge(l_slot[i], r_slot[i + 1], 1)
        b.edge(l_slot[m - 1], None, 1)
    for j in range(n_r):
        b.edge(r_slot[j], w_slot[j], 2)
        b.edge(w_slot[j], None, 1)
        b.edge(w_slot[j], None, 1)

    d = 2 * m + (0 if closed_top else 1)
    cover = b.cover(g=sum(cycles), lam=(1,) * d, mu=(1,) * d)
    _require_zigzag(cover, "snake cover")
    return cover


def _snake_default_orders(m: int, cycles, n_r: int):
    return (
        tuple(range(m)),
        _default_interleave(cycles),
        tuple(range(m)),
        tuple(range(n_r)),
        tuple(range(n_r)),
    )


def build_asymp2_cover(m: int, g: int, cycle_assignment=None) -> Cover:
    """The base snake of type (g, (1^(2m+1)), (1^(2m+1))) over 4m+2g
    point events: m inward fork tails carrying the genus circles, a
    weight-1 string zigzagging through m left and m right peaks, and m
    outward fork tails."""
    if m < 1:
        raise DomainError("need at least one inward tail")
    if g < 0:
        raise DomainError("genus must be non-negative")
    cycles = _cycle_assignment(m, g, cycle_assignment)
    orders = _snake_default_orders(m, cycles, m)
    return _snake_cover(m, cycles, orders, closed_top=False)


def build_asymp2_family(m: int, g: int, cycle_assignment=None) -> tuple[Cover, ...]:
    """Every slot ordering of the base snake: the four vertex bands
    permute freely and the cycle pairs of different tails interleave,
    giving (m!)^4 * (2g)! / prod (2c_i)! distinct covers."""
    if m < 1:
        raise DomainError("need at least one inward tail")
    if g < 0:
        raise DomainError("genus must be non-negative")
    cycles = _cycle_assignment(m, g, cycle_assignment)
    base = _default_interleave(cycles)
    out = []
    for u_ord in itertools.permutations(range(m)):
        for inter in _distinct_permutations(base):
            for l_ord in itertools.permutations(range(m)):
                for r_ord in itertools.permutations(range(m)):
                    for w_ord in itertools.permutations(range(m)):
                        orders = (u_ord, inter, l_ord, r_ord, w_ord)
                        out.append(_snake_cover(m, cycles, orders, closed_top=False))
    return tuple(out)


def build_even_ones_cover(m: int, g: int, cycle_assignment=None) -> Cover:
    """Snake of type (g, (1^(2m)), (1^(2m))) over 4m+2g-2 point events.

    Same skeleton as the base snake but with both string endpoints
    exiting as plain weight-1 ends, which is what a later gluing needs:
    those two ends sit on the string and in no symmetric fork."""
    if m < 2:
        raise DomainError("need at least two inward tails")
    if g < 0:
        raise DomainError("genus must be non-negative")
    cycles = _cycle_assignment(m, g, cycle_assignment)
    orders = _snake_default_orders(m, cycles, m - 1)
    return _snake_cover(m, cycles, orders, closed_top=True)


def build_even_ones_family(m: int, g: int, cycle_assignment=None) -> tuple[Cover, ...]:
    """Distinct slot orderings of the two-exit snake.

    Unlike the base snake, the two-exit string reads the same from
    either end, so reversing it while renaming the tails reproduces the
    cover; orderings are deduplicated by canonical key. When the cycle
    assignment is itself reversal-symmetric the family has exactly
    half of m!^2 (m-1)!^2 (2g)! / prod (2c_i)! members."""
    if m < 2:
        raise DomainError("need at least two inward tails")
    if g < 0:
        raise DomainError("genus must be non-negative")
    cycles = _cycle_assignment(m, g, cycle_assignment)
    base = _default_interleave(cycles)
    out: dict[tuple, Cover] = {}
    for u_ord in itertools.permutations(range(m)):
        for inter in _distinct_permutations(base):
            for l_ord in itertools.permutations(range(m)):
                for r_ord in itertools.permutations(range(m - 1)):
                    for w_ord in itertools.permutations(range(m - 1)):
                        orders = (u_ord, inter, l_ord, r_ord, w_ord)
                        cover = _snake_cover(m, cycles, orders, closed_top=True)
                        out.setdefault(canonical_key(cover), cover)
    return tuple(out.values())


# -- diagonal bridges ------------------------------------------------------


def build_bridge_out(v: int) -> Cover:
    """Type (0, (v), (1^v)) over (v-1)/2 pair events, v odd and at
    least 3: a descending diagonal that sheds an outward symmetric fork
    at every pair, ending in a weight-1 outgoing end."""
    if v < 3 or v % 2 == 0:
        raise DomainError("bridge weight must be odd and at least 3")
    b = _Builder()
    prev: Optional[int] = None
    acc = v
    for _ in range((v - 1) // 2):
        att, fork = b.pair()
        b.edge(prev, att, acc)
        b.edge(att, fork, 2)
        b.edge(fork, None, 1)
        b.edge(fork, None, 1)
        prev = att
        acc -= 2
    b.edge(prev, None, 1)
    cover = b.cover(g=0, lam=(v,), mu=(1,) * v)
    _require_zigzag(cover, "outward bridge")
    return cover


def build_bridge_in(v: int) -> Cover:
    """Mirror bridge of type (0, (1^v), (v)): the diagonal climbs by
    absorbing an inward symmetric fork at every pair event."""
    if v < 3 or v % 2 == 0:
        raise DomainError("bridge weight must be odd and at least 3")
    b = _Builder()
    prev: Optional[int] = None
    acc = 1
    for _ in range((v - 1) // 2):
        fork, att = b.pair()
        b.edge(None, fork, 1)
        b.edge(None, fork, 1)
        b.edge(fork, att, 2)
        b.edge(prev, att, acc)
        prev = att
        acc += 2
    b.edge(prev, None, acc)
    cover = b.cover(g=0, lam=(1,) * v, mu=(v,))
    _require_zigzag(cover, "inward bridge")
    return cover


# -- constants of the padded families --------------------------------------


def _padding_and_anchor(lam, mu) -> tuple[int, int, int]:
    """Shared bookkeeping for the ones-padded chain: returns (a, k1,
    anchor) where 2b is the surplus of unpaired odd entries, a = b + 1,
    k1 the number of padding ones per side, and anchor the odd weight
    along which the diagonal bridges attach (1 when no bridge fits)."""
    lam = normalize(lam)
    mu = normalize(mu)
    if sum(lam) != sum(mu):
        raise DomainError("partition weights differ")
    dl = tail_decompose(lam)
    dm = tail_decompose(mu)
    if dl.e or dm.e:
        raise DomainError("unpaired even entries obstruct the padded chain")
    b2 = abs(len(dl.o) - len(dm.o))
    a = b2 // 2 + 1
    k1 = 2 * a if (dl.o and dm.o) else 2 * a + 1
    anchor = max(dm.o) if dm.o else 1
    return a, k1, anchor


def constant_n0(lam, mu) -> int:
    """Offset n0 of the padded-family bound: covers of type
    (g, (λ,1^h), (μ,1^h)) exist in families of size floor((h-n0-1)/3)!
    for every h > n0 + 3."""
    _, k1, anchor = _padding_and_anchor(lam, mu)
    return k1 + anchor - 2


def constant_N0(lam, mu) -> int:
    """Half the largest unpaired odd entry, rounded up: the number of
    pair events one diagonal bridge spends before the ones-only chain
    takes over. When neither side has an unpaired odd entry above 1 no
    bridge is needed and N0 is 1."""
    lam = normalize(lam)
    mu = normalize(mu)
    dl = tail_decompose(lam)
    dm = tail_decompose(mu)
    if dm.o:
        v = max(dm.o)
    elif dl.o:
        v = max(dl.o)
    else:
        v = 1
    return max(1, (v + 1) // 2)


def _proper_anchor(lam) -> int:
    counts: dict[int, int] = {}
    for x in lam:
        counts[x] = counts.get(x, 0) + 1
    odd = [x for x, c in counts.items() if x % 2 and x > 1 and c >= 2]
    if not odd:
        raise DomainError("need an odd entry above 1 appearing at least twice")
    return max(odd)


def constant_c(lam, mu, o: Optional[int] = None) -> int:
    """Half the absolute mismatch between the even mass of λ plus 2o
    and the even mass of μ, the number of weight-1 filler tails the
    spine cover needs on one side."""
    lam = normalize(lam)
    mu = normalize(mu)
    if o is None:
        o = _proper_anchor(lam)
    lam_even = sum(x for x in lam if x % 2 == 0)
    mu_even = sum(x for x in mu if x % 2 == 0)
    return abs(lam_even + 2 * o - mu_even) // 2


def constant_c0(lam, mu, o: Optional[int] = None) -> int:
    """Threshold for the properly mixed family: the pair-side padding
    parameter h must exceed c0 = n0 + 3, where n0 is computed for the
    leftover odd entries after the even entries and one (o, o) pair are
    routed through the point side."""
    lam = normalize(lam)
    mu = normalize(mu)
    if o is None:
        o = _proper_anchor(lam)
    lam1, mu1 = _proper_pair_sides(lam, mu, o)
    return constant_n0(lam1, mu1) + 3


def _proper_pair_sides(lam, mu, o: int):
    """The pair-side type of the properly mixed pipeline: odd leftovers
    of λ minus two copies of o against odd leftovers of μ, padded with
    2c ones on the lighter side."""
    lam_odd = [x for x in lam if x % 2]
    mu_odd = [x for x in mu if x % 2]
    if lam_odd.count(o) < 2:
        raise DomainError(f"entry {o} must appear at least twice in the first partition")
    lam_odd.remove(o)
    lam_odd.remove(o)
    lam_even = sum(x for x in lam if x % 2 == 0)
    mu_even = sum(x for x in mu if x % 2 == 0)
    signed = lam_even + 2 * o - mu_even
    c2 = abs(signed)
    if signed > 0:
        return normalize(lam_odd + [1] * c2), normalize(mu_odd)
    if signed < 0:
        return normalize(lam_odd), normalize(mu_odd + [1] * c2)
    return normalize(lam_odd), normalize(mu_odd)


# -- padded chain families --------------------------------------------------


def build_asymp1_family(g: int, lam, mu, h: int) -> tuple[Cover, ...]:
    """Zigzag covers of type (g, (λ,1^h), (μ,1^h)) over pairs only, one
    per member of the permutation family on h - n0 letters.

    The pipeline pads both sides with ones, builds the non-vanishing
    chain, walks the largest unpaired odd entry down to weight one
    through a diagonal bridge, splices in a permutation-family cover,
    and climbs back up through the mirror bridge."""
    lam = normalize(lam)
    mu = normalize(mu)
    a, k1, anchor = _padding_and_anchor(lam, mu)
    n0 = k1 + anchor - 2
    if h <= n0 + 3:
        raise DomainError(f"padding must exceed n0 + 3 = {n0 + 3}")
    m_letters = h - n0
    padded_lam = normalize(lam + (1,) * k1)
    padded_mu = normalize(mu + (1,) * k1)
    core = build_nonvanishing_cover(g, padded_lam, padded_mu)
    if anchor >= 3:
        core = _glue_first(core, build_bridge_out(anchor), anchor)
    closing = build_bridge_in(anchor) if anchor >= 3 else None
    out = []
    for perm_cover in build_permutation_family(m_letters):
        chain = _glue_first(core, perm_cover, 1)
        if closing is not None:
            chain = _glue_first(chain, closing, 1)
        validate_cover(chain, g, normalize(lam + (1,) * h), normalize(mu + (1,) * h))
        out.append(chain)
    return tuple(out)


# -- the properly mixed pipeline --------------------------------------------


def build_proper_pair_cover(o: int) -> Cover:
    """The two-vertex pair cover of type (0, (o, o), (2o-1, 1)) whose
    single pair event resolves as the generic odd/even/odd picture. It
    is the seed of every properly mixed cover built here."""
    if o < 3 or o % 2 == 0:
        raise DomainError("the repeated odd entry must be odd and at least 3")
    b = _Builder()
    va, vb = b.pair()
    b.edge(None, va, o)
    b.edge(va, None, 1)
    b.edge(va, vb, o - 1)
    b.edge(None, vb, o)
    b.edge(vb, None, 2 * o - 1)
    cover = b.cover(g=0, lam=(o, o), mu=(2 * o - 1, 1))
    _require_zigzag(cover, "pair seed")
    return cover


def build_proper_spine_cover(o: int, lam_even, mu_even) -> Cover:
    """Points-only diagonal absorbing the even entries: incoming even
    ends and weight-1 filler tails feed a spine that starts at weight 1,
    sheds the remaining even outgoing ends, and finally merges with an
    incoming end of weight 2o-1 to exit as the distinguished even end."""
    if o < 3 or o % 2 == 0:
        raise DomainError("the repeated odd entry must be odd and at least 3")
    lam_even = normalize(lam_even)
    mu_even = normalize(mu_even)
    if any(x % 2 for x in lam_even) or any(x % 2 for x in mu_even):
        raise DomainError("spine tails must all be even")
    big = [x for x in mu_even if x >= 2 * o]
    if not big:
        raise DomainError(f"need an even entry of weight at least {2 * o}")
    e_big = max(big)
    mu_rest = list(mu_even)
    mu_rest.remove(e_big)
    signed = sum(lam_even) + 2 * o - sum(mu_even)
    c = abs(signed) // 2

    b = _Builder()
    prev: Optional[int] = None
    acc = 1
    for w in lam_even:
        att = b.point()
        b.edge(prev, att, acc)
        b.edge(None, att, w)
        prev = att
        acc += w
    if signed < 0:
        for _ in range(c):
            fork = b.point()
            att = b.point()
            b.edge(None, fork, 1)
            b.edge(None, fork, 1)
            b.edge(fork, att, 2)
            b.edge(prev, att, acc)
            prev = att
            acc += 2
    for w in mu_rest:
        att = b.point()
        b.edge(prev, att, acc)
        b.edge(att, None, w)
        prev = att
        acc -= w
    if signed > 0:
        attaches = []
        for _ in range(c):
            att = b.point()
            b.edge(prev, att, acc)
            attaches.append(att)
            prev = att
            acc -= 2
        for att in attaches:
            fork = b.point()
            b.edge(att, fork, 2)
            b.edge(fork, None, 1)
            b.edge(fork, None, 1)
    merge = b.point()
    b.edge(prev, merge, acc)
    if acc != e_big - 2 * o + 1:
        raise InvariantError("spine weight must meet the distinguished end")
    b.edge(None, merge, 2 * o - 1)
    b.edge(merge, None, e_big)

    ones_in = 1 + (2 * c if signed < 0 else 0)
    lam_full = normalize(tuple(lam_even) + (2 * o - 1,) + (1,) * ones_in)
    mu_full = normalize(tuple(mu_even) + (1,) * (2 * c if signed > 0 else 0))
    cover = b.cover(g=0, lam=lam_full, mu=mu_full)
    _require_zigzag(cover, "spine cover")
    return cover


def build_proper_family(g: int, lam, mu, h: int, m: int) -> tuple[Cover, ...]:
    """Properly mixed covers of type (g, (λ,1^r), (μ,1^r)) with
    r = 2c + h + 2m - 1, over the pairs-first ordering.

    The pair side chains the seed pair cover with a padded chain family
    member; the point side glues an even-ones snake into the diagonal
    spine; the two halves meet along the 2o-1 edge, which becomes the
    characteristic edge of the properly mixed witness. One cover per
    (chain member, snake member) pair."""
    lam = normalize(lam)
    mu = normalize(mu)
    if m < 2:
        raise DomainError("need at least two inward tails on the point side")
    o = _proper_anchor(lam)
    lam_even = normalize([x for x in lam if x % 2 == 0])
    mu_even = normalize([x for x in mu if x % 2 == 0])
    lam1, mu1 = _proper_pair_sides(lam, mu, o)
    c = constant_c(lam, mu, o)
    seed = build_proper_pair_cover(o)
    spine = build_proper_spine_cover(o, lam_even, mu_even)
    r = 2 * c + h + 2 * m - 1
    lam_r = normalize(lam + (1,) * r)
    mu_r = normalize(mu + (1,) * r)
    out = []
    for chain in build_asymp1_family(0, lam1, mu1, h):
        pair_side = _glue_first(seed, chain, 1)
        for snake in build_even_ones_family(m, g):
            point_side = _glue_first(snake, spine, 1)
            whole = _glue_first(pair_side, point_side, 2 * o - 1)
            validate_cover(whole, g, lam_r, mu_r)
            if is_properly_mixed(whole) is None:
                raise InvariantError("pipeline output is not properly mixed")
            out.append(whole)
    return tuple(out)


# -- wall crossing -----------------------------------------------------------


def wall_crossing_map(cover: Cover, events) -> Cover:
    """Embed a properly mixed cover over the pairs-first ordering into
    the zigzag covers of an arbitrary ordering with the same event
    counts.

    When the target keeps at least one pair before some point the map
    only re-slots the vertices. The points-first target is the one
    ordering where the characteristic edge would have to run backwards;
    there the leading pair and the final vertex are dissolved and
    rebuilt as a symmetric fork feeding a fresh pair, which reverses
    the roles of the two ends of the characteristic edge."""
    witness = is_properly_mixed(cover)
    if witness is None:
        raise DomainError("cover is not properly mixed")
    dist = distribution_from_tuple(events)
    s, t = cover.s, cover.t
    if dist.s != s or dist.t != t:
        raise DomainError("target ordering has different event counts")

    new_pairs = dist.pair_slots()
    pair_map = {}
    for i, q in enumerate(cover.pair_slots):
        pair_map[q] = new_pairs[i]
        pair_map[q + 1] = new_pairs[i] + 1
    point_targets = [
        v for v in range(dist.n_slots)
        if v not in {q for q in new_pairs} and v not in {q + 1 for q in new_pairs}
    ]
    point_map = {2 * s + j: point_targets[j] for j in range(t)}
    slot_map = {**pair_map, **point_map}

    if slot_map[1] < slot_map[cover.n_slots - 1]:
        edges = [
            (
                None if e.tail is None else slot_map[e.tail],
                None if e.head is None else slot_map[e.head],
                e.weight,
            )
            for e in cover.edges
        ]
        tokens = list(dist.events)
        result = _assemble(tokens, edges)
    else:
        result = _surgery_rebuild(cover, witness, s, t)
    g0 = (2 * s + t - len(cover.lam()) - len(cover.mu()) + 2) // 2
    validate_cover(result, g0, cover.lam(), cover.mu())
    _require_zigzag(result, "wall-crossed cover")
    return result


def _surgery_rebuild(cover: Cover, witness, s: int, t: int) -> Cover:
    n = cover.n_slots
    ec = witness.characteristic_edge
    o = cover.edges[cover.in_edges(0)[0]].weight
    contractible0 = next(i for i in cover.in_edges(1) if cover.edges[i].contractible)
    side_in = next(i for i in cover.in_edges(1) if i != contractible0)
    other_out = next(i for i in cover.out_edges(0) if i != contractible0)
    a_w = cover.edges[other_out].weight
    f_edge = next(i for i in cover.in_edges(n - 1) if i != ec)
    h_edge = cover.out_edges(n - 1)[0]
    drop = {cover.in_edges(0)[0], contractible0, side_in, other_out, ec, f_edge, h_edge}

    def remap(v: Optional[int]) -> Optional[int]:
        if v is None:
            return None
        if v >= 2 * s:
            return v - 2 * s
        return v + t

    tilde = t - 1
    tilde_p, tilde_pp = t, t + 1
    edges: list[EdgeSpec] = []
    for i, e in enumerate(cover.edges):
        if i not in drop:
            edges.append((remap(e.tail), remap(e.head), e.weight))
    edges.append((None, tilde, o))
    edges.append((None, tilde, o))
    edges.append((tilde, tilde_p, 2 * o))
    edges.append((tilde_p, remap(cover.edges[other_out].head), a_w))
    edges.append((tilde_p, tilde_pp, 2 * o - a_w))
    edges.append((remap(cover.edges[f_edge].tail), tilde_pp, cover.edges[f_edge].weight))
    edges.append((tilde_pp, None, cover.edges[h_edge].weight))
    tokens = [EVENT_POINT] * t + [EVENT_PAIR] * s
    return _assemble(tokens, edges)
