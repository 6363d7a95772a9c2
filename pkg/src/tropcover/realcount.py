"""Signed counting of covers through two-colourings.

A colouring first dots a family of symmetric structures: every
non-contractible symmetric structure that touches a contractible edge is
dotted, and any subset of the remaining non-contractible ones may be
added. The even-weight edges outside dotted structures (ends included)
then fall into components joined at shared vertices, and each component
is painted RED or BLUE.

Each 3-valent vertex gets a sign read off the sign-rule table below; a
colouring is effective when the two vertices of every pair event agree.
The multiplicity of an effectively coloured cover is a positive integer,
and summing it over the coloured covers whose sign sequence reproduces a
requested signed event splitting gives the real count.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Optional, Sequence

from .covers import Cover, SymStructure, classify_symmetric
from .enumeration import (
    EVENT_PAIR,
    EVENT_POINT,
    Distribution,
    distribution_from_tuple,
    enumerate_covers,
)
from .errors import DomainError, InvariantError
from .partitions import is_excluded_pair, normalize, riemann_hurwitz_ok

RED = "RED"
BLUE = "BLUE"

TRIPLE = "TRIPLE"
SIMPLE = "SIMPLE"

_SPLIT_ALIASES = {
    "TRIPLE": TRIPLE,
    "PAIR": TRIPLE,
    "3": TRIPLE,
    "SIMPLE": SIMPLE,
    "POINT": SIMPLE,
    "2": SIMPLE,
}


def normalize_splitting(seq) -> tuple[str, ...]:
    out = []
    for tok in seq:
        key = str(tok).strip().upper()
        if key not in _SPLIT_ALIASES:
            raise DomainError(f"unknown ramification token {tok!r}")
        out.append(_SPLIT_ALIASES[key])
    return tuple(out)


# -- sign rules -----------------------------------------------------------

@dataclass(frozen=True)
class SignRule:
    """One row of the vertex-sign table. Parities are 0 even, 1 odd;
    branch parities are sorted. `dotted` rows fire when the two branches
    are the edges of one dotted structure. `probe` names which edge's
    colour decides, and `positive_on` the colour giving sign +1."""

    name: str
    dotted: bool
    trunk_parity: Optional[int]
    branch_parities: Optional[tuple[int, int]]
    probe: Optional[str]  # "trunk" | "even-branch" | None
    positive_on: Optional[str]  # colour, or None for unconditionally +


SIGN_RULES: tuple[SignRule, ...] = (
    SignRule("dotted-branch-pair", True, None, None, "trunk", BLUE),
    SignRule("odd-trunk", False, 1, (0, 1), "even-branch", BLUE),
    SignRule("even-trunk-odd-branches", False, 0, (1, 1), "trunk", RED),
    SignRule("all-even", False, 0, (0, 0), "trunk", BLUE),
    # balancing makes an all-odd vertex impossible; the row is kept so the
    # table is total on paper and is covered by a direct unit test
    SignRule("all-odd", False, 1, (1, 1), None, None),
)


def sign_rule_for(dotted: bool, trunk_parity: int, branch_parities: tuple[int, int]) -> SignRule:
    branch_parities = tuple(sorted(branch_parities))
    for rule in SIGN_RULES:
        if rule.dotted:
            if dotted:
                return rule
            continue
        if dotted:
            continue
        if rule.trunk_parity == trunk_parity and rule.branch_parities == branch_parities:
            return rule
    raise DomainError(
        f"no sign rule for trunk parity {trunk_parity}, branches {branch_parities}"
    )


# -- colourings -----------------------------------------------------------

@dataclass(frozen=True)
class Colouring:
    """Dotted structures plus a colour for every even edge outside them."""

    dotted: frozenset[SymStructure]
    edge_colours: tuple[tuple[int, str], ...]  # (edge id, RED|BLUE), sorted

    def colour_of(self, edge_id: int) -> str:
        for eid, col in self.edge_colours:
            if eid == edge_id:
                return col
        raise DomainError(f"edge {edge_id} carries no colour")

    def dotted_edge_ids(self) -> frozenset[int]:
        out = set()
        for st in self.dotted:
            out.update(st.edge_ids)
        return frozenset(out)


def even_components(cover: Cover, dotted_edges: frozenset[int]) -> dict[int, int]:
    """Components of the even-weight edges outside dotted structures,
    ends included, glued at shared vertices. Maps edge id to component."""
    even_ids = [
        i
        for i, e in enumerate(cover.edges)
        if e.weight % 2 == 0 and i not in dotted_edges
    ]
    parent = {i: i for i in even_ids}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    by_vertex: dict[int, list[int]] = {}
    for i in even_ids:
        e = cover.edges[i]
        for v in (e.tail, e.head):
            if v is not None:
                by_vertex.setdefault(v, []).append(i)
    for ids in by_vertex.values():
        for other in ids[1:]:
            ra, rb = find(ids[0]), find(other)
            if ra != rb:
                parent[rb] = ra
    return {i: find(i) for i in even_ids}


def _trunk_and_branches(cover: Cover, v: int) -> tuple[int, tuple[int, int]]:
    ins, outs = cover.in_edges(v), cover.out_edges(v)
    if len(ins) == 2 and len(outs) == 1:
        return outs[0], (ins[0], ins[1])
    if len(ins) == 1 and len(outs) == 2:
        return ins[0], (outs[0], outs[1])
    raise DomainError(f"vertex {v} is not 3-valent")


def vertex_sign(cover: Cover, colouring: Colouring, v: int) -> int:
    trunk, branches = _trunk_and_branches(cover, v)
    branch_set = frozenset(branches)
    dotted = any(frozenset(st.edge_ids) == branch_set for st in colouring.dotted)
    tw = cover.edges[trunk].weight
    bw = tuple(sorted(cover.edges[b].weight % 2 for b in branches))
    rule = sign_rule_for(dotted, tw % 2, bw)
    if rule.probe is None:
        return 1
    if rule.probe == "trunk":
        col = colouring.colour_of(trunk)
    else:
        even_branch = next(b for b in branches if cover.edges[b].weight % 2 == 0)
        col = colouring.colour_of(even_branch)
    return 1 if col == rule.positive_on else -1


def event_signs(cover: Cover, colouring: Colouring) -> tuple[int, ...]:
    """Sign per event in slot order; pair vertices must agree."""
    out = []
    for kind, slots in cover.events():
        signs = {vertex_sign(cover, colouring, v) for v in slots}
        if len(signs) != 1:
            raise DomainError("pair vertices disagree; colouring is not effective")
        out.append(signs.pop())
    return tuple(out)


def _dottable_sym2(report) -> list:
    return [st for st in report.sym2 if st.kind == "cycle" or st.weight % 2 == 1]


def enumerate_effective_colourings(
    cover: Cover, required_event_signs: Optional[Sequence[int]] = None
) -> tuple[Colouring, ...]:
    report = classify_symmetric(cover)
    found = []
    # Even non-contractible forks are sign-inert: the all-even rule and
    # the dotted-pair rule read the same colour, so dotting one changes
    # no observable data. They are therefore not colouring choices (and
    # mult_real leaves them out of its halving for the same reason).
    sym2 = sorted(_dottable_sym2(report))
    for r in range(len(sym2) + 1):
        for extra in combinations(sym2, r):
            dotted = frozenset(report.sym3 | set(extra))
            dotted_edges = frozenset(
                i for st in dotted for i in st.edge_ids
            )
            comp_of = even_components(cover, dotted_edges)
            comp_ids = sorted(set(comp_of.values()))
            for colours in product((RED, BLUE), repeat=len(comp_ids)):
                comp_colour = dict(zip(comp_ids, colours))
                colouring = Colouring(
                    dotted,
                    tuple(sorted((i, comp_colour[c]) for i, c in comp_of.items())),
                )
                try:
                    signs = event_signs(cover, colouring)
                except DomainError:
                    continue
                if required_event_signs is not None and tuple(signs) != tuple(
                    required_event_signs
                ):
                    continue
                found.append(colouring)
    return tuple(found)


# -- multiplicity and the signed count ------------------------------------


def mult_real(cover: Cover, colouring: Colouring) -> int:
    """Multiplicity of an effectively coloured cover: a power of two from
    the undotted even inner edges (contractible ones excluded) and the
    nonsymmetric even contractible parallel pairs, divided by two per
    symmetric structure away from the contractible locus, times the
    weights of the dotted symmetric cycles. Always a positive integer.

    Counting the forced-dotted symmetric cycles in the exponent as well
    would break the arrangement independence of the signed count (the
    twin-cycle cover for (3) -> (2,1) at genus 1 is the smallest case),
    so they enter through the weight product only.

    The halving runs over the dottable structures, matching the choices
    enumerate_effective_colourings actually offers: an even fork is
    sign-inert, so it is neither a choice nor a halving. Totals agree
    with the convention that dots such forks freely and halves per fork,
    but per-colouring values differ, and only this split keeps odd
    multiplicity a zigzag certificate."""
    report = classify_symmetric(cover)
    dotted_edges = colouring.dotted_edge_ids()
    contractible = cover.contractible_ids()
    free_even_inner = sum(
        1
        for i, e in enumerate(cover.edges)
        if e.is_inner
        and e.weight % 2 == 0
        and i not in dotted_edges
        and i not in contractible
    )
    a = free_even_inner + len(report.nsym_c)
    num = 2 ** a
    for st in colouring.dotted:
        if st.kind == "cycle":
            num *= st.weight
    den = 2 ** len(_dottable_sym2(report))
    if num % den:
        raise InvariantError(
            f"multiplicity {num}/{den} is not an integer; formula misread"
        )
    value = num // den
    if value <= 0:
        raise InvariantError("multiplicity must be positive")
    return value


def _splitting_distribution(neg, pos) -> Distribution:
    return distribution_from_tuple(
        [EVENT_PAIR if x == TRIPLE else EVENT_POINT for x in list(neg) + list(pos)]
    )


def is_shuffle(seq: Sequence[str], a: Sequence[str], b: Sequence[str]) -> bool:
    """True when seq interleaves a and b keeping both internal orders."""
    if len(seq) != len(a) + len(b):
        return False
    reachable = {(0, 0)}
    for x in seq:
        nxt = set()
        for i, j in reachable:
            if i < len(a) and a[i] == x:
                nxt.add((i + 1, j))
            if j < len(b) and b[j] == x:
                nxt.add((i, j + 1))
        reachable = nxt
    return (len(a), len(b)) in reachable


def compatible_signings(
    kinds: Sequence[str], neg, pos
) -> tuple[tuple[int, ...], ...]:
    """All per-event sign vectors placing `neg` on the negative slots (in
    slot order) and `pos` on the positive ones, given the event kinds in
    slot order. Distinct recursion paths yield distinct vectors, so no
    dedup is needed."""
    neg = normalize_splitting(neg)
    pos = normalize_splitting(pos)
    kinds = tuple(kinds)
    if len(kinds) != len(neg) + len(pos):
        return ()
    out: list[tuple[int, ...]] = []

    def rec(idx, i, j, acc):
        if idx == len(kinds):
            out.append(tuple(acc))
            return
        k = kinds[idx]
        if i < len(neg) and neg[i] == k:
            rec(idx + 1, i + 1, j, acc + [-1])
        if j < len(pos) and pos[j] == k:
            rec(idx + 1, i, j + 1, acc + [1])

    rec(0, 0, 0, [])
    return tuple(sorted(out))


def compatible_arrangements(
    neg, pos
) -> tuple[tuple[tuple[str, ...], tuple[int, ...]], ...]:
    """All signed arrangements realizing the splitting: pairs of (event
    kind sequence, per-event sign sequence). The sign vector determines
    the interleaving, so there are exactly C(s+t, |neg|) entries."""
    neg = normalize_splitting(neg)
    pos = normalize_splitting(pos)
    out = []

    def extend(i, j, kinds, signs):
        if i == len(neg) and j == len(pos):
            out.append((tuple(kinds), tuple(signs)))
            return
        if i < len(neg):
            extend(i + 1, j, kinds + [neg[i]], signs + [-1])
        if j < len(pos):
            extend(i, j + 1, kinds + [pos[j]], signs + [1])

    extend(0, 0, [], [])
    return tuple(
        (tuple(EVENT_PAIR if k == TRIPLE else EVENT_POINT for k in kinds), signs)
        for kinds, signs in sorted(out)
    )


def hurwitz_real(g: int, lam, mu, neg=(), pos=(), events=None, signs=None) -> int:
    """Signed-splitting count: the sum of mult_real over effectively
    coloured covers whose event signs realize (neg, pos) slotwise. Both
    the slot arrangement and the sign assignment may be overridden; the
    result does not depend on those choices."""
    neg = normalize_splitting(neg)
    pos = normalize_splitting(pos)
    lam = normalize(lam)
    mu = normalize(mu)
    s = sum(1 for x in neg + pos if x == TRIPLE)
    t = len(neg) + len(pos) - s
    if not riemann_hurwitz_ok(g, lam, mu, s, t):
        raise DomainError("signed splitting violates the degree-genus constraint")
    if 2 * s + t == 0 or is_excluded_pair(lam, mu):
        raise DomainError("input outside the standing assumptions")
    if events is None:
        dist = _splitting_distribution(neg, pos)
    else:
        dist = distribution_from_tuple(events)
    kinds = tuple(TRIPLE if e == EVENT_PAIR else SIMPLE for e in dist.events)
    options = compatible_signings(kinds, neg, pos)
    if not options:
        raise DomainError("event arrangement is not a shuffle of the splitting")
    if signs is None:
        required = options[0]
    else:
        required = tuple(1 if x > 0 else -1 for x in signs)
        if required not in options:
            raise DomainError("sign assignment does not realize the splitting")
    total = 0
    for cover in enumerate_covers(g, lam, mu, dist):
        for colouring in enumerate_effective_colourings(cover):
            if event_signs(cover, colouring) == required:
                total += mult_real(cover, colouring)
    return total
