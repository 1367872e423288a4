"""Sieves, Grothendieck topologies, and the subset correspondence.

A sieve on p is a down-closed subset of the cone below p.  A topology
assigns every element a set of covering sieves subject to the three
standard axioms:

  maximality    -- the full cone below p covers p;
  stability     -- a cover of p pulled back to any q <= p covers q;
  transitivity  -- a sieve M on p covers p as soon as some cover L of p
                   pulls M back to a cover of every member of L.

Enumeration searches per-element cover choices depth-first in a linear
extension.  Once every element strictly below p is decided, both stability
and transitivity at p reduce to constraints on the choice at p alone:
stability rules individual sieves out, and transitivity becomes a set of
Horn implications "L chosen => M chosen" between sieves on p.  The search
propagates those implications both ways, which keeps the tree close to the
output size even when an element has many sieves.

The subset correspondence with the filter completion X uses the finite
identification of X with the carrier: the points of X are the principal
filters, the upward closure of a sieve in X is the sieve itself read as a
label set, and the open set generated by p meets X in the cone below p.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Mapping, Optional, Union

from .errors import BudgetExceeded, MalformedSieve, UnknownElement
from .families import FamilySieve, PointSetPresentation, PosetFamily
from .posets import ElementSet, FinitePoset, bits


@dataclass(frozen=True)
class Sieve:
    poset: FinitePoset
    base: str
    members: ElementSet

    def member_names(self) -> tuple[str, ...]:
        return self.members.names()

    def generators(self) -> tuple[str, ...]:
        """Smallest generating set: maximal members (minimal as points of X)."""
        return self.poset.names(self.poset.maximal_of(self.members.mask))


@lru_cache(maxsize=1024)
def _sieve_masks(poset: FinitePoset) -> tuple[tuple[int, ...], ...]:
    """Per element, the down-closed submasks of its cone, ascending."""
    out = []
    for p in range(poset.n):
        cone = poset.down[p]
        found = []
        sub = cone
        while True:
            if poset.is_down_closed(sub):
                found.append(sub)
            if sub == 0:
                break
            sub = (sub - 1) & cone
        found.sort()
        out.append(tuple(found))
    return tuple(out)


def sieves_on(poset: FinitePoset, p: str) -> list[Sieve]:
    """All sieves on p, in ascending bitmask order."""
    i = poset.index(p)
    return [
        Sieve(poset, p, ElementSet(poset, m)) for m in _sieve_masks(poset)[i]
    ]


class GrothendieckTopology:
    """Covering-sieve assignment; equality is cover-set equality."""

    __slots__ = ("poset", "covers")

    def __init__(self, poset: FinitePoset, covers: tuple[frozenset[int], ...]):
        self.poset = poset
        self.covers = covers

    def covers_of(self, p: str) -> list[Sieve]:
        i = self.poset.index(p)
        return [
            Sieve(self.poset, p, ElementSet(self.poset, m))
            for m in sorted(self.covers[i])
        ]

    def refines(self, other: "GrothendieckTopology") -> bool:
        """Coverwise containment: every cover of self covers in other."""
        if self.poset != other.poset:
            raise ValueError("topologies over different posets")
        return all(a <= b for a, b in zip(self.covers, other.covers))

    def to_json(self) -> dict[str, list[list[str]]]:
        return {
            name: [list(self.poset.names(m)) for m in sorted(self.covers[i])]
            for i, name in enumerate(self.poset.elements)
        }

    @classmethod
    def from_json(
        cls, poset: FinitePoset, mapping: Mapping[str, Iterable[Iterable[str]]]
    ) -> "GrothendieckTopology":
        for key in mapping:
            if key not in poset.elements:
                raise UnknownElement(f"covers listed for unknown element {key!r}")
        covers = []
        for i, name in enumerate(poset.elements):
            masks = set()
            for entry in mapping.get(name, ()):  # type: ignore[arg-type]
                mask = poset.mask_of(entry)
                _validate_sieve_mask(poset, i, mask)
                masks.add(mask)
            covers.append(frozenset(masks))
        return cls(poset, tuple(covers))

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, GrothendieckTopology)
            and self.poset == other.poset
            and self.covers == other.covers
        )

    def __hash__(self) -> int:
        return hash((self.poset, self.covers))

    def __repr__(self) -> str:
        parts = [
            f"{name}:{[list(self.poset.names(m)) for m in sorted(self.covers[i])]}"
            for i, name in enumerate(self.poset.elements)
        ]
        return "GrothendieckTopology(" + "; ".join(parts) + ")"


def _validate_sieve_mask(poset: FinitePoset, base_idx: int, mask: int) -> None:
    if mask & ~poset.down[base_idx]:
        raise MalformedSieve(
            f"sieve {list(poset.names(mask))} not below {poset.elements[base_idx]!r}"
        )
    if not poset.is_down_closed(mask):
        raise MalformedSieve(
            f"sieve {list(poset.names(mask))} is not down-closed"
        )


# ---------------------------------------------------------------------------
# axiom checking
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class AxiomReport:
    ok: bool
    axiom: Optional[str] = None
    witness: Optional[dict] = None

    def __bool__(self) -> bool:
        return self.ok


CoversInput = Union[GrothendieckTopology, Mapping[str, Iterable[Iterable[str]]]]


def check_topology_axioms(poset: FinitePoset, candidate: CoversInput) -> AxiomReport:
    """Verify the three axioms; report the first violation with a witness."""
    if isinstance(candidate, GrothendieckTopology):
        topo = candidate
        for i in range(poset.n):
            for mask in topo.covers[i]:
                _validate_sieve_mask(poset, i, mask)
    else:
        topo = GrothendieckTopology.from_json(poset, candidate)
    covers = topo.covers
    names = poset.elements

    def sieve_names(mask: int) -> list[str]:
        return list(poset.names(mask))

    for p in range(poset.n):
        if poset.down[p] not in covers[p]:
            return AxiomReport(
                False, "maximality", {"p": names[p], "missing": sieve_names(poset.down[p])}
            )
    for p in range(poset.n):
        for mask in sorted(covers[p]):
            for q in bits(poset.down[p]):
                pulled = mask & poset.down[q]
                if pulled not in covers[q]:
                    return AxiomReport(
                        False,
                        "stability",
                        {
                            "p": names[p],
                            "sieve": sieve_names(mask),
                            "q": names[q],
                            "pullback": sieve_names(pulled),
                        },
                    )
    all_sieves = _sieve_masks(poset)
    for p in range(poset.n):
        for lmask in sorted(covers[p]):
            for mmask in all_sieves[p]:
                if mmask in covers[p]:
                    continue
                if all(
                    (mmask & poset.down[l]) in covers[l] for l in bits(lmask)
                ):
                    return AxiomReport(
                        False,
                        "transitivity",
                        {
                            "p": names[p],
                            "sieve": sieve_names(lmask),
                            "m": sieve_names(mmask),
                        },
                    )
    return AxiomReport(True)


# ---------------------------------------------------------------------------
# exhaustive enumeration
# ---------------------------------------------------------------------------


def _cover_choices(
    poset: FinitePoset,
    p: int,
    masks: tuple[int, ...],
    state: list[Optional[frozenset[int]]],
) -> list[frozenset[int]]:
    """Valid cover sets at p once everything strictly below p is fixed."""
    full = poset.down[p]
    k = len(masks)
    pos = {m: t for t, m in enumerate(masks)}
    below = [q for q in bits(full) if q != p]

    allowed = []
    for m in masks:
        allowed.append(all((m & poset.down[q]) in state[q] for q in below))

    imp: list[list[int]] = [[] for _ in range(k)]
    rev: list[list[int]] = [[] for _ in range(k)]
    for t, lmask in enumerate(masks):
        if lmask == full or not allowed[t]:
            continue  # full-cone premise is vacuous; disallowed never chosen
        for s, mmask in enumerate(masks):
            if s == t:
                continue
            if all((mmask & poset.down[l]) in state[l] for l in bits(lmask)):
                imp[t].append(s)
                rev[s].append(t)

    def push_in(t: int, chosen: set[int], banned: set[int]) -> bool:
        stack = [t]
        while stack:
            u = stack.pop()
            if u in banned:
                return False
            if u in chosen:
                continue
            chosen.add(u)
            stack.extend(imp[u])
        return True

    def push_out(t: int, chosen: set[int], banned: set[int]) -> bool:
        stack = [t]
        while stack:
            u = stack.pop()
            if u in chosen:
                return False
            if u in banned:
                continue
            banned.add(u)
            stack.extend(rev[u])
        return True

    chosen0: set[int] = set()
    banned0: set[int] = set()
    for t in range(k):
        if not allowed[t] and not push_out(t, chosen0, banned0):
            return []
    if not push_in(pos[full], chosen0, banned0):
        return []

    results: list[frozenset[int]] = []

    def dfs(chosen: set[int], banned: set[int]) -> None:
        for t in range(k):
            if t not in chosen and t not in banned:
                c2, b2 = set(chosen), set(banned)
                if push_in(t, c2, b2):
                    dfs(c2, b2)
                c3, b3 = set(chosen), set(banned)
                if push_out(t, c3, b3):
                    dfs(c3, b3)
                return
        results.append(frozenset(masks[t] for t in chosen))

    dfs(chosen0, banned0)
    return results


def enumerate_topologies(
    poset: FinitePoset, limit: Optional[int] = None
) -> list[GrothendieckTopology]:
    """All Grothendieck topologies, deterministically ordered.

    Raises BudgetExceeded once more than `limit` topologies are found.
    """
    masks = _sieve_masks(poset)
    order = sorted(range(poset.n), key=lambda i: (poset.down[i].bit_count(), i))
    state: list[Optional[frozenset[int]]] = [None] * poset.n
    results: list[GrothendieckTopology] = []

    def rec(depth: int) -> None:
        if depth == len(order):
            results.append(GrothendieckTopology(poset, tuple(state)))  # type: ignore[arg-type]
            if limit is not None and len(results) > limit:
                raise BudgetExceeded(
                    f"more than {limit} topologies on {poset!r}"
                )
            return
        p = order[depth]
        for choice in _cover_choices(poset, p, masks[p], state):
            state[p] = choice
            rec(depth + 1)
        state[p] = None

    rec(0)
    results.sort(key=lambda t: tuple(tuple(sorted(c)) for c in t.covers))
    return results


# ---------------------------------------------------------------------------
# correspondence with subsets of the filter completion
# ---------------------------------------------------------------------------

PointsInput = Union[ElementSet, Iterable[str]]


def _points_mask(poset: FinitePoset, points: PointsInput) -> int:
    if isinstance(points, ElementSet):
        if points.poset.elements != poset.elements:
            raise ValueError("point set carrier does not match the poset")
        return points.mask
    return poset.mask_of(points)


def topology_from_points(poset: FinitePoset, points: PointsInput) -> GrothendieckTopology:
    """Largest topology whose associated point set contains the given one.

    A sieve covers p exactly when its upward closure in X contains every
    given point in the open set generated by p; over the finite
    identification this reads: the sieve contains every given point below p.
    """
    smask = _points_mask(poset, points)
    masks = _sieve_masks(poset)
    covers = []
    for p in range(poset.n):
        need = poset.down[p] & smask
        covers.append(frozenset(m for m in masks[p] if not (need & ~m)))
    return GrothendieckTopology(poset, tuple(covers))


def points_of_topology(topology: GrothendieckTopology) -> ElementSet:
    """Points of X surviving every cover of the topology.

    A principal point lies in the result when, for every element above its
    generator, it belongs to every covering sieve there.
    """
    poset = topology.poset
    out = 0
    for q in range(poset.n):
        qbit = 1 << q
        if all(
            mask & qbit
            for p in bits(poset.up[q])
            for mask in topology.covers[p]
        ):
            out |= qbit
    return ElementSet(poset, out)


def point_set_to_json(points: ElementSet) -> list[str]:
    return [f"pt:{name}" for name in points.names()]


def point_set_from_json(poset: FinitePoset, entries: Iterable[str]) -> ElementSet:
    names = []
    for entry in entries:
        if not entry.startswith("pt:"):
            raise UnknownElement(f"point {entry!r} is not of the form pt:<element>")
        names.append(entry[3:])
    return ElementSet.from_names(poset, names)


# ---------------------------------------------------------------------------
# finite type
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteTypeReport:
    outcome: str  # "yes" | "unknown"
    generators: tuple[tuple[str, tuple[str, ...], tuple[str, ...]], ...] = ()
    note: Optional[str] = None

    def __bool__(self) -> bool:
        return self.outcome == "yes"


def finite_type(topology: GrothendieckTopology) -> FiniteTypeReport:
    """Finite posets: constructively exhibit a finite generator set per cover."""
    poset = topology.poset
    rows = []
    for i, name in enumerate(poset.elements):
        for mask in sorted(topology.covers[i]):
            gens = poset.maximal_of(mask)
            regenerated = poset.down_closure(gens)
            assert regenerated == mask
            rows.append((name, poset.names(mask), poset.names(gens)))
    return FiniteTypeReport("yes", tuple(rows))


def family_finite_type(
    family: PosetFamily,
    point_set: PointSetPresentation,
    sieve: FamilySieve,
    budget: int = 64,
) -> FiniteTypeReport:
    """Search a finite subcover of a presented cover over the given points.

    Semi-decision: "yes" is only claimed when the point set is an explicit
    finite list, so the found generators provably reach all of it.  A
    rule-described set can always escape the sampled generators, hence
    "unknown" even when every sampled point is covered.
    """
    members = sieve.members(budget)
    for g in members:
        if not family.leq(g, sieve.base):
            raise MalformedSieve(
                f"sieve member {family.element_name(g)} is not below the base"
            )
    targets = [
        x
        for x in point_set.sample(budget)
        if family.point_membership(sieve.base, x)
    ]
    found: list[object] = []
    for x in targets:
        hit = next((g for g in members if family.point_membership(g, x)), None)
        if hit is None:
            return FiniteTypeReport(
                "unknown",
                note=f"no sampled generator reaches point {family.point_name(x)} "
                f"within budget {budget}",
            )
        if hit not in found:
            found.append(hit)
    if point_set.exhaustive:
        row = (
            family.element_name(sieve.base),
            (sieve.describe or "presented cover",),
            tuple(family.element_name(g) for g in found),
        )
        return FiniteTypeReport("yes", (row,))
    return FiniteTypeReport(
        "unknown",
        note="point set is rule-described; covering the sampled points does "
        "not certify a finite subcover for the full set",
    )
