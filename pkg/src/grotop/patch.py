"""Product embedding, pointwise convergence, patch and strong closures.

Every point of X embeds into a product of Sierpinski components, one per
element p, through the bit [p <= x] (does the filter x contain p).  On that
product the patch topology is the topology of pointwise convergence, which
grounds three computations:

  * convergence verdicts for finitely described sequences,
  * patch/strong closures (computed from generated topologies on finite
    carriers; candidate-driven semi-decisions over families),
  * the first-difference ultrametric realizing metrizability for a chosen
    element enumeration.

Closure over a family certifies membership of proposed limit points; it
never claims to enumerate the full closure of an infinite set.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Optional, Sequence, Union

from .dcpo import Dcpo
from .errors import TooLarge
from .families import (
    PointSetPresentation,
    PosetFamily,
    PrincipalPoint,
    SequenceRule,
)
from .posets import ElementSet, FinitePoset, iter_down_set_masks

#: generated-topology computations enumerate set families of size up to 2^n
FINITE_TOPOLOGY_LIMIT = 12

#: how many separating elements certify a candidate limit point by default
CERTIFICATION_TEST_COUNT = 32


# ---------------------------------------------------------------------------
# profiles
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Profile:
    """Membership bits of one point over a finite element list."""

    index: tuple[str, ...]
    bits: tuple[bool, ...]

    def as_bitstring(self) -> str:
        return "".join("1" if b else "0" for b in self.bits)


def _finite_membership(dcpo: Dcpo, p: str, x: str) -> bool:
    # [p <= x] read inside X: p is the finite element named p
    return dcpo.x_poset.le(p, x)


def embed_profile(
    subject: Union[Dcpo, PosetFamily], x: object, test_elements: Sequence[object]
) -> Profile:
    """Profile of x over the given elements; checks filter-trace consistency
    (the set of 1-bits is upward closed within the test list)."""
    if isinstance(subject, Dcpo):
        names = tuple(str(e) for e in test_elements)
        values = tuple(_finite_membership(subject, e, x) for e in test_elements)
        leq = (
            subject.origin.le
            if subject.origin is not None
            else subject.x_poset.opposite().le
        )
    else:
        names = tuple(subject.element_name(e) for e in test_elements)
        values = tuple(subject.point_membership(e, x) for e in test_elements)
        leq = subject.leq
    for i, a in enumerate(test_elements):
        for j, b in enumerate(test_elements):
            if values[i] and leq(a, b) and not values[j]:
                raise AssertionError(
                    f"profile of {x!r} is not a filter trace: contains "
                    f"{names[i]} but not {names[j]} above it"
                )
    return Profile(names, values)


# ---------------------------------------------------------------------------
# pointwise convergence
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ConvergenceVerdict:
    outcome: str  # "converges" | "diverges" | "unknown"
    stabilization: dict = field(default_factory=dict)  # element name -> N(p)
    diverges_at: Optional[str] = None
    reason: Optional[str] = None
    exact: bool = False
    budget: int = 0

    def __bool__(self) -> bool:
        return self.outcome == "converges"


def converges_pointwise(
    family: PosetFamily,
    rule: SequenceRule,
    limit: object,
    test_elements: Sequence[object],
    budget: int = 10_000,
) -> ConvergenceVerdict:
    """Per test element, the least N with [p <= x_i] = [p <= limit] for all
    i in [N, budget].

    Eventually periodic rules and ascending rules with a declared supremum
    get exact verdicts (divergence included); other rules are reported from
    the sampled window only, with mismatches at the window edge mapped to
    "unknown".
    """
    stabilization: dict[str, int] = {}
    unknown: list[str] = []
    for p in test_elements:
        name = family.element_name(p)
        limit_bit = family.point_membership(p, limit)

        if rule.period is not None:
            window_end = rule.prefix_len + rule.period
            if window_end > budget + 1:
                return ConvergenceVerdict(
                    "unknown",
                    stabilization,
                    reason=f"budget {budget} below one full period after the "
                    f"prefix ({window_end} samples needed)",
                    budget=budget,
                )
            bitvals = [
                family.point_membership(p, rule.point(i)) for i in range(window_end)
            ]
            steady_mismatch = next(
                (
                    i
                    for i in range(rule.prefix_len, window_end)
                    if bitvals[i] != limit_bit
                ),
                None,
            )
            if steady_mismatch is not None:
                return ConvergenceVerdict(
                    "diverges",
                    stabilization,
                    diverges_at=name,
                    reason=f"[{name} <= x_i] disagrees with the limit at index "
                    f"{steady_mismatch} and recurs every {rule.period} steps",
                    exact=True,
                    budget=budget,
                )
            last_bad = max(
                (i for i in range(rule.prefix_len) if bitvals[i] != limit_bit),
                default=-1,
            )
            stabilization[name] = last_bad + 1
            continue

        if rule.ascending_sup is not None:
            eventual = family.point_membership(p, rule.ascending_sup)
            if eventual != limit_bit:
                return ConvergenceVerdict(
                    "diverges",
                    stabilization,
                    diverges_at=name,
                    reason=f"[{name} <= x_i] eventually equals "
                    f"{int(eventual)} (ascending rule), limit bit is "
                    f"{int(limit_bit)}",
                    exact=True,
                    budget=budget,
                )
            if not limit_bit:
                stabilization[name] = 0  # bits ascend; eventual 0 means all 0
                continue
            if not family.point_membership(p, rule.point(budget)):
                unknown.append(name)
                continue
            lo, hi = 0, budget
            while lo < hi:
                mid = (lo + hi) // 2
                if family.point_membership(p, rule.point(mid)):
                    hi = mid
                else:
                    lo = mid + 1
            stabilization[name] = lo
            continue

        last_bad = -1
        for i in range(budget + 1):
            if family.point_membership(p, rule.point(i)) != limit_bit:
                last_bad = i
        if last_bad >= budget:
            unknown.append(name)
        else:
            stabilization[name] = last_bad + 1

    if unknown:
        return ConvergenceVerdict(
            "unknown",
            stabilization,
            reason=f"no stabilization within budget {budget} at "
            f"{', '.join(unknown)}",
            budget=budget,
        )
    exact = rule.period is not None or rule.ascending_sup is not None
    return ConvergenceVerdict(
        "converges", stabilization, exact=exact, budget=budget
    )


# ---------------------------------------------------------------------------
# finite closures through generated topologies
# ---------------------------------------------------------------------------


def _close_under(masks: set[int], op) -> frozenset[int]:
    frontier = list(masks)
    while frontier:
        fresh = []
        for a in frontier:
            for b in masks:
                c = op(a, b)
                if c not in masks and c not in fresh:
                    fresh.append(c)
        masks.update(fresh)
        frontier = fresh
    return frozenset(masks)


@lru_cache(maxsize=2048)
def _finite_closed_sets(x_poset: FinitePoset, kind: str) -> frozenset[int]:
    """Closed sets of the Scott, patch, or strong topology on a finite X."""
    if x_poset.n > FINITE_TOPOLOGY_LIMIT:
        raise TooLarge(
            f"generated-topology computation supports at most "
            f"{FINITE_TOPOLOGY_LIMIT} points"
        )
    full = x_poset.full_mask
    closed_scott = set(iter_down_set_masks(x_poset))
    if kind == "scott":
        return frozenset(closed_scott)
    opens = {full & ~c for c in closed_scott}
    if kind == "patch":
        # subbasis: compact opens (all of them, X finite) and their complements
        subbasis = opens | closed_scott
    elif kind == "strong":
        subbasis = {o & c for o in opens for c in closed_scott}
    else:
        raise ValueError(f"unknown topology kind {kind!r}")
    basis = _close_under(set(subbasis) | {full}, int.__and__)
    topology = _close_under(set(basis) | {0}, int.__or__)
    return frozenset(full & ~o for o in topology)


def _finite_closure(dcpo: Dcpo, subset: ElementSet, kind: str) -> ElementSet:
    if subset.poset != dcpo.x_poset:
        raise ValueError("subset is not over this dcpo's carrier")
    out = dcpo.x_poset.full_mask
    for c in _finite_closed_sets(dcpo.x_poset, kind):
        if not (subset.mask & ~c):
            out &= c
    return ElementSet(dcpo.x_poset, out)


def locally_closed_basis(dcpo: Dcpo) -> list[ElementSet]:
    """All intersections of a Scott-open with a Scott-closed set."""
    xp = dcpo.x_poset
    if xp.n > FINITE_TOPOLOGY_LIMIT:
        raise TooLarge(
            f"locally closed basis supports at most {FINITE_TOPOLOGY_LIMIT} points"
        )
    closed = list(iter_down_set_masks(xp))
    opens = [xp.full_mask & ~c for c in closed]
    found = {o & c for o in opens for c in closed}
    return [ElementSet(xp, m) for m in sorted(found)]


# ---------------------------------------------------------------------------
# closures over families (candidate-driven)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FamilyClosureResult:
    kind: str
    members: tuple[str, ...]  # sampled presentation points, by name
    added: tuple[str, ...]  # certified candidate limit points
    outcome: str  # "closed" | "grew"
    checked_level: int = 0
    notes: tuple[str, ...] = ()

    @property
    def closed(self) -> bool:
        return not self.added


def _sample_names(family: PosetFamily, pts: Iterable[object]) -> tuple[str, ...]:
    return tuple(family.point_name(x) for x in pts)


def family_patch_closure(
    family: PosetFamily,
    presentation: PointSetPresentation,
    candidates: Sequence[object] = (),
    budget: int = 512,
) -> FamilyClosureResult:
    """Add every candidate certified as a pointwise limit of the presented
    sequence; completeness is relative to the supplied candidates."""
    sample = presentation.sample(budget)
    added = []
    notes = []
    test = family.separating(min(budget, CERTIFICATION_TEST_COUNT))
    for cand in candidates:
        if cand in sample:
            continue
        if presentation.rule is None:
            notes.append(
                f"{family.point_name(cand)}: no sequence presented, nothing "
                "converges to it"
            )
            continue
        verdict = converges_pointwise(
            family, presentation.rule, cand, test, budget
        )
        if verdict.outcome == "converges":
            added.append(cand)
        else:
            notes.append(
                f"{family.point_name(cand)}: {verdict.outcome}"
                + (f" ({verdict.reason})" if verdict.reason else "")
            )
    return FamilyClosureResult(
        "patch",
        _sample_names(family, sample),
        _sample_names(family, added),
        "grew" if added else "closed",
        checked_level=budget,
        notes=tuple(notes),
    )


def _strong_criterion_holds(
    family: PosetFamily,
    s: object,
    members: Sequence[object],
    level: int,
) -> bool:
    """Approximation from below: every p <= s is realized by some member x
    with p <= x <= s (quantifier over p bounded by the truncation level)."""
    for p in family.elements_to_level(level):
        if not family.point_membership(p, s):
            continue
        if not any(
            family.point_membership(p, x) and family.point_leq(x, s)
            for x in members
        ):
            return False
    return True


def family_strong_closure(
    family: PosetFamily,
    presentation: PointSetPresentation,
    candidates: Sequence[object] = (),
    budget: int = 64,
) -> FamilyClosureResult:
    """Add candidates forced in by the approximation-from-below criterion,
    iterated to a fixed point; bounded in the truncation level."""
    members = list(presentation.sample(budget))
    added: list[object] = []
    pending = [c for c in candidates if c not in members]
    changed = True
    while changed:
        changed = False
        for cand in list(pending):
            if _strong_criterion_holds(family, cand, members, budget):
                members.append(cand)
                added.append(cand)
                pending.remove(cand)
                changed = True
    return FamilyClosureResult(
        "strong",
        _sample_names(family, presentation.sample(budget)),
        _sample_names(family, added),
        "grew" if added else "closed",
        checked_level=budget,
        notes=(),
    )


def family_scott_closure(
    family: PosetFamily,
    presentation: PointSetPresentation,
    candidates: Sequence[object] = (),
    budget: int = 64,
) -> FamilyClosureResult:
    """Down-closure (principal points below a member, up to the truncation
    level) plus candidates certified as directed suprema of members."""
    sample = presentation.sample(budget)
    added: list[object] = []
    for p in family.elements_to_level(budget):
        pt = PrincipalPoint(p)
        if pt in sample or pt in added:
            continue
        if any(family.point_leq(pt, x) for x in sample):
            added.append(pt)
    for cand in candidates:
        if cand in sample or cand in added:
            continue
        below = [x for x in sample if family.point_leq(x, cand)]
        if not below:
            continue
        directed = all(
            any(
                family.point_leq(x, z) and family.point_leq(y, z)
                for z in below
            )
            for x in below
            for y in below
        )
        if directed and _strong_criterion_holds(family, cand, below, budget):
            added.append(cand)
    return FamilyClosureResult(
        "scott",
        _sample_names(family, sample),
        _sample_names(family, added),
        "grew" if added else "closed",
        checked_level=budget,
        notes=(),
    )


# ---------------------------------------------------------------------------
# dispatching closure operators
# ---------------------------------------------------------------------------


def scott_set_closure(dcpo: Dcpo, subset: ElementSet) -> ElementSet:
    return _finite_closure(dcpo, subset, "scott")


def patch_closure(dcpo: Dcpo, subset: ElementSet) -> ElementSet:
    """Finite carriers: closure in the topology generated by compact opens
    and their complements (which is discrete, so this returns the set)."""
    return _finite_closure(dcpo, subset, "patch")


def strong_closure(dcpo: Dcpo, subset: ElementSet) -> ElementSet:
    """Finite carriers: closure in the topology generated by the locally
    closed sets (discrete as well)."""
    return _finite_closure(dcpo, subset, "strong")


@dataclass(frozen=True)
class StrongClosedVerdict:
    closed: bool
    witness: Optional[str] = None
    checked_level: int = 0
    note: str = ""

    def __bool__(self) -> bool:
        return self.closed


def is_strong_closed(
    subject: Union[Dcpo, PosetFamily],
    subset: Union[ElementSet, PointSetPresentation],
    candidates: Sequence[object] = (),
    budget: int = 64,
) -> StrongClosedVerdict:
    if isinstance(subject, Dcpo):
        assert isinstance(subset, ElementSet)
        closure = strong_closure(subject, subset)
        extra = closure - subset
        return StrongClosedVerdict(
            closure.mask == subset.mask,
            witness=extra.names()[0] if len(extra) else None,
            note="finite carrier: strong topology computed from locally closed sets",
        )
    assert isinstance(subset, PointSetPresentation)
    result = family_strong_closure(subject, subset, candidates, budget)
    return StrongClosedVerdict(
        result.closed,
        witness=result.added[0] if result.added else None,
        checked_level=budget,
        note="relative to the supplied candidate points",
    )


# ---------------------------------------------------------------------------
# the first-difference ultrametric
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class MetricValue:
    value: Fraction
    first_difference: Optional[int]
    depth: int

    @property
    def resolved(self) -> bool:
        return self.first_difference is not None

    def __str__(self) -> str:
        if self.resolved:
            return str(self.value)
        return f"<= 2^-{self.depth}"


def metric(
    subject: Union[Dcpo, PosetFamily],
    x: object,
    y: object,
    enumeration: Sequence[object],
    depth: Optional[int] = None,
) -> MetricValue:
    """d(x, y) = 2^-k at the first enumeration index where the membership
    bits differ; 0 with a depth qualifier when none differs."""
    if depth is None:
        depth = len(enumeration)
    if depth > len(enumeration):
        raise ValueError("depth exceeds the supplied enumeration")
    if isinstance(subject, Dcpo):
        member = lambda p, z: _finite_membership(subject, p, z)  # noqa: E731
    else:
        member = subject.point_membership
    for k in range(depth):
        p = enumeration[k]
        if member(p, x) != member(p, y):
            return MetricValue(Fraction(1, 2**k), k, depth)
    return MetricValue(Fraction(0), None, depth)
