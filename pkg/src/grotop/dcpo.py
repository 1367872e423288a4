"""The dcpo of filters with its Scott-topology structure.

For a finite poset the filter completion is order-isomorphic to the
opposite poset, point i being the principal filter of element i; the
isomorphism is kept explicit through `origin`.  The specialization-order
convention is x <= y iff cl(x) is contained in cl(y), matching the Scott
topology's own order.

Open sets use ideal notation: a finite generator list denotes the points
above some generator, canonicalized to the minimal generators in X.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Optional, Sequence, Union

from .errors import (
    BadCertificate,
    NotDirected,
    NotFinitelyGenerated,
    TooLarge,
)
from .families import PosetFamily
from .posets import ElementSet, FinitePoset, bits, iter_down_set_masks

#: exhaustive way-below checks enumerate directed subsets; beyond this size
#: the finite-dcpo collapse to the order relation is used instead
WAY_BELOW_BRUTE_LIMIT = 12


class Dcpo:
    """Finite dcpo; carrier points are named after the originating poset."""

    __slots__ = ("x_poset", "origin")

    def __init__(self, x_poset: FinitePoset, origin: Optional[FinitePoset] = None):
        self.x_poset = x_poset
        self.origin = origin

    @property
    def n(self) -> int:
        return self.x_poset.n

    def points(self) -> tuple[str, ...]:
        return self.x_poset.elements

    def le(self, a: str, b: str) -> bool:
        return self.x_poset.le(a, b)

    def subset(self, names: Iterable[str]) -> ElementSet:
        return ElementSet.from_names(self.x_poset, names)

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, Dcpo)
            and self.x_poset == other.x_poset
            and self.origin == other.origin
        )

    def __hash__(self) -> int:
        return hash((self.x_poset, self.origin))

    def __repr__(self) -> str:
        return f"Dcpo({self.x_poset!r})"


def filter_completion(poset: FinitePoset) -> Dcpo:
    """Filters ordered by inclusion; finite case: the opposite poset.

    Point `p` stands for the principal filter of element p, and inclusion
    of up-cones reverses the original order.
    """
    return Dcpo(poset.opposite(), origin=poset)


def directed_sup(dcpo: Dcpo, names: Sequence[str]) -> str:
    """Supremum of a directed set of points; finite directed sets contain
    their maximum."""
    if not names:
        raise NotDirected("directed sets are nonempty")
    xp = dcpo.x_poset
    idxs = [xp.index(name) for name in names]
    for a in idxs:
        for b in idxs:
            if not any(xp.le_idx(a, u) and xp.le_idx(b, u) for u in idxs):
                raise NotDirected(
                    f"{xp.elements[a]} and {xp.elements[b]} have no upper bound inside the set"
                )
    for m in idxs:
        if all(xp.le_idx(a, m) for a in idxs):
            return xp.elements[m]
    raise NotDirected("directed set without a maximum; not a finite directed set")


def _iter_directed_masks(xp: FinitePoset):
    for mask in range(1, xp.full_mask + 1):
        members = list(bits(mask))
        directed = True
        for a in members:
            for b in members:
                if not (xp.up[a] & xp.up[b] & mask):
                    directed = False
                    break
            if not directed:
                break
        if directed:
            yield mask, members


def way_below_by_definition(dcpo: Dcpo, a: str, b: str) -> bool:
    """Quantify over every directed subset with supremum above b."""
    xp = dcpo.x_poset
    if xp.n > WAY_BELOW_BRUTE_LIMIT:
        raise TooLarge(
            f"definitional way-below check supports at most "
            f"{WAY_BELOW_BRUTE_LIMIT} points"
        )
    ia, ib = xp.index(a), xp.index(b)
    for mask, members in _iter_directed_masks(xp):
        sup = next(
            m for m in members if all(xp.le_idx(x, m) for x in members)
        )
        if xp.le_idx(ib, sup) and not any(xp.le_idx(ia, d) for d in members):
            return False
    return True


def way_below(dcpo: Dcpo, a: str, b: str) -> bool:
    """a is way below b.

    Checked against the definition when the carrier is small; larger finite
    carriers fall back on the collapse of way-below to the order relation
    (every finite directed set contains its supremum).
    """
    if dcpo.n <= WAY_BELOW_BRUTE_LIMIT:
        return way_below_by_definition(dcpo, a, b)
    return dcpo.le(a, b)


def finite_elements(dcpo: Dcpo) -> ElementSet:
    """Points x with x way below x; on finite carriers, all of them."""
    mask = 0
    for i, name in enumerate(dcpo.points()):
        if way_below(dcpo, name, name):
            mask |= 1 << i
    return ElementSet(dcpo.x_poset, mask)


def family_point_is_finite(family: PosetFamily, point: object) -> bool:
    """Family rule: a point is finite exactly when its filter is principal."""
    return family.point_is_principal(point)


def family_way_below(family: PosetFamily, x: object, y: object) -> bool:
    """In an algebraic dcpo, x is way below y iff some finite (principal)
    point sits between them; nonprincipal points are never way below."""
    if not family.point_is_principal(x):
        return False
    return family.point_leq(x, y)


def is_algebraic(dcpo: Dcpo) -> bool:
    """Check that every point is the directed sup of the finite elements
    below it (constructively, via directed_sup)."""
    fin = finite_elements(dcpo)
    xp = dcpo.x_poset
    for i, name in enumerate(xp.elements):
        below = [
            e for e in fin.names() if xp.le(e, name)
        ]
        if not below:
            return False
        try:
            if directed_sup(dcpo, below) != name:
                return False
        except NotDirected:
            return False
    return True


def scott_closure(dcpo: Dcpo, subset: ElementSet) -> ElementSet:
    """Smallest down-closed, directed-sup-closed superset; finite carriers
    only need the down-closure."""
    xp = dcpo.x_poset
    if subset.poset != xp:
        raise ValueError("subset is not over this dcpo's carrier")
    return ElementSet(xp, xp.down_closure(subset.mask))


def scott_closed_sets(dcpo: Dcpo) -> list[ElementSet]:
    """All Scott-closed subsets (down-sets of X), ascending mask order."""
    return [ElementSet(dcpo.x_poset, m) for m in iter_down_set_masks(dcpo.x_poset)]


# ---------------------------------------------------------------------------
# compact opens in ideal notation
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class OpenSet:
    """Scott-open set given by finitely many generators.

    Denotes the points above some generator; the stored generator list is
    reduced to the minimal generators (an antichain in X), listed in
    carrier order.
    """

    dcpo: Dcpo
    generator_mask: int

    @classmethod
    def generated_by(cls, dcpo: Dcpo, generators: Iterable[str]) -> "OpenSet":
        xp = dcpo.x_poset
        mask = xp.mask_of(generators)
        return cls(dcpo, xp.minimal_of(mask))

    def generators(self) -> tuple[str, ...]:
        return self.dcpo.x_poset.names(self.generator_mask)

    def denotation(self) -> ElementSet:
        xp = self.dcpo.x_poset
        return ElementSet(xp, xp.up_closure(self.generator_mask))

    def __str__(self) -> str:
        return "( " + ", ".join(self.generators()) + " )"


def open_intersection(dcpo: Dcpo, u: OpenSet, v: OpenSet) -> OpenSet:
    """Intersection of two opens; always finitely generated on finite X."""
    if u.dcpo != dcpo or v.dcpo != dcpo:
        raise ValueError("open sets over a different dcpo")
    xp = dcpo.x_poset
    meet = xp.up_closure(u.generator_mask) & xp.up_closure(v.generator_mask)
    return OpenSet(dcpo, xp.minimal_of(meet))


def family_open_intersection(
    family: PosetFamily, u_generators: Sequence[object], v_generators: Sequence[object]
) -> list[object]:
    """Generators of the intersection over a family, via the declared binary
    meet in the ambient order (a join of the principal opens)."""
    try:
        gens = []
        for a in u_generators:
            for b in v_generators:
                w = family.meet(a, b)
                if w is not None:
                    gens.append(w)
    except NotImplementedError:
        raise NotFinitelyGenerated(
            f"family {family.name} declares no binary meet; cannot intersect "
            f"({u_generators}) and ({v_generators})"
        ) from None
    reduced: list[object] = []
    for g in gens:
        if any(family.leq(g, h) and g != h for h in gens):
            continue  # g lies below another generator's cone already
        if g not in reduced:
            reduced.append(g)
    return reduced


# ---------------------------------------------------------------------------
# spectrality
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SpectralVerdict:
    outcome: str  # "spectral" | "not-spectral" | "unknown"
    dominating: tuple[str, ...] = ()
    meet_witnesses: tuple[tuple[str, str, tuple[str, ...]], ...] = ()
    escape_prefix: tuple[str, ...] = ()
    checked_level: int = 0
    detail: str = ""

    def __bool__(self) -> bool:
        return self.outcome == "spectral"


def is_spectral(
    subject: Union[FinitePoset, PosetFamily], levels: int = 64
) -> SpectralVerdict:
    """Certificate-carrying spectrality check.

    Finite posets are always spectral: the maximal elements dominate and
    every pairwise cone intersection is dominated by its maximal elements;
    both facts are verified, not assumed.  Families must declare either a
    dominating witness with a binary meet (verified on the truncation at
    the level budget, which contains all smaller truncations) or a strictly
    ascending cofinal escape chain.
    """
    if isinstance(subject, FinitePoset):
        return _finite_spectral(subject)
    return _family_spectral(subject, levels)


def _finite_spectral(poset: FinitePoset) -> SpectralVerdict:
    tops_mask = poset.maximal_of(poset.full_mask)
    for i in range(poset.n):
        if not (poset.up[i] & tops_mask):
            raise BadCertificate(
                f"element {poset.elements[i]} is under no maximal element"
            )
    meets = []
    for i in range(poset.n):
        for j in range(i, poset.n):
            common = poset.down[i] & poset.down[j]
            dominators = poset.maximal_of(common)
            for k in bits(common):
                if not (poset.up[k] & dominators):
                    raise BadCertificate(
                        f"cone intersection at ({poset.elements[i]}, "
                        f"{poset.elements[j]}) escapes its maximal elements"
                    )
            meets.append(
                (poset.elements[i], poset.elements[j], poset.names(dominators))
            )
    return SpectralVerdict(
        "spectral",
        dominating=poset.names(tops_mask),
        meet_witnesses=tuple(meets),
        detail="finite poset; maximal elements dominate",
    )


def _family_spectral(family: PosetFamily, levels: int) -> SpectralVerdict:
    if family.spectral_witness is not None:
        witness = family.spectral_witness
        codes = family.elements_to_level(levels)
        for p in codes:
            if not any(family.leq(p, t) for t in witness.tops):
                raise BadCertificate(
                    f"{family.element_name(p)} is not dominated by the witness "
                    f"tops (level {levels})"
                )
        for p in codes:
            for q in codes:
                w = witness.meet(p, q)
                if w is None:
                    for m in codes:
                        if family.leq(m, p) and family.leq(m, q):
                            raise BadCertificate(
                                f"meet({family.element_name(p)}, "
                                f"{family.element_name(q)}) claimed empty but "
                                f"{family.element_name(m)} lies below both"
                            )
                    continue
                if not (family.leq(w, p) and family.leq(w, q)):
                    raise BadCertificate(
                        f"meet witness {family.element_name(w)} is not below "
                        f"both arguments"
                    )
                for m in codes:
                    if family.leq(m, p) and family.leq(m, q) and not family.leq(m, w):
                        raise BadCertificate(
                            f"{family.element_name(m)} lies below "
                            f"{family.element_name(p)} and {family.element_name(q)} "
                            f"but not below the meet witness"
                        )
        return SpectralVerdict(
            "spectral",
            dominating=tuple(family.element_name(t) for t in witness.tops),
            checked_level=levels,
            detail=f"declared witness verified on the level-{levels} truncation",
        )
    if family.escape_chain is not None:
        esc = family.escape_chain
        chain = [esc.chain(i) for i in range(levels + 1)]
        for a, b in zip(chain, chain[1:]):
            if not (family.leq(a, b) and a != b and not family.leq(b, a)):
                raise BadCertificate(
                    f"escape chain not strictly ascending at "
                    f"{family.element_name(a)} -> {family.element_name(b)}"
                )
        for p in family.elements_to_level(levels):
            i = esc.cofinal_index(p)
            if i > levels or not family.leq(p, esc.chain(i)):
                raise BadCertificate(
                    f"cofinality fails for {family.element_name(p)}"
                )
        return SpectralVerdict(
            "not-spectral",
            escape_prefix=tuple(family.element_name(c) for c in chain[: min(8, len(chain))]),
            checked_level=levels,
            detail="strictly ascending cofinal chain: no finite dominating "
            "list exists, so X is not compact",
        )
    return SpectralVerdict(
        "unknown",
        checked_level=levels,
        detail=f"family {family.name} declares no certificate",
    )
