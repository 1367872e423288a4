"""Finite posets and their combinatorial primitives.

Elements are opaque strings; the carrier keeps its declared order and every
operation emits results deterministically with respect to it.  Subsets are
bitmasks (bit i = elements[i]), which caps the supported size at
MAX_ELEMENTS = 24.  Enumerations yield masks in ascending numeric order,
i.e. lexicographic from the low bit; there is no implicit cap, callers
budget the exponential output themselves.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

from .errors import (
    DuplicateElement,
    NotAPartialOrder,
    ParseError,
    TooLarge,
    UnknownElement,
)

MAX_ELEMENTS = 24

_EDGE_RE = re.compile(r"^(\S+)\s*<\s*(\S+)$")
_NAME_RE = re.compile(r"^[^\s<>,]+$")


def bits(mask: int) -> Iterator[int]:
    """Indices of the set bits, ascending."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class FinitePoset:
    """Immutable finite partial order.

    Attributes:
        elements: carrier in declared order.
        up: up[i] = bitmask of j with elements[i] <= elements[j].
        down: down[i] = bitmask of j with elements[j] <= elements[i].
    """

    __slots__ = ("elements", "up", "down", "n", "full_mask", "_index")

    def __init__(self, elements: Sequence[str], up: Sequence[int]):
        n = len(elements)
        if n > MAX_ELEMENTS:
            raise TooLarge(f"poset has {n} elements, supported maximum is {MAX_ELEMENTS}")
        self.elements = tuple(elements)
        self.up = tuple(up)
        self.n = n
        self.full_mask = (1 << n) - 1
        down = [0] * n
        for i in range(n):
            for j in bits(self.up[i]):
                down[j] |= 1 << i
        self.down = tuple(down)
        self._index = {name: i for i, name in enumerate(self.elements)}

    # -- construction ------------------------------------------------------

    @classmethod
    def from_relation(cls, elements: Sequence[str], pairs: Iterable[tuple[str, str]]) -> "FinitePoset":
        """Build from generating pairs a <= b; closes reflexively and
        transitively, rejects antisymmetry violations."""
        elems = list(elements)
        seen: set[str] = set()
        for e in elems:
            if e in seen:
                raise DuplicateElement(f"element {e!r} declared twice")
            seen.add(e)
        if len(elems) > MAX_ELEMENTS:
            raise TooLarge(
                f"poset has {len(elems)} elements, supported maximum is {MAX_ELEMENTS}"
            )
        index = {e: i for i, e in enumerate(elems)}
        n = len(elems)
        up = [1 << i for i in range(n)]
        for a, b in pairs:
            if a not in index:
                raise ParseError(f"relation mentions undeclared element {a!r}")
            if b not in index:
                raise ParseError(f"relation mentions undeclared element {b!r}")
            up[index[a]] |= 1 << index[b]
        # Warshall transitive closure on bitmask rows.
        for k in range(n):
            kbit = 1 << k
            for i in range(n):
                if up[i] & kbit:
                    up[i] |= up[k]
        for i in range(n):
            for j in bits(up[i]):
                if j != i and (up[j] >> i) & 1:
                    raise NotAPartialOrder(
                        f"cycle between {elems[i]!r} and {elems[j]!r}"
                    )
        return cls(elems, up)

    # -- basic queries -----------------------------------------------------

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise UnknownElement(f"unknown element {name!r}") from None

    def le(self, a: str, b: str) -> bool:
        """a <= b in the partial order."""
        return bool((self.up[self.index(a)] >> self.index(b)) & 1)

    def le_idx(self, i: int, j: int) -> bool:
        return bool((self.up[i] >> j) & 1)

    def names(self, mask: int) -> tuple[str, ...]:
        return tuple(self.elements[i] for i in bits(mask))

    def mask_of(self, names: Iterable[str]) -> int:
        m = 0
        for name in names:
            m |= 1 << self.index(name)
        return m

    def is_down_closed(self, mask: int) -> bool:
        for i in bits(mask):
            if self.down[i] & ~mask:
                return False
        return True

    def is_up_closed(self, mask: int) -> bool:
        for i in bits(mask):
            if self.up[i] & ~mask:
                return False
        return True

    def down_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.down[i]
        return out

    def up_closure(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            out |= self.up[i]
        return out

    def minimal_of(self, mask: int) -> int:
        """Elements of mask with no strictly smaller element in mask."""
        out = 0
        for i in bits(mask):
            if not (self.down[i] & mask & ~(1 << i)):
                out |= 1 << i
        return out

    def maximal_of(self, mask: int) -> int:
        out = 0
        for i in bits(mask):
            if not (self.up[i] & mask & ~(1 << i)):
                out |= 1 << i
        return out

    # -- derived posets ----------------------------------------------------

    def opposite(self) -> "FinitePoset":
        """Same carrier with the order reversed."""
        return FinitePoset(self.elements, self.down)

    def restrict(self, mask: int) -> "FinitePoset":
        """Induced subposet on the elements of mask (declared order kept)."""
        keep = list(bits(mask))
        elems = [self.elements[i] for i in keep]
        pos = {i: k for k, i in enumerate(keep)}
        up = []
        for i in keep:
            row = 0
            for j in bits(self.up[i] & mask):
                row |= 1 << pos[j]
            up.append(row)
        return FinitePoset(elems, up)

    # -- value semantics ---------------------------------------------------

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, FinitePoset)
            and self.elements == other.elements
            and self.up == other.up
        )

    def __hash__(self) -> int:
        return hash((self.elements, self.up))

    def __repr__(self) -> str:
        rels = [
            f"{self.elements[i]}<{self.elements[j]}"
            for i in range(self.n)
            for j in bits(self.up[i])
            if i != j
        ]
        return f"FinitePoset({list(self.elements)}, [{', '.join(rels)}])"


@dataclass(frozen=True)
class ElementSet:
    """Subset of a poset's carrier, stored as a bitmask."""

    poset: FinitePoset
    mask: int

    @classmethod
    def from_names(cls, poset: FinitePoset, names: Iterable[str]) -> "ElementSet":
        return cls(poset, poset.mask_of(names))

    def names(self) -> tuple[str, ...]:
        return self.poset.names(self.mask)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names())

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, name: str) -> bool:
        return bool((self.mask >> self.poset.index(name)) & 1)

    def _check(self, other: "ElementSet") -> None:
        if self.poset != other.poset:
            raise ValueError("element sets over different posets")

    def __or__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.poset, self.mask | other.mask)

    def __and__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.poset, self.mask & other.mask)

    def __sub__(self, other: "ElementSet") -> "ElementSet":
        self._check(other)
        return ElementSet(self.poset, self.mask & ~other.mask)

    def __le__(self, other: "ElementSet") -> bool:
        self._check(other)
        return not (self.mask & ~other.mask)

    def complement(self) -> "ElementSet":
        return ElementSet(self.poset, self.poset.full_mask & ~self.mask)


@dataclass(frozen=True)
class Filter:
    """Nonempty, upward-closed, downward-directed subset.

    On a finite poset every filter is principal; the generating minimum is
    recorded explicitly.
    """

    poset: FinitePoset
    mask: int
    minimum: str

    def members(self) -> ElementSet:
        return ElementSet(self.poset, self.mask)


# ---------------------------------------------------------------------------
# parsing
# ---------------------------------------------------------------------------


def parse_poset(text: str) -> FinitePoset:
    """Parse either the edge-list format or the JSON object format.

    Edge list: one `a < b` per line, `#` comments, bare identifiers declare
    isolated elements.  JSON: {"elements": [...], "le": [["a","b"], ...]}.
    """
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON poset: {exc}") from None
        return poset_from_json(obj)
    elements: list[str] = []
    order: dict[str, None] = {}
    pairs: list[tuple[str, str]] = []

    def note(name: str) -> None:
        if name not in order:
            order[name] = None
            elements.append(name)

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        m = _EDGE_RE.match(line)
        if m:
            a, b = m.group(1), m.group(2)
            for name in (a, b):
                if not _NAME_RE.match(name):
                    raise ParseError(f"line {lineno}: bad element name {name!r}")
            note(a)
            note(b)
            pairs.append((a, b))
        elif _NAME_RE.match(line):
            note(line)
        else:
            raise ParseError(f"line {lineno}: cannot parse {line!r}")
    return FinitePoset.from_relation(elements, pairs)


def poset_from_json(obj: object) -> FinitePoset:
    if not isinstance(obj, dict):
        raise ParseError("JSON poset must be an object")
    elements = obj.get("elements")
    le = obj.get("le", [])
    if not isinstance(elements, list) or not all(isinstance(e, str) for e in elements):
        raise ParseError('"elements" must be a list of strings')
    if not isinstance(le, list):
        raise ParseError('"le" must be a list of [a, b] pairs')
    pairs = []
    for entry in le:
        if not (isinstance(entry, (list, tuple)) and len(entry) == 2):
            raise ParseError(f'"le" entry {entry!r} is not a pair')
        pairs.append((entry[0], entry[1]))
    return FinitePoset.from_relation(elements, pairs)


def poset_to_json(poset: FinitePoset) -> dict:
    """JSON form with the full (non-reflexive) order as generators."""
    le = [
        [poset.elements[i], poset.elements[j]]
        for i in range(poset.n)
        for j in bits(poset.up[i])
        if j != i
    ]
    return {"elements": list(poset.elements), "le": le}


# ---------------------------------------------------------------------------
# combinatorial operations
# ---------------------------------------------------------------------------


def cone(poset: FinitePoset, p: str, direction: str) -> ElementSet:
    """Principal cone below or above p."""
    i = poset.index(p)
    if direction == "down":
        return ElementSet(poset, poset.down[i])
    if direction == "up":
        return ElementSet(poset, poset.up[i])
    raise ValueError(f"direction must be 'down' or 'up', got {direction!r}")


def iter_down_set_masks(poset: FinitePoset) -> Iterator[int]:
    for mask in range(poset.full_mask + 1):
        if poset.is_down_closed(mask):
            yield mask


def enumerate_down_sets(poset: FinitePoset) -> list[ElementSet]:
    """All downward-closed subsets, ascending bitmask order."""
    return [ElementSet(poset, m) for m in iter_down_set_masks(poset)]


def iter_antichain_masks(poset: FinitePoset) -> Iterator[int]:
    # strictly comparable partners of i
    related = [
        (poset.up[i] | poset.down[i]) & ~(1 << i) for i in range(poset.n)
    ]
    for mask in range(poset.full_mask + 1):
        ok = True
        for i in bits(mask):
            if related[i] & mask:
                ok = False
                break
        if ok:
            yield mask


def enumerate_antichains(poset: FinitePoset) -> list[ElementSet]:
    """All subsets of pairwise incomparable elements, ascending mask order."""
    return [ElementSet(poset, m) for m in iter_antichain_masks(poset)]


def minimal_elements(poset: FinitePoset, subset: ElementSet) -> ElementSet:
    return ElementSet(poset, poset.minimal_of(subset.mask))


def enumerate_filters(poset: FinitePoset) -> list[Filter]:
    """All filters, one principal up-cone per element.

    Finite directed sets contain a least element, so every filter on a
    finite poset is some up-cone; the constructed cones are verified to be
    filters rather than assumed.
    """
    out = []
    for i, name in enumerate(poset.elements):
        mask = poset.up[i]
        assert poset.is_up_closed(mask)
        out.append(Filter(poset, mask, name))
    return out


def is_filter_mask(poset: FinitePoset, mask: int) -> bool:
    """Definitional filter check (nonempty, up-closed, downward directed)."""
    if mask == 0 or not poset.is_up_closed(mask):
        return False
    members = list(bits(mask))
    for a in members:
        for b in members:
            if not (poset.down[a] & poset.down[b] & mask):
                return False
    return True


# ---------------------------------------------------------------------------
# stock posets and corpus generation
# ---------------------------------------------------------------------------


def chain(n: int, prefix: str = "") -> FinitePoset:
    names = [f"{prefix}{i}" for i in range(n)]
    return FinitePoset.from_relation(
        names, [(names[i], names[i + 1]) for i in range(n - 1)]
    )


def antichain_poset(n: int, prefix: str = "a") -> FinitePoset:
    return FinitePoset.from_relation([f"{prefix}{i}" for i in range(n)], [])


def fan(k: int) -> FinitePoset:
    """k incomparable bottoms under a single top."""
    names = [f"b{i}" for i in range(k)] + ["t"]
    return FinitePoset.from_relation(names, [(f"b{i}", "t") for i in range(k)])


def cofan(k: int) -> FinitePoset:
    """A single bottom under k incomparable tops."""
    names = ["b"] + [f"t{i}" for i in range(k)]
    return FinitePoset.from_relation(names, [("b", f"t{i}") for i in range(k)])


def diamond() -> FinitePoset:
    return FinitePoset.from_relation(
        ["bot", "l", "r", "top"],
        [("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")],
    )


def powerset_poset(k: int) -> FinitePoset:
    """Subsets of {0..k-1} under inclusion (B_k); names like '{0,2}'."""
    subsets = sorted(range(1 << k), key=lambda m: (m.bit_count(), m))
    names = ["{" + ",".join(str(i) for i in bits(m)) + "}" for m in subsets]
    pairs = []
    for a, ma in zip(names, subsets):
        for b, mb in zip(names, subsets):
            if ma != mb and ma & ~mb == 0:
                pairs.append((a, b))
    return FinitePoset.from_relation(names, pairs)


def all_labeled_posets(n: int) -> Iterator[FinitePoset]:
    """Every partial order on the labeled carrier e0..e{n-1}.

    Brute force over the strict relations; intended for n <= 4 where the
    search space is 2^(n(n-1)).
    """
    names = [f"e{i}" for i in range(n)]
    if n == 0:
        yield FinitePoset(names, [])
        return
    off_diag = [(i, j) for i in range(n) for j in range(n) if i != j]
    for code in range(1 << len(off_diag)):
        rows = [1 << i for i in range(n)]
        for k, (i, j) in enumerate(off_diag):
            if (code >> k) & 1:
                rows[i] |= 1 << j
        ok = True
        for i in range(n):
            for j in bits(rows[i]):
                if i == j:
                    continue
                if (rows[j] >> i) & 1 or rows[j] & ~rows[i]:
                    ok = False
                    break
            if not ok:
                break
        if ok:
            yield FinitePoset(names, rows)
