"""Shared fixtures and independent oracles.

The oracles below recompute everything from the public order relation with
plain frozensets of element names: no bitmasks, no shared code paths with
the library internals they check.  They are exponential and meant for the
small posets used in tests.
"""

from itertools import chain as _chain, product

import pytest

from grotop.posets import (
    FinitePoset,
    all_labeled_posets,
    antichain_poset,
    chain,
    cofan,
    diamond,
    fan,
    parse_poset,
    powerset_poset,
)

# ---------------------------------------------------------------------------
# reference posets
# ---------------------------------------------------------------------------


@pytest.fixture(scope="session")
def c2() -> FinitePoset:
    return parse_poset("0 < 1")


@pytest.fixture(scope="session")
def v3() -> FinitePoset:
    return parse_poset("a < t\nb < t")


@pytest.fixture(scope="session")
def b2() -> FinitePoset:
    return powerset_poset(2)


@pytest.fixture(scope="session")
def b3() -> FinitePoset:
    return powerset_poset(3)


def fence5() -> FinitePoset:
    return FinitePoset.from_relation(
        ["a", "b", "c", "d", "e"],
        [("a", "b"), ("c", "b"), ("c", "d"), ("e", "d")],
    )


def diamond_plus_point() -> FinitePoset:
    return FinitePoset.from_relation(
        ["bot", "l", "r", "top", "iso"],
        [("bot", "l"), ("bot", "r"), ("l", "top"), ("r", "top")],
    )


def tree5() -> FinitePoset:
    return FinitePoset.from_relation(
        ["r", "a", "b", "c", "d"],
        [("r", "a"), ("r", "b"), ("a", "c"), ("a", "d")],
    )


#: the fixed five-element posets referenced by the acceptance suite
FIVE_POSETS: dict[str, FinitePoset] = {
    "chain5": chain(5),
    "antichain5": antichain_poset(5),
    "fan5": fan(4),
    "cofan5": cofan(4),
    "fence5": fence5(),
    "diamond_plus_point": diamond_plus_point(),
    "tree5": tree5(),
}


def labeled_corpus(max_n: int) -> list[FinitePoset]:
    return list(
        _chain.from_iterable(all_labeled_posets(n) for n in range(max_n + 1))
    )


@pytest.fixture(scope="session")
def corpus3() -> list[FinitePoset]:
    return labeled_corpus(3)


@pytest.fixture(scope="session")
def named_small() -> list[FinitePoset]:
    return [
        parse_poset("0 < 1"),
        parse_poset("a < t\nb < t"),
        parse_poset("x"),
        chain(3),
        diamond(),
        powerset_poset(2),
        fan(3),
    ]


# ---------------------------------------------------------------------------
# oracles over frozensets of names
# ---------------------------------------------------------------------------


def naive_down_sets(poset: FinitePoset) -> set[frozenset]:
    elems = poset.elements
    out = set()
    for mask in range(1 << len(elems)):
        s = frozenset(e for i, e in enumerate(elems) if (mask >> i) & 1)
        if all(q in s for e in s for q in elems if poset.le(q, e)):
            out.add(s)
    return out


def naive_antichains(poset: FinitePoset) -> set[frozenset]:
    elems = poset.elements
    out = set()
    for mask in range(1 << len(elems)):
        s = frozenset(e for i, e in enumerate(elems) if (mask >> i) & 1)
        if all(a == b or not (poset.le(a, b) or poset.le(b, a)) for a in s for b in s):
            out.add(s)
    return out


def naive_filters(poset: FinitePoset) -> set[frozenset]:
    elems = poset.elements
    out = set()
    for mask in range(1, 1 << len(elems)):
        s = frozenset(e for i, e in enumerate(elems) if (mask >> i) & 1)
        up_closed = all(q in s for e in s for q in elems if poset.le(e, q))
        directed = all(
            any(poset.le(z, a) and poset.le(z, b) for z in s) for a in s for b in s
        )
        if up_closed and directed:
            out.add(s)
    return out


def naive_cone(poset: FinitePoset, p: str, down: bool) -> frozenset:
    if down:
        return frozenset(q for q in poset.elements if poset.le(q, p))
    return frozenset(q for q in poset.elements if poset.le(p, q))


def naive_sieves(poset: FinitePoset, p: str) -> list[frozenset]:
    cone = sorted(naive_cone(poset, p, down=True))
    out = []
    for mask in range(1 << len(cone)):
        s = frozenset(c for i, c in enumerate(cone) if (mask >> i) & 1)
        if all(r in s for q in s for r in poset.elements if poset.le(r, q)):
            out.append(s)
    return out


def naive_is_topology(poset: FinitePoset, covers: dict) -> bool:
    """Direct check of the three axioms on a name-level covers dict."""
    for p in poset.elements:
        if naive_cone(poset, p, down=True) not in covers[p]:
            return False
    for p in poset.elements:
        for sieve in covers[p]:
            for q in poset.elements:
                if poset.le(q, p):
                    if (sieve & naive_cone(poset, q, down=True)) not in covers[q]:
                        return False
    for p in poset.elements:
        for sieve in covers[p]:
            for m in naive_sieves(poset, p):
                if m in covers[p]:
                    continue
                if all(
                    (m & naive_cone(poset, l, down=True)) in covers[l]
                    for l in sieve
                ):
                    return False
    return True


def naive_topologies(poset: FinitePoset) -> list[dict]:
    """Product-filter enumeration; keep to posets with at most ~4 elements."""
    per_element = []
    for p in poset.elements:
        full = naive_cone(poset, p, down=True)
        others = [s for s in naive_sieves(poset, p) if s != full]
        choices = []
        for mask in range(1 << len(others)):
            chosen = frozenset(
                {full} | {others[i] for i in range(len(others)) if (mask >> i) & 1}
            )
            choices.append(chosen)
        per_element.append(choices)
    found = []
    for combo in product(*per_element):
        covers = dict(zip(poset.elements, combo))
        if naive_is_topology(poset, covers):
            found.append(covers)
    return found


def topology_as_name_sets(topology) -> dict:
    """Library topology -> the oracle's name-level representation."""
    return {
        p: frozenset(frozenset(s.member_names()) for s in topology.covers_of(p))
        for p in topology.poset.elements
    }
