"""Symbolic countable poset families with decidable order and truncations.

Built-in selectors:

    chain-nat            natural numbers, usual order
    chain-nat-op         natural numbers, reversed order
    almost-discrete:<n>  n incomparable atoms below a single top ("omega" for
                         an unbounded atom supply)
    finset:<n>           subsets of an n-element index set, inclusion
    finset-op:<n>        same carrier, reversed inclusion
    bigcell              positive naturals, m <= n iff n divides m

Element codes are ints, strings, or frozensets depending on the family, and
every family renders/parses them deterministically.  Points of the filter
completion carry finite descriptions: principal points, the whole-poset
filter of a downward-directed family, and supernatural numbers (finite
exception maps over a default exponent of 0 or infinity).
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Optional, Union

from .errors import BadCode, ParseError, TooLarge, UndecidableMembership
from .posets import MAX_ELEMENTS, FinitePoset

INF = math.inf
Exponent = Union[int, float]


# ---------------------------------------------------------------------------
# arithmetic helpers
# ---------------------------------------------------------------------------


@lru_cache(maxsize=4096)
def factorize(n: int) -> tuple[tuple[int, int], ...]:
    if n < 1:
        raise BadCode(f"cannot factorize {n}; positive natural expected")
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            e = 0
            while n % d == 0:
                n //= d
                e += 1
            out.append((d, e))
        d += 1 if d == 2 else 2
    if n > 1:
        out.append((n, 1))
    return tuple(out)


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == ((n, 1),)


def factorial_valuation(i: int, q: int) -> int:
    """Exponent of the prime q in i! (Legendre sum); avoids the big integer."""
    total = 0
    power = q
    while power <= i:
        total += i // power
        power *= q
    return total


def prime_powers(count: int) -> list[int]:
    out = []
    m = 2
    while len(out) < count:
        if len(factorize(m)) == 1:
            out.append(m)
        m += 1
    return out


# ---------------------------------------------------------------------------
# points of the filter completion
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PrincipalPoint:
    """The filter generated by a single element."""

    code: object


@dataclass(frozen=True)
class TopFilterPoint:
    """The whole poset as a filter (exists when P is downward directed)."""


TOP_FILTER = TopFilterPoint()


@dataclass(frozen=True)
class Supernatural:
    """Formal product of primes with exponents in N u {inf}.

    `exceptions` lists (prime, exponent) pairs differing from `default`;
    the default applies to every other prime and is restricted to 0 or inf
    so membership stays decidable from the finite description.
    """

    exceptions: tuple[tuple[int, Exponent], ...] = ()
    default: Exponent = 0

    def __post_init__(self) -> None:
        if self.default not in (0, INF):
            raise BadCode("supernatural default exponent must be 0 or inf")
        seen = set()
        for q, e in self.exceptions:
            if not is_prime(q):
                raise BadCode(f"{q} is not prime")
            if q in seen:
                raise BadCode(f"prime {q} listed twice")
            seen.add(q)
            if e == self.default:
                raise BadCode(f"exception {q}^{e} equals the default exponent")
            if e != INF and (not isinstance(e, int) or e < 0):
                raise BadCode(f"bad exponent {e!r} for prime {q}")

    def exponent(self, q: int) -> Exponent:
        for prime, e in self.exceptions:
            if prime == q:
                return e
        return self.default

    def is_natural(self) -> bool:
        return self.default == 0 and all(e != INF for _, e in self.exceptions)

    def to_natural(self) -> int:
        if not self.is_natural():
            raise BadCode(f"{format_supernatural(self)} is not a natural number")
        n = 1
        for q, e in self.exceptions:
            n *= q ** int(e)
        return n

    @classmethod
    def from_natural(cls, n: int) -> "Supernatural":
        return cls(factorize(n), 0)


OMEGA = Supernatural((), INF)


def _canonical(exceptions: Iterable[tuple[int, Exponent]], default: Exponent) -> Supernatural:
    kept = tuple(sorted((q, e) for q, e in exceptions if e != default))
    return Supernatural(kept, default)


SupernaturalLike = Union[int, Supernatural]


def _as_supernatural(x: SupernaturalLike) -> Supernatural:
    if isinstance(x, Supernatural):
        return x
    return Supernatural.from_natural(x)


def supernatural_leq(x: SupernaturalLike, y: SupernaturalLike) -> bool:
    """Divisibility: exponentwise comparison at every prime."""
    a, b = _as_supernatural(x), _as_supernatural(y)
    if a.default > b.default:
        return False
    primes = {q for q, _ in a.exceptions} | {q for q, _ in b.exceptions}
    return all(a.exponent(q) <= b.exponent(q) for q in primes)


def supernatural_join(x: SupernaturalLike, y: SupernaturalLike) -> Supernatural:
    """Exponentwise maximum (lcm on naturals)."""
    a, b = _as_supernatural(x), _as_supernatural(y)
    default = max(a.default, b.default)
    primes = {q for q, _ in a.exceptions} | {q for q, _ in b.exceptions}
    return _canonical(
        ((q, max(a.exponent(q), b.exponent(q))) for q in primes), default
    )


_SUPER_FACTOR_RE = re.compile(r"^(\d+)(?:\^(\d+|inf))?$")


def parse_supernatural(text: str) -> Supernatural:
    """Literal syntax: `2^inf*3^2` with optional `;default=inf`; also plain
    naturals and `omega`."""
    body = text.strip()
    default: Exponent = 0
    if ";" in body:
        body, _, tail = body.partition(";")
        tail = tail.strip()
        if tail == "default=inf":
            default = INF
        elif tail == "default=0":
            default = 0
        else:
            raise ParseError(f"bad supernatural suffix {tail!r}")
        body = body.strip()
    if body.lower() in ("omega", "Ω".lower()):
        if default == 0:
            default = INF
        return Supernatural((), default)
    if body.isdigit():
        n = int(body)
        if n < 1:
            raise ParseError("naturals in the big cell start at 1")
        return _canonical(factorize(n), default)
    exceptions: list[tuple[int, Exponent]] = []
    for factor in body.split("*"):
        m = _SUPER_FACTOR_RE.match(factor.strip())
        if not m:
            raise ParseError(f"bad supernatural factor {factor!r}")
        q = int(m.group(1))
        e: Exponent = INF if m.group(2) == "inf" else int(m.group(2) or 1)
        exceptions.append((q, e))
    try:
        return _canonical(exceptions, default)
    except BadCode as exc:
        raise ParseError(str(exc)) from None


def format_supernatural(x: Supernatural) -> str:
    if x == OMEGA:
        return "omega"
    if x.is_natural():
        return str(x.to_natural())
    factors = "*".join(
        f"{q}^{'inf' if e == INF else int(e)}" for q, e in x.exceptions
    )
    suffix = ";default=inf" if x.default == INF else ""
    if not factors:
        return "omega" + suffix if x.default == INF else "1"
    return factors + suffix


@dataclass(frozen=True)
class FactorialPoint:
    """The principal point of i!, kept symbolic so membership uses prime
    valuations instead of the literal factorial."""

    index: int

    def valuation(self, q: int) -> int:
        return factorial_valuation(self.index, q)


# ---------------------------------------------------------------------------
# sequence rules and set presentations
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SequenceRule:
    """Finitely described map index -> point of X.

    `period`/`prefix_len` mark eventually periodic rules (verdicts about
    them are exact); `ascending_sup` certifies that consecutive points
    ascend in X with the given supremum.
    """

    family: "PosetFamily"
    describe: str
    fn: Callable[[int], object]
    period: Optional[int] = None
    prefix_len: int = 0
    ascending_sup: Optional[object] = None

    def point(self, i: int) -> object:
        if i < 0:
            raise BadCode("sequence index must be nonnegative")
        return self.fn(i)


@dataclass(frozen=True)
class PointSetPresentation:
    """A subset of X given by explicit points plus an optional sequence.

    The explicit list is exhaustive when no rule is attached; rule-described
    sets are only ever sampled up to a budget.
    """

    points: tuple = ()
    rule: Optional[SequenceRule] = None

    @property
    def exhaustive(self) -> bool:
        return self.rule is None

    def sample(self, budget: int) -> list:
        out = list(self.points)
        seen = set(out)
        if self.rule is not None:
            for i in range(budget + 1):
                x = self.rule.point(i)
                if x not in seen:
                    seen.add(x)
                    out.append(x)
        return out


@dataclass(frozen=True)
class FamilySieve:
    """A presented sieve: base element plus a generator enumeration."""

    base: object
    generators: tuple = ()
    rule: Optional[Callable[[int], object]] = None
    describe: str = ""

    def members(self, budget: int) -> list:
        out = list(self.generators)
        seen = set(out)
        if self.rule is not None:
            for i in range(budget + 1):
                g = self.rule(i)
                if g not in seen:
                    seen.add(g)
                    out.append(g)
        return out

    @property
    def exhaustive(self) -> bool:
        return self.rule is None


@dataclass(frozen=True)
class SpectralWitness:
    """Dominating tops plus a binary meet rule in the ambient order."""

    tops: tuple
    meet: Callable[[object, object], Optional[object]]


@dataclass(frozen=True)
class EscapeChain:
    """Strictly ascending cofinal chain certifying non-compactness."""

    chain: Callable[[int], object]
    cofinal_index: Callable[[object], int]


# ---------------------------------------------------------------------------
# families
# ---------------------------------------------------------------------------


class PosetFamily:
    name: str = ""
    description: str = ""
    infinite: bool = True

    # -- order on element codes -------------------------------------------

    def leq(self, p: object, q: object) -> bool:
        raise NotImplementedError

    def elements_to_level(self, level: int) -> list:
        """Monotone, nested finite truncation carriers."""
        raise NotImplementedError

    def nth_element(self, i: int) -> object:
        raise NotImplementedError

    def element_name(self, code: object) -> str:
        return str(code)

    def parse_element(self, text: str) -> object:
        raise NotImplementedError

    def separating(self, count: int) -> list:
        """Prefix of a separating set of finite elements."""
        return [self.nth_element(i) for i in range(count)]

    # -- certificates -------------------------------------------------------

    spectral_witness: Optional[SpectralWitness] = None
    escape_chain: Optional[EscapeChain] = None

    def meet(self, p: object, q: object) -> Optional[object]:
        if self.spectral_witness is None:
            raise NotImplementedError
        return self.spectral_witness.meet(p, q)

    # -- points --------------------------------------------------------------

    def parse_point(self, text: str) -> object:
        body = text.strip()
        if body.startswith("pt:"):
            return PrincipalPoint(self.parse_element(body[3:]))
        return self._parse_symbolic_point(body)

    def _parse_symbolic_point(self, body: str) -> object:
        # default: only principal points exist
        return PrincipalPoint(self.parse_element(body))

    def point_name(self, x: object) -> str:
        if isinstance(x, PrincipalPoint):
            return f"pt:{self.element_name(x.code)}"
        raise UndecidableMembership(f"unknown point {x!r} for family {self.name}")

    def point_is_principal(self, x: object) -> bool:
        return isinstance(x, PrincipalPoint)

    def point_membership(self, p: object, x: object) -> bool:
        """The bit [p <= x]: does the filter x contain the element p."""
        if isinstance(x, PrincipalPoint):
            return self.leq(x.code, p)
        raise UndecidableMembership(
            f"membership for point {x!r} is not defined in family {self.name}"
        )

    def point_leq(self, x: object, y: object) -> bool:
        """Filter inclusion between finitely described points."""
        if isinstance(x, PrincipalPoint):
            return self.point_membership(x.code, y)
        raise UndecidableMembership(
            f"cannot compare point {x!r} within family {self.name}"
        )

    # -- rules ----------------------------------------------------------------

    def parse_rule(self, text: str) -> SequenceRule:
        body = text.strip()
        if body.startswith("const:"):
            pt = self.parse_point(body[len("const:"):])
            return SequenceRule(self, body, lambda i, _p=pt: _p, period=1)
        if body == "identity":
            return self._identity_rule()
        if body == "factorial":
            return self._factorial_rule()
        if body.startswith("cycle:"):
            pts = [self.parse_point(tok) for tok in body[len("cycle:"):].split(",")]
            if not pts:
                raise ParseError("cycle rule needs at least one point")
            return SequenceRule(
                self, body, lambda i, _p=tuple(pts): _p[i % len(_p)], period=len(pts)
            )
        m = re.match(r"^prefix:\[(.*)\];tail:(.+)$", body)
        if m:
            raw = m.group(1).strip()
            pts = tuple(self.parse_point(tok) for tok in raw.split(",")) if raw else ()
            tail = self.parse_rule(m.group(2))

            def fn(i: int, _pts=pts, _tail=tail) -> object:
                return _pts[i] if i < len(_pts) else _tail.point(i - len(_pts))

            return SequenceRule(
                self,
                body,
                fn,
                period=tail.period,
                prefix_len=len(pts) + tail.prefix_len,
            )
        raise ParseError(f"cannot parse sequence rule {text!r}")

    def _identity_rule(self) -> SequenceRule:
        if not self.infinite:
            raise ParseError(
                f"identity rule needs an infinite family, {self.name} is finite"
            )
        return SequenceRule(
            self, "identity", lambda i: PrincipalPoint(self.nth_element(i))
        )

    def _factorial_rule(self) -> SequenceRule:
        raise ParseError(f"factorial rule is not defined for family {self.name}")

    # -- truncation -------------------------------------------------------------

    def truncate(self, level: int) -> FinitePoset:
        if level < 0:
            raise BadCode("truncation level must be nonnegative")
        codes = self.elements_to_level(level)
        if len(codes) > MAX_ELEMENTS:
            raise TooLarge(
                f"truncation of {self.name} at level {level} has {len(codes)} "
                f"elements, supported maximum is {MAX_ELEMENTS}"
            )
        names = [self.element_name(c) for c in codes]
        pairs = [
            (names[i], names[j])
            for i, a in enumerate(codes)
            for j, b in enumerate(codes)
            if i != j and self.leq(a, b)
        ]
        return FinitePoset.from_relation(names, pairs)


class ChainNat(PosetFamily):
    """Natural numbers with the usual order; not spectral (ascending escape)."""

    name = "chain-nat"
    description = "natural numbers 0 < 1 < 2 < ..."

    def __init__(self) -> None:
        self.escape_chain = EscapeChain(chain=lambda i: i, cofinal_index=lambda p: p)
        self.spectral_witness = None

    def leq(self, p, q) -> bool:
        return p <= q

    def elements_to_level(self, level: int) -> list:
        return list(range(level + 1))

    def nth_element(self, i: int) -> int:
        return i

    def parse_element(self, text: str):
        if not text.strip().isdigit():
            raise BadCode(f"bad chain-nat element {text!r}")
        return int(text)

    def meet(self, p, q):
        return min(p, q)


class ChainNatOp(PosetFamily):
    """Natural numbers reversed; X is the chain 0 < 1 < ... < inf."""

    name = "chain-nat-op"
    description = "natural numbers with the order reversed"

    def __init__(self) -> None:
        self.spectral_witness = SpectralWitness(tops=(0,), meet=lambda p, q: max(p, q))

    def leq(self, p, q) -> bool:
        return q <= p

    def elements_to_level(self, level: int) -> list:
        return list(range(level + 1))

    def nth_element(self, i: int) -> int:
        return i

    def parse_element(self, text: str):
        if not text.strip().isdigit():
            raise BadCode(f"bad chain-nat-op element {text!r}")
        return int(text)

    def _parse_symbolic_point(self, body: str):
        if body.lower() in ("inf", "infinity", "omega"):
            return TOP_FILTER
        return PrincipalPoint(self.parse_element(body))

    def point_name(self, x) -> str:
        if isinstance(x, TopFilterPoint):
            return "inf"
        return super().point_name(x)

    def point_is_principal(self, x) -> bool:
        return not isinstance(x, TopFilterPoint)

    def point_membership(self, p, x) -> bool:
        if isinstance(x, TopFilterPoint):
            return True
        return super().point_membership(p, x)

    def point_leq(self, x, y) -> bool:
        if isinstance(x, TopFilterPoint):
            return isinstance(y, TopFilterPoint)
        return super().point_leq(x, y)

    def _identity_rule(self) -> SequenceRule:
        return SequenceRule(
            self,
            "identity",
            lambda i: PrincipalPoint(i),
            ascending_sup=TOP_FILTER,
        )

    def _factorial_rule(self) -> SequenceRule:
        return SequenceRule(
            self,
            "factorial",
            lambda i: PrincipalPoint(math.factorial(i)),
            ascending_sup=TOP_FILTER,
        )


class AlmostDiscrete(PosetFamily):
    """Incomparable atoms below one top; `size=None` means unbounded atoms."""

    name = "almost-discrete"
    TOP = "1"

    def __init__(self, size: Optional[int]) -> None:
        if size is not None and size < 0:
            raise BadCode("atom count must be nonnegative")
        self.size = size
        self.infinite = size is None
        self.name = f"almost-discrete:{'omega' if size is None else size}"
        self.description = (
            "one top above "
            + ("an unbounded supply of" if size is None else str(size))
            + " incomparable atoms"
        )

        def meet(p, q):
            if p == q:
                return p
            if p == self.TOP:
                return q
            if q == self.TOP:
                return p
            return None

        self.spectral_witness = SpectralWitness(tops=(self.TOP,), meet=meet)

    def leq(self, p, q) -> bool:
        return p == q or q == self.TOP

    def _atoms(self, count: int) -> list:
        if self.size is not None:
            count = min(count, self.size)
        return [f"p{i}" for i in range(count)]

    def elements_to_level(self, level: int) -> list:
        return [self.TOP] + self._atoms(level)

    def nth_element(self, i: int):
        if i == 0:
            return self.TOP
        if self.size is not None and i - 1 >= self.size:
            raise BadCode(f"{self.name} has no element at position {i}")
        return f"p{i - 1}"

    def parse_element(self, text: str):
        body = text.strip()
        if body == self.TOP:
            return body
        m = re.match(r"^p(\d+)$", body)
        if not m or (self.size is not None and int(m.group(1)) >= self.size):
            raise BadCode(f"bad {self.name} element {text!r}")
        return body


class FinSet(PosetFamily):
    """Subsets of a finite index set under inclusion."""

    name = "finset"
    opposite = False

    def __init__(self, size: int) -> None:
        if size < 0 or size > MAX_ELEMENTS:
            raise BadCode(f"index set size must be between 0 and {MAX_ELEMENTS}")
        self.size = size
        self.infinite = False
        base = "finset-op" if self.opposite else "finset"
        self.name = f"{base}:{size}"
        self.description = (
            f"subsets of a {size}-element set, "
            + ("reverse " if self.opposite else "")
            + "inclusion"
        )
        if self.opposite:
            self.spectral_witness = SpectralWitness(
                tops=(frozenset(),), meet=lambda p, q: p | q
            )
        else:
            self.spectral_witness = SpectralWitness(
                tops=(frozenset(range(size)),), meet=lambda p, q: p & q
            )

    def leq(self, p, q) -> bool:
        return q <= p if self.opposite else p <= q

    def _all_subsets(self, width: int) -> list:
        width = min(width, self.size)
        subsets = [
            frozenset(i for i in range(width) if (m >> i) & 1)
            for m in range(1 << width)
        ]
        return sorted(subsets, key=lambda s: (len(s), sorted(s)))

    def elements_to_level(self, level: int) -> list:
        return self._all_subsets(level)

    def nth_element(self, i: int):
        full = self._all_subsets(self.size)
        if i >= len(full):
            raise BadCode(f"{self.name} has no element at position {i}")
        return full[i]

    def element_name(self, code) -> str:
        return "{" + ",".join(str(i) for i in sorted(code)) + "}"

    def parse_element(self, text: str):
        body = text.strip()
        if not (body.startswith("{") and body.endswith("}")):
            raise BadCode(f"bad {self.name} element {text!r}")
        inner = body[1:-1].strip()
        items = frozenset(int(tok) for tok in inner.split(",")) if inner else frozenset()
        if any(i < 0 or i >= self.size for i in items):
            raise BadCode(f"element {text!r} is outside the index set")
        return items

    def separating(self, count: int) -> list:
        if self.opposite:
            # singletons separate: (s) is the intersection of ({i}), i in s
            singles = [frozenset([i]) for i in range(self.size)]
            return ([frozenset()] + singles)[:count]
        return super().separating(count)


class FinSetOp(FinSet):
    opposite = True


class BigCell(PosetFamily):
    """Positive naturals where m <= n means n divides m; X is the poset of
    supernatural numbers under divisibility."""

    name = "bigcell"
    description = "positive naturals, m <= n iff n | m"

    def __init__(self) -> None:
        self.spectral_witness = SpectralWitness(
            tops=(1,), meet=lambda p, q: (p * q) // math.gcd(p, q)
        )

    def leq(self, p, q) -> bool:
        return p % q == 0

    def elements_to_level(self, level: int) -> list:
        return list(range(1, level + 1))

    def nth_element(self, i: int) -> int:
        return i + 1

    def parse_element(self, text: str):
        body = text.strip()
        if not body.isdigit() or int(body) < 1:
            raise BadCode(f"bad bigcell element {text!r}")
        return int(body)

    def separating(self, count: int) -> list:
        # (n) is the intersection of the opens of the prime powers in n
        return prime_powers(count)

    def _parse_symbolic_point(self, body: str):
        sn = parse_supernatural(body)
        if sn.is_natural():
            return PrincipalPoint(sn.to_natural())
        return sn

    def point_name(self, x) -> str:
        if isinstance(x, Supernatural):
            return format_supernatural(x)
        if isinstance(x, FactorialPoint):
            return f"{x.index}!"
        return super().point_name(x)

    def point_is_principal(self, x) -> bool:
        if isinstance(x, Supernatural):
            return x.is_natural()
        if isinstance(x, FactorialPoint):
            return True
        return super().point_is_principal(x)

    def point_membership(self, p, x) -> bool:
        if isinstance(x, PrincipalPoint):
            return x.code % p == 0
        if isinstance(x, Supernatural):
            return all(e <= x.exponent(q) for q, e in factorize(p))
        if isinstance(x, FactorialPoint):
            return all(e <= x.valuation(q) for q, e in factorize(p))
        raise UndecidableMembership(f"unknown bigcell point {x!r}")

    def point_leq(self, x, y) -> bool:
        if isinstance(x, PrincipalPoint):
            return self.point_membership(x.code, y)
        if isinstance(x, FactorialPoint):
            return self.point_leq(self._factorial_supernatural(x), y)
        if isinstance(x, Supernatural):
            if isinstance(y, PrincipalPoint):
                return supernatural_leq(x, Supernatural.from_natural(y.code))
            if isinstance(y, FactorialPoint):
                return supernatural_leq(x, self._factorial_supernatural(y))
            if isinstance(y, Supernatural):
                return supernatural_leq(x, y)
        raise UndecidableMembership(f"cannot compare bigcell points {x!r}, {y!r}")

    @staticmethod
    def _factorial_supernatural(x: FactorialPoint) -> Supernatural:
        primes = [q for q in range(2, x.index + 1) if is_prime(q)]
        return _canonical(((q, x.valuation(q)) for q in primes), 0)

    def _identity_rule(self) -> SequenceRule:
        return SequenceRule(
            self, "identity", lambda i: PrincipalPoint(i + 1)
        )

    def _factorial_rule(self) -> SequenceRule:
        return SequenceRule(
            self,
            "factorial",
            lambda i: FactorialPoint(i),
            ascending_sup=OMEGA,
        )


# ---------------------------------------------------------------------------
# registry
# ---------------------------------------------------------------------------

_SELECTOR_HELP = (
    "chain-nat | chain-nat-op | almost-discrete:<n|omega> | finset:<n> | "
    "finset-op:<n> | bigcell"
)


def family_selectors() -> list[tuple[str, str]]:
    return [
        ("chain-nat", ChainNat().description),
        ("chain-nat-op", ChainNatOp().description),
        ("almost-discrete:<n|omega>", "one top above incomparable atoms"),
        ("finset:<n>", "subsets of an n-element set, inclusion"),
        ("finset-op:<n>", "subsets of an n-element set, reverse inclusion"),
        ("bigcell", BigCell().description),
    ]


def get_family(selector: str) -> PosetFamily:
    body = selector.strip()
    if body == "chain-nat":
        return ChainNat()
    if body == "chain-nat-op":
        return ChainNatOp()
    if body == "bigcell":
        return BigCell()
    head, _, arg = body.partition(":")
    if head == "almost-discrete" and arg:
        if arg == "omega":
            return AlmostDiscrete(None)
        if arg.isdigit():
            return AlmostDiscrete(int(arg))
    if head == "finset" and arg.isdigit():
        return FinSet(int(arg))
    if head == "finset-op" and arg.isdigit():
        return FinSetOp(int(arg))
    raise BadCode(f"unknown family {selector!r}; expected one of {_SELECTOR_HELP}")


def family_truncate(family: PosetFamily, level: int) -> FinitePoset:
    return family.truncate(level)


def family_leq(family: PosetFamily, p: str, q: str) -> bool:
    return family.leq(family.parse_element(p), family.parse_element(q))


def family_point_membership(family: PosetFamily, p: str, point: str) -> bool:
    return family.point_membership(
        family.parse_element(p), family.parse_point(point)
    )
