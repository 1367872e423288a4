"""Finite-scale counting tables and the cardinality inequality checks.

The table reports, for the filter completion X of a finite poset:

    x    points of X
    cl   Scott-closed subsets of X        (closed subtoposes)
    coh  patches                          (coherent subtoposes)
    ep   strong-closed subsets            (subtoposes with enough points)
    gt   Grothendieck topologies

Each entry is labeled with how it was computed.  Patches and strong-closed
subsets are counted by sweeping every subset through the closure operators
when X is small, and by the discrete-topology formula 2^x otherwise; the
topology count can be enumerated exhaustively or derived from the
subset classification, and both are compared whenever both run.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import lru_cache
from typing import Optional

from .dcpo import filter_completion
from .errors import BudgetExceeded
from .patch import patch_closure, strong_closure
from .posets import (
    ElementSet,
    FinitePoset,
    bits,
    iter_antichain_masks,
    iter_down_set_masks,
)
from .sieves import enumerate_topologies

SCHEMA_VERSION = 1

#: exhaustive topology enumeration is bounded to this carrier size
GT_ENUMERATE_LIMIT = 6

#: closure-operator sweeps cover all 2^x subsets up to this carrier size
SWEEP_LIMIT = 5

#: brute-force subset scans in the census are bounded to this carrier size
CENSUS_SCAN_LIMIT = 16


@dataclass
class CountReport:
    poset: str
    x: int
    cl: int
    coh: int
    ep: int
    gt: int
    methods: dict = dc_field(default_factory=dict)
    gt_cross_check: Optional[dict] = None
    not_computed: dict = dc_field(default_factory=dict)
    schema: int = SCHEMA_VERSION

    def to_json(self) -> dict:
        out = {
            "schema": self.schema,
            "poset": self.poset,
            "x": self.x,
            "cl": self.cl,
            "coh": self.coh,
            "ep": self.ep,
            "gt": self.gt,
            "methods": dict(self.methods),
            "not_computed": dict(self.not_computed),
        }
        if self.gt_cross_check is not None:
            out["gt_cross_check"] = dict(self.gt_cross_check)
        return out

    def render(self) -> str:
        rows = [("x", self.x), ("cl", self.cl), ("coh", self.coh),
                ("ep", self.ep), ("gt", self.gt)]
        width = max(len(str(v)) for _, v in rows)
        lines = [f"poset: {self.poset}"]
        for key, value in rows:
            lines.append(
                f"  {key:<4} {value:>{width}}  [{self.methods.get(key, '?')}]"
            )
        for key, why in self.not_computed.items():
            lines.append(f"  {key}: not computed ({why})")
        return "\n".join(lines)


@lru_cache(maxsize=1024)
def count_down_sets(poset: FinitePoset) -> int:
    """Exact down-set count by recursion over maximal elements (independent
    of the scanning enumeration)."""

    @lru_cache(maxsize=None)
    def rec(mask: int) -> int:
        if mask == 0:
            return 1
        m = max(bits(poset.maximal_of(mask)))
        return rec(mask & ~(1 << m)) + rec(mask & ~poset.down[m])

    return rec(poset.full_mask)


def count_report(poset: FinitePoset, gt_mode: str = "auto") -> CountReport:
    """Assemble the counting table for a finite poset.

    gt_mode: "enumerate" (exhaustive search, carrier <= 6), "formula"
    (classification count 2^x), or "auto" (both when feasible).
    """
    if gt_mode not in ("auto", "enumerate", "formula"):
        raise ValueError(f"unknown gt mode {gt_mode!r}")
    x = poset.n
    dcpo = filter_completion(poset)
    methods: dict[str, str] = {"x": "enumerated"}

    cl = count_down_sets(dcpo.x_poset)
    methods["cl"] = "enumerated"

    if x <= SWEEP_LIMIT:
        subsets = [ElementSet(dcpo.x_poset, m) for m in range(1 << x)]
        coh = sum(1 for s in subsets if patch_closure(dcpo, s).mask == s.mask)
        ep = sum(1 for s in subsets if strong_closure(dcpo, s).mask == s.mask)
        methods["coh"] = methods["ep"] = "enumerated"
        if coh != 2**x or ep != 2**x:
            raise AssertionError(
                f"closure sweep disagrees with the discrete count on {poset!r}"
            )
    else:
        coh = ep = 2**x
        methods["coh"] = methods["ep"] = "formula"

    formula_gt = 2**x
    enumerated_gt = None
    if gt_mode == "enumerate" or (gt_mode == "auto" and x <= GT_ENUMERATE_LIMIT):
        if x > GT_ENUMERATE_LIMIT:
            raise BudgetExceeded(
                f"exhaustive topology enumeration supports at most "
                f"{GT_ENUMERATE_LIMIT} elements; use the formula mode"
            )
        enumerated_gt = len(enumerate_topologies(poset))

    cross = None
    if enumerated_gt is not None:
        cross = {"enumerated": enumerated_gt, "formula": formula_gt,
                 "agree": enumerated_gt == formula_gt}
        if not cross["agree"]:
            raise AssertionError(
                f"enumeration found {enumerated_gt} topologies on {poset!r}, "
                f"classification predicts {formula_gt}"
            )
        gt = enumerated_gt
        methods["gt"] = "enumerated"
    else:
        gt = formula_gt
        methods["gt"] = "formula"

    return CountReport(
        poset=repr(poset),
        x=x,
        cl=cl,
        coh=coh,
        ep=ep,
        gt=gt,
        methods=methods,
        gt_cross_check=cross,
        not_computed={"gt<=2^cl": "nucleus bound not computed"},
    )


@dataclass(frozen=True)
class InequalityVerdict:
    checks: tuple[tuple[str, int, int, bool], ...]
    skipped: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return all(passed for _, _, _, passed in self.checks)

    def failures(self) -> list[str]:
        return [
            f"{name}: {lhs} > {rhs}"
            for name, lhs, rhs, passed in self.checks
            if not passed
        ]

    def render(self) -> str:
        lines = []
        for name, lhs, rhs, passed in self.checks:
            lines.append(f"  {'ok ' if passed else 'FAIL'} {name}: {lhs} <= {rhs}")
        for name in self.skipped:
            lines.append(f"  skip {name}")
        return "\n".join(lines)


def verify_inequalities(report: CountReport) -> InequalityVerdict:
    """Finite-scale instantiation of the cardinality diamond."""
    checks = (
        ("x <= cl", report.x, report.cl, report.x <= report.cl),
        ("cl <= coh", report.cl, report.coh, report.cl <= report.coh),
        ("coh <= ep", report.coh, report.ep, report.coh <= report.ep),
        ("ep <= gt", report.ep, report.gt, report.ep <= report.gt),
        ("cl <= 2^x", report.cl, 2**report.x, report.cl <= 2**report.x),
    )
    return InequalityVerdict(checks, skipped=("gt <= 2^cl (nucleus bound)",))


@dataclass(frozen=True)
class AntichainCensus:
    antichains: int
    down_sets_scan: int
    down_sets_recursive: int
    bijection_ok: bool

    @property
    def consistent(self) -> bool:
        return (
            self.antichains == self.down_sets_scan == self.down_sets_recursive
            and self.bijection_ok
        )


def antichain_census(poset: FinitePoset, scan_limit: int = CENSUS_SCAN_LIMIT) -> AntichainCensus:
    """Count antichains and down-sets and verify the finite bijection.

    Down-sets are counted twice (subset scan and recursion over a maximal
    element) and the antichain-to-down-set map, antichain A |-> complement
    of the up-closure of A, is checked to be a bijection by recovering A as
    the minimal elements of its up-closure.
    """
    if poset.n > scan_limit:
        raise BudgetExceeded(
            f"census subset scans support at most {scan_limit} elements"
        )
    antichain_masks = list(iter_antichain_masks(poset))
    down_masks = set(iter_down_set_masks(poset))
    images = set()
    bijection_ok = True
    for a in antichain_masks:
        up = poset.up_closure(a)
        if poset.minimal_of(up) != a:
            bijection_ok = False
        images.add(poset.full_mask & ~up)
    if images != down_masks:
        bijection_ok = False
    return AntichainCensus(
        antichains=len(antichain_masks),
        down_sets_scan=len(down_masks),
        down_sets_recursive=count_down_sets(poset),
        bijection_ok=bijection_ok,
    )


def census_to_json(census: AntichainCensus) -> dict:
    return {
        "antichains": census.antichains,
        "down_sets_scan": census.down_sets_scan,
        "down_sets_recursive": census.down_sets_recursive,
        "bijection_ok": census.bijection_ok,
    }
