"""Acceptance suite: one test per criterion, each printing a pass/fail line.

Run with `pytest tests/test_acceptance.py -v -s` to see the lines as they
print.  The corpus is every labeled poset on at most 4 elements plus a
fixed set of five-element posets; oracles are exact and budgets are pinned
here, not tuned at run time.
"""

import random
import time
from fractions import Fraction

from grotop.counting import antichain_census, count_report, verify_inequalities
from grotop.dcpo import filter_completion, is_spectral
from grotop.families import OMEGA, PrincipalPoint, get_family
from grotop.patch import (
    converges_pointwise,
    metric,
    patch_closure,
    scott_set_closure,
    strong_closure,
)
from grotop.posets import ElementSet, parse_poset, powerset_poset
from grotop.sieves import (
    enumerate_topologies,
    points_of_topology,
    topology_from_points,
)

from conftest import (
    FIVE_POSETS,
    labeled_corpus,
    naive_down_sets,
    naive_topologies,
)

CORPUS4 = labeled_corpus(4)
FULL_CORPUS = CORPUS4 + list(FIVE_POSETS.values())


def criterion(number: int, name: str):
    """Print the pass/fail line for a criterion, whatever happens inside."""

    class _Reporter:
        def __enter__(self):
            self.start = time.perf_counter()
            return self

        def __exit__(self, exc_type, exc, tb):
            elapsed = time.perf_counter() - self.start
            status = "PASS" if exc_type is None else "FAIL"
            print(f"ACCEPTANCE {number} ({name}): {status} [{elapsed:.2f}s]")
            return False

    return _Reporter()


def all_subsets(poset):
    for mask in range(poset.full_mask + 1):
        yield ElementSet(poset, mask)


def test_criterion_1_classification_at_finite_scale():
    with criterion(1, "classification at finite scale"):
        start = time.perf_counter()
        for poset in FULL_CORPUS:
            enumerated = enumerate_topologies(poset)
            assert len(enumerated) == 2**poset.n
            classified = {}
            for subset in all_subsets(poset):
                topology = topology_from_points(poset, subset.names())
                classified.setdefault(topology, []).append(subset.mask)
            # each enumerated topology arises from exactly one subset
            assert set(classified) == set(enumerated)
            assert all(len(sources) == 1 for sources in classified.values())
        assert time.perf_counter() - start < 300.0


def test_criterion_2_galois_round_trips():
    with criterion(2, "Galois round trips"):
        start = time.perf_counter()
        for poset in FULL_CORPUS:
            for subset in all_subsets(poset):
                topology = topology_from_points(poset, subset.names())
                assert points_of_topology(topology).mask == subset.mask
            for topology in enumerate_topologies(poset):
                back = topology_from_points(
                    poset, points_of_topology(topology).names()
                )
                assert back == topology
        assert time.perf_counter() - start < 60.0


def test_criterion_3_closure_chain():
    with criterion(3, "closure chain and operator laws"):
        operators = (strong_closure, patch_closure, scott_set_closure)
        for poset in FULL_CORPUS:
            assert poset.n <= 5
            x = filter_completion(poset)
            full = x.x_poset.full_mask
            for mask in range(full + 1):
                s = ElementSet(x.x_poset, mask)
                strong = strong_closure(x, s)
                patch = patch_closure(x, s)
                scott = scott_set_closure(x, s)
                # chain: strong <= patch <= scott, all containing s
                assert s <= strong and strong <= patch and patch <= scott
                # finite carriers: strong and patch closures are the identity
                assert strong.mask == mask and patch.mask == mask
                for op in operators:
                    c = op(x, s)
                    assert s <= c  # extensive
                    assert op(x, c).mask == c.mask  # idempotent
            # monotone: over all nested pairs (a subset of b)
            for b_mask in range(full + 1):
                a_mask = b_mask
                while True:
                    a = ElementSet(x.x_poset, a_mask)
                    b = ElementSet(x.x_poset, b_mask)
                    for op in operators:
                        assert op(x, a) <= op(x, b)
                    if a_mask == 0:
                        break
                    a_mask = (a_mask - 1) & b_mask


def test_criterion_4_antichain_down_set_bijection():
    with criterion(4, "antichain/down-set bijection"):
        for poset in FULL_CORPUS:
            census = antichain_census(poset)
            assert census.antichains == census.down_sets_scan
            assert census.down_sets_scan == census.down_sets_recursive
            assert census.bijection_ok
        b3 = powerset_poset(3)
        census = antichain_census(b3)
        assert census.antichains == 20
        assert census.down_sets_scan == census.down_sets_recursive == 20
        assert census.bijection_ok


def test_criterion_5_big_cell_convergence():
    with criterion(5, "big cell convergence"):
        family = get_family("bigcell")
        primes = [p for p in range(2, 98) if all(p % d for d in range(2, p))]
        rule = family.parse_rule("factorial")
        start = time.perf_counter()
        verdict = converges_pointwise(family, rule, OMEGA, primes, budget=10_000)
        alternating = converges_pointwise(
            family,
            family.parse_rule("cycle:2,3"),
            PrincipalPoint(6),
            [2, 3],
            budget=10_000,
        )
        elapsed = time.perf_counter() - start
        assert verdict.outcome == "converges" and verdict.exact
        assert all(verdict.stabilization[str(p)] <= p for p in primes)
        assert alternating.outcome == "diverges"
        assert alternating.diverges_at == "2"
        assert elapsed < 1.0


def test_criterion_6_spectrality_verdicts():
    with criterion(6, "spectrality verdicts"):
        chain_nat = is_spectral(get_family("chain-nat"), levels=64)
        assert chain_nat.outcome == "not-spectral"
        assert chain_nat.escape_prefix[:3] == ("0", "1", "2")
        assert chain_nat.checked_level == 64

        for selector in ("bigcell", "finset-op:3"):
            verdict = is_spectral(get_family(selector), levels=64)
            assert verdict.outcome == "spectral"
            assert verdict.checked_level == 64

        for poset in FULL_CORPUS:
            assert is_spectral(poset).outcome == "spectral"


def _metric_stabilization(family, rule, limit, enumeration, m, budget):
    """Least N with d(x_i, limit) <= 2^-(m+1) for all sampled i >= N; exact
    for eventually periodic rules, scan-certified otherwise."""
    threshold = Fraction(1, 2 ** (m + 1))

    def in_ball(i):
        d = metric(family, rule.point(i), limit, enumeration, depth=m + 1)
        return d.value <= threshold

    if rule.period is not None:
        window = rule.prefix_len + rule.period
        if any(not in_ball(i) for i in range(rule.prefix_len, window)):
            return None
        last_bad = max(
            (i for i in range(rule.prefix_len) if not in_ball(i)), default=-1
        )
        return last_bad + 1
    last_bad = -1
    for i in range(budget + 1):
        if not in_ball(i):
            last_bad = i
    return None if last_bad >= budget else last_bad + 1


def test_criterion_7_metric_convergence_agreement():
    with criterion(7, "metric/convergence agreement"):
        family = get_family("bigcell")
        rng = random.Random(20260808)
        budget = 300
        outcomes = {"converges": 0, "diverges": 0}
        cases = []
        for _ in range(60):
            cycle = [rng.randint(1, 60) for _ in range(rng.randint(1, 4))]
            text = "cycle:" + ",".join(map(str, cycle))
            if rng.random() < 0.4:
                prefix = [rng.randint(1, 60) for _ in range(rng.randint(1, 2))]
                text = f"prefix:[{','.join(map(str, prefix))}];tail:{text}"
            limit = rng.choice(cycle + [rng.randint(1, 60)])
            cases.append((text, PrincipalPoint(limit), rng.randint(2, 7)))
        for _ in range(40):
            limit = OMEGA if rng.random() < 0.5 else PrincipalPoint(rng.randint(2, 120))
            cases.append(("factorial", limit, rng.randint(2, 7)))
        assert len(cases) == 100

        for text, limit, m in cases:
            rule = family.parse_rule(text)
            enumeration = [k + 1 for k in range(m + 1)]
            verdict = converges_pointwise(
                family, rule, limit, enumeration, budget=budget
            )
            assert verdict.outcome in ("converges", "diverges")
            ball_n = _metric_stabilization(
                family, rule, limit, enumeration, m, budget
            )
            if verdict.outcome == "converges":
                assert ball_n is not None
                assert ball_n == max(verdict.stabilization.values(), default=0)
            else:
                assert ball_n is None
            outcomes[verdict.outcome] += 1
        # the generated batch exercises both outcomes
        assert outcomes["converges"] >= 10 and outcomes["diverges"] >= 10


def test_criterion_8_counting_tables():
    with criterion(8, "counting tables"):
        start = time.perf_counter()
        for poset in FULL_CORPUS:
            report = count_report(poset)
            assert verify_inequalities(report).ok
            assert report.coh == report.ep == 2**report.x

        c2 = parse_poset("0 < 1")
        report = count_report(c2)
        assert (report.x, report.cl, report.coh, report.ep, report.gt) == (2, 3, 4, 4, 4)
        assert len(naive_topologies(c2)) == 4
        assert len(naive_down_sets(c2.opposite())) == 3

        v3 = parse_poset("a < t\nb < t")
        report = count_report(v3)
        assert (report.x, report.cl, report.coh, report.ep, report.gt) == (3, 5, 8, 8, 8)
        assert len(naive_topologies(v3)) == 8
        assert len(naive_down_sets(v3.opposite())) == 5
        assert time.perf_counter() - start < 60.0
