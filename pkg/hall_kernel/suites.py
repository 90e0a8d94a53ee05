"""
Named verification suites: oracle, bounds, structure, identities, families
"""

import logging
from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Dict, List, Optional, Tuple

from . import bounds
from .bounds import BoundSelector, beta_table, verify_sweep
from .decomp import decompose, relative_folding, theta
from .families import (fam_alphabetic_factorial, fam_fibo_sature, fam_length_sharp, fam_lyndon_sharp,
                       fam_sharp_en1, fam_super_geom, fam_theta_lower, fam_two_letter_bn, fam_x3,
                       run_family, supergeom_length)
from .hall import HallSet, generate
from .magma import Magma, TreeId
from .oracle import basis_rank, leibniz_inversion_check, multinomial_sum_check, verify_decomposition
from .order import HallOrderSpec, OrderKind, is_lyndon, lyndon_bracketing

logger = logging.getLogger("Suites")

X1 = 1


@dataclass
class SuiteLimits:
    """Sizes the suites run at"""
    oracle_max_len_k2: int = 9
    oracle_max_len_k3: int = 7
    oracle_max_len_k4: int = 6
    rank_max_columns: int = 2187
    budget_k2: int = 9
    budget_k3: int = 7
    budget_sharp: int = 6
    structure_budget: int = 8
    beta_max_n_k2: int = 10
    beta_max_n_k3: int = 8
    factorial_max_n: int = 6
    fibonacci_max_n: int = 12
    supergeom_max_len: int = 14
    sharp_max_n: int = 5
    jobs: int = 1

    def oracle_max_len(self, k: int) -> int:
        if k == 2:
            return self.oracle_max_len_k2
        if k == 3:
            return self.oracle_max_len_k3
        return self.oracle_max_len_k4


@dataclass
class CheckResult:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class SuiteReport:
    suite: str
    checks: List[CheckResult] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    @property
    def failures(self) -> List[CheckResult]:
        return [c for c in self.checks if not c.ok]

    def add(self, name: str, ok: bool, detail: str = ""):
        self.checks.append(CheckResult(name, bool(ok), detail))
        if not ok:
            logger.warning(f"[{self.suite}] {name} failed: {detail}")


ORACLE_ORDERS = ["length", "lyndon", "fibo", "supergeom", "sharp:3"]
K2_ORDERS = ["length", "lyndon", "fibo", "supergeom"]


@lru_cache(maxsize=16)
def suite_hall_set(order: str, k: Optional[int], max_len: int) -> HallSet:
    return generate(HallOrderSpec.parse(order, k), max_len)


def member_pairs(hall_set: HallSet, budget: int) -> List[Tuple[TreeId, TreeId]]:
    m, members = hall_set.magma, hall_set.members
    return [(a, b) for i, a in enumerate(members) for b in members[i + 1:]
            if m.length(a) + m.length(b) <= budget]


# -- oracle ---------------------------------------------------------------------------

def oracle_suite(limits: SuiteLimits, orders: Optional[List[Tuple[str, Optional[int]]]] = None) -> SuiteReport:
    report = SuiteReport("oracle")
    targets = orders or [(o, 2) for o in K2_ORDERS] + [("length", 3), ("lyndon", 3), ("sharp:3", None)]
    for order, k in targets:
        spec = HallOrderSpec.parse(order, k)
        cap = limits.oracle_max_len(spec.alphabet_size)
        hs = suite_hall_set(order, k, cap)
        label = f"{spec.name}/k={spec.alphabet_size}"
        bad = [(a, b) for a, b in member_pairs(hs, cap) if not verify_decomposition(hs, a, b)]
        report.add(f"soundness {label} (<= {cap})", not bad,
                   ", ".join(f"[{hs.format(a)},{hs.format(b)}]" for a, b in bad[:5]))
        for n in range(1, cap + 1):
            if spec.alphabet_size ** n > limits.rank_max_columns:
                logger.info(f"skipping rank of {label} at n={n}: word space too large")
                continue
            rank, witt, count = basis_rank(hs, n)
            report.add(f"basis {label} n={n}", rank == witt == count, f"rank {rank}, witt {witt}, count {count}")
    return report


# -- bounds ---------------------------------------------------------------------------

_SWEEPS = {
    # order: bounds swept over it; sharp:3 runs over four letters
    "length": [BoundSelector.EN1, BoundSelector.GEOM, BoundSelector.LENGTH_RATIO, BoundSelector.ASYM],
    "lyndon": [BoundSelector.EN1, BoundSelector.GEOM, BoundSelector.ASYM],
    "fibo": [BoundSelector.EN1, BoundSelector.FIBO_SIZE, BoundSelector.FIBO_X0, BoundSelector.ATHETA,
             BoundSelector.FIBO_LENGTH, BoundSelector.ASYM],
    "supergeom": [BoundSelector.EN1, BoundSelector.ASYM],
    "sharp:3": [BoundSelector.EN1, BoundSelector.ASYM],
}


def bounds_suite(limits: SuiteLimits) -> SuiteReport:
    report = SuiteReport("bounds")
    tables = [("length", 3, limits.beta_max_n_k3), ("length", 2, limits.beta_max_n_k2),
              ("lyndon", 2, limits.beta_max_n_k2), ("fibo", 2, limits.beta_max_n_k2)]
    for order, k, max_n in tables:
        hs = suite_hall_set(order, k, max_n)
        rows = beta_table(hs, max_n)
        bad = [r for r in rows if r.match is False]
        report.add(f"beta {order}/k={k} n<={max_n}", not bad,
                   ", ".join(f"n={r.n}: {r.beta} vs {r.closed_form}" for r in bad))

    for order, selectors in _SWEEPS.items():
        k, top = (2, limits.budget_k2) if order in K2_ORDERS else (None, limits.budget_sharp)
        hs = suite_hall_set(order, k, top)
        for selector in selectors:
            budget = top if selector != BoundSelector.ASYM else min(top, 8)
            r = verify_sweep(hs, budget, selector, limits.jobs)
            report.add(f"{selector.value} {order} (budget {budget})", r.ok,
                       f"{r.pairs_checked} pairs, {len(r.violations)} violations, max ratio {r.max_ratio}")
    return report


# -- structure ------------------------------------------------------------------------

def _assemblable(hs: HallSet, c: TreeId, leaves: Counter) -> bool:
    """c is i(t) for some tree t whose leaves are exactly the multiset `leaves`"""
    m = hs.magma

    @lru_cache(maxsize=None)
    def build(t: TreeId, items: Tuple[Tuple[TreeId, int], ...]) -> bool:
        bag = Counter(dict(items))
        size = sum(bag.values())
        if size == 1:
            return next(iter(bag)) == t
        if m.is_leaf(t):
            return False
        left, right = m.children(t)
        target = m.length(left)
        elems = sorted(bag)
        for split in _sub_bags(elems, bag):
            if not 0 < sum(split.values()) < size:
                continue
            if sum(m.length(e) * k for e, k in split.items()) != target:
                continue
            rest = bag - split
            if build(left, _freeze(split)) and build(right, _freeze(rest)):
                return True
        return False

    total = sum(m.length(e) * k for e, k in leaves.items())
    return total == m.length(c) and build(c, _freeze(leaves))


def _freeze(bag: Counter) -> Tuple[Tuple[TreeId, int], ...]:
    return tuple(sorted((e, k) for e, k in bag.items() if k))


def _sub_bags(elems: List[TreeId], bag: Counter):
    if not elems:
        yield Counter()
        return
    head, tail = elems[0], elems[1:]
    for rest in _sub_bags(tail, bag):
        for k in range(bag[head] + 1):
            sub = Counter(rest)
            if k:
                sub[head] = k
            yield sub


def structure_checks(hs: HallSet, budget: int) -> Dict[str, List[str]]:
    """Every structural invariant on member pairs a < b with |a| + |b| <= budget; failures by name"""
    m, kind, k = hs.magma, hs.spec.kind, hs.spec.alphabet_size
    sign = hs.compare
    failures: Dict[str, List[str]] = {name: [] for name in (
        "support_above_a", "support_shape", "depth", "theta_monotone", "theta_length",
        "factorial", "lyndon_support", "fibo_support", "hall_axioms")}

    def note(name: str, a: TreeId, b: TreeId):
        failures[name].append(f"[{hs.format(a)},{hs.format(b)}]")

    for t in hs.members:
        if not m.is_leaf(t):
            left, right = m.children(t)
            ok = (left in hs and right in hs and sign(left, right) < 0 and sign(left, t) < 0
                  and (m.is_leaf(right) or sign(m.lambda_of(right), left) <= 0))
            if not ok:
                failures["hall_axioms"].append(hs.format(t))

    thetas: Dict[TreeId, List[Tuple[TreeId, int]]] = {}
    for a, b in member_pairs(hs, budget):
        folding = relative_folding(hs, a, b)
        th = folding.theta
        thetas.setdefault(b, []).append((a, th))
        series, stats = decompose(hs, a, b, collect_stats=True)
        support = series.support
        is_pair = hs.is_hall_pair(a, b)

        if not is_pair and any(sign(a, m.lambda_of(c)) >= 0 for c in support):
            note("support_above_a", a, b)
        bag = Counter(folding.leaves)
        bag[a] += 1
        if any(not _assemblable(hs, c, bag) for c in support):
            note("support_shape", a, b)
        if stats.max_call_depth > th:
            note("depth", a, b)
        limit = m.length(b) - 1 if k == 2 and m.length(b) >= 2 else m.length(b)
        if th > limit:
            note("theta_length", a, b)
        if series.norm > bounds.factorial_bound(th):
            note("factorial", a, b)
        if kind == OrderKind.LYNDON:
            for c in support:
                ok = a in m.iterated_left_factors(c) and sign(c, b) < 0
                if ok and not m.is_leaf(b):
                    top = a if sign(a, m.lambda_of(b)) >= 0 else m.lambda_of(b)
                    ok = sign(m.lambda_of(c), top) <= 0
                if not ok:
                    note("lyndon_support", a, b)
                    break
        if kind == OrderKind.FIBO_MIN and b != X1:
            lb = m.lambda_of(b)
            for c in support:
                lc = m.lambda_of(c)
                ok = sign(a, lc) <= 0 and sign(lc, b) < 0
                if ok and sign(c, lb) > 0:
                    ok = theta(hs, lb, c) <= 2
                if not ok:
                    note("fibo_support", a, b)
                    break

    for b, row in thetas.items():
        row.sort(key=lambda item: hs.order.sort_key(item[0]))
        if any(row[i][1] < row[i + 1][1] for i in range(len(row) - 1)):
            failures["theta_monotone"].append(hs.format(b))
    return failures


def lyndon_agreement(hs: HallSet) -> List[str]:
    """Lyndon members are the bracketings of their foliages, which are the Lyndon words"""
    m = hs.magma
    bad = [hs.format(t) for t in hs.members
           if not is_lyndon(m.foliage(t)) or lyndon_bracketing(m, m.foliage(t)) != t]
    return bad


def structure_suite(limits: SuiteLimits) -> SuiteReport:
    report = SuiteReport("structure")
    targets = [(o, 2, limits.structure_budget) for o in K2_ORDERS]
    targets += [("length", 3, min(limits.structure_budget, limits.budget_k3)),
                ("lyndon", 3, min(limits.structure_budget, limits.budget_k3)),
                ("sharp:3", None, min(limits.structure_budget, limits.budget_sharp))]
    for order, k, budget in targets:
        hs = suite_hall_set(order, k, budget)
        for name, bad in structure_checks(hs, budget).items():
            report.add(f"{name} {hs.spec.name}/k={hs.spec.alphabet_size} (budget {budget})", not bad,
                       ", ".join(bad[:5]))
        if hs.spec.kind == OrderKind.LYNDON:
            bad = lyndon_agreement(hs)
            report.add(f"lyndon bracketing {order}/k={k}", not bad, ", ".join(bad[:5]))
    return report


# -- identities -----------------------------------------------------------------------

def identities_suite(limits: SuiteLimits) -> SuiteReport:
    report = SuiteReport("identities")
    checks: List[Tuple[str, Callable[[], list]]] = [
        ("A^r_s definition = closed form", bounds.ars_identity_failures),
        ("1 + Σ A^1_s(n) = central binomial <= 2^(n-2)", bounds.a1_sum_failures),
        ("A^r_s(n) >= C(n-s-1, s)", bounds.ars_fibo_failures),
        ("Fibonacci inequalities", bounds.fibonacci_inequality_failures),
        ("Fibonacci estimates", bounds.fibonacci_estimate_failures),
        ("⌊e(θ-1)!⌋ recurrence", bounds.general_theta_recurrence_failures),
    ]
    for name, run in checks:
        bad = run()
        report.add(name, not bad, ", ".join(map(str, bad[:5])))
    for lie in (False, True):
        bad = [(nu, k) for nu in range(0, 6) for k in range(2, 5)
               if not leibniz_inversion_check(nu, k, lie)]
        report.add(f"Leibniz inversion ({'commutator' if lie else 'associative'})", not bad, str(bad[:5]))
    bad = [(nu, k) for nu in range(0, 8) for k in range(1, 5) if not multinomial_sum_check(nu, k)]
    report.add("multinomial sum = k^ν", not bad, str(bad))
    return report


# -- families -------------------------------------------------------------------------

def family_instances(limits: SuiteLimits):
    yield from (fam_x3(n, "length") for n in range(0, 7))
    yield from (fam_two_letter_bn(n, order) for order in ("fibo", "lyndon")
                for n in range(1, limits.fibonacci_max_n + 1))
    yield from (fam_length_sharp(n) for n in range(0, 7))
    yield from (fam_lyndon_sharp(n) for n in range(1, 7))
    yield from (fam_fibo_sature(p, 2) for p in range(1, 6))
    yield from (fam_super_geom(p, nu) for p in (2, 3, 4) for nu in range(0, 5)
                if supergeom_length(p, nu) <= limits.supergeom_max_len)
    yield from (fam_sharp_en1(n) for n in range(2, limits.sharp_max_n + 1))
    yield from (fam_alphabetic_factorial(n) for n in range(2, limits.factorial_max_n + 1))
    yield from (fam_theta_lower(t, order) for order in K2_ORDERS for t in range(1, 6))


def families_suite(limits: SuiteLimits) -> SuiteReport:
    report = SuiteReport("families")
    for inst in family_instances(limits):
        result = run_family(inst)
        report.add(f"{inst.name} {inst.hall_set.spec.name} {inst.params}", result.passed,
                   f"norm {result.norm}, expected {inst.expected_norm}, theta {result.theta}, "
                   f"oracle {result.oracle_verified}")
    return report


SUITES: Dict[str, Callable[[SuiteLimits], SuiteReport]] = {
    "oracle": oracle_suite,
    "bounds": bounds_suite,
    "structure": structure_suite,
    "identities": identities_suite,
    "families": families_suite,
}


def run_suites(name: str, limits: SuiteLimits) -> List[SuiteReport]:
    names = list(SUITES) if name == "all" else [name]
    reports = []
    for suite in names:
        report = SUITES[suite](limits)
        logger.info(f"suite {suite}: {len(report.checks)} checks, {len(report.failures)} failures")
        reports.append(report)
    return reports
