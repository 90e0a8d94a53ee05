"""
Exact bound formulas, β tables and bound sweeps
"""

import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable, Dict, List, Optional, Tuple

from .decomp import FoldingCounts, decompose, folding_counts
from .hall import HallSet
from .magma import TreeId
from .order import OrderKind
from .utils.error_handling import CapacityError, ErrorCategory, KernelError

logger = logging.getLogger("Bounds")

X0 = 0


def _binom(n: int, k: int) -> int:
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)


def _require(condition: bool, message: str):
    if not condition:
        raise ValueError(message)


@lru_cache(maxsize=None)
def fib(n: int) -> int:
    """0-based Fibonacci, F_0 = 0, F_1 = F_2 = 1"""
    _require(n >= 0, f"fib needs n >= 0, got {n}")
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


def bound_general_theta(theta: int) -> int:
    """⌊e(θ-1)!⌋ as Σ_{p<θ} (θ-1)!/p!"""
    _require(theta >= 1, f"θ must be at least 1, got {theta}")
    top = factorial(theta - 1)
    return sum(top // factorial(p) for p in range(theta))


def bound_geom(theta: int) -> int:
    _require(theta >= 1, f"θ must be at least 1, got {theta}")
    return 2 ** (theta - 1)


def bound_length_ratio(len_a: int, len_b: int) -> int:
    """2^{⌊|b|/|a|⌋ - 1}"""
    _require(len_a >= 1 and len_b >= len_a, f"need 1 <= |a| <= |b|, got {len_a}, {len_b}")
    return 2 ** (len_b // len_a - 1)


def a_theta(theta: int) -> int:
    """A(θ) = (θ-3) 2^{θ-2} + θ + 1"""
    _require(theta >= 1, f"θ must be at least 1, got {theta}")
    if theta == 1:
        return 1
    return (theta - 3) * 2 ** (theta - 2) + theta + 1


def cn(n: int) -> int:
    """C(1) = 1, C(n) = 2^{n(n-1)/2 + 1}"""
    _require(n >= 1, f"C(n) needs n >= 1, got {n}")
    if n == 1:
        return 1
    return 2 ** (n * (n - 1) // 2 + 1)


def bound_fibo(n_a: int, nu_a: int) -> int:
    _require(n_a >= 0 and nu_a >= 0, "leaf counts are nonnegative")
    return fib(2 * n_a + nu_a)


def bound_fibo_x0(n_a: int, nu_a: int) -> int:
    _require(2 * n_a + nu_a >= 2, "needs 2 n_a + ν_a >= 2")
    return fib(2 * n_a + nu_a - 1)


def bound_fibo_length(n: int) -> int:
    """F_{n-2} for |a| + |b| = n >= 3"""
    _require(n >= 3, f"total length must be at least 3, got {n}")
    return fib(n - 2)


def bound_asym(n_a: int, rho_a: int) -> int:
    """C(n_a + 1)^{ρ_a} n_a!"""
    _require(n_a >= 0 and rho_a >= 0, "leaf counts are nonnegative")
    return cn(n_a + 1) ** rho_a * factorial(n_a)


def factorial_bound(theta: int) -> int:
    """θ!, the alphabetic bound for ⟨a, T_a(b)⟩"""
    _require(theta >= 1, f"θ must be at least 1, got {theta}")
    return factorial(theta)


def bound_recursive(theta: int) -> int:
    """2^{2^{θ-1} - 1}, the crude estimate C(n) = 2 C(n-1)^2"""
    _require(theta >= 1, f"θ must be at least 1, got {theta}")
    return 2 ** (2 ** (theta - 1) - 1)


def rough_bound_log2(n: int, k: int) -> int:
    """Exponent k^{n(n+1)/2} of the tower bound 2^{k^{n(n+1)/2}}"""
    _require(n >= 1 and k >= 2, "needs n >= 1 and k >= 2")
    return k ** (n * (n + 1) // 2)


# -- binomial sums ----------------------------------------------------------------

def _check_ars_range(r: int, s: int, n: int):
    _require(1 <= r <= s and n >= 2 * s + 1, f"A^r_s(n) needs 1 <= r <= s and n >= 2s+1, got r={r}, s={s}, n={n}")


def ars_def(r: int, s: int, n: int) -> int:
    """|Σ_{p=r}^{s} (-1)^p C(n-1-p, p) (C(n-1-2p, s-p) - C(n-1-2p, s-p-1))|"""
    _check_ars_range(r, s, n)
    total = sum((-1) ** p * _binom(n - 1 - p, p)
                * (_binom(n - 1 - 2 * p, s - p) - _binom(n - 1 - 2 * p, s - p - 1))
                for p in range(r, s + 1))
    return abs(total)


def ars_closed(r: int, s: int, n: int) -> int:
    """(n-2s)/s · C(n-r, n-s) · C(n-s-1, r-1)"""
    _check_ars_range(r, s, n)
    numerator = (n - 2 * s) * _binom(n - r, n - s) * _binom(n - s - 1, r - 1)
    quotient, remainder = divmod(numerator, s)
    if remainder:
        raise ArithmeticError(f"A^{r}_{s}({n}) closed form is not integral")
    return quotient


def two_letter_norm(n: int, r: Optional[int]) -> int:
    """‖[X0, b_n]‖ for r = r(X0, X1); r=None stands for r = ∞"""
    _require(n >= 1, f"n must be positive, got {n}")
    if r is None or n < 2 * r + 1:
        return fib(n)
    head = sum(_binom(n - 1 - p, p) for p in range(r))
    return head + sum(ars_closed(r, s, n) for s in range(r, (n - 1) // 2 + 1))


def x3_norm(n: int, r: Optional[int] = None) -> int:
    """‖[X0, ad_{X1}^n(X2)]‖; exact only when r(X0, X1) is 1 or ∞ (None)"""
    _require(n >= 0, f"n must be nonnegative, got {n}")
    _require(r is None or r == 1, f"no closed form for r(X0, X1) = {r}")
    return 2 ** n


# -- β tables ---------------------------------------------------------------------

def beta(hall_set: HallSet, n: int) -> int:
    """max ‖[a, b]‖ over members a < b with |a| + |b| = n"""
    _require(n >= 2, f"n must be at least 2, got {n}")
    if n > hall_set.max_len:
        raise CapacityError(f"β_{n} needs n <= max length: terms of [a, b] have length {n}, "
                            f"the set stops at {hall_set.max_len}",
                            {"n": n, "max_len": hall_set.max_len})
    best = 0
    for a, b in _pairs(hall_set, lambda la, lb: la + lb == n):
        series, _ = decompose(hall_set, a, b)
        best = max(best, series.norm)
    return best


def beta_closed_form(kind: OrderKind, k: int, n: int) -> Optional[int]:
    """Known exact β_n, or None when no closed form is known for the order"""
    if kind == OrderKind.LENGTH_LEX:
        if k >= 3:
            return 2 ** (n - 2)
        return 1 if n < 4 else 2 ** (n - 4)
    if kind == OrderKind.LYNDON and k == 2:
        return max(1, fib(n - 2), 2 ** (n - 5) if n >= 5 else 0)
    if kind == OrderKind.FIBO_MIN:
        return fib(n - 2) if n >= 3 else 1
    return None


@dataclass(frozen=True)
class BetaRow:
    n: int
    beta: int
    closed_form: Optional[int]

    @property
    def match(self) -> Optional[bool]:
        return None if self.closed_form is None else self.beta == self.closed_form


def beta_table(hall_set: HallSet, max_n: int) -> List[BetaRow]:
    kind, k = hall_set.spec.kind, hall_set.spec.alphabet_size
    rows = [BetaRow(n, beta(hall_set, n), beta_closed_form(kind, k, n)) for n in range(2, max_n + 1)]
    logger.info(f"β table for {hall_set.spec.name} up to n={max_n}: "
                f"{sum(1 for r in rows if r.match is False)} mismatches")
    return rows


# -- sweeps -----------------------------------------------------------------------

class BoundSelector(Enum):
    EN1 = "en1"
    GEOM = "geom"
    LENGTH_RATIO = "length-ratio"
    FACTORIAL = "factorial"
    RECURSIVE = "recursive"
    FIBO_SIZE = "fibo-size"
    FIBO_X0 = "fibo-x0"
    ATHETA = "atheta"
    FIBO_LENGTH = "fibo-length"
    ASYM = "asym"


@dataclass(frozen=True)
class PairFacts:
    a: TreeId
    b: TreeId
    len_a: int
    len_b: int
    counts: FoldingCounts


BoundRule = Callable[[PairFacts], Optional[int]]


def _fibo_x0(p: PairFacts) -> Optional[int]:
    c = p.counts
    if p.a != X0 or p.len_b < 2 or p.len_b != 2 * c.n_fibo + c.nu:
        return None
    return bound_fibo_x0(c.n_fibo, c.nu)


# rule returns None when the pair is outside the bound's hypotheses
_RULES: Dict[BoundSelector, Tuple[Optional[frozenset], BoundRule]] = {
    BoundSelector.EN1: (None, lambda p: bound_general_theta(p.counts.theta)),
    BoundSelector.GEOM: (frozenset({OrderKind.LENGTH_LEX, OrderKind.LYNDON}),
                         lambda p: bound_geom(p.counts.theta)),
    BoundSelector.LENGTH_RATIO: (frozenset({OrderKind.LENGTH_LEX}),
                                 lambda p: bound_length_ratio(p.len_a, p.len_b)),
    BoundSelector.FACTORIAL: (None, lambda p: factorial_bound(p.counts.theta)),
    BoundSelector.RECURSIVE: (None, lambda p: bound_recursive(p.counts.theta)),
    BoundSelector.FIBO_SIZE: (frozenset({OrderKind.FIBO_MIN}),
                              lambda p: bound_fibo(p.counts.n_fibo, p.counts.nu)),
    BoundSelector.FIBO_X0: (frozenset({OrderKind.FIBO_MIN}), _fibo_x0),
    BoundSelector.ATHETA: (frozenset({OrderKind.FIBO_MIN}), lambda p: a_theta(p.counts.theta)),
    BoundSelector.FIBO_LENGTH: (frozenset({OrderKind.FIBO_MIN}),
                                lambda p: bound_fibo_length(p.len_a + p.len_b)
                                if p.len_a + p.len_b >= 3 else None),
    BoundSelector.ASYM: (None, lambda p: bound_asym(p.counts.n_asym, p.counts.rho)),
}


def applicable_selectors(kind: OrderKind) -> List[BoundSelector]:
    return [s for s, (kinds, _) in _RULES.items() if kinds is None or kind in kinds]


@dataclass(frozen=True)
class Violation:
    a: TreeId
    b: TreeId
    norm: int
    bound: int


@dataclass
class BoundReport:
    order: str
    bound_name: str
    length_budget: int
    pairs_checked: int = 0
    violations: List[Violation] = field(default_factory=list)
    max_ratio: Fraction = Fraction(0)

    @property
    def ok(self) -> bool:
        return not self.violations


def _pairs(hall_set: HallSet, accept: Callable[[int, int], bool]) -> List[Tuple[TreeId, TreeId]]:
    """Member pairs a < b in basis order whose lengths pass `accept`"""
    hall_set.require_enumerated()
    m, members = hall_set.magma, hall_set.members
    return [(a, b)
            for i, a in enumerate(members)
            for b in members[i + 1:]
            if accept(m.length(a), m.length(b))]


def _check_pair(hall_set: HallSet, rule: BoundRule, a: TreeId, b: TreeId) -> Optional[Tuple[int, int]]:
    m = hall_set.magma
    facts = PairFacts(a, b, m.length(a), m.length(b), folding_counts(hall_set, a, b))
    bound = rule(facts)
    if bound is None:
        return None
    series, _ = decompose(hall_set, a, b)
    return series.norm, bound


def verify_sweep(hall_set: HallSet, budget: int, selector: BoundSelector, jobs: int = 1) -> BoundReport:
    """Check one bound on every member pair a < b with |a| + |b| <= budget"""
    kinds, rule = _RULES[selector]
    kind = hall_set.spec.kind
    if kinds is not None and kind not in kinds:
        raise KernelError("BOUND_ORDER_MISMATCH",
                          f"bound {selector.value} does not apply to order {hall_set.spec.name}",
                          ErrorCategory.VALIDATION, context={"bound": selector.value, "order": hall_set.spec.name})
    if budget > hall_set.max_len:
        raise CapacityError(f"sweep budget {budget} exceeds max length {hall_set.max_len}",
                            {"budget": budget, "max_len": hall_set.max_len})

    pairs = _pairs(hall_set, lambda la, lb: la + lb <= budget)
    if jobs > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            outcomes = list(pool.map(lambda ab: _check_pair(hall_set, rule, *ab), pairs))
    else:
        outcomes = [_check_pair(hall_set, rule, a, b) for a, b in pairs]

    report = BoundReport(hall_set.spec.name, selector.value, budget)
    for (a, b), outcome in zip(pairs, outcomes):
        if outcome is None:
            continue
        norm, bound = outcome
        report.pairs_checked += 1
        if norm > bound:
            report.violations.append(Violation(a, b, norm, bound))
        if bound:
            report.max_ratio = max(report.max_ratio, Fraction(norm, bound))

    log = logger.warning if report.violations else logger.info
    log(f"{selector.value} on {hall_set.spec.name} (budget {budget}): {report.pairs_checked} pairs, "
        f"{len(report.violations)} violations, max ratio {report.max_ratio}")
    return report


# -- numeric identities -----------------------------------------------------------

def ars_identity_failures(max_s: int = 8, max_n: int = 25) -> List[Tuple[int, int, int]]:
    return [(r, s, n)
            for s in range(1, max_s + 1)
            for r in range(1, s + 1)
            for n in range(2 * s + 1, max_n + 1)
            if ars_def(r, s, n) != ars_closed(r, s, n)]


def a1_sum_failures(lo: int = 3, hi: int = 24) -> List[int]:
    """1 + Σ_s A^1_s(n) = C(n-1, ⌊(n-1)/2⌋) <= 2^{n-2}"""
    failed = []
    for n in range(lo, hi + 1):
        total = 1 + sum(ars_closed(1, s, n) for s in range(1, (n - 1) // 2 + 1))
        central = _binom(n - 1, (n - 1) // 2)
        if total != central or central > 2 ** (n - 2):
            failed.append(n)
    return failed


def ars_fibo_failures(lo: int = 3, hi: int = 24) -> List[Tuple[int, int, int]]:
    """A^r_s(n) >= C(n-s-1, s)"""
    return [(r, s, n)
            for n in range(lo, hi + 1)
            for s in range(1, (n - 1) // 2 + 1)
            for r in range(1, s + 1)
            if ars_closed(r, s, n) < _binom(n - s - 1, s)]


def fibonacci_inequality_failures(limit: int = 30) -> List[str]:
    failed = []
    for p in range(1, limit + 1):
        if 2 * fib(p) > fib(p + 2):
            failed.append(f"2F_{p} > F_{p + 2}")
        for q in range(1, limit + 1):
            if fib(p) * fib(q - 1) + fib(p - 1) * fib(q) > fib(p + q - 1):
                failed.append(f"cross({p},{q})")
    return failed


def fibonacci_estimate_failures(limit: int = 30) -> List[str]:
    failed = []
    for n in range(2, limit + 1):
        if (n - 2) * 2 ** (n - 2) + n > fib(2 * n - 1):
            failed.append(f"odd({n})")
        if (n - 3) * 2 ** (n - 2) + n > fib(2 * n - 2):
            failed.append(f"even({n})")
        if n >= 9 and (n - 2) * 2 ** (n - 2) + n > fib(2 * n - 2):
            failed.append(f"even-strong({n})")
    return failed


def general_theta_recurrence_failures(limit: int = 25) -> List[int]:
    """a(θ) = (θ-1) a(θ-1) + 1"""
    return [t for t in range(2, limit + 1)
            if bound_general_theta(t) != (t - 1) * bound_general_theta(t - 1) + 1]
