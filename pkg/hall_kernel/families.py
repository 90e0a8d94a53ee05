"""
Bracket families attaining the equality and lower-bound cases
"""

import logging
import math
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations
from typing import Callable, Dict, List, Optional

from .bounds import a_theta, bound_general_theta, fib, two_letter_norm, x3_norm
from .decomp import LieSeries, bracket_series, relative_folding, tree_series
from .hall import HallSet, generate
from .magma import TreeId
from .oracle import eval_series, eval_tree
from .order import HallOrderSpec, OrderKind, SharpEn1Order, SuperGeomOrder
from .utils.error_handling import ErrorCategory, KernelError

logger = logging.getLogger("Families")

X0, X1, X2 = 0, 1, 2

ORACLE_MAX_LEN = 16


@dataclass
class FamilyInstance:
    """A bracket [a, b] with the norm it is known to have.

    exact=False makes expected_norm a lower bound; upper_bound, when set, is
    a second known ceiling and lower_bound a second known floor.
    """
    name: str
    params: Dict[str, int]
    hall_set: HallSet
    a: TreeId
    b: TreeId
    expected_norm: int
    exact: bool = True
    upper_bound: Optional[int] = None
    lower_bound: Optional[int] = None
    expected_theta: Optional[int] = None
    closed_form: Optional[int] = None
    checks: Dict[str, bool] = field(default_factory=dict)

    @property
    def required_max_len(self) -> int:
        m = self.hall_set.magma
        return m.length(self.a) + m.length(self.b)


@dataclass
class FamilyResult:
    instance: FamilyInstance
    norm: int
    theta: Optional[int]
    oracle_verified: Optional[bool]

    @property
    def norm_ok(self) -> bool:
        inst = self.instance
        if inst.exact and self.norm != inst.expected_norm:
            return False
        if self.norm < inst.expected_norm:
            return False
        if inst.lower_bound is not None and self.norm < inst.lower_bound:
            return False
        return inst.upper_bound is None or self.norm <= inst.upper_bound

    @property
    def passed(self) -> bool:
        inst = self.instance
        theta_ok = inst.expected_theta is None or self.theta == inst.expected_theta
        return (self.norm_ok and theta_ok and self.oracle_verified is not False
                and all(inst.checks.values()))


@lru_cache(maxsize=32)
def family_hall_set(spec: HallOrderSpec, max_len: int) -> HallSet:
    """Lazy Hall set shared by the families of one order"""
    return generate(spec, max_len, lazy=True)


def _hall_set(kind: OrderKind, k: int, max_len: int, n: Optional[int] = None) -> HallSet:
    return family_hall_set(HallOrderSpec(kind, k, n), max_len)


def _order_spec(order: str, k: int, allowed) -> HallOrderSpec:
    spec = HallOrderSpec.parse(order, k)
    if spec.kind not in allowed:
        raise KernelError("FAMILY_ORDER_MISMATCH",
                          f"this family needs one of {', '.join(sorted(x.value for x in allowed))}, got {order}",
                          ErrorCategory.VALIDATION, context={"order": order})
    return spec


def _require(condition: bool, message: str):
    if not condition:
        raise ValueError(message)


def fam_x3(n: int, order: str = "length", k: int = 3) -> FamilyInstance:
    """a = X0, b = ad_{X1}^n(X2)"""
    _require(n >= 0, f"n must be nonnegative, got {n}")
    if k < 3:
        raise KernelError("ALPHABET_TOO_SMALL", "x3 needs at least three letters", ErrorCategory.VALIDATION)
    spec = _order_spec(order, k, {OrderKind.LENGTH_LEX, OrderKind.LYNDON})
    hs = family_hall_set(spec, n + 2)
    b = hs.magma.ad_power(X1, X2, n, "left")
    return FamilyInstance("x3", {"n": n}, hs, X0, b, x3_norm(n), expected_theta=n + 1)


def _r_x0_x1(hs: HallSet, cap: int) -> Optional[int]:
    r = hs.r_factor(X0, X1, cap)
    return r.value if r.exact else None


def fam_two_letter_bn(n: int, order: str = "fibo") -> FamilyInstance:
    """a = X0, b = b_n built from r = r(X0, X1)"""
    _require(n >= 1, f"n must be positive, got {n}")
    spec = _order_spec(order, 2, {OrderKind.LENGTH_LEX, OrderKind.LYNDON, OrderKind.FIBO_MIN})
    hs = family_hall_set(spec, n + 2)
    m = hs.magma
    # r >= n + 1 already settles both the shape of b_n and the exact case
    r = _r_x0_x1(hs, n + 1)
    if r is None or n <= r:
        b = m.ad_power(X1, X0, n, "right")
    else:
        b = m.ad_power(X1, m.ad_power(X1, X0, r, "right"), n - r, "left")
    closed = two_letter_norm(n, r)
    inst = FamilyInstance("two-letter", {"n": n}, hs, X0, b, closed, lower_bound=fib(n), closed_form=closed)
    if r == 1 and n >= 2:
        inst.upper_bound = 2 ** (n - 2)
    return inst


def fam_theta_lower(theta: int, order: str = "length") -> FamilyInstance:
    """a = x0, b = ad_{x1}^{θ-1}(x2) for x0 < x1 < x2 the sorted {(X0,X1), (X0,(X0,X1)), X1}"""
    _require(theta >= 1, f"θ must be positive, got {theta}")
    spec = _order_spec(order, 2, {OrderKind.LENGTH_LEX, OrderKind.LYNDON,
                                  OrderKind.FIBO_MIN, OrderKind.SUPER_GEOM})
    hs = family_hall_set(spec, 3 * theta + 2)
    m = hs.magma
    x0, x1, x2 = hs.order.sorted([m.build((X0, X1)), m.build((X0, (X0, X1))), X1])
    b = m.ad_power(x1, x2, theta - 1, "left")
    exact = spec.kind in (OrderKind.LENGTH_LEX, OrderKind.LYNDON)
    return FamilyInstance("theta-lower", {"theta": theta}, hs, x0, b, 2 ** (theta - 1),
                          exact=exact, expected_theta=theta)


def fam_length_sharp(n: int) -> FamilyInstance:
    """a = X0, b = ad_{X1}^n ad_{X0}^2(X1) under lengthLex"""
    _require(n >= 0, f"n must be nonnegative, got {n}")
    hs = _hall_set(OrderKind.LENGTH_LEX, 2, n + 4)
    m = hs.magma
    b = m.ad_power(X1, m.ad_power(X0, X1, 2, "left"), n, "left")
    return FamilyInstance("length-sharp", {"n": n}, hs, X0, b, 2 ** n)


def fam_lyndon_sharp(n: int) -> FamilyInstance:
    """a = ad_{X0}^2(X1), b = underline-ad_{X1}^n(X0) under lyndon"""
    _require(n >= 1, f"n must be positive, got {n}")
    hs = _hall_set(OrderKind.LYNDON, 2, n + 4)
    m = hs.magma
    a = m.ad_power(X0, X1, 2, "left")
    b = m.ad_power(X1, X0, n, "right")
    return FamilyInstance("lyndon-sharp", {"n": n}, hs, a, b, 2 ** (n - 1))


def fam_fibo_sature(p: int, m: int = 2) -> FamilyInstance:
    """a = (X0,X1), h = ad_a^m(X1), b = ad_h^p(X1) under fiboMin"""
    _require(p >= 1 and m >= 2, f"needs p >= 1 and m >= 2, got p={p}, m={m}")
    length = 2 + p * (2 * m + 1) + 1
    hs = _hall_set(OrderKind.FIBO_MIN, 2, length)
    mg = hs.magma
    a = mg.build((X0, X1))
    h = mg.ad_power(a, X1, m, "left")
    b = mg.ad_power(h, X1, p, "left")
    return FamilyInstance("fibo-sature", {"p": p, "m": m}, hs, a, b, a_theta(p + 1), expected_theta=p + 1)


def _b_nu_chain(order: SuperGeomOrder, p: int, nu: int) -> List[TreeId]:
    """B^ν_2, ..., B^ν_p with B^ν_2 = A_2 1^ν and B^ν_{k+1} = (B^ν_k, A_{k+1})"""
    m = order.magma
    chain = [m.ad_power(X1, order.block(2), nu, "right")]
    for k in range(3, p + 1):
        chain.append(m.intern_node(chain[-1], order.block(k)))
    return chain


def supergeom_length(p: int, nu: int) -> int:
    """|B^ν_p|"""
    return nu + (p + 1) * (p + 2) // 2 - 3


def fam_super_geom(p: int, nu: int) -> FamilyInstance:
    """a = A_1, b = B^ν_p; ‖[a, b]‖ = p^ν + p - 2"""
    _require(p >= 2 and nu >= 0, f"needs p >= 2 and ν >= 0, got p={p}, ν={nu}")
    hs = _hall_set(OrderKind.SUPER_GEOM, 2, supergeom_length(p, nu) + 2)
    order: SuperGeomOrder = hs.order
    chain = _b_nu_chain(order, p, nu)
    b = chain[-1]
    inst = FamilyInstance("supergeom", {"p": p, "nu": nu}, hs, order.block(1), b,
                          p ** nu + p - 2, expected_theta=p - 1 + nu)
    inst.checks["chain_members"] = all(hs.contains(t) for t in chain)
    inst.checks["chain_scores"] = all(order.score(t) == 3 * 2 ** (k - 2) - 1
                                      for k, t in enumerate(chain, start=2))
    return inst


def fam_super_geom_at_length(n: int) -> FamilyInstance:
    """p = ⌊√(n / ln n)⌋ (at least 2) and ν chosen so that |b| = n"""
    _require(n >= 3, f"n must be at least 3, got {n}")
    p = max(2, math.isqrt(int(n / math.log(n))))
    while p > 2 and supergeom_length(p, 0) > n:
        p -= 1
    nu = n - supergeom_length(p, 0)
    _require(nu >= 0, f"no B^ν_p of length {n}")
    return fam_super_geom(p, nu)


def fam_sharp_en1(n: int) -> FamilyInstance:
    """a = X0, b = (..((X1, Xn), X(n-1)).., X2) in the sharpEn1(n) set"""
    _require(n >= 2, f"n must be at least 2, got {n}")
    hs = _hall_set(OrderKind.SHARP_EN1, n + 1, n + 1, n)
    order: SharpEn1Order = hs.order
    b = order.x1_chain(2)
    inst = FamilyInstance("sharp-en1", {"n": n}, hs, X0, b, bound_general_theta(n), expected_theta=n)
    inst.checks["b_member"] = hs.contains(b)
    inst.checks["ordering"] = all(sharp_order_properties(order, n + 2).values())
    return inst


def fam_alphabetic_factorial(n: int) -> FamilyInstance:
    """[..[X(n-1), X(n-2)], .., X0] under the largest-letter-first order"""
    _require(n >= 2, f"n must be at least 2, got {n}")
    hs = _hall_set(OrderKind.ALPHABETIC, max(n, 2), n)
    m = hs.magma
    t = n - 1
    for i in range(n - 2, -1, -1):
        t = m.intern_node(t, i)
    return FamilyInstance("alphabetic-factorial", {"n": n}, hs, m.lambda_of(t), m.mu_of(t),
                          math.factorial(n - 1))


# -- running -----------------------------------------------------------------------

def family_series(inst: FamilyInstance) -> LieSeries:
    hs = inst.hall_set
    return bracket_series(tree_series(hs, inst.a), tree_series(hs, inst.b))


def run_family(inst: FamilyInstance, oracle_max_len: int = ORACLE_MAX_LEN) -> FamilyResult:
    hs, m = inst.hall_set, inst.hall_set.magma
    series = family_series(inst)
    theta = None
    if hs.contains(inst.a) and hs.contains(inst.b) and hs.compare(inst.a, inst.b) < 0:
        theta = relative_folding(hs, inst.a, inst.b).theta
    verified = None
    if inst.required_max_len <= oracle_max_len:
        expected = eval_tree(m, inst.a).commutator(eval_tree(m, inst.b))
        verified = eval_series(series) == expected
    result = FamilyResult(inst, series.norm, theta, verified)
    log = logger.info if result.passed else logger.warning
    log(f"{inst.name} {inst.params}: norm {result.norm}, expected {inst.expected_norm}"
        f"{'' if inst.exact else ' (lower bound)'}, theta {theta}, oracle {verified}")
    return result


def sharp_order_properties(order: SharpEn1Order, max_len: int) -> Dict[str, bool]:
    """Piece membership and ordering facts of the sharpEn1 order on short trees"""
    n, m = order.n, order.magma
    a_pis = [order.a_pi(pi) for size in range(0, n) for pi in combinations(range(2, n + 1), size)
             if size + 1 <= max_len]
    chains = [order.x1_chain(j) for j in range(2, n + 2)]
    y_pis = [m.intern_node(t, X1) for t in a_pis if m.length(t) + 1 <= max_len]
    others = [X2 + i for i in range(n - 1)]
    return {
        "a_pi_below_x1": all(order.sign(t, X1) < 0 for t in a_pis),
        "pieces_ordered": all(order.sign(x, y) < 0 for x in a_pis for y in chains)
        and all(order.sign(x, y) < 0 for x in chains for y in others)
        and all(order.sign(x, y) < 0 for x in others for y in y_pis),
        "pieces_recognized": all(order.piece(t) == 1 for t in a_pis)
        and all(order.piece(t) == 2 for t in chains)
        and all(order.piece(t) == 4 for t in y_pis),
    }


FAMILIES: Dict[str, Callable[..., FamilyInstance]] = {
    "x3": fam_x3,
    "two-letter": fam_two_letter_bn,
    "theta-lower": fam_theta_lower,
    "length-sharp": fam_length_sharp,
    "lyndon-sharp": fam_lyndon_sharp,
    "fibo-sature": fam_fibo_sature,
    "supergeom": fam_super_geom,
    "supergeom-at-length": fam_super_geom_at_length,
    "sharp-en1": fam_sharp_en1,
    "alphabetic-factorial": fam_alphabetic_factorial,
}

# families whose order is a parameter
ORDER_FAMILIES = {"x3", "two-letter", "theta-lower"}
