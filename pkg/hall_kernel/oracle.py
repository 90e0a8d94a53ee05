"""
Ground truth in the free associative algebra: evaluation, exact rank, identities
"""

import logging
import weakref
from typing import Dict, List, Optional, Sequence, Tuple, Union

from sympy.ntheory import multinomial_coefficients

from .decomp import LieSeries, decompose
from .hall import HallSet, witt_dimension
from .magma import Magma, TreeId

logger = logging.getLogger("Oracle")

Word = Tuple[int, ...]


class NCPoly:
    """Noncommutative polynomial with exact integer coefficients"""

    __slots__ = ("terms",)

    def __init__(self, terms: Optional[Dict[Word, int]] = None):
        self.terms: Dict[Word, int] = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def letter(cls, index: int) -> "NCPoly":
        return cls({(index,): 1})

    @classmethod
    def word(cls, word: Sequence[int], coeff: int = 1) -> "NCPoly":
        return cls({tuple(word): coeff})

    @classmethod
    def zero(cls) -> "NCPoly":
        return cls()

    def is_zero(self) -> bool:
        return not self.terms

    def degrees(self) -> set:
        return {len(w) for w in self.terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def component(self, n: int) -> "NCPoly":
        return NCPoly({w: c for w, c in self.terms.items() if len(w) == n})

    def coefficient(self, word: Sequence[int]) -> int:
        return self.terms.get(tuple(word), 0)

    def __add__(self, other: "NCPoly") -> "NCPoly":
        acc = dict(self.terms)
        for w, c in other.terms.items():
            acc[w] = acc.get(w, 0) + c
        return NCPoly(acc)

    def __neg__(self) -> "NCPoly":
        return NCPoly({w: -c for w, c in self.terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __mul__(self, other: Union["NCPoly", int]) -> "NCPoly":
        if isinstance(other, int):
            return NCPoly({w: c * other for w, c in self.terms.items()})
        acc: Dict[Word, int] = {}
        for u, cu in self.terms.items():
            for v, cv in other.terms.items():
                w = u + v
                acc[w] = acc.get(w, 0) + cu * cv
        return NCPoly(acc)

    def __rmul__(self, k: int) -> "NCPoly":
        return self * k

    def commutator(self, other: "NCPoly") -> "NCPoly":
        """[x, y] = xy - yx"""
        return self * other - other * self

    def __eq__(self, other) -> bool:
        if not isinstance(other, NCPoly):
            return NotImplemented
        return self.terms == other.terms

    __hash__ = None

    def __repr__(self) -> str:
        if not self.terms:
            return "NCPoly(0)"
        body = " + ".join(f"{c}*{''.join(map(str, w))}" for w, c in sorted(self.terms.items()))
        return f"NCPoly({body})"


_eval_caches: "weakref.WeakKeyDictionary[Magma, Dict[TreeId, NCPoly]]" = weakref.WeakKeyDictionary()


def eval_tree(magma: Magma, t: TreeId) -> NCPoly:
    """Evaluation of a bracket with [x, y] = xy - yx"""
    cache = _eval_caches.setdefault(magma, {})
    found = cache.get(t)
    if found is not None:
        return found
    if magma.is_leaf(t):
        result = NCPoly.letter(magma.letter_index(t))
    else:
        left, right = magma.children(t)
        result = eval_tree(magma, left).commutator(eval_tree(magma, right))
    cache[t] = result
    return result


def eval_series(series: LieSeries) -> NCPoly:
    magma = series.hall_set.magma
    acc: Dict[Word, int] = {}
    for c, k in series.items():
        for w, v in eval_tree(magma, c).terms.items():
            acc[w] = acc.get(w, 0) + k * v
    return NCPoly(acc)


def verify_decomposition(hall_set: HallSet, a: TreeId, b: TreeId,
                         series: Optional[LieSeries] = None) -> bool:
    """e((a, b)) equals the evaluation of its decomposition, coefficient by coefficient"""
    if series is None:
        series, _ = decompose(hall_set, a, b)
    magma = hall_set.magma
    expected = eval_tree(magma, a).commutator(eval_tree(magma, b))
    ok = eval_series(series) == expected
    if not ok:
        logger.warning(f"decomposition of [{magma.format_tree(a)}, {magma.format_tree(b)}] "
                       f"disagrees with its evaluation")
    return ok


def bareiss_rank(rows: List[List[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination"""
    m = [list(row) for row in rows]
    if not m:
        return 0
    nrows, ncols = len(m), len(m[0])
    rank, prev = 0, 1
    for col in range(ncols):
        pivot = next((r for r in range(rank, nrows) if m[r][col]), None)
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        p = m[rank][col]
        top = m[rank]
        for r in range(rank + 1, nrows):
            row = m[r]
            factor = row[col]
            for c in range(col + 1, ncols):
                row[c] = (row[c] * p - factor * top[c]) // prev
            row[col] = 0
        prev = p
        rank += 1
        if rank == nrows:
            break
    return rank


def independence_rank(polys: Sequence[NCPoly]) -> int:
    """Rank over Q of homogeneous polynomials of one degree"""
    degrees = set()
    for p in polys:
        degrees |= p.degrees()
    if len(degrees) > 1:
        raise ValueError(f"polynomials must share one degree, got degrees {sorted(degrees)}")
    columns = sorted({w for p in polys for w in p.terms})
    if not columns:
        return 0
    index = {w: i for i, w in enumerate(columns)}
    rows = []
    for p in polys:
        row = [0] * len(columns)
        for w, c in p.terms.items():
            row[index[w]] = c
        rows.append(row)
    return bareiss_rank(rows)


def basis_rank(hall_set: HallSet, n: int) -> Tuple[int, int, int]:
    """(rank of the degree-n evaluations, Witt dimension, generated count)"""
    elems = hall_set.by_length[n]
    rank = independence_rank([eval_tree(hall_set.magma, t) for t in elems])
    return rank, witt_dimension(hall_set.spec.alphabet_size, n), len(elems)


# -- Leibniz inversion ------------------------------------------------------------

def _product(x: NCPoly, y: NCPoly, lie: bool) -> NCPoly:
    return x.commutator(y) if lie else x * y


def _right_nested(factors: Sequence[NCPoly], lie: bool) -> NCPoly:
    acc = factors[-1]
    for f in reversed(factors[:-1]):
        acc = _product(f, acc, lie)
    return acc


def _derivation_power(p: NCPoly, d: NCPoly, times: int) -> NCPoly:
    for _ in range(times):
        p = d.commutator(p)
    return p


def leibniz_inversion_check(nu: int, k: int, lie: bool = False) -> bool:
    """b_1 .. b_{k-1} (D^ν b_k) against its multinomial expansion.

    D is commutation with X0 and the operands are the letters X1..Xk; the
    product is concatenation, or the commutator when lie is set, nested to
    the right in both cases.
    """
    if nu < 0 or k < 2:
        raise ValueError(f"needs ν >= 0 and k >= 2, got ν={nu}, k={k}")
    d = NCPoly.letter(0)
    operands = [NCPoly.letter(i) for i in range(1, k + 1)]
    lhs = _right_nested(operands[:-1] + [_derivation_power(operands[-1], d, nu)], lie)
    rhs = NCPoly.zero()
    for js, coeff in multinomial_coefficients(k, nu).items():
        factors = [_derivation_power(b, d, j) for b, j in zip(operands[:-1], js[:-1])] + [operands[-1]]
        term = _derivation_power(_right_nested(factors, lie), d, js[-1])
        rhs = rhs + term * ((-1) ** (nu - js[-1]) * int(coeff))
    return lhs == rhs


def multinomial_sum_check(nu: int, k: int) -> bool:
    """Σ over compositions of ν into k parts of the multinomial coefficient is k^ν"""
    return sum(int(c) for c in multinomial_coefficients(k, nu).values()) == k ** nu


def jacobi_check(magma: Magma, x: TreeId, y: TreeId, z: TreeId) -> bool:
    ex, ey, ez = (eval_tree(magma, t) for t in (x, y, z))
    total = ex.commutator(ey.commutator(ez)) + ey.commutator(ez.commutator(ex)) + ez.commutator(ex.commutator(ey))
    return total.is_zero()
