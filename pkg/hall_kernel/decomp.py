"""
Relative foldings and the recursive decomposition of [a, b] on a Hall basis
"""

import logging
import threading
from collections import Counter
from dataclasses import dataclass, field
from typing import Dict, Iterator, List, Optional, Tuple, Union

from .hall import HallSet
from .magma import TreeId
from .utils.error_handling import CapacityError

Shape = Union[TreeId, Tuple["Shape", "Shape"]]

X0, X1 = 0, 1


class LieSeries:
    """Exact-integer combination of Hall-set members, zero terms dropped"""

    __slots__ = ("hall_set", "_terms")

    def __init__(self, hall_set: HallSet, terms: Optional[Dict[TreeId, int]] = None):
        self.hall_set = hall_set
        self._terms: Dict[TreeId, int] = {}
        for c, coeff in (terms or {}).items():
            if coeff:
                hall_set.require_member(c)
                self._terms[c] = coeff

    @classmethod
    def zero(cls, hall_set: HallSet) -> "LieSeries":
        return cls(hall_set)

    @classmethod
    def single(cls, hall_set: HallSet, c: TreeId, coeff: int = 1) -> "LieSeries":
        return cls(hall_set, {c: coeff})

    @property
    def terms(self) -> List[Tuple[TreeId, int]]:
        """(member, coefficient) in ascending basis order"""
        key = self.hall_set.order.sort_key
        return sorted(self._terms.items(), key=lambda item: key(item[0]))

    @property
    def norm(self) -> int:
        return sum(abs(c) for c in self._terms.values())

    @property
    def support(self) -> frozenset:
        return frozenset(self._terms)

    def coefficient(self, c: TreeId) -> int:
        return self._terms.get(c, 0)

    def is_zero(self) -> bool:
        return not self._terms

    def items(self) -> Iterator[Tuple[TreeId, int]]:
        return iter(self._terms.items())

    def as_dict(self) -> Dict[TreeId, int]:
        return dict(self._terms)

    def _same_set(self, other: "LieSeries"):
        if other.hall_set is not self.hall_set:
            raise ValueError("series belong to different Hall sets")

    def __add__(self, other: "LieSeries") -> "LieSeries":
        return add_series(self, other)

    def __neg__(self) -> "LieSeries":
        return scale_series(self, -1)

    def __sub__(self, other: "LieSeries") -> "LieSeries":
        return add_series(self, scale_series(other, -1))

    def __mul__(self, k: int) -> "LieSeries":
        return scale_series(self, k)

    __rmul__ = __mul__

    def __eq__(self, other) -> bool:
        if not isinstance(other, LieSeries):
            return NotImplemented
        return self.hall_set is other.hall_set and self._terms == other._terms

    def __hash__(self):
        return hash(frozenset(self._terms.items()))

    def __len__(self) -> int:
        return len(self._terms)

    def __repr__(self) -> str:
        fmt = self.hall_set.format
        body = " + ".join(f"{c}*{fmt(t)}" for t, c in self.terms) or "0"
        return f"LieSeries({body})"


@dataclass(frozen=True)
class Folding:
    """T_a(b): b re-bracketed so that every leaf c has (a, c) in the set"""
    a: TreeId
    b: TreeId
    shape: Shape
    leaves: Tuple[TreeId, ...]

    @property
    def theta(self) -> int:
        return len(self.leaves)

    @property
    def leaf_multiset(self) -> Counter:
        return Counter(self.leaves)

    def reassemble(self, hall_set: HallSet) -> TreeId:
        def build(shape: Shape) -> TreeId:
            if isinstance(shape, tuple):
                return hall_set.magma.intern_node(build(shape[0]), build(shape[1]))
            return shape
        return build(self.shape)


@dataclass(frozen=True)
class FoldingCounts:
    theta: int
    rho: int          # leaves equal to X0
    nu: int           # leaves equal to X1
    per_leaf: Dict[TreeId, int] = field(default_factory=dict)

    @property
    def n_fibo(self) -> int:
        """leaves different from X1"""
        return self.theta - self.nu

    @property
    def n_asym(self) -> int:
        """leaves different from X0"""
        return self.theta - self.rho


@dataclass
class DecompStats:
    max_call_depth: int = 0
    cache_hits: int = 0
    cache_misses: int = 0


def _ordered_members(hall_set: HallSet, a: TreeId, b: TreeId):
    hall_set.require_member(a)
    hall_set.require_member(b)
    if hall_set.compare(a, b) >= 0:
        fmt = hall_set.format
        raise ValueError(f"folding needs a < b, got a={fmt(a)}, b={fmt(b)}")


def relative_folding(hall_set: HallSet, a: TreeId, b: TreeId) -> Folding:
    _ordered_members(hall_set, a, b)
    m = hall_set.magma
    leaves: List[TreeId] = []

    def fold(t: TreeId) -> Shape:
        if hall_set.is_hall_pair(a, t):
            leaves.append(t)
            return t
        left, right = m.children(t)
        return fold(left), fold(right)

    shape = fold(b)
    return Folding(a, b, shape, tuple(leaves))


def theta(hall_set: HallSet, a: TreeId, b: TreeId) -> int:
    return relative_folding(hall_set, a, b).theta


def folding_counts(hall_set: HallSet, a: TreeId, b: TreeId) -> FoldingCounts:
    folding = relative_folding(hall_set, a, b)
    per_leaf = folding.leaf_multiset
    return FoldingCounts(folding.theta, per_leaf.get(X0, 0), per_leaf.get(X1, 0), dict(per_leaf))


class Decomposer:
    """Rewrite(a, b) with a memo per Hall set.

    Each memo entry keeps the series of [a, b] for a < b together with the
    call-stack depth its computation needed, so depth stays exact when the
    entry is reused.
    """

    def __init__(self, hall_set: HallSet):
        self.hall_set = hall_set
        self.magma = hall_set.magma
        self._memo: Dict[Tuple[TreeId, TreeId], Tuple[Dict[TreeId, int], int]] = {}
        self._lock = threading.Lock()
        self.stats = DecompStats()
        self.logger = logging.getLogger("Decomposer")

    def decompose(self, a: TreeId, b: TreeId,
                  collect_stats: bool = False) -> Tuple[LieSeries, Optional[DecompStats]]:
        hs = self.hall_set
        total = self.magma.length(a) + self.magma.length(b)
        if total > hs.max_len:
            raise CapacityError(f"[a, b] has length {total}, the {hs.spec.name} set stops at {hs.max_len}",
                                {"length": total, "max_len": hs.max_len})
        hs.require_member(a)
        hs.require_member(b)
        tally = DecompStats() if collect_stats else None
        sign = hs.compare(a, b)
        if sign == 0:
            terms, depth = {}, 0
        elif sign < 0:
            terms, depth = self._rewrite(a, b, tally)
        else:
            terms, depth = self._rewrite(b, a, tally)
            terms = {c: -k for c, k in terms.items()}
        if tally is not None:
            tally.max_call_depth = depth
            with self._lock:
                self.stats.max_call_depth = max(self.stats.max_call_depth, depth)
                self.stats.cache_hits += tally.cache_hits
                self.stats.cache_misses += tally.cache_misses
        return LieSeries(hs, terms), tally

    def _rewrite(self, a: TreeId, b: TreeId,
                 tally: Optional[DecompStats]) -> Tuple[Dict[TreeId, int], int]:
        key = (a, b)
        cached = self._memo.get(key)
        if cached is not None:
            if tally is not None:
                tally.cache_hits += 1
            return cached
        if tally is not None:
            tally.cache_misses += 1

        hs, m = self.hall_set, self.magma
        if hs.is_hall_pair(a, b):
            result = ({m.intern_node(a, b): 1}, 1)
        else:
            # [a, b] = [[a, λb], μb] + [λb, [a, μb]]
            left, right = m.children(b)
            acc: Dict[TreeId, int] = {}
            inner_left, depth_left = self._rewrite(a, left, tally)
            inner_right, depth_right = self._rewrite(a, right, tally)
            depth = max(depth_left, depth_right)
            for d, coeff in inner_left.items():
                depth = max(depth, self._accumulate(acc, d, right, coeff, tally))
            for d, coeff in inner_right.items():
                depth = max(depth, self._accumulate(acc, left, d, coeff, tally))
            result = ({c: k for c, k in acc.items() if k}, depth + 1)

        with self._lock:
            self._memo.setdefault(key, result)
        return result

    def _accumulate(self, acc: Dict[TreeId, int], x: TreeId, y: TreeId, coeff: int,
                    tally: Optional[DecompStats]) -> int:
        """acc += coeff * [x, y]; returns the depth of the call made"""
        sign = self.hall_set.compare(x, y)
        if sign == 0:
            return 0
        if sign < 0:
            terms, depth = self._rewrite(x, y, tally)
        else:
            terms, depth = self._rewrite(y, x, tally)
            coeff = -coeff
        for c, k in terms.items():
            acc[c] = acc.get(c, 0) + coeff * k
        return depth

    def cache_size(self) -> int:
        return len(self._memo)


def decompose(hall_set: HallSet, a: TreeId, b: TreeId,
              collect_stats: bool = False) -> Tuple[LieSeries, Optional[DecompStats]]:
    """Series of [a, b] on the basis; with collect_stats, the call depth and memo use of this call"""
    return hall_set.decomposer.decompose(a, b, collect_stats)


def bracket_series(s1: LieSeries, s2: LieSeries) -> LieSeries:
    s1._same_set(s2)
    hs = s1.hall_set
    acc: Dict[TreeId, int] = {}
    for x, cx in s1.items():
        for y, cy in s2.items():
            series, _ = decompose(hs, x, y)
            for c, k in series.items():
                acc[c] = acc.get(c, 0) + cx * cy * k
    return LieSeries(hs, acc)


def add_series(s1: LieSeries, s2: LieSeries) -> LieSeries:
    s1._same_set(s2)
    acc = s1.as_dict()
    for c, k in s2.items():
        acc[c] = acc.get(c, 0) + k
    return LieSeries(s1.hall_set, acc)


def scale_series(s: LieSeries, k: int) -> LieSeries:
    return LieSeries(s.hall_set, {c: k * v for c, v in s.items()})


def tree_series(hall_set: HallSet, t: TreeId) -> LieSeries:
    """Series of the evaluation of any tree, members map to themselves"""
    m = hall_set.magma
    length = m.length(t)
    if length > hall_set.max_len:
        raise CapacityError(f"tree of length {length} exceeds max length {hall_set.max_len}",
                            {"length": length, "max_len": hall_set.max_len})
    if hall_set.contains(t):
        return LieSeries.single(hall_set, t)
    left, right = m.children(t)
    return bracket_series(tree_series(hall_set, left), tree_series(hall_set, right))


def norm_of(s: LieSeries) -> int:
    return s.norm


def support_of(s: LieSeries) -> frozenset:
    return s.support
