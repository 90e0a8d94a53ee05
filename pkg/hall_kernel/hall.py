"""
Hall set generation, membership and r(a, b)
"""

import logging
from bisect import bisect_left
from dataclasses import dataclass
from typing import Any, Dict, Iterable, Iterator, List, Optional, Union

from sympy import divisors
from sympy.ntheory import mobius

from .magma import Magma, TreeId
from .order import HallOrder, HallOrderSpec, make_order
from .utils.error_handling import CapacityError, DomainError, ErrorCategory, KernelError


@dataclass(frozen=True)
class RFactor:
    """r(a, b): exact, or only known to be at least `value`"""
    value: int
    exact: bool = True

    @property
    def is_finite(self) -> bool:
        return self.exact

    def __str__(self) -> str:
        return str(self.value) if self.exact else f">={self.value}"


def Finite(r: int) -> RFactor:
    return RFactor(r, True)


def AtLeast(cap: int) -> RFactor:
    return RFactor(cap, False)


class NotMemberError(KernelError):
    """A tree expected in the Hall set is not a member"""

    def __init__(self, text: str, order: str):
        super().__init__("NOT_A_MEMBER", f"{text} is not in the {order} Hall set",
                         ErrorCategory.VALIDATION, context={"tree": text, "order": order})


class HallSet:
    """Hall set up to max_len, stratified by length and sorted by its order.

    Immutable once generated. Membership above max_len raises CapacityError;
    is_hall_pair decides the defining condition for any two members and is
    the one query that stays valid past max_len.

    A lazy set skips enumeration and decides membership recursively from
    the axioms; it serves decompositions of long brackets but has no
    by_length, members or rank.
    """

    def __init__(self, order: HallOrder, max_len: int, lazy: bool = False):
        if max_len < 1:
            raise ValueError(f"max_len must be positive, got {max_len}")
        self.order = order
        self.magma: Magma = order.magma
        self.spec: HallOrderSpec = order.spec
        self.max_len = max_len
        self.lazy = lazy
        self.by_length: List[List[TreeId]] = [[] for _ in range(max_len + 1)]
        self.members: List[TreeId] = []
        self._rank: Dict[TreeId, int] = {}
        self._known: Dict[TreeId, bool] = {}
        self._decomposer = None
        self.logger = logging.getLogger("HallSet")

    # -- generation ----------------------------------------------------------

    def _generate(self):
        order, m = self.order, self.magma
        key = order.sort_key
        self.by_length[1] = order.sorted(range(self.spec.alphabet_size))
        letters = self.by_length[1]

        for n in range(2, self.max_len + 1):
            nodes: List[TreeId] = []
            shorter = self.by_length[n - 1]
            for x in letters:
                hi = bisect_left(shorter, key(x), key=key)
                nodes.extend(m.intern_node(a, x) for a in shorter[:hi])
            for size in range(2, n):
                pool = self.by_length[n - size]
                for b in self.by_length[size]:
                    lo = bisect_left(pool, key(m.lambda_of(b)), key=key)
                    hi = bisect_left(pool, key(b), key=key)
                    nodes.extend(m.intern_node(a, b) for a in pool[lo:hi])
            for t in nodes:
                if not order.in_domain(t):
                    raise DomainError(f"generated {m.format_tree(t)} outside the domain of {self.spec.name}")
            self.by_length[n] = order.sorted(nodes)
            self.logger.debug(f"length {n}: {len(nodes)} elements")

        self.members = order.sorted([t for level in self.by_length for t in level])
        self._rank = {t: i for i, t in enumerate(self.members)}
        self.logger.info(f"generated {self.spec.name} Hall set over {self.spec.alphabet_size} letters "
                         f"up to length {self.max_len}: {len(self.members)} elements")

    # -- queries ---------------------------------------------------------------

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[TreeId]:
        return iter(self.members)

    def __contains__(self, t: TreeId) -> bool:
        return self.contains(t)

    def contains(self, t: TreeId) -> bool:
        length = self.magma.length(t)
        if length > self.max_len:
            raise CapacityError(f"membership of a length-{length} tree asked of a set generated up to {self.max_len}",
                                {"length": length, "max_len": self.max_len})
        if self.lazy:
            return self._member_by_axioms(t)
        return t in self._rank

    def _member_by_axioms(self, t: TreeId) -> bool:
        known = self._known.get(t)
        if known is not None:
            return known
        m = self.magma
        if m.is_leaf(t):
            result = True
        else:
            left, right = m.children(t)
            result = (self._member_by_axioms(left) and self._member_by_axioms(right)
                      and self.is_hall_pair(left, right))
        self._known[t] = result
        return result

    def require_enumerated(self):
        if self.lazy:
            raise KernelError("NOT_ENUMERATED", f"the lazy {self.spec.name} set has no enumeration",
                              ErrorCategory.VALIDATION)

    def is_basis_bracket(self, b1: TreeId, b2: TreeId) -> bool:
        total = self.magma.length(b1) + self.magma.length(b2)
        if total > self.max_len:
            raise CapacityError(f"bracket of total length {total} exceeds max length {self.max_len}",
                                {"length": total, "max_len": self.max_len})
        return self.contains(self.magma.intern_node(b1, b2))

    def is_hall_pair(self, b1: TreeId, b2: TreeId) -> bool:
        """(b1, b2) is in the Hall set, for members b1, b2 of any total length"""
        sign = self.order.sign
        if sign(b1, b2) >= 0:
            return False
        return self.magma.is_leaf(b2) or sign(self.magma.lambda_of(b2), b1) <= 0

    def is_alphabetic(self, elems: Iterable[TreeId]) -> bool:
        """Every increasing pair of distinct elements forms a basis bracket"""
        ordered = self.order.sorted(set(elems))
        return all(self.is_hall_pair(x, y)
                   for i, x in enumerate(ordered) for y in ordered[i + 1:])

    def rank(self, t: TreeId) -> int:
        """Position of a member in the ascending basis order"""
        self.require_enumerated()
        found = self._rank.get(t)
        if found is None:
            self.contains(t)
            raise NotMemberError(self.magma.format_tree(t), self.spec.name)
        return found

    def require_member(self, t: TreeId) -> TreeId:
        if not self.contains(t):
            raise NotMemberError(self.magma.format_tree(t), self.spec.name)
        return t

    def compare(self, t1: TreeId, t2: TreeId) -> int:
        return self.order.sign(t1, t2)

    def r_factor(self, a: TreeId, b: TreeId, cap: int) -> RFactor:
        """Smallest r >= 1 with underline-ad_b^{r+1}(a) outside the set, searched below cap"""
        if cap < 1:
            raise ValueError(f"cap must be positive, got {cap}")
        self.require_member(a)
        self.require_member(b)
        if not self.is_hall_pair(a, b):
            raise ValueError(f"({self.magma.format_tree(a)},{self.magma.format_tree(b)}) is not in the Hall set")
        t = self.magma.intern_node(a, b)
        for r in range(1, cap):
            if not self.is_hall_pair(t, b):
                return Finite(r)
            t = self.magma.intern_node(t, b)
        return AtLeast(cap)

    def format(self, t: TreeId) -> str:
        return self.magma.format_tree(t)

    @property
    def decomposer(self):
        if self._decomposer is None:
            from .decomp import Decomposer
            self._decomposer = Decomposer(self)
        return self._decomposer

    def to_json(self) -> Dict[str, Any]:
        self.require_enumerated()
        return {
            "order": self.spec.name,
            "alphabet": self.spec.alphabet_size,
            "maxLen": self.max_len,
            "elements": [[self.format(t) for t in self.by_length[n]]
                         for n in range(1, self.max_len + 1)],
        }


def generate(spec: Union[HallOrderSpec, HallOrder], max_len: int,
             magma: Optional[Magma] = None, lazy: bool = False) -> HallSet:
    """Build the Hall set of an order up to max_len"""
    order = spec if isinstance(spec, HallOrder) else make_order(spec, magma)
    hall_set = HallSet(order, max_len, lazy)
    if not lazy:
        hall_set._generate()
    return hall_set


def witt_dimension(k: int, n: int) -> int:
    """(1/n) Σ_{d|n} μ(d) k^{n/d}"""
    if k < 1 or n < 1:
        raise ValueError(f"witt_dimension needs k >= 1 and n >= 1, got k={k}, n={n}")
    return sum(int(mobius(d)) * k ** (n // d) for d in divisors(n)) // n
