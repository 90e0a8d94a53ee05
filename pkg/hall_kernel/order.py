"""
Hall orders: a uniform comparison interface and the concrete orders
"""

import re
import threading
from abc import ABC, abstractmethod
from dataclasses import dataclass
from enum import Enum, IntEnum
from functools import cmp_to_key
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .magma import Magma, TreeId
from .utils.error_handling import DomainError, ErrorCategory, KernelError

X0, X1 = 0, 1


class OrderKind(Enum):
    LENGTH_LEX = "lengthLex"
    LYNDON = "lyndon"
    FIBO_MIN = "fiboMin"
    SUPER_GEOM = "superGeom"
    SHARP_EN1 = "sharpEn1"
    # max-leaf order used only by the alphabetic factorial family
    ALPHABETIC = "alphabetic"


CLI_NAMES = {
    OrderKind.LENGTH_LEX: "length",
    OrderKind.LYNDON: "lyndon",
    OrderKind.FIBO_MIN: "fibo",
    OrderKind.SUPER_GEOM: "supergeom",
}

_SHARP_RE = re.compile(r"^sharp:([0-9]+)$")


class Comparison(IntEnum):
    LESS = -1
    EQUAL = 0
    GREATER = 1


def _sign(x: int) -> int:
    return (x > 0) - (x < 0)


@dataclass(frozen=True)
class HallOrderSpec:
    """Which order, over which alphabet"""
    kind: OrderKind
    alphabet_size: int
    n: Optional[int] = None

    def __post_init__(self):
        k = self.alphabet_size
        if k < 2:
            raise _invalid(f"alphabet size must be at least 2, got {k}")
        if self.kind in (OrderKind.FIBO_MIN, OrderKind.SUPER_GEOM) and k != 2:
            raise _invalid(f"order {self.name} requires alphabet 2, got {k}")
        if self.kind == OrderKind.SHARP_EN1:
            if self.n is None or self.n < 2:
                raise _invalid("order sharp:<n> requires n >= 2")
            if k != self.n + 1:
                raise _invalid(f"order sharp:{self.n} requires alphabet {self.n + 1}, got {k}")

    @property
    def name(self) -> str:
        if self.kind == OrderKind.SHARP_EN1:
            return f"sharp:{self.n}"
        return CLI_NAMES.get(self.kind, self.kind.value)

    @classmethod
    def parse(cls, text: str, alphabet_size: Optional[int] = None) -> "HallOrderSpec":
        """Build a spec from a CLI order name: length, lyndon, fibo, supergeom, sharp:<n>"""
        match = _SHARP_RE.match(text)
        if match:
            n = int(match.group(1))
            return cls(OrderKind.SHARP_EN1, alphabet_size if alphabet_size is not None else n + 1, n)
        for kind, name in CLI_NAMES.items():
            if text == name:
                if alphabet_size is None:
                    alphabet_size = 2
                return cls(kind, alphabet_size)
        raise _invalid(f"unknown order {text!r}; expected one of "
                       f"{', '.join(CLI_NAMES.values())}, sharp:<n>")


def _invalid(message: str) -> KernelError:
    return KernelError("INVALID_ORDER", message, ErrorCategory.VALIDATION)


class HallOrder(ABC):
    """Strict total order on a domain of trees, memoized by id pair"""

    def __init__(self, spec: HallOrderSpec, magma: Magma, memoize: bool = True):
        if magma.alphabet_size != spec.alphabet_size:
            raise _invalid(f"order {spec.name} is over {spec.alphabet_size} letters, "
                           f"magma over {magma.alphabet_size}")
        self.spec = spec
        self.magma = magma
        self.memoize = memoize
        self._memo: Dict[Tuple[TreeId, TreeId], int] = {}
        self._lock = threading.Lock()
        self.sort_key = cmp_to_key(self._cmp)

    def compare(self, t1: TreeId, t2: TreeId) -> Comparison:
        for t in (t1, t2):
            if not self.in_domain(t):
                raise DomainError(f"{self.magma.format_tree(t)} is outside the domain of order {self.spec.name}",
                                  {"order": self.spec.name, "tree": self.magma.format_tree(t)})
        return Comparison(self._cmp(t1, t2))

    def less(self, t1: TreeId, t2: TreeId) -> bool:
        return self.compare(t1, t2) == Comparison.LESS

    def sign(self, t1: TreeId, t2: TreeId) -> int:
        """compare as -1/0/1 without the domain check, for trees already known to be in it"""
        return self._cmp(t1, t2)

    def in_domain(self, t: TreeId) -> bool:
        return True

    def sorted(self, trees: Sequence[TreeId]) -> List[TreeId]:
        return sorted(trees, key=self.sort_key)

    def _cmp(self, t1: TreeId, t2: TreeId) -> int:
        if t1 == t2:
            return 0
        if not self.memoize:
            return self._compare(t1, t2)
        if t1 < t2:
            key, flip = (t1, t2), 1
        else:
            key, flip = (t2, t1), -1
        cached = self._memo.get(key)
        if cached is None:
            cached = self._compare(*key)
            with self._lock:
                self._memo[key] = cached
        return cached * flip

    @abstractmethod
    def _compare(self, t1: TreeId, t2: TreeId) -> int:
        """-1, 0 or 1 for two distinct trees"""


class LengthLexOrder(HallOrder):
    """Lexicographic on (|t|, λ(t), μ(t)), letters by index"""

    def _compare(self, t1: TreeId, t2: TreeId) -> int:
        m = self.magma
        l1, l2 = m.length(t1), m.length(t2)
        if l1 != l2:
            return -1 if l1 < l2 else 1
        if l1 == 1:
            return _sign(t1 - t2)
        a1, b1 = m.children(t1)
        a2, b2 = m.children(t2)
        return self._cmp(a1, a2) or self._cmp(b1, b2)


class LyndonOrder(HallOrder):
    """Lexicographic on foliage words, a proper prefix being smaller.

    Distinct trees may share a foliage; lengthLex breaks those ties. Within
    a Lyndon Hall set foliages are pairwise distinct so the tie-break never
    decides a comparison between members.
    """

    def __init__(self, spec: HallOrderSpec, magma: Magma, memoize: bool = True):
        super().__init__(spec, magma, memoize)
        self._tie = LengthLexOrder(HallOrderSpec(OrderKind.LENGTH_LEX, spec.alphabet_size), magma, memoize)

    def _compare(self, t1: TreeId, t2: TreeId) -> int:
        f1, f2 = self.magma.foliage(t1), self.magma.foliage(t2)
        if f1 != f2:
            return -1 if f1 < f2 else 1
        return self._tie._cmp(t1, t2)


class FiboMinOrder(HallOrder):
    """X0 < Br(X) minus X < X1, non-letters lexicographic on (λ, μ)"""

    def _rank(self, t: TreeId) -> int:
        if t == X0:
            return 0
        if t == X1:
            return 2
        return 1

    def _compare(self, t1: TreeId, t2: TreeId) -> int:
        r1, r2 = self._rank(t1), self._rank(t2)
        if r1 != r2:
            return -1 if r1 < r2 else 1
        m = self.magma
        a1, b1 = m.children(t1)
        a2, b2 = m.children(t2)
        return self._cmp(a1, a2) or self._cmp(b1, b2)


@dataclass(frozen=True)
class SuperGeomKey:
    score: int
    germ: TreeId
    tail_power: int


class SuperGeomOrder(HallOrder):
    """Score-based order on G = {X0, X1} ∪ G*.

    A_i = ad_{X0}^i(X1) are the blocks; Br_A is the submagma they generate
    and G* the elements of Br_A whose leftmost letter is not X1. Inside G*
    the key is (s(b), λ(b*), μ(b*), ν(b)) where b = b* 1^ν and the germ b*
    is a block or does not end with X1.
    """

    def __init__(self, spec: HallOrderSpec, magma: Magma, memoize: bool = True):
        super().__init__(spec, magma, memoize)
        self._fallback = LengthLexOrder(HallOrderSpec(OrderKind.LENGTH_LEX, 2), magma, memoize)
        self._blocks: Dict[TreeId, Optional[int]] = {}
        self._in_br_a: Dict[TreeId, bool] = {}
        self._scores: Dict[TreeId, int] = {}

    @staticmethod
    def block_score(i: int) -> int:
        if i <= 2:
            return i
        return 3 * 2 ** (i - 3)

    def block(self, i: int) -> TreeId:
        """A_i = ad_{X0}^i(X1)"""
        return self.magma.ad_power(X0, X1, i, "left")

    def block_index(self, t: TreeId) -> Optional[int]:
        if t in self._blocks:
            return self._blocks[t]
        m = self.magma
        i, cur = 0, t
        while not m.is_leaf(cur) and m.lambda_of(cur) == X0:
            i += 1
            cur = m.mu_of(cur)
        found = i if cur == X1 else None
        self._blocks[t] = found
        return found

    def in_br_a(self, t: TreeId) -> bool:
        cached = self._in_br_a.get(t)
        if cached is not None:
            return cached
        if self.block_index(t) is not None:
            result = True
        elif self.magma.is_leaf(t):
            result = False
        else:
            left, right = self.magma.children(t)
            result = self.in_br_a(left) and self.in_br_a(right)
        self._in_br_a[t] = result
        return result

    def in_g_star(self, t: TreeId) -> bool:
        return t != X1 and self.in_br_a(t) and self.magma.foliage(t)[0] != X1

    def in_domain(self, t: TreeId) -> bool:
        return t == X0 or t == X1 or self.in_g_star(t)

    def score(self, t: TreeId) -> int:
        """Additive score on Br_A"""
        cached = self._scores.get(t)
        if cached is not None:
            return cached
        i = self.block_index(t)
        if i is not None:
            s = self.block_score(i)
        elif self.in_br_a(t):
            left, right = self.magma.children(t)
            s = self.score(left) + self.score(right)
        else:
            raise DomainError(f"{self.magma.format_tree(t)} is not generated by the blocks A_i")
        self._scores[t] = s
        return s

    def germ(self, t: TreeId) -> Tuple[TreeId, int]:
        """(b*, ν) with b = underline-ad_{X1}^ν(b*)"""
        if not self.in_g_star(t):
            raise DomainError(f"{self.magma.format_tree(t)} is not in G*")
        m = self.magma
        nu = 0
        while self.block_index(t) is None and m.mu_of(t) == X1:
            t = m.lambda_of(t)
            nu += 1
        return t, nu

    def key(self, t: TreeId) -> SuperGeomKey:
        germ, nu = self.germ(t)
        return SuperGeomKey(self.score(t), germ, nu)

    def _rank(self, t: TreeId) -> int:
        if t == X0:
            return 0
        if t == X1:
            return 2
        return 1

    def _extended(self, u: TreeId, v: TreeId) -> int:
        """Total order on Br(X): G first with its own order, then lengthLex"""
        gu, gv = self.in_domain(u), self.in_domain(v)
        if gu and gv:
            return self._cmp(u, v)
        if gu != gv:
            return -1 if gu else 1
        return self._fallback._cmp(u, v)

    def _compare(self, t1: TreeId, t2: TreeId) -> int:
        r1, r2 = self._rank(t1), self._rank(t2)
        if r1 != r2:
            return -1 if r1 < r2 else 1
        k1, k2 = self.key(t1), self.key(t2)
        if k1.score != k2.score:
            return -1 if k1.score < k2.score else 1
        m = self.magma
        l1, m1 = m.children(k1.germ)
        l2, m2 = m.children(k2.germ)
        return (self._extended(l1, l2) or self._extended(m1, m2)
                or _sign(k1.tail_power - k2.tail_power))


class SharpEn1Order(HallOrder):
    """Order over X0..Xn saturating the general θ bound.

    Pieces: 1 = left combs a_π = (..((X0, X_π1), X_π2).., X_πp) with
    increasing indices >= 2; 2 = X1 and (..(X1, Xn).., Xj); 3 = trees over
    X2..Xn, ordered by largest letter first; 4 = trees with one X0 and one
    X1 where X1 is a sibling of some a_π, on either side. Pieces come in that order,
    everything else after them; lengthLex decides within a piece.
    """

    OUTSIDE = 5

    def __init__(self, spec: HallOrderSpec, magma: Magma, memoize: bool = True):
        super().__init__(spec, magma, memoize)
        self.n = spec.n
        self._base = LengthLexOrder(HallOrderSpec(OrderKind.LENGTH_LEX, spec.alphabet_size), magma, memoize)
        self._pieces: Dict[TreeId, int] = {}

    def is_a_pi(self, t: TreeId) -> bool:
        m = self.magma
        last = self.n + 1
        while not m.is_leaf(t):
            right = m.mu_of(t)
            if not m.is_leaf(right):
                return False
            j = m.letter_index(right)
            if j < 2 or j >= last:
                return False
            last = j
            t = m.lambda_of(t)
        return t == X0

    def is_x1_chain(self, t: TreeId) -> bool:
        m = self.magma
        expected = None
        rights = []
        while not m.is_leaf(t):
            right = m.mu_of(t)
            if not m.is_leaf(right):
                return False
            rights.append(m.letter_index(right))
            t = m.lambda_of(t)
        if t != X1:
            return False
        rights.reverse()
        expected = list(range(self.n, self.n - len(rights), -1))
        return rights == expected and all(j >= 2 for j in rights)

    def is_pi_bracket(self, t: TreeId) -> bool:
        """Bracketings with X1 next to an a_π element, on either side of it"""
        m = self.magma
        counts = m.letter_counts(t)
        if counts[X0] != 1 or counts[X1] != 1:
            return False
        stack = [t]
        while stack:
            cur = stack.pop()
            if m.is_leaf(cur):
                continue
            left, right = m.children(cur)
            # X1 occurs once, so its parent is the only candidate
            if right == X1:
                return self.is_a_pi(left)
            if left == X1:
                return self.is_a_pi(right)
            stack.extend((left, right))
        return False

    def piece(self, t: TreeId) -> int:
        cached = self._pieces.get(t)
        if cached is not None:
            return cached
        counts = self.magma.letter_counts(t)
        if self.is_a_pi(t):
            p = 1
        elif self.is_x1_chain(t):
            p = 2
        elif counts[X0] == 0 and counts[X1] == 0:
            p = 3
        elif self.is_pi_bracket(t):
            p = 4
        else:
            p = self.OUTSIDE
        self._pieces[t] = p
        return p

    def a_pi(self, pi: Sequence[int]) -> TreeId:
        t = X0
        for j in pi:
            t = self.magma.intern_node(t, j)
        return t

    def x1_chain(self, j: int) -> TreeId:
        """(..((X1, Xn), X(n-1)).., Xj), or X1 when j = n + 1"""
        t = X1
        for i in range(self.n, j - 1, -1):
            t = self.magma.intern_node(t, i)
        return t

    def _compare(self, t1: TreeId, t2: TreeId) -> int:
        p1, p2 = self.piece(t1), self.piece(t2)
        if p1 != p2:
            return -1 if p1 < p2 else 1
        if p1 == 3:
            m1, m2 = self.magma.max_letter(t1), self.magma.max_letter(t2)
            if m1 != m2:
                return -1 if m1 < m2 else 1
        return self._base._cmp(t1, t2)


class AlphabeticOrder(HallOrder):
    """Largest letter first, then lengthLex"""

    def __init__(self, spec: HallOrderSpec, magma: Magma, memoize: bool = True):
        super().__init__(spec, magma, memoize)
        self._base = LengthLexOrder(HallOrderSpec(OrderKind.LENGTH_LEX, spec.alphabet_size), magma, memoize)

    def _compare(self, t1: TreeId, t2: TreeId) -> int:
        m1, m2 = self.magma.max_letter(t1), self.magma.max_letter(t2)
        if m1 != m2:
            return -1 if m1 < m2 else 1
        return self._base._cmp(t1, t2)


_ORDER_CLASSES = {
    OrderKind.LENGTH_LEX: LengthLexOrder,
    OrderKind.LYNDON: LyndonOrder,
    OrderKind.FIBO_MIN: FiboMinOrder,
    OrderKind.SUPER_GEOM: SuperGeomOrder,
    OrderKind.SHARP_EN1: SharpEn1Order,
    OrderKind.ALPHABETIC: AlphabeticOrder,
}


def make_order(spec: HallOrderSpec, magma: Optional[Magma] = None, memoize: bool = True) -> HallOrder:
    """Instantiate the comparator for a spec, on a fresh magma unless one is given"""
    if magma is None:
        magma = Magma(spec.alphabet_size)
    return _ORDER_CLASSES[spec.kind](spec, magma, memoize)


# -- Lyndon words ---------------------------------------------------------------

Word = Tuple[int, ...]


def is_lyndon(word: Sequence[int]) -> bool:
    """Nonempty and strictly smaller than each proper rotation"""
    w = tuple(word)
    if not w:
        return False
    return all(w < w[i:] + w[:i] for i in range(1, len(w)))


def lyndon_words(k: int, max_len: int) -> Iterator[Word]:
    """All Lyndon words over k letters up to max_len, in lexicographic order (Duval)"""
    if k < 1 or max_len < 1:
        return
    w = [-1]
    while w:
        w[-1] += 1
        yield tuple(w)
        m = len(w)
        while len(w) < max_len:
            w.append(w[-m])
        while w and w[-1] == k - 1:
            w.pop()


def lyndon_standard_factorization(word: Sequence[int]) -> Tuple[Word, Word]:
    """Split a Lyndon word into Lyndon u, v with |u| maximal"""
    w = tuple(word)
    if len(w) < 2 or not is_lyndon(w):
        raise ValueError(f"{''.join(map(str, w))!r} is not a Lyndon word of length >= 2")
    for i in range(len(w) - 1, 0, -1):
        u, v = w[:i], w[i:]
        if is_lyndon(u) and is_lyndon(v):
            return u, v
    raise ValueError(f"no standard factorization for {''.join(map(str, w))!r}")


def lyndon_bracketing(magma: Magma, word: Sequence[int]) -> TreeId:
    """Bracket a Lyndon word by recursive standard factorization"""
    w = tuple(word)
    if len(w) == 1:
        return magma.intern_leaf(w[0])
    u, v = lyndon_standard_factorization(w)
    return magma.intern_node(lyndon_bracketing(magma, u), lyndon_bracketing(magma, v))


def parse_word(text: str) -> Word:
    """'0011' -> (0, 0, 1, 1); digits are letter indices"""
    if not text or not text.isdigit():
        raise ValueError(f"not a word over digit letters: {text!r}")
    return tuple(int(c) for c in text)
