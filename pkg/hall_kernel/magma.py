"""
Free magma over a finite ordered alphabet, as hash-consed binary trees
"""

import logging
import threading
from dataclasses import dataclass
from typing import Dict, List, Tuple, Union

import pyparsing as pp

from .utils.error_handling import AlphabetError, ParseError

TreeId = int

LEAF = -1


@dataclass(frozen=True)
class Letter:
    """A letter X<index> of the alphabet"""
    index: int

    @property
    def name(self) -> str:
        return f"X{self.index}"


def _bracket_grammar() -> pp.ParserElement:
    expr = pp.Forward()
    letter = pp.Regex(r"X[0-9]+")
    node = pp.Group(pp.Suppress("[") + expr + pp.Suppress(",") + expr + pp.Suppress("]"))
    expr <<= letter | node
    return expr


_GRAMMAR = _bracket_grammar()


class Magma:
    """Interner for the trees of Br(X) with |X| = alphabet_size.

    Ids are dense and assigned in creation order; the letters X0..X(k-1)
    own ids 0..k-1. Structural data (length, foliage, letter counts) is
    computed once at intern time. Creating nodes is serialized by a lock,
    reading existing ids never locks.
    """

    def __init__(self, alphabet_size: int):
        if alphabet_size < 2:
            raise ValueError(f"alphabet size must be at least 2, got {alphabet_size}")
        self.alphabet_size = alphabet_size
        self.logger = logging.getLogger("Magma")
        self._lock = threading.Lock()
        self._left: List[int] = []
        self._right: List[int] = []
        self._length: List[int] = []
        self._foliage: List[Tuple[int, ...]] = []
        self._counts: List[Tuple[int, ...]] = []
        self._index: Dict[Tuple[int, int], TreeId] = {}

        for i in range(alphabet_size):
            counts = [0] * alphabet_size
            counts[i] = 1
            self._left.append(LEAF)
            self._right.append(i)
            self._length.append(1)
            self._foliage.append((i,))
            self._counts.append(tuple(counts))

    def __len__(self) -> int:
        return len(self._length)

    # -- interning ---------------------------------------------------------

    def intern_leaf(self, letter: Union[Letter, int]) -> TreeId:
        """Canonical id of a letter"""
        index = letter.index if isinstance(letter, Letter) else letter
        if not 0 <= index < self.alphabet_size:
            raise AlphabetError(index, self.alphabet_size)
        return index

    def intern_node(self, left: TreeId, right: TreeId) -> TreeId:
        """Canonical id of the pair (left, right)"""
        self._check(left)
        self._check(right)
        key = (left, right)
        found = self._index.get(key)
        if found is not None:
            return found
        with self._lock:
            found = self._index.get(key)
            if found is not None:
                return found
            tid = len(self._length)
            self._left.append(left)
            self._right.append(right)
            self._length.append(self._length[left] + self._length[right])
            self._foliage.append(self._foliage[left] + self._foliage[right])
            self._counts.append(tuple(x + y for x, y in zip(self._counts[left], self._counts[right])))
            self._index[key] = tid
        return tid

    def _check(self, t: TreeId):
        if not isinstance(t, int) or not 0 <= t < len(self._length):
            raise ValueError(f"unknown tree id {t!r}")

    # -- accessors -----------------------------------------------------------

    def is_leaf(self, t: TreeId) -> bool:
        return self._left[t] == LEAF

    def letter_of(self, t: TreeId) -> Letter:
        if not self.is_leaf(t):
            raise ValueError(f"{self.format_tree(t)} is not a letter")
        return Letter(self._right[t])

    def length(self, t: TreeId) -> int:
        return self._length[t]

    def foliage(self, t: TreeId) -> Tuple[int, ...]:
        return self._foliage[t]

    def letter_counts(self, t: TreeId) -> Tuple[int, ...]:
        return self._counts[t]

    def lambda_of(self, t: TreeId) -> TreeId:
        """Left factor of a node; undefined on letters"""
        self._check(t)
        if self.is_leaf(t):
            raise ValueError(f"lambda is undefined on the letter {self.format_tree(t)}")
        return self._left[t]

    def mu_of(self, t: TreeId) -> TreeId:
        """Right factor of a node; undefined on letters"""
        self._check(t)
        if self.is_leaf(t):
            raise ValueError(f"mu is undefined on the letter {self.format_tree(t)}")
        return self._right[t]

    def children(self, t: TreeId) -> Tuple[TreeId, TreeId]:
        return self._left[t], self._right[t]

    def iterated_left_factors(self, t: TreeId) -> List[TreeId]:
        """The chain t, λ(t), λ²(t), ... down to the leftmost letter"""
        self._check(t)
        chain = [t]
        while not self.is_leaf(chain[-1]):
            chain.append(self._left[chain[-1]])
        return chain

    def ad_power(self, base: TreeId, arg: TreeId, n: int, side: str = "left") -> TreeId:
        """left: ad_base^n(arg) = (base, (base, ... arg)); right: (((arg, base), base) ...)"""
        if n < 0:
            raise ValueError(f"power must be nonnegative, got {n}")
        if side not in ("left", "right"):
            raise ValueError(f"side must be 'left' or 'right', got {side!r}")
        t = arg
        for _ in range(n):
            t = self.intern_node(base, t) if side == "left" else self.intern_node(t, base)
        return t

    def count_letter(self, t: TreeId, letter: Union[Letter, int]) -> int:
        index = self.intern_leaf(letter)
        return self._counts[t][index]

    def max_letter(self, t: TreeId) -> int:
        """Largest letter index occurring in t"""
        counts = self._counts[t]
        return max(i for i, c in enumerate(counts) if c)

    def letter_index(self, t: TreeId) -> int:
        return self._right[t] if self.is_leaf(t) else LEAF

    # -- text ------------------------------------------------------------------

    def format_tree(self, t: TreeId) -> str:
        """Canonical text, no whitespace"""
        if self.is_leaf(t):
            return f"X{self._right[t]}"
        return f"[{self.format_tree(self._left[t])},{self.format_tree(self._right[t])}]"

    def parse_tree(self, text: str) -> TreeId:
        """Parse the bracket grammar expr := letter | "[" expr "," expr "]" """
        try:
            parsed = _GRAMMAR.parse_string(text, parse_all=True)
        except pp.ParseException as e:
            raise ParseError(f"cannot parse bracket {text!r}: {e.msg}", e.loc, text) from e
        return self._build(parsed[0])

    def _build(self, item) -> TreeId:
        if isinstance(item, str):
            return self.intern_leaf(int(item[1:]))
        left, right = item[0], item[1]
        return self.intern_node(self._build(left), self._build(right))

    def build(self, nested) -> TreeId:
        """Intern a nested structure of ints (letters) and 2-tuples (nodes)"""
        if isinstance(nested, int):
            return self.intern_leaf(nested)
        left, right = nested
        return self.intern_node(self.build(left), self.build(right))
