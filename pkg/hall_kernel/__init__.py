"""
Hall kernel
Free Lie algebras on Hall bases: generation, decomposition of brackets,
structure-constant norms and their verification against the free
associative algebra
"""

from .magma import Magma, Letter, TreeId
from .order import HallOrderSpec, OrderKind, make_order
from .hall import HallSet, RFactor, generate, witt_dimension
from .decomp import LieSeries, Folding, decompose, relative_folding, theta, tree_series
from .oracle import NCPoly, eval_tree, verify_decomposition
from .families import FAMILIES, run_family
from .utils.error_handling import KernelError, CapacityError, DomainError, ParseError, AlphabetError

__version__ = "1.0.0"

__all__ = [
    'Magma', 'Letter', 'TreeId',
    'HallOrderSpec', 'OrderKind', 'make_order',
    'HallSet', 'RFactor', 'generate', 'witt_dimension',
    'LieSeries', 'Folding', 'decompose', 'relative_folding', 'theta', 'tree_series',
    'NCPoly', 'eval_tree', 'verify_decomposition',
    'FAMILIES', 'run_family',
    'KernelError', 'CapacityError', 'DomainError', 'ParseError', 'AlphabetError',
]
