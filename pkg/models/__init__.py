"""张量不变量数据模型模块"""
from .errors import (
    InvariantsError, CapExceededError, BudgetExceededError, SizeMismatchError,
    IntegralityError, MalformedInputError, OrthogonalityError,
)
from .partition import Partition
from .matching import Matching, Permutation, MatchingTuple
from .graph import ColoredGraph
from .polynomial import InvariantPolynomial, PowerMonomial, Tensor, OrthogonalTuple
from .tree import PhyloTree, PhyloForest
from .run import RunConfig, RunRecord, RunLedger

__all__ = [
    'InvariantsError',
    'CapExceededError',
    'BudgetExceededError',
    'SizeMismatchError',
    'IntegralityError',
    'MalformedInputError',
    'OrthogonalityError',
    'Partition',
    'Matching',
    'Permutation',
    'MatchingTuple',
    'ColoredGraph',
    'InvariantPolynomial',
    'PowerMonomial',
    'Tensor',
    'OrthogonalTuple',
    'PhyloTree',
    'PhyloForest',
    'RunConfig',
    'RunRecord',
    'RunLedger',
]
