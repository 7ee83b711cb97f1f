"""稳定不变量维数

dim = Σ_{λ⊢2m} N(λ)^r / z_λ，另有 Burnside 暴力计数作为独立校验。
"""
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import List, Tuple

from ..models.errors import IntegralityError, MalformedInputError, exact_div
from ..models.matching import Permutation
from ..models.partition import Partition, class_size, enumerate_partitions, z_of
from ..models.run import DEFAULT_BRUTE_CAP
from ..utils.logger import logger
from .matchings import canonical_permutation, check_cap, enumerate_matchings, fixed_matching_count, n_of
from .scheduler import WorkScheduler

NAIVE_BRUTE_CAP = 6


def _require_r(r: int):
    if not isinstance(r, int) or r < 1:
        raise MalformedInputError(f"r 必须是正整数: {r}")


@dataclass(frozen=True)
class DimensionQuery:
    """r 个张量因子，次数 d = 2m"""
    r: int
    m: int

    def __post_init__(self):
        _require_r(self.r)
        if not isinstance(self.m, int) or self.m < 0:
            raise MalformedInputError(f"m 必须是非负整数: {self.m}")

    @property
    def d(self) -> int:
        return 2 * self.m


def stable_dimension(r: int, m: int) -> int:
    """稳定维数，精确有理数求和后断言为整数"""
    q = DimensionQuery(r, m)
    total = Fraction(0)
    for lam in enumerate_partitions(q.d):
        n = n_of(lam)
        if n:
            total += Fraction(n ** q.r, z_of(lam))
    if total.denominator != 1:
        raise IntegralityError(f"维数求和不是整数: r={r}, m={m}, 得到 {total}")
    return total.numerator


def dimension_for_degree(r: int, d: int) -> int:
    """按原始次数 d 计算；奇数次没有不变量"""
    _require_r(r)
    if not isinstance(d, int) or d < 0:
        raise MalformedInputError(f"次数必须是非负整数: {d}")
    if d % 2:
        return 0
    return stable_dimension(r, d // 2)


def _class_term(args: Tuple[Tuple[int, ...], int, int]) -> int:
    """一个共轭类对 Burnside 求和的贡献：类大小 × |Fix|^r"""
    parts, r, cap = args
    lam = Partition(parts)
    fixed = fixed_matching_count(canonical_permutation(lam), cap)
    return class_size(lam) * fixed ** r


def burnside_dimension_brute(r: int, m: int, cap: int = DEFAULT_BRUTE_CAP,
                             naive: bool = False, threads: int = 1) -> int:
    """Burnside 引理：轨道数 = (1/|G|) Σ_g |Fix(g)|^r

    默认每个循环型取一个代表并乘以类大小；naive=True 时遍历全部置换 (2m <= 6)，
    不依赖 z_λ 的实现。
    """
    q = DimensionQuery(r, m)
    check_cap(q.d, cap, "Burnside 暴力")
    if naive:
        check_cap(q.d, min(cap, NAIVE_BRUTE_CAP), "Burnside 全置换遍历")
        matchings = list(enumerate_matchings(q.m, cap))
        total = 0
        for image in permutations(range(q.d)):
            g = Permutation(image)
            fixed = sum(1 for tau in matchings if g.commutes_with(tau))
            total += fixed ** q.r
    else:
        work = [(lam.parts, q.r, cap) for lam in enumerate_partitions(q.d)]
        total = sum(WorkScheduler(threads).map(_class_term, work))
    result = exact_div(total, factorial(q.d), f"Burnside 求和 r={r}, m={m}")
    logger.debug(f"Burnside 暴力维数 r={r}, m={m}: {result}")
    return result


def dimension_table(r_max: int, m_max: int) -> List[List[int]]:
    """(r, m) 网格，行 r = 1..r_max，列 m = 1..m_max"""
    if r_max < 1 or m_max < 1:
        raise MalformedInputError(f"表格范围必须为正: r_max={r_max}, m_max={m_max}")
    return [[stable_dimension(r, m) for m in range(1, m_max + 1)] for r in range(1, r_max + 1)]


def dimension_series(r: int, m_max: int) -> List[int]:
    """m = 0..m_max 各次数的维数"""
    if m_max < 0:
        raise MalformedInputError(f"m_max 不能为负: {m_max}")
    return [stable_dimension(r, m) for m in range(m_max + 1)]
