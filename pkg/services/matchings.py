"""匹配枚举与交换计数

N(λ)：与循环型为 λ 的固定置换可交换的匹配个数。提供分块闭式公式、
暴力校验和按轮换结构直接构造三种算法，三者互为校验。
"""
from itertools import product
from math import factorial
from typing import Dict, Iterator, List, Optional, Tuple

from ..models.errors import CapExceededError, MalformedInputError, SizeMismatchError, exact_div
from ..models.matching import Matching, Permutation
from ..models.partition import Partition
from ..models.run import DEFAULT_ENUM_CAP
from ..utils.logger import logger


def double_factorial(k: int) -> int:
    """k!! ，k <= 0 时为 1"""
    result = 1
    while k > 1:
        result *= k
        k -= 2
    return result


def matching_count(m: int) -> int:
    """2m 个点上的匹配总数 (2m-1)!!"""
    return double_factorial(2 * m - 1)


def check_cap(size: int, cap: int, what: str = "枚举"):
    if size > cap:
        raise CapExceededError(f"{what}规模 2m={size} 超过上限 {cap}")


def enumerate_matchings(m: int, cap: int = DEFAULT_ENUM_CAP) -> Iterator[Matching]:
    """枚举 2m 个点上的全部匹配

    顺序固定：最小的未配对点依次与每个更大的未配对点配对，递归展开。
    """
    n = 2 * m
    check_cap(n, cap)
    pair = [-1] * n

    def extend(start: int) -> Iterator[Matching]:
        while start < n and pair[start] >= 0:
            start += 1
        if start == n:
            yield Matching(tuple(pair))
            return
        for partner in range(start + 1, n):
            if pair[partner] >= 0:
                continue
            pair[start], pair[partner] = partner, start
            yield from extend(start + 1)
            pair[start] = pair[partner] = -1

    return extend(0)


def conjugate(sigma: Permutation, tau: Matching) -> Matching:
    """σ τ σ⁻¹：把 τ 的每个点对 (i j) 换成 (σ(i) σ(j))"""
    if sigma.size != tau.size:
        raise SizeMismatchError(f"置换与匹配的点数不一致: {sigma.size} != {tau.size}")
    image = sigma.image
    result = [0] * tau.size
    for i, j in enumerate(tau.pair):
        result[image[i]] = image[j]
    return Matching(tuple(result))


def n_brick(a: int, b: int) -> int:
    """N((a^b))：与 b 个长度为 a 的轮换之积可交换的匹配个数"""
    if a < 1 or b < 0:
        raise MalformedInputError(f"n_brick 参数非法: a={a}, b={b}")
    if a % 2 and b % 2:
        return 0
    if a % 2:
        h = b // 2
        return exact_div(factorial(b) * a ** h, 2 ** h * factorial(h), f"N(({a}^{b}))")
    total = 0
    for i in range(b % 2, b + 1, 2):
        h = (b - i) // 2
        total += exact_div(
            factorial(b) * a ** h,
            factorial(i) * factorial(h) * 2 ** h,
            f"N(({a}^{b})) 第 i={i} 项",
        )
    return total


def n_of(lam: Partition) -> int:
    """N(λ) = ∏_a N((a^{b_a}))；总和为奇数时为 0"""
    if lam.d % 2:
        return 0
    result = 1
    for a, b in lam.mults.items():
        result *= n_brick(a, b)
        if not result:
            break
    return result


def canonical_permutation(lam: Partition) -> Permutation:
    """循环型为 λ 的代表置换：按长度降序用连续整数填充各轮换"""
    cycles: List[List[int]] = []
    start = 0
    for part in lam.parts:
        cycles.append(list(range(start, start + part)))
        start += part
    return Permutation.from_cycles(cycles, lam.d, one_based=False)


def count_commuting_brute(lam: Partition, cap: int = DEFAULT_ENUM_CAP) -> int:
    """暴力枚举全部匹配，统计与代表置换可交换者"""
    if lam.d % 2:
        return 0
    check_cap(lam.d, cap)
    g = canonical_permutation(lam)
    count = sum(1 for tau in enumerate_matchings(lam.d // 2, cap) if g.commutes_with(tau))
    logger.debug(f"暴力计数 N({lam}) = {count}")
    return count


def _cycle_pairings(cycles: List[Tuple[int, ...]]) -> Iterator[List[Tuple[int, int]]]:
    """同长度轮换的全部可交换配对方式

    每个轮换要么由自身的半次幂配对 (仅偶数长度)，要么与另一个轮换按某个循环位移整体配对。
    """
    if not cycles:
        yield []
        return
    first, rest = cycles[0], cycles[1:]
    a = len(first)
    if a % 2 == 0:
        half = a // 2
        own = [(first[k], first[k + half]) for k in range(half)]
        for tail in _cycle_pairings(rest):
            yield own + tail
    for idx, other in enumerate(rest):
        remaining = rest[:idx] + rest[idx + 1:]
        for shift in range(a):
            joined = [(first[k], other[(k + shift) % a]) for k in range(a)]
            for tail in _cycle_pairings(remaining):
                yield joined + tail


def commuting_matchings(sigma: Permutation) -> List[Matching]:
    """构造与 σ 可交换的全部匹配，按配对数组排序，各出现一次"""
    if sigma.size % 2:
        return []
    by_length: Dict[int, List[Tuple[int, ...]]] = {}
    for cycle in sigma.cycles():
        by_length.setdefault(len(cycle), []).append(cycle)
    choices = [list(_cycle_pairings(cycles)) for _, cycles in sorted(by_length.items())]
    found = []
    for combo in product(*choices):
        pair = [0] * sigma.size
        for block in combo:
            for i, j in block:
                pair[i], pair[j] = j, i
        found.append(Matching(tuple(pair)))
    found.sort(key=lambda t: t.pair)
    return found


def fixed_matching_count(sigma: Permutation, cap: Optional[int] = None) -> int:
    """直接检验交换性，统计 σ 固定的匹配个数"""
    cap = cap if cap is not None else DEFAULT_ENUM_CAP
    if sigma.size % 2:
        return 0
    return sum(1 for tau in enumerate_matchings(sigma.size // 2, cap) if sigma.commutes_with(tau))


def brick_matchings_two_cycles(a: int) -> List[Matching]:
    """与两个 a 轮换之积可交换的匹配：a 为偶数时 a+1 个，奇数时 a 个"""
    if a < 1:
        raise MalformedInputError(f"轮换长度必须 >= 1: {a}")
    sigma = Permutation.from_cycles([range(a), range(a, 2 * a)], 2 * a, one_based=False)
    return commuting_matchings(sigma)
