"""整数分拆模型

分拆按降序存储部件，同时保存形状 (1^{b1}2^{b2}...) 的重数表示。
"""
from dataclasses import dataclass, field
from math import factorial
from typing import Dict, Iterable, Iterator, List, Tuple

from .errors import MalformedInputError


@dataclass(frozen=True)
class Partition:
    """整数分拆 λ"""
    parts: Tuple[int, ...]
    mults: Dict[int, int] = field(default_factory=dict, compare=False, hash=False)

    def __post_init__(self):
        parts = tuple(self.parts)
        if any(not isinstance(p, int) or p < 1 for p in parts):
            raise MalformedInputError(f"分拆的部件必须是正整数: {parts}")
        if any(parts[i] < parts[i + 1] for i in range(len(parts) - 1)):
            raise MalformedInputError(f"分拆的部件必须单调不增: {parts}")
        object.__setattr__(self, "parts", parts)
        mults: Dict[int, int] = {}
        for p in parts:
            mults[p] = mults.get(p, 0) + 1
        object.__setattr__(self, "mults", mults)

    @classmethod
    def from_parts(cls, parts: Iterable[int]) -> 'Partition':
        """任意顺序的部件 -> 分拆"""
        return cls(tuple(sorted(parts, reverse=True)))

    @classmethod
    def from_shape(cls, shape: Dict[int, int]) -> 'Partition':
        """从重数表 {a: b_a} 构造"""
        parts: List[int] = []
        for a, b in shape.items():
            if b < 0:
                raise MalformedInputError(f"重数不能为负: {a}^{b}")
            parts.extend([a] * b)
        return cls.from_parts(parts)

    @property
    def d(self) -> int:
        return sum(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def shape_string(self) -> str:
        """形状记号，如 1^2 2^1"""
        if not self.parts:
            return "()"
        return " ".join(f"{a}^{b}" for a, b in sorted(self.mults.items()))

    def to_list(self) -> List[int]:
        return list(self.parts)

    def __str__(self) -> str:
        return "(" + ",".join(str(p) for p in self.parts) + ")"


def _partitions_bounded(d: int, largest: int) -> Iterator[Tuple[int, ...]]:
    if d == 0:
        yield ()
        return
    for first in range(min(d, largest), 0, -1):
        for rest in _partitions_bounded(d - first, first):
            yield (first,) + rest


def enumerate_partitions(d: int) -> List[Partition]:
    """枚举 d 的全部分拆，按字典序降序；d=0 只有空分拆"""
    if d < 0:
        raise MalformedInputError(f"分拆的大小不能为负: {d}")
    return [Partition(parts) for parts in _partitions_bounded(d, d)]


def z_of(lam: Partition) -> int:
    """z_λ = ∏ a^{b_a} · b_a!"""
    z = 1
    for a, b in lam.mults.items():
        z *= a ** b * factorial(b)
    return z


def class_size(lam: Partition) -> int:
    """循环型为 λ 的置换个数 d!/z_λ"""
    return factorial(lam.d) // z_of(lam)


def is_even(lam: Partition) -> bool:
    """所有部件都是偶数"""
    return all(p % 2 == 0 for p in lam.parts)


def partition_count(d: int) -> int:
    """欧拉五边形数递推计算 p(d)，与枚举互相独立"""
    if d < 0:
        return 0
    p = [1] + [0] * d
    for n in range(1, d + 1):
        total = 0
        k = 1
        while True:
            g1 = k * (3 * k - 1) // 2
            if g1 > n:
                break
            sign = 1 if k % 2 else -1
            total += sign * p[n - g1]
            g2 = k * (3 * k + 1) // 2
            if g2 <= n:
                total += sign * p[n - g2]
            k += 1
        p[n] = total
    return p[d]
