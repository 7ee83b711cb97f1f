"""匹配 (无不动点对合) 与置换模型

内部统一 0 起始下标，输入输出与打印的轮换记号使用 1 起始。
"""
from dataclasses import dataclass
from typing import Any, Dict, Iterable, List, Sequence, Tuple

from .errors import MalformedInputError, SizeMismatchError
from .partition import Partition


@dataclass(frozen=True)
class Matching:
    """{0,…,2m-1} 上的无不动点对合，pair[i] 为 i 的配对点"""
    pair: Tuple[int, ...]

    def __post_init__(self):
        pair = tuple(self.pair)
        n = len(pair)
        if n % 2:
            raise MalformedInputError(f"匹配的点数必须为偶数: {n}")
        for i, j in enumerate(pair):
            if not isinstance(j, int) or not 0 <= j < n:
                raise MalformedInputError(f"配对点越界: {i + 1} -> {j}")
            if j == i:
                raise MalformedInputError(f"匹配不能有不动点: {i + 1}")
            if pair[j] != i:
                raise MalformedInputError(f"不是对合: {i + 1} -> {j + 1} -> {pair[j] + 1}")
        object.__setattr__(self, "pair", pair)

    @classmethod
    def standard(cls, m: int) -> 'Matching':
        """τ0 = (1 2)(3 4)…(2m-1 2m)"""
        pair: List[int] = []
        for k in range(m):
            pair.extend([2 * k + 1, 2 * k])
        return cls(tuple(pair))

    @classmethod
    def from_pairs(cls, pairs: Iterable[Sequence[int]], size: int = 0, one_based: bool = True) -> 'Matching':
        """从点对列表构造；size 为 0 时取覆盖到的点数"""
        pairs = [tuple(p) for p in pairs]
        shift = 1 if one_based else 0
        points = [x - shift for p in pairs for x in p]
        if any(len(p) != 2 for p in pairs):
            raise MalformedInputError(f"每个点对必须恰好包含两个点: {pairs}")
        n = size or (max(points) + 1 if points else 0)
        if len(points) != n or sorted(points) != list(range(n)):
            raise MalformedInputError(f"点对没有恰好覆盖 1..{n} 一次: {pairs}")
        pair = [0] * n
        for a, b in pairs:
            pair[a - shift] = b - shift
            pair[b - shift] = a - shift
        return cls(tuple(pair))

    @property
    def size(self) -> int:
        return len(self.pair)

    @property
    def m(self) -> int:
        return len(self.pair) // 2

    def pairs(self) -> List[Tuple[int, int]]:
        """按较小端点排序的 0 起始点对"""
        return [(i, j) for i, j in enumerate(self.pair) if i < j]

    def to_pairs(self) -> List[List[int]]:
        """JSON 形式：1 起始的有序点对列表"""
        return [[i + 1, j + 1] for i, j in self.pairs()]

    def cycle_of(self) -> List[int]:
        """每个点所在轮换的编号，轮换按最小元素递增编号 (0 起始)"""
        ids = [0] * self.size
        for k, (i, j) in enumerate(self.pairs()):
            ids[i] = ids[j] = k
        return ids

    def as_permutation(self) -> 'Permutation':
        return Permutation(self.pair)

    def __str__(self) -> str:
        return "".join(f"({i + 1} {j + 1})" for i, j in self.pairs()) or "()"


@dataclass(frozen=True)
class Permutation:
    """{0,…,n-1} 上的置换，image[i] 为 i 的像"""
    image: Tuple[int, ...]

    def __post_init__(self):
        image = tuple(self.image)
        if sorted(image) != list(range(len(image))):
            raise MalformedInputError(f"不是双射: {[x + 1 for x in image]}")
        object.__setattr__(self, "image", image)

    @classmethod
    def identity(cls, n: int) -> 'Permutation':
        return cls(tuple(range(n)))

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], size: int = 0, one_based: bool = True) -> 'Permutation':
        """从轮换列表构造，未出现的点为不动点"""
        cycles = [list(c) for c in cycles]
        shift = 1 if one_based else 0
        seen = [x - shift for c in cycles for x in c]
        if any(x < 0 for x in seen):
            raise MalformedInputError(f"轮换中出现非法的点: {cycles}")
        if len(set(seen)) != len(seen):
            raise MalformedInputError(f"轮换之间有重复的点: {cycles}")
        n = max(size, max(seen) + 1 if seen else 0)
        if size and n > size:
            raise SizeMismatchError(f"轮换中的点超出 1..{size}: {cycles}")
        image = list(range(n))
        for c in cycles:
            for k, x in enumerate(c):
                image[x - shift] = c[(k + 1) % len(c)] - shift
        return cls(tuple(image))

    @property
    def size(self) -> int:
        return len(self.image)

    def __call__(self, i: int) -> int:
        return self.image[i]

    def compose(self, other: 'Permutation') -> 'Permutation':
        """self ∘ other，先作用 other"""
        if other.size != self.size:
            raise SizeMismatchError(f"置换大小不一致: {self.size} != {other.size}")
        return Permutation(tuple(self.image[other.image[i]] for i in range(self.size)))

    def inverse(self) -> 'Permutation':
        inv = [0] * self.size
        for i, j in enumerate(self.image):
            inv[j] = i
        return Permutation(tuple(inv))

    def cycles(self) -> List[Tuple[int, ...]]:
        """全部轮换 (含不动点)，每个轮换从最小元素开始，按最小元素排序"""
        seen = [False] * self.size
        result: List[Tuple[int, ...]] = []
        for start in range(self.size):
            if seen[start]:
                continue
            cycle = []
            x = start
            while not seen[x]:
                seen[x] = True
                cycle.append(x)
                x = self.image[x]
            result.append(tuple(cycle))
        return result

    def cycle_type(self) -> Partition:
        return Partition.from_parts(len(c) for c in self.cycles())

    def commutes_with(self, other: Any) -> bool:
        """与另一个置换或匹配是否可交换"""
        image = other.pair if isinstance(other, Matching) else other.image
        if len(image) != self.size:
            raise SizeMismatchError(f"大小不一致: {self.size} != {len(image)}")
        return all(self.image[image[i]] == image[self.image[i]] for i in range(self.size))

    def __str__(self) -> str:
        moved = [c for c in self.cycles() if len(c) > 1]
        if not moved:
            return "()"
        return "".join("(" + " ".join(str(x + 1) for x in c) + ")" for c in moved)


@dataclass(frozen=True)
class MatchingTuple:
    """同一 2m 点集上的 r 个匹配 (τ1,…,τr)"""
    taus: Tuple[Matching, ...]

    def __post_init__(self):
        taus = tuple(self.taus)
        if not taus:
            raise MalformedInputError("匹配组至少需要一个匹配")
        sizes = {t.size for t in taus}
        if len(sizes) != 1:
            raise SizeMismatchError(f"匹配组中各匹配的点数不一致: {sorted(sizes)}")
        object.__setattr__(self, "taus", taus)

    @property
    def r(self) -> int:
        return len(self.taus)

    @property
    def m(self) -> int:
        return self.taus[0].m

    @property
    def size(self) -> int:
        return self.taus[0].size

    def key(self) -> Tuple[int, ...]:
        """序列化键：各匹配的配对数组依次拼接，字典序比较"""
        return tuple(x for t in self.taus for x in t.pair)

    def __lt__(self, other: 'MatchingTuple') -> bool:
        return self.key() < other.key()

    def __iter__(self):
        return iter(self.taus)

    def __len__(self) -> int:
        return len(self.taus)

    def __getitem__(self, i: int) -> Matching:
        return self.taus[i]

    def to_dict(self) -> Dict[str, Any]:
        return {"n": self.size, "r": self.r, "matchings": [t.to_pairs() for t in self.taus]}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'MatchingTuple':
        size = int(data.get("n", 0))
        return cls(tuple(Matching.from_pairs(p, size) for p in data["matchings"]))

    def __str__(self) -> str:
        return "(" + ", ".join(str(t) for t in self.taus) + ")"
