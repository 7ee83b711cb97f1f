"""不变多项式、张量与正交矩阵组模型"""
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Sequence, Tuple

import numpy as np

from .errors import MalformedInputError, OrthogonalityError, SizeMismatchError

ORTHOGONALITY_TOLERANCE = 1e-10


@dataclass(frozen=True)
class InvariantPolynomial:
    """匹配组对应的不变多项式

    cycle_index[i][k] 为点 k 在 τi 中所在轮换的编号 (0..m-1)，
    轮换按最小元素递增编号。多项式为
    Σ_{a^(i)_j} ∏_k x[a^(1)_{j_1^k}, …, a^(r)_{j_r^k}]。
    """
    r: int
    m: int
    dims: Tuple[int, ...]
    cycle_index: Tuple[Tuple[int, ...], ...]

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "cycle_index", tuple(tuple(row) for row in self.cycle_index))
        if len(self.dims) != self.r or len(self.cycle_index) != self.r:
            raise SizeMismatchError(f"因子数不一致: r={self.r}, dims={list(self.dims)}")
        if any(n < 1 for n in self.dims):
            raise MalformedInputError(f"每个维数必须 >= 1: {list(self.dims)}")
        for row in self.cycle_index:
            if len(row) != 2 * self.m:
                raise SizeMismatchError(f"轮换编号长度应为 {2 * self.m}: {row}")
            if sorted(row) != sorted(list(range(self.m)) * 2):
                raise MalformedInputError(f"每个轮换编号必须恰好出现两次: {row}")

    @property
    def degree(self) -> int:
        return 2 * self.m

    def term_count(self) -> int:
        """求和项数 ∏ n_i^m"""
        count = 1
        for n in self.dims:
            count *= n ** self.m
        return count

    def monomial_factors(self) -> List[Tuple[int, ...]]:
        """第 k 个因子 x 的各下标所用的轮换编号"""
        return [tuple(row[k] for row in self.cycle_index) for k in range(self.degree)]


@dataclass(frozen=True)
class PowerMonomial:
    """单项式 x[index]^degree，非不变量的对照"""
    dims: Tuple[int, ...]
    index: Tuple[int, ...]
    degree: int

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "index", tuple(self.index))
        if len(self.index) != len(self.dims):
            raise SizeMismatchError(f"下标个数与因子数不一致: {self.index} / {self.dims}")
        if any(not 0 <= i < n for i, n in zip(self.index, self.dims)):
            raise MalformedInputError(f"下标越界: {self.index}")

    @property
    def r(self) -> int:
        return len(self.dims)

    def term_count(self) -> int:
        return 1


@dataclass(frozen=True, eq=False)
class Tensor:
    """稠密张量，entries 形状为 dims

    精确张量使用 Fraction 元素的 object 数组，否则为 complex128。
    """
    entries: np.ndarray

    def __post_init__(self):
        entries = self.entries
        if not isinstance(entries, np.ndarray):
            raise MalformedInputError("张量元素必须是 numpy 数组")
        if entries.ndim < 1:
            raise MalformedInputError("张量至少有一个因子")
        object.__setattr__(self, "entries", entries)

    @classmethod
    def exact(cls, dims: Sequence[int], values: Sequence[Any]) -> 'Tensor':
        """按行主序给出的有理数元素构造精确张量"""
        dims = tuple(dims)
        values = [Fraction(v) for v in values]
        if len(values) != int(np.prod(dims)):
            raise SizeMismatchError(f"元素个数 {len(values)} 与形状 {list(dims)} 不符")
        array = np.empty(len(values), dtype=object)
        array[:] = values
        return cls(array.reshape(dims))

    @classmethod
    def from_complex(cls, dims: Sequence[int], values: Sequence[complex]) -> 'Tensor':
        dims = tuple(dims)
        array = np.asarray(values, dtype=np.complex128)
        if array.size != int(np.prod(dims)):
            raise SizeMismatchError(f"元素个数 {array.size} 与形状 {list(dims)} 不符")
        return cls(array.reshape(dims))

    @classmethod
    def zeros(cls, dims: Sequence[int], exact: bool = True) -> 'Tensor':
        size = int(np.prod(dims))
        if exact:
            return cls.exact(dims, [0] * size)
        return cls(np.zeros(tuple(dims), dtype=np.complex128))

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(self.entries.shape)

    @property
    def r(self) -> int:
        return self.entries.ndim

    @property
    def is_exact(self) -> bool:
        return self.entries.dtype == object

    def scaled(self, c: Any) -> 'Tensor':
        if self.is_exact:
            c = Fraction(c)
            return Tensor.exact(self.dims, [c * v for v in self.entries.ravel()])
        return Tensor(self.entries * c)

    def as_complex(self) -> 'Tensor':
        if not self.is_exact:
            return self
        values = [complex(v.numerator / v.denominator) for v in self.entries.ravel()]
        return Tensor.from_complex(self.dims, values)

    def to_dict(self) -> Dict[str, Any]:
        """张量文件格式：行主序，有理数写作 "p/q"，复数写作 [re, im]"""
        flat = self.entries.ravel()
        if self.is_exact:
            entries = [str(v) for v in flat]
        else:
            entries = [[float(v.real), float(v.imag)] for v in flat]
        return {"dims": list(self.dims), "entries": entries}

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'Tensor':
        dims = data.get("dims")
        entries = data.get("entries")
        if not isinstance(dims, list) or not dims or any(not isinstance(n, int) or n < 1 for n in dims):
            raise MalformedInputError(f"dims 必须是正整数列表: {dims}")
        if not isinstance(entries, list):
            raise MalformedInputError("entries 必须是列表")
        if all(isinstance(v, (str, int)) and not isinstance(v, bool) for v in entries):
            try:
                values = [Fraction(v) for v in entries]
            except (ValueError, ZeroDivisionError) as e:
                raise MalformedInputError(f"无法解析有理数元素: {e}") from e
            return cls.exact(dims, values)
        if all(isinstance(v, list) and len(v) == 2 for v in entries):
            try:
                values = [complex(float(re), float(im)) for re, im in entries]
            except (TypeError, ValueError) as e:
                raise MalformedInputError(f"无法解析复数元素: {e}") from e
            return cls.from_complex(dims, values)
        raise MalformedInputError("entries 必须全为 \"p/q\" 字符串或全为 [re, im] 对")


@dataclass(frozen=True, eq=False)
class OrthogonalTuple:
    """r 个复正交矩阵 g_i (g_iᵀ g_i = I，转置而非共轭转置)"""
    matrices: Tuple[np.ndarray, ...]

    def __post_init__(self):
        matrices = tuple(np.asarray(g, dtype=np.complex128) for g in self.matrices)
        for i, g in enumerate(matrices):
            if g.ndim != 2 or g.shape[0] != g.shape[1]:
                raise SizeMismatchError(f"第 {i + 1} 个矩阵不是方阵: {g.shape}")
            error = orthogonality_error(g)
            if error > ORTHOGONALITY_TOLERANCE:
                raise OrthogonalityError(f"第 {i + 1} 个矩阵不正交: ‖gᵀg - I‖ = {error:.3e}")
        object.__setattr__(self, "matrices", matrices)

    @classmethod
    def identity(cls, dims: Sequence[int]) -> 'OrthogonalTuple':
        return cls(tuple(np.eye(n, dtype=np.complex128) for n in dims))

    @property
    def dims(self) -> Tuple[int, ...]:
        return tuple(g.shape[0] for g in self.matrices)

    def compose(self, other: 'OrthogonalTuple') -> 'OrthogonalTuple':
        """逐个因子相乘 g_i · g'_i"""
        if self.dims != other.dims:
            raise SizeMismatchError(f"矩阵组形状不一致: {self.dims} != {other.dims}")
        return OrthogonalTuple(tuple(a @ b for a, b in zip(self.matrices, other.matrices)))


def orthogonality_error(g: np.ndarray) -> float:
    """‖gᵀg - I‖_max"""
    n = g.shape[0]
    return float(np.max(np.abs(g.T @ g - np.eye(n))))
