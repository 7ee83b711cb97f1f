"""不变多项式的构造、求值与不变性校验

精确路径 (Fraction / 整数) 用于代数恒等式与秩，复浮点路径 (numpy.einsum) 用于
正交群作用下的数值校验。
"""
import json
import string
from fractions import Fraction
from itertools import product
from math import lcm, prod
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np

from ..models.errors import (
    BudgetExceededError, MalformedInputError, OrthogonalityError, SizeMismatchError, exact_div,
)
from ..models.matching import MatchingTuple
from ..models.polynomial import (
    ORTHOGONALITY_TOLERANCE, InvariantPolynomial, OrthogonalTuple, PowerMonomial, Tensor,
    orthogonality_error,
)
from ..models.run import DEFAULT_CANONICAL_CAP, DEFAULT_EVALUATION_BUDGET, DEFAULT_SEED, DEFAULT_TOLERANCE
from ..utils.logger import logger
from .orbits import enumerate_orbits

Polynomial = Union[InvariantPolynomial, PowerMonomial]

CAYLEY_RETRIES = 32
CAYLEY_CONDITION_LIMIT = 1e8
GROUP_KIND_ALIASES = {"real": "real", "cayley": "complex_cayley", "complex_cayley": "complex_cayley"}


def build_invariant(t: MatchingTuple, dims: Sequence[int]) -> InvariantPolynomial:
    """匹配组 -> 不变多项式，轮换按最小元素递增编号"""
    dims = tuple(dims)
    if len(dims) != t.r:
        raise SizeMismatchError(f"dims 长度 {len(dims)} 与匹配个数 r={t.r} 不一致")
    return InvariantPolynomial(
        r=t.r,
        m=t.m,
        dims=dims,
        cycle_index=tuple(tuple(tau.cycle_of()) for tau in t.taus),
    )


def _check_budget(f: Polynomial, budget: int):
    if isinstance(f, PowerMonomial):
        return
    cost = f.term_count() * max(1, f.degree)
    if cost > budget:
        raise BudgetExceededError(
            f"求值需要约 {cost} 次乘法，超过预算 {budget} (dims={list(f.dims)}, m={f.m})"
        )


def _evaluate_exact(f: InvariantPolynomial, x: Tensor) -> Fraction:
    flat = list(x.entries.ravel())
    common = lcm(*(v.denominator for v in flat)) if flat else 1
    values = [int(v * common) for v in flat]
    strides = [prod(f.dims[i + 1:]) for i in range(f.r)]
    factors = f.monomial_factors()
    m = f.m
    # 变量 (i, j) 在展开后的位置为 i*m + j
    slots = [[(strides[i], i * m + j) for i, j in enumerate(factor)] for factor in factors]
    ranges = [range(n) for n in f.dims for _ in range(m)]
    total = 0
    for assignment in product(*ranges):
        term = 1
        for slot in slots:
            term *= values[sum(stride * assignment[pos] for stride, pos in slot)]
            if not term:
                break
        total += term
    return Fraction(total, common ** f.degree)


def _evaluate_complex(f: InvariantPolynomial, x: Tensor) -> complex:
    letters = string.ascii_letters
    if f.r * f.m > len(letters):
        values = x.entries.ravel()
        strides = [prod(f.dims[i + 1:]) for i in range(f.r)]
        total = 0j
        ranges = [range(n) for n in f.dims for _ in range(f.m)]
        for assignment in product(*ranges):
            term = 1 + 0j
            for factor in f.monomial_factors():
                term *= values[sum(strides[i] * assignment[i * f.m + j] for i, j in enumerate(factor))]
            total += term
        return complex(total)
    subscripts = ",".join(
        "".join(letters[i * f.m + j] for i, j in enumerate(factor))
        for factor in f.monomial_factors()
    )
    operands = [x.entries] * f.degree
    return complex(np.einsum(subscripts + "->", *operands, optimize=False))


def evaluate(f: Polynomial, x: Tensor, budget: int = DEFAULT_EVALUATION_BUDGET) -> Any:
    """在张量上求值：精确张量返回 Fraction，否则返回 complex"""
    if tuple(f.dims) != x.dims:
        raise SizeMismatchError(f"张量形状 {list(x.dims)} 与多项式 dims {list(f.dims)} 不一致")
    _check_budget(f, budget)
    if isinstance(f, PowerMonomial):
        value = x.entries[f.index]
        return Fraction(value) ** f.degree if x.is_exact else complex(value) ** f.degree
    if f.m == 0:
        return Fraction(1) if x.is_exact else 1 + 0j
    if x.is_exact:
        return _evaluate_exact(f, x)
    return _evaluate_complex(f, x)


def apply_group(k: OrthogonalTuple, x: Tensor) -> Tensor:
    """沿第 i 个模作用 g_i"""
    if k.dims != x.dims:
        raise SizeMismatchError(f"矩阵组形状 {list(k.dims)} 与张量形状 {list(x.dims)} 不一致")
    data = x.as_complex().entries
    for i, g in enumerate(k.matrices):
        data = np.moveaxis(np.tensordot(g, data, axes=([1], [i])), 0, i)
    return Tensor(np.ascontiguousarray(data))


def _rng(seed: Optional[int], rng: Optional[np.random.Generator]) -> np.random.Generator:
    if rng is not None:
        return rng
    return np.random.default_rng(DEFAULT_SEED if seed is None else seed)


def random_orthogonal(n: int, kind: str = "real", seed: Optional[int] = None,
                      rng: Optional[np.random.Generator] = None) -> np.ndarray:
    """随机复正交矩阵

    real：n 个随机 Householder 反射之积；
    complex_cayley：Q = (I - A)(I + A)⁻¹，A 为随机复反对称矩阵。
    """
    if n < 1:
        raise MalformedInputError(f"矩阵阶数必须 >= 1: {n}")
    if kind not in GROUP_KIND_ALIASES:
        raise MalformedInputError(f"未知的正交矩阵类型: {kind}")
    kind = GROUP_KIND_ALIASES[kind]
    rng = _rng(seed, rng)
    eye = np.eye(n, dtype=np.complex128)

    if kind == "real":
        q = np.eye(n)
        for _ in range(n):
            v = rng.standard_normal(n)
            q = (np.eye(n) - 2.0 * np.outer(v, v) / (v @ v)) @ q
        return q.astype(np.complex128)

    scale = 0.5 / np.sqrt(n)
    for attempt in range(CAYLEY_RETRIES):
        b = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) * scale
        a = b - b.T
        if np.linalg.cond(eye + a) > CAYLEY_CONDITION_LIMIT:
            logger.debug(f"Cayley 变换第 {attempt + 1} 次接近奇异，重新生成")
            continue
        q = np.linalg.solve(eye + a, eye - a)
        if orthogonality_error(q) <= ORTHOGONALITY_TOLERANCE:
            return q
    raise OrthogonalityError(f"连续 {CAYLEY_RETRIES} 次未能生成 {n} 阶复正交矩阵")


def random_orthogonal_tuple(dims: Sequence[int], kind: str = "real",
                            rng: Optional[np.random.Generator] = None) -> OrthogonalTuple:
    rng = _rng(None, rng)
    return OrthogonalTuple(tuple(random_orthogonal(n, kind, rng=rng) for n in dims))


def random_tensor(dims: Sequence[int], kind: str = "rational", seed: Optional[int] = None,
                  rng: Optional[np.random.Generator] = None) -> Tensor:
    """rational：{-3..3} 中的整数元素；complex：复高斯元素"""
    rng = _rng(seed, rng)
    size = prod(dims)
    if kind == "rational":
        return Tensor.exact(dims, [int(v) for v in rng.integers(-3, 4, size=size)])
    if kind == "complex":
        values = rng.standard_normal(size) + 1j * rng.standard_normal(size)
        return Tensor.from_complex(dims, values)
    raise MalformedInputError(f"未知的张量类型: {kind}")


def load_tensor(path: Union[str, Path]) -> Tensor:
    try:
        data = json.loads(Path(path).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as e:
        raise MalformedInputError(f"无法读取张量文件 {path}: {e}") from e
    if not isinstance(data, dict):
        raise MalformedInputError("张量文件必须是一个JSON对象")
    return Tensor.from_dict(data)


def dump_tensor(x: Tensor) -> str:
    return json.dumps(x.to_dict(), ensure_ascii=False)


def verify_invariance(f: Polynomial, x: Tensor, k: OrthogonalTuple,
                      budget: int = DEFAULT_EVALUATION_BUDGET) -> float:
    """相对残差 |f(k·x) - f(x)| / max(1, |f(x)|)"""
    base = complex(evaluate(f, x.as_complex(), budget))
    moved = complex(evaluate(f, apply_group(k, x), budget))
    return float(abs(moved - base) / max(1.0, abs(base)))


def _bareiss_rank(rows: List[List[int]]) -> int:
    """整数矩阵的无分数消元求秩"""
    matrix = [list(row) for row in rows]
    if not matrix:
        return 0
    n_rows, n_cols = len(matrix), len(matrix[0])
    rank, prev = 0, 1
    for col in range(n_cols):
        pivot = next((i for i in range(rank, n_rows) if matrix[i][col]), None)
        if pivot is None:
            continue
        matrix[rank], matrix[pivot] = matrix[pivot], matrix[rank]
        p = matrix[rank][col]
        for i in range(rank + 1, n_rows):
            lead = matrix[i][col]
            for j in range(col + 1, n_cols):
                matrix[i][j] = exact_div(matrix[i][j] * p - lead * matrix[rank][j], prev, "Bareiss 消元")
            matrix[i][col] = 0
        prev = p
        rank += 1
        if rank == n_rows:
            break
    return rank


def evaluation_rank(fs: Sequence[Polynomial], samples: Sequence[Tensor],
                    budget: int = DEFAULT_EVALUATION_BUDGET) -> int:
    """求值矩阵 M[s][f] = f(x_s) 在有理数域上的秩"""
    if len(samples) < len(fs):
        raise SizeMismatchError(f"样本数 {len(samples)} 少于多项式个数 {len(fs)}")
    if any(not x.is_exact for x in samples):
        raise MalformedInputError("求秩只接受精确有理数张量")
    rows = []
    for x in samples:
        row = [Fraction(evaluate(f, x, budget)) for f in fs]
        scale = lcm(*(v.denominator for v in row)) if row else 1
        rows.append([int(v * scale) for v in row])
    return _bareiss_rank(rows)


def _kinds(kind: str) -> List[str]:
    if kind == "both":
        return ["real", "complex_cayley"]
    if kind not in GROUP_KIND_ALIASES:
        raise MalformedInputError(f"未知的正交矩阵类型: {kind}")
    return [GROUP_KIND_ALIASES[kind]]


def verify_basis(r: int, m: int, dims: Sequence[int], trials: int = 20, seed: int = DEFAULT_SEED,
                 kind: str = "both", tolerance: float = DEFAULT_TOLERANCE,
                 canonical_cap: int = DEFAULT_CANONICAL_CAP, budget: int = DEFAULT_EVALUATION_BUDGET,
                 threads: int = 1) -> Dict[str, Any]:
    """对全部轨道不变量做正交不变性校验；各 n_i >= 2m 时再精确验证线性无关"""
    dims = list(dims)
    if len(dims) != r:
        raise SizeMismatchError(f"dims 长度 {len(dims)} 与 r={r} 不一致")
    if trials < 1:
        raise MalformedInputError(f"trials 必须 >= 1: {trials}")
    reps = enumerate_orbits(r, m, canonical_cap, threads=threads)
    fs = [build_invariant(t, dims) for t in reps]
    for f in fs:
        _check_budget(f, budget)
    rng = np.random.default_rng(seed)
    residuals = [0.0] * len(fs)
    for _ in range(trials):
        for group_kind in _kinds(kind):
            x = random_tensor(dims, "complex", rng=rng)
            k = random_orthogonal_tuple(dims, group_kind, rng=rng)
            for idx, f in enumerate(fs):
                residuals[idx] = max(residuals[idx], verify_invariance(f, x, k, budget))

    rank = None
    if all(n >= 2 * m for n in dims):
        samples = [random_tensor(dims, "rational", rng=rng) for _ in range(len(fs) + 3)]
        rank = evaluation_rank(fs, samples, budget)

    max_residual = max(residuals) if residuals else 0.0
    passed = max_residual <= tolerance and (rank is None or rank == len(fs))
    if not passed:
        logger.warning(f"⚠️ 校验未通过: r={r}, m={m}, dims={dims}, 最大残差 {max_residual:.3e}, 秩 {rank}/{len(fs)}")
    return {
        "r": r,
        "m": m,
        "dims": dims,
        "trials": trials,
        "seed": seed,
        "kind": kind,
        "tolerance": tolerance,
        "residuals": residuals,
        "max_residual": max_residual,
        "rank": rank,
        "basis_size": len(fs),
        "passed": passed,
    }
