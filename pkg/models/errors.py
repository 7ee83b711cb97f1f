"""错误类型定义"""


class InvariantsError(Exception):
    """插件内所有计算错误的基类"""

    kind = "error"


class CapExceededError(InvariantsError):
    """枚举规模超过上限"""

    kind = "cap_exceeded"


class BudgetExceededError(CapExceededError):
    """多项式求值的乘法次数超过预算"""

    kind = "budget_exceeded"


class SizeMismatchError(InvariantsError, ValueError):
    """点数、维度或张量形状不一致"""

    kind = "size_mismatch"


class IntegralityError(InvariantsError, ArithmeticError):
    """本应整除的精确除法出现余数 (公式实现错误)"""

    kind = "integrality"


class MalformedInputError(InvariantsError, ValueError):
    """无法解析或不满足不变量的输入"""

    kind = "malformed_input"


class OrthogonalityError(InvariantsError):
    """无法生成或验证正交矩阵"""

    kind = "orthogonality"


def exact_div(numerator: int, denominator: int, what: str = "") -> int:
    """精确整除，余数非零时抛出 IntegralityError"""
    quotient, remainder = divmod(numerator, denominator)
    if remainder:
        raise IntegralityError(f"{what or '除法'} 不整除: {numerator} / {denominator}")
    return quotient
