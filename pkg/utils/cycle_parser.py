"""轮换记号与维数列表解析器"""
import re
from typing import List, Optional

from ..models.errors import MalformedInputError
from ..models.matching import Matching, Permutation


class CycleParser:
    """轮换记号解析器

    支持格式: "(1 3 5)(2 4)(6)"、"(1,4)(2,3)"、"()" 表示恒等置换。点从 1 开始。
    """

    CYCLE_PATTERN = re.compile(r'\(([^()]*)\)')
    FULL_PATTERN = re.compile(r'^(\s*\([^()]*\)\s*)+$')

    @classmethod
    def parse_cycles(cls, text: str) -> List[List[int]]:
        """解析为 1 起始的轮换列表，空轮换 "()" 被忽略"""
        text = (text or "").strip()
        if not text or not cls.FULL_PATTERN.match(text):
            raise MalformedInputError(f"无法解析轮换记号: {text!r}")
        cycles: List[List[int]] = []
        for body in cls.CYCLE_PATTERN.findall(text):
            tokens = [tok for tok in re.split(r'[\s,]+', body.strip()) if tok]
            if not tokens:
                continue
            if any(not re.fullmatch(r"[0-9]+", tok) for tok in tokens):
                raise MalformedInputError(f"轮换中只能包含正整数: ({body})")
            points = [int(tok) for tok in tokens]
            if any(p < 1 for p in points):
                raise MalformedInputError(f"点必须从 1 开始编号: ({body})")
            cycles.append(points)
        return cycles

    @classmethod
    def parse_permutation(cls, text: str, size: int = 0) -> Permutation:
        return Permutation.from_cycles(cls.parse_cycles(text), size)

    @classmethod
    def parse_matching(cls, text: str, size: int = 0) -> Matching:
        """匹配必须写成不相交的二元轮换"""
        cycles = cls.parse_cycles(text)
        if any(len(c) != 2 for c in cycles):
            raise MalformedInputError(f"匹配的每个轮换必须恰好包含两个点: {text!r}")
        return Matching.from_pairs(cycles, size)

    @staticmethod
    def parse_dims(text: Optional[str]) -> List[int]:
        """解析 "2,2,2" 形式的维数列表"""
        if text is None or not text.strip():
            return []
        tokens = [tok.strip() for tok in text.split(",")]
        if any(not re.fullmatch(r"[0-9]+", tok) for tok in tokens):
            raise MalformedInputError(f"维数必须是逗号分隔的正整数: {text!r}")
        dims = [int(tok) for tok in tokens]
        if any(n < 1 for n in dims):
            raise MalformedInputError(f"每个维数必须 >= 1: {text!r}")
        return dims
