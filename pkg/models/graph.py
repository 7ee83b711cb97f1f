"""边着色正则图模型"""
from dataclasses import dataclass
from typing import Any, Dict, List, Tuple

from .errors import MalformedInputError


@dataclass(frozen=True)
class ColoredGraph:
    """2m 个顶点、r 种颜色的图，每个颜色类是一个完美匹配

    edges 中的顶点 1 起始，u < v，颜色 1..r。
    """
    num_vertices: int
    num_colors: int
    edges: Tuple[Tuple[int, int, int], ...]

    def __post_init__(self):
        edges = tuple(sorted((min(u, v), max(u, v), c) for u, v, c in self.edges))
        object.__setattr__(self, "edges", edges)
        n, r = self.num_vertices, self.num_colors
        if n < 0 or n % 2:
            raise MalformedInputError(f"顶点数必须是非负偶数: {n}")
        if r < 1:
            raise MalformedInputError(f"颜色数必须为正: {r}")
        for u, v, c in edges:
            if not (1 <= u < v <= n) or not 1 <= c <= r:
                raise MalformedInputError(f"非法的边: ({u}, {v}, 颜色 {c})")
        for color in range(1, r + 1):
            met = [0] * n
            for u, v, c in edges:
                if c == color:
                    met[u - 1] += 1
                    met[v - 1] += 1
            if any(k != 1 for k in met):
                raise MalformedInputError(f"颜色 {color} 的边不是完美匹配")

    def color_class(self, color: int) -> List[Tuple[int, int]]:
        return [(u, v) for u, v, c in self.edges if c == color]

    def degree(self, vertex: int) -> int:
        return len([e for e in self.edges if vertex in (e[0], e[1])])

    def to_dict(self) -> Dict[str, Any]:
        return {
            "n": self.num_vertices,
            "r": self.num_colors,
            "colors": [[list(p) for p in self.color_class(c)] for c in range(1, self.num_colors + 1)],
        }

    @classmethod
    def from_dict(cls, data: Dict[str, Any]) -> 'ColoredGraph':
        colors = data["colors"]
        edges = tuple((u, v, c) for c, pairs in enumerate(colors, start=1) for u, v in pairs)
        return cls(int(data["n"]), int(data.get("r", len(colors))), edges)
