"""输出格式化：多项式、维数表、DOT 图与 JSON

JSON 中的大整数一律写成十进制字符串。
"""
import json
from string import ascii_lowercase
from typing import Any, Dict, List, Sequence

from ..models.graph import ColoredGraph
from ..models.matching import MatchingTuple
from ..models.polynomial import InvariantPolynomial, PowerMonomial

# 颜色 1..4 依次为黑红蓝绿，之后循环使用十六进制备用色
DOT_PALETTE = ["black", "red", "blue", "green"]
DOT_FALLBACK = ["#ff7f00", "#984ea3", "#a65628", "#f781bf", "#999999", "#17becf"]


def color_name(color: int) -> str:
    if 1 <= color <= len(DOT_PALETTE):
        return DOT_PALETTE[color - 1]
    return DOT_FALLBACK[(color - len(DOT_PALETTE) - 1) % len(DOT_FALLBACK)]


def factor_letter(i: int) -> str:
    """第 i 个张量因子 (0 起始) 的求和变量前缀：a, b, c, …，超过 26 个后为 x27_, x28_, …"""
    if i < len(ascii_lowercase):
        return ascii_lowercase[i]
    return f"x{i + 1}_"


def variable_name(i: int, j: int) -> str:
    return f"{factor_letter(i)}{j + 1}"


def format_polynomial(f: Any) -> str:
    """下标风格：Σ_{a1,a2; b1,b2} x[a1 b1] x[a1 b2] …"""
    if isinstance(f, PowerMonomial):
        index = " ".join(str(i + 1) for i in f.index)
        return f"x[{index}]^{f.degree}"
    if f.m == 0:
        return "1"
    bound = "; ".join(",".join(variable_name(i, j) for j in range(f.m)) for i in range(f.r))
    factors = " ".join(
        "x[" + " ".join(variable_name(i, j) for i, j in enumerate(factor)) + "]"
        for factor in f.monomial_factors()
    )
    return f"Σ_{{{bound}}} {factors}"


def polynomial_to_json(f: InvariantPolynomial) -> Dict[str, Any]:
    return {
        "r": f.r,
        "m": f.m,
        "dims": list(f.dims),
        "cycle_index": [[j + 1 for j in row] for row in f.cycle_index],
        "monomial": [[variable_name(i, j) for i, j in enumerate(factor)] for factor in f.monomial_factors()],
        "terms": str(f.term_count()),
        "text": format_polynomial(f),
    }


def render_table(table: Sequence[Sequence[int]]) -> str:
    """行 r = 1.., 列 m = 1.. 的右对齐文本表格"""
    if not table:
        return ""
    m_max = len(table[0])
    header = ["r\\m"] + [str(m) for m in range(1, m_max + 1)]
    rows = [[str(r)] + [str(v) for v in row] for r, row in enumerate(table, start=1)]
    widths = [max(len(line[c]) for line in [header] + rows) for c in range(len(header))]
    lines = ["  ".join(cell.rjust(width) for cell, width in zip(line, widths)) for line in [header] + rows]
    return "\n".join(lines)


def table_to_json(table: Sequence[Sequence[int]]) -> Dict[str, Any]:
    return {
        "r_max": len(table),
        "m_max": len(table[0]) if table else 0,
        "cells": [
            {"r": r, "m": m, "dim": str(v)}
            for r, row in enumerate(table, start=1)
            for m, v in enumerate(row, start=1)
        ],
    }


def dimension_to_json(r: int, m: int, dim: int) -> Dict[str, Any]:
    return {"r": r, "m": m, "dim": str(dim)}


def to_dot(graph: ColoredGraph, name: str = "G") -> str:
    """无标签圆形顶点，颜色 i 的边使用调色板第 i 色"""
    lines = [f"graph {name} {{", '  node [shape=circle, label="", width=0.25];']
    lines.extend(f"  {v};" for v in range(1, graph.num_vertices + 1))
    for u, v, c in sorted(graph.edges, key=lambda e: (e[2], e[0], e[1])):
        lines.append(f'  {u} -- {v} [color="{color_name(c)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_json(graph: ColoredGraph) -> Dict[str, Any]:
    return graph.to_dict()


def tuple_to_text(t: MatchingTuple) -> str:
    return ", ".join(str(tau) for tau in t.taus)


def dumps(data: Any) -> str:
    """确定性的 JSON 输出"""
    return json.dumps(data, ensure_ascii=False, sort_keys=True)


def orbit_listing(reps: List[MatchingTuple], sizes: List[int]) -> str:
    lines = []
    for k, (t, size) in enumerate(zip(reps, sizes), start=1):
        lines.append(f"[{k}] {tuple_to_text(t)}  (轨道大小 {size})")
    return "\n".join(lines)


def value_to_json(value: Any) -> Any:
    """精确值写成 "p/q" 字符串，复数写成 [re, im]"""
    if isinstance(value, complex):
        return [value.real, value.imag]
    return str(value)
