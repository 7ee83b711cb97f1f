"""Newick 编解码

语法 (不支持枝长与内部结点标签)：
    tree    := subtree ";"
    subtree := leaf | "(" subtree "," subtree ")"
    leaf    := 正整数
空白字符被忽略。
"""
import json
from typing import Any, List

from ..models.errors import MalformedInputError
from ..models.tree import Node, PhyloForest, PhyloTree


def format_newick(tree: PhyloTree) -> str:
    def render(node: Node) -> str:
        if isinstance(node, int):
            return str(node)
        return f"({render(node[0])},{render(node[1])})"

    return render(tree.root) + ";"


def parse_newick(text: str) -> PhyloTree:
    """逐字符扫描，用栈记录尚未闭合的内部结点"""
    ts = "".join((text or "").split())
    if not ts.endswith(";"):
        raise MalformedInputError(f"Newick 字符串必须以 ';' 结尾: {text!r}")
    ts = ts[:-1]
    if not ts:
        raise MalformedInputError("空的 Newick 字符串")

    stack: List[List[Any]] = []
    root: Any = None
    expecting = True
    i = 0
    while i < len(ts):
        ch = ts[i]
        if ch in "(0123456789" and not expecting:
            raise MalformedInputError(f"位置 {i} 处缺少 ',': {text!r}")
        if ch == "(":
            stack.append([])
            i += 1
        elif ch in "0123456789":
            j = i
            while j < len(ts) and ts[j] in "0123456789":
                j += 1
            leaf = int(ts[i:j])
            if stack:
                stack[-1].append(leaf)
            elif root is None:
                root = leaf
            else:
                raise MalformedInputError(f"位置 {i} 处多余的叶子: {text!r}")
            expecting = False
            i = j
        elif ch == ",":
            if not stack or len(stack[-1]) != 1:
                raise MalformedInputError(f"位置 {i} 处的 ',' 不合法: {text!r}")
            expecting = True
            i += 1
        elif ch == ")":
            if expecting or not stack or len(stack[-1]) != 2:
                raise MalformedInputError(f"位置 {i} 处的内部结点不是恰好两个子结点: {text!r}")
            node = tuple(stack.pop())
            if stack:
                stack[-1].append(node)
            elif root is None:
                root = node
            else:
                raise MalformedInputError(f"位置 {i} 处多余的子树: {text!r}")
            i += 1
        else:
            raise MalformedInputError(f"位置 {i} 处的非法字符 {ch!r} (不支持枝长与内部标签)")
    if stack or root is None:
        raise MalformedInputError(f"括号不匹配: {text!r}")
    return PhyloTree(root)


def forest_to_json(forest: PhyloForest) -> str:
    """森林序列化为 Newick 字符串的 JSON 数组"""
    return json.dumps([format_newick(t) for t in forest.trees], ensure_ascii=False)


def forest_from_json(text: str) -> PhyloForest:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as e:
        raise MalformedInputError(f"森林 JSON 格式错误: {e}") from e
    if isinstance(data, dict):
        data = data.get("trees")
    if not isinstance(data, list) or not all(isinstance(s, str) for s in data):
        raise MalformedInputError("森林必须是 Newick 字符串数组")
    return PhyloForest(tuple(parse_newick(s) for s in data))
