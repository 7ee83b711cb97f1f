"""系统发生树模型

叶子用整数标号表示，内部结点是二元组 (left, right)，子结点按最小叶子标号排序，
因此两棵树结构相等当且仅当它们作为带叶标号的有根二叉树同构。
"""
from dataclasses import dataclass
from typing import Any, List, Tuple, Union

from .errors import MalformedInputError, SizeMismatchError

Node = Union[int, Tuple[Any, Any]]


def min_leaf(node: Node) -> int:
    while not isinstance(node, int):
        node = node[0]
    return node


def join(a: Node, b: Node) -> Node:
    """以 a、b 为子结点构造内部结点"""
    return (a, b) if min_leaf(a) < min_leaf(b) else (b, a)


def normalize(node: Any) -> Node:
    if isinstance(node, int) and not isinstance(node, bool):
        return node
    if isinstance(node, (tuple, list)) and len(node) == 2:
        return join(normalize(node[0]), normalize(node[1]))
    raise MalformedInputError(f"内部结点必须恰好有两个子结点: {node!r}")


def leaves_of(node: Node) -> List[int]:
    if isinstance(node, int):
        return [node]
    return leaves_of(node[0]) + leaves_of(node[1])


@dataclass(frozen=True)
class PhyloTree:
    """满有根二叉树，叶子标号为 1..L"""
    root: Node

    def __post_init__(self):
        root = normalize(self.root)
        leaves = sorted(leaves_of(root))
        if leaves != list(range(1, len(leaves) + 1)):
            raise MalformedInputError(f"叶子标号必须恰好为 1..{len(leaves)}: {leaves}")
        object.__setattr__(self, "root", root)

    @property
    def n_leaves(self) -> int:
        return len(leaves_of(self.root))

    def internal_nodes(self) -> List[Tuple[Any, Any]]:
        """全部内部结点 (含根)，后序"""
        found: List[Tuple[Any, Any]] = []

        def walk(node: Node):
            if isinstance(node, int):
                return
            walk(node[0])
            walk(node[1])
            found.append(node)

        walk(self.root)
        return found


@dataclass(frozen=True)
class PhyloForest:
    """r 棵叶子数相同的树，根依次标记 1..r"""
    trees: Tuple[PhyloTree, ...]

    def __post_init__(self):
        trees = tuple(self.trees)
        if not trees:
            raise MalformedInputError("森林至少需要一棵树")
        counts = {t.n_leaves for t in trees}
        if len(counts) != 1:
            raise SizeMismatchError(f"森林中各树的叶子数不一致: {sorted(counts)}")
        object.__setattr__(self, "trees", trees)

    @property
    def r(self) -> int:
        return len(self.trees)

    @property
    def n_leaves(self) -> int:
        return self.trees[0].n_leaves

    def __iter__(self):
        return iter(self.trees)
