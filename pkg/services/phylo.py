"""匹配与系统发生树之间的双射，以及森林上的 S_2m 作用

规则：每次选取两端都已存在的、最小端点最小的点对 (或兄弟对)，
其父结点取下一个祖先标号 n+2, n+3, …；最后一对的父结点是根，不标号。
"""
from typing import Dict, List, Optional, Sequence, Tuple

from ..models.errors import MalformedInputError, SizeMismatchError
from ..models.matching import Matching, MatchingTuple, Permutation
from ..models.polynomial import InvariantPolynomial
from ..models.tree import Node, PhyloForest, PhyloTree, join
from .invariants import build_invariant
from .matchings import matching_count
from .orbits import act


def matching_to_tree(tau: Matching) -> PhyloTree:
    """2n 个点上的匹配 -> n+1 个叶子的树"""
    n = tau.m
    nodes: Dict[int, Node] = {leaf: leaf for leaf in range(1, n + 2)}
    unused = [tuple(p) for p in tau.to_pairs()]
    next_label = n + 2
    root: Optional[Node] = nodes[1] if n == 0 else None
    while unused:
        eligible = [p for p in unused if p[0] in nodes and p[1] in nodes]
        if not eligible:
            raise MalformedInputError(f"无法由匹配 {tau} 构造树: 剩余点对 {unused} 都引用了尚未出现的结点")
        a, b = min(eligible, key=min)
        unused.remove((a, b))
        parent = join(nodes.pop(a), nodes.pop(b))
        if unused:
            nodes[next_label] = parent
            next_label += 1
        else:
            root = parent
    return PhyloTree(root)


def labelled_tree(tree: PhyloTree) -> List[Tuple[Optional[int], int, int]]:
    """按标号顺序列出 (父结点标号, 子结点标号, 子结点标号)，根的父标号为 None"""
    n = tree.n_leaves - 1
    if n == 0:
        return []
    root = tree.root
    label: Dict[Node, int] = {leaf: leaf for leaf in range(1, n + 2)}
    pending = [node for node in tree.internal_nodes() if node is not root]
    steps: List[Tuple[Optional[int], int, int]] = []
    next_label = n + 2
    while pending:
        ready = [node for node in pending if node[0] in label and node[1] in label]
        node = min(ready, key=lambda x: min(label[x[0]], label[x[1]]))
        pending.remove(node)
        label[node] = next_label
        steps.append((next_label, label[node[0]], label[node[1]]))
        next_label += 1
    steps.append((None, label[root[0]], label[root[1]]))
    return steps


def tree_to_matching(tree: PhyloTree) -> Matching:
    """树 -> 匹配：每对兄弟 (按标号) 构成一个点对"""
    n = tree.n_leaves - 1
    pairs = [(a, b) for _, a, b in labelled_tree(tree)]
    return Matching.from_pairs(pairs, 2 * n)


def tree_count(n: int) -> int:
    """n+1 个叶子的系统发生树个数 (2n-1)!!"""
    return matching_count(n)


def forest_of(t: MatchingTuple) -> PhyloForest:
    return PhyloForest(tuple(matching_to_tree(tau) for tau in t.taus))


def forest_to_tuple(forest: PhyloForest) -> MatchingTuple:
    return MatchingTuple(tuple(tree_to_matching(tree) for tree in forest.trees))


def forest_act(sigma: Permutation, forest: PhyloForest) -> PhyloForest:
    """转为匹配组，同时共轭，再转回森林"""
    n = 2 * (forest.n_leaves - 1)
    if sigma.size != n:
        raise SizeMismatchError(f"置换作用在 {sigma.size} 个点上，森林对应 {n} 个点")
    return forest_of(act(sigma, forest_to_tuple(forest)))


def forest_invariant(forest: PhyloForest, dims: Sequence[int]) -> InvariantPolynomial:
    """从每棵树的兄弟对读出轮换编号：同为兄弟的两点取同一编号"""
    n = 2 * (forest.n_leaves - 1)
    matchings = []
    for tree in forest.trees:
        siblings = [(a, b) for _, a, b in labelled_tree(tree)]
        matchings.append(Matching.from_pairs(siblings, n))
    return build_invariant(MatchingTuple(tuple(matchings)), dims)
