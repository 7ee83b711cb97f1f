"""匹配组轨道：同时共轭作用、规范形、轨道枚举与着色图

规范形取轨道中序列化键 (各匹配配对数组依次拼接) 字典序最小的元组。
第一个分量必为 τ0 = (1 2)(3 4)…，搜索只在把 τ1 的点对映到 {2j, 2j+1} 的
标号中进行，并按 τ'2 的前缀剪枝。
"""
from itertools import permutations, product
from math import factorial
from typing import Iterable, List, Optional, Set, Tuple

from ..models.errors import CapExceededError, MalformedInputError, SizeMismatchError
from ..models.graph import ColoredGraph
from ..models.matching import Matching, MatchingTuple, Permutation
from ..models.run import DEFAULT_BRUTE_CAP, DEFAULT_CANONICAL_CAP
from ..utils.logger import logger
from .matchings import check_cap, conjugate, enumerate_matchings, matching_count
from .scheduler import WorkScheduler

# 全量枚举 + 暴力规范化的工作量上限 ((2m)! × 元组数)
NAIVE_ORBIT_WORK = 200_000

Key = Tuple[int, ...]


def act(sigma: Permutation, t: MatchingTuple) -> MatchingTuple:
    """g.(τ1,…,τr) = (gτ1g⁻¹,…,gτrg⁻¹)"""
    if sigma.size != t.size:
        raise SizeMismatchError(f"置换与匹配组的点数不一致: {sigma.size} != {t.size}")
    return MatchingTuple(tuple(conjugate(sigma, tau) for tau in t.taus))


class _CanonicalSearch:
    """带剪枝的字典序最小标号搜索，同时统计达到最小值的标号个数 (稳定子阶)"""

    def __init__(self, t: MatchingTuple):
        self.n = t.size
        self.t1 = t.taus[0].pair
        self.t2 = t.taus[1].pair
        self.rest = [tau.pair for tau in t.taus[2:]]
        self.label = [-1] * self.n
        self.inverse = [-1] * self.n
        self.partial = [0] * self.n
        self.best: Optional[Key] = None
        self.ties = 0

    def run(self) -> Tuple[Key, int]:
        self._search(0, 0)
        return self.best, self.ties

    def _assign(self, x: int, lab: int):
        y = self.t1[x]
        self.label[x], self.label[y] = lab, lab + 1
        self.inverse[lab], self.inverse[lab + 1] = x, y

    def _unassign(self, x: int):
        y = self.t1[x]
        self.inverse[self.label[x]] = self.inverse[self.label[y]] = -1
        self.label[x] = self.label[y] = -1

    def _search(self, v: int, nxt: int):
        if v == self.n:
            self._leaf()
            return
        if self.inverse[v] >= 0:
            self._step(v, nxt)
            return
        # v 尚无原像时 v == nxt，枚举把哪个未标号顶点放到 v
        for x in range(self.n):
            if self.label[x] < 0:
                self._assign(x, nxt)
                self._step(v, nxt + 2)
                self._unassign(x)

    def _step(self, v: int, nxt: int):
        w = self.t2[self.inverse[v]]
        forced = self.label[w] < 0
        if forced:
            self._assign(w, nxt)
            nxt += 2
        self.partial[v] = self.label[w]
        if self.best is None or tuple(self.partial[:v + 1]) <= self.best[:v + 1]:
            self._search(v + 1, nxt)
        if forced:
            self._unassign(w)

    def _leaf(self):
        key = list(self.partial)
        for tau in self.rest:
            image = [0] * self.n
            for i, j in enumerate(tau):
                image[self.label[i]] = self.label[j]
            key.extend(image)
        key = tuple(key)
        if self.best is None or key < self.best:
            self.best, self.ties = key, 1
        elif key == self.best:
            self.ties += 1


def _hyperoctahedral_order(m: int) -> int:
    return 2 ** m * factorial(m)


def canonical_labeling(t: MatchingTuple, cap: int = DEFAULT_CANONICAL_CAP) -> Tuple[MatchingTuple, int]:
    """返回 (规范形, 稳定子阶)"""
    check_cap(t.size, cap, "规范化")
    m = t.m
    tau0 = Matching.standard(m)
    if t.r == 1:
        return MatchingTuple((tau0,)), _hyperoctahedral_order(m)
    if t.size == 0:
        return t, 1
    best, ties = _CanonicalSearch(t).run()
    n = t.size
    taus = [tau0] + [Matching(best[k:k + n]) for k in range(0, len(best), n)]
    return MatchingTuple(tuple(taus)), ties


def canonical_form(t: MatchingTuple, cap: int = DEFAULT_CANONICAL_CAP) -> MatchingTuple:
    """轨道中序列化键最小的元组；同轨道当且仅当规范形相等"""
    return canonical_labeling(t, cap)[0]


def orbit_size(t: MatchingTuple, cap: int = DEFAULT_CANONICAL_CAP) -> int:
    """|轨道| = (2m)! / |Stab(t)|"""
    return factorial(t.size) // canonical_labeling(t, cap)[1]


def canonical_form_brute(t: MatchingTuple, cap: int = DEFAULT_BRUTE_CAP) -> MatchingTuple:
    """遍历整个 S_2m 取最小键，作为规范形的校验"""
    check_cap(t.size, cap, "暴力规范化")
    best = min((act(Permutation(image), t) for image in permutations(range(t.size))),
               key=MatchingTuple.key)
    return best


def _orbits_from_second(args: Tuple[Key, int, int, int]) -> List[Key]:
    """固定 τ1 = τ0 与一个 τ2 代表，枚举其余分量并规范化"""
    second, r, m, cap = args
    tau0 = Matching.standard(m)
    head = (tau0, Matching(second))
    if r == 2:
        return [MatchingTuple(head).key()]
    matchings = list(enumerate_matchings(m, cap))
    found: Set[Key] = set()
    for tail in product(matchings, repeat=r - 2):
        found.add(canonical_form(MatchingTuple(head + tail), cap).key())
    return sorted(found)


def _tuple_from_key(key: Key, n: int) -> MatchingTuple:
    return MatchingTuple(tuple(Matching(key[k:k + n]) for k in range(0, len(key), n)))


def enumerate_orbits(r: int, m: int, cap: int = DEFAULT_CANONICAL_CAP,
                     naive: bool = False, threads: int = 1) -> List[MatchingTuple]:
    """每个轨道一个规范代表，按序列化键排序

    默认固定 τ1 = τ0，τ2 只取 τ0 中心化子作用下的代表 (即 (τ0, τ2) 已是规范形者)，
    其余分量全枚举后规范化去重。naive=True 时枚举全部元组并用暴力规范化去重。
    """
    if r < 1 or m < 0:
        raise MalformedInputError(f"r 必须为正且 m 非负: r={r}, m={m}")
    n = 2 * m
    if m == 0:
        return [MatchingTuple((Matching.standard(0),) * r)]
    if naive:
        work = factorial(n) * matching_count(m) ** r
        if work > NAIVE_ORBIT_WORK:
            raise CapExceededError(f"全量轨道枚举工作量 {work} 超过上限 {NAIVE_ORBIT_WORK}")
        matchings = list(enumerate_matchings(m, cap))
        keys = {canonical_form_brute(MatchingTuple(taus), max(cap, n)).key()
                for taus in product(matchings, repeat=r)}
        return [_tuple_from_key(k, n) for k in sorted(keys)]

    check_cap(n, cap, "轨道枚举")
    tau0 = Matching.standard(m)
    if r == 1:
        return [MatchingTuple((tau0,))]
    seconds = [tau.pair for tau in enumerate_matchings(m, cap)
               if canonical_form(MatchingTuple((tau0, tau)), cap).taus[1] == tau]
    logger.debug(f"r={r}, m={m}: 第二分量共有 {len(seconds)} 个代表")
    chunks = WorkScheduler(threads).map(_orbits_from_second, [(s, r, m, cap) for s in seconds])
    keys = sorted(set(k for chunk in chunks for k in chunk))
    return [_tuple_from_key(k, n) for k in keys]


def to_colored_graph(t: MatchingTuple) -> ColoredGraph:
    """颜色 i 的边恰为 τi 的点对"""
    edges = tuple((i + 1, j + 1, color)
                  for color, tau in enumerate(t.taus, start=1)
                  for i, j in tau.pairs())
    return ColoredGraph(t.size, t.r, edges)


def from_colored_graph(g: ColoredGraph) -> MatchingTuple:
    return MatchingTuple(tuple(
        Matching.from_pairs(g.color_class(color), g.num_vertices)
        for color in range(1, g.num_colors + 1)
    ))


def graphs_isomorphic(g1: ColoredGraph, g2: ColoredGraph, cap: int = DEFAULT_CANONICAL_CAP) -> bool:
    """保持颜色的图同构 (颜色不可置换)，归结为比较规范形"""
    if g1.num_vertices != g2.num_vertices or g1.num_colors != g2.num_colors:
        return False
    return canonical_form(from_colored_graph(g1), cap) == canonical_form(from_colored_graph(g2), cap)


def orbit_sizes(reps: Iterable[MatchingTuple], cap: int = DEFAULT_CANONICAL_CAP) -> List[int]:
    return [orbit_size(t, cap) for t in reps]
