import json
import random

import pytest

from astrbot_plugin_invariants.models.errors import MalformedInputError, SizeMismatchError
from astrbot_plugin_invariants.models.matching import Matching, MatchingTuple, Permutation
from astrbot_plugin_invariants.models.tree import PhyloForest, PhyloTree
from astrbot_plugin_invariants.services.invariants import build_invariant
from astrbot_plugin_invariants.services.matchings import enumerate_matchings
from astrbot_plugin_invariants.services.orbits import act
from astrbot_plugin_invariants.services.phylo import (
    forest_act, forest_invariant, forest_of, forest_to_tuple, labelled_tree, matching_to_tree,
    tree_count, tree_to_matching,
)
from astrbot_plugin_invariants.utils.cycle_parser import CycleParser
from astrbot_plugin_invariants.utils.newick import format_newick, parse_newick


def tuple_of(*texts: str) -> MatchingTuple:
    return MatchingTuple(tuple(CycleParser.parse_matching(t) for t in texts))


def test_matching_builds_pictured_tree():
    tree = matching_to_tree(CycleParser.parse_matching("(1 4)(2 3)(5 8)(6 7)"))
    assert format_newick(tree) == "(((1,4),(2,3)),5);"


def test_seven_leaf_tree_yields_matching():
    tree = parse_newick("((1,(2,7)),((3,(5,6)),4));")
    assert str(tree_to_matching(tree)) == "(1 8)(2 7)(3 10)(4 11)(5 6)(9 12)"


def test_labelling_steps():
    tree = parse_newick("(((1,4),(2,3)),5);")
    assert labelled_tree(tree) == [(6, 1, 4), (7, 2, 3), (8, 6, 7), (None, 8, 5)]


def test_single_leaf_tree():
    tau = Matching.standard(0)
    tree = matching_to_tree(tau)
    assert format_newick(tree) == "1;"
    assert tree_to_matching(tree) == tau


@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_bijection_round_trips(n):
    trees = set()
    for tau in enumerate_matchings(n):
        tree = matching_to_tree(tau)
        assert tree.n_leaves == n + 1
        assert tree_to_matching(tree) == tau
        trees.add(tree)
    assert len(trees) == tree_count(n)


def test_tree_counts():
    assert [tree_count(n) for n in range(0, 5)] == [1, 1, 3, 15, 105]


def test_forest_action_worked_example(config_dir):
    t = tuple_of("(1 3)(2 5)(4 6)", "(1 3)(2 4)(5 6)", "(1 6)(2 4)(3 5)")
    forest = forest_of(t)
    with open(config_dir / "example_forest.json", encoding="utf-8") as f:
        shipped = f.read()
    assert [format_newick(tree) for tree in forest] == [format_newick(parse_newick(s)) for s in json.loads(shipped)]

    sigma = CycleParser.parse_permutation("(1 3 5)(2 4)(6)", 6)
    moved = forest_act(sigma, forest)
    expected = tuple_of("(1 4)(2 6)(3 5)", "(1 6)(2 4)(3 5)", "(1 5)(2 4)(3 6)")
    assert moved == forest_of(expected)
    assert forest_to_tuple(moved) == expected


def test_identity_leaves_forest_unchanged():
    forest = forest_of(tuple_of("(1 2)(3 4)", "(1 3)(2 4)"))
    assert forest_act(Permutation.identity(4), forest) == forest


def test_forest_action_is_equivariant():
    rng = random.Random(99)
    for _ in range(30):
        r, m = rng.randint(1, 3), rng.randint(1, 3)
        matchings = list(enumerate_matchings(m))
        t = MatchingTuple(tuple(rng.choice(matchings) for _ in range(r)))
        image = list(range(2 * m))
        rng.shuffle(image)
        sigma = Permutation(tuple(image))
        assert forest_act(sigma, forest_of(t)) == forest_of(act(sigma, t))


def test_forest_action_size_mismatch():
    forest = forest_of(tuple_of("(1 2)(3 4)"))
    with pytest.raises(SizeMismatchError):
        forest_act(Permutation.identity(6), forest)


def test_forest_reading_matches_tuple_invariant():
    t = tuple_of("(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)")
    forest = forest_of(t)
    f = forest_invariant(forest, (2, 2, 2))
    assert f.monomial_factors() == build_invariant(t, (2, 2, 2)).monomial_factors()


def test_forest_validation():
    with pytest.raises(MalformedInputError):
        PhyloForest(())
    with pytest.raises(SizeMismatchError):
        PhyloForest((parse_newick("(1,2);"), parse_newick("((1,2),3);")))
    with pytest.raises(MalformedInputError):
        PhyloTree(((1, 3), 4))
