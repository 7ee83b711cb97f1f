import json

from astrbot_plugin_invariants.models.matching import MatchingTuple
from astrbot_plugin_invariants.services.dimension import dimension_table
from astrbot_plugin_invariants.services.invariants import build_invariant
from astrbot_plugin_invariants.services.orbits import enumerate_orbits, to_colored_graph
from astrbot_plugin_invariants.utils.formatter import (
    color_name, dumps, factor_letter, format_polynomial, orbit_listing, polynomial_to_json,
    render_table, table_to_json, to_dot,
)


def test_factor_letters():
    assert [factor_letter(i) for i in range(3)] == ["a", "b", "c"]
    assert factor_letter(26) == "x27_"


def test_palette():
    assert [color_name(c) for c in range(1, 5)] == ["black", "red", "blue", "green"]
    assert color_name(5).startswith("#")


def test_render_table_right_aligned():
    text = render_table(dimension_table(3, 3))
    lines = text.splitlines()
    assert lines[0].split() == ["r\\m", "1", "2", "3"]
    assert lines[3].split() == ["3", "1", "5", "16"]
    assert len({len(line) for line in lines}) == 1


def test_big_integers_are_strings_in_json():
    data = table_to_json(dimension_table(8, 6))
    assert len(data["cells"]) == 48
    assert {"r": 8, "m": 6, "dim": "284615877731708760168866"} in data["cells"]


def test_polynomial_json():
    t = enumerate_orbits(2, 1)[0]
    data = polynomial_to_json(build_invariant(t, (2, 3)))
    assert data["cycle_index"] == [[1, 1], [1, 1]]
    assert data["monomial"] == [["a1", "b1"], ["a1", "b1"]]
    assert data["terms"] == "6"
    assert data["text"] == "Σ_{a1; b1} x[a1 b1] x[a1 b1]"


def test_degree_zero_polynomial():
    t = enumerate_orbits(3, 0)[0]
    assert format_polynomial(build_invariant(t, (1, 1, 1))) == "1"


def test_dumps_is_deterministic():
    assert dumps({"b": 1, "a": [2]}) == '{"a": [2], "b": 1}'
    assert json.loads(dumps({"x": "Σ"})) == {"x": "Σ"}


def test_orbit_listing_and_dot():
    reps = enumerate_orbits(2, 2, threads=1)
    listing = orbit_listing(reps, [3, 6])
    assert listing.splitlines()[0].startswith("[1] (1 2)(3 4), (1 2)(3 4)")
    dot = to_dot(to_colored_graph(reps[0]))
    assert dot.count(" -- ") == 4
    assert dot.rstrip().endswith("}")
    assert isinstance(reps[0], MatchingTuple)
