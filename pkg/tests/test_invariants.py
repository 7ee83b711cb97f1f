import random
from fractions import Fraction

import numpy as np
import pytest

from astrbot_plugin_invariants.models.errors import (
    BudgetExceededError, MalformedInputError, OrthogonalityError, SizeMismatchError,
)
from astrbot_plugin_invariants.models.matching import MatchingTuple, Permutation
from astrbot_plugin_invariants.models.polynomial import OrthogonalTuple, PowerMonomial, Tensor, orthogonality_error
from astrbot_plugin_invariants.services.invariants import (
    apply_group, build_invariant, dump_tensor, evaluate, evaluation_rank, load_tensor,
    random_orthogonal, random_orthogonal_tuple, random_tensor, verify_basis, verify_invariance,
)
from astrbot_plugin_invariants.services.matchings import enumerate_matchings
from astrbot_plugin_invariants.services.orbits import act, enumerate_orbits
from astrbot_plugin_invariants.utils.cycle_parser import CycleParser
from astrbot_plugin_invariants.utils.formatter import format_polynomial

QUARTIC = MatchingTuple(tuple(
    CycleParser.parse_matching(t) for t in ("(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)")
))


def indicator_tensor(dims, ones):
    x = np.zeros(dims, dtype=int)
    for index in ones:
        x[tuple(i - 1 for i in index)] = 1
    return Tensor.exact(dims, [int(v) for v in x.ravel()])


def test_quartic_monomial_and_rendering():
    f = build_invariant(QUARTIC, (2, 2, 2))
    assert f.degree == 4
    assert f.monomial_factors() == [(0, 0, 0), (0, 1, 1), (1, 0, 1), (1, 1, 0)]
    assert format_polynomial(f) == "Σ_{a1,a2; b1,b2; c1,c2} x[a1 b1 c1] x[a1 b2 c2] x[a2 b1 c2] x[a2 b2 c1]"


def test_quartic_on_diagonal_tensor():
    x = indicator_tensor((2, 2, 2), [(1, 1, 1), (2, 2, 2)])
    assert evaluate(build_invariant(QUARTIC, (2, 2, 2)), x) == 2


def test_quartic_on_even_parity_tensor():
    x = indicator_tensor((2, 2, 2), [(1, 1, 1), (1, 2, 2), (2, 1, 2), (2, 2, 1)])
    assert evaluate(build_invariant(QUARTIC, (2, 2, 2)), x) == 8


def test_exact_and_complex_paths_agree():
    x = random_tensor((2, 3, 2), "rational", seed=4)
    for t in enumerate_orbits(3, 2, threads=1):
        f = build_invariant(t, (2, 3, 2))
        exact = evaluate(f, x)
        assert isinstance(exact, Fraction)
        assert abs(evaluate(f, x.as_complex()) - complex(exact)) < 1e-9


def test_rational_entries_are_handled_exactly():
    f = build_invariant(QUARTIC, (2, 2, 2))
    x = random_tensor((2, 2, 2), "rational", seed=9)
    assert evaluate(f, x.scaled(Fraction(1, 3))) == evaluate(f, x) / 81


def test_degree_zero_evaluates_to_one():
    f = build_invariant(enumerate_orbits(2, 0)[0], (3, 3))
    assert evaluate(f, random_tensor((3, 3), "rational", seed=1)) == 1


def test_shape_mismatch():
    f = build_invariant(QUARTIC, (2, 2, 2))
    with pytest.raises(SizeMismatchError):
        evaluate(f, Tensor.zeros((2, 2, 3)))
    with pytest.raises(SizeMismatchError):
        build_invariant(QUARTIC, (2, 2))


def test_budget():
    f = build_invariant(QUARTIC, (4, 4, 4))
    with pytest.raises(BudgetExceededError):
        evaluate(f, Tensor.zeros((4, 4, 4)), budget=100)


def test_well_defined_on_orbits():
    rng = random.Random(2012)
    for _ in range(50):
        r, m = rng.randint(1, 3), rng.randint(1, 2)
        matchings = list(enumerate_matchings(m))
        t = MatchingTuple(tuple(rng.choice(matchings) for _ in range(r)))
        image = list(range(2 * m))
        rng.shuffle(image)
        moved = act(Permutation(tuple(image)), t)
        dims = tuple(rng.randint(1, 3) for _ in range(r))
        f, g = build_invariant(t, dims), build_invariant(moved, dims)
        for seed in range(3):
            x = random_tensor(dims, "rational", seed=rng.randint(0, 10 ** 6) + seed)
            assert evaluate(f, x) == evaluate(g, x)


@pytest.mark.parametrize("kind", ["real", "cayley"])
@pytest.mark.parametrize("n", [1, 2, 3, 5])
def test_random_orthogonal_is_orthogonal(kind, n):
    g = random_orthogonal(n, kind, seed=n)
    assert g.shape == (n, n)
    assert orthogonality_error(g) <= 1e-10


def test_cayley_is_genuinely_complex():
    g = random_orthogonal(4, "cayley", seed=1)
    assert np.abs(g.imag).max() > 1e-3


def test_random_orthogonal_is_seeded():
    assert np.array_equal(random_orthogonal(3, "real", seed=5), random_orthogonal(3, "real", seed=5))


def test_unknown_group_kind():
    with pytest.raises(MalformedInputError):
        random_orthogonal(3, "unitary")


def test_non_orthogonal_matrix_rejected():
    with pytest.raises(OrthogonalityError):
        OrthogonalTuple((np.array([[1.0, 1.0], [0.0, 1.0]]),))


def test_identity_action():
    x = random_tensor((2, 3), "complex", seed=3)
    moved = apply_group(OrthogonalTuple.identity((2, 3)), x)
    assert np.allclose(moved.entries, x.entries)


def test_group_action_composes():
    rng = np.random.default_rng(8)
    x = random_tensor((2, 3, 2), "complex", rng=rng)
    k1 = random_orthogonal_tuple((2, 3, 2), "real", rng=rng)
    k2 = random_orthogonal_tuple((2, 3, 2), "cayley", rng=rng)
    lhs = apply_group(k1, apply_group(k2, x))
    rhs = apply_group(k1.compose(k2), x)
    assert np.allclose(lhs.entries, rhs.entries)


@pytest.mark.parametrize("dims", [(2, 2, 2), (3, 3, 3)])
@pytest.mark.parametrize("kind", ["real", "cayley"])
def test_orbit_invariants_are_invariant(dims, kind):
    rng = np.random.default_rng(20120901)
    fs = [build_invariant(t, dims) for t in enumerate_orbits(3, 2, threads=1)]
    assert len(fs) == 5
    for _ in range(20):
        x = random_tensor(dims, "complex", rng=rng)
        k = random_orthogonal_tuple(dims, kind, rng=rng)
        for f in fs:
            assert verify_invariance(f, x, k) <= 1e-8


@pytest.mark.parametrize("kind", ["real", "cayley"])
def test_negative_control_is_not_invariant(kind):
    rng = np.random.default_rng(1)
    f = PowerMonomial((2, 2, 2), (0, 0, 0), 4)
    x = random_tensor((2, 2, 2), "complex", rng=rng)
    k = random_orthogonal_tuple((2, 2, 2), kind, rng=rng)
    assert format_polynomial(f) == "x[1 1 1]^4"
    assert verify_invariance(f, x, k) > 1e-3


@pytest.mark.slow
@pytest.mark.parametrize("r,m,dims,expected", [
    (3, 2, (4, 4, 4), 5),
    (2, 2, (4, 4), 2),
    (2, 3, (6, 6), 3),
])
def test_basis_is_linearly_independent(r, m, dims, expected):
    rng = np.random.default_rng(20120901)
    fs = [build_invariant(t, dims) for t in enumerate_orbits(r, m, threads=1)]
    samples = [random_tensor(dims, "rational", rng=rng) for _ in range(8)]
    assert evaluation_rank(fs, samples) == expected


def test_repeated_polynomial_drops_rank():
    f = build_invariant(QUARTIC, (2, 2, 2))
    samples = [random_tensor((2, 2, 2), "rational", seed=s) for s in range(4)]
    assert evaluation_rank([f, f], samples) == 1


def test_rank_requires_exact_samples():
    f = build_invariant(QUARTIC, (2, 2, 2))
    with pytest.raises(MalformedInputError):
        evaluation_rank([f], [random_tensor((2, 2, 2), "complex", seed=1)])


def test_verify_basis_report():
    report = verify_basis(3, 2, [2, 2, 2], trials=5, seed=7, kind="both", threads=1)
    assert report["passed"]
    assert report["basis_size"] == 5
    assert report["rank"] is None
    assert len(report["residuals"]) == 5
    assert report["max_residual"] <= 1e-8


def test_verify_basis_checks_rank_at_stable_dims():
    report = verify_basis(2, 2, [4, 4], trials=2, seed=7, kind="real", threads=1)
    assert report["passed"]
    assert report["rank"] == 2


def test_tensor_file_round_trip(tmp_path, config_dir):
    x = load_tensor(config_dir / "example_tensor.json")
    assert x.dims == (2, 2, 2)
    assert evaluate(build_invariant(QUARTIC, (2, 2, 2)), x) == 2
    path = tmp_path / "x.json"
    path.write_text(dump_tensor(x), encoding="utf-8")
    assert np.array_equal(load_tensor(path).entries, x.entries)


def test_complex_tensor_file(tmp_path):
    x = random_tensor((2, 2), "complex", seed=2)
    path = tmp_path / "z.json"
    path.write_text(dump_tensor(x), encoding="utf-8")
    assert np.allclose(load_tensor(path).entries, x.entries)


def test_malformed_tensor_file(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text('{"dims": [2, 2], "entries": ["1", "2"]}', encoding="utf-8")
    with pytest.raises(SizeMismatchError):
        load_tensor(path)
    path.write_text("[1, 2]", encoding="utf-8")
    with pytest.raises(MalformedInputError):
        load_tensor(path)


@pytest.mark.parametrize("content", [
    "{",
    '{"dims": [2]}',
    '{"dims": [2], "entries": ["1", "x"]}',
    '{"dims": [2], "entries": ["1", [0, 1]]}',
    '{"dims": [0], "entries": []}',
])
def test_unreadable_tensor_files(tmp_path, content):
    path = tmp_path / "bad.json"
    path.write_text(content, encoding="utf-8")
    with pytest.raises(MalformedInputError):
        load_tensor(path)
    with pytest.raises(MalformedInputError):
        load_tensor(tmp_path / "missing.json")


@pytest.mark.parametrize("m", [1, 2, 3])
def test_single_factor_invariant_is_power_of_norm(m):
    (t,) = enumerate_orbits(1, m, threads=1)
    f = build_invariant(t, (3,))
    rng = np.random.default_rng(m)
    scale = None
    for _ in range(10):
        x = random_tensor((3,), "rational", rng=rng)
        norm = sum(Fraction(v) ** 2 for v in x.entries.ravel())
        value = evaluate(f, x)
        if scale is None:
            if norm == 0:
                continue
            scale = value / norm ** m
            assert scale > 0
        assert value == scale * norm ** m


def test_cayley_is_complex_across_seeds():
    for seed in range(100):
        assert np.abs(random_orthogonal(3, "cayley", seed=seed).imag).max() > 1e-6, seed
