import io
import json

import pytest

from astrbot_plugin_invariants.cli import main
from astrbot_plugin_invariants.models.run import ENUM_CAP_ENV


def run(*argv):
    out, err = io.StringIO(), io.StringIO()
    code = main(list(argv), stdout=out, stderr=err)
    return code, out.getvalue(), err.getvalue()


def test_dim_text():
    assert run("dim", "--r", "3", "--m", "2", "--threads", "1") == (0, "5\n", "")


def test_dim_json():
    code, out, _ = run("dim", "--r", "8", "--m", "6", "--json")
    assert code == 0
    assert json.loads(out) == {"r": 8, "m": 6, "dim": "284615877731708760168866"}


def test_table_json_has_all_cells():
    code, out, _ = run("table", "--rmax", "8", "--mmax", "6", "--json")
    data = json.loads(out)
    assert code == 0
    assert len(data["cells"]) == 48
    assert {"r": 5, "m": 6, "dim": "253588562985"} in data["cells"]


def test_output_is_deterministic():
    argv = ("verify", "--r", "3", "--m", "2", "--dims", "2,2,2", "--trials", "3", "--threads", "1", "--json")
    first = run(*argv)
    assert first[0] == 0
    assert run(*argv) == first


def test_orbits_dot_format():
    code, out, _ = run("orbits", "--r", "3", "--m", "2", "--format", "dot", "--threads", "1")
    assert code == 0
    assert out.count("graph orbit") == 5


def test_invariant_text():
    code, out, _ = run("invariant", "--r", "2", "--m", "1", "--orbit", "1", "--dims", "2,2")
    assert code == 0
    assert out.splitlines()[-1] == "Σ_{a1; b1} x[a1 b1] x[a1 b1]"


def test_trees_newick_format():
    code, out, _ = run("trees", "--matching", "(1 4)(2 3)(5 8)(6 7)", "--format", "newick")
    assert (code, out) == (0, "(((1,4),(2,3)),5);\n")


def test_usage_errors():
    code, out, err = run("dim", "--r", "x", "--m", "2")
    assert code == 2
    assert out == ""
    assert err.startswith("error: usage:")
    assert run()[0] == 2
    assert run("dim", "--r", "3")[0] == 2
    assert run("invariant", "--r", "3", "--m", "2", "--dims", "2;2")[0] == 2


def test_dims_length_mismatch():
    code, _, err = run("invariant", "--r", "3", "--m", "2", "--dims", "2,2")
    assert code == 2
    assert err.count("\n") == 1


def test_cap_exceeded():
    code, out, err = run("orbits", "--r", "2", "--m", "7", "--canonical-cap", "12")
    assert code == 3
    assert out == ""
    assert err.startswith("error: cap_exceeded:")


def test_malformed_matching():
    code, _, err = run("trees", "--matching", "(1 2 3)")
    assert code == 2
    assert err.startswith("error: malformed_input:")


def test_environment_enumeration_cap(monkeypatch):
    monkeypatch.setenv(ENUM_CAP_ENV, "4")
    code, _, err = run("orbits", "--r", "2", "--m", "3", "--threads", "1")
    assert code == 3
    assert "cap_exceeded" in err
    assert run("orbits", "--r", "2", "--m", "3", "--threads", "1", "--enum-cap", "6")[0] == 0


@pytest.mark.parametrize("argv", [
    ("verify", "--r", "3", "--m", "2", "--dims", "3,3,3", "--trials", "2", "--kind", "cayley", "--threads", "1"),
    ("verify", "--r", "2", "--m", "2", "--trials", "2", "--kind", "real", "--threads", "1"),
])
def test_verify_passes(argv):
    code, out, err = run(*argv)
    assert code == 0, err
    assert "最大残差" in out


def test_invariant_on_tensor_file(config_dir):
    code, out, _ = run("invariant", "--r", "3", "--m", "1", "--tensor", str(config_dir / "example_tensor.json"),
                       "--threads", "1", "--json")
    assert code == 0
    assert json.loads(out)["value"] == "2"
