import json
from pathlib import Path

import pytest

from astrbot_plugin_invariants.models.run import RunConfig
from astrbot_plugin_invariants.services.executor import CommandExecutor
from astrbot_plugin_invariants.utils.config_validator import ConfigValidator

EXAMPLE_TENSOR = str(Path(__file__).resolve().parent.parent / "config" / "example_tensor.json")


@pytest.fixture
def validator():
    return ConfigValidator()


def test_default_config_is_valid(validator):
    ok, message, parsed = validator.validate_run_config(RunConfig(command="dim", r=3, m=2))
    assert ok, message
    assert parsed.r == 3


@pytest.mark.parametrize("overrides", [
    {"command": "plot"},
    {"r": 0},
    {"m": -1},
    {"r": 2, "dims": [2, 2, 2]},
    {"r": 2, "dims": [2, 0]},
    {"trials": 0},
    {"tolerance": 0.0},
    {"kind": "unitary"},
    {"output": "xml"},
    {"orbit": 0},
    {"enum_cap": 7},
    {"canonical_cap": 0},
    {"evaluation_budget": 0},
    {"threads": -1},
])
def test_out_of_range_configs(validator, overrides):
    config = RunConfig(command="dim", r=2, m=2)
    for key, value in overrides.items():
        setattr(config, key, value)
    ok, message, parsed = validator.validate_run_config(config)
    assert not ok
    assert message
    assert parsed is None


def test_run_config_dict_round_trip():
    config = RunConfig(command="verify", r=3, m=2, dims=[2, 2, 2], trials=5, kind="real")
    assert RunConfig.from_dict(config.to_dict()) == config
    assert RunConfig(command="verify", r=2, m=3).resolved_dims() == [6, 6]
    assert RunConfig(command="verify", r=2, m=0).resolved_dims() == [1, 1]


def test_forest_file(validator, config_dir):
    ok, _, forest = validator.validate_forest_file((config_dir / "example_forest.json").read_text(encoding="utf-8"))
    assert ok
    assert forest.r == 3
    assert not validator.validate_forest_file('["(1,2);", "((1,2),3);"]')[0]


@pytest.mark.parametrize("config", [
    RunConfig(command="dim", r=3, m=2, threads=1),
    RunConfig(command="table", r_max=4, m_max=3, threads=1),
    RunConfig(command="orbits", r=3, m=2, threads=1),
    RunConfig(command="invariant", r=3, m=2, orbit=5, threads=1),
    RunConfig(command="verify", r=2, m=1, trials=2, threads=1),
    RunConfig(command="trees", matching="(1 4)(2 3)(5 8)(6 7)"),
    RunConfig(command="trees", newick="((1,(2,7)),((3,(5,6)),4));"),
    RunConfig(command="invariant", r=3, m=1, tensor_file=EXAMPLE_TENSOR, threads=1),
])
def test_command_outputs_match_shipped_schemas(validator, config):
    result = CommandExecutor(validator).execute(config)
    assert result["success"], result["message"]
    data = json.loads(json.dumps(result["data"]))
    ok, message = validator.validate_output(config.command, data)
    assert ok, message


def test_schema_violation_reported(validator):
    ok, message = validator.validate_output("dim", {"r": 3, "m": 2, "dim": 5})
    assert not ok
    assert "$.dim" in message
    assert not validator.validate_output("plot", {})[0]


def test_newick_pattern_matches_at_end(validator):
    assert validator.validate_output("trees", {"newick": "(((1,4),(2,3)),5);", "forest": ["((1,2),3);"]})[0]
    ok, message = validator.validate_output("trees", {"newick": "(((1,4),(2,3)),5)"})
    assert not ok
    assert "$.newick" in message


def test_nested_violation_path(validator):
    ok, message = validator.validate_output("trees", {"labels": [{"parent": "x", "children": [1, 2]}]})
    assert not ok
    assert "$.labels[0].parent" in message
