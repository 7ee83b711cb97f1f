"""配置验证器 - 运行参数、输入文件与输出 JSON 的校验"""
import json
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

from jsonschema import Draft7Validator
from jsonschema.exceptions import best_match

from ..models.errors import InvariantsError
from ..models.run import GROUP_KINDS, OUTPUT_FORMATS, RunConfig
from ..models.tree import PhyloForest
from .logger import logger
from .newick import forest_from_json

SCHEMA_PATH = Path(__file__).resolve().parent.parent / "config" / "schemas.json"

COMMANDS = ("dim", "table", "orbits", "invariant", "verify", "trees")


class ConfigValidator:
    """配置验证器

    validate_* 方法返回 (is_valid, error_message, parsed)。
    """

    def __init__(self, schema_path: Optional[Path] = None):
        self.schema_path = Path(schema_path) if schema_path else SCHEMA_PATH
        self._schemas: Optional[Dict[str, Any]] = None

    @property
    def schemas(self) -> Dict[str, Any]:
        if self._schemas is None:
            with open(self.schema_path, "r", encoding="utf-8") as f:
                self._schemas = json.load(f)
        return self._schemas

    def validate_run_config(self, config: RunConfig) -> Tuple[bool, str, Optional[RunConfig]]:
        """检查运行参数的取值范围"""
        if config.command not in COMMANDS:
            return False, f"未知的子命令: {config.command}", None
        if config.r < 1:
            return False, f"r 必须 >= 1: {config.r}", None
        if config.m < 0:
            return False, f"m 必须 >= 0: {config.m}", None
        if config.dims:
            if len(config.dims) != config.r:
                return False, f"dims 长度 {len(config.dims)} 与 r={config.r} 不一致", None
            if any(n < 1 for n in config.dims):
                return False, f"每个维数必须 >= 1: {config.dims}", None
        if config.trials < 1:
            return False, f"trials 必须 >= 1: {config.trials}", None
        if not config.tolerance > 0:
            return False, f"tolerance 必须为正: {config.tolerance}", None
        if config.kind not in GROUP_KINDS:
            return False, f"kind 必须是 {'/'.join(GROUP_KINDS)} 之一: {config.kind}", None
        if config.output not in OUTPUT_FORMATS:
            return False, f"未知的输出格式: {config.output}", None
        if config.orbit < 1:
            return False, f"orbit 编号从 1 开始: {config.orbit}", None
        if config.r_max < 1 or config.m_max < 1:
            return False, f"表格范围必须为正: r_max={config.r_max}, m_max={config.m_max}", None
        for name in ("enum_cap", "brute_cap", "canonical_cap"):
            cap = getattr(config, name)
            if cap < 2 or cap % 2:
                return False, f"{name} 必须是 >= 2 的偶数: {cap}", None
        if config.evaluation_budget < 1:
            return False, f"evaluation_budget 必须为正: {config.evaluation_budget}", None
        if config.threads < 0:
            return False, f"threads 不能为负: {config.threads}", None
        return True, "参数验证通过", config

    def validate_forest_file(self, text: str) -> Tuple[bool, str, Optional[PhyloForest]]:
        """森林文件：Newick 字符串数组"""
        try:
            forest = forest_from_json(text)
        except InvariantsError as e:
            return False, str(e), None
        return True, f"森林验证通过，包含 {forest.r} 棵树", forest

    def validate_output(self, command: str, data: Any) -> Tuple[bool, str]:
        """按 config/schemas.json 校验命令的 JSON 输出"""
        schema = self.schemas.get(command)
        if schema is None:
            return False, f"没有子命令 {command} 的输出 schema"
        error = best_match(Draft7Validator(schema).iter_errors(data))
        if error is not None:
            message = f"{error.json_path}: {error.message}"
            logger.warning(f"⚠️ {command} 的输出不符合 schema: {message}")
            return False, message
        return True, "输出验证通过"
