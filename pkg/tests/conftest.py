"""把插件目录作为包 astrbot_plugin_invariants 加载，使相对导入在没有 AstrBot 运行时时可用"""
import importlib.util
import sys
from pathlib import Path

import pytest

PACKAGE = "astrbot_plugin_invariants"
ROOT = Path(__file__).resolve().parent.parent


def _load_plugin_package():
    if PACKAGE in sys.modules:
        return sys.modules[PACKAGE]
    spec = importlib.util.spec_from_file_location(
        PACKAGE, ROOT / "__init__.py", submodule_search_locations=[str(ROOT)]
    )
    module = importlib.util.module_from_spec(spec)
    sys.modules[PACKAGE] = module
    spec.loader.exec_module(module)
    return module


_load_plugin_package()


@pytest.fixture
def config_dir() -> Path:
    return ROOT / "config"
