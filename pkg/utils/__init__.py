"""张量不变量工具模块"""
from .cycle_parser import CycleParser
from .config_validator import ConfigValidator

__all__ = [
    'CycleParser',
    'ConfigValidator'
]
