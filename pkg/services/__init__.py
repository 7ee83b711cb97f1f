"""张量不变量服务模块"""
from .scheduler import WorkScheduler
from .executor import CommandExecutor

__all__ = [
    'WorkScheduler',
    'CommandExecutor'
]
