"""正交群张量不变量插件"""

__version__ = "1.0.0"
