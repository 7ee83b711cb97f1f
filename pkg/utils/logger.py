"""日志入口 - 插件内统一使用 AstrBot 的 logger"""
try:
    from astrbot.api import logger
except ImportError:  # 独立命令行 / 测试环境没有 AstrBot 运行时
    import logging

    logger = logging.getLogger("astrbot_plugin_invariants")

__all__ = ["logger"]
