"""Errors - 统一异常层级"""
from typing import Optional


class ChainMetricsError(Exception):
    """所有 chainmetrics 异常的基类"""


class DomainError(ChainMetricsError, ValueError):
    """参数超出模型定义域（如 q ∉ [0,1]、供应量 ≤ 0）"""


class NoFiniteDepthError(DomainError):
    """不存在有限的确认深度（攻击者算力占比 ≥ 0.5 或扫描超出上限）"""


class ConfigError(ChainMetricsError):
    """环境变量或预设配置无效"""


class ParseError(ChainMetricsError, ValueError):
    """
    输入文件解析失败

    Attributes:
        line: 出错的行号（从 1 开始，可选）
        key: 出错的键名（可选）
    """

    def __init__(self, message: str, line: Optional[int] = None, key: Optional[str] = None):
        self.line = line
        self.key = key
        prefix = []
        if line is not None:
            prefix.append(f"第 {line} 行")
        if key is not None:
            prefix.append(f"键 '{key}'")
        full = f"{', '.join(prefix)}: {message}" if prefix else message
        super().__init__(full)


class UsageError(ChainMetricsError):
    """命令行参数无效或缺失"""
