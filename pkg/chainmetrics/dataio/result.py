"""Result Document - 标准化的分析结果对象"""
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence
import math

SIGNIFICANT_DIGITS = 15


@dataclass
class Series:
    """
    曲线/序列数据（如 Lorenz 点、风险随 z 的变化）

    Attributes:
        columns: 列名
        rows: 数据行
    """
    columns: List[str]
    rows: List[Sequence[Any]] = field(default_factory=list)

    def __post_init__(self):
        for i, row in enumerate(self.rows):
            if len(row) != len(self.columns):
                raise ValueError(f"第 {i} 行有 {len(row)} 列，期望 {len(self.columns)} 列")


@dataclass
class ResultDocument:
    """
    分析结果

    Attributes:
        command: 子命令名称
        inputs: 输入参数
        outputs: 输出结果
        metadata: 元数据（seed、version、timestamp 等）
        series: 可选的序列数据
        notes: 附加说明，只出现在表格输出中
    """
    command: str
    inputs: Dict[str, Any] = field(default_factory=dict)
    outputs: Dict[str, Any] = field(default_factory=dict)
    metadata: Dict[str, Any] = field(default_factory=dict)
    series: Optional[Series] = None
    notes: List[str] = field(default_factory=list)


def format_value(value: Any) -> str:
    """
    把数值格式化为与区域设置无关的文本（浮点数保留 15 位有效数字）

    Args:
        value: 任意值

    Returns:
        文本
    """
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, Enum):
        return str(value.value)
    if isinstance(value, int):
        return str(value)
    if isinstance(value, float):
        if math.isnan(value):
            return "nan"
        if math.isinf(value):
            return "inf" if value > 0 else "-inf"
        return format(value, f".{SIGNIFICANT_DIGITS}g")
    if value is None:
        return ""
    if isinstance(value, (list, tuple)):
        return ",".join(format_value(v) for v in value)
    return str(value)
