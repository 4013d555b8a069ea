"""Emitters - 结果输出格式"""
import csv
import io
from abc import ABC, abstractmethod
from enum import Enum
from typing import Dict, List, Tuple, Type, Union

from .result import ResultDocument, format_value

# 每次运行都会变化的元数据，只出现在人类可读的表格中
VOLATILE_METADATA = ("timestamp",)


class OutputFormat(str, Enum):
    """输出格式"""
    TABLE = "table"
    KEYVALUE = "keyvalue"
    CSV = "csv"


class Emitter(ABC):
    """所有输出格式的抽象基类"""

    @abstractmethod
    def emit(self, result: ResultDocument) -> str:
        """
        把结果渲染为文本

        Args:
            result: 分析结果

        Returns:
            文本（LF 换行）
        """
        pass


def _stable_metadata(result: ResultDocument) -> Dict[str, object]:
    return {k: v for k, v in result.metadata.items() if k not in VOLATILE_METADATA}


class TableEmitter(Emitter):
    """人类可读的对齐表格"""

    def emit(self, result: ResultDocument) -> str:
        sections: List[Tuple[str, Dict[str, object]]] = [
            ("输入", result.inputs),
            ("输出", result.outputs),
            ("元数据", result.metadata),
        ]
        lines = [f"== {result.command} =="]
        for title, values in sections:
            if not values:
                continue
            lines.append(f"[{title}]")
            width = max(len(k) for k in values)
            lines.extend(f"  {k.ljust(width)}  {format_value(v)}" for k, v in values.items())

        if result.series is not None:
            lines.append("[序列]")
            cells = [result.series.columns] + [[format_value(v) for v in row] for row in result.series.rows]
            widths = [max(len(str(r[i])) for r in cells) for i in range(len(result.series.columns))]
            for row in cells:
                lines.append("  " + "  ".join(str(c).rjust(w) for c, w in zip(row, widths)))
        if result.notes:
            lines.append("[说明]")
            lines.extend(f"  {note}" for note in result.notes)
        return "\n".join(lines) + "\n"


class KeyValueEmitter(Emitter):
    """每行一个 key=value，便于机器解析"""

    def emit(self, result: ResultDocument) -> str:
        lines = [f"command={result.command}"]
        lines.extend(f"input.{k}={format_value(v)}" for k, v in result.inputs.items())
        lines.extend(f"output.{k}={format_value(v)}" for k, v in result.outputs.items())
        lines.extend(f"meta.{k}={format_value(v)}" for k, v in _stable_metadata(result).items())
        if result.series is not None:
            for i, row in enumerate(result.series.rows):
                lines.extend(
                    f"series.{i}.{col}={format_value(v)}" for col, v in zip(result.series.columns, row)
                )
        return "\n".join(lines) + "\n"


class CsvEmitter(Emitter):
    """序列数据输出为带表头的 CSV；没有序列时输出 section,key,value"""

    def emit(self, result: ResultDocument) -> str:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator="\n")
        if result.series is not None:
            writer.writerow(result.series.columns)
            writer.writerows([format_value(v) for v in row] for row in result.series.rows)
        else:
            writer.writerow(["section", "key", "value"])
            for section, values in (
                ("input", result.inputs),
                ("output", result.outputs),
                ("meta", _stable_metadata(result)),
            ):
                writer.writerows([section, k, format_value(v)] for k, v in values.items())
        return buffer.getvalue()


class EmitterRegistry:
    """输出格式注册表"""

    _emitters: Dict[OutputFormat, Type[Emitter]] = {}

    @classmethod
    def register(cls, fmt: OutputFormat, emitter_class: Type[Emitter]) -> None:
        """注册输出格式"""
        cls._emitters[fmt] = emitter_class

    @classmethod
    def get(cls, fmt: OutputFormat) -> Emitter:
        """获取输出格式实例"""
        if fmt not in cls._emitters:
            raise ValueError(f"输出格式 '{fmt}' 未注册，可用的有: {[f.value for f in cls._emitters]}")
        return cls._emitters[fmt]()


EmitterRegistry.register(OutputFormat.TABLE, TableEmitter)
EmitterRegistry.register(OutputFormat.KEYVALUE, KeyValueEmitter)
EmitterRegistry.register(OutputFormat.CSV, CsvEmitter)


def emit(result: ResultDocument, fmt: Union[OutputFormat, str] = OutputFormat.TABLE) -> str:
    """
    按指定格式渲染结果

    Args:
        result: 分析结果
        fmt: 输出格式

    Returns:
        文本
    """
    return EmitterRegistry.get(OutputFormat(fmt)).emit(result)
