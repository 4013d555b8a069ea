"""Parsers - 快照、校准输入、冲击样本与 key=value 结果的解析"""
import csv
import logging
import math
import re
from typing import Dict, Iterator, List, TextIO, Tuple

from pydantic import ValidationError

from ..calibration import CalibrationInputs
from ..errors import ParseError
from ..wealth import BalanceEntry, BalanceSnapshot

logger = logging.getLogger(__name__)

# 只接受点作小数点的十进制文本，不接受千分位、下划线、inf/nan
_NUMBER = re.compile(r"^[+-]?(\d+(\.\d*)?|\.\d+)([eE][+-]?\d+)?$")


def parse_number(text: str) -> float:
    """
    解析十进制数字

    Args:
        text: 文本

    Returns:
        有限浮点数
    """
    token = text.strip()
    if not _NUMBER.match(token):
        raise ValueError(f"不是十进制数字: {token!r}")
    value = float(token)
    if not math.isfinite(value):
        raise ValueError(f"数值溢出: {token!r}")
    return value


def _lines(stream: TextIO) -> Iterator[Tuple[int, str]]:
    try:
        for number, line in enumerate(stream, start=1):
            yield number, line.rstrip("\r\n")
    except UnicodeDecodeError as e:
        raise ParseError(f"不是有效的 UTF-8 文本: {e.reason}") from e


def parse_snapshot(stream: TextIO, label: str = "") -> BalanceSnapshot:
    """
    解析持币快照：两列 holder,balance，可选表头

    Args:
        stream: 文本流
        label: 快照说明

    Returns:
        BalanceSnapshot（按文件顺序）
    """
    entries: List[BalanceEntry] = []
    seen_row = False
    for number, line in _lines(stream):
        if not line.strip():
            continue
        try:
            row = next(csv.reader([line]))
        except csv.Error as e:
            raise ParseError(f"CSV 格式错误: {e}", line=number) from e
        if len(row) != 2:
            raise ParseError(f"期望 2 列 (holder,balance)，实际 {len(row)} 列", line=number)

        holder, raw_balance = row[0].strip(), row[1]
        try:
            balance = parse_number(raw_balance)
        except ValueError as e:
            if not seen_row:
                logger.debug(f"第 {number} 行视为表头: {line!r}")
                seen_row = True
                continue
            raise ParseError(f"余额无效: {e}", line=number) from e
        seen_row = True

        if balance < 0:
            raise ParseError(f"余额不能为负: {raw_balance.strip()}", line=number)
        entries.append(BalanceEntry(holder=holder, balance=balance))

    if not entries:
        raise ParseError("快照文件为空")
    return BalanceSnapshot(entries=entries, label=label)


def parse_calibration_inputs(stream: TextIO) -> Tuple[CalibrationInputs, Dict[str, str]]:
    """
    解析校准输入：每行 key = value，# 开头为注释，缺省键取 2015 年默认值

    Args:
        stream: 文本流

    Returns:
        (CalibrationInputs, 来源字典 key → "file" / "default")
    """
    fields = CalibrationInputs.model_fields
    values: Dict[str, float] = {}
    for number, line in _lines(stream):
        content = line.split("#", 1)[0].strip()
        if not content:
            continue
        if "=" not in content:
            raise ParseError("期望 key = value", line=number)
        key, raw = (part.strip() for part in content.split("=", 1))
        if key not in fields:
            raise ParseError(f"未知的键，可用的有: {list(fields)}", line=number, key=key)
        if key in values:
            raise ParseError("重复的键", line=number, key=key)
        try:
            value = parse_number(raw)
        except ValueError as e:
            raise ParseError(str(e), line=number, key=key) from e
        if fields[key].annotation is int:
            if not value.is_integer():
                raise ParseError(f"必须为整数: {raw}", line=number, key=key)
            value = int(value)
        values[key] = value

    try:
        inputs = CalibrationInputs(**values)
    except ValidationError as e:
        err = e.errors()[0]
        raise ParseError(err["msg"], key=str(err["loc"][0])) from e

    provenance = {key: ("file" if key in values else "default") for key in fields}
    return inputs, provenance


def parse_shock_samples(stream: TextIO) -> List[float]:
    """
    解析交易规模样本：单列数字，允许首行表头与空行

    Args:
        stream: 文本流

    Returns:
        样本列表
    """
    samples: List[float] = []
    seen_row = False
    for number, line in _lines(stream):
        token = line.strip()
        if not token:
            continue
        try:
            samples.append(parse_number(token))
        except ValueError as e:
            if not seen_row:
                seen_row = True
                continue
            raise ParseError(str(e), line=number) from e
        seen_row = True
    if not samples:
        raise ParseError("样本文件为空")
    return samples


def parse_keyvalue(stream: TextIO) -> Dict[str, str]:
    """
    解析 KEYVALUE 格式输出

    Args:
        stream: 文本流

    Returns:
        key → 原始文本
    """
    result: Dict[str, str] = {}
    for number, line in _lines(stream):
        if not line.strip():
            continue
        if "=" not in line:
            raise ParseError("期望 key=value", line=number)
        key, value = line.split("=", 1)
        result[key] = value
    return result
