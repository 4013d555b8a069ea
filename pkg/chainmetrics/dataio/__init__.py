"""Data IO - 输入解析与结果输出"""
from .result import ResultDocument, Series, format_value
from .emitters import OutputFormat, Emitter, EmitterRegistry, emit
from .parsers import (
    parse_number,
    parse_snapshot,
    parse_calibration_inputs,
    parse_shock_samples,
    parse_keyvalue,
)

__all__ = [
    "ResultDocument",
    "Series",
    "format_value",
    "OutputFormat",
    "Emitter",
    "EmitterRegistry",
    "emit",
    "parse_number",
    "parse_snapshot",
    "parse_calibration_inputs",
    "parse_shock_samples",
    "parse_keyvalue",
]
