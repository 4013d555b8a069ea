"""Config - 运行配置与预设"""
import logging
import os
from typing import Any, Dict, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator

from .errors import ConfigError

logger = logging.getLogger(__name__)

OUTPUT_FORMATS = ("table", "keyvalue", "csv")

# 变量名 → Settings 字段
_ENV_FIELDS = {
    "CHAINMETRICS_LOG_LEVEL": "log_level",
    "CHAINMETRICS_WORKERS": "workers",
    "CHAINMETRICS_FORMAT": "output_format",
    "CHAINMETRICS_STREAM_SIZE": "stream_size",
}


class Settings(BaseModel):
    """
    运行配置

    Attributes:
        log_level: 日志级别
        workers: 模拟使用的线程数（不影响结果，只影响速度）
        output_format: 默认输出格式
        stream_size: 每个随机数流负责的试验次数（影响结果，固定后可复现）
    """
    log_level: str = "WARNING"
    workers: int = Field(default=4, ge=1)
    output_format: str = "table"
    stream_size: int = Field(default=65536, ge=1)

    @field_validator("log_level")
    @classmethod
    def _check_level(cls, value: str) -> str:
        level = value.upper()
        if level not in ("DEBUG", "INFO", "WARNING", "ERROR", "CRITICAL"):
            raise ValueError(f"未知日志级别: {value}")
        return level

    @field_validator("output_format")
    @classmethod
    def _check_format(cls, value: str) -> str:
        fmt = value.lower()
        if fmt not in OUTPUT_FORMATS:
            raise ValueError(f"未知输出格式: {value}，可用的有: {list(OUTPUT_FORMATS)}")
        return fmt


_dotenv_loaded = False


def load_settings(env: Optional[Dict[str, str]] = None) -> Settings:
    """
    从环境变量（及 .env 文件）加载配置

    Args:
        env: 环境变量字典（可选，默认读取 os.environ 并加载 .env）

    Returns:
        Settings 实例
    """
    global _dotenv_loaded
    if env is None:
        if not _dotenv_loaded:
            load_dotenv()
            _dotenv_loaded = True
        env = dict(os.environ)

    values: Dict[str, Any] = {}
    for var, field in _ENV_FIELDS.items():
        if env.get(var):
            values[field] = env[var]

    try:
        return Settings(**values)
    except ValidationError as e:
        bad = e.errors()[0]
        field = bad["loc"][0] if bad.get("loc") else "?"
        var = next((k for k, v in _ENV_FIELDS.items() if v == field), str(field))
        raise ConfigError(f"环境变量 {var} 无效: {bad['msg']}") from e


# 确认深度表的 q 网格
DEMO_Q_GRID = (0.10, 0.15, 0.20, 0.25, 0.30, 0.35, 0.40, 0.45)

PRESETS: Dict[str, Dict[str, Dict[str, Any]]] = {
    "paper-2015": {
        "attack-prob": {"q": 0.1, "z": 5, "series_max_z": 10},
        "attack-confirmations": {"epsilon": 0.001, "q_grid": list(DEMO_Q_GRID)},
        "attack-simulate": {"q": 0.1, "z": 5},
        "supply": {"inflation": True, "reward": 25.0, "supply": 14342502.95},
        "calibrate": {},
        "wealth": {},
    },
}


def get_preset(name: str, command: str) -> Dict[str, Any]:
    """
    获取某个命令在预设下的默认参数

    Args:
        name: 预设名称
        command: 子命令名称

    Returns:
        参数字典（副本）
    """
    if name not in PRESETS:
        raise ConfigError(f"预设 '{name}' 不存在，可用的有: {list(PRESETS.keys())}")
    return dict(PRESETS[name].get(command, {}))
