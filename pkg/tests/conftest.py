"""共享 fixtures"""
from pathlib import Path
from typing import Callable, List, Tuple

import pytest

from chainmetrics.cli import run


@pytest.fixture
def write_file(tmp_path: Path) -> Callable[[str, str], str]:
    """在临时目录写入文本文件，返回路径"""
    def _write(name: str, content: str) -> str:
        path = tmp_path / name
        path.write_text(content, encoding="utf-8")
        return str(path)
    return _write


@pytest.fixture
def cli(capsys) -> Callable[..., Tuple[int, str, str]]:
    """运行 CLI，返回 (退出码, stdout, stderr)"""
    def _run(*argv: str) -> Tuple[int, str, str]:
        code = run(list(argv))
        captured = capsys.readouterr()
        return code, captured.out, captured.err
    return _run


@pytest.fixture(autouse=True)
def _isolated_env(monkeypatch):
    for var in ("CHAINMETRICS_LOG_LEVEL", "CHAINMETRICS_WORKERS", "CHAINMETRICS_FORMAT", "CHAINMETRICS_STREAM_SIZE"):
        monkeypatch.delenv(var, raising=False)
