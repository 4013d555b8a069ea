"""CLI Main - chainmetrics 命令行入口"""
import argparse
import logging
import sys
from datetime import datetime
from typing import Any, Dict, List, Optional

import numpy as np

from .. import __version__
from ..attack import SimMode
from ..attack.simulator import MAX_SEED
from ..config import OUTPUT_FORMATS, PRESETS, get_preset, load_settings
from ..dataio import emit
from ..errors import ChainMetricsError, UsageError
from .commands import commands
from .registry import RunContext

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_USAGE = 2

# 不属于子命令参数的全局选项
_GLOBAL_KEYS = ("command", "format", "seed", "preset", "output", "log_level", "workers")


def _float_list(text: str) -> List[float]:
    try:
        return [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"期望逗号分隔的数字: {text}")


def _seed(text: str) -> int:
    try:
        value = int(text, 0)
    except ValueError:
        raise argparse.ArgumentTypeError(f"种子必须是整数: {text}")
    if not 0 <= value <= MAX_SEED:
        raise argparse.ArgumentTypeError(f"种子必须位于 [0, 2^64 − 1]: {text}")
    return value


def _global_options(parser: argparse.ArgumentParser) -> None:
    # SUPPRESS 让子命令前后都能写全局选项，而不会互相覆盖
    group = parser.add_argument_group("全局选项")
    group.add_argument("--format", choices=OUTPUT_FORMATS, default=argparse.SUPPRESS, help="输出格式")
    group.add_argument("--seed", type=_seed, default=argparse.SUPPRESS, help="主种子（缺省时随机生成并记录）")
    group.add_argument("--preset", choices=sorted(PRESETS), default=argparse.SUPPRESS, help="命名预设")
    group.add_argument("--output", default=argparse.SUPPRESS, help="输出文件（缺省为标准输出）")
    group.add_argument("--log-level", default=argparse.SUPPRESS, help="日志级别")
    group.add_argument("--workers", type=int, default=argparse.SUPPRESS, help="模拟线程数")


def build_parser() -> argparse.ArgumentParser:
    """构造参数解析器"""
    parser = argparse.ArgumentParser(prog="chainmetrics", description="比特币经济学定量分析工具")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    _global_options(parser)
    sub = parser.add_subparsers(dest="command", metavar="COMMAND")
    sub.required = True

    def add(name: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=commands.get(name).help)
        _global_options(p)
        return p

    p = add("attack-prob")
    p.add_argument("--q", type=float, help="攻击者算力占比")
    p.add_argument("--z", type=int, help="确认深度")
    p.add_argument("--series-max-z", type=int, help="输出 z = 0..N 的风险曲线")

    p = add("attack-confirmations")
    p.add_argument("--q", type=float, help="攻击者算力占比")
    p.add_argument("--q-grid", type=_float_list, help="逗号分隔的 q 列表")
    p.add_argument("--epsilon", type=float, help="风险阈值")

    p = add("attack-simulate")
    p.add_argument("--q", type=float, help="攻击者算力占比")
    p.add_argument("--z", type=int, help="确认深度")
    p.add_argument("--trials", type=int, help="试验次数")
    p.add_argument("--mode", choices=[m.value for m in SimMode], help="模拟模式")
    p.add_argument("--deficit-cutoff", type=int, help="吸收失败的差距")

    p = add("supply")
    p.add_argument("--height", type=int, help="区块高度")
    p.add_argument("--inflation", action="store_true", default=None, help="由奖励与流通量计算通胀")
    p.add_argument("--reward", type=float, help="区块奖励（BTC）")
    p.add_argument("--supply", type=float, help="流通量（BTC）")
    p.add_argument("--eras", action="store_true", default=None, help="列出全部减半周期")
    p.add_argument("--initial-reward", type=float)
    p.add_argument("--halving-interval", type=int)
    p.add_argument("--max-supply", type=float)
    p.add_argument("--blocks-per-day", type=int)

    p = add("calibrate")
    p.add_argument("--input", help="key = value 格式的输入文件，- 表示标准输入")
    p.add_argument("--shocks", help="交易规模样本文件")
    p.add_argument("--tx-per-day", type=float)
    p.add_argument("--volume-per-day", type=float)
    p.add_argument("--fees-per-day", type=float)
    p.add_argument("--supply", type=float)
    p.add_argument("--blocks-per-day", type=int)
    p.add_argument("--annual-discount", type=float)
    p.add_argument("--reward-per-block", type=float)
    p.add_argument("--confirmation-lag", type=int, help="确认滞后 N̄（默认 blocks_per_day − 1）")
    p.add_argument("--utility-b", type=float, help="效用函数参数 b（> 0）")

    p = add("wealth")
    p.add_argument("metric", choices=["gini", "lorenz"])
    p.add_argument("--snapshot", help="holder,balance 格式的快照文件，- 表示标准输入")
    p.add_argument("--label")

    return parser


def _command_params(namespace: argparse.Namespace, preset: Optional[str]) -> Dict[str, Any]:
    params: Dict[str, Any] = get_preset(preset, namespace.command) if preset else {}
    for key, value in vars(namespace).items():
        if key in _GLOBAL_KEYS or value is None:
            continue
        params[key] = value
    return params


def _write(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(text)


def run(argv: Optional[List[str]] = None) -> int:
    """
    执行一次命令行调用

    Args:
        argv: 参数列表（默认 sys.argv[1:]）

    Returns:
        退出码：0 成功，1 领域/解析错误，2 用法错误
    """
    parser = build_parser()
    try:
        namespace = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    try:
        settings = load_settings()
        level = getattr(namespace, "log_level", settings.log_level).upper()
        logging.basicConfig(
            level=getattr(logging, level, logging.WARNING),
            format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
            stream=sys.stderr,
        )

        seed = getattr(namespace, "seed", None)
        if seed is None:
            seed = int(np.random.SeedSequence().entropy) & MAX_SEED
        preset = getattr(namespace, "preset", None)
        workers = getattr(namespace, "workers", settings.workers)
        if workers < 1:
            raise UsageError(f"--workers 必须 ≥ 1，收到 {workers}")

        metadata: Dict[str, Any] = {"version": __version__, "seed": seed}
        if preset:
            metadata["preset"] = preset
        metadata["timestamp"] = datetime.now().isoformat(timespec="seconds")

        context = RunContext(
            seed=seed,
            workers=workers,
            stream_size=settings.stream_size,
            preset=preset,
            metadata=metadata,
        )
        logger.debug(f"执行 {namespace.command}: seed={seed}, preset={preset}, workers={workers}")
        result = commands.call(namespace.command, _command_params(namespace, preset), context)
        _write(emit(result, getattr(namespace, "format", settings.output_format)), getattr(namespace, "output", None))
        return EXIT_OK

    except UsageError as e:
        print(f"chainmetrics: 用法错误: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ChainMetricsError as e:
        print(f"chainmetrics: 错误: {e}", file=sys.stderr)
        return EXIT_ERROR
    except ValueError as e:
        print(f"chainmetrics: 错误: {e}".splitlines()[0], file=sys.stderr)
        return EXIT_ERROR
    except OSError as e:
        print(f"chainmetrics: 文件错误: {e.filename or ''} {e.strerror or e}".rstrip(), file=sys.stderr)
        return EXIT_ERROR


def main(argv: Optional[List[str]] = None) -> None:
    """console_scripts 入口"""
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
