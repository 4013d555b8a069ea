"""Chain Race Simulator - 诚实链与攻击链竞赛的蒙特卡洛模拟"""
import logging
import math
from concurrent.futures import ThreadPoolExecutor
from typing import List, Optional, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..errors import DomainError
from .race import RaceRegistry, SimMode
from .sampling import catch_up_walk

logger = logging.getLogger(__name__)

RNG_ALGORITHM = "PCG64 (numpy SeedSequence.spawn)"
DEFAULT_STREAM_SIZE = 65_536
CUTOFF_MARGIN = 30
CUTOFF_TAIL = 1e-12
MAX_SEED = 2 ** 64 - 1


def default_deficit_cutoff(q: float, z: int) -> int:
    """
    默认吸收差距 D = max(z + 30, 使 (q/p)^D < 1e-12 的最小 D)

    Args:
        q: 攻击者出块概率（< 0.5）
        z: 确认深度

    Returns:
        D
    """
    if q == 0.0:
        return z + CUTOFF_MARGIN
    ratio = q / (1.0 - q)
    depth = max(1, math.ceil(math.log(CUTOFF_TAIL) / math.log(ratio)))
    while ratio ** depth >= CUTOFF_TAIL:
        depth += 1
    return max(z + CUTOFF_MARGIN, depth)


class SimConfig(BaseModel):
    """
    模拟配置

    Attributes:
        q: 攻击者出块概率，0 ≤ q < 0.5
        z: 确认深度
        trials: 试验次数
        seed: 64 位无符号主种子
        mode: 模拟模式
        deficit_cutoff: 吸收失败的差距 D（缺省时自动计算）
        stream_size: 每个随机数流的试验次数，决定流的切分方式
    """
    model_config = ConfigDict(frozen=True)

    q: float = Field(ge=0.0, lt=0.5, allow_inf_nan=False)
    z: int = Field(ge=0)
    trials: int = Field(ge=1)
    seed: int = Field(ge=0, le=MAX_SEED)
    mode: SimMode = SimMode.POISSON_PROGRESS
    deficit_cutoff: Optional[int] = None
    stream_size: int = Field(default=DEFAULT_STREAM_SIZE, ge=1)

    @model_validator(mode="after")
    def _fill_cutoff(self) -> "SimConfig":
        if self.deficit_cutoff is None:
            object.__setattr__(self, "deficit_cutoff", default_deficit_cutoff(self.q, self.z))
        elif self.deficit_cutoff < self.z + 1:
            raise ValueError(f"deficit_cutoff 必须 ≥ z + 1 = {self.z + 1}")
        return self

    @classmethod
    def create(cls, **kwargs) -> "SimConfig":
        """构造配置，校验失败时抛出 DomainError"""
        try:
            return cls(**kwargs)
        except ValidationError as e:
            err = e.errors()[0]
            field = ".".join(str(x) for x in err.get("loc", ())) or "config"
            raise DomainError(f"无效的模拟配置 {field}: {err['msg']}") from e


class SimResult(BaseModel):
    """
    模拟结果

    Attributes:
        estimate: 成功频率 successes / trials
        standard_error: sqrt(estimate·(1−estimate)/trials)
        successes: 成功次数
        trials: 试验次数
        mode: 模拟模式
        seed: 主种子
        deficit_cutoff: 使用的吸收差距
        streams: 随机数流数量
        rng: 随机数算法名
    """
    model_config = ConfigDict(frozen=True)

    estimate: float
    standard_error: float
    successes: int
    trials: int
    mode: SimMode
    seed: int
    deficit_cutoff: int
    streams: int
    rng: str = RNG_ALGORITHM

    @classmethod
    def from_counts(cls, config: SimConfig, successes: int, streams: int) -> "SimResult":
        estimate = successes / config.trials
        return cls(
            estimate=estimate,
            standard_error=math.sqrt(estimate * (1.0 - estimate) / config.trials),
            successes=successes,
            trials=config.trials,
            mode=config.mode,
            seed=config.seed,
            deficit_cutoff=config.deficit_cutoff,
            streams=streams,
        )

    def z_score(self, expected: float) -> float:
        """与期望值相差多少个标准误（标准误为 0 时，相等返回 0，否则返回 inf）"""
        if self.standard_error == 0.0:
            return 0.0 if self.estimate == expected else math.inf
        return (self.estimate - expected) / self.standard_error


def plan_streams(trials: int, stream_size: int) -> List[int]:
    """把试验切分成若干流，每个流最多 stream_size 次"""
    full, rest = divmod(trials, stream_size)
    return [stream_size] * full + ([rest] if rest else [])


def _run_stream(config: SimConfig, seed_seq: np.random.SeedSequence, size: int) -> int:
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    strategy = RaceRegistry.get(config.mode)
    lead = strategy.head_start(rng, config.q, config.z, size)
    success = catch_up_walk(rng, config.z - lead, config.q, config.deficit_cutoff)
    return int(success.sum())


def run_simulation(config: SimConfig, workers: int = 1) -> SimResult:
    """
    执行模拟

    每个流从主种子派生独立的子种子（SeedSequence.spawn），结果只依赖配置，
    与线程数无关。

    Args:
        config: 模拟配置
        workers: 线程数

    Returns:
        SimResult
    """
    sizes = plan_streams(config.trials, config.stream_size)
    children = np.random.SeedSequence(config.seed).spawn(len(sizes))
    jobs: List[Tuple[np.random.SeedSequence, int]] = list(zip(children, sizes))
    logger.debug(
        f"模拟计划: mode={config.mode.value}, trials={config.trials}, "
        f"streams={len(sizes)}, D={config.deficit_cutoff}, workers={workers}"
    )

    if workers <= 1 or len(jobs) == 1:
        counts = [_run_stream(config, seq, size) for seq, size in jobs]
    else:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            counts = list(executor.map(lambda job: _run_stream(config, *job), jobs))

    result = SimResult.from_counts(config, sum(counts), len(sizes))
    logger.info(
        f"模拟完成: mode={config.mode.value}, q={config.q}, z={config.z}, "
        f"estimate={result.estimate:.6g} ± {result.standard_error:.2g}"
    )
    return result


def simulate_catch_up(
    q: float,
    z: int,
    trials: int,
    seed: int,
    deficit_cutoff: Optional[int] = None,
    workers: int = 1,
    stream_size: int = DEFAULT_STREAM_SIZE,
) -> SimResult:
    """
    模拟从落后 z 个区块开始的追赶过程（赌徒破产）

    Args:
        q: 攻击者出块概率（< 0.5）
        z: 初始差距
        trials: 试验次数
        seed: 主种子
        deficit_cutoff: 吸收失败的差距（可选）
        workers: 线程数
        stream_size: 每个流的试验次数

    Returns:
        SimResult
    """
    config = SimConfig.create(
        q=q, z=z, trials=trials, seed=seed, mode=SimMode.CATCH_UP,
        deficit_cutoff=deficit_cutoff, stream_size=stream_size,
    )
    return run_simulation(config, workers=workers)


def simulate_double_spend(config: SimConfig, workers: int = 1) -> SimResult:
    """
    模拟双花攻击

    POISSON_PROGRESS：k ~ Poisson(z·q/p)；BERNOULLI_RACE：逐块模拟诚实链挖出 z 块期间的竞赛。
    k ≥ z 时立即成功，否则从差距 z − k 开始追赶。

    Args:
        config: 模拟配置
        workers: 线程数

    Returns:
        SimResult
    """
    if config.mode == SimMode.CATCH_UP:
        raise DomainError("simulate_double_spend 需要 poisson 或 bernoulli 模式")
    return run_simulation(config, workers=workers)
