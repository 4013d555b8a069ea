"""Supply Schedule - 区块奖励、减半与货币增长"""
import logging
import math
from dataclasses import dataclass
from typing import List

from pydantic import BaseModel, ConfigDict, Field, ValidationError

from ..errors import DomainError

logger = logging.getLogger(__name__)

SATOSHIS_PER_BTC = 100_000_000
DAYS_PER_YEAR = 365


def to_satoshis(btc: float) -> int:
    """BTC → 整数聪"""
    return int(round(btc * SATOSHIS_PER_BTC))


def to_btc(satoshis: int) -> float:
    """整数聪 → BTC"""
    return satoshis / SATOSHIS_PER_BTC


class SupplySchedule(BaseModel):
    """
    发行计划

    Attributes:
        initial_reward: 初始区块奖励（BTC）
        halving_interval: 减半间隔（区块数）
        max_supply: 供应上限（BTC）
        blocks_per_day: 每天出块数（10 分钟一块 → 144）
    """
    model_config = ConfigDict(frozen=True)

    initial_reward: float = Field(default=50.0, gt=0, allow_inf_nan=False)
    halving_interval: int = Field(default=210_000, gt=0)
    max_supply: float = Field(default=21_000_000.0, gt=0, allow_inf_nan=False)
    blocks_per_day: int = Field(default=144, gt=0)

    @property
    def initial_reward_sats(self) -> int:
        return to_satoshis(self.initial_reward)

    @property
    def max_supply_sats(self) -> int:
        return to_satoshis(self.max_supply)

    @classmethod
    def create(cls, **kwargs) -> "SupplySchedule":
        """构造发行计划，校验失败时抛出 DomainError"""
        try:
            return cls(**kwargs)
        except ValidationError as e:
            err = e.errors()[0]
            raise DomainError(f"无效的发行计划 {err['loc'][0]}: {err['msg']}") from e


class MonetarySnapshot(BaseModel):
    """
    某一高度的货币状态

    Attributes:
        height: 区块高度
        supply: 流通量（BTC）
        reward: 当前区块奖励（BTC）
        mu_daily: 日货币增长因子
        annual_inflation: 年化通胀率
    """
    model_config = ConfigDict(frozen=True)

    height: int
    supply: float
    reward: float
    mu_daily: float = Field(ge=1.0)
    annual_inflation: float = Field(ge=0.0)


@dataclass(frozen=True)
class SupplyEra:
    """一个减半周期"""
    era: int
    start_height: int
    reward: float
    supply_at_end: float


def _check_height(height: int) -> None:
    if height < 0:
        raise DomainError(f"区块高度必须 ≥ 0，收到 {height}")


def _scheduled_reward_sats(schedule: SupplySchedule, era: int) -> int:
    # 右移即向下取整到 1 聪，足够多次减半后自然归零
    if era >= schedule.initial_reward_sats.bit_length():
        return 0
    return schedule.initial_reward_sats >> era


def _uncapped_supply_sats(schedule: SupplySchedule, height: int) -> int:
    interval = schedule.halving_interval
    full_eras, partial = divmod(height, interval)
    total = 0
    era = 0
    while era < full_eras:
        reward = _scheduled_reward_sats(schedule, era)
        if reward == 0:
            return total
        total += reward * interval
        era += 1
    return total + partial * _scheduled_reward_sats(schedule, full_eras)


def cumulative_supply_sats(schedule: SupplySchedule, height: int) -> int:
    """高度 height 之前（区块 0..height−1）累计发行量，单位聪，不超过上限"""
    _check_height(height)
    return min(_uncapped_supply_sats(schedule, height), schedule.max_supply_sats)


def block_reward_sats(schedule: SupplySchedule, height: int) -> int:
    """区块 height 的奖励，单位聪；上限耗尽后为 0"""
    _check_height(height)
    scheduled = _scheduled_reward_sats(schedule, height // schedule.halving_interval)
    room = schedule.max_supply_sats - cumulative_supply_sats(schedule, height)
    return max(0, min(scheduled, room))


def block_reward(schedule: SupplySchedule, height: int) -> float:
    """
    区块奖励

    Args:
        schedule: 发行计划
        height: 区块高度

    Returns:
        initial_reward / 2^{floor(height / halving_interval)}（BTC），不足 1 聪时为 0
    """
    return to_btc(block_reward_sats(schedule, height))


def cumulative_supply(schedule: SupplySchedule, height: int) -> float:
    """
    累计发行量：区块 0..height−1 的奖励之和，按减半周期分段求和

    Args:
        schedule: 发行计划
        height: 区块高度

    Returns:
        BTC
    """
    return to_btc(cumulative_supply_sats(schedule, height))


def money_growth_rate(reward: float, supply: float, blocks_per_day: int) -> float:
    """
    日货币增长因子 μ = (1 + reward/supply)^{blocks_per_day}

    Args:
        reward: 区块奖励（BTC）
        supply: 流通量（BTC）
        blocks_per_day: 每天出块数

    Returns:
        μ（≥ 1）
    """
    if not supply > 0:
        raise DomainError(f"流通量必须 > 0，收到 {supply}")
    if reward < 0:
        raise DomainError(f"区块奖励必须 ≥ 0，收到 {reward}")
    if blocks_per_day <= 0:
        raise DomainError(f"每天出块数必须 > 0，收到 {blocks_per_day}")
    return math.exp(blocks_per_day * math.log1p(reward / supply))


def annualized_inflation(mu_daily: float) -> float:
    """
    年化通胀率 μ^{365} − 1

    Args:
        mu_daily: 日增长因子

    Returns:
        年化通胀率
    """
    if not mu_daily > 0:
        raise DomainError(f"日增长因子必须 > 0，收到 {mu_daily}")
    return math.expm1(DAYS_PER_YEAR * math.log(mu_daily))


def monetary_snapshot(schedule: SupplySchedule, height: int) -> MonetarySnapshot:
    """
    计算某一高度的流通量、区块奖励、日增长因子与年化通胀率

    Args:
        schedule: 发行计划
        height: 区块高度（需 > 0，流通量为 0 时增长率无定义）

    Returns:
        MonetarySnapshot
    """
    supply = cumulative_supply(schedule, height)
    reward = block_reward(schedule, height)
    mu = money_growth_rate(reward, supply, schedule.blocks_per_day)
    return MonetarySnapshot(
        height=height,
        supply=supply,
        reward=reward,
        mu_daily=mu,
        annual_inflation=annualized_inflation(mu),
    )


def final_issuance_height(schedule: SupplySchedule) -> int:
    """第一个奖励为 0 的区块高度"""
    era = 0
    while _scheduled_reward_sats(schedule, era) > 0:
        if cumulative_supply_sats(schedule, (era + 1) * schedule.halving_interval) >= schedule.max_supply_sats:
            # 上限先于奖励归零耗尽，二分查找耗尽点
            lo, hi = era * schedule.halving_interval, (era + 1) * schedule.halving_interval
            while lo < hi:
                mid = (lo + hi) // 2
                if block_reward_sats(schedule, mid) == 0:
                    hi = mid
                else:
                    lo = mid + 1
            return lo
        era += 1
    return era * schedule.halving_interval


def halving_eras(schedule: SupplySchedule) -> List[SupplyEra]:
    """
    列出所有奖励非零的减半周期

    Args:
        schedule: 发行计划

    Returns:
        SupplyEra 列表
    """
    end = final_issuance_height(schedule)
    eras = []
    era = 0
    while era * schedule.halving_interval < end:
        start = era * schedule.halving_interval
        stop = min(end, start + schedule.halving_interval)
        eras.append(SupplyEra(
            era=era,
            start_height=start,
            reward=block_reward(schedule, start),
            supply_at_end=cumulative_supply(schedule, stop),
        ))
        era += 1
    logger.debug(f"共 {len(eras)} 个减半周期，最后发行高度 {end}")
    return eras
