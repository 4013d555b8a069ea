"""Race Strategies - 攻击者领先量的抽样策略"""
from abc import ABC, abstractmethod
from enum import Enum
from typing import Dict, Type

import numpy as np

from .sampling import sample_poisson


class SimMode(str, Enum):
    """模拟模式"""
    CATCH_UP = "catch-up"
    POISSON_PROGRESS = "poisson"
    BERNOULLI_RACE = "bernoulli"


class RaceStrategy(ABC):
    """
    抽样策略抽象基类

    每个策略负责给出诚实链完成 z 个确认时攻击者已挖出的区块数 k，
    之后统一从差距 z − k 开始追赶随机游走。
    """

    @abstractmethod
    def head_start(self, rng: np.random.Generator, q: float, z: int, size: int) -> np.ndarray:
        """
        抽样攻击者的领先区块数

        Args:
            rng: numpy 随机数生成器
            q: 攻击者出块概率
            z: 确认深度
            size: 试验次数

        Returns:
            int64 数组
        """
        pass


class FixedDeficit(RaceStrategy):
    """攻击者没有任何进度，直接从落后 z 个区块开始"""

    def head_start(self, rng: np.random.Generator, q: float, z: int, size: int) -> np.ndarray:
        return np.zeros(size, dtype=np.int64)


class PoissonProgress(RaceStrategy):
    """攻击者进度 k ~ Poisson(λ)，λ = z·q/p"""

    def head_start(self, rng: np.random.Generator, q: float, z: int, size: int) -> np.ndarray:
        lam = z * q / (1.0 - q)
        return sample_poisson(rng, lam, size)


class BernoulliRace(RaceStrategy):
    """
    直接模拟出块竞赛

    每个区块以概率 q 属于攻击者，统计诚实链挖出 z 个区块期间攻击者挖出的区块数。
    """

    def head_start(self, rng: np.random.Generator, q: float, z: int, size: int) -> np.ndarray:
        attacker = np.zeros(size, dtype=np.int64)
        honest = np.zeros(size, dtype=np.int64)
        idx = np.flatnonzero(honest < z)
        while idx.size:
            by_attacker = rng.random(idx.size) < q
            attacker[idx[by_attacker]] += 1
            honest[idx[~by_attacker]] += 1
            idx = idx[honest[idx] < z]
        return attacker


class RaceRegistry:
    """策略注册表，按模式查找抽样策略"""

    _strategies: Dict[SimMode, Type[RaceStrategy]] = {}

    @classmethod
    def register(cls, mode: SimMode, strategy_class: Type[RaceStrategy]) -> None:
        """注册策略"""
        cls._strategies[mode] = strategy_class

    @classmethod
    def get(cls, mode: SimMode) -> RaceStrategy:
        """获取策略实例"""
        if mode not in cls._strategies:
            raise ValueError(f"模式 '{mode}' 未注册，可用的有: {[m.value for m in cls._strategies]}")
        return cls._strategies[mode]()


RaceRegistry.register(SimMode.CATCH_UP, FixedDeficit)
RaceRegistry.register(SimMode.POISSON_PROGRESS, PoissonProgress)
RaceRegistry.register(SimMode.BERNOULLI_RACE, BernoulliRace)
