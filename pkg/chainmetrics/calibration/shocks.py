"""Shock Distribution - 交易规模的经验分布"""
import math
from typing import Iterable, List

import numpy as np
from pydantic import BaseModel, ConfigDict, model_validator

from ..errors import DomainError


class ShockDistribution(BaseModel):
    """
    经验累积分布（阶梯函数）

    Attributes:
        sizes: 严格递增的交易规模（BTC）
        cumulative: 各规模处的累积概率，单调不减，末项为 1
        count: 样本数
    """
    model_config = ConfigDict(frozen=True)

    sizes: List[float]
    cumulative: List[float]
    count: int

    @model_validator(mode="after")
    def _check_shape(self) -> "ShockDistribution":
        if not self.sizes or len(self.sizes) != len(self.cumulative):
            raise ValueError("sizes 与 cumulative 必须非空且等长")
        if self.sizes[0] <= 0 or any(b <= a for a, b in zip(self.sizes, self.sizes[1:])):
            raise ValueError("sizes 必须为正且严格递增")
        if any(b < a for a, b in zip(self.cumulative, self.cumulative[1:])):
            raise ValueError("cumulative 必须单调不减")
        if self.cumulative[0] < 0 or self.cumulative[-1] != 1.0:
            raise ValueError("cumulative 必须位于 [0, 1] 且末项为 1")
        return self

    def cdf(self, x: float) -> float:
        """F(x)：规模 ≤ x 的样本比例"""
        idx = int(np.searchsorted(self.sizes, x, side="right"))
        return 0.0 if idx == 0 else self.cumulative[idx - 1]

    def quantile(self, prob: float) -> float:
        """满足 F(x) ≥ prob 的最小规模"""
        if not (0.0 <= prob <= 1.0):
            raise DomainError(f"概率必须位于 [0, 1]，收到 {prob}")
        idx = int(np.searchsorted(self.cumulative, prob, side="left"))
        return self.sizes[min(idx, len(self.sizes) - 1)]


def empirical_cdf(samples: Iterable[float]) -> ShockDistribution:
    """
    由交易规模样本构造经验分布

    Args:
        samples: 交易规模样本（均需 > 0）

    Returns:
        ShockDistribution
    """
    values = np.asarray(list(samples), dtype=float)
    if values.size == 0:
        raise DomainError("样本为空")
    if not np.all(np.isfinite(values)) or np.any(values <= 0):
        bad = next(v for v in values if not (math.isfinite(v) and v > 0))
        raise DomainError(f"交易规模必须为正的有限数，收到 {bad}")

    sizes, counts = np.unique(values, return_counts=True)
    cumulative = np.cumsum(counts) / values.size
    cumulative[-1] = 1.0
    return ShockDistribution(
        sizes=sizes.tolist(),
        cumulative=cumulative.tolist(),
        count=int(values.size),
    )
