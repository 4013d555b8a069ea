"""
Distribution - 持币快照的 Lorenz 曲线与 Gini 系数

注意：比特币地址是假名的。一个人可以控制许多地址，交易所等托管方的一个地址
也可能代表许多人，所以按地址计算的 Lorenz 曲线和 Gini 系数并不直接度量个人
之间的财富不平等。这里的指标只描述输入快照本身，结论取决于快照如何把地址
归并为持有者。
"""
import math
from typing import List, Sequence, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, model_validator

from ..errors import DomainError

LORENZ_TOLERANCE = 1e-9


class BalanceEntry(BaseModel):
    """单个持有者"""
    model_config = ConfigDict(frozen=True)

    holder: str
    balance: float = Field(ge=0.0, allow_inf_nan=False)


class BalanceSnapshot(BaseModel):
    """
    持币快照

    Attributes:
        entries: 持有者与余额（余额 ≥ 0，允许空地址）
        label: 说明（如快照日期）
    """
    model_config = ConfigDict(frozen=True)

    entries: List[BalanceEntry]
    label: str = ""

    @classmethod
    def from_balances(cls, balances: Sequence[float], label: str = "") -> "BalanceSnapshot":
        """由余额序列构造快照，持有者以序号命名"""
        return cls(
            entries=[BalanceEntry(holder=str(i), balance=b) for i, b in enumerate(balances)],
            label=label,
        )

    def balances(self) -> np.ndarray:
        return np.array([e.balance for e in self.entries], dtype=float)

    def total(self) -> float:
        return math.fsum(e.balance for e in self.entries)


class LorenzCurve(BaseModel):
    """
    Lorenz 曲线

    Attributes:
        points: (人口份额, 财富份额)，首点 (0,0)，末点 (1,1)
    """
    model_config = ConfigDict(frozen=True)

    points: List[Tuple[float, float]]

    @model_validator(mode="after")
    def _check_shape(self) -> "LorenzCurve":
        if len(self.points) < 2 or self.points[0] != (0.0, 0.0) or self.points[-1] != (1.0, 1.0):
            raise ValueError("Lorenz 曲线必须从 (0,0) 开始并在 (1,1) 结束")
        xs, ys = (np.array(v, dtype=float) for v in zip(*self.points))
        dx, dy = np.diff(xs), np.diff(ys)
        if np.any(dx < -LORENZ_TOLERANCE) or np.any(dy < -LORENZ_TOLERANCE):
            raise ValueError("Lorenz 曲线的坐标必须单调不减")
        if np.any(ys > xs + LORENZ_TOLERANCE):
            raise ValueError("Lorenz 曲线的财富份额不能超过人口份额")
        # 相邻线段斜率不减，用叉积避免除以 0
        if np.any(dy[1:] * dx[:-1] - dy[:-1] * dx[1:] < -LORENZ_TOLERANCE):
            raise ValueError("Lorenz 曲线必须是凸的")
        return self

    def share_at(self, population_share: float) -> float:
        """最贫穷 population_share 比例人口持有的财富份额（线性插值）"""
        if not (0.0 <= population_share <= 1.0):
            raise DomainError(f"人口份额必须位于 [0, 1]，收到 {population_share}")
        xs, ys = zip(*self.points)
        return float(np.interp(population_share, xs, ys))

    def area(self) -> float:
        """曲线下面积（梯形法）"""
        xs, ys = (np.array(v) for v in zip(*self.points))
        return float(np.sum(np.diff(xs) * (ys[1:] + ys[:-1]) / 2.0))


def _sorted_positive_total(snapshot: BalanceSnapshot) -> np.ndarray:
    values = np.sort(snapshot.balances(), kind="stable")
    if values.size == 0 or not values.sum() > 0:
        raise DomainError("快照总余额为 0，无法计算不平等指标")
    return values


def lorenz_curve(snapshot: BalanceSnapshot) -> LorenzCurve:
    """
    Lorenz 曲线：余额升序排列，第 i 点为 (i/n, 前 i 个余额之和 / 总额)

    Args:
        snapshot: 持币快照（总余额 > 0）

    Returns:
        LorenzCurve
    """
    values = _sorted_positive_total(snapshot)
    n = values.size
    shares = np.cumsum(values) / values.sum()
    shares[-1] = 1.0
    # 累加误差可能使份额略高于人口份额
    population = np.arange(1, n + 1) / n
    shares = np.minimum(shares, population)
    points = [(0.0, 0.0)] + [(float(x), float(y)) for x, y in zip(population, shares)]
    return LorenzCurve(points=points)


def gini(snapshot: BalanceSnapshot) -> float:
    """
    Gini 系数（排序秩公式）G = Σ_i (2i − n − 1)·x_(i) / (n²·mean)

    Args:
        snapshot: 持币快照（总余额 > 0）

    Returns:
        [0, (n−1)/n] 内的值
    """
    values = _sorted_positive_total(snapshot)
    n = values.size
    ranks = np.arange(1, n + 1)
    value = float(np.sum((2 * ranks - n - 1) * values) / (n * values.sum()))
    return max(0.0, value)


def gini_mean_difference(snapshot: BalanceSnapshot) -> float:
    """Gini 系数的成对平均绝对差定义 Σ_i Σ_j |x_i − x_j| / (2n²·mean)"""
    values = _sorted_positive_total(snapshot)
    n = values.size
    diffs = np.abs(values[:, None] - values[None, :]).sum()
    return float(diffs / (2.0 * n * values.sum()))


def gini_from_lorenz(curve: LorenzCurve) -> float:
    """由 Lorenz 曲线计算 Gini = 1 − 2·曲线下面积"""
    return 1.0 - 2.0 * curve.area()


def top_share(curve: LorenzCurve, population_share: float) -> float:
    """最富有 population_share 比例人口持有的财富份额"""
    return 1.0 - curve.share_at(1.0 - population_share)


def summarize(snapshot: BalanceSnapshot) -> List[Tuple[str, float]]:
    """快照的汇总指标，供 CLI 输出"""
    curve = lorenz_curve(snapshot)
    return [
        ("holders", float(len(snapshot.entries))),
        ("total_balance", snapshot.total()),
        ("gini", gini(snapshot)),
        ("max_gini", (len(snapshot.entries) - 1) / len(snapshot.entries)),
        ("bottom_50_share", curve.share_at(0.5)),
        ("top_10_share", top_share(curve, 0.10)),
        ("top_1_share", top_share(curve, 0.01)),
    ]
