"""Calibration Params - 校准输入与输出"""
from typing import Dict, Tuple

from pydantic import BaseModel, ConfigDict, Field, ValidationError, model_validator

from ..errors import DomainError

DELTA_TOLERANCE = 1e-12


class CalibrationInputs(BaseModel):
    """
    日度汇总数据，默认值为 2015 年数据

    Attributes:
        tx_per_day: 每日交易笔数
        volume_per_day: 每日交易额（BTC）
        fees_per_day: 每日手续费（BTC）
        supply: 平均流通量（BTC）
        blocks_per_day: 每日出块数
        annual_discount: 年贴现因子
        reward_per_block: 区块奖励（BTC）
    """
    model_config = ConfigDict(frozen=True)

    tx_per_day: float = Field(default=122129.7534, gt=0, allow_inf_nan=False)
    volume_per_day: float = Field(default=254843.1781, gt=0, allow_inf_nan=False)
    fees_per_day: float = Field(default=22.45900183, gt=0, allow_inf_nan=False)
    supply: float = Field(default=14342502.95, gt=0, allow_inf_nan=False)
    blocks_per_day: int = Field(default=144, gt=0)
    annual_discount: float = Field(default=0.97, gt=0, lt=1, allow_inf_nan=False)
    reward_per_block: float = Field(default=25.0, gt=0, allow_inf_nan=False)

    @classmethod
    def create(cls, **kwargs) -> "CalibrationInputs":
        """构造输入，校验失败时抛出 DomainError"""
        try:
            return cls(**kwargs)
        except ValidationError as e:
            err = e.errors()[0]
            raise DomainError(f"无效的校准输入 {err['loc'][0]}: {err['msg']}") from e


class CalibratedParams(BaseModel):
    """
    校准结果

    Attributes:
        beta: 日贴现因子 β
        delta: 每区块贴现因子 δ = β^{1/(1+N̄)}
        mu: 日货币增长因子 μ
        tau: 手续费率 τ
        B: 现有存量支持的平均规模交易笔数
        sigma: 流通速度 σ
        alpha: 归一化常数
        avg_tx_size: 平均交易规模（BTC）
        confirmation_lag: 确认滞后 N̄（区块数）
        tx_per_block / volume_per_block / fees_per_block: 每区块汇总量
        annual_inflation: 年化通胀率
    """
    model_config = ConfigDict(frozen=True)

    beta: float = Field(gt=0, lt=1)
    delta: float = Field(gt=0, lt=1)
    mu: float = Field(ge=1)
    tau: float = Field(gt=0)
    B: float = Field(gt=0)
    sigma: float = Field(gt=0)
    alpha: float = 1.0
    avg_tx_size: float = Field(gt=0)
    confirmation_lag: int = Field(ge=0)
    tx_per_block: float
    volume_per_block: float
    fees_per_block: float
    annual_inflation: float = Field(ge=0)

    @model_validator(mode="after")
    def _check_discounting(self) -> "CalibratedParams":
        if self.alpha != 1.0:
            raise ValueError("alpha 是归一化常数，必须为 1")
        if self.confirmation_lag > 0 and not self.beta < self.delta:
            raise ValueError("每区块贴现应弱于日贴现 (β < δ)")
        expected = self.beta ** (1.0 / (1 + self.confirmation_lag))
        if abs(self.delta - expected) > DELTA_TOLERANCE:
            raise ValueError(f"δ 与 β^(1/(1+N̄)) 不一致: {self.delta} vs {expected}")
        return self


# 2015 年校准表的公布值及其小数位数
PUBLISHED_2015: Dict[str, Tuple[float, int]] = {
    "beta": (0.999916553598325, 15),
    "delta": (0.999999420487088, 15),
    "mu": (1.0003, 4),
    "tau": (0.000088, 6),
    "B": (6873428.0, 0),
    "sigma": (0.0178, 4),
    "alpha": (1.0, 0),
}

TARGETS: Dict[str, str] = {
    "beta": "period length = 1 day",
    "delta": "delta = beta^(1/(1+N))",
    "mu": "money growth rate",
    "tau": "transaction fee",
    "B": "max. no of average-sized transactions",
    "sigma": "velocity (fraction of supply spent per day)",
    "alpha": "normalization",
}
