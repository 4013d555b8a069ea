"""Calibrate - 由日度汇总数据推导模型参数"""
import logging
from typing import Dict, Optional

from pydantic import ValidationError

from ..errors import DomainError
from ..supply import annualized_inflation, money_growth_rate
from .derivations import (
    avg_transaction_size,
    capacity,
    daily_discount,
    fee_rate,
    per_block,
    per_block_discount,
    velocity,
)
from .params import PUBLISHED_2015, CalibratedParams, CalibrationInputs
from .pipeline import CalibrationContext, DerivationStep, Pipeline

logger = logging.getLogger(__name__)


def build_pipeline() -> Pipeline:
    """按推导顺序组装校准流程"""
    return Pipeline([
        DerivationStep(daily_discount, ["annual_discount"], "beta"),
        DerivationStep(per_block, ["tx_per_day", "blocks_per_day"], "tx_per_block"),
        DerivationStep(per_block, ["volume_per_day", "blocks_per_day"], "volume_per_block"),
        DerivationStep(per_block, ["fees_per_day", "blocks_per_day"], "fees_per_block"),
        DerivationStep(fee_rate, ["fees_per_block", "volume_per_block"], "tau"),
        DerivationStep(avg_transaction_size, ["volume_per_block", "tx_per_block"], "avg_tx_size"),
        DerivationStep(velocity, ["volume_per_day", "supply"], "sigma"),
        DerivationStep(capacity, ["supply", "avg_tx_size"], "B"),
        DerivationStep(money_growth_rate, ["reward_per_block", "supply", "blocks_per_day"], "mu"),
        DerivationStep(annualized_inflation, ["mu"], "annual_inflation"),
        DerivationStep(per_block_discount, ["beta", "confirmation_lag"], "delta"),
    ], name="calibrate")


def calibrate(inputs: CalibrationInputs, confirmation_lag: Optional[int] = None) -> CalibratedParams:
    """
    校准模型参数

    Args:
        inputs: 日度汇总数据
        confirmation_lag: 确认滞后 N̄（默认 blocks_per_day − 1，即一天）

    Returns:
        CalibratedParams
    """
    lag = inputs.blocks_per_day - 1 if confirmation_lag is None else confirmation_lag
    context = CalibrationContext(inputs.model_dump())
    context.confirmation_lag = lag
    build_pipeline().run(context)

    try:
        return CalibratedParams(
            alpha=1.0,
            **{k: context[k] for k in CalibratedParams.model_fields if k != "alpha"},
        )
    except ValidationError as e:
        raise DomainError(f"校准结果不满足约束: {e.errors()[0]['msg']}") from e


def reference_deviations(params: CalibratedParams) -> Dict[str, float]:
    """
    按公布表格的小数位数取整后，与 2015 年公布值的差

    Args:
        params: 校准结果

    Returns:
        参数名 → (取整后的计算值 − 公布值)
    """
    deviations = {}
    for name, (published, digits) in PUBLISHED_2015.items():
        computed = round(getattr(params, name), digits)
        deviations[name] = computed - published
    return deviations
