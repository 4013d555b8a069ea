"""Calibration - 参数校准、买方效用与偏好冲击分布"""
from .params import CalibrationInputs, CalibratedParams, PUBLISHED_2015, TARGETS
from .derivations import (
    per_block,
    fee_rate,
    avg_transaction_size,
    velocity,
    capacity,
    daily_discount,
    per_block_discount,
    implied_confirmation_lag,
    buyer_utility,
)
from .shocks import ShockDistribution, empirical_cdf
from .calibrate import calibrate, reference_deviations, build_pipeline
from .pipeline import CalibrationContext, Step, DerivationStep, Pipeline

__all__ = [
    "CalibrationInputs",
    "CalibratedParams",
    "PUBLISHED_2015",
    "TARGETS",
    "per_block",
    "fee_rate",
    "avg_transaction_size",
    "velocity",
    "capacity",
    "daily_discount",
    "per_block_discount",
    "implied_confirmation_lag",
    "buyer_utility",
    "ShockDistribution",
    "empirical_cdf",
    "calibrate",
    "reference_deviations",
    "build_pipeline",
    "CalibrationContext",
    "Step",
    "DerivationStep",
    "Pipeline",
]
