"""Wealth - 持币分布的不平等指标"""
from .distribution import (
    BalanceEntry,
    BalanceSnapshot,
    LorenzCurve,
    lorenz_curve,
    gini,
    gini_mean_difference,
    gini_from_lorenz,
    top_share,
    summarize,
)

__all__ = [
    "BalanceEntry",
    "BalanceSnapshot",
    "LorenzCurve",
    "lorenz_curve",
    "gini",
    "gini_mean_difference",
    "gini_from_lorenz",
    "top_share",
    "summarize",
]
