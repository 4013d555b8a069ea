"""Supply - 比特币发行计划与货币增长"""
from .schedule import (
    SupplySchedule,
    MonetarySnapshot,
    SupplyEra,
    SATOSHIS_PER_BTC,
    DAYS_PER_YEAR,
    block_reward,
    cumulative_supply,
    money_growth_rate,
    annualized_inflation,
    monetary_snapshot,
    halving_eras,
    final_issuance_height,
)

__all__ = [
    "SupplySchedule",
    "MonetarySnapshot",
    "SupplyEra",
    "SATOSHIS_PER_BTC",
    "DAYS_PER_YEAR",
    "block_reward",
    "cumulative_supply",
    "money_growth_rate",
    "annualized_inflation",
    "monetary_snapshot",
    "halving_eras",
    "final_issuance_height",
]
