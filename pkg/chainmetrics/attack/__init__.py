"""Attack - 双花攻击模型与链竞赛模拟"""
from .model import (
    AttackScenario,
    RiskResult,
    RiskPoint,
    catch_up_probability,
    double_spend_probability,
    min_confirmations,
    risk_series,
    confirmation_table,
    attacker_lead_tail,
)
from .race import SimMode, RaceStrategy, RaceRegistry
from .simulator import (
    SimConfig,
    SimResult,
    default_deficit_cutoff,
    simulate_catch_up,
    simulate_double_spend,
)

__all__ = [
    "AttackScenario",
    "RiskResult",
    "RiskPoint",
    "catch_up_probability",
    "double_spend_probability",
    "min_confirmations",
    "risk_series",
    "confirmation_table",
    "attacker_lead_tail",
    "SimMode",
    "RaceStrategy",
    "RaceRegistry",
    "SimConfig",
    "SimResult",
    "default_deficit_cutoff",
    "simulate_catch_up",
    "simulate_double_spend",
]
