"""
ChainMetrics - 比特币经济学定量分析工具

双花攻击概率与蒙特卡洛验证、发行与通胀模型、均衡参数校准，
以及持币分布的 Lorenz/Gini 分析。
"""

__version__ = "0.1.0"
__license__ = "MIT"

from .errors import ChainMetricsError, DomainError, NoFiniteDepthError, ParseError, ConfigError, UsageError
from .config import Settings, load_settings, get_preset, PRESETS
from .attack import (
    AttackScenario, double_spend_probability, catch_up_probability, min_confirmations,
    SimConfig, SimMode, SimResult, simulate_catch_up, simulate_double_spend,
)
from .supply import SupplySchedule, block_reward, cumulative_supply, money_growth_rate, annualized_inflation
from .calibration import CalibrationInputs, CalibratedParams, calibrate, empirical_cdf, buyer_utility
from .wealth import BalanceSnapshot, LorenzCurve, lorenz_curve, gini
from .dataio import ResultDocument, OutputFormat, emit

__all__ = [
    # Version
    "__version__",
    "__license__",
    # Errors
    "ChainMetricsError", "DomainError", "NoFiniteDepthError", "ParseError", "ConfigError", "UsageError",
    # Config
    "Settings", "load_settings", "get_preset", "PRESETS",
    # Attack
    "AttackScenario", "double_spend_probability", "catch_up_probability", "min_confirmations",
    "SimConfig", "SimMode", "SimResult", "simulate_catch_up", "simulate_double_spend",
    # Supply
    "SupplySchedule", "block_reward", "cumulative_supply", "money_growth_rate", "annualized_inflation",
    # Calibration
    "CalibrationInputs", "CalibratedParams", "calibrate", "empirical_cdf", "buyer_utility",
    # Wealth
    "BalanceSnapshot", "LorenzCurve", "lorenz_curve", "gini",
    # Data IO
    "ResultDocument", "OutputFormat", "emit",
]
