"""Derivations - 校准推导公式"""
import math

from ..errors import DomainError
from ..supply import DAYS_PER_YEAR


def per_block(daily_value: float, blocks_per_day: int) -> float:
    """日度量 → 每区块量"""
    if blocks_per_day <= 0:
        raise DomainError(f"每天出块数必须 > 0，收到 {blocks_per_day}")
    return daily_value / blocks_per_day


def fee_rate(fees_per_block: float, volume_per_block: float) -> float:
    """手续费率 τ = 手续费 / 交易额"""
    if not volume_per_block > 0:
        raise DomainError(f"交易额必须 > 0，收到 {volume_per_block}")
    return fees_per_block / volume_per_block


def avg_transaction_size(volume_per_block: float, tx_per_block: float) -> float:
    """平均交易规模 = 交易额 / 交易笔数"""
    if not tx_per_block > 0:
        raise DomainError(f"交易笔数必须 > 0，收到 {tx_per_block}")
    return volume_per_block / tx_per_block


def velocity(volume_per_day: float, supply: float) -> float:
    """流通速度 σ：每天花费的比特币占存量的比例"""
    if not supply > 0:
        raise DomainError(f"流通量必须 > 0，收到 {supply}")
    return volume_per_day / supply


def capacity(supply: float, avg_tx_size: float) -> float:
    """B：现有存量最多支持的平均规模交易笔数（不取整）"""
    if not avg_tx_size > 0:
        raise DomainError(f"平均交易规模必须 > 0，收到 {avg_tx_size}")
    return supply / avg_tx_size


def daily_discount(annual_discount: float) -> float:
    """
    年贴现因子 → 日贴现因子 β = annual^{1/365}

    Args:
        annual_discount: 年贴现因子，0 < annual_discount < 1

    Returns:
        β
    """
    if not (0.0 < annual_discount < 1.0):
        raise DomainError(f"年贴现因子必须位于 (0, 1)，收到 {annual_discount}")
    return annual_discount ** (1.0 / DAYS_PER_YEAR)


def per_block_discount(beta: float, confirmation_lag: int) -> float:
    """
    每区块贴现因子 δ = β^{1/(1+N̄)}

    Args:
        beta: 日贴现因子
        confirmation_lag: 确认滞后 N̄（区块数）

    Returns:
        δ
    """
    if not (0.0 < beta < 1.0):
        raise DomainError(f"β 必须位于 (0, 1)，收到 {beta}")
    if confirmation_lag < 0:
        raise DomainError(f"确认滞后必须 ≥ 0，收到 {confirmation_lag}")
    return beta ** (1.0 / (1 + confirmation_lag))


def implied_confirmation_lag(beta: float, delta: float) -> int:
    """
    由 (β, δ) 反推确认滞后 N̄ = round(ln β / ln δ) − 1

    Args:
        beta: 日贴现因子
        delta: 每区块贴现因子，需满足 0 < β < δ < 1

    Returns:
        N̄
    """
    if not (0.0 < delta < 1.0):
        raise DomainError(f"δ 必须位于 (0, 1)，收到 {delta}")
    if not (0.0 < beta < delta):
        raise DomainError(f"需要 0 < β < δ，收到 β={beta}, δ={delta}")
    return int(round(math.log(beta) / math.log(delta))) - 1


def buyer_utility(x: float, b: float) -> float:
    """
    买方效用 U(x) = log(x + b) − log b

    Args:
        x: 消费量（≥ 0）
        b: 平移参数（> 0；b = 0 时 log b 无定义）

    Returns:
        U(x)
    """
    if not b > 0:
        raise DomainError(f"效用参数 b 必须 > 0，收到 {b}")
    if x < 0:
        raise DomainError(f"消费量必须 ≥ 0，收到 {x}")
    return math.log1p(x / b)
