"""Attack Model - 双花攻击的闭式概率"""
import logging
import math
from dataclasses import dataclass
from typing import Iterable, List, Tuple

import numpy as np
from pydantic import BaseModel, ConfigDict, Field, ValidationError
from scipy.stats import poisson

from ..errors import DomainError, NoFiniteDepthError

logger = logging.getLogger(__name__)

# 超过该深度或 λ 时改用对数空间累加，避免 e^{-λ} 下溢
ITERATIVE_MAX_DEPTH = 10_000
ITERATIVE_MAX_LAMBDA = 700.0
# 1 − total 低于该值时改用正项求和，避免相消误差
CANCELLATION_THRESHOLD = 1e-8
# 最小可分辨的 epsilon（最小正规格化浮点数）
MIN_EPSILON = float(np.finfo(float).tiny)
MAX_CONFIRMATION_SCAN = 1_000_000


class AttackScenario(BaseModel):
    """
    攻击场景

    Attributes:
        q: 攻击者找到下一个区块的概率（算力占比）
        z: 确认深度（区块数）

    p 始终由 1 - q 推导，不单独存储。
    """
    model_config = ConfigDict(frozen=True)

    q: float = Field(ge=0.0, le=1.0, allow_inf_nan=False)
    z: int = Field(default=0, ge=0)

    @property
    def p(self) -> float:
        """诚实节点找到下一个区块的概率"""
        return 1.0 - self.q

    @property
    def attacker_has_majority(self) -> bool:
        """p ≤ q 时攻击者终将追上"""
        return self.p <= self.q

    @classmethod
    def create(cls, q: float, z: int = 0) -> "AttackScenario":
        """构造场景，校验失败时抛出 DomainError"""
        try:
            return cls(q=q, z=z)
        except ValidationError as e:
            raise DomainError(f"无效的攻击场景 (q={q}, z={z}): {e.errors()[0]['msg']}") from e


class RiskResult(BaseModel):
    """
    双花风险结果

    Attributes:
        probability: 攻击成功概率
        lam: 攻击者期望进度 λ = z·q/p
    """
    model_config = ConfigDict(frozen=True)

    probability: float = Field(ge=0.0, le=1.0)
    lam: float = Field(ge=0.0)


@dataclass(frozen=True)
class RiskPoint:
    """风险曲线上的一个点"""
    z: int
    catch_up: float
    double_spend: float
    lam: float


def _clamp_probability(value: float) -> float:
    return min(1.0, max(0.0, value))


def catch_up_probability(scenario: AttackScenario) -> float:
    """
    攻击者从落后 z 个区块最终追上的概率（赌徒破产问题）

    Args:
        scenario: 攻击场景

    Returns:
        p ≤ q 时为 1，否则为 (q/p)^z
    """
    if scenario.attacker_has_majority:
        return 1.0
    return _clamp_probability((scenario.q / scenario.p) ** scenario.z)


def _poisson_weighted_sum_iterative(z: int, lam: float, ratio: float) -> float:
    # term_{k+1} = term_k · λ/(k+1)
    term = math.exp(-lam)
    total = 0.0
    for k in range(z + 1):
        total += term * (1.0 - ratio ** (z - k))
        term *= lam / (k + 1)
    return total


def _poisson_weighted_sum_log(z: int, lam: float, ratio: float) -> float:
    ks = np.arange(z + 1)
    weights = np.exp(poisson.logpmf(ks, lam))
    deficits = (z - ks).astype(float)
    # q = 0 已提前返回，ratio > 0
    catch_up = np.exp(deficits * math.log(ratio))
    return math.fsum(weights * (1.0 - catch_up))


def _positive_terms(z: int, lam: float, ratio: float) -> float:
    # Σ_{k≤z} Poisson(k; λ)·(q/p)^{z−k} + Poisson(k>z; λ)，各项为正，无相消
    ks = np.arange(z + 1)
    log_terms = poisson.logpmf(ks, lam) + (z - ks) * math.log(ratio)
    return math.fsum(np.exp(log_terms)) + float(poisson.sf(z, lam))


def double_spend_probability(scenario: AttackScenario) -> RiskResult:
    """
    收款方等待 z 个确认后，攻击者仍能追上的概率

    将攻击者进度视为期望为 λ = z·q/p 的 Poisson 分布，按有限重排计算：
    1 − Σ_{k=0}^{z} Poisson(k; λ)·(1 − (q/p)^{z−k})
    结果很小时改用等价的正项形式 Σ_{k≤z} Poisson(k; λ)·(q/p)^{z−k} + Poisson(k>z; λ)。

    Args:
        scenario: 攻击场景（要求 q < 1）

    Returns:
        RiskResult
    """
    q, p, z = scenario.q, scenario.p, scenario.z
    if q >= 1.0:
        raise DomainError("q = 1 时诚实算力为 0，λ 无定义")

    lam = z * q / p
    if scenario.attacker_has_majority or z == 0:
        return RiskResult(probability=1.0, lam=lam)

    if q == 0.0:
        return RiskResult(probability=0.0, lam=0.0)

    ratio = q / p
    if z <= ITERATIVE_MAX_DEPTH and lam < ITERATIVE_MAX_LAMBDA:
        total = _poisson_weighted_sum_iterative(z, lam, ratio)
    else:
        logger.debug(f"使用对数空间累加: z={z}, λ={lam:.3f}")
        total = _poisson_weighted_sum_log(z, lam, ratio)

    probability = 1.0 - total
    if probability < CANCELLATION_THRESHOLD:
        probability = _positive_terms(z, lam, ratio)
    return RiskResult(probability=_clamp_probability(probability), lam=lam)


def min_confirmations(q: float, epsilon: float) -> int:
    """
    使双花概率低于 epsilon 的最小确认深度

    Args:
        q: 攻击者算力占比
        epsilon: 可接受的风险阈值，0 < epsilon < 1

    Returns:
        最小的 z，满足 double_spend_probability(q, z) < epsilon
    """
    if not (0.0 < epsilon < 1.0):
        raise DomainError(f"epsilon 必须位于 (0, 1)，收到 {epsilon}")
    if epsilon < MIN_EPSILON:
        raise NoFiniteDepthError(f"epsilon={epsilon} 低于浮点可分辨的最小概率 {MIN_EPSILON:.3e}")
    AttackScenario.create(q)
    if q >= 0.5:
        raise NoFiniteDepthError(f"q={q} ≥ 0.5 时任意深度的双花概率都为 1，不存在有限确认深度")

    for z in range(MAX_CONFIRMATION_SCAN + 1):
        risk = double_spend_probability(AttackScenario(q=q, z=z))
        if risk.probability < epsilon:
            logger.debug(f"q={q}, epsilon={epsilon} → z={z} (P={risk.probability:.3e})")
            return z

    raise NoFiniteDepthError(
        f"扫描至 z={MAX_CONFIRMATION_SCAN} 仍未低于 epsilon={epsilon}，该阈值在浮点精度下不可达"
    )


def risk_series(q: float, max_z: int) -> List[RiskPoint]:
    """
    计算 z = 0..max_z 的风险曲线

    Args:
        q: 攻击者算力占比（< 1）
        max_z: 最大确认深度

    Returns:
        RiskPoint 列表
    """
    if max_z < 0:
        raise DomainError(f"max_z 必须 ≥ 0，收到 {max_z}")
    points = []
    for z in range(max_z + 1):
        scenario = AttackScenario.create(q, z)
        risk = double_spend_probability(scenario)
        points.append(RiskPoint(z, catch_up_probability(scenario), risk.probability, risk.lam))
    return points


def confirmation_table(qs: Iterable[float], epsilon: float) -> List[Tuple[float, int]]:
    """
    对一组攻击者算力占比，求使风险低于 epsilon 的确认深度

    Args:
        qs: 攻击者算力占比序列（每个都需 < 0.5）
        epsilon: 风险阈值

    Returns:
        [(q, z), ...]
    """
    return [(q, min_confirmations(q, epsilon)) for q in qs]


def attacker_lead_tail(scenario: AttackScenario) -> float:
    """攻击者在 z 个确认期间已经领先（k > z）的 Poisson 尾部质量"""
    lam = scenario.z * scenario.q / scenario.p if scenario.p > 0 else math.inf
    return float(poisson.sf(scenario.z, lam))

