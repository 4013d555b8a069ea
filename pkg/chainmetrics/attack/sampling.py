"""Sampling - 向量化随机抽样：Poisson 逆变换与追赶随机游走"""
import math

import numpy as np

# λ 低于该值时用逆变换（顺序查表），否则用指数间隔计数
INVERSION_MAX_LAMBDA = 30.0


def _poisson_cdf_table(lam: float) -> np.ndarray:
    kmax = int(lam + 12.0 * math.sqrt(lam) + 30)
    terms = np.empty(kmax + 1)
    term = math.exp(-lam)
    for k in range(kmax + 1):
        terms[k] = term
        term *= lam / (k + 1)
    return np.cumsum(terms)


def poisson_by_inversion(rng: np.random.Generator, lam: float, size: int) -> np.ndarray:
    """
    逆变换法抽样 Poisson(λ)

    对每个均匀随机数 u，返回满足 u < F(k) 的最小 k。

    Args:
        rng: numpy 随机数生成器
        lam: 期望值 λ（< 30）
        size: 样本数

    Returns:
        int64 数组
    """
    if lam == 0.0:
        return np.zeros(size, dtype=np.int64)
    cdf = _poisson_cdf_table(lam)
    u = rng.random(size)
    k = np.searchsorted(cdf, u, side="right")
    return np.minimum(k, len(cdf) - 1).astype(np.int64)


def poisson_by_exponential_gaps(rng: np.random.Generator, lam: float, size: int) -> np.ndarray:
    """
    指数间隔法抽样 Poisson(λ)：累计 Exp(1) 间隔，统计落在 [0, λ] 内的到达次数

    Args:
        rng: numpy 随机数生成器
        lam: 期望值 λ
        size: 样本数

    Returns:
        int64 数组
    """
    counts = np.zeros(size, dtype=np.int64)
    elapsed = np.zeros(size)
    idx = np.arange(size)
    while idx.size:
        elapsed[idx] += rng.exponential(1.0, idx.size)
        arrived = elapsed[idx] <= lam
        counts[idx[arrived]] += 1
        idx = idx[arrived]
    return counts


def sample_poisson(rng: np.random.Generator, lam: float, size: int) -> np.ndarray:
    """按 λ 选择抽样方法"""
    if lam < INVERSION_MAX_LAMBDA:
        return poisson_by_inversion(rng, lam, size)
    return poisson_by_exponential_gaps(rng, lam, size)


def catch_up_walk(
    rng: np.random.Generator,
    start_deficit: np.ndarray,
    q: float,
    deficit_cutoff: int,
) -> np.ndarray:
    """
    追赶随机游走

    每一步攻击者以概率 q 出块（差距 −1），否则诚实链出块（差距 +1）。
    差距到达 0 记为成功，到达 deficit_cutoff 记为失败。

    Args:
        rng: numpy 随机数生成器
        start_deficit: 每次试验的初始差距（≤ 0 视为立即成功）
        q: 攻击者出块概率
        deficit_cutoff: 吸收失败的差距 D

    Returns:
        bool 数组，True 表示攻击者追上
    """
    deficit = np.asarray(start_deficit, dtype=np.int64)
    success = deficit <= 0
    idx = np.flatnonzero(~success)
    current = deficit[idx].copy()

    while idx.size:
        current += np.where(rng.random(idx.size) < q, -1, 1)
        won = current <= 0
        success[idx[won]] = True
        keep = ~won & (current < deficit_cutoff)
        idx = idx[keep]
        current = current[keep]

    return success
