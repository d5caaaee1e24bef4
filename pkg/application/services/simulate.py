"""
可达性仿真（单次信道实现）：信道采样、log-det 速率、DoF 斜率估计与迫零可行性。

速率单位为 bit/channel use，按 N1 个时隙平均；总功率在各数据流间均分。
"""

from __future__ import annotations

import logging

import numpy as np

from core.utils.matkernel import complex_normal, kron, numerical_rank, shannon_logdet
from domain.antenna import AntennaConfig, DofRegion
from domain.errors import DomainError, require
from domain.scheme import BiaScheme, ChannelDraw
from models.schemas import DofEstimate, RatePoint

from .biascheme import random_realizations, time_expand

logger = logging.getLogger(__name__)


def _simulation_config():
    from core.config import inject, SimulationConfig
    return inject(SimulationConfig)


def trial_rng(seed: int, trial: int) -> np.random.Generator:
    """每个试验独立的随机流，只由 (seed, trial) 决定，与调度顺序无关。"""
    return np.random.default_rng([seed, trial])


def sample_channels(cfg: AntennaConfig, seed: int, trial: int) -> ChannelDraw:
    """
    一次信道实现：N1 个独立的 H11(t)（N1xM1），在 N1 个时隙内不变的 H12（N1xM2'）与 H22（N2xM2'）。

    相同 (seed, trial) 得到逐位相同的结果。
    """
    rng = trial_rng(seed, trial)
    h11_slots = random_realizations(cfg, rng)
    h12 = complex_normal(rng, cfg.n1, cfg.m2_active)
    h22 = complex_normal(rng, cfg.n2, cfg.m2_active)
    return ChannelDraw(h11_slots=h11_slots, h12=h12, h22=h22, seed=seed, trial=trial)


def rate_user1(scheme: BiaScheme, draw: ChannelDraw, power: float) -> float:
    """
    用户 1 每时隙速率：(1/N1)·log₂det(I + P/(M1·N1)·K⁻¹ŨŨᴴ)，K = Q̃Q̃ᴴ 为置零后的有色噪声协方差。

    调用方应保证该信道实现已通过 verify()。
    """
    cfg = scheme.cfg
    expanded = time_expand(cfg, draw.h11_slots, draw.h12, draw.h22)
    u = scheme.q_tilde @ expanded.h11_tilde
    noise_cov = scheme.q_tilde @ scheme.q_tilde.conj().T
    streams = cfg.m1 * cfg.n1
    return shannon_logdet(u, noise_cov, power / streams) / scheme.expansion


def rate_user2(scheme: BiaScheme, draw: ChannelDraw, power: float) -> float:
    """
    用户 2 每时隙速率：(1/N1)·log₂det(I + P/(M2'(N1-M1))·GGᴴ)，G = P ⊗ H22。

    Z 信道中接收机 2 无干扰，噪声为白噪声。
    """
    cfg = scheme.cfg
    streams = cfg.m2_active * (cfg.n1 - cfg.m1)
    if streams == 0:
        return 0.0
    h22 = time_expand(cfg, draw.h11_slots, draw.h12, draw.h22).h22
    g = kron(scheme.p, h22)
    noise_cov = np.eye(g.shape[0], dtype=np.complex128)
    return shannon_logdet(g, noise_cov, power / streams) / scheme.expansion


def rate_point(scheme: BiaScheme, draw: ChannelDraw, power: float) -> RatePoint:
    return RatePoint(
        power=power,
        r1=rate_user1(scheme, draw, power),
        r2=rate_user2(scheme, draw, power),
        trial=draw.trial or 0,
    )


def estimate_dof(
    points: list[RatePoint],
    *,
    min_power: float | None = None,
    seed: int | None = None,
) -> DofEstimate:
    """
    对 r_i 关于 log₂(P) 做最小二乘直线拟合，斜率即 d_i 估计。

    每个功率点的试验数相同时，与先按功率取平均再拟合结果一致。

    Raises:
        DomainError: 少于 2 个点、功率全相同，或存在低于 min_power（默认 simulation.min_power）的功率。
    """
    floor = min_power if min_power is not None else _simulation_config().min_power
    if len(points) < 2:
        raise DomainError(f"不满足 len(points) >= 2 (len(points)={len(points)})")
    if len({p.power for p in points}) < 2:
        raise DomainError("不满足 至少 2 个不同功率")
    low = [p.power for p in points if p.power < floor]
    if low:
        raise DomainError(f"不满足 power >= {floor:g} (power={min(low):g})")
    x = np.log2([p.power for p in points])
    d1_hat = float(np.polyfit(x, [p.r1 for p in points], 1)[0])
    d2_hat = float(np.polyfit(x, [p.r2 for p in points], 1)[0])
    return DofEstimate(d1_hat=d1_hat, d2_hat=d2_hat, points=points, seed=seed)


def check_estimate_within_region(estimate: DofEstimate, region: DofRegion, tol: float = 0.1) -> bool:
    """估计点落在区域按每个坐标放宽 tol 后的范围内：a1·d1 + a2·d2 <= b + tol·(|a1| + |a2|)。"""
    for hp in region.halfplanes:
        a1, a2, b = float(hp.a1), float(hp.a2), float(hp.b)
        if a1 * estimate.d1_hat + a2 * estimate.d2_hat > b + tol * (abs(a1) + abs(a2)):
            return False
    return True


def zf_feasibility(
    cfg: AntennaConfig,
    d1: int,
    d2: int,
    seed: int,
    rel_tol: float | None = None,
) -> bool:
    """
    迫零可行性：随机预编码 W1（M1xd1）、W2（M2xd2）与一次信道实现下，
    [H11·W1 | H12·W2] 的数值秩是否为 d1+d2（接收机 1 可分离全部数据流）。

    Raises:
        DomainError: 不满足 N1 >= N2，或 d1、d2 超出 [0, min(Mi, Ni)]。
    """
    require(cfg.n1 >= cfg.n2, "N1 >= N2", N1=cfg.n1, N2=cfg.n2)
    require(0 <= d1 <= min(cfg.m1, cfg.n1), "0 <= d1 <= min(M1, N1)", d1=d1, M1=cfg.m1, N1=cfg.n1)
    require(0 <= d2 <= min(cfg.m2, cfg.n2), "0 <= d2 <= min(M2, N2)", d2=d2, M2=cfg.m2, N2=cfg.n2)
    if d1 + d2 == 0:
        return True
    rng = np.random.default_rng(seed)
    h11 = complex_normal(rng, cfg.n1, cfg.m1)
    h12 = complex_normal(rng, cfg.n1, cfg.m2)
    w1 = complex_normal(rng, cfg.m1, d1)
    w2 = complex_normal(rng, cfg.m2, d2)
    stacked = np.hstack([h11 @ w1, h12 @ w2])
    rank = numerical_rank(stacked, rel_tol)
    if rank != d1 + d2:
        logger.debug("迫零不可行: cfg=%s, d=(%d,%d), rank=%d", cfg, d1, d2, rank)
    return rank == d1 + d2

