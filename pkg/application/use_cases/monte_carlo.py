"""Monte Carlo 试验：随机信道下的方案校验通过率、速率扫描与 DoF 估计（async 并发）。"""

from __future__ import annotations

import asyncio
import logging
import math

from tqdm import tqdm  # type: ignore[import-untyped]

from application.services.biascheme import build_scheme, verify
from application.services.simulate import estimate_dof, rate_point, sample_channels
from domain.antenna import AntennaConfig
from domain.errors import DomainError, NumericalError, require
from domain.scheme import BiaScheme
from models.schemas import DofEstimate, MonteCarloRankResult, RatePoint, VerificationReport

logger = logging.getLogger(__name__)


def _simulation_config():
    """仿真配置（来自 app_config.yaml simulation 节，已应用 DOF_LAB_THREADS 上限）。"""
    from core.config import inject, SimulationConfig
    return inject(SimulationConfig)


def db_to_power(power_db: float) -> float:
    return float(10.0 ** (power_db / 10.0))


# ----- 方案校验通过率 -----


def _verify_trial(
    scheme: BiaScheme,
    seed: int,
    trial: int,
    rel_tol: float | None,
    nulling_tol: float | None,
) -> VerificationReport:
    cfg = scheme.cfg
    draw = sample_channels(cfg, seed, trial)
    return verify(cfg, scheme.q, scheme.p, draw.h11_slots, draw.h12, rel_tol, nulling_tol)


async def _verify_one_with_sem(
    scheme: BiaScheme,
    seed: int,
    trial: int,
    rel_tol: float | None,
    nulling_tol: float | None,
    sem: asyncio.Semaphore,
) -> tuple[int, VerificationReport | None]:
    """单次试验在工作线程中运行；DomainError 直接上抛，其余异常返回 (trial, None)，由调用方记为未通过。"""
    async with sem:
        try:
            report = await asyncio.to_thread(_verify_trial, scheme, seed, trial, rel_tol, nulling_tol)
            return (trial, report)
        except DomainError:
            raise
        except Exception:
            logger.exception("方案校验异常 | cfg=%s | seed=%d | trial=%d", scheme.cfg, seed, trial)
            return (trial, None)


async def monte_carlo_rank_async(
    cfg: AntennaConfig,
    trials: int,
    seed: int,
    rel_tol: float | None = None,
    nulling_tol: float | None = None,
    *,
    max_workers: int | None = None,
    progress: bool = True,
) -> MonteCarloRankResult:
    """trials 次独立信道实现下 verify() 的通过次数；每次试验的随机流由 (seed, trial) 决定。"""
    require(trials >= 1, "trials >= 1", trials=trials)
    scheme = build_scheme(cfg)
    sem = asyncio.Semaphore(max_workers or _simulation_config().max_workers)
    tasks = [_verify_one_with_sem(scheme, seed, t, rel_tol, nulling_tol, sem) for t in range(trials)]
    raw_results: list[tuple[int, VerificationReport | None]] = []
    for coro in tqdm(asyncio.as_completed(tasks), total=len(tasks), desc=f"校验 {cfg}", unit="次", disable=not progress):
        raw_results.append(await coro)
    passed = 0
    for trial, report in sorted(raw_results, key=lambda r: r[0]):
        if report is not None and report.passed:
            passed += 1
        else:
            logger.warning("试验未通过 | cfg=%s | seed=%d | trial=%d", cfg, seed, trial)
    logger.info("校验通过率 | cfg=%s | %d/%d", cfg, passed, trials)
    return MonteCarloRankResult(config=cfg.label(), trials=trials, passed=passed, seed=seed)


def monte_carlo_rank(
    cfg: AntennaConfig,
    trials: int,
    seed: int,
    rel_tol: float | None = None,
    nulling_tol: float | None = None,
    *,
    max_workers: int | None = None,
    progress: bool = False,
) -> MonteCarloRankResult:
    """同步入口，内部 asyncio.run 跑并发；通过比例见 result.fraction。"""
    return asyncio.run(
        monte_carlo_rank_async(
            cfg, trials, seed, rel_tol, nulling_tol, max_workers=max_workers, progress=progress
        )
    )


# ----- 速率扫描 -----


def _rate_trial(
    scheme: BiaScheme,
    powers: list[float],
    seed: int,
    trial: int,
    rel_tol: float | None,
    nulling_tol: float | None,
) -> list[RatePoint] | None:
    """同一信道实现在全部功率点上的速率；方案校验未通过时返回 None。"""
    cfg = scheme.cfg
    draw = sample_channels(cfg, seed, trial)
    report = verify(cfg, scheme.q, scheme.p, draw.h11_slots, draw.h12, rel_tol, nulling_tol)
    if not report.passed:
        return None
    return [rate_point(scheme, draw, power) for power in powers]


async def _rate_one_with_sem(
    scheme: BiaScheme,
    powers: list[float],
    seed: int,
    trial: int,
    rel_tol: float | None,
    nulling_tol: float | None,
    sem: asyncio.Semaphore,
) -> tuple[int, list[RatePoint] | None]:
    async with sem:
        try:
            points = await asyncio.to_thread(_rate_trial, scheme, powers, seed, trial, rel_tol, nulling_tol)
            if points is None:
                logger.warning("速率试验跳过（方案校验未通过）| cfg=%s | seed=%d | trial=%d", scheme.cfg, seed, trial)
            return (trial, points)
        except DomainError:
            raise
        except Exception:
            logger.exception("速率试验异常 | cfg=%s | seed=%d | trial=%d", scheme.cfg, seed, trial)
            return (trial, None)


async def rate_sweep_async(
    cfg: AntennaConfig,
    powers_db: list[float],
    trials: int,
    seed: int,
    rel_tol: float | None = None,
    nulling_tol: float | None = None,
    *,
    max_workers: int | None = None,
    progress: bool = True,
) -> list[RatePoint]:
    """
    每次试验抽取一次信道并在全部功率点上计算 (r1, r2)；结果按 (功率, 试验) 排序，与调度顺序无关。

    Raises:
        DomainError: powers_db 为空、含重复值、含 NaN/Inf，或 trials < 1。
        NumericalError: 全部试验失败。
    """
    require(trials >= 1, "trials >= 1", trials=trials)
    require(len(powers_db) >= 1, "len(powers_db) >= 1", powers_db=powers_db)
    if len(set(powers_db)) != len(powers_db):
        raise DomainError(f"不满足 功率不重复 (powers_db={powers_db})")
    for db in powers_db:
        require(math.isfinite(db), "power_db 为有限值", power_db=db)
    scheme = build_scheme(cfg)
    powers = [db_to_power(db) for db in powers_db]
    sem = asyncio.Semaphore(max_workers or _simulation_config().max_workers)
    tasks = [_rate_one_with_sem(scheme, powers, seed, t, rel_tol, nulling_tol, sem) for t in range(trials)]
    raw_results: list[tuple[int, list[RatePoint] | None]] = []
    for coro in tqdm(asyncio.as_completed(tasks), total=len(tasks), desc=f"速率 {cfg}", unit="次", disable=not progress):
        raw_results.append(await coro)
    points = [p for _, pts in raw_results if pts is not None for p in pts]
    if not points:
        raise NumericalError(f"全部 {trials} 次速率试验失败: cfg={cfg}, seed={seed}")
    points.sort(key=lambda p: (p.power, p.trial))
    return points


def rate_sweep(
    cfg: AntennaConfig,
    powers_db: list[float],
    trials: int,
    seed: int,
    rel_tol: float | None = None,
    nulling_tol: float | None = None,
    *,
    max_workers: int | None = None,
    progress: bool = False,
) -> list[RatePoint]:
    """速率扫描（同步入口）。"""
    return asyncio.run(
        rate_sweep_async(
            cfg, powers_db, trials, seed, rel_tol, nulling_tol, max_workers=max_workers, progress=progress
        )
    )


def simulate_dof(
    cfg: AntennaConfig,
    powers_db: list[float],
    trials: int,
    seed: int,
    rel_tol: float | None = None,
    nulling_tol: float | None = None,
    *,
    max_workers: int | None = None,
    progress: bool = False,
) -> tuple[list[RatePoint], DofEstimate]:
    """速率扫描 + 斜率估计；至少需要 2 个不同功率。"""
    require(len(set(powers_db)) >= 2, "至少 2 个不同功率", powers_db=powers_db)
    points = rate_sweep(
        cfg, powers_db, trials, seed, rel_tol, nulling_tol, max_workers=max_workers, progress=progress
    )
    return points, estimate_dof(points, seed=seed)
