"""
属性扫描：遍历天线数不超过 K 的全部 (M1,N1,M2,N2) 配置，检查区域之间的等价、包含与可达性关系。

属性名：
- lemma3: N1 <= N2 时 Z 信道与全干扰信道的无 CSIT 区域相同
- strict: N2 < N1 时存在区域严格变大的配置
- csit:   有 CSIT 区域包含无 CSIT 区域（两种信道）
- zic:    Z 信道区域包含全干扰信道区域（有/无 CSIT）
- corner: M1 < N1 < min(M2,N2) 时角点位于无 CSIT 区域边界且使加权和约束取等号
- zf:     N1 >= N2 时无 CSIT 区域的全部整数点可由单时隙迫零实现
"""

from __future__ import annotations

import itertools
import logging
from collections.abc import Callable, Iterable

from tqdm import tqdm  # type: ignore[import-untyped]

from application.services.dofregion import (
    build_region,
    corner_is_tight,
    fic_nocsit_region,
    integer_points,
    region_contains_region,
    regions_equal,
    zic_nocsit_region,
)
from application.services.simulate import zf_feasibility
from domain.antenna import AntennaConfig, ChannelKind
from domain.errors import require
from models.schemas import PropertyResult, SweepSummary

logger = logging.getLogger(__name__)

PropertyCheck = Callable[[list[AntennaConfig]], PropertyResult]


def _sweep_config():
    from core.config import inject, SweepConfig
    return inject(SweepConfig)


def all_configs(max_antennas: int) -> list[AntennaConfig]:
    """按 (M1, N1, M2, N2) 字典序列出全部配置，共 K⁴ 个。"""
    require(1 <= max_antennas <= 6, "1 <= max_antennas <= 6", max_antennas=max_antennas)
    counts = range(1, max_antennas + 1)
    return [AntennaConfig.of(*c) for c in itertools.product(counts, repeat=4)]


def _tally(name: str, configs: Iterable[AntennaConfig], check: Callable[[AntennaConfig], bool]) -> PropertyResult:
    result = PropertyResult(name=name)
    for cfg in configs:
        result.checked += 1
        if check(cfg):
            result.passed += 1
        else:
            result.counterexamples.append(cfg.label())
            logger.warning("属性 %s 不成立: cfg=%s", name, cfg)
    return result


def check_equivalence(configs: list[AntennaConfig]) -> PropertyResult:
    return _tally(
        "lemma3",
        (c for c in configs if c.n1 <= c.n2),
        lambda c: regions_equal(zic_nocsit_region(c), fic_nocsit_region(c)),
    )


def check_strict(configs: list[AntennaConfig]) -> PropertyResult:
    """存在性：N2 < N1 的配置中至少一个 ZIC 区域严格大于 FIC 区域；范围内没有此类配置时视为空检查。"""
    candidates = [c for c in configs if c.n2 < c.n1]
    if not candidates:
        return PropertyResult(name="strict")
    for cfg in candidates:
        zic, fic = zic_nocsit_region(cfg), fic_nocsit_region(cfg)
        if region_contains_region(zic, fic) and not regions_equal(zic, fic):
            logger.info("严格包含示例: cfg=%s", cfg)
            return PropertyResult(name="strict", checked=1, passed=1)
    return PropertyResult(name="strict", checked=1, passed=0, counterexamples=["N2 < N1 时无严格包含的配置"])


def check_csit(configs: list[AntennaConfig]) -> PropertyResult:
    def dominated(cfg: AntennaConfig) -> bool:
        return all(
            region_contains_region(build_region(cfg, kind, True), build_region(cfg, kind, False))
            for kind in ChannelKind
        )

    return _tally("csit", configs, dominated)


def check_zic(configs: list[AntennaConfig]) -> PropertyResult:
    def dominated(cfg: AntennaConfig) -> bool:
        return all(
            region_contains_region(build_region(cfg, ChannelKind.ZIC, csit), build_region(cfg, ChannelKind.FIC, csit))
            for csit in (True, False)
        )

    return _tally("zic", configs, dominated)


def check_corner(configs: list[AntennaConfig]) -> PropertyResult:
    return _tally("corner", (c for c in configs if c.is_scheme_case), corner_is_tight)


def check_zf(configs: list[AntennaConfig], seed: int | None = None) -> PropertyResult:
    zf_seed = seed if seed is not None else _sweep_config().zf_seed

    def feasible(cfg: AntennaConfig) -> bool:
        return all(zf_feasibility(cfg, d1, d2, zf_seed) for d1, d2 in integer_points(zic_nocsit_region(cfg)))

    return _tally("zf", (c for c in configs if c.n1 >= c.n2), feasible)


PROPERTIES: dict[str, PropertyCheck] = {
    "lemma3": check_equivalence,
    "strict": check_strict,
    "csit": check_csit,
    "zic": check_zic,
    "corner": check_corner,
    "zf": check_zf,
}


def run_sweep(
    max_antennas: int | None = None,
    properties: list[str] | None = None,
    *,
    progress: bool = False,
) -> SweepSummary:
    """
    依次检查所选属性（默认全部，按 PROPERTIES 顺序）。

    Raises:
        DomainError: max_antennas 不在 1..6，或属性名未知。
    """
    k = max_antennas if max_antennas is not None else _sweep_config().max_antennas
    configs = all_configs(k)
    names = properties or list(PROPERTIES)
    for name in names:
        require(name in PROPERTIES, "property in " + "|".join(PROPERTIES), property=name)
    results = []
    for name in tqdm(names, desc=f"属性扫描 K={k}", unit="项", disable=not progress):
        result = PROPERTIES[name](configs)
        logger.info("属性 %s: %d/%d 通过", name, result.passed, result.checked)
        results.append(result)
    zf_seed = _sweep_config().zf_seed if "zf" in names else None
    return SweepSummary(max_antennas=k, results=results, zf_seed=zf_seed)
