"""
DoF 实验命令行：region / scheme / simulate / sweep 四个子命令。

流程：_parse_args -> init_config（加载配置、配置日志）-> 子命令 -> 退出码。
stdout 只输出机器可读结果（JSON / CSV / 汇总表），提示信息写 stderr，诊断写日志文件。
退出码：0 成功/通过，1 校验或属性失败、内部错误，2 参数或前置条件错误。
"""

from __future__ import annotations

import argparse
import logging
import math
import sys
from datetime import datetime
from importlib.metadata import PackageNotFoundError, version
from logging.handlers import RotatingFileHandler
from pathlib import Path
from typing import Callable

from bootstrap import (
    PROPERTIES,
    AntennaConfig,
    ChannelKind,
    DofEstimate,
    DofLabError,
    DomainError,
    LoggingConfig,
    NumericsConfig,
    RunConfigSchema,
    ShapeError,
    SimulationConfig,
    SweepConfig,
    build_region,
    build_scheme,
    build_u,
    build_v,
    check_estimate_within_region,
    dump_json,
    estimate_dof,
    export_matrices,
    get_log_dir,
    inject,
    load_app_config,
    normalize_input_path,
    rate_points_to_csv,
    read_json,
    read_rate_points_xlsx,
    region_from_dict,
    region_to_csv,
    region_to_dict,
    report_to_dict,
    reset_app_config,
    run_sweep,
    sample_channels,
    simulate_dof,
    special_realizations,
    sweep_to_dict,
    sweep_to_table,
    verify,
    write_rate_points_xlsx,
    write_sweep_xlsx,
    write_text,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2
PACKAGE_NAME = "mimo-dof-lab"


def _version() -> str:
    try:
        return version(PACKAGE_NAME)
    except PackageNotFoundError:
        return "0.1.0"


def init_config(*, log_dir: Path | None = None, config_path: Path | None = None) -> RunConfigSchema:
    """
    加载应用配置并配置日志，返回 RunConfigSchema。

    Args:
        log_dir: 日志目录，默认 paths.get_log_dir()。
        config_path: 指定配置文件时丢弃已缓存的配置并重新加载。
    """
    if config_path is not None:
        reset_app_config()
    load_app_config(config_path)
    config = RunConfigSchema(log_dir=log_dir or get_log_dir())
    _setup_logging(config.log_dir)
    return config


def _setup_logging(log_dir: Path) -> None:
    """
    日志按日期写入 log_dir/dof_lab_YYYYMMDD.log，超过 logging.log_rotate_max_bytes 时切割，
    保留 logging.log_rotate_backup_count 个历史文件；已存在指向同一文件的 handler 时不再添加。
    """
    log_cfg = inject(LoggingConfig)
    log_dir.mkdir(parents=True, exist_ok=True)
    today = datetime.now().strftime("%Y%m%d")
    log_file = log_dir / f"dof_lab_{today}.log"
    log_path = str(log_file.resolve())
    root = logging.getLogger()
    root.setLevel(getattr(logging, log_cfg.level, logging.INFO))
    for h in root.handlers:
        if isinstance(h, (logging.FileHandler, RotatingFileHandler)) and getattr(h, "baseFilename", "") == log_path:
            return
    fmt = "%(asctime)s [%(levelname)s] %(name)s: %(message)s"
    handler = RotatingFileHandler(
        log_file,
        mode="a",
        encoding="utf-8",
        maxBytes=log_cfg.log_rotate_max_bytes,
        backupCount=log_cfg.log_rotate_backup_count,
    )
    handler.setFormatter(logging.Formatter(fmt))
    root.addHandler(handler)


# ----- 参数类型 -----


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"不是整数: {text!r}") from e
    if value < 1:
        raise argparse.ArgumentTypeError(f"必须 >= 1: {value}")
    return value


def _non_negative_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"不是整数: {text!r}") from e
    if value < 0:
        raise argparse.ArgumentTypeError(f"必须 >= 0: {value}")
    return value


def _unit_interval(text: str) -> float:
    try:
        value = float(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"不是数值: {text!r}") from e
    if not 0.0 < value < 1.0:
        raise argparse.ArgumentTypeError(f"必须满足 0 < tol < 1: {value}")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"不是数值: {text!r}") from e
    if not value > 0.0:
        raise argparse.ArgumentTypeError(f"必须 > 0: {value}")
    return value


def _powers_db(text: str) -> list[float]:
    """逗号分隔的 dB 列表，如 "60,80"。"""
    try:
        values = [float(part) for part in text.split(",") if part.strip()]
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"功率列表格式错误: {text!r}") from e
    if not values:
        raise argparse.ArgumentTypeError("功率列表为空")
    bad = [v for v in values if not math.isfinite(v)]
    if bad:
        raise argparse.ArgumentTypeError(f"功率必须为有限值: {bad[0]}")
    return values


def _sweep_size(text: str) -> int:
    value = _positive_int(text)
    if value > 6:
        raise argparse.ArgumentTypeError(f"必须满足 1 <= K <= 6: {value}")
    return value


def _add_antenna_args(parser: argparse.ArgumentParser, *, required: bool = True) -> None:
    for name, desc in (("m1", "发射机 1"), ("n1", "接收机 1"), ("m2", "发射机 2"), ("n2", "接收机 2")):
        parser.add_argument(f"--{name}", type=_positive_int, required=required, help=f"{desc}天线数（1..64）")


def _build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", default=None, help="app_config.yaml 路径，默认 config/app_config.yaml")
    common.add_argument("--log-dir", default=None, help="日志目录，默认 logs/")
    common.add_argument("--rank-tol", type=_unit_interval, default=None, help="数值秩相对容差（默认 1e-10）")
    common.add_argument("--nulling-tol", type=_positive_float, default=None, help="置零容差系数（默认 1e-9）")
    common.add_argument("--out", default=None, help="结果写入该文件，默认 stdout")

    parser = argparse.ArgumentParser(
        prog="dof-lab",
        description="两用户 MIMO Z/全干扰信道 DoF 区域、盲干扰对齐方案校验与 Monte Carlo 仿真。",
        allow_abbrev=False,
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {_version()}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="{region,scheme,simulate,sweep}")

    region = sub.add_parser("region", parents=[common], allow_abbrev=False, help="计算 DoF 区域")
    _add_antenna_args(region, required=False)
    region.add_argument("--from-json", default=None, metavar="PATH", help="读取已保存的区域 JSON，按半平面重算顶点后重新输出（与天线参数二选一）")
    region.add_argument("--channel", choices=[k.value for k in ChannelKind], default="fic", help="信道类型")
    region.add_argument("--csit", choices=["yes", "no"], default="no", help="发射端是否有信道状态信息")
    region.add_argument("--format", choices=["json", "csv"], default="json", help="输出格式")

    scheme = sub.add_parser("scheme", parents=[common], allow_abbrev=False, help="构造并校验盲干扰对齐方案")
    _add_antenna_args(scheme)
    realization = scheme.add_mutually_exclusive_group()
    realization.add_argument("--special", action="store_true", help="使用特殊信道实现（默认）")
    realization.add_argument("--random", action="store_true", help="使用 i.i.d. 复高斯信道实现")
    scheme.add_argument("--seed", type=_non_negative_int, default=None, help="信道随机种子（--special 时仅用于 H12），默认 simulation.seed")
    scheme.add_argument("--export-matrices", default=None, metavar="DIR", help="将 Q、P、Ũ、Ṽ 导出为 CSV")

    simulate = sub.add_parser("simulate", parents=[common], allow_abbrev=False, help="速率扫描与 DoF 斜率估计")
    _add_antenna_args(simulate)
    simulate.add_argument("--powers-db", type=_powers_db, default=None, help="逗号分隔的功率（dB），如 60,80")
    simulate.add_argument("--trials", type=_positive_int, default=None, help="每个功率点的试验次数")
    simulate.add_argument("--seed", type=_non_negative_int, default=None, help="主随机种子")
    simulate.add_argument("--format", choices=["csv", "xlsx"], default="csv", help="速率扫描输出格式")
    simulate.add_argument("--from-xlsx", default=None, metavar="PATH", help="不做仿真，读取已保存的速率工作簿并估计 DoF")

    sweep = sub.add_parser("sweep", parents=[common], allow_abbrev=False, help="遍历天线配置检查区域属性")
    sweep.add_argument("--max-antennas", type=_sweep_size, default=None, help="单个天线数上限 K（1..6）")
    sweep.add_argument("--property", action="append", choices=list(PROPERTIES), default=None, help="只检查指定属性，可重复")
    sweep.add_argument("--format", choices=["table", "json", "xlsx"], default="table", help="输出格式")
    return parser


def _parse_args(args: list[str] | None = None) -> tuple[argparse.ArgumentParser, argparse.Namespace]:
    """解析命令行参数；args 为 None 时使用 sys.argv，便于单测注入。"""
    parser = _build_parser()
    ns = parser.parse_args(args)
    if ns.command == "region":
        given = [name for name in ("m1", "n1", "m2", "n2") if getattr(ns, name) is not None]
        if ns.from_json and given:
            parser.error("--from-json 不能与天线参数同时使用")
        if not ns.from_json and len(given) != 4:
            parser.error("region 需要 --m1 --n1 --m2 --n2 四个天线参数，或 --from-json")
    return parser, ns


def _antenna_config(parser: argparse.ArgumentParser, ns: argparse.Namespace) -> AntennaConfig:
    limit = inject(NumericsConfig).max_antennas
    for name in ("m1", "n1", "m2", "n2"):
        value = getattr(ns, name)
        if value > limit:
            parser.error(f"--{name} 必须满足 1 <= {name.upper()} <= {limit}: {value}")
    return AntennaConfig.of(ns.m1, ns.n1, ns.m2, ns.n2)


def _out_path(ns: argparse.Namespace) -> Path | None:
    return normalize_input_path(ns.out) if ns.out else None


def _emit(text: str, out: Path | None) -> None:
    """写到 --out 指定的文件或 stdout。"""
    if out is None:
        sys.stdout.write(text)
        sys.stdout.flush()
    else:
        write_text(text, out)
        print(f"已写入: {out}", file=sys.stderr)


def _effective_tolerances(ns: argparse.Namespace) -> tuple[float, float]:
    numerics = inject(NumericsConfig)
    rank_tol = ns.rank_tol if ns.rank_tol is not None else numerics.rank_rel_tol
    nulling_tol = ns.nulling_tol if ns.nulling_tol is not None else numerics.nulling_tol
    return rank_tol, nulling_tol


# ----- 子命令 -----


def _region_from_file(parser: argparse.ArgumentParser, ns: argparse.Namespace) -> int:
    """读取区域 JSON：半平面为准重算顶点，保留文件中的 config / channel / csit 标签。"""
    try:
        data = read_json(normalize_input_path(ns.from_json))
    except RuntimeError as e:
        parser.error(str(e))
    if not isinstance(data, dict):
        raise DomainError("区域 JSON 顶层必须是对象")
    region = region_from_dict(data)
    logger.info("区域已读入: path=%s, 顶点数=%d", ns.from_json, len(region.vertices))
    if ns.format == "csv":
        _emit(region_to_csv(region), _out_path(ns))
    else:
        labels = {key: data[key] for key in ("config", "channel", "csit") if key in data}
        _emit(dump_json({**labels, **region_to_dict(region)}) + "\n", _out_path(ns))
    return EXIT_OK


def cmd_region(parser: argparse.ArgumentParser, ns: argparse.Namespace) -> int:
    if ns.from_json:
        return _region_from_file(parser, ns)
    cfg = _antenna_config(parser, ns)
    csit = ns.csit == "yes"
    region = build_region(cfg, ns.channel, csit)
    logger.info("区域: cfg=%s, channel=%s, csit=%s, 顶点数=%d", cfg, ns.channel, csit, len(region.vertices))
    if ns.format == "csv":
        _emit(region_to_csv(region), _out_path(ns))
    else:
        data = {"config": cfg.label(), "channel": ns.channel, "csit": csit, **region_to_dict(region)}
        _emit(dump_json(data) + "\n", _out_path(ns))
    return EXIT_OK


def cmd_scheme(parser: argparse.ArgumentParser, ns: argparse.Namespace) -> int:
    cfg = _antenna_config(parser, ns)
    rank_tol, nulling_tol = _effective_tolerances(ns)
    scheme = build_scheme(cfg)
    seed = ns.seed if ns.seed is not None else inject(SimulationConfig).seed
    draw = sample_channels(cfg, seed, 0)
    h12 = draw.h12
    if ns.random:
        h11_slots = draw.h11_slots
    else:
        h11_slots = special_realizations(cfg.m1, cfg.n1)
    meta = {"realization": "random" if ns.random else "special", "seed": seed}
    report = verify(cfg, scheme.q, scheme.p, h11_slots, h12, rank_tol, nulling_tol)
    if ns.export_matrices:
        written = export_matrices(
            normalize_input_path(ns.export_matrices),
            {
                "q": scheme.q,
                "p": scheme.p,
                "u": build_u(scheme.q, h11_slots),
                "v": build_v(scheme.q, scheme.p, h12),
            },
        )
        print(f"已导出 {len(written)} 个矩阵: {ns.export_matrices}", file=sys.stderr)
    _emit(dump_json({**report_to_dict(report, cfg), **meta}) + "\n", _out_path(ns))
    return EXIT_OK if report.passed else EXIT_FAILURE


def _region_checks(cfg: AntennaConfig, estimate: DofEstimate) -> dict[str, bool]:
    """斜率估计对照两种信道的无 CSIT 区域；方案要求 N1 < N2，此时两区域相同。"""
    return {
        "within_region": check_estimate_within_region(estimate, build_region(cfg, ChannelKind.ZIC, False)),
        "within_fic_region": check_estimate_within_region(estimate, build_region(cfg, ChannelKind.FIC, False)),
    }


def _simulate_from_file(parser: argparse.ArgumentParser, ns: argparse.Namespace, cfg: AntennaConfig) -> int:
    """读取已保存的速率工作簿，只做斜率估计，输出汇总 JSON。"""
    try:
        points = read_rate_points_xlsx(normalize_input_path(ns.from_xlsx))
    except (OSError, RuntimeError) as e:
        parser.error(str(e))
    estimate = estimate_dof(points)
    summary = {
        "config": cfg.label(),
        "source": ns.from_xlsx,
        "d1_hat": estimate.d1_hat,
        "d2_hat": estimate.d2_hat,
        "trials": len({p.trial for p in points}),
        "powers_db": sorted({p.power_db for p in points}),
        **_region_checks(cfg, estimate),
    }
    logger.info("DoF 估计（工作簿）: cfg=%s, d1_hat=%.4f, d2_hat=%.4f", cfg, estimate.d1_hat, estimate.d2_hat)
    _emit(dump_json(summary) + "\n", _out_path(ns))
    return EXIT_OK


def cmd_simulate(parser: argparse.ArgumentParser, ns: argparse.Namespace) -> int:
    cfg = _antenna_config(parser, ns)
    if ns.from_xlsx:
        return _simulate_from_file(parser, ns, cfg)
    sim = inject(SimulationConfig)
    powers_db = ns.powers_db if ns.powers_db is not None else list(sim.powers_db)
    trials = ns.trials if ns.trials is not None else sim.trials
    seed = ns.seed if ns.seed is not None else sim.seed
    if len(set(powers_db)) < 2:
        parser.error(f"--powers-db 至少需要 2 个不同功率: {powers_db}")
    out = _out_path(ns)
    if ns.format == "xlsx" and out is None:
        parser.error("--format xlsx 需要同时指定 --out")
    rank_tol, nulling_tol = _effective_tolerances(ns)
    points, estimate = simulate_dof(
        cfg, powers_db, trials, seed, rank_tol, nulling_tol, progress=sys.stderr.isatty()
    )
    if ns.format == "xlsx" or (out is not None and out.suffix.lower() == ".xlsx"):
        write_rate_points_xlsx(points, out)
        print(f"已写入: {out}", file=sys.stderr)
    else:
        _emit(rate_points_to_csv(points), out)
    summary = {
        "config": cfg.label(),
        "d1_hat": estimate.d1_hat,
        "d2_hat": estimate.d2_hat,
        "points": [
            {"power_db": p.power_db, "r1_bits": p.r1, "r2_bits": p.r2, "trial": p.trial} for p in estimate.points
        ],
        "seed": seed,
        "trials": trials,
        "powers_db": powers_db,
        "rank_rel_tol": rank_tol,
        "nulling_tol": nulling_tol,
        **_region_checks(cfg, estimate),
    }
    logger.info("DoF 估计: cfg=%s, d1_hat=%.4f, d2_hat=%.4f, seed=%d", cfg, estimate.d1_hat, estimate.d2_hat, seed)
    sys.stdout.write(dump_json(summary) + "\n")
    sys.stdout.flush()
    return EXIT_OK


def cmd_sweep(parser: argparse.ArgumentParser, ns: argparse.Namespace) -> int:
    k = ns.max_antennas if ns.max_antennas is not None else inject(SweepConfig).max_antennas
    summary = run_sweep(k, ns.property, progress=sys.stderr.isatty())
    out = _out_path(ns)
    if ns.format == "xlsx":
        if out is None:
            parser.error("--format xlsx 需要同时指定 --out")
        write_sweep_xlsx(summary, out)
        print(f"已写入: {out}", file=sys.stderr)
    elif ns.format == "json":
        _emit(dump_json(sweep_to_dict(summary)) + "\n", out)
    else:
        _emit(sweep_to_table(summary), out)
    if not summary.all_passed:
        failed = [r.name for r in summary.results if not r.ok]
        print(f"属性不成立: {', '.join(failed)}", file=sys.stderr)
        return EXIT_FAILURE
    return EXIT_OK


COMMANDS: dict[str, Callable[[argparse.ArgumentParser, argparse.Namespace], int]] = {
    "region": cmd_region,
    "scheme": cmd_scheme,
    "simulate": cmd_simulate,
    "sweep": cmd_sweep,
}


def main(args: list[str] | None = None) -> int:
    """
    入口：解析参数 -> 加载配置与日志 -> 执行子命令，返回退出码。

    示例：
      dof-lab region --m1 1 --n1 2 --m2 3 --n2 3 --channel fic --csit no
      dof-lab scheme --m1 1 --n1 2 --m2 3 --n2 3 --special
      dof-lab simulate --m1 1 --n1 2 --m2 3 --n2 3 --powers-db 60,80 --trials 50 --seed 1
      dof-lab sweep --max-antennas 4
    """
    parser, ns = _parse_args(args)
    init_config(
        log_dir=normalize_input_path(ns.log_dir) if ns.log_dir else None,
        config_path=normalize_input_path(ns.config) if ns.config else None,
    )
    logger.info("命令: %s", " ".join(sys.argv[1:] if args is None else args))
    try:
        return COMMANDS[ns.command](parser, ns)
    except (DomainError, ShapeError) as e:
        logger.warning("参数或前置条件错误: %s", e)
        print(f"错误: {e}", file=sys.stderr)
        return EXIT_USAGE
    except DofLabError as e:
        logger.exception("执行失败")
        print(f"执行失败: {e}", file=sys.stderr)
        return EXIT_FAILURE
    except Exception as e:
        logger.exception("未预期的异常")
        print(f"未预期的异常: {e}", file=sys.stderr)
        return EXIT_FAILURE


if __name__ == "__main__":
    sys.exit(main())
