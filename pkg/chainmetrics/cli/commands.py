"""Commands - 各子命令的参数模型与处理函数"""
import logging
import sys
from contextlib import contextmanager
from typing import Dict, Iterator, List, Literal, Optional, TextIO

from pydantic import BaseModel, Field

from ..attack import (
    AttackScenario,
    SimConfig,
    SimMode,
    attacker_lead_tail,
    catch_up_probability,
    confirmation_table,
    double_spend_probability,
    min_confirmations,
    risk_series,
    simulate_catch_up,
    simulate_double_spend,
)
from ..calibration import (
    PUBLISHED_2015,
    TARGETS,
    CalibrationInputs,
    buyer_utility,
    calibrate,
    empirical_cdf,
    implied_confirmation_lag,
    reference_deviations,
)
from ..dataio import (
    ResultDocument,
    Series,
    parse_calibration_inputs,
    parse_shock_samples,
    parse_snapshot,
)
from ..errors import UsageError
from ..supply import (
    SupplySchedule,
    annualized_inflation,
    block_reward,
    cumulative_supply,
    halving_eras,
    monetary_snapshot,
    money_growth_rate,
)
from ..wealth import gini_from_lorenz, lorenz_curve, summarize
from .registry import CommandRegistry, RunContext

logger = logging.getLogger(__name__)

commands = CommandRegistry()

DEFAULT_TRIALS = 100_000
DEFAULT_UTILITY_B = 0.01
SHOCK_QUANTILES = (0.25, 0.5, 0.75)
PSEUDONYMITY_NOTE = "比特币地址是假名的，按地址计算的不平等指标不直接反映个人财富分布"


@contextmanager
def open_input(path: str) -> Iterator[TextIO]:
    """打开输入文件，"-" 表示标准输入"""
    if path == "-":
        yield sys.stdin
        return
    with open(path, "r", encoding="utf-8", newline="") as f:
        yield f


def _document(command: str, args: BaseModel, run: RunContext, **kwargs) -> ResultDocument:
    inputs = {k: v for k, v in args.model_dump().items() if v is not None}
    return ResultDocument(command=command, inputs=inputs, metadata=dict(run.metadata), **kwargs)


# ---------------------------------------------------------------- attack-prob

class AttackProbArgs(BaseModel):
    q: float = Field(ge=0.0, le=1.0, allow_inf_nan=False)
    z: int = Field(ge=0)
    series_max_z: Optional[int] = Field(default=None, ge=0)


@commands.command("attack-prob", args_schema=AttackProbArgs, help="追赶概率与双花概率")
def attack_prob(args: AttackProbArgs, run: RunContext) -> ResultDocument:
    scenario = AttackScenario.create(args.q, args.z)
    risk = double_spend_probability(scenario)
    doc = _document("attack-prob", args, run)
    doc.outputs = {
        "p": scenario.p,
        "lambda": risk.lam,
        "catch_up_probability": catch_up_probability(scenario),
        "double_spend_probability": risk.probability,
        "attacker_lead_tail": attacker_lead_tail(scenario),
    }
    if args.series_max_z is not None:
        points = risk_series(args.q, args.series_max_z)
        doc.series = Series(
            columns=["z", "catch_up", "double_spend", "lambda"],
            rows=[(pt.z, pt.catch_up, pt.double_spend, pt.lam) for pt in points],
        )
    return doc


# ------------------------------------------------------- attack-confirmations

class AttackConfirmationsArgs(BaseModel):
    q: Optional[float] = Field(default=None, ge=0.0, le=1.0, allow_inf_nan=False)
    epsilon: float = Field(gt=0.0, lt=1.0)
    q_grid: Optional[List[float]] = None


@commands.command("attack-confirmations", args_schema=AttackConfirmationsArgs, help="使风险低于 epsilon 的最小确认深度")
def attack_confirmations(args: AttackConfirmationsArgs, run: RunContext) -> ResultDocument:
    doc = _document("attack-confirmations", args, run)
    if args.q is not None:
        z = min_confirmations(args.q, args.epsilon)
        doc.outputs = {
            "min_confirmations": z,
            "double_spend_probability": double_spend_probability(AttackScenario(q=args.q, z=z)).probability,
        }
        return doc

    if not args.q_grid:
        raise UsageError("attack-confirmations: 需要 --q 或 --q-grid（或使用 --preset）")
    table = confirmation_table(args.q_grid, args.epsilon)
    doc.outputs = {"rows": len(table)}
    doc.series = Series(columns=["q", "z"], rows=table)
    return doc


# ------------------------------------------------------------ attack-simulate

class AttackSimulateArgs(BaseModel):
    q: float = Field(ge=0.0, le=1.0, allow_inf_nan=False)
    z: int = Field(ge=0)
    trials: int = Field(default=DEFAULT_TRIALS, ge=1)
    mode: SimMode = SimMode.POISSON_PROGRESS
    deficit_cutoff: Optional[int] = Field(default=None, ge=1)


@commands.command("attack-simulate", args_schema=AttackSimulateArgs, help="蒙特卡洛模拟并与闭式解对照")
def attack_simulate(args: AttackSimulateArgs, run: RunContext) -> ResultDocument:
    if args.mode == SimMode.CATCH_UP:
        result = simulate_catch_up(
            args.q, args.z, args.trials, run.seed,
            deficit_cutoff=args.deficit_cutoff, workers=run.workers, stream_size=run.stream_size,
        )
        expected = catch_up_probability(AttackScenario.create(args.q, args.z))
    else:
        config = SimConfig.create(
            q=args.q, z=args.z, trials=args.trials, seed=run.seed, mode=args.mode,
            deficit_cutoff=args.deficit_cutoff, stream_size=run.stream_size,
        )
        result = simulate_double_spend(config, workers=run.workers)
        expected = double_spend_probability(AttackScenario.create(args.q, args.z)).probability

    doc = _document("attack-simulate", args, run)
    doc.outputs = {
        "estimate": result.estimate,
        "standard_error": result.standard_error,
        "successes": result.successes,
        "closed_form": expected,
        "z_score": result.z_score(expected),
        "deficit_cutoff": result.deficit_cutoff,
    }
    doc.metadata.update({"rng": result.rng, "streams": result.streams, "stream_size": run.stream_size})
    return doc


# --------------------------------------------------------------------- supply

class SupplyArgs(BaseModel):
    height: Optional[int] = Field(default=None, ge=0)
    inflation: bool = False
    reward: Optional[float] = Field(default=None, ge=0.0, allow_inf_nan=False)
    supply: Optional[float] = Field(default=None, gt=0.0, allow_inf_nan=False)
    eras: bool = False
    initial_reward: float = Field(default=50.0, gt=0.0, allow_inf_nan=False)
    halving_interval: int = Field(default=210_000, gt=0)
    max_supply: float = Field(default=21_000_000.0, gt=0.0, allow_inf_nan=False)
    blocks_per_day: int = Field(default=144, gt=0)


@commands.command("supply", args_schema=SupplyArgs, help="发行量、区块奖励与通胀")
def supply(args: SupplyArgs, run: RunContext) -> ResultDocument:
    if args.height is None and not args.inflation and not args.eras:
        raise UsageError("supply: 需要 --height、--inflation 或 --eras")
    if args.inflation and (args.reward is None or args.supply is None):
        raise UsageError("supply: --inflation 需要同时给出 --reward 与 --supply")

    schedule = SupplySchedule.create(
        initial_reward=args.initial_reward,
        halving_interval=args.halving_interval,
        max_supply=args.max_supply,
        blocks_per_day=args.blocks_per_day,
    )
    doc = _document("supply", args, run)

    if args.height is not None:
        circulating = cumulative_supply(schedule, args.height)
        doc.outputs["supply"] = circulating
        doc.outputs["block_reward"] = block_reward(schedule, args.height)
        if circulating > 0:
            snap = monetary_snapshot(schedule, args.height)
            doc.outputs["mu_daily"] = snap.mu_daily
            doc.outputs["annual_inflation"] = snap.annual_inflation

    if args.inflation:
        mu = money_growth_rate(args.reward, args.supply, args.blocks_per_day)
        doc.outputs["mu"] = mu
        doc.outputs["inflation_annual"] = annualized_inflation(mu)

    if args.eras:
        eras = halving_eras(schedule)
        doc.series = Series(
            columns=["era", "start_height", "reward", "supply_at_end"],
            rows=[(e.era, e.start_height, e.reward, e.supply_at_end) for e in eras],
        )
    return doc


# ------------------------------------------------------------------ calibrate

class CalibrateArgs(BaseModel):
    input: Optional[str] = None
    shocks: Optional[str] = None
    tx_per_day: Optional[float] = None
    volume_per_day: Optional[float] = None
    fees_per_day: Optional[float] = None
    supply: Optional[float] = None
    blocks_per_day: Optional[int] = None
    annual_discount: Optional[float] = None
    reward_per_block: Optional[float] = None
    confirmation_lag: Optional[int] = Field(default=None, ge=0)
    utility_b: float = Field(default=DEFAULT_UTILITY_B, gt=0.0, allow_inf_nan=False)


def _resolve_inputs(args: CalibrateArgs):
    # 优先级: 命令行 > 文件 > 默认值
    if args.input is not None:
        with open_input(args.input) as stream:
            base, provenance = parse_calibration_inputs(stream)
    else:
        base = CalibrationInputs()
        provenance = {key: "default" for key in CalibrationInputs.model_fields}

    flags = {
        key: getattr(args, key)
        for key in CalibrationInputs.model_fields
        if getattr(args, key) is not None
    }
    provenance.update({key: "flag" for key in flags})
    inputs = CalibrationInputs.create(**{**base.model_dump(), **flags})
    return inputs, provenance


@commands.command("calibrate", args_schema=CalibrateArgs, help="由日度汇总数据校准模型参数")
def calibrate_command(args: CalibrateArgs, run: RunContext) -> ResultDocument:
    inputs, provenance = _resolve_inputs(args)
    params = calibrate(inputs, confirmation_lag=args.confirmation_lag)

    doc = _document("calibrate", args, run)
    doc.inputs.update(inputs.model_dump())
    doc.outputs = params.model_dump()
    doc.outputs["implied_confirmation_lag"] = implied_confirmation_lag(params.beta, params.delta)
    doc.outputs["utility_avg_tx"] = buyer_utility(params.avg_tx_size, args.utility_b)
    doc.metadata.update({f"source.{k}": v for k, v in provenance.items()})

    if all(v == "default" for v in provenance.values()):
        deviations = reference_deviations(params)
        doc.series = Series(
            columns=["parameter", "value", "published", "deviation", "target"],
            rows=[
                (name, getattr(params, name), published, deviations[name], TARGETS[name])
                for name, (published, _) in PUBLISHED_2015.items()
            ],
        )

    if args.shocks is not None:
        with open_input(args.shocks) as stream:
            dist = empirical_cdf(parse_shock_samples(stream))
        doc.outputs["shocks_count"] = dist.count
        for prob in SHOCK_QUANTILES:
            doc.outputs[f"shocks_q{int(prob * 100)}"] = dist.quantile(prob)
    logger.info(f"校准完成: β={params.beta:.15g}, δ={params.delta:.15g}, τ={params.tau:.6g}")
    return doc


# --------------------------------------------------------------------- wealth

class WealthArgs(BaseModel):
    metric: Literal["gini", "lorenz"]
    snapshot: str
    label: str = ""


@commands.command("wealth", args_schema=WealthArgs, help="持币分布的 Gini 系数与 Lorenz 曲线")
def wealth(args: WealthArgs, run: RunContext) -> ResultDocument:
    with open_input(args.snapshot) as stream:
        snapshot = parse_snapshot(stream, label=args.label or args.snapshot)

    doc = _document("wealth", args, run)
    stats: Dict[str, float] = dict(summarize(snapshot))
    stats["holders"] = len(snapshot.entries)
    if args.metric == "gini":
        doc.outputs = stats
    else:
        curve = lorenz_curve(snapshot)
        doc.outputs = {"holders": stats["holders"], "gini": stats["gini"], "gini_from_lorenz": gini_from_lorenz(curve)}
        doc.series = Series(columns=["population_share", "wealth_share"], rows=curve.points)
    doc.notes.append(PSEUDONYMITY_NOTE)
    return doc
