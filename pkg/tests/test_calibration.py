"""参数校准测试"""
import math

import numpy as np
import pytest

from chainmetrics.calibration import (
    CalibrationContext,
    CalibrationInputs,
    DerivationStep,
    Pipeline,
    avg_transaction_size,
    build_pipeline,
    buyer_utility,
    calibrate,
    capacity,
    daily_discount,
    empirical_cdf,
    fee_rate,
    implied_confirmation_lag,
    per_block,
    per_block_discount,
    reference_deviations,
    velocity,
)
from chainmetrics.errors import DomainError

PUBLISHED_BETA = 0.999916553598325
PUBLISHED_DELTA = 0.999999420487088
# 日交易笔数公布到 1e-4，折算到每区块的取整误差上限
PER_BLOCK_TX_TOLERANCE = 0.5e-4 / 144


class TestDerivations:
    def test_per_block(self):
        assert per_block(122129.7534, 144) == pytest.approx(848.1232877, abs=PER_BLOCK_TX_TOLERANCE)
        assert per_block(254843.1781, 144) == pytest.approx(1769.744292, abs=1e-6)
        assert per_block(0, 144) == 0

    def test_fee_rate(self):
        assert fee_rate(0.15596529, 1769.744292) == pytest.approx(0.000088129, abs=1e-9)
        assert fee_rate(0, 10) == 0
        assert fee_rate(22.45900183 / 144, 254843.1781 / 144) == pytest.approx(22.45900183 / 254843.1781, rel=1e-12)

    def test_avg_transaction_size(self):
        assert avg_transaction_size(1769.744292, 848.1232877) == pytest.approx(2.086659237, abs=1e-9)
        assert avg_transaction_size(3.5, 1) == 3.5

    def test_velocity(self):
        assert velocity(254843.1781, 14342502.95) == pytest.approx(0.0178, abs=0.0002)
        assert velocity(0, 100) == 0
        assert velocity(100, 100) == 1.0

    def test_capacity(self):
        assert capacity(14342502.95, 2.086659237) == pytest.approx(6873428.441, abs=1.0)
        assert capacity(100, 2.5) == 40.0

    def test_daily_discount(self):
        beta = daily_discount(0.97)
        assert beta == pytest.approx(PUBLISHED_BETA, abs=1e-12)
        assert beta ** 365 == pytest.approx(0.97, abs=1e-12)
        assert 1 - daily_discount(0.999999999) == pytest.approx(2.74e-12, rel=1e-2)

    @pytest.mark.parametrize("annual", [0.0, 1.0, 1.2])
    def test_daily_discount_rejects(self, annual):
        with pytest.raises(DomainError):
            daily_discount(annual)

    def test_per_block_discount(self):
        assert per_block_discount(PUBLISHED_BETA, 143) == pytest.approx(PUBLISHED_DELTA, abs=1e-12)
        assert per_block_discount(0.9, 0) == 0.9
        assert per_block_discount(0.9, 10_000) > 0.9

    def test_implied_confirmation_lag(self):
        assert implied_confirmation_lag(PUBLISHED_BETA, PUBLISHED_DELTA) == 143
        assert implied_confirmation_lag(0.95 ** 10, 0.95) == 9
        for lag in (1, 143, 1000):
            assert implied_confirmation_lag(0.99, per_block_discount(0.99, lag)) == lag
        with pytest.raises(DomainError):
            implied_confirmation_lag(0.9, 0.9)

    def test_buyer_utility(self):
        assert buyer_utility(0, 1) == 0.0
        assert buyer_utility(2.5, 2.5) == pytest.approx(math.log(2))
        assert buyer_utility(9, 1) == pytest.approx(2.302585, abs=1e-6)
        with pytest.raises(DomainError):
            buyer_utility(1, 0)


class TestShockDistribution:
    def test_single_point(self):
        dist = empirical_cdf([1, 1, 1, 1])
        assert dist.cdf(0.999) == 0.0
        assert dist.cdf(1) == 1.0
        assert dist.count == 4

    def test_median(self):
        dist = empirical_cdf([1, 2, 3, 4])
        assert dist.cdf(2.5) == 0.5
        assert dist.quantile(0.5) == 2
        assert dist.quantile(1.0) == 4

    def test_within_dkw_band(self):
        rng = np.random.Generator(np.random.PCG64(7))
        n = 10_000
        dist = empirical_cdf(rng.exponential(1.0, n) + 1e-9)
        band = math.sqrt(math.log(2 / 0.01) / (2 * n))
        sizes = np.array(dist.sizes)
        gap = np.max(np.abs(np.array(dist.cumulative) - (1 - np.exp(-(sizes - 1e-9)))))
        assert gap <= band

    @pytest.mark.parametrize("samples", [[], [1, 0], [1, -2], [1, float("inf")]])
    def test_rejects(self, samples):
        with pytest.raises(DomainError):
            empirical_cdf(samples)


class TestCalibrate:
    def test_reproduces_2015_table(self):
        params = calibrate(CalibrationInputs())
        assert params.beta == pytest.approx(PUBLISHED_BETA, abs=1e-12)
        assert params.delta == pytest.approx(PUBLISHED_DELTA, abs=1e-12)
        assert params.confirmation_lag == 143
        assert params.tau == pytest.approx(0.000088129, abs=1e-9)
        assert params.sigma == pytest.approx(0.0178, abs=0.0002)
        assert params.B == pytest.approx(6873428.441, abs=1.0)
        assert params.avg_tx_size == pytest.approx(2.086659237, abs=1e-9)
        assert params.tx_per_block == pytest.approx(848.1232877, abs=PER_BLOCK_TX_TOLERANCE)
        assert params.volume_per_block == pytest.approx(1769.744292, abs=1e-6)
        assert params.fees_per_block == pytest.approx(0.15596529, abs=1e-8)
        assert params.mu == pytest.approx(1.00025, abs=1e-5)
        assert params.alpha == 1.0

    def test_matches_published_rounding(self):
        deviations = reference_deviations(calibrate(CalibrationInputs()))
        assert all(abs(v) <= 1e-12 for v in deviations.values()), deviations

    def test_fee_rate_invariant_under_scaling(self):
        base = CalibrationInputs()
        doubled = CalibrationInputs(fees_per_day=2 * base.fees_per_day, volume_per_day=2 * base.volume_per_day)
        assert calibrate(doubled).tau == pytest.approx(calibrate(base).tau, rel=1e-12)

    def test_per_block_inputs_scaled_to_daily(self):
        base = calibrate(CalibrationInputs())
        rebuilt = calibrate(CalibrationInputs(
            tx_per_day=base.tx_per_block * 144,
            volume_per_day=base.volume_per_block * 144,
            fees_per_day=base.fees_per_block * 144,
        ))
        for name, value in base.model_dump().items():
            assert getattr(rebuilt, name) == pytest.approx(value, rel=1e-12), name

    def test_explicit_lag(self):
        params = calibrate(CalibrationInputs(), confirmation_lag=0)
        assert params.delta == params.beta

    def test_rejects_invalid_inputs(self):
        with pytest.raises(DomainError):
            CalibrationInputs.create(supply=0)


class TestPipeline:
    def test_steps_share_context(self):
        pipeline = Pipeline([
            DerivationStep(lambda a, b: a + b, ["a", "b"], "c"),
            DerivationStep(lambda c: c * 2, ["c"], "d"),
        ], name="demo")
        context = pipeline.run({"a": 1, "b": 2})
        assert isinstance(context, CalibrationContext)
        assert context.d == 6

    def test_missing_input(self):
        with pytest.raises(KeyError):
            Pipeline([DerivationStep(abs, ["x"], "y")]).run({})

    def test_trace_records_derivation_order(self):
        context = build_pipeline().run(dict(CalibrationInputs().model_dump(), confirmation_lag=143))
        names = [name for name, _ in context.trace]
        assert names[0] == "beta" and names[-1] == "delta"
        assert names.index("avg_tx_size") < names.index("B")

    def test_default_pipeline_is_resolvable(self):
        available = list(CalibrationInputs.model_fields) + ["confirmation_lag"]
        assert build_pipeline().unresolved(available) == {}

    def test_rejects_duplicate_outputs(self):
        with pytest.raises(ValueError):
            Pipeline([DerivationStep(abs, ["x"], "y"), DerivationStep(abs, ["x"], "y")])
