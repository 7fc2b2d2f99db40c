"""End-to-end acceptance gate.

One test per headline claim the toolkit must reproduce, at the stated
tolerance, from bundled inputs only.  Each test prints a PASS line when
its criterion holds (visible with ``pytest -s``); with ``pytest -v`` the
test names themselves give the per-criterion verdict.
"""

import math
import random
from datetime import datetime, timedelta

import numpy as np
import pytest

import powprint as pp
from powprint.eip1559 import _geometric_ratio_sum


def _ok(num, text):
    print(f"PASS criterion {num}: {text}")


@pytest.fixture(scope="module")
def pipeline(regions, gpu):
    agg = pp.aggregate_regions(regions)
    breakdown = pp.gpu_breakdown(gpu, agg.electricity_price, agg.emission_factor)
    return agg, breakdown, pp.emissions_per_dollar(breakdown)


@pytest.fixture(scope="module")
def property_draws():
    # 20 parameter sets with K in [0.5, 0.999], simulated for 1e5 blocks.
    rng = np.random.default_rng(20210804)
    draws = []
    for _ in range(20):
        k = rng.uniform(0.5, 0.999)
        v = 10.0 ** rng.uniform(1.0, 9.0)
        params = pp.Eip1559Params(
            initial_supply=10.0 ** rng.uniform(0.0, 6.0),
            total_value=v,
            block_subsidy=10.0 ** rng.uniform(-2.0, 2.0),
            burn_per_block=(1.0 - k) * v,
        )
        draws.append((params, pp.simulate(params, 100_000)))
    return draws


def test_criterion_01_alpha_pipeline(pipeline):
    agg, breakdown, alpha = pipeline
    assert agg.emission_factor == pytest.approx(3.712, rel=2e-3)
    assert breakdown.hardware_cost == pytest.approx(650.0)
    assert breakdown.electricity_cost == pytest.approx(330.0, abs=1.0)
    assert breakdown.hardware_emissions == pytest.approx(54.0)
    assert breakdown.electricity_emissions == pytest.approx(1225.0, abs=2.0)
    assert alpha == pytest.approx(1.305, rel=5e-3)
    _ok(1, "aggregate factor 3.712, breakdown {650, 330, 54, 1225}, alpha 1.305")


def test_criterion_02_network_figures(pipeline):
    _, _, alpha = pipeline
    daily = pp.network_emissions(58.91e6, alpha)
    assert daily == pytest.approx(76.89e6, rel=5e-3)
    assert daily * pp.DAYS_PER_YEAR == pytest.approx(28.06e9, rel=5e-3)
    _ok(2, "76.89 kt/day and 28.06 Mt/yr from 58.91 M USD/day")


@pytest.mark.parametrize(
    "gas,cost,impact",
    [
        (450_000, 88.03, 114.90),
        (300_000, 58.69, 76.60),
        (80_000, 15.65, 20.42),
        (100_000, 19.56, 25.54),
    ],
)
def test_criterion_03_transaction_table(gas, cost, impact):
    got = pp.transaction_cost(gas, 61.0, pp.PriceContext(3207.0), 1.305)
    assert got.fee == pytest.approx(cost, rel=5e-3)
    assert got.emissions == pytest.approx(impact, rel=5e-3)
    _ok(3, f"{gas} gas -> ({cost} USD, {impact} kg) within 0.5%")


def test_criterion_04_nft_example(nft_scenario, bundled_series):
    base = pp.evaluate(nft_scenario)
    assert base.total_emissions == pytest.approx(467.29, rel=5e-3)

    offchain = pp.evaluate(pp.apply_mitigations(nft_scenario, offchain_bids=True))
    cut = 1.0 - offchain.total_emissions / base.total_emissions
    assert cut == pytest.approx(0.55, abs=0.01)

    min_gas = pp.evaluate(
        pp.apply_mitigations(nft_scenario, min_gas=True, series=bundled_series)
    )
    cut = 1.0 - min_gas.total_emissions / base.total_emissions
    assert cut == pytest.approx(0.26, abs=0.01)

    all_three = pp.evaluate(
        pp.apply_mitigations(
            nft_scenario,
            offchain_bids=True,
            min_gas=True,
            best_hour=True,
            series=bundled_series,
        )
    )
    assert all_three.total_emissions == pytest.approx(107.37, rel=0.02)
    cut = 1.0 - all_three.total_emissions / base.total_emissions
    assert cut == pytest.approx(0.77, abs=0.01)
    assert all_three.offset_cost == pytest.approx(0.43, abs=0.01)
    _ok(4, "467.29 kg, -55%, -26%, all mitigations 107.37 kg (-77%), offset 0.43")


def test_criterion_05_revenue_headline(mainnet_run, mainnet_legacy_total):
    assert mainnet_legacy_total == pytest.approx(9.9e9, rel=0.05)
    assert mainnet_run.final_revenue == pytest.approx(6.8e9, rel=0.05)
    ratio = mainnet_run.final_revenue / mainnet_legacy_total
    assert abs(ratio - 2.0 / 3.0) <= 0.05
    _ok(5, "legacy 9.9e9 USD, burn regime 6.8e9 USD, ratio about two thirds")


def test_criterion_06_fee_burn_counterfactual():
    delta = pp.fee_burn_delta(pp.MAINNET_MAY2021, 100.0, pp.DEFAULT_HORIZON)
    assert delta.delta_revenue[0] == 0.0
    assert np.all(np.diff(delta.delta_revenue) >= 0.0)
    assert 1.8 <= delta.final_delta <= 2.2
    assert 1.0 <= delta.final_delta <= 10.0
    _ok(6, "100 USD fee: delta 0 at t=0, nondecreasing, final about 2 USD")


def test_criterion_07_closed_forms_match_recurrence(property_draws, mainnet_run):
    for params, run in property_draws:
        analytic = np.array(
            [pp.supply_closed_form(params, float(t)) for t in range(0, 100_001, 10)]
        )
        sampled = run.supply[::10]
        assert np.max(np.abs(analytic - sampled) / sampled) <= 1e-9

    rng = random.Random(1559)
    for k in (0.5, 0.9, 0.99):
        for _ in range(3):
            v = 10.0 ** rng.uniform(2.0, 6.0)
            params = pp.Eip1559Params(
                initial_supply=10.0 ** rng.uniform(0.0, 4.0),
                total_value=v,
                block_subsidy=10.0 ** rng.uniform(-1.0, 1.0),
                burn_per_block=(1.0 - k) * v,
            )
            t = rng.randrange(1, 10_001)
            run = pp.simulate(params, t)
            assert pp.revenue_closed_form(params, t) == pytest.approx(
                run.final_revenue, rel=1e-6
            )

    for t in (1_000, 100_000, pp.DEFAULT_HORIZON):
        continuous = pp.supply_continuous(pp.MAINNET_MAY2021, t)
        assert continuous == pytest.approx(float(mainnet_run.supply[t]), rel=1e-3)
    _ok(7, "supply 1e-9, revenue 1e-6, continuous 1e-3 against the recurrence")


def test_criterion_08_q_digamma_identities():
    for q in (0.5, 0.9, 0.99):
        for x in (0.5, 1.0, 2.5):
            lhs = pp.q_digamma(q, x + 1.0) - pp.q_digamma(q, x)
            rhs = -math.log(q) * q**x / (1.0 - q**x)
            assert lhs == pytest.approx(rhs, rel=1e-10, abs=1e-12)
        grid = [0.25, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0]
        values = [pp.q_digamma(q, x) for x in grid]
        assert all(a < b for a, b in zip(values, values[1:]))
        for x in (0.5, 1.0, 2.5):
            tail, taken = _geometric_ratio_sum(q, q**x)
            deeper, _ = _geometric_ratio_sum(q, q**x, min_terms=2 * taken)
            shallow = -math.log1p(-q) + math.log(q) * tail
            deep = -math.log1p(-q) + math.log(q) * deeper
            assert shallow == pytest.approx(deep, rel=1e-12)
    _ok(8, "forward recurrence 1e-10, monotone in x, truncation stable 1e-12")


def test_criterion_09_basefee_rule_exact():
    state = pp.BaseFeeState(basefee=100.0, target_size=15_000_000)
    assert pp.basefee_next(state, 15_000_000).basefee == 100.0
    assert pp.basefee_next(state, 30_000_000).basefee == 100.0 * 1.125
    assert pp.basefee_next(state, 0).basefee == 100.0 * 0.875
    _ok(9, "at-target fixpoint, x1.125 full block, x0.875 empty block, exact")


def test_criterion_10_value_conservation(property_draws):
    for params, run in property_draws:
        residual = np.abs(run.price * run.supply - params.total_value)
        assert np.max(residual) <= 1e-9 * params.total_value
    _ok(10, "price x supply = V to 1e-9 on every block of every draw")


def test_criterion_11_io_round_trips(tmp_path):
    rng = random.Random(2021)
    base = datetime(2021, 5, 1)
    stamps = [base + timedelta(minutes=i) for i in range(1000)]
    prices = [rng.uniform(0.0, 5000.0) for _ in range(1000)]
    series_path = tmp_path / "series.csv"
    pp.write_series_csv(series_path, "Hour", "Gas Price", zip(stamps, prices))
    back = pp.read_gas_price_csv(series_path)
    for got, want in zip(back.prices, prices):
        assert got == pytest.approx(want, rel=1e-12)
    assert list(back.prices) == prices  # repr round-trip is in fact exact

    blocks = list(range(1000))
    values = [rng.uniform(0.0, 1e10) for _ in range(1000)]
    revenue_path = tmp_path / "revenue.csv"
    pp.write_series_csv(revenue_path, "Block", "Revenue", zip(blocks, values))
    assert revenue_path.read_text().splitlines()[0] == "Block;Revenue"
    got_blocks, got_values = pp.read_revenue_csv(revenue_path)
    assert got_blocks.tolist() == blocks
    assert got_values.tolist() == values

    assert series_path.read_text().splitlines()[0] == "Hour;Gas Price"
    bundled = pp.load_bundled_series()
    emitted = tmp_path / "bundled.csv"
    pp.write_series_csv(
        emitted, "Hour", "Gas Price", zip(bundled.timestamps, bundled.prices)
    )
    from importlib import resources

    original = (
        resources.files("powprint") / "data" / pp.BUNDLED_GAS_PRICES
    ).read_text()
    assert emitted.read_text() == original
    _ok(11, "write-read identity on 1000 random rows; headers bit-exact")
