"""NFT lifecycle scenarios: pricing strategies, mitigations, offsets."""

from datetime import datetime, timedelta

import pytest
from hypothesis import given, strategies as st

from powprint import (
    BID,
    BUY,
    BestHour,
    DailyAverage,
    DailyMinimum,
    DomainError,
    FixedPrice,
    GasPriceSeries,
    KG_PER_MILE,
    MINT,
    PriceContext,
    Scenario,
    ScenarioItem,
    TRANSFER,
    TxTemplate,
    apply_mitigations,
    effective_gas_price,
    evaluate,
    offset_cost,
    series_stats,
)

CTX = PriceContext(3207.0)
ALPHA = 1.305


def make_series(hour_price_pairs):
    base = datetime(2021, 5, 1)
    stamps = []
    prices = []
    for i, (hour, price) in enumerate(hour_price_pairs):
        stamps.append(base.replace(hour=hour, minute=i % 60))
        prices.append(price)
    return GasPriceSeries(tuple(stamps), tuple(prices))


def nft_items():
    return (
        ScenarioItem(MINT, 1),
        ScenarioItem(BID, 10),
        ScenarioItem(BUY, 1),
        ScenarioItem(TRANSFER, 1),
    )


@st.composite
def random_series(draw):
    prices = draw(
        st.lists(
            st.floats(min_value=0.0, max_value=500.0), min_size=1, max_size=48
        )
    )
    base = datetime(2021, 5, 1)
    stamps = tuple(base + timedelta(minutes=10 * i) for i in range(len(prices)))
    return GasPriceSeries(stamps, tuple(prices))


# --- templates and series ----------------------------------------------------


def test_standard_template_gas():
    assert MINT.gas == 450_000
    assert BUY.gas == 300_000
    assert TRANSFER.gas == 80_000
    assert BID.gas == 100_000


def test_template_validation():
    with pytest.raises(DomainError):
        TxTemplate("", 100)
    with pytest.raises(DomainError):
        TxTemplate("lazy-mint", 0)


def test_series_rejects_disorder_and_negatives():
    base = datetime(2021, 5, 1, 12, 0)
    with pytest.raises(DomainError):
        GasPriceSeries((base, base), (10.0, 11.0))
    with pytest.raises(DomainError):
        GasPriceSeries((base,), (-1.0,))


# --- series_stats ------------------------------------------------------------


def test_stats_constant_series():
    series = make_series([(7, 50.0), (7, 50.0), (7, 50.0)])
    stats = series_stats(series)
    assert stats.average == 50.0
    assert stats.minimum == 50.0
    assert stats.best_hour == 7


def test_stats_two_samples():
    series = make_series([(10, 30.0), (17, 20.0)])
    stats = series_stats(series)
    assert stats.average == pytest.approx(25.0)
    assert stats.minimum == 20.0
    assert stats.best_hour == 17


def test_stats_tie_goes_to_earliest_hour():
    series = make_series([(3, 10.0), (5, 10.0)])
    assert series_stats(series).best_hour == 3


def test_stats_empty_series_is_error():
    with pytest.raises(DomainError):
        series_stats(GasPriceSeries((), ()))


def test_stats_bundled_daily_average(bundled_series):
    stats = series_stats(bundled_series)
    assert stats.average == pytest.approx(45.20, abs=0.5)
    assert stats.best_hour == 17


@given(series=random_series())
def test_stats_ordering_invariant(series):
    stats = series_stats(series)
    best_mean = effective_gas_price(BestHour(series))
    assert stats.minimum <= best_mean + 1e-12
    assert best_mean <= stats.average + 1e-12


# --- effective_gas_price -----------------------------------------------------


def test_effective_price_fixed():
    assert effective_gas_price(FixedPrice(61.0)) == 61.0


def test_effective_price_series_strategies():
    series = make_series([(10, 30.0), (10, 34.0), (17, 20.0)])
    assert effective_gas_price(DailyAverage(series)) == pytest.approx(28.0)
    assert effective_gas_price(DailyMinimum(series)) == pytest.approx(28.0)
    assert effective_gas_price(BestHour(series)) == pytest.approx(20.0)


def test_effective_price_empty_series_is_error():
    empty = GasPriceSeries((), ())
    with pytest.raises(DomainError):
        effective_gas_price(DailyAverage(empty))


# --- evaluate ----------------------------------------------------------------


def test_evaluate_reference_total(nft_scenario):
    report = evaluate(nft_scenario)
    assert report.total_emissions == pytest.approx(467.29, rel=5e-3)
    assert report.gas_price == 61.0


def test_evaluate_single_mint():
    scenario = Scenario(
        items=(ScenarioItem(MINT, 1),),
        pricing=FixedPrice(61.0),
        ctx=CTX,
        emission_factor=ALPHA,
    )
    report = evaluate(scenario)
    assert report.total_fee == pytest.approx(88.03, rel=5e-3)
    assert report.total_emissions == pytest.approx(114.90, rel=5e-3)


def test_evaluate_empty_scenario():
    scenario = Scenario(
        items=(), pricing=FixedPrice(61.0), ctx=CTX, emission_factor=ALPHA
    )
    report = evaluate(scenario)
    assert report.total_fee == 0.0
    assert report.total_emissions == 0.0
    assert report.offset_cost == 0.0


def test_evaluate_offchain_bids_are_free(nft_scenario):
    from dataclasses import replace

    offchain = replace(nft_scenario, bids_on_chain=False)
    report = evaluate(offchain)
    bid_line = next(line for line in report.lines if line.kind == "bid")
    assert bid_line.gas_each == 0
    assert bid_line.fee == 0.0
    assert bid_line.emissions == 0.0


def test_evaluate_totals_are_exact_sums(nft_scenario):
    report = evaluate(nft_scenario)
    fee = 0.0
    emissions = 0.0
    for line in report.lines:
        fee += line.fee
        emissions += line.emissions
    assert report.total_fee == fee
    assert report.total_emissions == emissions


@given(scale=st.floats(min_value=0.1, max_value=10.0))
def test_evaluate_homogeneous_in_each_price_input(scale):
    items = (ScenarioItem(MINT, 2), ScenarioItem(BID, 3))
    base = Scenario(items, FixedPrice(61.0), CTX, ALPHA)
    ref = evaluate(base)

    in_alpha = evaluate(Scenario(items, FixedPrice(61.0), CTX, ALPHA * scale))
    assert in_alpha.total_emissions == pytest.approx(
        ref.total_emissions * scale, rel=1e-12
    )
    assert in_alpha.total_fee == pytest.approx(ref.total_fee, rel=1e-12)

    in_eth = evaluate(
        Scenario(items, FixedPrice(61.0), PriceContext(3207.0 * scale), ALPHA)
    )
    assert in_eth.total_emissions == pytest.approx(
        ref.total_emissions * scale, rel=1e-12
    )

    in_gas = evaluate(Scenario(items, FixedPrice(61.0 * scale), CTX, ALPHA))
    assert in_gas.total_emissions == pytest.approx(
        ref.total_emissions * scale, rel=1e-12
    )


def test_report_drive_miles(nft_scenario):
    report = evaluate(nft_scenario)
    assert report.drive_miles == report.total_emissions / KG_PER_MILE
    assert report.drive_miles == pytest.approx(1157.0, rel=5e-3)


# --- apply_mitigations -------------------------------------------------------


def test_offchain_bids_reduction(nft_scenario):
    base = evaluate(nft_scenario)
    mitigated = evaluate(apply_mitigations(nft_scenario, offchain_bids=True))
    cut = 1.0 - mitigated.total_emissions / base.total_emissions
    assert cut == pytest.approx(0.55, abs=0.01)


def test_min_gas_reduction(nft_scenario, bundled_series):
    base = evaluate(nft_scenario)
    mitigated = evaluate(
        apply_mitigations(nft_scenario, min_gas=True, series=bundled_series)
    )
    cut = 1.0 - mitigated.total_emissions / base.total_emissions
    assert cut == pytest.approx(0.26, abs=0.01)


def test_all_mitigations_reference(nft_scenario, bundled_series):
    base = evaluate(nft_scenario)
    mitigated = evaluate(
        apply_mitigations(
            nft_scenario,
            offchain_bids=True,
            min_gas=True,
            best_hour=True,
            series=bundled_series,
        )
    )
    assert mitigated.total_emissions == pytest.approx(107.37, rel=0.02)
    cut = 1.0 - mitigated.total_emissions / base.total_emissions
    assert cut == pytest.approx(0.77, abs=0.01)


def test_best_hour_wins_over_min_gas(nft_scenario, bundled_series):
    mitigated = apply_mitigations(
        nft_scenario, min_gas=True, best_hour=True, series=bundled_series
    )
    assert isinstance(mitigated.pricing, BestHour)


def test_series_backed_strategy_supplies_its_own_series(bundled_series):
    scenario = Scenario(
        items=nft_items(),
        pricing=DailyAverage(bundled_series),
        ctx=CTX,
        emission_factor=ALPHA,
    )
    mitigated = apply_mitigations(scenario, best_hour=True)
    assert isinstance(mitigated.pricing, BestHour)
    assert mitigated.pricing.series is bundled_series


def test_min_gas_without_series_is_error(nft_scenario):
    with pytest.raises(DomainError, match="series"):
        apply_mitigations(nft_scenario, min_gas=True)


@given(series=random_series(), fixed=st.floats(min_value=1.0, max_value=500.0))
def test_mitigations_never_increase_when_series_is_cheaper(series, fixed):
    scenario = Scenario(nft_items(), FixedPrice(fixed), CTX, ALPHA)
    base = evaluate(scenario)
    mitigated = evaluate(apply_mitigations(scenario, min_gas=True, series=series))
    if effective_gas_price(DailyMinimum(series)) <= fixed:
        assert mitigated.total_emissions <= base.total_emissions + 1e-9


@given(series=random_series())
def test_offchain_bids_never_increase_totals(series):
    scenario = Scenario(nft_items(), DailyAverage(series), CTX, ALPHA)
    base = evaluate(scenario)
    mitigated = evaluate(apply_mitigations(scenario, offchain_bids=True))
    assert mitigated.total_emissions <= base.total_emissions + 1e-12
    assert mitigated.total_fee <= base.total_fee + 1e-12


# --- offset_cost -------------------------------------------------------------


def test_offset_reference_values():
    assert offset_cost(107.37, 0.004) == pytest.approx(0.43, abs=0.01)
    assert offset_cost(467.29, 0.004) == pytest.approx(1.87, abs=0.01)
    assert offset_cost(0.0, 123.0) == 0.0


def test_offset_rejects_negatives():
    with pytest.raises(DomainError):
        offset_cost(-1.0, 0.004)
    with pytest.raises(DomainError):
        offset_cost(1.0, -0.004)


def test_report_offset_uses_requested_rate(nft_scenario):
    report = evaluate(nft_scenario, offset_rate=0.01)
    assert report.offset_rate == 0.01
    assert report.offset_cost == pytest.approx(report.total_emissions * 0.01)
