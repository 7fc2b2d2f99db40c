"""What-if reports for NFT lifecycles: minting, bidding, selling, moving.

A scenario is a bag of transaction templates with counts, a gas pricing
strategy, and the market context needed to turn gas into dollars and
dollars into kgCO2eq.  Strategies other than a fixed price draw on a
:class:`GasPriceSeries`, a day of timestamped *minimum required* gas
price observations: paying the minimum required price at an arbitrary
time costs its daily average, and executing inside the cheapest hour
costs that hour's mean.

Mitigations are expressed as scenario transforms, so the mitigated and
unmitigated variants can be evaluated side by side and compared at full
precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace
from datetime import datetime

from .errors import DomainError
from .network import PriceContext, transaction_cost

#: Default carbon offset price, USD per kgCO2eq.
DEFAULT_OFFSET_RATE = 0.004

#: Passenger-car emissions used for the optional narrative, kgCO2eq per mile.
KG_PER_MILE = 0.404

#: Gas consumption of the usual lifecycle steps of a token.
MINT_GAS = 450_000
BUY_GAS = 300_000
TRANSFER_GAS = 80_000
BID_GAS = 100_000

BID_KIND = "bid"


@dataclass(frozen=True, slots=True)
class TxTemplate:
    """A kind of transaction and the gas it consumes.

    ``kind`` is a free label; the value ``"bid"`` is special in that it
    can be moved off-chain (see :func:`evaluate`).
    """

    kind: str
    gas: int

    def __post_init__(self) -> None:
        if not self.kind:
            raise DomainError("template kind must be a nonempty label")
        if self.gas <= 0:
            raise DomainError(f"{self.kind}: gas must be > 0, got {self.gas}")


MINT = TxTemplate("mint", MINT_GAS)
BUY = TxTemplate("buy", BUY_GAS)
TRANSFER = TxTemplate("transfer", TRANSFER_GAS)
BID = TxTemplate(BID_KIND, BID_GAS)

#: Templates addressable by name in scenario files.
STANDARD_TEMPLATES = {t.kind: t for t in (MINT, BID, BUY, TRANSFER)}


@dataclass(frozen=True, slots=True)
class GasPriceSeries:
    """Timestamped gas price observations over (typically) one day.

    Timestamps are minutes-resolution wall clock, strictly increasing;
    prices are Gwei, nonnegative.  The bundled sample holds the minimum
    price required for inclusion through a day, which is what the
    non-fixed pricing strategies expect.
    """

    timestamps: tuple[datetime, ...]
    prices: tuple[float, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.timestamps, tuple):
            object.__setattr__(self, "timestamps", tuple(self.timestamps))
        if not isinstance(self.prices, tuple):
            object.__setattr__(self, "prices", tuple(self.prices))
        if len(self.timestamps) != len(self.prices):
            raise DomainError(
                f"{len(self.timestamps)} timestamps vs {len(self.prices)} prices"
            )
        for earlier, later in zip(self.timestamps, self.timestamps[1:]):
            if later <= earlier:
                raise DomainError(
                    f"timestamps must be strictly increasing; "
                    f"{later:%Y-%m-%d %H:%M} follows {earlier:%Y-%m-%d %H:%M}"
                )
        for ts, price in zip(self.timestamps, self.prices):
            if not math.isfinite(price) or price < 0.0:
                raise DomainError(
                    f"price at {ts:%Y-%m-%d %H:%M} must be >= 0, got {price}"
                )

    def __len__(self) -> int:
        return len(self.prices)


@dataclass(frozen=True, slots=True)
class SeriesStats:
    """Summary of a price series: mean, floor, cheapest hour of day."""

    average: float
    minimum: float
    best_hour: int


def series_stats(series: GasPriceSeries) -> SeriesStats:
    """Average, global minimum and the hour-of-day with the lowest mean.

    Ties between hours go to the earliest hour.  Raises
    :class:`DomainError` on an empty series.
    """
    if len(series) == 0:
        raise DomainError("cannot summarize an empty price series")
    by_hour: dict[int, list[float]] = {}
    for ts, price in zip(series.timestamps, series.prices):
        by_hour.setdefault(ts.hour, []).append(price)
    hour_means = {hour: sum(vals) / len(vals) for hour, vals in by_hour.items()}
    best = min(sorted(hour_means), key=lambda h: hour_means[h])
    return SeriesStats(
        average=sum(series.prices) / len(series),
        minimum=min(series.prices),
        best_hour=best,
    )


@dataclass(frozen=True, slots=True)
class FixedPrice:
    """Always pay ``gwei``."""

    gwei: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.gwei) or self.gwei < 0.0:
            raise DomainError(f"fixed gas price must be >= 0, got {self.gwei}")


@dataclass(frozen=True, slots=True)
class DailyAverage:
    """Pay the going rate, i.e. the mean of the observed price series."""

    series: GasPriceSeries


@dataclass(frozen=True, slots=True)
class DailyMinimum:
    """Pay only the minimum price required for inclusion.

    The series holds that minimum through the day; executing at an
    arbitrary time then costs its daily average.
    """

    series: GasPriceSeries


@dataclass(frozen=True, slots=True)
class BestHour:
    """Execute during the cheapest hour and pay that hour's mean price."""

    series: GasPriceSeries


GasPricingStrategy = FixedPrice | DailyAverage | DailyMinimum | BestHour


def effective_gas_price(strategy: GasPricingStrategy) -> float:
    """Resolve a pricing strategy to a single Gwei figure."""
    if isinstance(strategy, FixedPrice):
        return strategy.gwei
    if isinstance(strategy, (DailyAverage, DailyMinimum)):
        return series_stats(strategy.series).average
    if isinstance(strategy, BestHour):
        stats = series_stats(strategy.series)
        hour_prices = [
            price
            for ts, price in zip(strategy.series.timestamps, strategy.series.prices)
            if ts.hour == stats.best_hour
        ]
        return sum(hour_prices) / len(hour_prices)
    raise DomainError(f"unknown pricing strategy {strategy!r}")


@dataclass(frozen=True, slots=True)
class ScenarioItem:
    """A template repeated ``count`` times."""

    template: TxTemplate
    count: int

    def __post_init__(self) -> None:
        if self.count < 0:
            raise DomainError(
                f"{self.template.kind}: count must be >= 0, got {self.count}"
            )


@dataclass(frozen=True, slots=True)
class Scenario:
    """Everything needed to price a basket of transactions."""

    items: tuple[ScenarioItem, ...]
    pricing: GasPricingStrategy
    ctx: PriceContext
    emission_factor: float
    bids_on_chain: bool = True

    def __post_init__(self) -> None:
        if not isinstance(self.items, tuple):
            object.__setattr__(self, "items", tuple(self.items))
        if not math.isfinite(self.emission_factor) or self.emission_factor < 0.0:
            raise DomainError(
                f"emission_factor must be >= 0, got {self.emission_factor}"
            )


@dataclass(frozen=True, slots=True)
class ReportLine:
    """Fee and emissions contributed by one scenario item."""

    kind: str
    count: int
    gas_each: int  # gas billed per transaction; zero for off-chain bids
    fee: float
    emissions: float


@dataclass(frozen=True, slots=True)
class ScenarioReport:
    """Per-item and total costs of a scenario.

    ``total_fee``/``total_emissions`` are sums of the lines in item
    order; ``offset_cost`` prices the total emissions at the offset rate
    the report was built with.
    """

    lines: tuple[ReportLine, ...]
    gas_price: float
    total_fee: float
    total_emissions: float
    offset_rate: float
    offset_cost: float

    @property
    def drive_miles(self) -> float:
        """Passenger-car miles with the same footprint (narrative aid)."""
        return self.total_emissions / KG_PER_MILE


def offset_cost(emissions: float, rate: float) -> float:
    """USD needed to offset ``emissions`` kgCO2eq at ``rate`` USD/kg."""
    if not math.isfinite(emissions) or emissions < 0.0:
        raise DomainError(f"emissions must be >= 0, got {emissions}")
    if not math.isfinite(rate) or rate < 0.0:
        raise DomainError(f"offset rate must be >= 0, got {rate}")
    return emissions * rate


def evaluate(
    scenario: Scenario, offset_rate: float = DEFAULT_OFFSET_RATE
) -> ScenarioReport:
    """Price every item of a scenario and total the results.

    The pricing strategy is resolved once; every transaction in the
    scenario pays the same effective gas price.  Bid items are billed
    zero gas when ``bids_on_chain`` is false (the bids then live on an
    off-chain marketplace).  Totals are exact sums of the per-line
    values in item order.
    """
    price = effective_gas_price(scenario.pricing)
    lines = []
    total_fee = 0.0
    total_emissions = 0.0
    for item in scenario.items:
        gas_each = item.template.gas
        if item.template.kind == BID_KIND and not scenario.bids_on_chain:
            gas_each = 0
        cost = transaction_cost(
            gas_each, price, scenario.ctx, scenario.emission_factor
        )
        line = ReportLine(
            kind=item.template.kind,
            count=item.count,
            gas_each=gas_each,
            fee=cost.fee * item.count,
            emissions=cost.emissions * item.count,
        )
        lines.append(line)
        total_fee += line.fee
        total_emissions += line.emissions
    return ScenarioReport(
        lines=tuple(lines),
        gas_price=price,
        total_fee=total_fee,
        total_emissions=total_emissions,
        offset_rate=offset_rate,
        offset_cost=offset_cost(total_emissions, offset_rate),
    )


def apply_mitigations(
    scenario: Scenario,
    *,
    offchain_bids: bool = False,
    min_gas: bool = False,
    best_hour: bool = False,
    series: GasPriceSeries | None = None,
) -> Scenario:
    """Return a scenario with the chosen mitigations applied.

    ``min_gas`` switches pricing to :class:`DailyMinimum` and
    ``best_hour`` to :class:`BestHour`; both need a price series, taken
    from the explicit ``series`` argument or from the scenario's current
    strategy if that one is series-backed.  When both are requested,
    best-hour execution wins (it subsumes paying the minimum).
    ``offchain_bids`` moves bid items off-chain.
    """
    result = scenario
    if offchain_bids:
        result = replace(result, bids_on_chain=False)
    if min_gas or best_hour:
        backing = series
        if backing is None and not isinstance(result.pricing, FixedPrice):
            backing = result.pricing.series
        if backing is None:
            raise DomainError(
                "min_gas/best_hour need a gas price series; the scenario "
                "uses fixed pricing and no series was given"
            )
        strategy = BestHour(backing) if best_hour else DailyMinimum(backing)
        result = replace(result, pricing=strategy)
    return result
