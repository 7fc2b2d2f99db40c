"""Carbon footprint models for proof-of-work blockchains.

The package estimates how many kgCO2eq hide behind a dollar of miner
revenue, converts network and per-transaction fee flows into emissions,
simulates what fee burning does to supply, price and miner income, and
evaluates NFT lifecycle scenarios together with their mitigation
options.  The ``powprint`` command exposes everything on the command
line.
"""

from .errors import DomainError, FormatError
from .factors import (
    CostEmissionBreakdown,
    GpuProfile,
    RegionAggregate,
    RegionProfile,
    RegionSet,
    aggregate_regions,
    emissions_per_dollar,
    gpu_breakdown,
    regional_electricity_factor,
)
from .network import (
    DAYS_PER_YEAR,
    PriceContext,
    TxCost,
    expected_miner_revenue,
    network_emissions,
    transaction_cost,
    tx_emissions_lower_bound,
    tx_fee,
)
from .eip1559 import (
    BaseFeeState,
    DEFAULT_HORIZON,
    Eip1559Params,
    MAINNET_MAY2021,
    RevenueDelta,
    SupplyTrajectory,
    basefee_next,
    fee_burn_delta,
    legacy_revenue_total,
    q_digamma,
    revenue_closed_form,
    simulate,
    supply_closed_form,
    supply_continuous,
)
from .scenario import (
    BestHour,
    BID,
    BUY,
    DailyAverage,
    DailyMinimum,
    DEFAULT_OFFSET_RATE,
    FixedPrice,
    GasPriceSeries,
    GasPricingStrategy,
    KG_PER_MILE,
    MINT,
    ReportLine,
    Scenario,
    ScenarioItem,
    ScenarioReport,
    SeriesStats,
    STANDARD_TEMPLATES,
    TRANSFER,
    TxTemplate,
    apply_mitigations,
    effective_gas_price,
    evaluate,
    offset_cost,
    series_stats,
)
from .formats import (
    BUNDLED_EIP1559,
    BUNDLED_GAS_PRICES,
    BUNDLED_GPU,
    BUNDLED_REGIONS,
    BUNDLED_SCENARIO,
    load_bundled_config,
    load_bundled_series,
    read_config,
    read_gas_price_csv,
    read_revenue_csv,
    write_series_csv,
)

__version__ = "0.1.0"

__all__ = [
    "BID",
    "BUNDLED_EIP1559",
    "BUNDLED_GAS_PRICES",
    "BUNDLED_GPU",
    "BUNDLED_REGIONS",
    "BUNDLED_SCENARIO",
    "BUY",
    "BaseFeeState",
    "BestHour",
    "CostEmissionBreakdown",
    "DAYS_PER_YEAR",
    "DEFAULT_HORIZON",
    "DEFAULT_OFFSET_RATE",
    "DailyAverage",
    "DailyMinimum",
    "DomainError",
    "Eip1559Params",
    "FixedPrice",
    "FormatError",
    "GasPriceSeries",
    "GasPricingStrategy",
    "GpuProfile",
    "KG_PER_MILE",
    "MAINNET_MAY2021",
    "MINT",
    "PriceContext",
    "RegionAggregate",
    "RegionProfile",
    "RegionSet",
    "ReportLine",
    "RevenueDelta",
    "STANDARD_TEMPLATES",
    "Scenario",
    "ScenarioItem",
    "ScenarioReport",
    "SeriesStats",
    "SupplyTrajectory",
    "TRANSFER",
    "TxCost",
    "TxTemplate",
    "aggregate_regions",
    "apply_mitigations",
    "basefee_next",
    "effective_gas_price",
    "emissions_per_dollar",
    "evaluate",
    "expected_miner_revenue",
    "fee_burn_delta",
    "gpu_breakdown",
    "legacy_revenue_total",
    "load_bundled_config",
    "load_bundled_series",
    "network_emissions",
    "offset_cost",
    "q_digamma",
    "read_config",
    "read_gas_price_csv",
    "read_revenue_csv",
    "regional_electricity_factor",
    "revenue_closed_form",
    "series_stats",
    "simulate",
    "supply_closed_form",
    "supply_continuous",
    "transaction_cost",
    "tx_emissions_lower_bound",
    "tx_fee",
    "write_series_csv",
]
