"""Emissions-per-dollar factors for proof-of-work mining.

The model splits a miner's spending into hardware and electricity and
attaches an emission factor (kgCO2eq per USD) to each part:

    electricity factor = CIPK / electricity price      (per region)
    hardware factor    = embodied emissions / unit price

Blending the two with the cost shares gives a single factor for total
spend.  Because mining is roughly a zero-margin business, revenue is a
usable proxy for cost, so the blended factor also converts network
revenue into network emissions.

Regional inputs are hash-share weighted: a region hosting half the hash
rate contributes half the weight to every aggregate mean.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

#: Hours in the assumed two-year useful life of a mining GPU.
DEFAULT_LIFETIME_HOURS = 2 * 365 * 24

# A region set may carry rounded shares; we accept a small imbalance and
# renormalize, but reject anything that looks like missing data.
_SHARE_SUM_MIN = 0.98
_SHARE_SUM_MAX = 1.02


def _require_finite(value: float, what: str) -> None:
    if not math.isfinite(value):
        raise DomainError(f"{what} must be finite, got {value!r}")


@dataclass(frozen=True, slots=True)
class RegionProfile:
    """Electricity price and carbon intensity of one mining region.

    Attributes
    ----------
    name:
        Label for the region, e.g. ``"Europe"``.
    hash_share:
        Fraction of the network hash rate located in the region, in [0, 1].
    electricity_price:
        Average industrial electricity price in USD per kWh, > 0.
    cipk:
        Carbon intensity per kWh of the regional mix, kgCO2eq/kWh, >= 0.
    """

    name: str
    hash_share: float
    electricity_price: float
    cipk: float

    def __post_init__(self) -> None:
        for field in ("hash_share", "electricity_price", "cipk"):
            _require_finite(getattr(self, field), f"{self.name}: {field}")
        if not 0.0 <= self.hash_share <= 1.0:
            raise DomainError(
                f"{self.name}: hash_share must lie in [0, 1], got {self.hash_share}"
            )
        if self.electricity_price <= 0.0:
            raise DomainError(
                f"{self.name}: electricity_price must be > 0, got {self.electricity_price}"
            )
        if self.cipk < 0.0:
            raise DomainError(f"{self.name}: cipk must be >= 0, got {self.cipk}")

    @property
    def electricity_factor(self) -> float:
        """Regional emissions per electricity dollar, kgCO2eq/USD."""
        return regional_electricity_factor(self.electricity_price, self.cipk)


@dataclass(frozen=True, slots=True)
class RegionSet:
    """A group of regions covering (approximately) the whole network."""

    regions: tuple[RegionProfile, ...]

    def __post_init__(self) -> None:
        if not isinstance(self.regions, tuple):
            object.__setattr__(self, "regions", tuple(self.regions))
        if not self.regions:
            raise DomainError("region set must contain at least one region")
        total = sum(r.hash_share for r in self.regions)
        if not _SHARE_SUM_MIN <= total <= _SHARE_SUM_MAX:
            raise DomainError(
                f"hash_share sum {total:.4g} outside "
                f"[{_SHARE_SUM_MIN}, {_SHARE_SUM_MAX}]; shares must cover the network"
            )

    def __iter__(self):
        return iter(self.regions)

    def __len__(self) -> int:
        return len(self.regions)


@dataclass(frozen=True, slots=True)
class GpuProfile:
    """Purchase price, performance and footprint of one mining GPU model.

    ``hash_rate`` is in MH/s, ``power_draw`` in watts, ``embodied_emissions``
    in kgCO2eq for manufacturing, and ``lifetime`` in hours of use.
    """

    name: str
    unit_price: float
    hash_rate: float
    power_draw: float
    embodied_emissions: float
    lifetime: float = DEFAULT_LIFETIME_HOURS

    def __post_init__(self) -> None:
        for field in ("unit_price", "hash_rate", "power_draw", "lifetime"):
            value = getattr(self, field)
            _require_finite(value, f"{self.name}: {field}")
            if value <= 0.0:
                raise DomainError(f"{self.name}: {field} must be > 0, got {value}")
        _require_finite(self.embodied_emissions, f"{self.name}: embodied_emissions")
        if self.embodied_emissions < 0.0:
            raise DomainError(
                f"{self.name}: embodied_emissions must be >= 0, "
                f"got {self.embodied_emissions}"
            )

    @property
    def lifetime_energy_kwh(self) -> float:
        """Electricity drawn over the full lifetime, kWh."""
        return self.power_draw * self.lifetime / 1000.0


@dataclass(frozen=True, slots=True)
class RegionAggregate:
    """Hash-share weighted means over a region set."""

    electricity_price: float  # USD/kWh
    cipk: float  # kgCO2eq/kWh
    emission_factor: float  # kgCO2eq per electricity USD


@dataclass(frozen=True, slots=True)
class CostEmissionBreakdown:
    """Lifetime cost and emissions of a mining rig, split by origin.

    Costs are USD, emissions kgCO2eq.  The hardware part is the purchase
    price and its manufacturing footprint; the electricity part is the
    lifetime energy bill and the emissions from generating that energy.
    """

    hardware_cost: float
    electricity_cost: float
    hardware_emissions: float
    electricity_emissions: float

    def __post_init__(self) -> None:
        for field in (
            "hardware_cost",
            "electricity_cost",
            "hardware_emissions",
            "electricity_emissions",
        ):
            value = getattr(self, field)
            _require_finite(value, field)
            if value < 0.0:
                raise DomainError(f"{field} must be >= 0, got {value}")

    @property
    def total_cost(self) -> float:
        return self.hardware_cost + self.electricity_cost

    @property
    def total_emissions(self) -> float:
        return self.hardware_emissions + self.electricity_emissions

    @property
    def hardware_cost_share(self) -> float:
        """Fraction of total cost spent on hardware."""
        total = self.total_cost
        if total <= 0.0:
            raise DomainError("cost breakdown has zero total cost")
        return self.hardware_cost / total


def regional_electricity_factor(electricity_price: float, cipk: float) -> float:
    """Emissions bought per electricity dollar in one region, kgCO2eq/USD.

    A dollar buys ``1 / price`` kWh, each carrying ``cipk`` kg, so the
    factor is simply ``cipk / price``.
    """
    _require_finite(electricity_price, "electricity_price")
    _require_finite(cipk, "cipk")
    if electricity_price <= 0.0:
        raise DomainError(f"electricity_price must be > 0, got {electricity_price}")
    if cipk < 0.0:
        raise DomainError(f"cipk must be >= 0, got {cipk}")
    return cipk / electricity_price


def aggregate_regions(regions: RegionSet) -> RegionAggregate:
    """Reduce a region set to hash-share weighted means.

    Shares are renormalized to sum to one first, so slightly unbalanced
    inputs (rounded survey data) do not skew the result.  The aggregate
    emission factor is the weighted mean of the per-region factors, not
    the ratio of the mean CIPK to the mean price; each region converts
    its own dollars at its own rate, and the shares say how many of the
    network's dollars are spent where.
    """
    if not isinstance(regions, RegionSet):
        regions = RegionSet(tuple(regions))
    total_share = sum(r.hash_share for r in regions)
    mean_price = sum(r.hash_share * r.electricity_price for r in regions) / total_share
    mean_cipk = sum(r.hash_share * r.cipk for r in regions) / total_share
    mean_factor = (
        sum(r.hash_share * r.electricity_factor for r in regions) / total_share
    )
    return RegionAggregate(
        electricity_price=mean_price, cipk=mean_cipk, emission_factor=mean_factor
    )


def gpu_breakdown(
    gpu: GpuProfile, electricity_price: float, emission_factor: float
) -> CostEmissionBreakdown:
    """Lifetime cost/emission split for one GPU at a given power market.

    Parameters
    ----------
    gpu:
        The hardware profile.
    electricity_price:
        USD per kWh paid for power, > 0.
    emission_factor:
        kgCO2eq per electricity USD (see :func:`regional_electricity_factor`
        or the aggregate over a region set).
    """
    _require_finite(emission_factor, "emission_factor")
    if electricity_price <= 0.0:
        raise DomainError(f"electricity_price must be > 0, got {electricity_price}")
    if emission_factor < 0.0:
        raise DomainError(f"emission_factor must be >= 0, got {emission_factor}")
    electricity_cost = gpu.lifetime_energy_kwh * electricity_price
    return CostEmissionBreakdown(
        hardware_cost=gpu.unit_price,
        electricity_cost=electricity_cost,
        hardware_emissions=gpu.embodied_emissions,
        electricity_emissions=electricity_cost * emission_factor,
    )


def emissions_per_dollar(breakdown: CostEmissionBreakdown) -> float:
    """Blend hardware and electricity factors into one kgCO2eq/USD figure.

    Equals total emissions over total cost, which is the same thing as
    weighting each component factor by its cost share.
    """
    total = breakdown.total_cost
    if total <= 0.0:
        raise DomainError("cost breakdown has zero total cost")
    return breakdown.total_emissions / total
