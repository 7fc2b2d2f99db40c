"""Network-wide and per-transaction impact under first-price-auction fees.

Miners are paid block rewards plus the gas fees of the transactions they
include.  With an emissions-per-dollar factor in hand (see
:mod:`powprint.factors`) any revenue figure converts directly into
kgCO2eq, and a single transaction's fee gives a lower bound on the
emissions it is responsible for.

It is a lower bound because a fee entering the auction also lifts the
price everyone else pays; that second-order term is deliberately left
out, so true attribution is at least the figure computed here.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import DomainError

#: Days used to annualize a per-day figure.
DAYS_PER_YEAR = 365


@dataclass(frozen=True, slots=True)
class PriceContext:
    """Exchange rate context. ``eth_price`` is USD per Ether."""

    eth_price: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.eth_price) or self.eth_price <= 0.0:
            raise DomainError(f"eth_price must be > 0, got {self.eth_price}")

    @property
    def gwei_price(self) -> float:
        """USD per Gwei, exactly ``eth_price * 1e-9``."""
        return self.eth_price * 1e-9


@dataclass(frozen=True, slots=True)
class TxCost:
    """Fee (USD) and attributed emissions (kgCO2eq) of one transaction."""

    fee: float
    emissions: float


def expected_miner_revenue(
    block_reward_value: float,
    fees_value: float,
    own_hash: float,
    total_hash: float,
) -> float:
    """Expected revenue share of a miner holding part of the hash rate.

    Block finding is a lottery weighted by hash rate, so a miner with
    ``own_hash`` out of ``total_hash`` expects that fraction of the pot
    ``block_reward_value + fees_value`` (both in USD).
    """
    for name, value in (
        ("block_reward_value", block_reward_value),
        ("fees_value", fees_value),
        ("own_hash", own_hash),
    ):
        if not math.isfinite(value) or value < 0.0:
            raise DomainError(f"{name} must be >= 0, got {value}")
    if not math.isfinite(total_hash) or total_hash <= 0.0:
        raise DomainError(f"total_hash must be > 0, got {total_hash}")
    if own_hash > total_hash:
        raise DomainError(
            f"own_hash {own_hash} exceeds total_hash {total_hash}"
        )
    return (block_reward_value + fees_value) * (own_hash / total_hash)


def network_emissions(revenue: float, emissions_factor: float) -> float:
    """Convert miner revenue (USD) into emissions (kgCO2eq).

    ``revenue`` is typically a per-day figure; multiply the result by
    :data:`DAYS_PER_YEAR` for an annual estimate.
    """
    if not math.isfinite(revenue) or revenue < 0.0:
        raise DomainError(f"revenue must be >= 0, got {revenue}")
    if not math.isfinite(emissions_factor) or emissions_factor < 0.0:
        raise DomainError(f"emissions_factor must be >= 0, got {emissions_factor}")
    return revenue * emissions_factor


def tx_fee(gas: float, gas_price_gwei: float, ctx: PriceContext) -> float:
    """USD fee of a transaction: gas used times gas price times Gwei rate."""
    if not math.isfinite(gas) or gas < 0.0:
        raise DomainError(f"gas must be >= 0, got {gas}")
    if not math.isfinite(gas_price_gwei) or gas_price_gwei < 0.0:
        raise DomainError(f"gas_price_gwei must be >= 0, got {gas_price_gwei}")
    return gas * gas_price_gwei * ctx.gwei_price


def tx_emissions_lower_bound(
    gas: float,
    gas_price_gwei: float,
    ctx: PriceContext,
    emissions_factor: float,
) -> float:
    """Lower bound on a transaction's emissions, kgCO2eq.

    The fee the transaction pays becomes miner revenue, and revenue maps
    to emissions through the factor.  Auction spillover onto other
    transactions' prices is ignored, hence a lower bound.
    """
    if not math.isfinite(emissions_factor) or emissions_factor < 0.0:
        raise DomainError(f"emissions_factor must be >= 0, got {emissions_factor}")
    return emissions_factor * tx_fee(gas, gas_price_gwei, ctx)


def transaction_cost(
    gas: float,
    gas_price_gwei: float,
    ctx: PriceContext,
    emissions_factor: float,
) -> TxCost:
    """Fee and emissions bound for one transaction, as a pair."""
    fee = tx_fee(gas, gas_price_gwei, ctx)
    if not math.isfinite(emissions_factor) or emissions_factor < 0.0:
        raise DomainError(f"emissions_factor must be >= 0, got {emissions_factor}")
    return TxCost(fee=fee, emissions=emissions_factor * fee)
