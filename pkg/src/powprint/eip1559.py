"""Supply, price and miner revenue dynamics under fee burning.

The burn mechanism couples Ether supply to fee volume: every block adds
a fixed subsidy ``m`` and burns ``b / P_t`` Ether worth of fees, where
the price comes from a quantity-theory relation ``P_t = V / S_t`` with a
constant total transaction value ``V``.  Substituting the price gives a
linear recurrence for supply,

    S_{t+1} = K * S_t + m,        K = 1 - b / V,

which contracts toward the equilibrium ``m * V / b``.  Miners earn the
subsidy only, so cumulative revenue is ``R_t = m * V * sum(1 / S_j)``
over blocks ``j = 1 .. t``.

Besides the step-by-step simulator this module carries three analytic
companions used to cross-check it: the geometric closed form for the
supply, a q-digamma closed form for cumulative revenue, and the
continuous-time (ODE) supply approximation.  The pre-burn regime and
the block-size feedback rule for the base fee round out the picture.

Units: supply in Ether, ``total_value`` and revenue in USD, gas in gas
units.  Block index 0 is the initial state.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

#: Ethereum mainnet snapshot, May 2021: circulating supply (Ether), daily
#: on-chain transfer value scaled to a velocity of one (USD), block subsidy
#: (Ether) and fee burn per block (USD).
MAINNET_MAY2021: "Eip1559Params"

#: About two months of 15-second blocks, the default simulation span.
DEFAULT_HORIZON = 1_160_000

#: Base fee moves by at most 1/8 of itself per block.
BASEFEE_ADJUSTMENT_DENOMINATOR = 8

# Series evaluation: terms are added until they fall below this relative
# threshold, and parameter sets that would need more than _MAX_SERIES_TERMS
# terms are refused outright (the recurrence handles those fine).
_SERIES_RTOL = 1e-16
_MAX_SERIES_TERMS = 10**9
_SERIES_CHUNK = 1 << 14


@dataclass(frozen=True, slots=True)
class Eip1559Params:
    """Parameters of the burn-regime supply recurrence.

    ``burn_per_block`` may be zero to model a burn-free chain (useful in
    tests; the closed forms fall back to their degenerate limits), but
    must stay below ``total_value`` so the contraction factor is positive.
    """

    initial_supply: float
    total_value: float
    block_subsidy: float
    burn_per_block: float

    def __post_init__(self) -> None:
        for field in ("initial_supply", "total_value", "block_subsidy"):
            value = getattr(self, field)
            if not math.isfinite(value) or value <= 0.0:
                raise DomainError(f"{field} must be > 0, got {value}")
        if not math.isfinite(self.burn_per_block) or self.burn_per_block < 0.0:
            raise DomainError(
                f"burn_per_block must be >= 0, got {self.burn_per_block}"
            )
        if self.burn_per_block >= self.total_value:
            raise DomainError(
                "burn_per_block must be smaller than total_value; "
                f"got {self.burn_per_block} >= {self.total_value}"
            )

    @property
    def decay_factor(self) -> float:
        """Per-block supply contraction factor ``K = 1 - b / V``."""
        return 1.0 - self.burn_per_block / self.total_value

    @property
    def equilibrium_supply(self) -> float:
        """Fixed point ``m * V / b`` the supply converges to (needs b > 0)."""
        if self.burn_per_block == 0.0:
            raise DomainError("no equilibrium without burning (b = 0)")
        return self.block_subsidy * self.total_value / self.burn_per_block


@dataclass(frozen=True)
class SupplyTrajectory:
    """Block-by-block output of :func:`simulate`.

    All arrays share one index: entry ``t`` describes the state after
    block ``t``, with ``t = 0`` the initial state (zero revenue).
    """

    blocks: np.ndarray
    supply: np.ndarray
    price: np.ndarray
    cumulative_revenue: np.ndarray

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def final_supply(self) -> float:
        return float(self.supply[-1])

    @property
    def final_revenue(self) -> float:
        return float(self.cumulative_revenue[-1])


@dataclass(frozen=True)
class RevenueDelta:
    """Cumulative miner-revenue difference caused by burning a fee."""

    blocks: np.ndarray
    delta_revenue: np.ndarray

    def __len__(self) -> int:
        return len(self.blocks)

    @property
    def final_delta(self) -> float:
        return float(self.delta_revenue[-1])


@dataclass(frozen=True, slots=True)
class BaseFeeState:
    """Current base fee (Gwei) and the protocol's target block size (gas)."""

    basefee: float
    target_size: int

    def __post_init__(self) -> None:
        if not math.isfinite(self.basefee) or self.basefee < 0.0:
            raise DomainError(f"basefee must be >= 0, got {self.basefee}")
        if self.target_size <= 0:
            raise DomainError(f"target_size must be > 0, got {self.target_size}")


def _check_horizon(horizon: int) -> int:
    if isinstance(horizon, bool) or not isinstance(horizon, (int, np.integer)):
        raise DomainError(f"horizon must be an integer, got {horizon!r}")
    if horizon < 0:
        raise DomainError(f"horizon must be >= 0, got {horizon}")
    return int(horizon)


def _check_block_index(t: float) -> float:
    if not math.isfinite(t) or t < 0:
        raise DomainError(f"block index must be >= 0, got {t!r}")
    return float(t)


def simulate(params: Eip1559Params, horizon: int) -> SupplyTrajectory:
    """Run the supply recurrence for ``horizon`` blocks.

    Each step applies the per-block supply change ``u = m - (b/V) * S``
    and credits miners with ``m * V / S`` at the new supply.  Revenue is
    accumulated with compensated summation so that small differences
    between nearby runs (see :func:`fee_burn_delta`) stay meaningful
    even after millions of blocks.
    """
    horizon = _check_horizon(horizon)
    m = params.block_subsidy
    v = params.total_value
    rate = params.burn_per_block / v
    supply = [params.initial_supply]
    revenue = [0.0]
    s = params.initial_supply
    total = 0.0
    carry = 0.0
    for _ in range(horizon):
        s = s + (m - rate * s)
        if s <= 0.0:
            raise DomainError("supply driven non-positive; check parameters")
        term = m * v / s - carry
        bumped = total + term
        carry = (bumped - total) - term
        total = bumped
        supply.append(s)
        revenue.append(total)
    supply_arr = np.asarray(supply, dtype=np.float64)
    return SupplyTrajectory(
        blocks=np.arange(horizon + 1, dtype=np.int64),
        supply=supply_arr,
        price=v / supply_arr,
        cumulative_revenue=np.asarray(revenue, dtype=np.float64),
    )


def supply_closed_form(params: Eip1559Params, t: float) -> float:
    """Supply after block ``t`` without iterating.

    Solves the linear recurrence: ``S_t = C + (S_0 - C) * K**t`` with
    ``C = m / (1 - K)``.  For ``b = 0`` the limit ``S_0 + m * t`` is
    used.  ``t`` may be fractional; the expression extends smoothly.
    """
    t = _check_block_index(t)
    k = params.decay_factor
    if params.burn_per_block == 0.0:
        return params.initial_supply + params.block_subsidy * t
    c = params.block_subsidy / (1.0 - k)
    return c + (params.initial_supply - c) * k**t


def supply_continuous(params: Eip1559Params, t: float) -> float:
    """Continuous-time supply approximation at time ``t`` (in blocks).

    Solution of ``dS/dt = m - (b/V) * S``, i.e.
    ``S(t) = (S_0 - mV/b) * exp(-b t / V) + mV/b``.  Differs from the
    discrete recurrence only at order ``(b/V)**2 * t``, which is far
    below any tolerance used here for realistic parameters.
    """
    t = _check_block_index(t)
    if params.burn_per_block == 0.0:
        return params.initial_supply + params.block_subsidy * t
    c = params.equilibrium_supply
    decay = math.exp(-params.burn_per_block * t / params.total_value)
    return (params.initial_supply - c) * decay + c


def _series_terms_needed(q: float, z: float) -> float:
    """Overestimate of series terms before truncation kicks in."""
    if z == 0.0:
        return 0.0
    lead = max(abs(z), 1.0)
    return (math.log(lead) - math.log(_SERIES_RTOL)) / -math.log(q)


def _geometric_ratio_sum(
    q: float, z: float, *, min_terms: int = 0
) -> tuple[float, int]:
    """Evaluate ``sum_{n>=0} z * q**n / (1 - z * q**n)``.

    Requires ``0 < q < 1`` and ``z < 1`` so every denominator stays
    positive.  Terms carry one sign (that of ``z``), so the running sum
    never cancels and a relative truncation test is safe.  Returns the
    sum and the number of terms taken; ``min_terms`` forces evaluation
    past the normal cutoff (used by self-consistency tests).
    """
    if z == 0.0:
        return 0.0, 0
    if z >= 1.0:
        raise DomainError(f"series parameter must be < 1, got {z}")
    estimate = _series_terms_needed(q, z)
    if estimate > _MAX_SERIES_TERMS:
        raise DomainError(
            f"series needs about {estimate:.2g} terms (over the "
            f"{_MAX_SERIES_TERMS:.0g} limit); this happens when the burn "
            "fraction b/V is tiny. Use the recurrence (simulate) instead."
        )
    powers = q ** np.arange(_SERIES_CHUNK, dtype=np.float64)
    step = powers[-1] * q  # q ** _SERIES_CHUNK
    scale = z
    total = 0.0
    taken = 0
    while True:
        w = scale * powers
        terms = w / (1.0 - w)
        total += float(terms.sum())
        taken += _SERIES_CHUNK
        tail = abs(float(terms[-1]))
        if taken >= min_terms and tail < _SERIES_RTOL * abs(total):
            return total, taken
        if taken > _MAX_SERIES_TERMS:
            raise DomainError("series failed to converge; use simulate instead")
        scale *= step


def q_digamma(q: float, x: float) -> float:
    """The q-analogue of the digamma function for ``0 < q < 1``, ``x > 0``.

    Computed from the series

        psi_q(x) = -ln(1 - q) + ln(q) * sum_{n>=0} q**(n+x) / (1 - q**(n+x)),

    truncated once a term drops below ``1e-16`` of the running sum.
    Satisfies ``psi_q(x+1) - psi_q(x) = -ln(q) * q**x / (1 - q**x)`` and
    is increasing in ``x``.
    """
    if not (0.0 < q < 1.0) or not math.isfinite(q):
        raise DomainError(f"q must lie in (0, 1), got {q}")
    if not math.isfinite(x) or x <= 0.0:
        raise DomainError(f"x must be > 0, got {x}")
    tail, _ = _geometric_ratio_sum(q, q**x)
    return -math.log1p(-q) + math.log(q) * tail


def revenue_closed_form(params: Eip1559Params, t: int) -> float:
    """Cumulative miner revenue after block ``t`` without iterating.

    Writing the supply as ``S_j = C * (1 - z * K**j)`` with
    ``C = m / (1 - K)`` and ``z = (C - S_0) / C`` turns the revenue sum
    into a difference of two q-series:

        R_t = (m * V / C) * (t + Q(z * K) - Q(z * K**(t+1))),
        Q(w) = sum_{n>=0} w * K**n / (1 - w * K**n).

    For a supply below equilibrium (``z > 0``) the Q terms are exactly
    the series behind :func:`q_digamma`, so this is the q-digamma closed
    form; the same expression keeps working for supplies at or above
    equilibrium, where the digamma argument would go complex.  Refuses
    parameter sets whose series would need more than ``1e9`` terms
    (burn fraction ``b/V`` below about ``4e-8``); use :func:`simulate`
    for those.
    """
    if isinstance(t, bool) or not isinstance(t, (int, np.integer)):
        raise DomainError(f"block count must be an integer, got {t!r}")
    if t < 0:
        raise DomainError(f"block count must be >= 0, got {t}")
    k = params.decay_factor
    if params.burn_per_block == 0.0:
        raise DomainError(
            "no closed form without burning (K = 1); use simulate instead"
        )
    m = params.block_subsidy
    c = m / (1.0 - k)
    z = (c - params.initial_supply) / c
    head, _ = _geometric_ratio_sum(k, z * k)
    tail, _ = _geometric_ratio_sum(k, z * k ** (t + 1))
    return (m * params.total_value / c) * (t + head - tail)


def fee_burn_delta(
    params: Eip1559Params, fee: float, horizon: int
) -> RevenueDelta:
    """Revenue lost to miners when a one-off fee is burned at block 0.

    A fee of ``l`` USD burns ``l / P_0 = l * S_0 / V`` Ether.  The
    result is ``R_t(S_0 - l S_0/V) - R_t(S_0)``: both recurrences are
    stepped in lockstep and the per-block revenue difference
    ``m V (S - S') / (S S')`` is accumulated directly.  Differencing two
    separately accumulated revenue totals would bury a delta of a few
    USD under the rounding noise of two ~1e10 USD sums; the fused pass
    keeps every entry exact to float resolution and nondecreasing by
    construction.
    """
    horizon = _check_horizon(horizon)
    if not math.isfinite(fee) or fee < 0.0:
        raise DomainError(f"fee must be >= 0, got {fee}")
    burned = fee * params.initial_supply / params.total_value
    if burned >= params.initial_supply:
        raise DomainError(
            f"fee {fee} would burn the entire supply; it must be below "
            f"total_value {params.total_value}"
        )
    m = params.block_subsidy
    v = params.total_value
    rate = params.burn_per_block / v
    s_base = params.initial_supply
    s_burn = params.initial_supply - burned
    acc = 0.0
    delta = [0.0]
    for _ in range(horizon):
        s_base = s_base + (m - rate * s_base)
        s_burn = s_burn + (m - rate * s_burn)
        acc += m * v * (s_base - s_burn) / (s_base * s_burn)
        delta.append(acc)
    return RevenueDelta(
        blocks=np.arange(horizon + 1, dtype=np.int64),
        delta_revenue=np.asarray(delta, dtype=np.float64),
    )


def basefee_next(state: BaseFeeState, gas_used: float) -> BaseFeeState:
    """One block-size feedback step of the base fee.

    The fee moves proportionally to how far the block deviated from the
    target size:

        B' = B * (1 + (gas_used - target) / (8 * target))

    so a full block (twice the target) applies exactly x1.125 and an
    empty one exactly x0.875.  ``gas_used`` must lie in [0, 2 * target].
    """
    if not math.isfinite(gas_used) or gas_used < 0.0:
        raise DomainError(f"gas_used must be >= 0, got {gas_used}")
    target = state.target_size
    if gas_used > 2.0 * target:
        raise DomainError(
            f"gas_used {gas_used} exceeds the block limit {2 * target}"
        )
    factor = 1.0 + (gas_used - target) / (
        BASEFEE_ADJUSTMENT_DENOMINATOR * target
    )
    return BaseFeeState(basefee=state.basefee * factor, target_size=target)


def legacy_revenue_total(
    params: Eip1559Params, fee_per_block: float, horizon: int
) -> float:
    """Cumulative miner revenue over ``horizon`` blocks without burning.

    Supply grows by the subsidy every block and miners keep both the
    subsidy (at the current price ``V / S``) and the whole fee volume:
    per block ``m * V / S_{t+1} + fee_per_block``.
    """
    horizon = _check_horizon(horizon)
    if not math.isfinite(fee_per_block) or fee_per_block < 0.0:
        raise DomainError(f"fee_per_block must be >= 0, got {fee_per_block}")
    m = params.block_subsidy
    v = params.total_value
    s = params.initial_supply
    total = 0.0
    for _ in range(horizon):
        s = s + m
        total += m * v / s + fee_per_block
    return total


MAINNET_MAY2021 = Eip1559Params(
    initial_supply=115.7e6,
    total_value=341e9,
    block_subsidy=2.0,
    burn_per_block=2650.0,
)
