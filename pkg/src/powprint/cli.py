"""Command-line front end.

One subcommand per model area: ``alpha`` for the emissions-per-dollar
pipeline, ``network`` and ``tx`` for first-price-auction impacts,
``eip1559`` for burn dynamics, ``scenario`` for NFT lifecycle reports
and ``series`` for gas price series statistics.  Every command accepts
``--format table|csv``; tables round money and emissions to 2 decimals,
CSV output is never rounded.  ``--output`` redirects the report to a
file and ``--plot`` (where offered) renders a PNG figure alongside it.

Exit codes: 0 on success, 2 on a usage error (bad flags), 1 on a domain
or input-file error.  Diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import eip1559, figures, formats, network, scenario as scen
from .errors import DomainError, FormatError
from .factors import (
    GpuProfile,
    RegionSet,
    aggregate_regions,
    emissions_per_dollar,
    gpu_breakdown,
)

_DEFAULTS = eip1559.MAINNET_MAY2021


def _source(path: str):
    """Turn a --file argument into something the readers accept."""
    return sys.stdin if path == "-" else path


def _fmt(value: float) -> str:
    """Full-precision cell for CSV output."""
    return repr(float(value))


def _emit(args, table_lines: list[str], csv_lines: list[str]) -> None:
    payload = "\n".join(csv_lines if args.format == "csv" else table_lines) + "\n"
    if args.output:
        Path(args.output).write_text(payload, encoding="utf-8", newline="")
    else:
        sys.stdout.write(payload)


def _load_regions(path: str | None) -> RegionSet:
    if path is None:
        obj = formats.load_bundled_config(formats.BUNDLED_REGIONS)
    else:
        obj = formats.read_config(_source(path))
    if not isinstance(obj, RegionSet):
        raise DomainError(f"{path}: expected a 'regions' config")
    return obj


def _load_gpu(path: str | None) -> GpuProfile:
    if path is None:
        obj = formats.load_bundled_config(formats.BUNDLED_GPU)
    else:
        obj = formats.read_config(_source(path))
    if not isinstance(obj, GpuProfile):
        raise DomainError(f"{path}: expected a 'gpu' config")
    return obj


# --- subcommand handlers -----------------------------------------------------


def _cmd_alpha(args) -> int:
    regions = _load_regions(args.regions)
    gpu = _load_gpu(args.gpu)
    agg = aggregate_regions(regions)
    breakdown = gpu_breakdown(gpu, agg.electricity_price, agg.emission_factor)
    factor = emissions_per_dollar(breakdown)

    table = ["Regional electricity factors (kgCO2eq per USD)"]
    for region in regions:
        table.append(f"  {region.name:<16} {region.electricity_factor:.3f}")
    table += [
        "Hash-share weighted aggregate",
        f"  electricity price  {agg.electricity_price:.4f} USD/kWh",
        f"  carbon intensity   {agg.cipk:.3f} kgCO2eq/kWh",
        f"  emission factor    {agg.emission_factor:.3f} kgCO2eq/USD",
        f"{gpu.name}: lifetime cost and emissions",
        f"  {'':<12}{'cost USD':>12}{'kgCO2eq':>12}",
        f"  {'hardware':<12}{breakdown.hardware_cost:>12.2f}"
        f"{breakdown.hardware_emissions:>12.2f}",
        f"  {'electricity':<12}{breakdown.electricity_cost:>12.2f}"
        f"{breakdown.electricity_emissions:>12.2f}",
        f"  {'total':<12}{breakdown.total_cost:>12.2f}"
        f"{breakdown.total_emissions:>12.2f}",
        f"Emissions per dollar: {factor:.3f} kgCO2eq/USD",
    ]

    csv = ["Quantity;Value"]
    for region in regions:
        csv.append(f"factor {region.name};{_fmt(region.electricity_factor)}")
    csv += [
        f"aggregate electricity price;{_fmt(agg.electricity_price)}",
        f"aggregate cipk;{_fmt(agg.cipk)}",
        f"aggregate emission factor;{_fmt(agg.emission_factor)}",
        f"hardware cost;{_fmt(breakdown.hardware_cost)}",
        f"electricity cost;{_fmt(breakdown.electricity_cost)}",
        f"hardware emissions;{_fmt(breakdown.hardware_emissions)}",
        f"electricity emissions;{_fmt(breakdown.electricity_emissions)}",
        f"emissions per dollar;{_fmt(factor)}",
    ]
    _emit(args, table, csv)
    return 0


def _cmd_network(args) -> int:
    daily = network.network_emissions(args.revenue, args.alpha)
    table = [f"Daily emissions:  {daily:.2f} kgCO2eq ({daily / 1e6:.2f} kt)"]
    csv = ["Quantity;Value", f"daily emissions;{_fmt(daily)}"]
    if args.annualize:
        annual = daily * network.DAYS_PER_YEAR
        table.append(
            f"Annual emissions: {annual:.2f} kgCO2eq ({annual / 1e9:.2f} Mt)"
        )
        csv.append(f"annual emissions;{_fmt(annual)}")
    _emit(args, table, csv)
    return 0


def _cmd_tx(args) -> int:
    ctx = network.PriceContext(args.eth_price)
    cost = network.transaction_cost(args.gas, args.gas_price, ctx, args.alpha)
    table = [
        f"Fee:       {cost.fee:.2f} USD",
        f"Emissions: {cost.emissions:.2f} kgCO2eq (lower bound)",
    ]
    csv = [
        "Quantity;Value",
        f"fee;{_fmt(cost.fee)}",
        f"emissions;{_fmt(cost.emissions)}",
    ]
    _emit(args, table, csv)
    return 0


def _params_from_args(args) -> eip1559.Eip1559Params:
    return eip1559.Eip1559Params(
        initial_supply=args.s0,
        total_value=args.v,
        block_subsidy=args.m,
        burn_per_block=args.b,
    )


def _series_csv_lines(blocks, values, every: int) -> list[str]:
    lines = [formats.REVENUE_HEADER]
    for b, value in zip(blocks[::every], values[::every]):
        lines.append(f"{int(b)};{_fmt(value)}")
    return lines


def _cmd_eip1559_simulate(args) -> int:
    params = _params_from_args(args)
    run = eip1559.simulate(params, args.horizon)
    table = [
        f"Blocks simulated:   {args.horizon}",
        f"Final supply:       {run.final_supply:.2f} Ether",
        f"Final price:        {float(run.price[-1]):.2f} USD",
        f"Cumulative revenue: {run.final_revenue:.2f} USD",
    ]
    csv = _series_csv_lines(run.blocks, run.cumulative_revenue, args.every)
    _emit(args, table, csv)
    if args.plot:
        figures.save_revenue_plot(
            args.plot, run.blocks, run.cumulative_revenue,
            title="Miner revenue under fee burning",
        )
    return 0


def _cmd_eip1559_closed_form(args) -> int:
    params = _params_from_args(args)
    t = args.horizon
    supply = eip1559.supply_closed_form(params, t)
    continuous = eip1559.supply_continuous(params, t)
    revenue = eip1559.revenue_closed_form(params, t)
    table = [
        f"{f'Supply at block {t}:':<22}{supply:.2f} Ether",
        f"{'Continuous approx:':<22}{continuous:.2f} Ether",
        f"{'Cumulative revenue:':<22}{revenue:.2f} USD",
    ]
    csv = [
        "Quantity;Value",
        f"supply;{_fmt(supply)}",
        f"supply continuous;{_fmt(continuous)}",
        f"revenue;{_fmt(revenue)}",
    ]
    _emit(args, table, csv)
    return 0


def _cmd_eip1559_delta(args) -> int:
    params = _params_from_args(args)
    delta = eip1559.fee_burn_delta(params, args.fee, args.horizon)
    burned = args.fee * params.initial_supply / params.total_value
    table = [
        f"Fee burned at block 0: {args.fee:.2f} USD ({burned:.6f} Ether)",
        f"Revenue delta at block {args.horizon}: {delta.final_delta:.2f} USD",
    ]
    csv = _series_csv_lines(delta.blocks, delta.delta_revenue, args.every)
    _emit(args, table, csv)
    if args.plot:
        figures.save_revenue_plot(
            args.plot, delta.blocks, delta.delta_revenue,
            ylabel="Revenue delta (USD)",
            title=f"Miner revenue lost to burning a {args.fee:.0f} USD fee",
        )
    return 0


def _cmd_eip1559_legacy(args) -> int:
    params = _params_from_args(args)
    total = eip1559.legacy_revenue_total(params, args.fee, args.horizon)
    table = [
        f"Blocks:             {args.horizon}",
        f"Fee per block:      {args.fee:.2f} USD",
        f"Cumulative revenue: {total:.2f} USD",
    ]
    csv = ["Quantity;Value", f"revenue;{_fmt(total)}"]
    _emit(args, table, csv)
    return 0


def _scenario_table(report: scen.ScenarioReport) -> list[str]:
    table = [
        f"Scenario at {report.gas_price:.2f} Gwei",
        f"  {'item':<10}{'count':>6}{'gas/tx':>9}{'fee USD':>10}{'kgCO2eq':>10}",
    ]
    for line in report.lines:
        table.append(
            f"  {line.kind:<10}{line.count:>6}{line.gas_each:>9}"
            f"{line.fee:>10.2f}{line.emissions:>10.2f}"
        )
    table += [
        f"  {'total':<10}{'':>6}{'':>9}"
        f"{report.total_fee:>10.2f}{report.total_emissions:>10.2f}",
        f"Offset cost at {report.offset_rate} USD/kg: {report.offset_cost:.2f} USD",
        f"Comparable to driving {report.drive_miles:.0f} miles in an average car.",
    ]
    return table


def _scenario_csv(report: scen.ScenarioReport) -> list[str]:
    csv = ["Item;Count;Gas;Fee;Emissions"]
    for line in report.lines:
        csv.append(
            f"{line.kind};{line.count};{line.gas_each};"
            f"{_fmt(line.fee)};{_fmt(line.emissions)}"
        )
    csv.append(
        f"total;;;{_fmt(report.total_fee)};{_fmt(report.total_emissions)}"
    )
    csv.append(f"offset;;;{_fmt(report.offset_cost)};")
    return csv


def _cmd_scenario(args) -> int:
    if args.file is None:
        base = formats.load_bundled_config(formats.BUNDLED_SCENARIO)
    else:
        base = formats.read_config(_source(args.file))
    if not isinstance(base, scen.Scenario):
        raise DomainError(f"{args.file}: expected a 'scenario' config")

    mitigated = args.offchain_bids or args.min_gas or args.best_hour
    target = base
    if mitigated:
        series = None
        if args.min_gas or args.best_hour:
            if args.series is not None:
                series = formats.read_gas_price_csv(_source(args.series))
            elif isinstance(base.pricing, scen.FixedPrice):
                series = formats.load_bundled_series()
        target = scen.apply_mitigations(
            base,
            offchain_bids=args.offchain_bids,
            min_gas=args.min_gas,
            best_hour=args.best_hour,
            series=series,
        )
    report = scen.evaluate(target, offset_rate=args.offset_rate)

    table = _scenario_table(report)
    csv = _scenario_csv(report)
    if mitigated:
        baseline = scen.evaluate(base, offset_rate=args.offset_rate)
        if baseline.total_emissions > 0.0:
            cut = 1.0 - report.total_emissions / baseline.total_emissions
            table.append(
                f"Versus unmitigated scenario: {-100.0 * cut:+.1f}% emissions"
            )
            csv.append(f"reduction;;;;{_fmt(cut)}")
    _emit(args, table, csv)
    if args.plot:
        figures.save_scenario_plot(args.plot, report)
    return 0


def _cmd_series_stats(args) -> int:
    if args.file is None:
        series = formats.load_bundled_series()
    else:
        series = formats.read_gas_price_csv(_source(args.file))
    stats = scen.series_stats(series)
    best_mean = scen.effective_gas_price(scen.BestHour(series))
    table = [
        f"Samples:   {len(series)}",
        f"Average:   {stats.average:.2f} Gwei",
        f"Minimum:   {stats.minimum:.2f} Gwei",
        f"Best hour: {stats.best_hour:02d}:00 UTC (mean {best_mean:.2f} Gwei)",
    ]
    csv = [
        "Quantity;Value",
        f"samples;{len(series)}",
        f"average;{_fmt(stats.average)}",
        f"minimum;{_fmt(stats.minimum)}",
        f"best hour;{stats.best_hour}",
        f"best hour mean;{_fmt(best_mean)}",
    ]
    _emit(args, table, csv)
    if args.plot:
        figures.save_gas_price_plot(args.plot, series)
    return 0


# --- parser ------------------------------------------------------------------


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return value


def _output_options(parser: argparse.ArgumentParser, plot: bool = False) -> None:
    parser.add_argument(
        "--format", choices=("table", "csv"), default="table",
        help="output as an aligned table or semicolon CSV (default: table)",
    )
    parser.add_argument(
        "--output", metavar="FILE", default=None,
        help="write the report to FILE instead of stdout",
    )
    if plot:
        parser.add_argument(
            "--plot", metavar="PNG", default=None,
            help="also render a figure to PNG",
        )


def _eip1559_options(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--s0", type=float, default=_DEFAULTS.initial_supply,
        help=f"initial supply in Ether (default {_DEFAULTS.initial_supply:g})",
    )
    parser.add_argument(
        "--v", type=float, default=_DEFAULTS.total_value,
        help=f"total transaction value in USD (default {_DEFAULTS.total_value:g})",
    )
    parser.add_argument(
        "--m", type=float, default=_DEFAULTS.block_subsidy,
        help=f"block subsidy in Ether (default {_DEFAULTS.block_subsidy:g})",
    )
    parser.add_argument(
        "--b", type=float, default=_DEFAULTS.burn_per_block,
        help=f"fee burn per block in USD (default {_DEFAULTS.burn_per_block:g})",
    )
    parser.add_argument(
        "--horizon", type=int, default=eip1559.DEFAULT_HORIZON,
        help=f"number of blocks (default {eip1559.DEFAULT_HORIZON})",
    )


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="powprint",
        description="Carbon footprint models for proof-of-work blockchains.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "alpha",
        help="emissions-per-dollar factor from regional and GPU data",
        description="Derive the blended kgCO2eq/USD factor from a region "
        "set and a GPU profile (bundled May 2021 data by default).",
    )
    p.add_argument("--regions", metavar="FILE", help="regions config file")
    p.add_argument("--gpu", metavar="FILE", help="GPU profile config file")
    _output_options(p)
    p.set_defaults(func=_cmd_alpha)

    p = sub.add_parser(
        "network",
        help="network-wide emissions from miner revenue",
        description="Convert daily miner revenue into kgCO2eq.",
    )
    p.add_argument(
        "--revenue", type=float, default=58.91e6,
        help="miner revenue in USD per day (default 58.91e6)",
    )
    p.add_argument(
        "--alpha", type=float, default=1.305,
        help="emission factor in kgCO2eq/USD (default 1.305)",
    )
    p.add_argument(
        "--annualize", action="store_true", help="also report the 365-day total"
    )
    _output_options(p)
    p.set_defaults(func=_cmd_network)

    p = sub.add_parser(
        "tx",
        help="fee and emissions bound for one transaction",
        description="Price a single transaction and bound its emissions.",
    )
    p.add_argument("--gas", type=float, required=True, help="gas consumed")
    p.add_argument(
        "--gas-price", type=float, default=61.0,
        help="gas price in Gwei (default 61)",
    )
    p.add_argument(
        "--eth-price", type=float, default=3207.0,
        help="Ether price in USD (default 3207)",
    )
    p.add_argument(
        "--alpha", type=float, default=1.305,
        help="emission factor in kgCO2eq/USD (default 1.305)",
    )
    _output_options(p)
    p.set_defaults(func=_cmd_tx)

    p = sub.add_parser(
        "eip1559",
        help="supply and miner revenue dynamics under fee burning",
        description="Simulate or evaluate the burn-regime supply recurrence.",
    )
    esub = p.add_subparsers(dest="subcommand", required=True)

    q = esub.add_parser(
        "simulate",
        help="run the recurrence block by block",
        description="Step the supply recurrence and accumulate miner "
        "revenue; CSV output is the Block;Revenue curve.",
    )
    _eip1559_options(q)
    q.add_argument(
        "--every", type=_positive_int, default=1,
        help="keep every Nth row in CSV output (default 1)",
    )
    _output_options(q, plot=True)
    q.set_defaults(func=_cmd_eip1559_simulate)

    q = esub.add_parser(
        "closed-form",
        help="analytic supply and revenue at one block",
        description="Evaluate the geometric supply closed form, the "
        "continuous approximation, and the q-digamma revenue closed form "
        "at the horizon block. Refuses burn fractions so tiny that the "
        "series would need over 1e9 terms; use 'simulate' there.",
    )
    _eip1559_options(q)
    _output_options(q)
    q.set_defaults(func=_cmd_eip1559_closed_form)

    q = esub.add_parser(
        "delta",
        help="miner revenue lost when one fee is burned",
        description="Burn a one-off fee at block 0 and track the "
        "cumulative miner revenue difference against the no-burn run.",
    )
    _eip1559_options(q)
    q.add_argument(
        "--fee", type=float, default=100.0,
        help="fee burned at block 0 in USD (default 100)",
    )
    q.add_argument(
        "--every", type=_positive_int, default=1,
        help="keep every Nth row in CSV output (default 1)",
    )
    _output_options(q, plot=True)
    q.set_defaults(func=_cmd_eip1559_delta)

    q = esub.add_parser(
        "legacy",
        help="pre-burn regime: miners keep all fees",
        description="Total miner revenue when nothing is burned and "
        "fees go to miners on top of the subsidy.",
    )
    _eip1559_options(q)
    q.add_argument(
        "--fee", type=float, default=_DEFAULTS.burn_per_block,
        help="fee revenue per block in USD "
        f"(default {_DEFAULTS.burn_per_block:g})",
    )
    _output_options(q)
    q.set_defaults(func=_cmd_eip1559_legacy)

    p = sub.add_parser(
        "scenario",
        help="NFT lifecycle what-if report",
        description="Evaluate a scenario config (bundled NFT auction by "
        "default), optionally with mitigations applied. Mitigations that "
        "need a gas price series fall back to the bundled day curve.",
    )
    p.add_argument("--file", metavar="FILE", help="scenario config ('-' for stdin)")
    p.add_argument(
        "--offchain-bids", action="store_true", help="move bids off-chain"
    )
    p.add_argument(
        "--min-gas", action="store_true",
        help="pay the minimum required gas price (daily average)",
    )
    p.add_argument(
        "--best-hour", action="store_true",
        help="execute during the cheapest hour of the day",
    )
    p.add_argument(
        "--series", metavar="FILE",
        help="gas price series for --min-gas/--best-hour ('-' for stdin)",
    )
    p.add_argument(
        "--offset-rate", type=float, default=scen.DEFAULT_OFFSET_RATE,
        help="carbon offset price in USD per kgCO2eq "
        f"(default {scen.DEFAULT_OFFSET_RATE})",
    )
    _output_options(p, plot=True)
    p.set_defaults(func=_cmd_scenario)

    p = sub.add_parser(
        "series",
        help="gas price series utilities",
        description="Statistics over a gas price day curve.",
    )
    ssub = p.add_subparsers(dest="subcommand", required=True)
    q = ssub.add_parser(
        "stats",
        help="average, minimum and cheapest hour",
        description="Summarize a Hour;Gas Price series (bundled sample "
        "by default).",
    )
    q.add_argument("--file", metavar="FILE", help="series CSV ('-' for stdin)")
    _output_options(q, plot=True)
    q.set_defaults(func=_cmd_series_stats)

    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (DomainError, FormatError, OSError) as exc:
        print(f"powprint: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
