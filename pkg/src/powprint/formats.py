"""Readers and writers for the toolkit's file formats.

Two kinds of files move through the toolkit:

* semicolon-separated two-column series (``Block;Revenue`` revenue
  curves, ``Hour;Gas Price`` day curves) with a mandatory header and
  ``YYYY-MM-DD HH:MM`` timestamps where the key is a wall-clock time;
* TOML configuration documents carrying one typed object each (a region
  set, a GPU profile, a scenario, or burn-dynamics parameters), selected
  by a top-level ``type`` key.

Parsing is atomic: a reader either returns a fully validated domain
object or raises, never a half-built one.  Malformed text raises
:class:`FormatError`; well-formed text describing an invalid object
raises :class:`DomainError`.  Writers are deterministic, so identical
inputs give byte-identical files.
"""

from __future__ import annotations

import math
from datetime import datetime
from importlib import resources
from pathlib import Path
from typing import Any, IO, Iterable, Union

try:
    import tomllib
except ModuleNotFoundError:  # Python 3.10
    import tomli as tomllib

import numpy as np

from .eip1559 import Eip1559Params
from .errors import DomainError, FormatError
from .factors import GpuProfile, RegionProfile, RegionSet
from .network import PriceContext
from .scenario import (
    BestHour,
    DailyAverage,
    DailyMinimum,
    FixedPrice,
    GasPriceSeries,
    Scenario,
    ScenarioItem,
    STANDARD_TEMPLATES,
    TxTemplate,
)

GAS_PRICE_HEADER = "Hour;Gas Price"
REVENUE_HEADER = "Block;Revenue"
TIMESTAMP_FORMAT = "%Y-%m-%d %H:%M"

#: Names of the data files shipped inside the package.
BUNDLED_REGIONS = "global-2021.regions"
BUNDLED_GPU = "rx590.gpu"
BUNDLED_SCENARIO = "nft-drop.scenario"
BUNDLED_EIP1559 = "mainnet-2021.eip1559"
BUNDLED_GAS_PRICES = "gas-prices-2021-05-01.csv"

Source = Union[str, Path, IO[str]]

ConfigObject = Union[RegionSet, GpuProfile, Scenario, Eip1559Params]


def _read_text(source: Source) -> str:
    if hasattr(source, "read"):
        return source.read()
    return Path(source).read_text(encoding="utf-8")


def read_gas_price_csv(source: Source) -> GasPriceSeries:
    """Parse a semicolon day curve with header ``Hour;Gas Price``.

    Timestamps must be ``YYYY-MM-DD HH:MM`` and strictly increasing;
    prices must be nonnegative decimals.  Errors cite the 1-based line
    number of the offending row.  ``source`` may be a path or an open
    text stream.
    """
    text = _read_text(source)
    lines = text.splitlines()
    if not lines or lines[0].rstrip("\r") != GAS_PRICE_HEADER:
        found = lines[0].rstrip("\r") if lines else "<empty file>"
        raise FormatError(
            f"expected header {GAS_PRICE_HEADER!r}, found {found!r}"
        )
    timestamps: list[datetime] = []
    prices: list[float] = []
    for lineno, raw in enumerate(lines[1:], start=2):
        row = raw.rstrip("\r")
        if not row:
            continue  # ignore a trailing blank line
        parts = row.split(";")
        if len(parts) != 2:
            raise FormatError(
                f"line {lineno}: expected 'timestamp;price', found {row!r}"
            )
        try:
            ts = datetime.strptime(parts[0], TIMESTAMP_FORMAT)
        except ValueError:
            raise FormatError(
                f"line {lineno}: bad timestamp {parts[0]!r}, "
                f"expected YYYY-MM-DD HH:MM"
            ) from None
        try:
            price = float(parts[1])
        except ValueError:
            raise FormatError(
                f"line {lineno}: bad price {parts[1]!r}"
            ) from None
        if not math.isfinite(price):
            raise FormatError(f"line {lineno}: price {parts[1]!r} is not finite")
        if price < 0.0:
            raise DomainError(f"line {lineno}: price must be >= 0, got {price}")
        if timestamps and ts <= timestamps[-1]:
            raise DomainError(
                f"line {lineno}: out-of-order timestamp {parts[0]!r}"
            )
        timestamps.append(ts)
        prices.append(price)
    if not timestamps:
        raise FormatError("no data rows after the header")
    return GasPriceSeries(timestamps=tuple(timestamps), prices=tuple(prices))


def _format_cell(value: Any) -> str:
    if isinstance(value, datetime):
        return value.strftime(TIMESTAMP_FORMAT)
    if isinstance(value, (int, np.integer)) and not isinstance(value, bool):
        return str(int(value))
    number = float(value)
    if not math.isfinite(number):
        raise DomainError(f"cannot serialize non-finite value {number!r}")
    # repr() is the shortest decimal string that parses back to the exact
    # same float, which is what makes write-then-read an identity.
    return repr(number)


def write_series_csv(
    dest: Source, name_x: str, name_y: str, rows: Iterable[tuple]
) -> None:
    """Write a two-column semicolon CSV with header ``name_x;name_y``.

    Keys may be integers or timestamps, values any finite number.
    Floats are serialized as their shortest round-tripping decimal, so
    reading the file back recovers the exact values.
    """
    out = [f"{name_x};{name_y}"]
    for row_index, (x, y) in enumerate(rows):
        try:
            out.append(f"{_format_cell(x)};{_format_cell(y)}")
        except DomainError as exc:
            raise DomainError(f"row {row_index}: {exc}") from None
    payload = "\n".join(out) + "\n"
    if hasattr(dest, "write"):
        dest.write(payload)
    else:
        Path(dest).write_text(payload, encoding="utf-8", newline="")


def read_revenue_csv(source: Source) -> tuple[np.ndarray, np.ndarray]:
    """Parse a ``Block;Revenue`` file back into block and value arrays."""
    text = _read_text(source)
    lines = text.splitlines()
    if not lines or lines[0].rstrip("\r") != REVENUE_HEADER:
        found = lines[0].rstrip("\r") if lines else "<empty file>"
        raise FormatError(f"expected header {REVENUE_HEADER!r}, found {found!r}")
    blocks: list[int] = []
    values: list[float] = []
    for lineno, raw in enumerate(lines[1:], start=2):
        row = raw.rstrip("\r")
        if not row:
            continue
        parts = row.split(";")
        if len(parts) != 2:
            raise FormatError(
                f"line {lineno}: expected 'block;revenue', found {row!r}"
            )
        try:
            blocks.append(int(parts[0]))
            values.append(float(parts[1]))
        except ValueError:
            raise FormatError(f"line {lineno}: bad number in {row!r}") from None
    if not blocks:
        raise FormatError("no data rows after the header")
    return np.asarray(blocks, dtype=np.int64), np.asarray(values, dtype=np.float64)


# --- configuration documents -------------------------------------------------

_CONFIG_TYPES = ("regions", "gpu", "scenario", "eip1559")
_STRATEGY_NAMES = ("fixed", "daily-average", "daily-minimum", "best-hour")
_REQUIRED = object()


def _type_name(expected: type) -> str:
    return {float: "number", int: "integer", str: "string", bool: "boolean"}.get(
        expected, expected.__name__
    )


def _check_keys(table: dict, path: str, allowed: Iterable[str]) -> None:
    allowed = set(allowed)
    for key in table:
        if key not in allowed:
            where = f"{path}.{key}" if path else key
            raise FormatError(f"{where}: unknown key")


def _get(table: dict, path: str, key: str, expected: type, default=_REQUIRED):
    where = f"{path}.{key}" if path else key
    if key not in table:
        if default is not _REQUIRED:
            return default
        raise FormatError(f"{where}: missing required key")
    value = table[key]
    if expected is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise FormatError(
                f"{where}: expected number, got {type(value).__name__}"
            )
        return float(value)
    if expected is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise FormatError(
                f"{where}: expected integer, got {type(value).__name__}"
            )
        return value
    if not isinstance(value, expected):
        raise FormatError(
            f"{where}: expected {_type_name(expected)}, got {type(value).__name__}"
        )
    return value


def _table_list(doc: dict, key: str) -> list[dict]:
    if key not in doc:
        raise FormatError(f"{key}: missing required section")
    value = doc[key]
    if not isinstance(value, list) or not all(isinstance(v, dict) for v in value):
        raise FormatError(f"{key}: expected an array of tables ([[{key}]])")
    if not value:
        raise FormatError(f"{key}: at least one entry required")
    return value


def _parse_regions(doc: dict) -> RegionSet:
    _check_keys(doc, "", ("type", "region"))
    entries = _table_list(doc, "region")
    regions = []
    for i, entry in enumerate(entries):
        path = f"region[{i}]"
        _check_keys(entry, path, ("name", "hash_share", "electricity_price", "cipk"))
        regions.append(
            RegionProfile(
                name=_get(entry, path, "name", str),
                hash_share=_get(entry, path, "hash_share", float),
                electricity_price=_get(entry, path, "electricity_price", float),
                cipk=_get(entry, path, "cipk", float),
            )
        )
    return RegionSet(tuple(regions))


def _parse_gpu(doc: dict) -> GpuProfile:
    _check_keys(
        doc,
        "",
        (
            "type",
            "name",
            "unit_price",
            "hash_rate",
            "power_draw",
            "embodied_emissions",
            "lifetime",
        ),
    )
    return GpuProfile(
        name=_get(doc, "", "name", str),
        unit_price=_get(doc, "", "unit_price", float),
        hash_rate=_get(doc, "", "hash_rate", float),
        power_draw=_get(doc, "", "power_draw", float),
        embodied_emissions=_get(doc, "", "embodied_emissions", float),
        lifetime=_get(doc, "", "lifetime", float),
    )


def _parse_eip1559(doc: dict) -> Eip1559Params:
    _check_keys(
        doc,
        "",
        ("type", "initial_supply", "total_value", "block_subsidy", "burn_per_block"),
    )
    return Eip1559Params(
        initial_supply=_get(doc, "", "initial_supply", float),
        total_value=_get(doc, "", "total_value", float),
        block_subsidy=_get(doc, "", "block_subsidy", float),
        burn_per_block=_get(doc, "", "burn_per_block", float),
    )


def _parse_pricing(table: dict, base_dir: Path | None):
    path = "pricing"
    _check_keys(table, path, ("strategy", "gwei", "series"))
    strategy = _get(table, path, "strategy", str)
    if strategy not in _STRATEGY_NAMES:
        raise FormatError(
            f"{path}.strategy: expected one of {', '.join(_STRATEGY_NAMES)}, "
            f"got {strategy!r}"
        )
    if strategy == "fixed":
        if "series" in table:
            raise FormatError(f"{path}.series: not allowed with fixed pricing")
        return FixedPrice(_get(table, path, "gwei", float))
    if "gwei" in table:
        raise FormatError(f"{path}.gwei: only allowed with fixed pricing")
    series_name = _get(table, path, "series", str)
    series_path = Path(series_name)
    if not series_path.is_absolute():
        if base_dir is None:
            raise FormatError(
                f"{path}.series: relative path {series_name!r} cannot be "
                "resolved when reading from a stream"
            )
        series_path = base_dir / series_path
    series = read_gas_price_csv(series_path)
    cls = {
        "daily-average": DailyAverage,
        "daily-minimum": DailyMinimum,
        "best-hour": BestHour,
    }[strategy]
    return cls(series)


def _parse_scenario(doc: dict, base_dir: Path | None) -> Scenario:
    _check_keys(
        doc,
        "",
        ("type", "eth_price", "emission_factor", "bids_on_chain", "pricing", "item"),
    )
    if "pricing" not in doc:
        raise FormatError("pricing: missing required section")
    if not isinstance(doc["pricing"], dict):
        raise FormatError("pricing: expected a table ([pricing])")
    pricing = _parse_pricing(doc["pricing"], base_dir)
    items = []
    for i, entry in enumerate(_table_list(doc, "item")):
        path = f"item[{i}]"
        _check_keys(entry, path, ("kind", "gas", "count"))
        kind = _get(entry, path, "kind", str)
        count = _get(entry, path, "count", int, 1)
        if "gas" in entry:
            template = TxTemplate(kind, _get(entry, path, "gas", int))
        elif kind in STANDARD_TEMPLATES:
            template = STANDARD_TEMPLATES[kind]
        else:
            raise FormatError(
                f"{path}.gas: required for non-standard kind {kind!r}"
            )
        items.append(ScenarioItem(template=template, count=count))
    return Scenario(
        items=tuple(items),
        pricing=pricing,
        ctx=PriceContext(_get(doc, "", "eth_price", float)),
        emission_factor=_get(doc, "", "emission_factor", float),
        bids_on_chain=_get(doc, "", "bids_on_chain", bool, True),
    )


def read_config(source: Source) -> ConfigObject:
    """Parse a TOML configuration document into its domain object.

    The top-level ``type`` key selects the object: ``"regions"``,
    ``"gpu"``, ``"scenario"`` or ``"eip1559"``.  Unknown keys anywhere
    raise :class:`FormatError` with the offending path; values that
    parse but violate a model invariant raise :class:`DomainError`.
    """
    base_dir: Path | None = None
    if not hasattr(source, "read"):
        base_dir = Path(source).resolve().parent
    text = _read_text(source)
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        raise FormatError(f"syntax error: {exc}") from None
    kind = _get(doc, "", "type", str)
    if kind == "regions":
        return _parse_regions(doc)
    if kind == "gpu":
        return _parse_gpu(doc)
    if kind == "eip1559":
        return _parse_eip1559(doc)
    if kind == "scenario":
        return _parse_scenario(doc, base_dir)
    raise FormatError(
        f"type: expected one of {', '.join(_CONFIG_TYPES)}, got {kind!r}"
    )


# --- bundled data ------------------------------------------------------------


def load_bundled_config(name: str) -> ConfigObject:
    """Load one of the configuration files shipped with the package."""
    ref = resources.files("powprint") / "data" / name
    with resources.as_file(ref) as path:
        return read_config(path)


def load_bundled_series(name: str = BUNDLED_GAS_PRICES) -> GasPriceSeries:
    """Load a gas price series shipped with the package."""
    ref = resources.files("powprint") / "data" / name
    with resources.as_file(ref) as path:
        return read_gas_price_csv(path)
