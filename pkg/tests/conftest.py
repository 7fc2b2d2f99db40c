"""Shared fixtures: bundled inputs and the expensive realistic run."""

import pytest

import powprint as pp


@pytest.fixture(scope="session")
def regions():
    return pp.load_bundled_config(pp.BUNDLED_REGIONS)


@pytest.fixture(scope="session")
def gpu():
    return pp.load_bundled_config(pp.BUNDLED_GPU)


@pytest.fixture(scope="session")
def bundled_series():
    return pp.load_bundled_series()


@pytest.fixture(scope="session")
def nft_scenario():
    return pp.load_bundled_config(pp.BUNDLED_SCENARIO)


@pytest.fixture(scope="session")
def mainnet_run():
    # ~2 s of pure-python recurrence; shared across headline tests.
    return pp.simulate(pp.MAINNET_MAY2021, pp.DEFAULT_HORIZON)


@pytest.fixture(scope="session")
def mainnet_legacy_total():
    return pp.legacy_revenue_total(
        pp.MAINNET_MAY2021, pp.MAINNET_MAY2021.burn_per_block, pp.DEFAULT_HORIZON
    )
