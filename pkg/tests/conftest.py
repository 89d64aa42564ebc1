from __future__ import annotations

from pathlib import Path

import pytest

from valuerank import Catalog, StakeholderProfile, load_catalog, load_profile

DATA_DIR = Path(__file__).parent / "data"


@pytest.fixture(scope="session")
def data_dir() -> Path:
    return DATA_DIR


@pytest.fixture(scope="session")
def fixture_catalog() -> Catalog:
    return load_catalog(str(DATA_DIR / "catalog.json"))


@pytest.fixture(scope="session")
def fixture_profiles() -> list[StakeholderProfile]:
    return [load_profile(str(DATA_DIR / f"profile_sh{i}.json")) for i in (1, 2, 3)]
