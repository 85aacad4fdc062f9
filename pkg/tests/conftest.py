import os

import pytest


@pytest.fixture(scope="session", autouse=True)
def _cache_dir(tmp_path_factory):
    """Isolate the coefficient cache; shared across the whole session."""
    path = tmp_path_factory.mktemp("smdiff-cache")
    old = os.environ.get("SMDIFF_CACHE_DIR")
    os.environ["SMDIFF_CACHE_DIR"] = str(path)
    yield str(path)
    if old is None:
        os.environ.pop("SMDIFF_CACHE_DIR", None)
    else:
        os.environ["SMDIFF_CACHE_DIR"] = old


@pytest.fixture(scope="session")
def config():
    from smdiff.config import Config

    return Config()


@pytest.fixture(scope="session")
def full_table(config):
    """The 166147 scan table, built once for the whole session."""
    from smdiff.discriminants import CLASS_NUMBER_32_BOUND, scan_table

    return scan_table(CLASS_NUMBER_32_BOUND, jobs=config.jobs)
