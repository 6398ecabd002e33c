import pytest

import logger


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False,
                     help="run exhaustive sweeps marked slow")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture
def db_path(tmp_path, monkeypatch):
    """Point the results log at a fresh database."""
    import config as settings

    path = str(tmp_path / "fastmod.db")
    logger.close()
    monkeypatch.setattr(settings, "DB_PATH", path)
    yield path
    logger.close()
