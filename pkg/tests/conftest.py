import os
from pathlib import Path

import pytest


def _federalist_file():
    env = os.environ.get("STYLUS_FEDERALIST")
    if env and Path(env).is_file():
        return Path(env)
    bundled = Path(__file__).parent / "data" / "federalist.txt"
    if bundled.is_file():
        return bundled
    return None


@pytest.fixture(scope="session")
def federalist_path():
    """Path to the real ebook, or skip when it is not available."""
    path = _federalist_file()
    if path is None:
        pytest.skip(
            "real ebook not available (set STYLUS_FEDERALIST or add "
            "tests/data/federalist.txt)"
        )
    return path
