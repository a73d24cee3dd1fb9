import sys
from pathlib import Path

import pytest
from hypothesis import HealthCheck, settings

from sosbound.corpus import CORPUS_DIR
from sosbound.syntax import parse_spec_file

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture
def corpus():
    """Parsed corpus file by name."""
    return lambda name: parse_spec_file(CORPUS_DIR / f"{name}.tss")


def pytest_terminal_summary(terminalreporter):
    from report import RESULTS
    if not RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(RESULTS, key=lambda l: int(l.split()[1].rstrip(":"))):
        terminalreporter.write_line(line)
