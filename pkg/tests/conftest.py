from __future__ import annotations

import functools

import pytest

from powergraphs.claims import default_corpus
from powergraphs.groupspec import build_group


@functools.lru_cache(maxsize=None)
def group(text: str):
    return build_group(text)


@pytest.fixture(scope="session")
def corpus_groups():
    return [build_group(spec) for spec in default_corpus().selected()]


@pytest.fixture(scope="session")
def small_corpus_groups(corpus_groups):
    return [G for G in corpus_groups if G.order <= 60]


def pytest_configure(config):
    for n in range(1, 12):
        config.addinivalue_line("markers", f"AC{n}: exit criterion {n}")


_criteria: dict[int, tuple[str, str]] = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.outcome != "passed"):
        return
    for key in report.keywords:
        if key.startswith("AC") and key[2:].isdigit():
            n = int(key[2:])
            _criteria[n] = (report.outcome.upper(), report.nodeid.rsplit("::", 1)[-1])


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_criteria):
        outcome, name = _criteria[n]
        word = "PASS" if outcome == "PASSED" else "FAIL"
        terminalreporter.write_line(f"criterion {n:2d}: {word}  {name}")


@pytest.fixture(scope="session")
def grp():
    """Cached spec -> Group builder."""
    return group
