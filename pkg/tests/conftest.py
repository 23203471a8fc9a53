from __future__ import annotations

import json
import sys
from pathlib import Path

import pytest

from wiretap.formats import load_code, load_problem

DATA = Path(__file__).parent / "data"
sys.path.insert(0, str(Path(__file__).parent))

EXAMPLES = {
    1: (3, 3, [[2, 4, 5], [2, 3, 6], [1, 5, 6], [1, 3, 4], [1, 2, 4, 6]]),
    2: (3, 3, [[2, 3, 5], [1, 4, 5], [1, 3, 6], [2, 4, 6]]),
    3: (3, 3, [[1, 4], [2, 3, 4], [1, 2, 5, 6], [3, 5, 6]]),
    4: (3, 2, [[1, 2, 4], [3, 4], [2, 5], [1, 3, 5]]),
    5: (3, 3, [[2, 4, 5], [2, 3, 6], [1, 4, 6], [1, 3, 5], [1, 2, 4]]),
    6: (3, 3, [[3, 5, 6], [3, 4, 6], [3, 4, 5], [2, 5, 6], [2, 4, 6], [2, 3, 6],
               [2, 3, 5], [2, 3, 4], [1, 5, 6], [1, 3, 5], [1, 3, 4], [1, 2, 4, 5]]),
}


def example_problem(k: int, cls: str):
    return load_problem(DATA / f"example{k}_class{cls}.json")


def example_code(k: int, q: int | None = None):
    path = DATA / f"example{k}_code.json"
    n_edges = EXAMPLES[k][0] + EXAMPLES[k][1]
    if q is None:
        return load_code(path, n_edges)
    data = json.loads(path.read_text())
    data["q"] = q
    from wiretap.formats import code_from_dict

    return code_from_dict(data, n_edges)


@pytest.fixture
def data_dir() -> Path:
    return DATA


_DISCOVERY: dict = {}


def cached_discovery(k: int, cls: str = "II"):
    """discover() on an example, computed once per test session."""
    from wiretap.discovery import discover

    if (k, cls) not in _DISCOVERY:
        _DISCOVERY[(k, cls)] = discover(example_problem(k, cls))
    return _DISCOVERY[(k, cls)]


ACCEPTANCE_RESULTS: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_RESULTS:
            terminalreporter.write_line(line)
