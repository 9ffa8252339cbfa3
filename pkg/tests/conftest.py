import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from oracles import atlas  # noqa: E402

from sizelinear.construct import parse_graph_name  # noqa: E402


@pytest.fixture(scope="session")
def small_graphs():
    """Every graph of order 1..7, one per isomorphism class."""
    return atlas(7)


@pytest.fixture
def G():
    return parse_graph_name


@pytest.fixture
def store_dir(tmp_path, monkeypatch):
    root = tmp_path / "store"
    monkeypatch.setenv("RSL_STORE", str(root))
    return root


ACCEPTANCE: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[number]
        terminalreporter.write_line(f"criterion {number}: {'PASS' if ok else 'FAIL'}  {detail}")
