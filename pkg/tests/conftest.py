# tests/conftest.py
import pytest

from app.net_parser import parse_net
from app.workbench import Workbench
from app.workbench_config import WorkbenchConfig


# Fixture giving every test its own log and export directories
@pytest.fixture
def config(tmp_path, monkeypatch):
    for name in ('LOG_DIR', 'LOG_FILE', 'EXPORT_DIR', 'BASE_DIR'):
        monkeypatch.delenv(f"XCALC_{name}", raising=False)
    return WorkbenchConfig(base_dir=tmp_path, fuel=200, node_budget=500, cases=5)


@pytest.fixture
def workbench(config):
    return Workbench(config)


@pytest.fixture
def peirce_net():
    return parse_net("z^ (y^ <y.e> h^ . a) a^ [z] w^ <w.e> e^ . g")


@pytest.fixture
def critical_pair():
    return parse_net("<y.b> a^ + x^ <z.c>")
