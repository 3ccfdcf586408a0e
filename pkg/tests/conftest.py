import math
import sys

import numpy as np
import pytest

from pdmosc.pct import ModelParams

SQ3 = math.sqrt(3.0)

# parameter sets used throughout: (L, omega, alpha)
SWEEP = [ModelParams(0.3, 0, 1.0), ModelParams(1 / SQ3, 1, 1.0), ModelParams(0.1, 2, 2.0)]


@pytest.fixture(params=SWEEP, ids=lambda p: f"L{p.L}-w{p.omega:g}-a{p.alpha:.3g}")
def params(request):
    return request.param


@pytest.fixture
def ref_params():
    return ModelParams(1 / SQ3, 1, 1.0)


def rel_err(a, b):
    a, b = np.asarray(a, float), np.asarray(b, float)
    return float(np.max(np.abs(a - b) / np.maximum(np.abs(b), 1e-300)))


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[k])
