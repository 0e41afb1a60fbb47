import math
import sys

import numpy as np
import pytest
from hypothesis import settings

from vorocell import NormSpec

settings.register_profile("repo", deadline=None, max_examples=60)
settings.load_profile("repo")

P_E = 2.718281828
UC_NORMS = [NormSpec(1.5), NormSpec(2.0), NormSpec(P_E), NormSpec(4.0)]
ALL_NORMS = [NormSpec(1.0), *UC_NORMS, NormSpec(math.inf)]


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None:
        return
    terminalreporter.section("acceptance criteria")
    for num in range(1, 11):
        terminalreporter.write_line(mod.RESULTS.get(num, f"[----] criterion {num:2d}: not run or errored before reporting"))
