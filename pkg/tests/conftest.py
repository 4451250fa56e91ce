import os
import sys
from functools import lru_cache

import pytest
from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

from schubert_codes.code import build_code  # noqa: E402
from schubert_codes.gf import field_from_order  # noqa: E402
from schubert_codes.schubert import dimseq_make  # noqa: E402

settings.register_profile("default", deadline=None, derandomize=True)
settings.load_profile("default")

ACCEPTANCE_RESULTS: dict[int, str] = {}


@lru_cache(maxsize=None)
def code_for(q: int, m: int, alpha: tuple[int, ...]):
    return build_code(dimseq_make(None, m, alpha), field_from_order(q))


@pytest.fixture
def make_code():
    return code_for


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_RESULTS:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_RESULTS):
            terminalreporter.write_line(ACCEPTANCE_RESULTS[number])
