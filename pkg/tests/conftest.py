import functools

import pytest

from opdec.corpus import build_corpus, exhaustive_subcorpus
from opdec.fincat import arrow_category, local_terminal_choices

ACCEPTANCE: dict[int, tuple[bool, str]] = {}


@functools.lru_cache(maxsize=None)
def corpus():
    return tuple(build_corpus(seed=0))


@functools.lru_cache(maxsize=None)
def subcorpus():
    return tuple(exhaustive_subcorpus(list(corpus()), 3, 5))


@functools.lru_cache(maxsize=None)
def sub_lt_objects():
    return tuple((s.name, L) for s in subcorpus() for L in local_terminal_choices(s.cat))


def named(name):
    return next(s.cat for s in corpus() if s.name == name)


@pytest.fixture
def two():
    return arrow_category()


def record(n: int, ok: bool, detail: str) -> None:
    ACCEPTANCE[n] = (ok, detail)
    print(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'} - {detail}")
