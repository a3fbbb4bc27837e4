import sys

import pytest

from mora.resources import ResourceSet


@pytest.fixture(scope="session")
def sample():
    return ResourceSet.sample()


@pytest.fixture(scope="session")
def res(sample):
    return sample.load()


@pytest.fixture(scope="session")
def entry(res):
    def get(lemma):
        (e,) = res.entries_for_lemma(lemma)
        return e
    return get


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.report_lines():
        terminalreporter.write_line(line)
