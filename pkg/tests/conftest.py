from pathlib import Path

import pytest

from gfmwe import load_bundled_lexicon, load_toy_grammar
from gfmwe.compound import load_lexicon

FIXTURES = Path(__file__).parent / "fixtures"

# Filled by test_acceptance; printed once at the end of the run.
ACCEPTANCE = {}


@pytest.fixture(scope="session")
def toy():
    return load_toy_grammar()


@pytest.fixture(scope="session")
def nouns():
    return load_bundled_lexicon()


@pytest.fixture(scope="session")
def small_lexicon():
    return load_lexicon((FIXTURES / "lexicon_small.tsv").read_text(encoding="utf-8"))


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(ACCEPTANCE):
        ok, detail = ACCEPTANCE[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {key}  {detail}")
