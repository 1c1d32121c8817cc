import numpy as np
import pytest

from drunktexter.corpus import Label, SyntheticConfig, Tweet, UserRecord, generate_synthetic
from drunktexter.corpus import label_drunk_texters
from drunktexter.lexicon import default_lexicons

# 2014-01-06 12:00 UTC was a Monday, 2014-01-11 a Saturday.
MONDAY = 1389009600
SATURDAY = MONDAY + 5 * 86400


def make_user(uid, texts, label=Label.UNLABELED, start=MONDAY, step=60, friends=(), followers=()):
    tweets = [Tweet(f"{uid}-{i}", uid, start + i * step, t) for i, t in enumerate(texts)]
    return UserRecord(uid, label, tuple(tweets), frozenset(friends), frozenset(followers))


@pytest.fixture(scope="session")
def lexicons():
    return default_lexicons()


@pytest.fixture(scope="session")
def planted(lexicons):
    """The default 278 + 278 synthetic corpus, relabeled by the keyword rule."""
    users = generate_synthetic(SyntheticConfig(), lexicons)
    return label_drunk_texters(users, lexicons["drunk"])


@pytest.fixture(scope="session")
def small(lexicons):
    users = generate_synthetic(SyntheticConfig(n_drunk=30, n_nondrunk=30, seed=5), lexicons)
    return label_drunk_texters(users, lexicons["drunk"])


@pytest.fixture
def rng():
    return np.random.default_rng(20140111)


# Acceptance tests append "PASS/FAIL  <criterion>  <detail>" lines here.
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
