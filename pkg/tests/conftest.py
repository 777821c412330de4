import time

import pytest

from gradedtraces.runner import resolve_config, run_config

_RESULTS = pytest.StashKey[dict]()


def pytest_addoption(parser):
    parser.addoption("--run-stretch", action="store_true", default=False,
                     help="also run the 5184-dimensional SL(2,3) case")


def pytest_configure(config):
    config.stash[_RESULTS] = {}


def pytest_collection_modifyitems(config, items):
    if config.getoption("--run-stretch"):
        return
    skip = pytest.mark.skip(reason="stretch target, enable with --run-stretch")
    for item in items:
        if "stretch" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter, config):
    res = config.stash.get(_RESULTS, {})
    if not res:
        return
    terminalreporter.section("acceptance criteria")
    for key in sorted(res, key=_order):
        ok, text = res[key]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {text}")
    if "7" not in res:
        terminalreporter.write_line("SKIP  criterion 7: SL(2,3) stretch target, run with --run-stretch")


def _order(key):
    head = key.rstrip("abcdefgh")
    return (int(head), key)


@pytest.fixture
def acceptance(request):
    """record(key, ok, text): one pass/fail line per criterion."""
    store = request.config.stash[_RESULTS]

    def record(key, ok, text):
        store[key] = (bool(ok), text)
        print(f"{'PASS' if ok else 'FAIL'}  criterion {key}: {text}")
        return ok
    return record


@pytest.fixture(scope="session")
def runs():
    """Fresh (uncached) full-level runs, memoised per session with wall time."""
    memo = {}

    def get(name):
        if name not in memo:
            t = time.perf_counter()
            res = run_config(resolve_config(name), verify_level="full")
            memo[name] = (res, time.perf_counter() - t)
        return memo[name]
    return get
