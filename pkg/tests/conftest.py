import pytest
from hypothesis import HealthCheck, settings

from arithinv import criteria

settings.register_profile(
    "default", deadline=None, max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("default")

# Every Verdict built anywhere in the suite is recorded here and its
# certificates are re-checked after the test that produced it.
EMITTED: list = []
CHECKED = {"verdicts": 0, "decided": 0}

_init = criteria.Verdict.__init__


def _recording_init(self, *args, **kwargs):
    _init(self, *args, **kwargs)
    EMITTED.append(self)


criteria.Verdict.__init__ = _recording_init


def reverify_emitted() -> int:
    n = 0
    while EMITTED:
        v = EMITTED.pop()
        CHECKED["verdicts"] += 1
        if v.conclusion not in (criteria.POLYNOMIAL, criteria.NOT_POLYNOMIAL):
            continue
        assert criteria.verify_verdict(v), f"verdict failed re-verification: {v.to_json()}"
        CHECKED["decided"] += 1
        n += 1
    return n


@pytest.fixture(autouse=True)
def _reverify_verdicts():
    yield
    reverify_emitted()


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import RESULTS
    except ImportError:
        return
    if RESULTS:
        terminalreporter.section("acceptance criteria")
        for n in sorted(RESULTS):
            terminalreporter.write_line(RESULTS[n])
