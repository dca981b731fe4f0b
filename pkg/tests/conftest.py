import os
import sys

from hypothesis import settings

sys.path.insert(0, os.path.dirname(__file__))

# wall-clock limits live in the acceptance script; per-example deadlines only flake under load
settings.register_profile("default", deadline=None)
settings.load_profile("default")


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
