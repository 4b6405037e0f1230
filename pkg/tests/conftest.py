import os

from hypothesis import HealthCheck, settings

settings.register_profile(
    "default",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


def pytest_terminal_summary(terminalreporter):
    import sys

    for name, module in list(sys.modules.items()):
        if name.endswith("test_acceptance") and getattr(module, "LINES", None):
            terminalreporter.section("acceptance criteria")
            for line in module.LINES:
                terminalreporter.write_line(line)
