"""Shared registry for acceptance-criterion PASS lines.

Lives in its own module so the pytest-loaded conftest and the test module
import the same instance.
"""

import time

SESSION_START = time.perf_counter()
RESULTS: list[tuple[str, str]] = []


def record(name: str, detail: str = "") -> None:
    RESULTS.append((name, detail))
