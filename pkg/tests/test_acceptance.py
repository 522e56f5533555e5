"""Acceptance criteria, one test per criterion, at the stated trial counts and tolerances."""

import pytest

from superhyp.selftest import SUITES, SelftestConfig

CONFIG = SelftestConfig(gens=4, trials=1000, seed=7, tol=1e-9)

CRITERIA = [
    (1, "Grassmann kernel", ("kernel",)),
    (2, "OSp(1|2) group structure", ("osp",)),
    (3, "isometric action", ("action",)),
    (4, "super laws of cosines and sines", ("triangles",)),
    (5, "intersection of supergeodesics", ("intersection",)),
    (6, "common perpendicular", ("perpendicular",)),
    (7, "bosonic reduction", ("bosonic",)),
    (8, "branch-point handling", ("branch",)),
]

RESULTS: list[str] = []


@pytest.mark.parametrize("number,title,suites", CRITERIA, ids=[f"criterion_{c[0]}" for c in CRITERIA])
def test_criterion(number, title, suites):
    checks = [c for s in suites for c in SUITES[s](CONFIG)]
    ok = all(c.passed for c in checks)
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
    RESULTS.append(line)
    for c in checks:
        RESULTS.append("    " + c.line())
    print(line)
    failed = [c.line() for c in checks if not c.passed]
    assert not failed, "\n".join(failed)
