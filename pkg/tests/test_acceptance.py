"""One test per acceptance criterion; each prints a single PASS/FAIL line.

Also runnable directly: ``python3 tests/test_acceptance.py``.
"""

import sys

import pytest

from trievac import verify

CRITERIA = {
    1: lambda: verify.criterion_1(),
    2: lambda: verify.criterion_2(),
    3: lambda: verify.criterion_3(),
    4: lambda: verify.criterion_4(),
    5: lambda: verify.criterion_5(),
    6: lambda: verify.criterion_6(),
    7: lambda: verify.criterion_7(),
    8: lambda: verify.criterion_8(),
}


@pytest.mark.parametrize("number", sorted(CRITERIA))
def test_criterion(number, acceptance_log):
    res = CRITERIA[number]()
    line = res.line()
    print(line)
    acceptance_log.append(line)
    assert res.passed, "\n".join(
        f"{c.name}: measured {c.measured}, target {c.target}, tol {c.tol}" for c in res.failures())


if __name__ == "__main__":
    results = [CRITERIA[n]() for n in sorted(CRITERIA)]
    for r in results:
        print(r.line())
    sys.exit(0 if all(r.passed for r in results) else 1)
