"""The nine acceptance criteria, one pass/fail line each.

Run with -v (or -s) to see the lines; every criterion is also an ordinary
assertion so a failure shows up in the summary.
"""

import pytest

from htalg.acceptance import CRITERIA


@pytest.mark.parametrize(
    "name,fn", CRITERIA, ids=[name.replace(" ", "-") for name, _ in CRITERIA]
)
def test_acceptance_criterion(name, fn, capsys):
    ok, detail = fn()
    with capsys.disabled():
        print(f"{'PASS' if ok else 'FAIL'} {name}: {detail}")
    assert ok, f"{name}: {detail}"
