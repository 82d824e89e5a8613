"""Shared fixtures.

The expensive objects (basis forms, the bound ledger) are built once per
session; every consumer treats them as immutable.
"""

import pytest

from millerzeros.miller import miller_form
from millerzeros.certify import full_ledger


@pytest.fixture(scope="session")
def form_48_1():
    return miller_form(48, 1)


@pytest.fixture(scope="session")
def form_124_1():
    return miller_form(124, 1)


@pytest.fixture(scope="session")
def form_132_9():
    return miller_form(132, 9)


@pytest.fixture(scope="session")
def ledger_entries():
    return full_ledger()


@pytest.fixture(scope="session")
def ledger_by_name(ledger_entries):
    out = {}
    for e in ledger_entries:
        assert e.name not in out, f"duplicate ledger name {e.name}"
        out[e.name] = e
    return out
