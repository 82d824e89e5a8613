"""Bound-certification machinery: basis conversions, certificates, ledgers."""

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from mpmath import mp, mpf, workprec

from millerzeros.evalnum import CertValue
from millerzeros.certify import (
    BoundLedgerEntry, DomainError,
    _cheb_t, ChebyshevPoly, polynomial_derivative, goursat_transform, horner,
    _certified_root_decreasing, j_approx, j_approx_error,
    monotonicity_certificate_075, magnitude_certificate_065,
    j_difference_bounds, delta_line_lower, delta_line_upper,
    residue_term, residue_entries, _table_value,
    proposition_mrl_check, full_ledger,
)

PRINTED_TABLE = {
    ("075", 0): 51.31, ("075", 4): 21.72, ("075", 6): 19.5,
    ("075", 8): 9.2, ("075", 10): 8.3, ("075", 14): 3.5,
    ("065", 0): 166.7, ("065", 4): 25.1, ("065", 6): 33.78,
    ("065", 8): 3.8, ("065", 10): 5.08, ("065", 14): 1.0,
}


# ---------------------------------------------------------------------------
# basis conversions

def test_chebyshev_goldens():
    assert _cheb_t(0) == (1,)
    assert _cheb_t(1) == (0, 1)
    assert _cheb_t(2) == (-1, 0, 2)
    assert _cheb_t(3) == (0, -3, 0, 4)
    assert _cheb_t(4) == (1, 0, -8, 0, 8)
    assert _cheb_t(5) == (0, 5, 0, -20, 0, 16)


@settings(max_examples=40, deadline=None)
@given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=12),
                min_size=1, max_size=9))
def test_chebyshev_round_trip(coeffs):
    cp = ChebyshevPoly(tuple(coeffs))
    back = ChebyshevPoly.from_monomial(cp.to_monomial())
    got = list(back.coeffs) + [Fraction(0)] * (len(coeffs) - len(back.coeffs))
    assert got[:len(coeffs)] == list(coeffs)


def test_polynomial_derivative():
    assert polynomial_derivative([Fraction(5), Fraction(0), Fraction(-3), Fraction(2)]) \
        == [Fraction(0), Fraction(-6), Fraction(6)]


def test_goursat_transform_hand_cases():
    # P(t) = t, degree 1: (1+z) * (1-z)/(1+z) = 1 - z
    assert goursat_transform([Fraction(0), Fraction(1)]) == [1, -1]
    # P(t) = t^2, degree 2: (1-z)^2
    assert goursat_transform([Fraction(0), Fraction(0), Fraction(1)]) == [1, -2, 1]
    # P(t) = 1 + t, degree 1: (1+z) + (1-z) = 2
    assert goursat_transform([Fraction(1), Fraction(1)]) == [2, 0]


@settings(max_examples=30, deadline=None)
@given(st.lists(st.integers(min_value=-9, max_value=9), min_size=2, max_size=6),
       st.fractions(min_value=Fraction(-3, 4), max_value=Fraction(3, 4),
                    max_denominator=64))
def test_goursat_is_change_of_variable(coeffs, t):
    # P(t) * (1+z)^d == G(z) at z = (1-t)/(1+t), exactly over rationals
    coeffs = [Fraction(c) for c in coeffs]
    d = len(coeffs) - 1
    g = goursat_transform(coeffs)
    z = (1 - t) / (1 + t)
    lhs = horner(coeffs, t) * (1 + z) ** d
    assert horner(g, z) == lhs


def test_certified_root_simple():
    coeffs = [CertValue(mpf(2)), CertValue(mpf(-1))]       # 2 - x
    r = _certified_root_decreasing(coeffs, 0.0, 4.0)
    assert abs(r.value - 2) <= r.err + mpf(10) ** -10


# ---------------------------------------------------------------------------
# truncated j approximations

def test_j_approx_reference_angle():
    with workprec(140):
        a = mp.sin(mpf("1.9"))
        f19 = j_approx(6, a, mp.cos(mpf("1.9")))
        assert abs(f19.real().value - mpf("271.09885")) < 1e-3
        assert j_approx_error(6, a) < 4e-4


def test_j_approx_error_magnitudes():
    assert j_approx_error(5, 0.75) < 10
    assert j_approx_error(7, 0.65) < 10
    assert j_approx_error(7, 0.65) < j_approx_error(5, 0.65)


# ---------------------------------------------------------------------------
# analytic certificates

def test_monotonicity_certificate(ledger_by_name):
    cert = monotonicity_certificate_075()
    assert abs(cert.x0.value - mpf("0.253311")) < 1e-4
    assert all(e.satisfied for e in cert.entries)
    assert 0.2 < float(cert.x0.value) < 0.5
    assert ledger_by_name["refit.x0"].satisfied


def test_magnitude_certificate(ledger_by_name):
    cert = magnitude_certificate_065()
    assert abs(cert.value_at_half.value - mpf("593.543")) < 1e-2
    assert all(e.satisfied for e in cert.entries)
    assert ledger_by_name["magfit.value-at-half"].satisfied


def test_j_difference_bounds():
    rep = j_difference_bounds()
    assert rep.min_diff_075 >= 176
    assert rep.min_diff_065 >= 311
    assert 271 < rep.j19.value < 272
    assert all(e.satisfied for e in rep.entries)


# ---------------------------------------------------------------------------
# delta and residue bounds

def test_delta_line_bounds():
    assert delta_line_lower("0.65") > mpf("0.01")
    assert delta_line_lower("0.75") > mpf("0.007")
    for y in ("0.65", "0.75", "1.0"):
        assert delta_line_lower(y) < delta_line_upper(y)
    with pytest.raises(DomainError):
        delta_line_lower("0.05")


def test_residue_term_at_corner():
    with workprec(120):
        rho_end = 2 * mp.pi / 3
        for (k, m) in ((192, 1), (48, 2)):
            rv = residue_term(rho_end, k, m)
            assert abs(rv.value - 1) <= rv.err + mpf(10) ** -20


def test_residue_entries_all_satisfied():
    entries = residue_entries(192, 1, grid_step=5e-3)
    assert entries and all(e.satisfied for e in entries)


# ---------------------------------------------------------------------------
# the H table and global constants

def test_h_table_below_printed_caps():
    for (label, kprime), cap in PRINTED_TABLE.items():
        got = _table_value(kprime, label)
        assert isinstance(got, Fraction)
        assert got < Fraction(str(cap))
        assert got > Fraction(str(cap)) / 2        # sanity floor


def test_growth_constants(ledger_by_name):
    c1 = ledger_by_name["growth.c1"]
    assert c1.satisfied and abs(c1.computed - 4.4039996) < 1e-5
    c2 = ledger_by_name["growth.c2"]
    assert c2.satisfied and abs(c2.computed - 9.110132) < 1e-3
    for name in ("growth.b1", "growth.b2", "growth.c1-cap", "growth.c2-cap"):
        assert ledger_by_name[name].satisfied


# ---------------------------------------------------------------------------
# ledger plumbing

def test_ledger_all_satisfied(ledger_entries):
    assert len(ledger_entries) >= 100
    assert all(e.satisfied for e in ledger_entries)


def test_ledger_key_presence(ledger_by_name):
    for name in ("delta.at-i", "delta.at-rho",
                 "delta.line-065.lower", "delta.line-075.lower",
                 "jdiff.sep-075", "jdiff.sep-065", "jdiff.j19-window",
                 "e4.arc.upper-075", "e6.arc.upper-075",
                 "e4.arc.upper-065", "e6.arc.upper-065", "residue.at-rho",
                 "e4.line.075.assembled", "e6.line.075.assembled",
                 "e4.line.065.assembled", "e6.line.065.assembled"):
        assert name in ledger_by_name, name
    for kp in (0, 4, 6, 8, 10, 14):
        assert f"table.075.k{kp}" in ledger_by_name
        assert f"table.065.k{kp}" in ledger_by_name


def test_assembled_line_caps(ledger_by_name):
    caps = {"e4.line.065.assembled": 5.9, "e4.line.075.assembled": 3.45,
            "e6.line.065.assembled": 14.26, "e6.line.075.assembled": 5.25}
    for name, cap in caps.items():
        e = ledger_by_name[name]
        assert e.satisfied and e.claimed == pytest.approx(cap)


def test_ledger_json_round_trip(ledger_entries):
    e = ledger_entries[0]
    d = json.loads(e.to_json())
    assert set(d) >= {"name", "claimed", "computed", "err", "satisfied"}
    assert d["name"] == e.name


def test_ledger_deterministic_order(ledger_entries):
    again = [e.name for e in full_ledger()]
    assert again == [e.name for e in ledger_entries]


def test_entry_helpers():
    good = BoundLedgerEntry(name="x", claimed=1.0, computed=0.9, err=0.01,
                            satisfied=True, paper_ref="demo")
    assert good.to_json_dict()["satisfied"] is True


# ---------------------------------------------------------------------------
# oscillation report off-hypothesis

def test_mrl_report_off_hypothesis():
    rep = proposition_mrl_check(132, 9, grid_step=2e-2)
    assert rep.hypothesis_ok is False
    assert rep.grid_max > 0
    assert rep.k == 132 and rep.m == 9
