"""Echelon basis construction and Faber polynomial extraction."""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from millerzeros.qseries import FormId, QSeries, delta, eisenstein
from millerzeros.miller import (
    IntPolynomial, MillerForm, miller_basis, miller_form, gap_form, raw_basis,
    faber_of, reconstruct, faber_json, default_trunc,
    NotInSpaceError, NonIntegralFaberError,
)

F48_1 = (-24903328, 931860, -2136, 1)
F124_1 = (-21437679033112542661656, 5718177043459037019999,
          -188671766710386398400, 1942806055074346280,
          -8750844530401680, 20207360640402, -25703594848,
          18182340, -6696, 1)


# ---------------------------------------------------------------------------
# raw basis

def test_raw_basis_weight_12_is_delta():
    e = raw_basis(FormId.from_k(12, 1), trunc=8)
    d = delta(8)
    assert (e - d).is_zero()


def test_raw_basis_weight_16():
    e = raw_basis(FormId.from_k(16, 1), trunc=6)
    assert e.coeff(1) == 1 and e.coeff(2) == 216


def test_raw_basis_lead_normalisation():
    for k in (12, 24, 36, 48, 60, 72, 76, 86):
        ell = FormId.from_k(k, 0).ell
        if ell > 6:
            continue
        for m in range(0, ell + 1):
            e = raw_basis(FormId.from_k(k, m))
            assert e.order == m and e.coeff(m) == 1


# ---------------------------------------------------------------------------
# golden Faber polynomials

def test_faber_48_1_golden(form_48_1):
    assert form_48_1.faber.coeffs == F48_1
    assert form_48_1.faber.as_text() == "t^3 - 2136*t^2 + 931860*t - 24903328"


def test_faber_124_1_golden(form_124_1):
    assert form_124_1.faber.coeffs == F124_1


def test_weight_12_faber_is_constant_one():
    f = miller_form(12, 1)
    assert f.faber.coeffs == (1,)
    assert (f.series - delta(f.series.trunc)).is_zero()


def test_basis_invariants_sampled():
    for k in (24, 52, 90, 124, 158, 180):
        for f in miller_basis(k):
            fid = f.id
            assert f.series.coeff(fid.m) == 1
            assert all(f.series.coeff(n) == 0 for n in range(fid.m + 1, fid.ell + 1))
            assert f.faber.degree == fid.ell - fid.m
            assert f.faber.is_monic()
            assert all(isinstance(c, int) for c in f.faber.coeffs)
            f.check()


def test_reconstruction_up_to_180():
    for k in range(12, 181, 12):
        for f in miller_basis(k):
            assert (reconstruct(f) - f.series).is_zero()
    for k in (124, 134, 158, 166):
        f = miller_form(k, 1)
        assert (reconstruct(f) - f.series).is_zero()


def test_uniqueness_against_dense_elimination():
    # independent oracle: textbook row reduction over Fractions
    for k in (48, 66):
        fid0 = FormId.from_k(k, 0)
        ell = fid0.ell
        trunc = default_trunc(ell)
        rows = [[Fraction(raw_basis(FormId.from_k(k, m), trunc).coeff(n))
                 for n in range(trunc + 1)] for m in range(1, ell + 1)]
        nrows = len(rows)
        for i in range(nrows):
            piv = rows[i][i + 1]
            assert piv != 0
            rows[i] = [c / piv for c in rows[i]]
            for r in range(nrows):
                if r != i and rows[r][i + 1] != 0:
                    f = rows[r][i + 1]
                    rows[r] = [a - f * b for a, b in zip(rows[r], rows[i])]
        for m, f in zip(range(1, ell + 1), miller_basis(k, trunc=trunc)):
            assert [Fraction(f.series.coeff(n)) for n in range(trunc + 1)] == rows[m - 1]


def test_gap_form():
    g = gap_form(36)
    assert g.id.m == 0
    assert g.series.coeff(0) == 1
    assert all(g.series.coeff(n) == 0 for n in range(1, 4))
    assert g.faber.degree == 3 and g.faber.is_monic()
    assert (reconstruct(g) - g.series).is_zero()


def test_no_cusp_forms_below_weight_12():
    assert miller_basis(4) == ()
    assert miller_basis(10) == ()
    with pytest.raises(ValueError):
        miller_form(4, 1)           # m exceeds ell = 0


# ---------------------------------------------------------------------------
# faber_of

def test_faber_of_raw_bottom_is_one():
    fid = FormId.from_k(48, 4)
    e = raw_basis(fid)
    assert faber_of(e, fid).coeffs == (1,)


def test_faber_of_weight_22_product():
    # E4 * E6 * Delta has ell = 1, kprime = 10, ord_infty = 1
    n = 8
    s = eisenstein(4, n) * eisenstein(6, n) * delta(n)
    assert faber_of(s, FormId.from_k(22, 1)).coeffs == (1,)


def test_faber_of_miller_forms_round_trip(form_48_1, form_124_1):
    for f in (form_48_1, form_124_1):
        assert faber_of(f.series, f.id) == f.faber


def test_faber_of_rejects_outside_space(form_48_1):
    fid = form_48_1.id
    tampered = form_48_1.series + QSeries.monomial(fid.ell + 2, form_48_1.series.trunc)
    with pytest.raises(NotInSpaceError):
        faber_of(tampered, fid)


def test_faber_of_rejects_vanishing_series(form_48_1):
    fid = form_48_1.id
    zero = QSeries.zero(fid.ell + 6)
    with pytest.raises(NotInSpaceError):
        faber_of(zero, fid)


def test_faber_of_non_integral(form_48_1):
    half = form_48_1.series.scale(Fraction(1, 2))
    with pytest.raises(NonIntegralFaberError):
        faber_of(half, form_48_1.id)


@settings(max_examples=20, deadline=None)
@given(st.integers(min_value=-9, max_value=9), st.integers(min_value=-9, max_value=9))
def test_faber_of_linearity(a, b):
    f1 = miller_form(60, 1)
    f2 = miller_form(60, 2)
    comb = f1.series.scale(a) + f2.series.scale(b)
    if comb.is_zero():
        return
    p = faber_of(comb, FormId.from_k(60, comb.order))
    want = a * f1.faber + b * f2.faber
    assert p == want


# ---------------------------------------------------------------------------
# polynomial helpers and serialization

def test_intpolynomial_horner_exact():
    p = IntPolynomial.make([-6, 11, -6, 1])      # (x-1)(x-2)(x-3)
    assert p(1) == 0 and p(2) == 0 and p(3) == 0
    assert p(Fraction(1, 2)) == Fraction(-15, 8)


def test_intpolynomial_derivative():
    p = IntPolynomial.make([5, 0, -3, 2])
    assert p.derivative().coeffs == (0, -6, 6)


def test_faber_json_shape(form_48_1):
    import json
    d = json.loads(faber_json(form_48_1))
    assert d["k"] == 48 and d["m"] == 1
    assert d["coeffs"] == ["1", "-2136", "931860", "-24903328"]


def test_millerform_check_detects_tampering(form_48_1):
    bad = MillerForm(form_48_1.id, form_48_1.series,
                     IntPolynomial.make([1, 1]))
    with pytest.raises(NotInSpaceError):
        bad.check()
