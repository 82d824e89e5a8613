"""Row reduction of the raw basis Delta^ell E_k' j^(ell-m) to Miller form.

The raw spanning set e_{k,m} = Delta^ell * E_k' * j^(ell-m) has leading
term q^m with unit coefficient, so reduction to the echelon basis
g_{k,m} = q^m + O(q^(ell+1)) needs no division at all: every pivot is 1
and all eliminated multipliers are the integers being cancelled.  The
polynomial combination of j-powers is tracked alongside, which yields
the Faber polynomial F_{k,m} with g_{k,m} = Delta^ell E_k' F_{k,m}(j)
as a monic integer polynomial of degree ell - m.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .qseries import FormId, QSeries, delta, eisenstein, jfunction


class BadIndexError(ValueError):
    """Vanishing order m outside the admissible range 0..ell."""


class NotInSpaceError(ValueError):
    """Series is not the q-expansion of a form of the stated weight."""


class NonIntegralFaberError(ArithmeticError):
    """A Faber coefficient came out non-integral; the reduction is wrong."""


DEFAULT_MARGIN = 8


@dataclass(frozen=True)
class IntPolynomial:
    """Dense univariate polynomial with exact integer coefficients.

    coeffs[i] is the coefficient of x^i; the leading entry is nonzero
    unless the polynomial is zero (then coeffs == (0,)).
    """

    coeffs: tuple

    @staticmethod
    def make(coeffs) -> "IntPolynomial":
        out = []
        for c in coeffs:
            if isinstance(c, Fraction):
                if c.denominator != 1:
                    raise NonIntegralFaberError(f"non-integral coefficient {c}")
                c = c.numerator
            elif not isinstance(c, int):
                raise TypeError(f"integer coefficients required, got {type(c)!r}")
            out.append(c)
        while len(out) > 1 and out[-1] == 0:
            out.pop()
        return IntPolynomial(tuple(out))

    @property
    def degree(self) -> int:
        if len(self.coeffs) == 1 and self.coeffs[0] == 0:
            return -1
        return len(self.coeffs) - 1

    def is_monic(self) -> bool:
        return self.coeffs[-1] == 1

    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction arguments."""
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self) -> "IntPolynomial":
        if self.degree <= 0:
            return IntPolynomial((0,))
        return IntPolynomial.make(
            [i * c for i, c in enumerate(self.coeffs)][1:])

    def __add__(self, other):
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0] * (n - len(self.coeffs))
        for i, c in enumerate(other.coeffs):
            a[i] += c
        return IntPolynomial.make(a)

    def __neg__(self):
        return IntPolynomial(tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            if other == 0:
                return IntPolynomial((0,))
            return IntPolynomial(tuple(other * c for c in self.coeffs))
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return IntPolynomial.make(out)

    __rmul__ = __mul__

    def shift_x(self, d: int) -> "IntPolynomial":
        """Multiply by x^d."""
        return IntPolynomial.make([0] * d + list(self.coeffs))

    def to_json_dict(self, var_meta: dict | None = None) -> dict:
        d = dict(var_meta or {})
        d["coeffs"] = [str(c) for c in reversed(self.coeffs)]
        return d

    def as_text(self, var: str = "t") -> str:
        if self.degree < 0:
            return "0"
        parts = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if c == 0:
                continue
            if i == 0:
                body = f"{abs(c)}"
            else:
                xi = var if i == 1 else f"{var}^{i}"
                body = xi if abs(c) == 1 else f"{abs(c)}*{xi}"
            if not parts:
                parts.append(body if c > 0 else f"-{body}")
            else:
                parts.append(f"+ {body}" if c > 0 else f"- {body}")
        return " ".join(parts)


@dataclass(frozen=True)
class MillerForm:
    """Echelon basis element g_{k,m} together with its Faber polynomial."""

    id: FormId
    series: QSeries
    faber: IntPolynomial

    def check(self) -> None:
        fid = self.id
        if self.series.coeff(fid.m) != 1:
            raise NotInSpaceError("leading coefficient is not 1")
        for n in range(fid.m + 1, min(fid.ell, self.series.trunc) + 1):
            if self.series.coeff(n) != 0:
                raise NotInSpaceError(f"coefficient at q^{n} did not cancel")
        if self.faber.degree != fid.ell - fid.m:
            raise NotInSpaceError("Faber degree mismatch")
        if not self.faber.is_monic():
            raise NotInSpaceError("Faber polynomial is not monic")


def default_trunc(ell: int, margin: int = DEFAULT_MARGIN) -> int:
    return ell + 1 + margin


@lru_cache(maxsize=32)
def _raw_basis_family(k: int, trunc: int) -> tuple:
    """All e_{k,m} for m = ell..0 at truncation >= trunc, highest m first.

    Built by one pass of j-multiplications starting from Delta^ell E_k',
    with enough initial headroom that every element reaches trunc.
    """
    fid = FormId.from_k(k, 0)
    ell, kprime = fid.ell, fid.kprime
    head = trunc + ell            # each j-multiplication costs one order
    base = delta(head) ** ell if ell else QSeries.one(head)
    if kprime:
        base = base * eisenstein(kprime, head)
    j = jfunction(head)
    out = [base]
    for _ in range(ell):
        out.append(out[-1] * j)
    out = [s.truncate(trunc) for s in out]
    return tuple(out)             # out[i] == e_{k, ell - i}


def raw_basis(fid: FormId, trunc: int | None = None) -> QSeries:
    """e_{k,m} = Delta^ell E_k' j^(ell-m) = q^m + O(q^(m+1))."""
    if not 0 <= fid.m <= fid.ell:
        raise BadIndexError(f"m={fid.m} outside 0..{fid.ell}")
    if trunc is None:
        trunc = default_trunc(fid.ell)
    fam = _raw_basis_family(fid.k, trunc)
    return fam[fid.ell - fid.m]


def _reduce_against_family(fid: FormId, series: QSeries, fam) -> tuple:
    """Cancel coefficients q^(m+1)..q^ell of series against e_{k,n}.

    Returns (reduced series, IntPolynomial combination of j-powers),
    where the combination starts from x^(ell-m) for the series itself.
    The pivots e_{k,n} all lead with coefficient 1, so the arithmetic
    stays in the original coefficient ring.
    """
    ell = fid.ell
    poly = [0] * (ell - fid.m + 1)
    poly[ell - fid.m] = series.coeff(fid.m)
    r = series
    for n in range(fid.m + 1, ell + 1):
        c = r.coeff(n)
        if c != 0:
            r = r - fam[ell - n].scale(c)
        poly[ell - n] = -c            # the subtracted multiple joins negated
    return r, poly


@lru_cache(maxsize=32)
def miller_basis(k: int, trunc: int | None = None) -> tuple:
    """The reduced basis (g_{k,1}, ..., g_{k,ell}) of the cusp space.

    Each element is a MillerForm carrying both the echelon q-expansion
    and the monic integer Faber polynomial of degree ell - m.
    """
    fid0 = FormId.from_k(k, 0)
    ell = fid0.ell
    if trunc is None:
        trunc = default_trunc(ell)
    if trunc < ell + 1:
        raise ValueError(f"trunc must reach ell+1 = {ell + 1}")
    fam = _raw_basis_family(k, trunc)
    forms = []
    for m in range(1, ell + 1):
        fid = FormId.from_k(k, m)
        reduced, poly = _reduce_against_family(fid, fam[ell - m], fam)
        form = MillerForm(fid, reduced, IntPolynomial.make(poly))
        form.check()
        forms.append(form)
    return tuple(forms)


def miller_form(k: int, m: int, trunc: int | None = None) -> MillerForm:
    fid = FormId.from_k(k, m)
    if m == 0:
        return gap_form(k, trunc)
    if fid.ell == 0:
        raise BadIndexError(f"weight {k} has no cusp forms")
    return miller_basis(k, trunc)[m - 1]


def gap_form(k: int, trunc: int | None = None) -> MillerForm:
    """The m = 0 basis element g_{k,0} = 1 + O(q^(ell+1)) of M_k."""
    fid = FormId.from_k(k, 0)
    if trunc is None:
        trunc = default_trunc(fid.ell)
    fam = _raw_basis_family(k, trunc)
    reduced, poly = _reduce_against_family(fid, fam[fid.ell], fam)
    return MillerForm(fid, reduced, IntPolynomial.make(poly))


def faber_of(series: QSeries, fid: FormId) -> IntPolynomial:
    """Faber polynomial of an arbitrary weight-k form given by q-expansion.

    Cancels the series from its lowest order against the raw basis; the
    residual must vanish identically to its truncation, otherwise the
    input is not in the space (NotInSpaceError).  Degree is
    ell - ord_infty(series).
    """
    n0 = series.order
    if n0 > fid.ell:
        raise NotInSpaceError("series vanishes beyond q^ell; not a nonzero form" if not series.is_zero()
                              else "zero series has no Faber polynomial")
    trunc = series.trunc
    fam = _raw_basis_family(fid.k, trunc)
    r = series
    poly = [0] * (fid.ell - n0 + 1)
    for n in range(n0, fid.ell + 1):
        c = r.coeff(n)
        poly[fid.ell - n] = c
        if c != 0:
            r = r - fam[fid.ell - n].scale(c)
    for n in range(n0, trunc + 1):
        if r.coeff(n) != 0:
            raise NotInSpaceError(f"residual fails to vanish at q^{n}")
    return IntPolynomial.make(poly)


def reconstruct(form: MillerForm, trunc: int | None = None) -> QSeries:
    """Delta^ell * E_k' * F(j) as a q-expansion, for consistency checks."""
    fid = form.id
    if trunc is None:
        trunc = form.series.trunc
    head = trunc + fid.ell
    j = jfunction(head)
    acc = QSeries.zero(head)
    for c in reversed(form.faber.coeffs):
        acc = acc * j + c
    base = delta(head) ** fid.ell if fid.ell else QSeries.one(head)
    if fid.kprime:
        base = base * eisenstein(fid.kprime, head)
    return (base * acc).truncate(trunc)


def faber_json(form: MillerForm) -> str:
    """Wire format: weight, index, and coefficients from the leading term down."""
    fid = form.id
    return json.dumps({"k": fid.k, "m": fid.m,
                       "coeffs": [str(c) for c in reversed(form.faber.coeffs)]})
