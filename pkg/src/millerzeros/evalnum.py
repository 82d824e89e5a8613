"""Certified numerical evaluation of q-expansions in the upper half plane.

Everything here returns a CertValue: a floating point number (real or
complex, arbitrary precision via mpmath) together with a rigorous error
radius.  The radius collects three contributions: the exact tail bound
for the truncated series, the propagated input radii, and a conservative
per-operation rounding pad of a few ulp.  Tolerated comparisons against
published constants are orders of magnitude coarser than the working
precision, so the pads are generous rather than sharp.

Tail bounds by coefficient family:

  * Eisenstein weight k:   sigma_{k-1}(n) <= n^k, and n^k r^n is
    geometrically dominated once (1 + 1/(N+1))^k r < 1;
  * j-function:            c(n) <= e^(4 pi sqrt(n)) / (sqrt(2) n^(3/4)),
    summed in closed form (same estimate backs the j approximation
    error bound used by the certificates);
  * eta product:           the pentagonal expansion of prod (1 - q^n)
    has coefficients in {-1, 0, 1} at distinct exponents, so the tail
    beyond q^N is at most 2 r^(N+1) / (1 - r);
  * geometric:             caller-stated |a_n| <= C rho^n.

Evaluation is refused below Im(tau) = 0.4; every bound above is easy
and comfortable in that region and nothing in the pipeline needs to go
lower.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from fractions import Fraction

from mpmath import mp, mpc, mpf, workprec

from . import qseries
from .qseries import QSeries

DEFAULT_PREC = 128          # working mantissa bits
_GUARD = 12                 # extra bits inside evaluation contexts
MIN_HEIGHT = 0.4

THETA_LO = mp.pi / 2
THETA_HI = 2 * mp.pi / 3


class TailUnboundedError(ArithmeticError):
    """No finite tail estimate is available for the requested evaluation."""


class NotRealError(ArithmeticError):
    """A quantity that must be real has imaginary part above its error radius."""


def _pad(value) -> mpf:
    # a few ulp at the ambient precision; mpmath rounds to 1/2 ulp per op
    return abs(value) * mpf(2) ** (4 - mp.prec)


class CertValue:
    """Value with a rigorous error radius.  Immutable by convention."""

    __slots__ = ("value", "err")

    def __init__(self, value, err=0):
        self.value = value if isinstance(value, (mpf, mpc)) else mp.mpmathify(value)
        self.err = mpf(err)
        if self.err < 0:
            raise ValueError("negative error radius")

    @classmethod
    def exact(cls, x) -> "CertValue":
        """From an exact rational; the only error is the rounding of x itself."""
        if isinstance(x, int):
            x = Fraction(x)
        if isinstance(x, Fraction):
            v = mpf(x.numerator) / x.denominator
            sign, man, exp, _ = v._mpf_
            if man and Fraction((-man if sign else man) * 2 ** max(exp, 0),
                                2 ** max(-exp, 0)) == x:
                return cls(v, 0)
            if man == 0 and x == 0:
                return cls(v, 0)
            return cls(v, _pad(v))
        v = mp.mpmathify(x)
        return cls(v, _pad(v))

    def __repr__(self):
        return f"CertValue({self.value}, err={self.err})"

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other):
        other = _coerce(other)
        v = self.value + other.value
        return CertValue(v, self.err + other.err + _pad(v))

    __radd__ = __add__

    def __neg__(self):
        return CertValue(-self.value, self.err)

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _coerce(other)
        v = self.value * other.value
        e = (abs(self.value) * other.err + abs(other.value) * self.err
             + self.err * other.err + _pad(v))
        return CertValue(v, e)

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        b, f = abs(other.value), other.err
        if f >= b:
            raise ZeroDivisionError("divisor interval contains zero")
        v = self.value / other.value
        e = (abs(self.value) * f + b * self.err) / (b * (b - f)) + _pad(v)
        return CertValue(v, e)

    def pow_int(self, n: int) -> "CertValue":
        if n < 0:
            raise ValueError("negative powers unsupported")
        result = CertValue(mpf(1))
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    # -- views -------------------------------------------------------------

    def abs(self) -> "CertValue":
        return CertValue(abs(self.value), self.err)

    def real(self) -> "CertValue":
        return CertValue(self.value.real if isinstance(self.value, mpc) else self.value,
                         self.err)

    def imag(self) -> "CertValue":
        return CertValue(self.value.imag if isinstance(self.value, mpc) else mpf(0),
                         self.err)

    def abs_upper(self) -> mpf:
        return abs(self.value) + self.err

    def abs_lower(self) -> mpf:
        lo = abs(self.value) - self.err
        return lo if lo > 0 else mpf(0)

    def widened(self, extra) -> "CertValue":
        return CertValue(self.value, self.err + mpf(extra))

    def certified_sign(self) -> int:
        """-1, 0 or +1; 0 means the interval straddles zero (no certificate)."""
        v = self.value
        if isinstance(v, mpc):
            raise TypeError("sign of a complex value")
        if v - self.err > 0:
            return 1
        if v + self.err < 0:
            return -1
        return 0

    def as_real(self) -> "CertValue":
        """Discard an imaginary part that is within the error radius."""
        if not isinstance(self.value, mpc):
            return self
        if abs(self.value.imag) > self.err:
            raise NotRealError(
                f"imaginary part {self.value.imag} exceeds radius {self.err}")
        return CertValue(self.value.real, self.err)


def _coerce(x) -> CertValue:
    if isinstance(x, CertValue):
        return x
    return CertValue.exact(x)


# ---------------------------------------------------------------------------
# tail bounds


@dataclass(frozen=True)
class EisensteinTail:
    k: int

    def bound(self, trunc: int, r: mpf) -> mpf:
        if self.k == 0:
            return mpf(0)
        gamma = abs(Fraction(2 * self.k) / qseries.bernoulli(self.k))
        ratio = (1 + mpf(1) / (trunc + 1)) ** self.k * r
        if ratio >= 1:
            raise TailUnboundedError(
                f"Eisenstein tail not dominated at trunc={trunc}, r={r}")
        g = mpf(gamma.numerator) / gamma.denominator
        return g * mpf(trunc + 1) ** self.k * r ** (trunc + 1) / (1 - ratio) * (1 + mpf(2) ** -30)


@dataclass(frozen=True)
class JCoeffTail:
    def bound(self, trunc: int, r: mpf) -> mpf:
        y = -mp.log(r) / (2 * mp.pi)
        return j_tail_bound(trunc, y)


@dataclass(frozen=True)
class EtaProductTail:
    def bound(self, trunc: int, r: mpf) -> mpf:
        if r >= 1:
            raise TailUnboundedError("eta tail needs |q| < 1")
        return 2 * r ** (trunc + 1) / (1 - r) * (1 + mpf(2) ** -30)


@dataclass(frozen=True)
class GeometricTail:
    C: float
    rho: float

    def bound(self, trunc: int, r: mpf) -> mpf:
        x = mpf(self.rho) * r
        if x >= 1:
            raise TailUnboundedError(f"geometric ratio {x} >= 1")
        return mpf(self.C) * x ** (trunc + 1) / (1 - x) * (1 + mpf(2) ** -30)


def j_tail_bound(M: int, a) -> mpf:
    """Upper bound for sum_{n > M} c(n) e^(-2 pi a n), needing M > 1/a^2.

    Comes from c(n) <= e^(4 pi sqrt(n)) / (sqrt(2) n^(3/4)) and comparing
    the sum with a geometric series anchored at n = M + 1; the same
    closed form serves as the j-approximation error estimate.
    """
    a = mpf(a)
    if M <= 1 / a ** 2:
        raise TailUnboundedError(f"tail bound needs M > 1/a^2 = {1 / a ** 2}")
    expo = 2 * mp.pi * (1 / a - a * (mp.sqrt(M) - 1 / a) ** 2)
    lead = mp.e ** expo / (2 * mp.sqrt(2) * mp.pi * mpf(M + 1) ** mpf(0.75))
    geo = mp.sqrt(M) / (a * mp.sqrt(M) - 1)
    return lead * geo * (1 + mpf(2) ** -30)


# ---------------------------------------------------------------------------
# evaluation


def _require_height(tau) -> mpf:
    y = mp.im(tau)
    if y < MIN_HEIGHT - mpf(2) ** -40:
        raise ValueError(f"evaluation height Im(tau) = {y} below floor {MIN_HEIGHT}")
    return y


def auto_trunc(y, prec: int) -> int:
    """Truncation order making the q^N tail comparable to the rounding floor."""
    n = int((prec + 24) * 0.6931 / (2 * 3.14159 * float(y))) + 8
    return max(24, n)


def form_arc_prec(ell: int, m: int, floor: int = DEFAULT_PREC) -> int:
    """Working precision for arc evaluation of a basis form.

    The Horner sum for F(j) runs through intermediates comparable to
    prod (|j| + r_i) while the product with Delta^ell collapses to order
    e^(-2 pi m sin theta); the gap grows linearly in ell (empirically
    under 2.8 bits per unit) plus the 2 pi m / log 2 bits of amplitude.
    """
    return max(floor, 64 + 3 * ell + 10 * m)


def eval_series(s: QSeries, tau, tail, prec: int = DEFAULT_PREC) -> CertValue:
    """Certified value of a truncated q-expansion plus its tail bound.

    tail is one of the *Tail dataclasses above and must genuinely cover
    the dropped coefficients of the series being evaluated.
    """
    with workprec(prec + _GUARD):
        y = _require_height(tau)
        q = mp.e ** (2j * mp.pi * mp.mpmathify(tau))
        r = abs(q)
        qc = CertValue(q, _pad(q))
        acc = CertValue(mpf(0))
        for c in reversed(s.coeffs):
            acc = acc * qc
            if c != 0:
                acc = acc + CertValue.exact(c)
        if s.lead > 0:
            acc = acc * qc.pow_int(s.lead)
        elif s.lead < 0:
            acc = acc / qc.pow_int(-s.lead)
        return acc.widened(tail.bound(s.trunc, r))


def eval_delta_eta(tau, terms: int | None = None, prec: int = DEFAULT_PREC) -> CertValue:
    """Delta(tau) through the eta product, sparse pentagonal partial sum.

    terms caps the exponent of the partial product expansion; by default
    it is chosen from the working precision and the height.
    """
    with workprec(prec + _GUARD):
        y = _require_height(tau)
        n_max = terms if terms is not None else auto_trunc(y, prec)
        q = mp.e ** (2j * mp.pi * mp.mpmathify(tau))
        r = abs(q)
        total = mpc(1)
        mag = mpf(1)
        g = 1
        while True:
            e1 = g * (3 * g - 1) // 2
            e2 = g * (3 * g + 1) // 2
            if e1 > n_max and e2 > n_max:
                break
            sign = -1 if g % 2 else 1
            for e in (e1, e2):
                if e <= n_max:
                    t = q ** e
                    total += sign * t
                    mag += abs(t)
            g += 1
        tail = EtaProductTail().bound(n_max, r)
        rounding = mag * (4 * g + 8) * mpf(2) ** (4 - mp.prec)
        p = CertValue(total, tail + rounding)
        return p.pow_int(24) * CertValue(q, _pad(q))


def eval_form(form, tau, prec: int = DEFAULT_PREC, trunc_scale: int = 1) -> CertValue:
    """Certified g_{k,m}(tau) through the factorisation Delta^ell E_k' F(j).

    Evaluating the factored form keeps every ingredient series short even
    for large ell; the huge cancellation between Delta^ell and F(j) is
    absorbed by the unlimited exponent range of the working floats.
    """
    fid = form.id
    with workprec(prec + _GUARD):
        y = _require_height(tau)
        n = auto_trunc(y, prec) * trunc_scale
        dl = eval_delta_eta(tau, terms=n, prec=prec).pow_int(fid.ell)
        if fid.kprime:
            ek = eval_series(qseries.eisenstein(fid.kprime, n), tau,
                             EisensteinTail(fid.kprime), prec=prec)
        else:
            ek = CertValue(mpf(1))
        nj = max(n, int(1 / float(y) ** 2) + 8)
        jv = eval_series(qseries.jfunction(nj), tau, JCoeffTail(), prec=prec)
        acc = CertValue(mpf(0))
        for c in reversed(form.faber.coeffs):
            acc = acc * jv + CertValue.exact(c)
        return dl * ek * acc


# ---------------------------------------------------------------------------
# the boundary arc


@dataclass(frozen=True)
class ArcPoint:
    """Angle theta with e^(i theta) on the arc, pi/2 <= theta <= 2 pi/3."""

    theta: float

    def __post_init__(self):
        t = float(self.theta)
        if not (1.5707 <= t <= 2.0944):
            raise ValueError(f"theta = {t} off the arc [pi/2, 2pi/3]")


@dataclass
class ArcValues:
    """The four real-valued arc functions at a common angle.

    e2 = e^(i theta) E_2 + 3/(i pi)   (the modified weight-2 function),
    e4, e6 = e^(i k theta / 2) E_k, and delta_arc = e^(6 i theta) Delta.
    """

    theta: float
    e2: CertValue
    e4: CertValue
    e6: CertValue
    delta_arc: CertValue


def _theta_mpf(p) -> mpf:
    t = mpf(p.theta if isinstance(p, ArcPoint) else p)
    lo, hi = mp.pi / 2, 2 * mp.pi / 3
    if t < lo:
        if lo - t > mpf(1e-9):
            raise ValueError("theta below pi/2")
        t = lo
    if t > hi:
        if t - hi > mpf(1e-9):
            raise ValueError("theta above 2pi/3")
        t = hi
    return t


def arc_functions(p, trunc: int | None = None, prec: int = DEFAULT_PREC) -> ArcValues:
    """Certified values of e2, e4, e6, delta_arc at an arc angle.

    Each is provably real; NotRealError if an imaginary part survives
    outside the propagated radius.
    """
    with workprec(prec + _GUARD):
        theta = _theta_mpf(p)
        tau = mp.e ** (1j * theta)
        n = trunc if trunc is not None else auto_trunc(mp.sin(theta), prec)
        ph = CertValue(mp.e ** (1j * theta), _pad(tau))
        vals = {}
        for k in (2, 4, 6):
            ev = eval_series(qseries.eisenstein(k, n), tau, EisensteinTail(k), prec=prec)
            vals[k] = ev
        d = eval_delta_eta(tau, terms=n, prec=prec)
        e2 = (ph * vals[2] + CertValue(mpc(0, -3) / mp.pi, _pad(mpf(1)))).as_real()
        e4 = (ph.pow_int(2) * vals[4]).as_real()
        e6 = (ph.pow_int(3) * vals[6]).as_real()
        da = (ph.pow_int(6) * d).as_real()
        return ArcValues(float(theta), e2, e4, e6, da)


def arc_form(form, p, prec: int = DEFAULT_PREC, trunc_scale: int = 1) -> CertValue:
    """The real function e^(i k theta / 2) g_{k,m}(e^(i theta)) on the arc."""
    with workprec(prec + _GUARD):
        theta = _theta_mpf(p)
        tau = mp.e ** (1j * theta)
        phase = CertValue(mp.e ** (1j * theta * form.id.k / 2), _pad(mpf(1)))
        val = eval_form(form, tau, prec=prec, trunc_scale=trunc_scale)
        return (phase * val).as_real()


def arc_j(p, prec: int = DEFAULT_PREC) -> CertValue:
    """j(e^(i theta)) computed as e4^3 / delta_arc; real, 0 at the rho end."""
    av = arc_functions(p, prec=prec)
    with workprec(prec + _GUARD):
        num = av.e4.pow_int(3)
        return num / av.delta_arc


# ---------------------------------------------------------------------------
# lemniscate constants


@dataclass
class LemniscateConstants:
    varpi: CertValue        # 2 * integral_0^1 dx / sqrt(1 - x^4)
    varpi_prime: CertValue  # 2 * integral_0^1 dx / sqrt(1 - x^6)


def lemniscate_constants(prec: int = DEFAULT_PREC) -> LemniscateConstants:
    """Both arclength integrals by tanh-sinh quadrature, radius <= 1e-9.

    The quadrature's own error estimate is inflated by three orders of
    magnitude before being trusted; the values are independently pinned
    by tests against Delta(i) and E_6(rho) evaluations.
    """
    out = []
    with workprec(prec + 64):
        for power in (4, 6):
            val, est = mp.quad(lambda x: 2 / mp.sqrt(1 - x ** power),
                               [0, 1], error=True)
            err = est * 1000 + _pad(val)
            if err > mpf(1e-9):
                raise ArithmeticError(f"quadrature radius {err} too large")
            out.append(CertValue(val, err))
    return LemniscateConstants(varpi=out[0], varpi_prime=out[1])


# ---------------------------------------------------------------------------
# export


ARC_FUNCTION_NAMES = ("e2", "e4", "e6", "delta_arc")


def arc_grid(step: float = 1e-3) -> list:
    """Deterministic closed theta grid over [pi/2, 2pi/3] with the given step."""
    lo, hi = float(mp.pi / 2), float(2 * mp.pi / 3)
    n = int((hi - lo) / step)
    pts = [lo + i * step for i in range(n + 1)]
    if pts[-1] < hi:
        pts.append(hi)
    return pts


def export_arc_csv(name: str, outfile, step: float = 1e-3,
                   prec: int = DEFAULT_PREC) -> int:
    """Write theta,value,err rows for one arc function; returns the row count."""
    if name not in ARC_FUNCTION_NAMES:
        raise ValueError(f"unknown arc function {name!r}")
    writer = csv.writer(outfile)
    writer.writerow(["theta", "value", "err"])
    rows = 0
    for theta in arc_grid(step):
        av = arc_functions(theta, prec=prec)
        cv = getattr(av, name)
        writer.writerow([repr(theta), repr(float(cv.value)), repr(float(cv.err))])
        rows += 1
    return rows
