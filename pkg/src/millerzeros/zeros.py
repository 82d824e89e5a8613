"""Zero location and counting for the basis forms g_{k,m}.

Two independent mechanisms see every zero:

  * exact Sturm-chain isolation of the Faber polynomial over the
    rationals, which decides "all roots real, simple, inside [0, 1728]"
    as a theorem-grade statement;
  * certified sign changes of the real arc function
    G(theta) = e^(i k theta / 2) g_{k,m}(e^(i theta)) sampled at the
    angles where h(theta) = k theta / 2 + 2 pi m cos theta crosses
    multiples of pi.

The j-images of the arc brackets must land in the Faber isolating
intervals, and the valence formula must reconcile exactly; both checks
are assembled into a ZeroReport.

Sturm chains here use dense rational arithmetic, entirely adequate for
the degrees this package isolates exactly (the exhaustive sweeps stop at
degree 13); arc localization alone handles the large-ell forms.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from mpmath import mp, mpf, workprec

from .evalnum import DEFAULT_PREC, arc_form, arc_j, form_arc_prec
from .miller import IntPolynomial, MillerForm, miller_form
from .qseries import EXTRA_WEIGHTS, FormId

ROOT_WIDTH = Fraction(1728, 10 ** 6)    # default isolating interval width


class InconclusiveSignError(ArithmeticError):
    """An arc sample's magnitude fell inside its error radius."""

    def __init__(self, theta, attempt):
        super().__init__(f"sign not certified at theta={theta} (attempt {attempt})")
        self.theta = theta
        self.attempt = attempt


class TheoremViolationError(AssertionError):
    def __init__(self, fid: FormId, reason: str):
        super().__init__(f"g_{{{fid.k},{fid.m}}}: {reason}")
        self.fid = fid
        self.reason = reason


# ---------------------------------------------------------------------------
# exact polynomial tools


def _poly_trim(c: list) -> list:
    while len(c) > 1 and c[-1] == 0:
        c.pop()
    return c


def _poly_eval(c: list, x: Fraction):
    acc = 0
    for a in reversed(c):
        acc = acc * x + a
    return acc


def _poly_divmod(a: list, b: list) -> tuple:
    a = [Fraction(x) for x in a]
    b = [Fraction(x) for x in b]
    q = [Fraction(0)] * max(1, len(a) - len(b) + 1)
    while len(a) >= len(b) and any(a):
        if a[-1] == 0:
            a.pop()
            continue
        shift = len(a) - len(b)
        f = a[-1] / b[-1]
        q[shift] = f
        for i, bc in enumerate(b):
            a[i + shift] -= f * bc
        a.pop()
    return _poly_trim(q), _poly_trim(a or [Fraction(0)])


def _primitive(c: list) -> list:
    """Clear denominators and content; the positive scale keeps all signs."""
    denom = 1
    for x in c:
        denom = denom * Fraction(x).denominator // gcd(denom, Fraction(x).denominator)
    ints = [int(Fraction(x) * denom) for x in c]
    g = 0
    for x in ints:
        g = gcd(g, abs(x))
    return [x // g for x in ints] if g else ints


def _poly_gcd(a: list, b: list) -> list:
    a, b = _primitive(a), _primitive(b)
    while any(b) and len(b) > 1 or (len(b) == 1 and b[0] != 0):
        _, r = _poly_divmod(a, b)
        a, b = b, _primitive(r)
        if b == [0]:
            break
    return a


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    if p.degree <= 1:
        return p
    g = _poly_gcd(list(p.coeffs), list(p.derivative().coeffs))
    if len(g) == 1:
        return p
    q, r = _poly_divmod(list(p.coeffs), g)
    assert r == [Fraction(0)] or not any(r), "gcd must divide"
    return IntPolynomial.make(_primitive(q))


def sturm_chain(p: IntPolynomial) -> list:
    chain = [_primitive(list(p.coeffs)), _primitive(list(p.derivative().coeffs))]
    while True:
        _, r = _poly_divmod(chain[-2], chain[-1])
        if not any(r):
            break
        chain.append(_primitive([-x for x in r]))
        if len(chain[-1]) == 1 and chain[-1][0] != 0:
            break
    return chain


def _sign_changes(chain: list, x: Fraction) -> int:
    signs = []
    for c in chain:
        v = _poly_eval(c, x)
        if v != 0:
            signs.append(1 if v > 0 else -1)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def _count_in(chain: list, lo: Fraction, hi: Fraction) -> int:
    """Distinct real roots in the half-open interval (lo, hi]."""
    return _sign_changes(chain, lo) - _sign_changes(chain, hi)


def cauchy_bound(p: IntPolynomial) -> Fraction:
    lead = abs(p.coeffs[-1])
    m = max(abs(c) for c in p.coeffs[:-1]) if p.degree > 0 else 0
    return 1 + Fraction(m, lead)


def _safe_point(p: list, lo: Fraction, hi: Fraction) -> Fraction:
    """A bisection point in (lo, hi) that is not a root of p."""
    mid = (lo + hi) / 2
    step = (hi - lo) / 64
    for i in range(32):
        cand = mid + i * step / 32
        if cand < hi and _poly_eval(p, cand) != 0:
            return cand
    raise ArithmeticError("could not find a root-free bisection point")


def sturm_isolate(p: IntPolynomial, lo: Fraction, hi: Fraction,
                  width: Fraction = ROOT_WIDTH) -> list:
    """Disjoint rational intervals, one distinct real root of p in each.

    The square-free part is taken internally; every real root of p in
    [lo, hi] is covered.  Endpoint roots come back as degenerate
    (r, r) pairs.  Intervals are refined below the requested width.
    """
    lo, hi = Fraction(lo), Fraction(hi)
    sqf = squarefree_part(p)
    c = list(sqf.coeffs)
    out = []
    if _poly_eval(c, lo) == 0:
        out.append((lo, lo))
    if hi != lo and _poly_eval(c, hi) == 0:
        out.append((hi, hi))
    chain = sturm_chain(sqf)
    eps = width / 2 ** 10

    def inner(a: Fraction, b: Fraction):
        n = _count_in(chain, a, b)
        if n == 0:
            return
        if n == 1 and b - a <= width:
            out.append((a, b))
            return
        mid = _safe_point(c, a, b)
        inner(a, mid)
        inner(mid, b)

    a0 = lo + eps if _poly_eval(c, lo) == 0 else lo
    b0 = hi - eps if _poly_eval(c, hi) == 0 else hi
    if b0 > a0:
        inner(a0, b0)
    out.sort()
    return out


def isolate_real_roots(p: IntPolynomial, width: Fraction = ROOT_WIDTH) -> list:
    b = cauchy_bound(p)
    return sturm_isolate(p, -b, b, width)


def count_off_interval(p: IntPolynomial, lo: Fraction = Fraction(0),
                       hi: Fraction = Fraction(1728)) -> dict:
    """Distinct real roots outside [lo, hi] plus conjugate complex pairs."""
    sqf = squarefree_part(p)
    if sqf.degree <= 0:
        return {"real_outside": 0, "complex_pairs": 0}
    chain = sturm_chain(sqf)
    b = max(cauchy_bound(sqf), Fraction(hi) + 1)
    total = _count_in(chain, -b, b)
    lo, hi = Fraction(lo), Fraction(hi)
    inside = _count_in(chain, lo, hi)
    if _poly_eval(list(sqf.coeffs), lo) == 0:
        inside += 1
    outside = total - inside
    return {"real_outside": outside,
            "complex_pairs": (sqf.degree - total) // 2}


# ---------------------------------------------------------------------------
# the phase function h and the sample angles


@dataclass(frozen=True)
class HFunction:
    """h(theta) = k theta / 2 + 2 pi m cos theta, increasing once k > 4 pi m."""

    k: int
    m: int

    def __call__(self, theta):
        t = mpf(theta)
        return self.k * t / 2 + 2 * mp.pi * self.m * mp.cos(t)

    @property
    def monotone(self) -> bool:
        return self.k > 4 * math.pi * self.m

    def sample_angles(self) -> list:
        """Angles where h hits integer multiples of pi, endpoints included.

        h runs from k pi / 4 to (k/3 - m) pi; the multiples in between
        are n = ceil(k/4) .. floor(k/3 - m), one angle per multiple by
        monotonicity, found by plain bisection.
        """
        if not self.monotone:
            raise ValueError(f"h not monotone for k={self.k}, m={self.m}")
        n0 = -((-self.k) // 4)
        n_last = (self.k - 3 * self.m) // 3
        out = []
        with workprec(96):
            lo_all, hi_all = mp.pi / 2, 2 * mp.pi / 3
            for n in range(n0, n_last + 1):
                target = n * mp.pi
                if 4 * n == self.k:
                    out.append((n, lo_all))
                    continue
                if 3 * n == self.k - 3 * self.m:
                    out.append((n, hi_all))
                    continue
                a, b = lo_all, hi_all
                for _ in range(110):
                    mid = (a + b) / 2
                    if self(mid) < target:
                        a = mid
                    else:
                        b = mid
                out.append((n, (a + b) / 2))
        return out


# ---------------------------------------------------------------------------
# certified arc localization


_RETRIES = ((1, 0), (2, 128), (4, 384), (8, 1024))


def _certified_arc_sign(form: MillerForm, theta, base_prec: int) -> int:
    """Sign of G(theta) with the escalation ladder; 0 is never returned."""
    for attempt, (scale, extra) in enumerate(_RETRIES):
        v = arc_form(form, theta, prec=base_prec + extra, trunc_scale=scale)
        s = v.certified_sign()
        if s != 0:
            return s
    raise InconclusiveSignError(float(theta), len(_RETRIES))


def arc_zero_localize(form: MillerForm, prec: int = DEFAULT_PREC) -> list:
    """Bracketing angle intervals for the arc zeros of g_{k,m}.

    Samples G at the h-multiple angles; each certified sign change
    brackets at least one zero, and under the oscillation estimate the
    signs alternate so exactly ell - m brackets appear.  Angles whose
    sample sits at a corner zero of the form (an exact Faber root at 0
    or 1728) are skipped rather than certified.
    """
    fid = form.id
    if form.faber.degree <= 0:
        return []
    h = HFunction(fid.k, fid.m)
    base = form_arc_prec(fid.ell, fid.m, prec)
    skip_i = form.faber(1728) == 0
    skip_rho = form.faber(0) == 0
    samples = []
    for n, theta in h.sample_angles():
        if skip_i and 4 * n == fid.k:
            continue
        if skip_rho and 3 * n == fid.k - 3 * fid.m:
            continue
        samples.append((n, theta, _certified_arc_sign(form, theta, base)))
    out = []
    for (n1, t1, s1), (n2, t2, s2) in zip(samples, samples[1:]):
        if s1 != s2:
            out.append((float(t1), float(t2)))
    return out


def refine_arc_zero(form: MillerForm, lo: float, hi: float,
                    width: float = 1e-5, prec: int = DEFAULT_PREC) -> tuple:
    """Shrink a single sign-change bracket by certified bisection."""
    fid = form.id
    base = form_arc_prec(fid.ell, fid.m, prec)
    lo, hi = mpf(lo), mpf(hi)
    s_lo = _certified_arc_sign(form, lo, base)
    while hi - lo > width:
        mid = (lo + hi) / 2
        if _certified_arc_sign(form, mid, base) == s_lo:
            lo = mid
        else:
            hi = mid
    return (float(lo), float(hi))


def j_of_angle(interval, prec: int = DEFAULT_PREC) -> tuple:
    """Certified rational enclosure of j(e^{i theta}) over an angle interval.

    j is strictly decreasing along the arc, so the image is spanned by
    the endpoint evaluations widened by their radii.
    """
    lo, hi = interval if isinstance(interval, tuple) else (interval, interval)
    top = arc_j(lo, prec=prec)
    bot = arc_j(hi, prec=prec)
    hi_val = Fraction(str(mp.nstr(top.value + top.err, 30)))
    lo_val = Fraction(str(mp.nstr(bot.value - bot.err, 30)))
    return (lo_val, hi_val)


# ---------------------------------------------------------------------------
# trivial orders and the valence formula


def trivial_orders(kprime: int) -> tuple:
    """(order at i, order at rho) of the Eisenstein factor E_{k'}.

    E_6 vanishes simply at i and E_4 simply at rho; E_{k'} factors as
    E_4^a E_6^b with 4a + 6b = k'.
    """
    table = {0: (0, 0), 4: (1, 0), 6: (0, 1), 8: (2, 0), 10: (1, 1), 14: (2, 1)}
    a, b = table[kprime]
    return (b, a)


@dataclass
class ZeroReport:
    id: FormId
    arc_angles: list                    # (theta_lo, theta_hi) float pairs
    faber_roots_in: list                # rational isolating intervals in (0, 1728)
    faber_roots_out: dict               # real_outside / complex_pairs counts
    boundary_mult: dict                 # exact Faber roots at 0 and 1728
    ord_infty: int
    trivial_i: int
    trivial_rho: int
    squarefree_defect: int
    valence_ok: bool = False

    def to_json_dict(self) -> dict:
        return {
            "k": self.id.k, "m": self.id.m, "ell": self.id.ell,
            "kprime": self.id.kprime,
            "arc_angles": [[a, b] for a, b in self.arc_angles],
            "faber_roots_in": [[str(a), str(b)] for a, b in self.faber_roots_in],
            "faber_roots_out": self.faber_roots_out,
            "boundary_mult": {str(k): v for k, v in self.boundary_mult.items()},
            "ord_infty": self.ord_infty,
            "trivial_i": self.trivial_i,
            "trivial_rho": self.trivial_rho,
            "squarefree_defect": self.squarefree_defect,
            "valence_ok": self.valence_ok,
        }


def _boundary_multiplicity(p: IntPolynomial, at: int) -> tuple:
    """Deflate exact roots at a rational point; (multiplicity, quotient)."""
    mult = 0
    while p.degree >= 0 and p(at) == 0 and p.degree > 0:
        q, r = _poly_divmod(list(p.coeffs), [-at, 1])
        assert not any(r)
        p = IntPolynomial.make(_primitive(q))
        mult += 1
    return mult, p


def zero_report(form: MillerForm, with_arc: bool = True,
                prec: int = DEFAULT_PREC) -> ZeroReport:
    fid = form.id
    mult0, deflated = _boundary_multiplicity(form.faber, 0)
    mult1728, deflated = _boundary_multiplicity(deflated, 1728)
    sqf = squarefree_part(deflated)
    defect = deflated.degree - sqf.degree
    if deflated.degree > 0:
        # deflation guarantees nonzero values at both interval ends
        inner = sturm_isolate(deflated, Fraction(0), Fraction(1728))
        off = count_off_interval(deflated)
    else:
        inner, off = [], {"real_outside": 0, "complex_pairs": 0}
    ti, trho = trivial_orders(fid.kprime)
    report = ZeroReport(
        id=fid,
        arc_angles=arc_zero_localize(form, prec=prec) if with_arc else [],
        faber_roots_in=inner,
        faber_roots_out=off,
        boundary_mult={0: mult0, 1728: mult1728},
        ord_infty=fid.m,
        trivial_i=ti + 2 * mult1728,
        trivial_rho=trho + 3 * mult0,
        squarefree_defect=defect,
    )
    report.valence_ok = valence_reconcile(report, faber_degree=form.faber.degree)
    return report


def valence_reconcile(report: ZeroReport, faber_degree: int | None = None) -> bool:
    """Exact rational valence identity for the assembled report.

    ord_infty + ord_i/2 + ord_rho/3 + (nontrivial zeros with
    multiplicity) must equal k/12.  The nontrivial count is the Faber
    degree minus the boundary multiplicities; the report's Sturm data
    must also account for every one of those roots.
    """
    fid = report.id
    if faber_degree is None:
        faber_degree = (fid.ell - fid.m)
    nontrivial = faber_degree - report.boundary_mult[0] - report.boundary_mult[1728]
    total = (Fraction(report.ord_infty)
             + Fraction(report.trivial_i, 2)
             + Fraction(report.trivial_rho, 3)
             + nontrivial)
    if total != Fraction(fid.k, 12):
        return False
    distinct = (len(report.faber_roots_in)
                + report.faber_roots_out["real_outside"]
                + 2 * report.faber_roots_out["complex_pairs"])
    return distinct + report.squarefree_defect == nontrivial


# ---------------------------------------------------------------------------
# the exhaustive small-weight sweep


def _theorem_case(args) -> tuple:
    k, trunc = args
    form = miller_form(k, 1)
    rep = zero_report(form, with_arc=False)
    ok = (rep.faber_roots_out["real_outside"] == 0
          and rep.faber_roots_out["complex_pairs"] == 0
          and rep.squarefree_defect == 0)
    return k, ok, rep


def verify_theorem_m1(max_ell: int = 14, jobs: int = 1) -> list:
    """All g_{k,1} with 1 <= ell <= max_ell have real simple Faber roots
    inside [0, 1728]; raises TheoremViolationError at the first failure.

    Covers every extra weight, 6 forms per ell.  Combined with the
    oscillation estimate for ell >= 15 this machine-checks the full
    on-arc statement for m = 1.
    """
    ks = sorted(12 * ell + kp for ell in range(1, max_ell + 1)
                for kp in EXTRA_WEIGHTS)
    work = [(k, None) for k in ks]
    if jobs > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_theorem_case, work))
    else:
        results = [_theorem_case(w) for w in work]
    out = []
    for k, ok, rep in results:
        if not ok:
            raise TheoremViolationError(rep.id, "Faber roots leave [0, 1728]")
        if not rep.valence_ok:
            raise TheoremViolationError(rep.id, "valence reconciliation failed")
        out.append((k, rep))
    return out


# ---------------------------------------------------------------------------
# distribution of the arc zeros


@dataclass
class DistributionStats:
    k: int
    m: int
    count: int
    discrepancy: float
    histogram: list
    angles: list = field(default_factory=list)

    def to_json_dict(self) -> dict:
        return {"k": self.k, "m": self.m, "count": self.count,
                "discrepancy": self.discrepancy, "histogram": self.histogram}


def star_discrepancy(unit_points: list) -> float:
    """Sup-distance between the empirical cdf of points in [0,1] and x."""
    pts = sorted(unit_points)
    n = len(pts)
    if n == 0:
        return 1.0
    worst = 0.0
    for i, u in enumerate(pts, start=1):
        worst = max(worst, abs(i / n - u), abs(u - (i - 1) / n))
    return worst


def zero_angles(form: MillerForm, width: float = 1e-5,
                prec: int = DEFAULT_PREC) -> list:
    brackets = arc_zero_localize(form, prec=prec)
    out = []
    for lo, hi in brackets:
        a, b = refine_arc_zero(form, lo, hi, width=width, prec=prec)
        out.append((a + b) / 2)
    return out


def distribution_stats(fid_list: list, bins: int = 8,
                       prec: int = DEFAULT_PREC) -> list:
    """Histogram and star discrepancy of normalized zero angles per form.

    Angles are mapped to [0, 1] by u = (theta - pi/2) / (pi/6); uniform
    distribution of the zeros corresponds to the uniform measure there.
    """
    lo = math.pi / 2
    span = math.pi / 6
    out = []
    for fid in fid_list:
        if isinstance(fid, tuple):
            fid = FormId.from_k(*fid)
        form = miller_form(fid.k, fid.m)
        angles = zero_angles(form, prec=prec)
        units = [(t - lo) / span for t in angles]
        hist = [0] * bins
        for u in units:
            hist[min(bins - 1, int(u * bins))] += 1
        out.append(DistributionStats(k=fid.k, m=fid.m, count=len(units),
                                     discrepancy=star_discrepancy(units),
                                     histogram=hist, angles=angles))
    return out
