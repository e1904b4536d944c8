"""Locate and certify the point where both interface energy conditions are equalities.

``e3`` is affine in ``delta2``, so ``delta2`` is eliminated exactly and the
search reduces to a scalar root of ``h(rho1) = e4(rho1, delta2_on_e3(rho1))``,
found by bisection. A floating root is snapped to small rationals and the
snapped point is re-checked in exact arithmetic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .errors import (
    DegenerateCoefficient, DomainError, ExactnessUnavailable, NoSignChange, NotRepresentable,
    SubsolutionViolated,
)
from .model import AUTO, EXACT, FLOATING, FanCandidate, PressureLaw, RiemannData, to_float
from .parametrization import (
    ParamPoint, e3_coefficients, evaluate_grid, reconstruct_candidate, sr_conditions,
)
from .verifier import DEFAULT_TOL_EQ, ConditionReport, condition_residuals, verify_energy_conserving

COEFFICIENT_FLOOR = 1e-12
DEFAULT_MAX_DEN = 10**6
REFINE_SAMPLES = 64


def delta2_on_e3(rho1, data: RiemannData, law: PressureLaw, mode: str = AUTO):
    """The unique ``delta2`` with ``e3(rho1, delta2) == 0``."""
    value0, slope = e3_coefficients(rho1, data, law, mode)
    floor = 0 if not isinstance(slope, float) else COEFFICIENT_FLOOR
    if abs(slope) <= floor:
        raise DegenerateCoefficient(f"delta2-coefficient of e3 vanishes at rho1 = {to_float(rho1)}")
    return -value0 / slope


def apex_residual(rho1: float, data: RiemannData, law: PressureLaw) -> float:
    """``h(rho1)``: the right energy residual on the curve ``e3 = 0``."""
    d2 = delta2_on_e3(float(rho1), data, law, FLOATING)
    # delta2 may be non-positive off the feasible region; evaluate the formula anyway
    return _e4_unchecked(float(rho1), d2, data, law)


def _e4_unchecked(rho1, delta2, data, law):
    return float(evaluate_grid(np.array(rho1), np.array(delta2), data, law)["e4"])


@dataclass(frozen=True)
class ApexResult:
    point: ParamPoint
    candidate: FanCandidate
    report: ConditionReport
    e3: float
    e4: float
    iterations: int
    bracket: tuple


def _bisect(f, lo, hi, flo, tol, max_iter=300):
    it = 0
    while it < max_iter:
        it += 1
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0 or (abs(fm) <= tol and hi - lo <= tol):
            return mid, it
        if (fm < 0) == (flo < 0):
            lo, flo = mid, fm
        else:
            hi = mid
        if hi - lo <= 4 * np.finfo(float).eps * max(1.0, abs(mid)):
            return 0.5 * (lo + hi), it
    return 0.5 * (lo + hi), it


def find_apex(data: RiemannData, law: PressureLaw, bracket=(1.5, 3.0), tol: float = 1e-10,
              tol_eq: float = DEFAULT_TOL_EQ) -> ApexResult:
    """Bisect ``h`` on ``bracket`` and assemble the energy conserving candidate.

    When the end values share a sign the bracket is subdivided into
    :data:`REFINE_SAMPLES` pieces and the leftmost sign change is used. Raises
    :class:`NoSignChange` if none exists and :class:`SubsolutionViolated` if the
    root fails ``delta1 > 0``, ``delta2 > 0`` or the strict subsolution
    inequalities.
    """
    lo, hi = (float(b) for b in bracket)
    rm, rp = to_float(data.minus.rho), to_float(data.plus.rho)
    if not (rm < lo < hi < rp):
        raise DomainError(f"bracket [{lo}, {hi}] is not inside ({rm}, {rp})")
    fdata = data.converted(FLOATING)

    def h(r):
        return apex_residual(r, fdata, law)

    flo, fhi = h(lo), h(hi)
    if flo == 0:
        root, its = lo, 0
    elif fhi == 0:
        root, its = hi, 0
    else:
        if (flo < 0) == (fhi < 0):
            xs = np.linspace(lo, hi, REFINE_SAMPLES + 1)
            hs = [h(x) for x in xs]
            for k in range(REFINE_SAMPLES):
                if hs[k] == 0 or (hs[k] < 0) != (hs[k + 1] < 0):
                    lo, hi, flo = xs[k], xs[k + 1], hs[k]
                    break
            else:
                raise NoSignChange(f"h keeps one sign on [{bracket[0]}, {bracket[1]}]")
        root, its = (lo, 0) if flo == 0 else _bisect(h, lo, hi, flo, tol)

    root = float(root)
    d2 = float(delta2_on_e3(root, fdata, law, FLOATING))
    if not d2 > 0:
        raise SubsolutionViolated(f"delta2 = {d2} <= 0 at the root rho1 = {root}")
    point = ParamPoint(root, d2)
    sr = sr_conditions(point, fdata, law, FLOATING)
    cand = reconstruct_candidate(point, fdata, law, FLOATING)
    _, report = verify_energy_conserving(fdata, cand, law, FLOATING, tol_eq)
    result = ApexResult(point, cand, report, float(sr.e3), float(sr.e4), its, (lo, hi))
    if not sr.delta1 > 0:
        raise SubsolutionViolated(f"delta1 = {sr.delta1} <= 0 at the root", result)
    for name in ("order", "sc1", "sc2"):
        if not report[name].residual > 0:
            raise SubsolutionViolated(f"{name} fails at the root", result)
    return result


def convergents(x: Fraction):
    """Continued-fraction convergents of a rational, in order."""
    p0, q0, p1, q1 = 0, 1, 1, 0
    num, den = x.numerator, x.denominator
    while den:
        a, r = divmod(num, den)
        p0, q0, p1, q1 = p1, q1, a * p1 + p0, a * q1 + q0
        yield Fraction(p1, q1)
        num, den = den, r


def snap_to_exact(x: float, max_den: int = DEFAULT_MAX_DEN) -> Fraction | None:
    """Smallest-denominator convergent ``p/q`` of ``x`` with ``q <= max_den`` and
    ``|x - p/q| < 1/(2*q*max_den)``; ``None`` when no convergent qualifies."""
    if max_den < 1:
        raise ValueError("max_den must be at least 1")
    if not math.isfinite(x):
        return None
    fx = Fraction(x)
    for c in convergents(fx):
        if c.denominator > max_den:
            break
        if abs(fx - c) < Fraction(1, 2 * c.denominator * max_den):
            return c
    return None


def certify_apex(data: RiemannData, law: PressureLaw, p: ParamPoint) -> ConditionReport:
    """Rebuild the candidate at a rational point and evaluate everything exactly.

    Raises :class:`NotRepresentable` when a square root leaves Q(sqrt2).
    """
    for v in (p.rho1, p.delta2):
        if not isinstance(v, (Fraction, int)):
            raise ExactnessUnavailable(f"certification needs rational coordinates, got {v!r}")
    cand = reconstruct_candidate(p, data, law, EXACT)
    return condition_residuals(data, cand, law, EXACT)


@dataclass
class ApexCertificate:
    """Outcome of the find, snap and certify pipeline.

    ``outcome`` is one of ``"certified"``, ``"not_certified"`` (exact residuals
    nonzero), ``"no_snap"`` and ``"not_representable"``; the last three all mean
    a floating root was found but exact certification failed.
    """

    apex: ApexResult
    outcome: str
    snapped: ParamPoint | None = None
    exact_candidate: FanCandidate | None = None
    report: ConditionReport | None = None
    detail: str = ""

    @property
    def certified(self) -> bool:
        return self.outcome == "certified"


def find_and_certify(data, law, bracket=(1.5, 3.0), tol=1e-10, max_den=DEFAULT_MAX_DEN) -> ApexCertificate:
    apex = find_apex(data, law, bracket, tol)
    r1 = snap_to_exact(apex.point.rho1, max_den)
    d2 = snap_to_exact(apex.point.delta2, max_den)
    if r1 is None or d2 is None or not d2 > 0:
        return ApexCertificate(apex, "no_snap", detail="floating root has no small-denominator snap")
    snapped = ParamPoint(r1, d2)
    try:
        cand = reconstruct_candidate(snapped, data, law, EXACT)
    except (NotRepresentable, ExactnessUnavailable) as exc:
        return ApexCertificate(apex, "not_representable", snapped, detail=str(exc))
    report = condition_residuals(data, cand, law, EXACT)
    outcome = "certified" if report.energy_conserving else "not_certified"
    return ApexCertificate(apex, outcome, snapped, cand, report)
