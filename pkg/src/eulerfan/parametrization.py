"""Two-parameter reduction of the fan-subsolution system.

With ``delta1 = C1/2 - v12**2 - u11`` and ``delta2 = C1/2 - v11**2 + u11`` the six
Rankine-Hugoniot relations leave two free parameters, ``rho1`` and ``delta2``.
The normal velocity ``v12`` and ``delta1`` become closed-form functions of
``rho1``; the interface energy relations become the two conditions ``e3 <= 0`` and
``e4 <= 0`` (equalities for an energy conserving fan).

The formula helpers prefixed ``_`` take already mode-homogeneous scalars, or
numpy arrays, so the region scanner reuses them unchanged.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DegenerateSpeeds, DomainError, ExactnessUnavailable, ModeMismatch, NotRepresentable,
)
from .model import (
    AUTO, EXACT, FLOATING, FanCandidate, PressureLaw, RiemannData, TracelessSym, is_exact_scalar,
    pressure, pressure_potential, sign, sqrt, to_exact, to_float,
)
from .verifier import Verdict


@dataclass(frozen=True)
class ParamPoint:
    rho1: object
    delta2: object

    def __post_init__(self):
        if not self.rho1 > 0:
            raise DomainError(f"rho1 must be positive, got {self.rho1}")
        if not self.delta2 > 0:
            raise DomainError(f"delta2 must be positive, got {self.delta2}")


@dataclass(frozen=True)
class SRReport:
    """Verdicts and slacks of the four conditions at one ``(rho1, delta2)``.

    ``cond1``: rho- < rho1 < rho+ (slack = distance to the nearer end);
    ``cond2``: delta1 > 0; ``cond3``/``cond4``: ``e3 <= 0`` / ``e4 <= 0``.
    ``degenerate_right`` flags ``v12(rho1) == v+2``, where both sides of the right
    energy condition vanish for every ``delta2``.
    """

    mode: str
    cond1: Verdict
    cond2: Verdict
    cond3: Verdict
    cond4: Verdict
    slack1: object
    delta1: object
    e3: object
    e4: object
    v12: object
    degenerate_right: bool

    @property
    def all_satisfied(self) -> bool:
        return all(c is Verdict.SATISFIED for c in (self.cond1, self.cond2, self.cond3, self.cond4))


# -- raw formulas ------------------------------------------------------------

def _bracket(data: RiemannData, law: PressureLaw):
    """``(rho- - rho+)(p(rho-) - p(rho+)) - rho+ rho- (v-2 - v+2)**2``."""
    rm, rp = data.minus.rho, data.plus.rho
    dv = data.minus.v2 - data.plus.v2
    return (rm - rp) * (pressure(law, rm) - pressure(law, rp)) - rp * rm * dv * dv


def _v12(rho1, data, law, root=sqrt):
    rm, rp = data.minus.rho, data.plus.rho
    vm2, vp2 = data.minus.v2, data.plus.v2
    rad = _bracket(data, law) * (rho1 - rm) * (rp - rho1)
    return (-rm * vm2 * (rp - rho1) - rp * vp2 * (rho1 - rm) + root(rad)) / (rho1 * (rm - rp))


def _delta1(rho1, data, law, root=sqrt):
    rm, rp = data.minus.rho, data.plus.rho
    vm2, vp2 = data.minus.v2, data.plus.v2
    inner = rp * (vm2 - vp2) + root(_bracket(data, law) * (rp - rho1) / (rho1 - rm))
    return (-(pressure(law, rho1) - pressure(law, rm)) / rho1
            + rm * (rho1 - rm) / (rho1 * rho1 * (rm - rp) ** 2) * inner * inner)


def _e3(rho1, delta2, v12, delta1, data, law):
    rm, vm2 = data.minus.rho, data.minus.v2
    pm, p1 = pressure(law, rm), pressure(law, rho1)
    Pm, P1 = pressure_potential(law, rm), pressure_potential(law, rho1)
    lhs = (v12 - vm2) * (pm + p1 - 2 * (rho1 * Pm - rm * P1) / (rm - rho1))
    rhs = delta1 * rho1 * (v12 + vm2) - (delta1 + delta2) * rm * rho1 * (v12 - vm2) / (rm - rho1)
    return lhs - rhs


def _e4(rho1, delta2, v12, delta1, data, law):
    rp, vp2 = data.plus.rho, data.plus.v2
    p1, pp = pressure(law, rho1), pressure(law, rp)
    P1, Pp = pressure_potential(law, rho1), pressure_potential(law, rp)
    lhs = (vp2 - v12) * (p1 + pp - 2 * (rp * P1 - rho1 * Pp) / (rho1 - rp))
    rhs = -delta1 * rho1 * (vp2 + v12) + (delta1 + delta2) * rho1 * rp * (vp2 - v12) / (rho1 - rp)
    return lhs - rhs


def _e3_delta2_coefficient(rho1, v12, data):
    """``e3`` is affine in ``delta2``; this is its slope."""
    rm, vm2 = data.minus.rho, data.minus.v2
    return rm * rho1 * (v12 - vm2) / (rm - rho1)


# -- mode handling -------------------------------------------------------------

def _check_domain(rho1, data):
    if not (data.minus.rho < rho1 < data.plus.rho):
        raise DomainError(f"rho1 = {to_float(rho1)} outside ({to_float(data.minus.rho)}, "
                          f"{to_float(data.plus.rho)})")


def _prepare(mode, data, law, *values):
    """Convert inputs to one mode; returns (mode, data, values)."""
    if mode == AUTO:
        mode = EXACT if all(is_exact_scalar(v) for v in values) and law.exact_capable else FLOATING
        try:
            if mode == EXACT:
                data = data.converted(EXACT)
        except ModeMismatch:
            mode = FLOATING
    if mode == EXACT:
        law.require_exact()
        return EXACT, data.converted(EXACT), [to_exact(v) for v in values]
    if mode != FLOATING:
        raise ValueError(f"unknown mode {mode!r}")
    return FLOATING, data.converted(FLOATING), [to_float(v) for v in values]


def _with_fallback(fn, mode, data, law, *values):
    m, d, vals = _prepare(mode, data, law, *values)
    if m == EXACT:
        _check_domain(vals[0], d)
        try:
            return fn(m, d, *vals)
        except (NotRepresentable, ExactnessUnavailable):
            if mode == EXACT:
                raise
            m, d, vals = _prepare(FLOATING, data, law, *values)
    _check_domain(vals[0], d)
    return fn(m, d, *vals)


def _radicand_ok(d, law):
    rad = _bracket(d, law)
    if sign(rad) < 0:
        raise DomainError(f"negative radicand {to_float(rad)} in the closed-form branch")


def v12_of(rho1, data: RiemannData, law: PressureLaw, mode: str = AUTO):
    """Normal velocity of the middle state as a function of its density.

    Exact (a :class:`QuadExt`) when the inputs are exact and the square root lies
    in Q(sqrt2); in ``auto`` mode a non-representable root silently falls back to
    a float, so the return type records which mode produced the value.
    """
    def fn(m, d, r1):
        _radicand_ok(d, law)
        return _v12(r1, d, law)

    return _with_fallback(fn, mode, data, law, rho1)


def delta1_of(rho1, data: RiemannData, law: PressureLaw, mode: str = AUTO):
    def fn(m, d, r1):
        _radicand_ok(d, law)
        return _delta1(r1, d, law)

    return _with_fallback(fn, mode, data, law, rho1)


def _reconstruct(d, law, r1, delta2):
    _radicand_ok(d, law)
    rm, rp = d.minus.rho, d.plus.rho
    vm1, vm2, vp1, vp2 = d.minus.v1, d.minus.v2, d.plus.v1, d.plus.v2
    w2 = _v12(r1, d, law)
    dl1 = _delta1(r1, d, law)
    if not (rm - r1) or not (r1 - rp):
        raise DegenerateSpeeds("rho1 coincides with an outer density")
    mu0 = (rm * vm2 - r1 * w2) / (rm - r1)
    mu1 = (r1 * w2 - rp * vp2) / (r1 - rp)
    if not (mu0 - mu1):
        raise DegenerateSpeeds("mu0 == mu1")
    # tangential momentum balances, unknowns (v11, u12):
    #   -mu0 r1 v11 + r1 u12 = rm vm1 vm2 - mu0 rm vm1
    #    mu1 r1 v11 - r1 u12 = mu1 rp vp1 - rp vp1 vp2
    f0 = rm * vm1 * vm2 - mu0 * rm * vm1
    f1 = mu1 * rp * vp1 - rp * vp1 * vp2
    det = r1 * r1 * (mu0 - mu1)
    w1 = (-r1 * f0 - r1 * f1) / det
    u12 = (-mu0 * r1 * f1 - mu1 * r1 * f0) / det
    C1 = dl1 + delta2 + w1 * w1 + w2 * w2
    u11 = C1 / 2 - w2 * w2 - dl1
    return FanCandidate(mu0, mu1, r1, w1, w2, TracelessSym(u11, u12), C1)


def reconstruct_candidate(p: ParamPoint, data: RiemannData, law: PressureLaw, mode: str = AUTO) -> FanCandidate:
    """Assemble the full fan candidate from ``(rho1, delta2)``.

    The six jump relations for mass and momentum hold by construction; the
    energy relations and subsolution inequalities are left to the verifier.
    """
    return _with_fallback(lambda m, d, r1, d2: _reconstruct(d, law, r1, d2), mode, data, law,
                          p.rho1, p.delta2)


def _verdict_le(e, mode, tol):
    if mode == FLOATING and tol > 0 and abs(e) <= tol:
        return Verdict.MARGINAL
    return Verdict.SATISFIED if sign(e) <= 0 else Verdict.VIOLATED


def _verdict_gt(s, mode, tol):
    if mode == FLOATING and tol > 0 and abs(s) <= tol:
        return Verdict.MARGINAL
    return Verdict.SATISFIED if sign(s) > 0 else Verdict.VIOLATED


def _sr(m, d, law, r1, d2, tol):
    _radicand_ok(d, law)
    w2 = _v12(r1, d, law)
    dl1 = _delta1(r1, d, law)
    e3 = _e3(r1, d2, w2, dl1, d, law)
    e4 = _e4(r1, d2, w2, dl1, d, law)
    gap = w2 - d.plus.v2
    degenerate = (not gap) if m == EXACT else abs(gap) <= 1e-14 * (1 + abs(w2))
    slack1 = min(r1 - d.minus.rho, d.plus.rho - r1)
    return SRReport(
        mode=m,
        cond1=_verdict_gt(slack1, m, 0.0),
        cond2=_verdict_gt(dl1, m, tol),
        cond3=_verdict_le(e3, m, tol),
        cond4=_verdict_le(e4, m, tol),
        slack1=slack1, delta1=dl1, e3=e3, e4=e4, v12=w2,
        degenerate_right=bool(degenerate),
    )


def sr_conditions(p: ParamPoint, data: RiemannData, law: PressureLaw, mode: str = AUTO,
                  tol: float = 0.0) -> SRReport:
    """Evaluate the four admissibility conditions of the reduced system.

    With ``tol == 0`` a condition is satisfied exactly when its residual has the
    right sign; a positive ``tol`` marks floating residuals with ``|e| <= tol`` as
    marginal.
    """
    return _with_fallback(lambda m, d, r1, d2: _sr(m, d, law, r1, d2, tol), mode, data, law,
                          p.rho1, p.delta2)


def e3_coefficients(rho1, data: RiemannData, law: PressureLaw, mode: str = AUTO):
    """``(value at delta2 = 0, slope)`` of the affine map ``delta2 -> e3``."""
    def fn(m, d, r1):
        _radicand_ok(d, law)
        w2 = _v12(r1, d, law)
        dl1 = _delta1(r1, d, law)
        return _e3(r1, 0, w2, dl1, d, law), _e3_delta2_coefficient(r1, w2, d)

    return _with_fallback(fn, mode, data, law, rho1)


def evaluate_grid(rho1: np.ndarray, delta2: np.ndarray, data: RiemannData, law: PressureLaw) -> dict:
    """Vectorised floating evaluation on broadcastable arrays.

    Points outside ``rho- < rho1 < rho+`` (or with a negative radicand) come back
    as NaN with ``domain`` False.
    """
    d = data.converted(FLOATING)
    rho1 = np.asarray(rho1, dtype=float)
    delta2 = np.asarray(delta2, dtype=float)
    inside = (rho1 > d.minus.rho) & (rho1 < d.plus.rho) & (_bracket(d, law) >= 0)
    r1 = np.where(inside, rho1, 0.5 * (d.minus.rho + d.plus.rho))
    with np.errstate(invalid="ignore", divide="ignore"):
        w2 = _v12(r1, d, law, root=np.sqrt)
        dl1 = _delta1(r1, d, law, root=np.sqrt)
        e3 = _e3(r1, delta2, w2, dl1, d, law)
        e4 = _e4(r1, delta2, w2, dl1, d, law)
    nan = np.nan
    shape = np.broadcast(rho1, delta2).shape
    inside = np.broadcast_to(inside, shape)
    return {
        "domain": inside,
        "v12": np.where(inside, w2, nan),
        "delta1": np.broadcast_to(np.where(inside, dl1, nan), shape),
        "e3": np.where(inside, e3, nan),
        "e4": np.where(inside, e4, nan),
    }
