"""Algebraic jump conditions of a fan subsolution and their residual report.

Equations are reported as ``LHS - RHS`` in exactly the arrangement in which the
jump relations are usually printed (speed times jump on the left, flux jump on the
right), so each line can be audited term by term.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field

from .model import (
    AUTO, EXACT, FLOATING, FanCandidate, PressureLaw, RiemannData, dump_number, pressure,
    pressure_potential, sign, to_float,
)
from .errors import ExactnessUnavailable, ModeMismatch

DEFAULT_TOL_EQ = 1e-9
MARGINAL_FACTOR = 10.0

CONDITION_NAMES = ("order", "rhl1", "rhl2", "rhl3", "rhr1", "rhr2", "rhr3", "sc1", "sc2", "enl", "enr")
RH_NAMES = ("rhl1", "rhl2", "rhl3", "rhr1", "rhr2", "rhr3")
ENERGY_NAMES = ("enl", "enr")
STRICT_NAMES = ("order", "sc1", "sc2")


class Verdict(str, enum.Enum):
    SATISFIED = "satisfied"
    VIOLATED = "violated"
    MARGINAL = "marginal"

    @property
    def symbol(self) -> str:
        return {"satisfied": "1", "violated": "0", "marginal": "~"}[self.value]


@dataclass(frozen=True)
class ConditionEntry:
    name: str
    kind: str  # "equation" (residual = LHS - RHS) or "strict" (slack > 0 required)
    residual: object
    verdict: Verdict
    mode: str

    @property
    def is_exact_zero(self) -> bool:
        return self.mode == EXACT and not self.residual


@dataclass
class ConditionReport:
    mode: str
    tol_eq: float
    entries: dict = field(default_factory=dict)

    def __getitem__(self, name) -> ConditionEntry:
        return self.entries[name]

    def __iter__(self):
        return iter(self.entries.values())

    def residual(self, name):
        return self.entries[name].residual

    @property
    def energy_conserving(self) -> bool:
        return all(e.verdict is Verdict.SATISFIED for e in self)

    @property
    def admissible(self) -> bool:
        for e in self:
            if e.name in ENERGY_NAMES:
                if not _energy_inequality_holds(e.residual, self.mode, self.tol_eq):
                    return False
            elif e.verdict is not Verdict.SATISFIED:
                return False
        return True

    def exact_zeros(self) -> list:
        return [e.name for e in self if e.kind == "equation" and e.is_exact_zero]

    def to_dict(self) -> dict:
        return {
            "mode": self.mode,
            "tol_eq": self.tol_eq,
            "energy_conserving": self.energy_conserving,
            "admissible": self.admissible,
            "conditions": {
                e.name: {"kind": e.kind, "residual": _dump_residual(e.residual), "verdict": e.verdict.value}
                for e in self
            },
        }

    def format(self) -> str:
        lines = [f"mode: {self.mode}"]
        for e in self:
            lines.append(f"  {e.name:<6} {e.kind:<8} {e.verdict.value:<9} {_dump_residual(e.residual)}")
        lines.append(f"energy conserving: {self.energy_conserving}; admissible: {self.admissible}")
        return "\n".join(lines)


def _dump_residual(r):
    d = dump_number(r)
    return d if isinstance(d, str) else repr(d)


def _energy_inequality_holds(residual, mode, tol) -> bool:
    # admissibility requires LHS <= RHS, i.e. a non-positive residual
    if mode == EXACT:
        return sign(residual) <= 0
    return residual <= tol


def _equation_verdict(r, mode, tol) -> Verdict:
    if mode == EXACT:
        return Verdict.SATISFIED if not r else Verdict.VIOLATED
    a = abs(r)
    if a <= tol:
        return Verdict.SATISFIED
    if a <= MARGINAL_FACTOR * tol:
        return Verdict.MARGINAL
    return Verdict.VIOLATED


def _strict_verdict(s, mode, tol) -> Verdict:
    if mode == EXACT:
        return Verdict.SATISFIED if sign(s) > 0 else Verdict.VIOLATED
    if s > tol:
        return Verdict.SATISFIED
    if s >= -tol:
        return Verdict.MARGINAL
    return Verdict.VIOLATED


def resolve_mode(mode: str, data: RiemannData, cand: FanCandidate, law: PressureLaw) -> str:
    if mode == AUTO:
        try:
            data.converted(EXACT), cand.converted(EXACT)
            law.require_exact()
        except (ModeMismatch, ExactnessUnavailable):
            return FLOATING
        return EXACT
    if mode not in (EXACT, FLOATING):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == EXACT:
        law.require_exact()
    return mode


def raw_residuals(data: RiemannData, cand: FanCandidate, law: PressureLaw) -> dict:
    """The eleven residual/slack values for already mode-homogeneous inputs."""
    rm, vm1, vm2 = data.minus.rho, data.minus.v1, data.minus.v2
    rp, vp1, vp2 = data.plus.rho, data.plus.v1, data.plus.v2
    mu0, mu1, r1 = cand.mu0, cand.mu1, cand.rho1
    w1, w2 = cand.v1_1, cand.v1_2
    u11, u12, C1 = cand.u1.m11, cand.u1.m12, cand.C1

    pm, p1, pp = pressure(law, rm), pressure(law, r1), pressure(law, rp)
    Pm, P1, Pp = pressure_potential(law, rm), pressure_potential(law, r1), pressure_potential(law, rp)
    qm = vm1 * vm1 + vm2 * vm2
    qp = vp1 * vp1 + vp2 * vp2

    out = {}
    out["order"] = mu1 - mu0
    out["rhl1"] = mu0 * (rm - r1) - (rm * vm2 - r1 * w2)
    out["rhl2"] = mu0 * (rm * vm1 - r1 * w1) - (rm * vm1 * vm2 - r1 * u12)
    out["rhl3"] = mu0 * (rm * vm2 - r1 * w2) - (rm * vm2 * vm2 + r1 * u11 + pm - p1 - r1 * C1 / 2)
    out["rhr1"] = mu1 * (r1 - rp) - (r1 * w2 - rp * vp2)
    out["rhr2"] = mu1 * (r1 * w1 - rp * vp1) - (r1 * u12 - rp * vp1 * vp2)
    out["rhr3"] = mu1 * (r1 * w2 - rp * vp2) - (-r1 * u11 - rp * vp2 * vp2 + p1 - pp + r1 * C1 / 2)
    out["sc1"] = C1 - (w1 * w1 + w2 * w2)
    out["sc2"] = (C1 / 2 - w1 * w1 + u11) * (C1 / 2 - w2 * w2 - u11) - (u12 - w1 * w2) ** 2
    out["enl"] = mu0 * (Pm + rm * qm / 2 - P1 - r1 * C1 / 2) - (
        (Pm + pm) * vm2 - (P1 + p1) * w2 + rm * vm2 * qm / 2 - r1 * w2 * C1 / 2
    )
    out["enr"] = mu1 * (P1 + r1 * C1 / 2 - Pp - rp * qp / 2) - (
        (P1 + p1) * w2 - (Pp + pp) * vp2 + r1 * w2 * C1 / 2 - rp * vp2 * qp / 2
    )
    return out


def condition_residuals(
    data: RiemannData,
    cand: FanCandidate,
    law: PressureLaw,
    mode: str = AUTO,
    tol_eq: float = DEFAULT_TOL_EQ,
) -> ConditionReport:
    """Evaluate speed order, six Rankine-Hugoniot relations, two subsolution
    inequalities and two interface energy equalities.

    ``mode="exact"`` needs every scalar in Q(sqrt2) and an integer ``gamma``;
    ``mode="auto"`` picks exact whenever that is possible.
    """
    if not tol_eq > 0:
        raise ValueError("tol_eq must be positive")
    cand.mode  # raises ModeMismatch for mixed candidates
    mode = resolve_mode(mode, data, cand, law)
    d, c = data.converted(mode), cand.converted(mode)
    raw = raw_residuals(d, c, law)
    report = ConditionReport(mode=mode, tol_eq=tol_eq)
    for name in CONDITION_NAMES:
        r = raw[name]
        if mode == FLOATING:
            r = to_float(r)
        if name in STRICT_NAMES:
            entry = ConditionEntry(name, "strict", r, _strict_verdict(r, mode, tol_eq), mode)
        else:
            entry = ConditionEntry(name, "equation", r, _equation_verdict(r, mode, tol_eq), mode)
        report.entries[name] = entry
    return report


def verify_energy_conserving(data, cand, law, mode=AUTO, tol_eq=DEFAULT_TOL_EQ):
    """``(ok, report)``: ok iff every condition, energy equalities included, is satisfied."""
    report = condition_residuals(data, cand, law, mode, tol_eq)
    return report.energy_conserving, report


def verify_admissible(data, cand, law, mode=AUTO, tol_eq=DEFAULT_TOL_EQ):
    """``(ok, report)`` with the interface energy relations relaxed to ``LHS <= RHS``.

    Across a front ``x2 = mu*t`` with states L below and R above, the weak form of
    ``d_t E + div F <= 0`` gives ``-mu*(E_R - E_L) + (F_R - F_L) <= 0``, which is
    ``mu*(E_L - E_R) <= F_L - F_R``: the printed energy equality with ``=``
    replaced by ``<=``.
    """
    report = condition_residuals(data, cand, law, mode, tol_eq)
    return report.admissible, report

