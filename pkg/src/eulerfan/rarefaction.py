"""Self-similar single-rarefaction solutions and the Lipschitz data built from them.

The flow is planar: every quantity depends on ``x2`` and ``t`` only and the
tangential velocity ``v1`` is constant. Family 1 keeps ``v2 + 2c/(gamma-1)``
constant and fans out along ``v2 - c``; family 2 is its mirror image under
``x2 -> -x2, v2 -> -v2``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import DomainError, NotRarefactionConnectable, UnsupportedTransverse
from .model import EulerState, PressureLaw, RiemannData, pressure, pressure_potential, to_float

INVARIANT_RTOL = 1e-10

# central first-derivative weights w_k for (f[i+k] - f[i-k]), k = 1..r
_STENCILS = {
    2: (1 / 2,),
    4: (2 / 3, -1 / 12),
    6: (3 / 4, -3 / 20, 1 / 60),
}
DEFAULT_ORDER = 6


def _sound(law, rho):
    return np.sqrt(float(law.K) * float(law.gamma) * np.power(rho, float(law.gamma) - 1.0))


def _rho_from_sound(law, c):
    g = float(law.gamma)
    return np.power(c / np.sqrt(float(law.K) * g), 2.0 / (g - 1.0))


@dataclass(frozen=True)
class RarefactionProfile:
    """One rarefaction fan between ``left_state`` (below) and ``right_state`` (above).

    ``xi = x2 / t``. A profile joining two equal states has
    ``xi_left == xi_right`` and is constant.
    """

    xi_left: float
    xi_right: float
    left_state: EulerState
    right_state: EulerState
    law: PressureLaw
    family: int
    invariant: float

    def evaluate(self, xi):
        """Vectorised ``xi -> (rho, v1, v2)``."""
        xi = np.asarray(xi, dtype=float)
        g = float(self.law.gamma)
        L, R = self.left_state, self.right_state
        if self.family == 1:
            c = (g - 1.0) * (self.invariant - xi) / (g + 1.0)
            v2 = xi + c
        else:
            c = (g - 1.0) * (xi - self.invariant) / (g + 1.0)
            v2 = xi - c
        with np.errstate(invalid="ignore"):
            rho = _rho_from_sound(self.law, np.maximum(c, 0.0))
        below, above = xi <= self.xi_left, xi >= self.xi_right
        rho = np.where(below, L.rho, np.where(above, R.rho, rho))
        v2 = np.where(below, L.v2, np.where(above, R.v2, v2))
        v1 = np.full_like(rho, L.v1)
        return rho, v1, v2

    def state_at(self, xi: float) -> EulerState:
        rho, v1, v2 = self.evaluate(xi)
        return EulerState(float(rho), float(v1), float(v2))

    def slope_bound(self) -> float:
        """Largest ``|d rho/d xi|`` or ``|d v2/d xi|`` inside the fan.

        ``|d v2/d xi| = 2/(gamma+1)`` and ``|d rho/d xi| = 2/(gamma+1) * rho/c``; the
        latter is monotone in ``c``, so its maximum is at one of the fan edges.
        """
        if self.xi_left == self.xi_right:
            return 0.0
        g = float(self.law.gamma)
        ends = [self.left_state.rho, self.right_state.rho]
        drho = max(2.0 / (g + 1.0) * r / float(_sound(self.law, r)) for r in ends)
        return max(drho, 2.0 / (g + 1.0))


def _invariant(law, state, family):
    g = float(law.gamma)
    c = float(_sound(law, state.rho))
    return state.v2 + 2.0 * c / (g - 1.0) if family == 1 else state.v2 - 2.0 * c / (g - 1.0)


def _speed(law, state, family):
    c = float(_sound(law, state.rho))
    return state.v2 - c if family == 1 else state.v2 + c


def build_rarefaction(data: RiemannData, law: PressureLaw, rtol: float = INVARIANT_RTOL) -> RarefactionProfile:
    """Connect ``data.minus`` (below) to ``data.plus`` (above) by one rarefaction.

    Raises :class:`UnsupportedTransverse` for a jump in ``v1`` and
    :class:`NotRarefactionConnectable` when neither family's Riemann invariant
    agrees on the two states or when the characteristic speed would decrease
    across the wave (a compressive, shock-forming ordering).
    """
    if float(law.gamma) <= 1.0:
        raise DomainError("rarefactions are built for gamma > 1 only")
    lo, hi = data.minus.converted("floating"), data.plus.converted("floating")
    if lo.v1 != hi.v1:
        raise UnsupportedTransverse(f"v1 jumps from {lo.v1} to {hi.v1}")
    if lo == hi:
        xi = _speed(law, lo, 1)
        return RarefactionProfile(xi, xi, lo, hi, law, 1, _invariant(law, lo, 1))
    reasons = []
    for family in (1, 2):
        i_lo, i_hi = _invariant(law, lo, family), _invariant(law, hi, family)
        if abs(i_lo - i_hi) > rtol * max(1.0, abs(i_lo), abs(i_hi)):
            reasons.append(f"family {family}: invariants {i_lo} vs {i_hi}")
            continue
        s_lo, s_hi = _speed(law, lo, family), _speed(law, hi, family)
        if not s_lo < s_hi:
            reasons.append(f"family {family}: compressive ordering {s_lo} >= {s_hi}")
            continue
        return RarefactionProfile(s_lo, s_hi, lo, hi, law, family, 0.5 * (i_lo + i_hi))
    raise NotRarefactionConnectable("; ".join(reasons))


def sample_profile(prof: RarefactionProfile, t: float, x2: float) -> EulerState:
    if not t > 0:
        raise DomainError("t must be positive")
    return prof.state_at(to_float(x2) / to_float(t))


class LipschitzData:
    """Initial data ``x2 -> profile(t=1, -x2)``.

    Evolving it forward for one time unit with the reversed rarefaction,
    ``(rho, v)(t, x2) = profile(1 - t, -x2)``, reaches the original jump at
    ``t = 1``.
    """

    def __init__(self, prof: RarefactionProfile, x_range=(-6.0, 6.0), n: int = 1201):
        self.profile = prof
        self.x2 = np.linspace(float(x_range[0]), float(x_range[1]), int(n))
        rho, v1, v2 = prof.evaluate(-self.x2)
        self.table = np.column_stack([self.x2, rho, v1, v2])

    def __call__(self, x2: float) -> EulerState:
        return self.profile.state_at(-float(x2))

    def evolve(self, t, x2):
        """The reversed solution at ``0 <= t < 1``; vectorised ``(rho, v1, v2)``."""
        t = np.asarray(t, dtype=float)
        if np.any(t >= 1) or np.any(t < 0):
            raise DomainError("the reversed solution is defined for 0 <= t < 1")
        return self.profile.evaluate(-np.asarray(x2, dtype=float) / (1.0 - t))

    @property
    def lipschitz_bound(self) -> float:
        return self.profile.slope_bound()

    def write_csv(self, fh) -> None:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(["x2", "rho", "v1", "v2"])
        for row in self.table:
            w.writerow([f"{v:.16e}" for v in row])


def lipschitz_initial_data(prof: RarefactionProfile, x_range=(-6.0, 6.0), n: int = 1201) -> LipschitzData:
    return LipschitzData(prof, x_range, n)


class PDEResidual(NamedTuple):
    mass: float
    momentum: float
    energy: float
    cells: int


def _fields(prof, T, X):
    rho, v1, v2 = prof.evaluate(X / T)
    p, P = pressure(prof.law, rho), pressure_potential(prof.law, rho)
    E = 0.5 * rho * (v1 * v1 + v2 * v2) + P
    return (rho, rho * v2), (rho * v2, rho * v2 * v2 + p), (E, (E + p) * v2)


def pde_residual(prof: RarefactionProfile, t_range=(0.5, 2.0), x_range=(-6.0, 6.0), nt: int = 400,
                 nx: int = 400, order: int = DEFAULT_ORDER, margin: int = 2) -> PDEResidual:
    """Max finite-difference residual of mass, normal momentum and energy balance.

    Central differences of accuracy ``order`` (2, 4 or 6) are applied to the
    closed-form profile on a uniform ``nt x nx`` grid with ``t > 0``. Nodes whose
    stencil comes within ``margin`` cells of a fan edge, where the profile is
    only Lipschitz, are left out.
    """
    if order not in _STENCILS:
        raise ValueError(f"order must be one of {sorted(_STENCILS)}")
    if not t_range[0] > 0:
        raise DomainError("the grid must lie strictly inside t > 0")
    w = _STENCILS[order]
    r = len(w)
    t = np.linspace(t_range[0], t_range[1], nt)
    x = np.linspace(x_range[0], x_range[1], nx)
    ht, hx = t[1] - t[0], x[1] - x[0]
    T, X = np.meshgrid(t, x, indexing="ij")
    out = []
    for U, F in _fields(prof, T, X):
        dU = sum(c * (U[r + k:nt - r + k, r:nx - r] - U[r - k:nt - r - k, r:nx - r])
                 for k, c in enumerate(w, 1)) / ht
        dF = sum(c * (F[r:nt - r, r + k:nx - r + k] - F[r:nt - r, r - k:nx - r - k])
                 for k, c in enumerate(w, 1)) / hx
        out.append(dU + dF)
    Tc, Xc = T[r:nt - r, r:nx - r], X[r:nt - r, r:nx - r]
    keep = np.ones(Tc.shape, dtype=bool)
    if prof.xi_left != prof.xi_right:
        for edge in (prof.xi_left, prof.xi_right):
            reach = (r + margin) * (hx + abs(edge) * ht)
            keep &= np.abs(Xc - edge * Tc) > reach
    if not keep.any():
        return PDEResidual(0.0, 0.0, 0.0, 0)
    m, q, e = (float(np.max(np.abs(o[keep]))) for o in out)
    return PDEResidual(m, q, e, int(keep.sum()))


def convergence_order(prof: RarefactionProfile, sizes=(100, 200, 400), **kw) -> list:
    """Observed orders ``log2(R(n)/R(2n))`` for each residual component and size pair."""
    res = [pde_residual(prof, nt=n, nx=n, **kw) for n in sizes]
    orders = []
    for a, b, (n0, n1) in zip(res, res[1:], zip(sizes, sizes[1:])):
        ratio = np.log((n1 - 1) / (n0 - 1))
        orders.append(tuple(float(np.log(ai / bi) / ratio) for ai, bi in zip(a[:3], b[:3])))
    return orders
