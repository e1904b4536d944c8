"""Pressure law, constant states and the fan-subsolution candidate.

Scalars are either floating (Python floats or numpy arrays) or exact
(:class:`~eulerfan.quadratic.QuadExt`, with ints and Fractions accepted as exact).
A single object never mixes the two.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational
from typing import Any

import numpy as np

from .errors import DomainError, ExactnessUnavailable, ModeMismatch
from .quadratic import QuadExt, format_exact, parse_exact

EXACT = "exact"
FLOATING = "floating"
AUTO = "auto"
MODES = (EXACT, FLOATING, AUTO)


def is_exact_scalar(x) -> bool:
    return isinstance(x, (QuadExt, Fraction, int)) and not isinstance(x, bool)


def scalar_mode(x) -> str | None:
    """``"exact"``/``"floating"`` for typed scalars, ``None`` for plain ints (neutral)."""
    if isinstance(x, (QuadExt, Fraction)):
        return EXACT
    if isinstance(x, int) and not isinstance(x, bool):
        return None
    return FLOATING


def to_exact(x) -> QuadExt:
    if isinstance(x, float) or isinstance(x, np.floating):
        raise ModeMismatch(f"floating value {x!r} given where exact mode is required")
    return QuadExt.coerce(x)


def to_float(x):
    if isinstance(x, QuadExt):
        return float(x)
    if isinstance(x, np.ndarray):
        return x.astype(float)
    return float(x)


def common_mode(values) -> str:
    modes = {m for m in map(scalar_mode, values) if m is not None}
    if len(modes) > 1:
        raise ModeMismatch("floating and exact scalars mixed in one object")
    return modes.pop() if modes else EXACT


def sign(x) -> int:
    if isinstance(x, QuadExt):
        from .quadratic import qx_sign

        return qx_sign(x)
    return int(x > 0) - int(x < 0)


def sqrt(x):
    """Square root in the scalar's own mode (``qx_sqrt`` for exact scalars)."""
    if isinstance(x, (QuadExt, Fraction, int)) and not isinstance(x, bool):
        from .quadratic import qx_sqrt

        return qx_sqrt(x)
    if isinstance(x, np.ndarray):
        return np.sqrt(x)
    if x < 0:
        raise DomainError(f"square root of negative number {x}")
    return float(np.sqrt(x))


def _integral(g) -> bool:
    if isinstance(g, bool):
        return False
    if isinstance(g, Rational):
        return Fraction(g).denominator == 1
    return False


@dataclass(frozen=True)
class PressureLaw:
    """Polytropic law ``p(rho) = K * rho**gamma`` with ``K > 0`` and ``gamma >= 1``."""

    K: Any = 1
    gamma: Any = 2

    def __post_init__(self):
        if isinstance(self.gamma, float) and self.gamma.is_integer():
            object.__setattr__(self, "gamma", int(self.gamma))
        if isinstance(self.gamma, Fraction) and self.gamma.denominator == 1:
            object.__setattr__(self, "gamma", int(self.gamma))
        if not self.K > 0:
            raise DomainError(f"K must be positive, got {self.K}")
        if not self.gamma >= 1:
            raise DomainError(f"gamma must be >= 1, got {self.gamma}")

    @property
    def exact_capable(self) -> bool:
        return _integral(self.gamma) and isinstance(self.K, (int, Fraction)) and not isinstance(self.K, bool)

    def require_exact(self):
        if not _integral(self.gamma):
            raise ExactnessUnavailable(f"gamma = {self.gamma} is not an integer")
        if not (isinstance(self.K, (int, Fraction)) and not isinstance(self.K, bool)):
            raise ExactnessUnavailable(f"K = {self.K!r} is not an exact rational")


def _floating(rho):
    return rho if isinstance(rho, np.ndarray) else to_float(rho)


def pressure(law: PressureLaw, rho):
    """``K * rho**gamma``; exact scalars need an integer exponent."""
    if isinstance(rho, QuadExt):
        law.require_exact()
        return Fraction(law.K) * rho ** int(law.gamma)
    if is_exact_scalar(rho) and law.exact_capable:
        return Fraction(law.K) * Fraction(rho) ** int(law.gamma)
    return float(law.K) * np.power(_floating(rho), float(law.gamma))


def pressure_potential(law: PressureLaw, rho):
    """Pressure potential ``P`` with ``rho*P'(rho) - P(rho) = p(rho)``.

    ``K/(gamma-1) * rho**gamma`` for ``gamma > 1`` and ``K*rho*log(rho)`` for
    ``gamma == 1``; the logarithmic branch has no exact form.
    """
    if law.gamma == 1:
        if isinstance(rho, QuadExt):
            raise ExactnessUnavailable("P(rho) = K rho log(rho) is transcendental")
        r = _floating(rho)
        return float(law.K) * r * np.log(r)
    p = pressure(law, rho)
    if isinstance(p, (QuadExt, Fraction)):
        return p / (int(law.gamma) - 1)
    return p / (float(law.gamma) - 1.0)


def sound_speed(law: PressureLaw, rho):
    """``sqrt(p'(rho))`` in floating point."""
    r = _floating(rho)
    return np.sqrt(float(law.K) * float(law.gamma) * np.power(r, float(law.gamma) - 1.0))


@dataclass(frozen=True)
class EulerState:
    """Constant state: density and the two velocity components."""

    rho: Any
    v1: Any = 0
    v2: Any = 0

    def __post_init__(self):
        common_mode((self.rho, self.v1, self.v2))
        if not self.rho > 0:
            raise DomainError(f"density must be positive, got {self.rho}")

    @property
    def mode(self) -> str:
        return common_mode((self.rho, self.v1, self.v2))

    def speed_squared(self):
        return self.v1 * self.v1 + self.v2 * self.v2

    def converted(self, mode: str) -> "EulerState":
        conv = to_exact if mode == EXACT else to_float
        return EulerState(conv(self.rho), conv(self.v1), conv(self.v2))


@dataclass(frozen=True)
class RiemannData:
    """States below (``minus``, x2 < 0) and above (``plus``, x2 > 0) the jump."""

    minus: EulerState
    plus: EulerState

    def converted(self, mode: str) -> "RiemannData":
        return RiemannData(self.minus.converted(mode), self.plus.converted(mode))

    def switched(self) -> "RiemannData":
        return RiemannData(self.plus, self.minus)

    @property
    def mode(self) -> str:
        return common_mode((self.minus.rho, self.minus.v1, self.minus.v2,
                            self.plus.rho, self.plus.v1, self.plus.v2))


@dataclass(frozen=True)
class TracelessSym:
    """Symmetric traceless 2x2 matrix ``[[m11, m12], [m12, -m11]]``."""

    m11: Any = 0
    m12: Any = 0

    def matrix(self) -> np.ndarray:
        return np.array([[to_float(self.m11), to_float(self.m12)],
                         [to_float(self.m12), -to_float(self.m11)]])


@dataclass(frozen=True)
class FanCandidate:
    mu0: Any
    mu1: Any
    rho1: Any
    v1_1: Any
    v1_2: Any
    u1: TracelessSym
    C1: Any

    def __post_init__(self):
        common_mode(self.scalars())
        if not self.rho1 > 0:
            raise DomainError(f"rho1 must be positive, got {self.rho1}")
        if not self.C1 > 0:
            raise DomainError(f"C1 must be positive, got {self.C1}")

    def scalars(self):
        return (self.mu0, self.mu1, self.rho1, self.v1_1, self.v1_2, self.u1.m11, self.u1.m12, self.C1)

    @property
    def mode(self) -> str:
        return common_mode(self.scalars())

    def converted(self, mode: str) -> "FanCandidate":
        conv = to_exact if mode == EXACT else to_float
        return FanCandidate(conv(self.mu0), conv(self.mu1), conv(self.rho1), conv(self.v1_1),
                            conv(self.v1_2), TracelessSym(conv(self.u1.m11), conv(self.u1.m12)),
                            conv(self.C1))


# -- the built-in witness scenario ------------------------------------------------------

def witness_law() -> PressureLaw:
    return PressureLaw(1, 2)


def witness_data() -> RiemannData:
    """rho- = 1, v- = (0, 2 sqrt2); rho+ = 4, v+ = 0."""
    return RiemannData(EulerState(QuadExt(1), QuadExt(0), QuadExt(0, 2)),
                       EulerState(QuadExt(4), QuadExt(0), QuadExt(0)))


def witness_candidate() -> FanCandidate:
    return FanCandidate(
        mu0=QuadExt(0, Fraction(-7, 4)),
        mu1=QuadExt(0),
        rho1=QuadExt(Fraction(15, 7)),
        v1_1=QuadExt(0),
        v1_2=QuadExt(0),
        u1=TracelessSym(QuadExt(Fraction(-29, 15)), QuadExt(0)),
        C1=QuadExt(Fraction(712, 105)),
    )


# -- JSON scenario documents ---------------------------------------------------

def parse_number(value):
    """JSON value to scalar: floats stay floating, ints and strings become exact."""
    if isinstance(value, bool):
        raise ValueError("boolean where a number was expected")
    if isinstance(value, int):
        return QuadExt(value)
    if isinstance(value, float):
        return value
    if isinstance(value, str):
        return parse_exact(value)
    raise ValueError(f"not a number: {value!r}")


def dump_number(x):
    if isinstance(x, (QuadExt, Fraction, int)) and not isinstance(x, bool):
        return format_exact(x)
    return float(x)


def _law_param(value):
    if isinstance(value, str):
        q = parse_exact(value)
        if not q.is_rational:
            raise ValueError("pressure parameters must be rational")
        return q.a
    return value


@dataclass(frozen=True)
class Scenario:
    law: PressureLaw
    data: RiemannData
    candidate: FanCandidate | None = None


def _state(doc) -> EulerState:
    v = doc.get("v", [0, 0])
    if len(v) != 2:
        raise ValueError("velocity must have two components")
    return EulerState(parse_number(doc["rho"]), parse_number(v[0]), parse_number(v[1]))


def scenario_from_dict(doc: dict) -> Scenario:
    try:
        pdoc = doc.get("pressure", {"K": 1, "gamma": 2})
        law = PressureLaw(_law_param(pdoc.get("K", 1)), _law_param(pdoc.get("gamma", 2)))
        rd = doc["riemann"]
        data = RiemannData(_state(rd["minus"]), _state(rd["plus"]))
        cand = None
        if doc.get("candidate") is not None:
            c = doc["candidate"]
            cand = FanCandidate(
                mu0=parse_number(c["mu0"]), mu1=parse_number(c["mu1"]),
                rho1=parse_number(c["rho1"]),
                v1_1=parse_number(c["v1"][0]), v1_2=parse_number(c["v1"][1]),
                u1=TracelessSym(parse_number(c["u1"][0]), parse_number(c["u1"][1])),
                C1=parse_number(c["C1"]),
            )
    except (KeyError, IndexError, TypeError) as exc:
        raise ValueError(f"malformed scenario document: {exc!r}") from exc
    return Scenario(law, data, cand)


def candidate_to_dict(c: FanCandidate) -> dict:
    return {
        "mu0": dump_number(c.mu0), "mu1": dump_number(c.mu1), "rho1": dump_number(c.rho1),
        "v1": [dump_number(c.v1_1), dump_number(c.v1_2)],
        "u1": [dump_number(c.u1.m11), dump_number(c.u1.m12)],
        "C1": dump_number(c.C1),
    }


def scenario_to_dict(s: Scenario) -> dict:
    def st(e):
        return {"rho": dump_number(e.rho), "v": [dump_number(e.v1), dump_number(e.v2)]}

    doc = {
        "pressure": {"K": dump_number(s.law.K), "gamma": dump_number(s.law.gamma)},
        "riemann": {"minus": st(s.data.minus), "plus": st(s.data.plus)},
    }
    if s.candidate is not None:
        doc["candidate"] = candidate_to_dict(s.candidate)
    return doc


def load_scenario(path) -> Scenario:
    with open(path, encoding="utf-8") as fh:
        return scenario_from_dict(json.load(fh))


def witness_scenario() -> Scenario:
    return Scenario(witness_law(), witness_data(), witness_candidate())
