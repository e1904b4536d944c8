"""Grid scan of the feasibility region in the (rho1, delta2) plane.

Panels: ``a`` is the left energy condition ``e3 <= 0``, ``b`` the right one
``e4 <= 0``, ``c`` is ``delta1 > 0`` and ``d`` their conjunction together with
``rho- < rho1 < rho+``.
"""

from __future__ import annotations

import io
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .errors import DomainError, GridTooLarge
from .model import PressureLaw, RiemannData, to_float
from .parametrization import evaluate_grid
from .verifier import Verdict

MAX_POINTS = 10**7
DEFAULT_SCAN_TOL = 2e-2
WORKERS_ENV = "EULERFAN_WORKERS"

CSV_HEADER = "rho1,delta2,cond_a,cond_b,cond_c,cond_d,e3,e4,delta1"

# int codes used in the mask arrays
HOLDS, FAILS, MARGINAL = 1, 0, 2
_CODE_TO_VERDICT = {HOLDS: Verdict.SATISFIED, FAILS: Verdict.VIOLATED, MARGINAL: Verdict.MARGINAL}
_CODE_TO_SYMBOL = {HOLDS: "1", FAILS: "0", MARGINAL: "~"}


def _axis(lo, hi, step):
    n = int(np.floor((hi - lo) / step + 1e-9)) + 1
    return lo + step * np.arange(n)


@dataclass(frozen=True)
class GridSpec:
    rho1_min: float
    rho1_max: float
    rho1_step: float
    delta2_min: float
    delta2_max: float
    delta2_step: float

    def __post_init__(self):
        for name in ("rho1", "delta2"):
            lo, hi, st = (getattr(self, f"{name}_{k}") for k in ("min", "max", "step"))
            if not (np.isfinite(lo) and np.isfinite(hi) and np.isfinite(st)):
                raise DomainError(f"{name} grid bounds must be finite")
            if not st > 0:
                raise DomainError(f"{name}_step must be positive, got {st}")
            if not lo < hi:
                raise DomainError(f"{name}_min must be below {name}_max")
            if lo <= 0:
                raise DomainError(f"{name}_min must be positive")
        if self.size > MAX_POINTS:
            raise GridTooLarge(f"{self.size} grid points exceed the limit of {MAX_POINTS}")

    @property
    def rho1_values(self) -> np.ndarray:
        return _axis(self.rho1_min, self.rho1_max, self.rho1_step)

    @property
    def delta2_values(self) -> np.ndarray:
        return _axis(self.delta2_min, self.delta2_max, self.delta2_step)

    @property
    def shape(self):
        n1 = int(np.floor((self.rho1_max - self.rho1_min) / self.rho1_step + 1e-9)) + 1
        n2 = int(np.floor((self.delta2_max - self.delta2_min) / self.delta2_step + 1e-9)) + 1
        return n1, n2

    @property
    def size(self) -> int:
        n1, n2 = self.shape
        return n1 * n2

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """``"rho1_min:rho1_max:step,delta2_min:delta2_max:step"``."""
        try:
            left, right = text.split(",")
            a = [float(x) for x in left.split(":")]
            b = [float(x) for x in right.split(":")]
            if len(a) != 3 or len(b) != 3:
                raise ValueError
        except ValueError as exc:
            raise DomainError(f"bad grid specification {text!r}") from exc
        return cls(*a, *b)


DEFAULT_GRID = GridSpec(1.001, 3.999, 0.005, 0.01, 3.0, 0.005)
COARSE_GRID = GridSpec(1.001, 3.999, 0.02, 0.01, 3.0, 0.02)


@dataclass(frozen=True)
class MaskRow:
    rho1: float
    delta2: float
    a: Verdict
    b: Verdict
    c: Verdict
    d: Verdict
    e3: float
    e4: float
    delta1: float
    domain_ok: bool


def _le_code(e, tol):
    # e <= 0 required; |e| <= tol is the marginal band
    return np.where(np.abs(e) <= tol, MARGINAL, np.where(e < 0, HOLDS, FAILS))


def _gt_code(s, tol):
    return np.where(np.abs(s) <= tol, MARGINAL, np.where(s > 0, HOLDS, FAILS))


def conjunction(a, b, c, in_interval):
    """Panel d from the other three; any failure fails, all holding holds."""
    a, b, c = np.asarray(a), np.asarray(b), np.asarray(c)
    fails = (a == FAILS) | (b == FAILS) | (c == FAILS) | ~np.asarray(in_interval)
    holds = (a == HOLDS) & (b == HOLDS) & (c == HOLDS) & np.asarray(in_interval)
    return np.where(fails, FAILS, np.where(holds, HOLDS, MARGINAL))


class ScanResult:
    """Row-major (rho1 outer, delta2 inner) scan; iterable as :class:`MaskRow`."""

    def __init__(self, grid: GridSpec, rho1, delta2, fields: dict, tol: float):
        self.grid = grid
        self.rho1 = rho1
        self.delta2 = delta2
        self.tol = tol
        self.domain = fields["domain"]
        self.e3 = fields["e3"]
        self.e4 = fields["e4"]
        self.delta1 = fields["delta1"]
        self.a = fields["a"]
        self.b = fields["b"]
        self.c = fields["c"]
        self.d = fields["d"]

    @property
    def shape(self):
        return self.a.shape

    def __len__(self):
        return self.a.size

    def row(self, i: int, j: int) -> MaskRow:
        v = _CODE_TO_VERDICT
        return MaskRow(float(self.rho1[i]), float(self.delta2[j]), v[int(self.a[i, j])],
                       v[int(self.b[i, j])], v[int(self.c[i, j])], v[int(self.d[i, j])],
                       float(self.e3[i, j]), float(self.e4[i, j]), float(self.delta1[i, j]),
                       bool(self.domain[i, j]))

    def __getitem__(self, k: int) -> MaskRow:
        n2 = self.shape[1]
        if k < 0:
            k += len(self)
        if not 0 <= k < len(self):
            raise IndexError(k)
        return self.row(k // n2, k % n2)

    def __iter__(self):
        n1, n2 = self.shape
        for i in range(n1):
            for j in range(n2):
                yield self.row(i, j)

    def nearest_column(self, rho1: float) -> int:
        return int(np.argmin(np.abs(self.rho1 - rho1)))

    def nearest_row(self, delta2: float) -> int:
        return int(np.argmin(np.abs(self.delta2 - delta2)))

    def write_csv(self, fh) -> None:
        fh.write(CSV_HEADER + "\n")
        sym = np.vectorize(_CODE_TO_SYMBOL.get, otypes=[object])
        n1, n2 = self.shape
        for i in range(n1):
            a, b, c, d = (sym(m[i]) for m in (self.a, self.b, self.c, self.d))
            r = f"{self.rho1[i]:.16e}"
            lines = [
                f"{r},{self.delta2[j]:.16e},{a[j]},{b[j]},{c[j]},{d[j]},"
                f"{self.e3[i, j]:.16e},{self.e4[i, j]:.16e},{self.delta1[i, j]:.16e}"
                for j in range(n2)
            ]
            fh.write("\n".join(lines) + "\n")

    def to_csv(self) -> str:
        buf = io.StringIO()
        self.write_csv(buf)
        return buf.getvalue()


def _scan_rows(rho1, delta2, data, law, tol):
    ev = evaluate_grid(rho1[:, None], delta2[None, :], data, law)
    dom = ev["domain"]
    a = np.where(dom, _le_code(ev["e3"], tol), FAILS)
    b = np.where(dom, _le_code(ev["e4"], tol), FAILS)
    c = np.where(dom, _gt_code(ev["delta1"], tol), FAILS)
    ev.update(a=a, b=b, c=c, d=conjunction(a, b, c, dom))
    return ev


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def scan_region(data: RiemannData, law: PressureLaw, grid: GridSpec = DEFAULT_GRID,
                tol: float = DEFAULT_SCAN_TOL, workers: int | None = None) -> ScanResult:
    """Evaluate the four panels on every grid node, in floating point.

    ``|residual| <= tol`` is reported as marginal. Nodes where the closed forms
    are undefined are emitted as failing with ``domain_ok`` False. The worker
    count only splits the rho1 rows; results are merged in order and do not
    depend on it.
    """
    if not tol > 0:
        raise DomainError("tol must be positive")
    workers = default_workers() if workers is None else max(1, int(workers))
    data = data.converted("floating")
    rho1, delta2 = grid.rho1_values, grid.delta2_values
    chunks = np.array_split(np.arange(rho1.size), min(workers, rho1.size))
    if workers == 1:
        parts = [_scan_rows(rho1, delta2, data, law, tol)]
    else:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(lambda ix: _scan_rows(rho1[ix], delta2, data, law, tol), chunks))
    fields = {k: np.concatenate([np.asarray(p[k]).reshape(-1, delta2.size) for p in parts])
              for k in ("domain", "e3", "e4", "delta1", "a", "b", "c", "d")}
    return ScanResult(grid, rho1, delta2, fields, tol)


def point_masks(rho1: float, delta2: float, data: RiemannData, law: PressureLaw,
                tol: float = DEFAULT_SCAN_TOL) -> MaskRow:
    """The four panel verdicts at one point."""
    rho1, delta2 = to_float(rho1), to_float(delta2)
    ev = _scan_rows(np.array([rho1]), np.array([delta2]), data.converted("floating"), law, tol)
    v = _CODE_TO_VERDICT
    return MaskRow(rho1, delta2, v[int(ev["a"][0, 0])], v[int(ev["b"][0, 0])], v[int(ev["c"][0, 0])],
                   v[int(ev["d"][0, 0])], float(ev["e3"][0, 0]), float(ev["e4"][0, 0]),
                   float(ev["delta1"][0, 0]), bool(ev["domain"][0, 0]))
