"""End-to-end acceptance checks, one test per criterion.

Each test prints a single ``[PASS]``/``[FAIL]`` line (visible even when pytest
captures output) before asserting.
"""

import time
from fractions import Fraction

import numpy as np
import pytest

from eulerfan.apex import certify_apex, find_apex, snap_to_exact
from eulerfan.model import (
    EXACT, FLOATING, PressureLaw, witness_data, witness_law, pressure, pressure_potential,
)
from eulerfan.parametrization import (
    ParamPoint, delta1_of, reconstruct_candidate, sr_conditions, v12_of,
)
from eulerfan.rarefaction import build_rarefaction, convergence_order, lipschitz_initial_data, pde_residual
from eulerfan.scanner import FAILS, HOLDS, MARGINAL, scan_region
from eulerfan.verifier import ENERGY_NAMES, RH_NAMES, Verdict, condition_residuals

RHO1, DELTA2 = Fraction(15, 7), Fraction(51, 35)


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title} -- {detail}")
        assert ok, detail
    return emit


def test_criterion_1_exact_witness(report):
    t0 = time.perf_counter()
    rep = certify_apex(witness_data(), witness_law(), ParamPoint(RHO1, DELTA2))
    dt = time.perf_counter() - t0
    zeros = rep.exact_zeros()
    strict = all(rep[n].verdict is Verdict.SATISFIED for n in ("order", "sc1", "sc2"))
    ok = rep.mode == EXACT and zeros == list(RH_NAMES + ENERGY_NAMES) and strict and dt < 1.0
    report(1, "exact witness certification", ok,
           f"{len(zeros)} exact zeros, strict slacks {strict}, {dt:.3f} s")


def test_criterion_2_parametrization_values(report):
    data, law = witness_data(), witness_law()
    v_ex, d_ex = v12_of(RHO1, data, law, EXACT), delta1_of(RHO1, data, law, EXACT)
    v_fl, d_fl = v12_of(15 / 7, data, law, FLOATING), delta1_of(15 / 7, data, law, FLOATING)
    d_ref = 559 / 105
    ok = (v_ex == 0 and d_ex == Fraction(559, 105)
          and abs(v_fl) <= 1e-12 * d_ref and abs(d_fl - d_ref) <= 1e-12 * d_ref)
    report(2, "parametrization values", ok,
           f"exact v12={v_ex}, delta1={d_ex}; floating v12={v_fl:.3e}, rel err delta1={abs(d_fl / d_ref - 1):.1e}")


def test_criterion_3_apex_recovery(report):
    data, law = witness_data(), witness_law()
    t0 = time.perf_counter()
    res = find_apex(data, law, (1.5, 3.0), 1e-10)
    r1, d2 = snap_to_exact(res.point.rho1, 10**6), snap_to_exact(res.point.delta2, 10**6)
    cert = certify_apex(data, law, ParamPoint(r1, d2))
    dt = time.perf_counter() - t0
    ok = (abs(res.point.rho1 - 15 / 7) < 1e-8 and abs(res.point.delta2 - 51 / 35) < 1e-8
          and (r1, d2) == (RHO1, DELTA2) and cert.energy_conserving and dt < 5.0)
    report(3, "apex recovery", ok,
           f"root ({res.point.rho1:.12f}, {res.point.delta2:.12f}) -> ({r1}, {d2}), {dt:.3f} s")


def test_criterion_4_region_shape(report):
    data, law = witness_data(), witness_law()
    t0 = time.perf_counter()
    scan = scan_region(data, law)
    dt = time.perf_counter() - t0
    n_d = int((scan.d == HOLDS).sum())

    col = scan.nearest_column(15 / 7)
    a, d2 = scan.a[col], scan.delta2
    below, above = a[d2 < 1.4571 - 0.015], a[d2 > 1.4571 + 0.015]
    band = d2[a == MARGINAL]
    column_ok = (np.all(below == HOLDS) and np.all(above == FAILS) and band.size > 0
                 and abs(band.mean() - 1.4571) < 0.015)

    i0 = col if scan.rho1[col] < 15 / 7 else col - 1
    j0 = int(np.searchsorted(d2, 51 / 35)) - 1
    cell = (slice(i0, i0 + 2), slice(j0, j0 + 2))
    on_boundary = all((m[cell] == HOLDS).any() and (m[cell] != HOLDS).any() for m in (scan.a, scan.b))
    inside_c = bool(np.all(scan.c[i0 - 2:i0 + 4, j0 - 2:j0 + 4] == HOLDS))

    ok = n_d > 0 and column_ok and on_boundary and inside_c and dt < 30.0
    report(4, "feasibility region shape", ok,
           f"{n_d} conjunction points, column rho1={scan.rho1[col]:.3f} marginal at {band.tolist()}, "
           f"apex on a/b boundary {on_boundary}, inside c {inside_c}, {dt:.2f} s")


def test_criterion_5_rarefaction_pipeline(report):
    prof = build_rarefaction(witness_data().switched(), witness_law())
    res = pde_residual(prof, nt=400, nx=400)
    orders = convergence_order(prof, sizes=(100, 200, 400))
    min_order = min(min(pair) for pair in orders)
    init = lipschitz_initial_data(prof, (-6.0, 6.0), 2401)
    x = init.table[:, 0]
    q = max(np.max(np.abs(np.diff(init.table[:, k]) / np.diff(x))) for k in (1, 2, 3))
    ok = max(res[:3]) < 1e-6 and min_order >= 1.9 and q <= 1.05 * init.lipschitz_bound
    report(5, "rarefaction pipeline", ok,
           f"residuals {res.mass:.1e}/{res.momentum:.1e}/{res.energy:.1e}, min order {min_order:.2f}, "
           f"max quotient {q:.4f} vs bound {init.lipschitz_bound:.4f}")


def _sgn(x, tol=1e-9):
    return 0 if abs(x) <= tol else (1 if x > 0 else -1)


def test_criterion_6_cross_path(report):
    data, law = witness_data(), witness_law()
    rng = np.random.default_rng(20261014)
    checked, mismatches = 0, []
    while checked < 100:
        r1, d2 = rng.uniform(1.0, 4.0), rng.uniform(0.01, 3.0)
        if not (1.0 < r1 < 4.0) or not delta1_of(r1, data, law, FLOATING) > 0:
            continue
        p = ParamPoint(r1, d2)
        sr = sr_conditions(p, data, law, FLOATING)
        rep = condition_residuals(data, reconstruct_candidate(p, data, law, FLOATING), law, FLOATING)
        if (_sgn(sr.e3), _sgn(sr.e4)) != (_sgn(rep.residual("enl")), _sgn(rep.residual("enr"))):
            mismatches.append((r1, d2))
        checked += 1
    report(6, "cross-path sign agreement", not mismatches,
           f"{checked} random points, {len(mismatches)} mismatches")


def test_criterion_7_thermodynamic_identity(report):
    rng = np.random.default_rng(7)
    worst = 0.0
    for k in range(50):
        K = rng.uniform(0.1, 5.0)
        gamma = 1.0 if k < 10 else rng.uniform(1.0, 3.0)
        rho = rng.uniform(0.1, 10.0)
        law = PressureLaw(K, gamma)
        h = 1e-5 * rho
        dP = (pressure_potential(law, rho + h) - pressure_potential(law, rho - h)) / (2 * h)
        p = pressure(law, rho)
        worst = max(worst, abs(rho * dP - pressure_potential(law, rho) - p) / p)
    report(7, "thermodynamic identity", worst < 1e-6, f"50 samples (10 with gamma = 1), max rel err {worst:.1e}")
