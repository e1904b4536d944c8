import dataclasses
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from eulerfan.errors import ExactnessUnavailable, ModeMismatch
from eulerfan.model import (
    EXACT, FLOATING, EulerState, FanCandidate, PressureLaw, RiemannData, TracelessSym,
)
from eulerfan.parametrization import ParamPoint, reconstruct_candidate
from eulerfan.quadratic import SQRT2, QuadExt, qx_to_float
from eulerfan.verifier import (
    ENERGY_NAMES, RH_NAMES, Verdict, condition_residuals, verify_admissible, verify_energy_conserving,
)

from conftest import DELTA1, DELTA2, RHO1


def test_witness_exact(data, cand, law):
    rep = condition_residuals(data, cand, law, EXACT)
    assert rep.mode == EXACT
    assert rep.exact_zeros() == list(RH_NAMES + ENERGY_NAMES)
    assert rep.residual("order") == QuadExt(0, Fraction(7, 4))
    assert rep.residual("sc1") == Fraction(712, 105)
    assert rep.residual("sc2") == DELTA1 * DELTA2 == Fraction(9503, 1225)
    assert all(rep[n].verdict is Verdict.SATISFIED for n in ("order", "sc1", "sc2"))


def test_auto_picks_exact(data, cand, law):
    assert condition_residuals(data, cand, law).mode == EXACT
    assert condition_residuals(data, cand.converted(FLOATING), law).mode == FLOATING


def test_exact_demanded_but_unavailable(data, cand):
    with pytest.raises(ExactnessUnavailable):
        condition_residuals(data, cand, PressureLaw(1, 1.4), EXACT)
    with pytest.raises(ModeMismatch):
        bad = dataclasses.replace(cand, C1=7.0)
        condition_residuals(data, bad, PressureLaw(1, 2), EXACT)


def test_C1_shift_moves_energy_and_third_rh(data, cand, law):
    base = condition_residuals(data, cand, law, EXACT)
    rep = condition_residuals(data, dataclasses.replace(cand, C1=cand.C1 + 1), law, EXACT)
    assert rep.residual("rhl3") - base.residual("rhl3") == RHO1 / 2
    assert rep.residual("rhr3") - base.residual("rhr3") == -RHO1 / 2
    assert rep.residual("enl") != 0
    for name in ("rhl1", "rhl2", "rhr1", "rhr2"):
        assert rep.residual(name) == 0


def test_energy_conserving_examples(data, cand, law):
    ok, _ = verify_energy_conserving(data, cand, law)
    assert ok
    pert = dataclasses.replace(
        cand, C1=cand.C1 + Fraction(1, 1000),
        u1=TracelessSym(cand.u1.m11 + Fraction(1, 2000), cand.u1.m12),
    )
    ok, rep = verify_energy_conserving(data, pert, law)
    assert not ok
    assert rep.residual("enl") != 0
    assert rep["sc1"].verdict is Verdict.SATISFIED and rep["sc2"].verdict is Verdict.SATISFIED


def _constant_case(v1):
    one, zero = QuadExt(1), QuadExt(0)
    s = EulerState(one, QuadExt(v1), zero)
    return RiemannData(s, s), one, zero


def test_constant_state_zero_matrix_is_not_a_solution():
    # all states equal, u1 = 0, C1 = 1: the middle wedge carries an extra
    # isotropic stress C1/2 which the outer states do not, so rhl3 = 1/2
    data, one, zero = _constant_case(0)
    cand = FanCandidate(-one, one, one, zero, zero, TracelessSym(zero, zero), one)
    rep = condition_residuals(data, cand, PressureLaw(1, 2), EXACT)
    assert rep.residual("rhl3") == Fraction(1, 2)
    assert rep.residual("rhr3") == Fraction(-1, 2)
    assert rep.residual("enl") == rep.residual("enr") == Fraction(1, 2)
    assert rep.residual("sc2") == Fraction(1, 4)
    assert not verify_energy_conserving(data, cand, PressureLaw(1, 2))[0]


def test_constant_state_tight_candidate():
    # u1 = v x v - |v|^2/2 Id and C1 = |v|^2 reproduces the outer state exactly;
    # every equation vanishes but sc1 has zero slack, so it is not strict
    data, one, zero = _constant_case(1)
    half = QuadExt(Fraction(1, 2))
    cand = FanCandidate(-one, one, one, one, zero, TracelessSym(half, zero), one)
    rep = condition_residuals(data, cand, PressureLaw(1, 2), EXACT)
    assert rep.exact_zeros() == list(RH_NAMES + ENERGY_NAMES)
    assert rep.residual("sc1") == 0
    assert rep["sc1"].verdict is Verdict.VIOLATED
    assert not rep.energy_conserving


def test_admissible_examples(data, cand, law):
    assert verify_admissible(data, cand, law)[0]
    below = reconstruct_candidate(ParamPoint(RHO1, Fraction(1)), data, law, EXACT)
    ok, rep = verify_admissible(data, below, law)
    assert ok and rep.mode == EXACT
    assert rep.residual("enl") < 0 and rep.residual("enr") == 0
    above = reconstruct_candidate(ParamPoint(RHO1, Fraction(2)), data, law, EXACT)
    ok, rep = verify_admissible(data, above, law)
    assert not ok and rep.residual("enl") > 0


def test_floating_verdict_bands(data, cand, law):
    fc = cand.converted(FLOATING)
    assert verify_energy_conserving(data, fc, law, FLOATING)[1].energy_conserving
    rep = condition_residuals(data, dataclasses.replace(fc, mu1=5e-9), law, FLOATING)
    assert rep["rhr1"].verdict is Verdict.MARGINAL
    rep = condition_residuals(data, dataclasses.replace(fc, mu1=1e-6), law, FLOATING)
    assert rep["rhr1"].verdict is Verdict.VIOLATED


def test_report_serialisation(data, cand, law):
    doc = condition_residuals(data, cand, law).to_dict()
    assert doc["conditions"]["order"]["residual"] == "7/4*sqrt2"
    assert doc["conditions"]["sc2"]["residual"] == "9503/1225"
    assert doc["energy_conserving"] is True


perturb = st.fractions(min_value=-1, max_value=1, max_denominator=50)


def _perturbed(cand, d):
    return FanCandidate(
        cand.mu0 + d[0], cand.mu1 + d[1], cand.rho1 + abs(d[2]), cand.v1_1 + d[3], cand.v1_2 + d[4] * SQRT2,
        TracelessSym(cand.u1.m11 + d[5], cand.u1.m12 + d[6]), cand.C1 + abs(d[7]),
    )


@given(st.lists(perturb, min_size=8, max_size=8))
def test_exact_floating_agreement(d):
    from eulerfan.model import witness_candidate, witness_data, witness_law
    data, law = witness_data(), witness_law()
    cand = _perturbed(witness_candidate(), d)
    ex = condition_residuals(data, cand, law, EXACT)
    fl = condition_residuals(data, cand.converted(FLOATING), law, FLOATING)
    for e in ex:
        ref = qx_to_float(e.residual)
        assert fl.residual(e.name) == pytest.approx(ref, rel=1e-10, abs=1e-12)


@given(st.lists(perturb, min_size=8, max_size=8), st.sampled_from([EXACT, FLOATING]))
def test_energy_conserving_implies_admissible(d, mode):
    from eulerfan.model import witness_candidate, witness_data, witness_law
    cand = _perturbed(witness_candidate(), [x / 10**6 for x in d])
    if mode == FLOATING:
        cand = cand.converted(FLOATING)
    ec, _ = verify_energy_conserving(witness_data(), cand, witness_law(), mode)
    ad, _ = verify_admissible(witness_data(), cand, witness_law(), mode)
    assert ad or not ec
