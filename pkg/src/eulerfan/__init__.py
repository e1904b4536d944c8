"""Exact and floating checks of fan subsolutions for the 2-D isentropic Euler Riemann problem."""

from .apex import (
    ApexCertificate, ApexResult, apex_residual, certify_apex, delta2_on_e3, find_and_certify, find_apex,
    snap_to_exact,
)
from .errors import (
    DegenerateCoefficient, DegenerateSpeeds, DomainError, EulerFanError, ExactnessUnavailable, GridTooLarge,
    ModeMismatch, NegativeRadicand, NoSignChange, NotRarefactionConnectable, NotRepresentable,
    SubsolutionViolated, UnsupportedTransverse,
)
from .model import (
    AUTO, EXACT, FLOATING, EulerState, FanCandidate, PressureLaw, RiemannData, Scenario, TracelessSym,
    load_scenario, witness_candidate, witness_data, witness_law, witness_scenario, pressure, pressure_potential,
    scenario_from_dict, scenario_to_dict,
)
from .parametrization import (
    ParamPoint, SRReport, delta1_of, e3_coefficients, evaluate_grid, reconstruct_candidate, sr_conditions,
    v12_of,
)
from .quadratic import SQRT2, QuadExt, format_exact, parse_exact, qx_sign, qx_sqrt, qx_to_float
from .rarefaction import (
    LipschitzData, PDEResidual, RarefactionProfile, build_rarefaction, convergence_order,
    lipschitz_initial_data, pde_residual, sample_profile,
)
from .scanner import COARSE_GRID, DEFAULT_GRID, GridSpec, MaskRow, ScanResult, point_masks, scan_region
from .verifier import (
    ConditionReport, Verdict, condition_residuals, verify_admissible, verify_energy_conserving,
)

__version__ = "0.1.0"
