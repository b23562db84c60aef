"""Activation barriers and heterogeneous rate constants for strongly
coupled two-state electron transfer."""

from .analysis import (
    FitResult,
    SweepSpec,
    SweepVariable,
    arrhenius_sweep,
    barrier_sweep,
    effective_activation_energy,
    fit_lambda_eff,
    tafel_sweep,
)
from .barriers import (
    BarrierMethod,
    BarrierResult,
    adiabatic_driving_force,
    barrier,
    effective_lambda,
    marcus_barrier,
    marcus_ts,
    validity_report,
)
from .errors import (
    AccuracyError,
    EtkitError,
    NumericalDomainError,
    SingularRegimeError,
    SurfaceTopologyError,
)
from .model import (
    ConstantCoupling,
    DiabaticSystem,
    LinearCoupling,
    PolynomialCoupling,
    SurfaceSample,
    adiabats,
    as_polynomial,
    coupling_eval,
    coupling_max,
    diabat_a,
    diabat_b,
    surface_table,
)
from .rates import (
    ElectrodeConditions,
    PrefactorKind,
    RateRequest,
    effective_lambda_overpotential,
    extract_coupling,
    fermi_dirac,
    mhc_rate_closed_form,
    mhc_rate_numeric,
    prefactor,
)
from .tables import SweepTable

__version__ = "0.1.0"

__all__ = [
    "AccuracyError",
    "BarrierMethod",
    "BarrierResult",
    "ConstantCoupling",
    "DiabaticSystem",
    "ElectrodeConditions",
    "EtkitError",
    "FitResult",
    "LinearCoupling",
    "NumericalDomainError",
    "PolynomialCoupling",
    "PrefactorKind",
    "RateRequest",
    "SingularRegimeError",
    "SurfaceSample",
    "SurfaceTopologyError",
    "SweepSpec",
    "SweepTable",
    "SweepVariable",
    "adiabatic_driving_force",
    "adiabats",
    "arrhenius_sweep",
    "as_polynomial",
    "barrier",
    "barrier_sweep",
    "coupling_eval",
    "coupling_max",
    "diabat_a",
    "diabat_b",
    "effective_activation_energy",
    "effective_lambda",
    "effective_lambda_overpotential",
    "extract_coupling",
    "fermi_dirac",
    "fit_lambda_eff",
    "marcus_barrier",
    "marcus_ts",
    "mhc_rate_closed_form",
    "mhc_rate_numeric",
    "prefactor",
    "surface_table",
    "tafel_sweep",
    "validity_report",
]
