"""Activation barriers for the coupled two-state system.

Four methods are provided: the uncoupled Marcus barrier, the traditional
constant shift by V(1/2), a Marcus-form barrier built from a reduced
effective reorganization energy, and exact numerical extremum analysis of
the lower adiabat.
"""

import enum
import math
from dataclasses import dataclass, replace

import numpy as np

from . import numerics
from .constants import K_B
from .errors import SingularRegimeError, SurfaceTopologyError
from .model import coupling_eval, coupling_max, lower_adiabat

__all__ = [
    "BarrierMethod",
    "BarrierResult",
    "marcus_ts",
    "marcus_barrier",
    "effective_lambda",
    "barrier",
    "adiabatic_driving_force",
    "validity_report",
]

# scan window for adiabat extrema: both diabatic minima (q=0, 1) and the
# crossing lie strictly inside for the normal regime
SCAN_Q_LO = -0.5
SCAN_Q_HI = 1.5
SCAN_N = 2001
EXTREMUM_TOL_X = 1e-10


class BarrierMethod(enum.Enum):
    MARCUS = "marcus"
    CONSTANT_SHIFT = "shift"
    EFFECTIVE_LAMBDA = "eff"
    EXACT_ADIABAT = "exact"


@dataclass(frozen=True)
class BarrierResult:
    e_star: float
    q_ts: float
    q_r: float
    lambda_used: float
    activationless: bool


def marcus_ts(sys):
    """Diabatic crossing coordinate q* = (1 + dg0/lam)/2."""
    return 0.5 * (1.0 + sys.dg0 / sys.lam)


def marcus_barrier(sys):
    """Uncoupled barrier (lam + dg0)^2 / (4*lam)."""
    return (sys.lam + sys.dg0) ** 2 / (4.0 * sys.lam)


def effective_lambda(sys, c):
    """Reduced effective reorganization energy.

    lam_eff = lam - 4*V(q*) + 4*V(0)^2/lam with q* the diabatic crossing;
    for a constant coupling V and dg0=0 this is lam*(1 - 2V/lam)^2.
    Raises SingularRegimeError when the result is non-positive (the
    Marcus-form barrier diverges there).
    """
    v_ts = float(coupling_eval(c, marcus_ts(sys)))
    v0 = float(coupling_eval(c, 0.0))
    lam_eff = sys.lam - 4.0 * v_ts + 4.0 * v0 * v0 / sys.lam
    if lam_eff <= 0.0:
        raise SingularRegimeError(
            f"effective reorganization energy non-positive ({lam_eff:.6g} eV)"
        )
    return lam_eff


def _exact_extrema(sys, c):
    """Refined minima and maxima of the lower adiabat in the scan window."""
    qs = np.linspace(SCAN_Q_LO, SCAN_Q_HI, SCAN_N)
    es = lower_adiabat(sys, c, qs)
    found = numerics.brackets_from_samples(qs, es)

    lam, dg0 = sys.lam, sys.dg0

    def f(q):
        # scalar fast path; hot inner loop of the rate quadrature
        ea = lam * q * q
        eb = lam * (1.0 - q) ** 2 + dg0
        v = coupling_eval(c, q)
        return 0.5 * (ea + eb) - 0.5 * math.sqrt(
            (ea - eb) * (ea - eb) + 4.0 * v * v
        )

    minima = [
        numerics.minimize_1d(f, br, tol_x=EXTREMUM_TOL_X)
        for br, kind in found
        if kind == "min"
    ]
    maxima = [
        numerics.maximize_1d(f, br, tol_x=EXTREMUM_TOL_X)
        for br, kind in found
        if kind == "max"
    ]
    return minima, maxima


def _exact_barrier(sys, c):
    minima, maxima = _exact_extrema(sys, c)
    if not minima:
        raise SurfaceTopologyError(
            "no minimum of the lower adiabat in the scan window"
        )
    reactant = minima[0]  # smallest q among the (<= 2) minima
    if len(minima) < 2:
        return BarrierResult(
            e_star=0.0, q_ts=math.nan, q_r=reactant.x,
            lambda_used=sys.lam, activationless=True,
        )
    product = minima[1]
    interior = [m for m in maxima if reactant.x < m.x < product.x]
    if not interior:
        return BarrierResult(
            e_star=0.0, q_ts=math.nan, q_r=reactant.x,
            lambda_used=sys.lam, activationless=True,
        )
    ts = max(interior, key=lambda m: m.fx)
    e_star = max(ts.fx - reactant.fx, 0.0)
    return BarrierResult(
        e_star=e_star, q_ts=ts.x, q_r=reactant.x,
        lambda_used=sys.lam, activationless=False,
    )


def barrier(sys, c, method):
    """Activation barrier by the requested method.

    ConstantShift is deliberately not clamped at zero: the negative
    barriers it predicts for strongly exothermic reactions are part of
    its known pathology.
    """
    q_star = marcus_ts(sys)
    if method is BarrierMethod.MARCUS:
        e = marcus_barrier(sys)
        return BarrierResult(e, q_star, 0.0, sys.lam, e == 0.0)
    if method is BarrierMethod.CONSTANT_SHIFT:
        e = marcus_barrier(sys) - float(coupling_eval(c, 0.5))
        return BarrierResult(e, q_star, 0.0, sys.lam, False)
    if method is BarrierMethod.EFFECTIVE_LAMBDA:
        lam_eff = effective_lambda(sys, c)
        e = (lam_eff + sys.dg0) ** 2 / (4.0 * lam_eff)
        return BarrierResult(e, q_star, 0.0, lam_eff, e == 0.0)
    if method is BarrierMethod.EXACT_ADIABAT:
        return _exact_barrier(sys, c)
    raise TypeError(f"unknown barrier method: {method!r}")


def adiabatic_driving_force(sys, c):
    """E_minus(product minimum) - E_minus(reactant minimum).

    Diagnostic only; with coupling on, this deviates from dg0 at second
    order. Raises SurfaceTopologyError for a single-well surface.
    """
    minima, _ = _exact_extrema(sys, c)
    if len(minima) < 2:
        raise SurfaceTopologyError(
            "lower adiabat is single-welled; no adiabatic driving force"
        )
    return minima[1].fx - minima[0].fx


def validity_report(sys, c):
    """Heuristic warnings for regimes where the reduced-lambda barrier
    formula degrades."""
    warnings = []
    v_max = coupling_max(c)
    try:
        lam_eff = effective_lambda(sys, c)
    except SingularRegimeError:
        lam_eff = 0.0
    if lam_eff <= 0.1 * sys.lam:
        warnings.append(
            f"effective reorganization energy {lam_eff:.4g} eV is <= 10% of "
            f"lam={sys.lam:.4g} eV; Marcus-form barrier near singular"
        )
    if abs(sys.dg0) / sys.lam > 0.25:
        warnings.append(
            f"|dg0|/lam = {abs(sys.dg0) / sys.lam:.3g} > 0.25; truncated "
            "higher-order terms may matter"
        )
    if v_max / sys.lam > 0.5:
        warnings.append(
            f"max coupling {v_max:.4g} eV exceeds lam/2; expansion about the "
            "crossing unreliable"
        )
    if v_max < K_B * 300.0:
        warnings.append(
            f"max coupling {v_max:.4g} eV is below k_B*T at 300 K; system is "
            "in the non-adiabatic regime"
        )
    return warnings


def shifted(sys, dg0):
    """Copy of sys with a different driving force."""
    return replace(sys, dg0=dg0)
