"""Closed-form photon statistics, interference-resonance conditions and
enhancement limits.

All expressions live on the complex detunings delta_0, delta_c and the
complex coupling g_F.  The intensity and the decomposition come from single
closed forms; g2(0) is evaluated from the two-excitation amplitudes, which is
the defining construction, while an older single-expression candidate is kept
for cross-reference because it mixes drive orders and disagrees beyond
rounding (see g2_closed_form).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

from .errors import SingularPointError, UndefinedFanoParameterError, ZeroIntensityError
from .observables import ObservableSet
from .params import DerivedQuantities, SystemParams, derive
from .wavefunction import SINGULAR_TOL, g2_value, observables_from_amplitudes, solve_amplitudes

# Branch thresholds for the two analytic enhancement limits.
Q_SMALL = 0.1
Q_LARGE = 30.0
# Relative disagreement beyond which the single-expression g2 candidate is flagged.
CLOSED_FORM_TOL = 1e-6

DRIVE_KINDS = ("atom", "cavity")


@dataclass(frozen=True)
class EnhancementReport:
    """Predicted interference-resonance detunings and peak-enhancement limits.

    delta_0c_bic: atom-cavity detuning at which one dressed state decouples
    from the shared continuum (first order in the dissipation fractions).
    delta_0L_bic: drive detuning of the resulting intensity maximum.
    eta_m_small_q / eta_m_large_q: peak enhancement in the two limits, with
    `branch` marking which applies at this q ("interpolation" in between).
    diverges is set when both dissipation fractions vanish, where the
    large-q denominator goes to zero.
    """

    delta_0c_bic: float | None = None
    delta_0L_bic: float | None = None
    eta_m_small_q: float | None = None
    eta_m_large_q: float | None = None
    drive_kind: str | None = None
    branch: str | None = None
    diverges: bool = False


def _denominator(d: DerivedQuantities) -> complex:
    det = d.g_F * d.g_F - d.delta_0 * d.delta_c
    if abs(det) < SINGULAR_TOL:
        raise SingularPointError(
            "g_F^2 - delta_0*delta_c vanished: exact lossless bound state"
        )
    return det


def intensity_analytic(d: DerivedQuantities, params: SystemParams) -> float:
    """Cavity intensity |(omega_c*delta_0 - omega_0*g_F) / (g_F^2 - delta_0*delta_c)|^2."""
    if not params.driven:
        return 0.0
    det = _denominator(d)
    num = params.omega_c * d.delta_0 - params.omega_0 * d.g_F
    return abs(num / det) ** 2


def g2_analytic(d: DerivedQuantities, params: SystemParams) -> float:
    """g2(0) evaluated from the two-excitation amplitudes (the authoritative route)."""
    return g2_value(params, d)


def g2_closed_form(d: DerivedQuantities, params: SystemParams) -> float:
    """Single-expression g2 candidate kept for reference only.

    Its numerator mixes first and second order in the drive amplitudes, so it
    cannot equal the amplitude result in general; g2_reference_flags reports
    the mismatch.
    """
    det1 = _denominator(d)
    det2 = d.g_F * d.g_F - (d.delta_0 + d.delta_c) * d.delta_c
    num = (
        d.g_F * d.g_F * params.omega_0**2
        - 2.0 * d.g_F * (d.delta_0 + d.delta_c) * params.omega_0
        + params.omega_c**2 * (d.g_F * d.g_F + d.delta_0 * (d.delta_0 + d.delta_c))
    )
    return abs(num / (det1 * det2)) ** 2


def g2_reference_flags(d: DerivedQuantities, params: SystemParams) -> tuple[str, ...]:
    """Flag raised when the reference closed form deviates from the amplitude g2."""
    value = g2_analytic(d, params)
    reference = g2_closed_form(d, params)
    if value == 0.0:
        deviation = math.inf if reference != 0.0 else 0.0
    else:
        deviation = abs(reference - value) / value
    return ("g2-closed-form-mismatch",) if deviation > CLOSED_FORM_TOL else ()


def enhancement(params: SystemParams, d: DerivedQuantities | None = None) -> float:
    """eta = g2(interference off) / g2(as configured), identical parameters otherwise."""
    if d is None:
        d = derive(params)
    g2_here = g2_analytic(d, params)
    bare = params.without_fano()
    g2_bare = g2_analytic(derive(bare), bare)
    return g2_bare / g2_here


def bic_conditions(params: SystemParams, d: DerivedQuantities | None = None) -> EnhancementReport:
    """First-order detunings of the decoupled dressed state and its drive resonance."""
    if d is None:
        d = derive(params)
    if params.kappa0 * params.gamma0 <= 0:
        raise UndefinedFanoParameterError("q undefined: kappa0*gamma0 == 0")
    delta_0c = d.q * ((1.0 - d.beta_kappa) * params.gamma0 - (1.0 - d.beta_gamma) * params.kappa0) / 2.0
    delta_0L = d.q * (1.0 - d.beta_gamma) * params.kappa0 / 2.0
    return EnhancementReport(delta_0c_bic=delta_0c, delta_0L_bic=delta_0L)


def eta_max_small_q(params: SystemParams, d: DerivedQuantities, drive_kind: str) -> float:
    """Peak enhancement in the q ~ 0 limit."""
    c_x = 1.0 if drive_kind == "atom" else 2.0
    mixing = (1.0 + d.beta_gamma) * (1.0 + d.beta_kappa) - 1.0
    if mixing == 0.0:
        return math.inf
    lead = (1.0 + 1.0 / mixing) ** 2
    return lead * (params.kappa0 / (c_x * params.kappa0 + params.gamma0)) ** 2


def eta_max_large_q(params: SystemParams, d: DerivedQuantities, drive_kind: str) -> float:
    """Peak enhancement in the q >> 1 limit."""
    q2 = d.q * d.q
    beta_sum = d.beta_gamma + d.beta_kappa
    product = (1.0 + d.beta_gamma) * (1.0 + d.beta_kappa)
    denominator = beta_sum**2 * q2 + (product - 1.0) ** 2
    if denominator == 0.0:
        return math.inf
    numerator = (2.0 + beta_sum) ** 2 * q2 + product**2
    if drive_kind == "atom":
        correction = 1.0 - 4.0 * (params.kappa0 + params.gamma0) * params.gamma0 / (d.q * params.kappa0) ** 2
    else:
        correction = 1.0 - 4.0 * (params.kappa0 + params.gamma0) ** 2 / (d.q * params.kappa0) ** 2
    return numerator / denominator * correction


def eta_max(params: SystemParams, d: DerivedQuantities | None = None, drive_kind: str = "atom") -> EnhancementReport:
    """Both enhancement limits, with the branch applicable at this q marked."""
    if drive_kind not in DRIVE_KINDS:
        raise ValueError(f"drive_kind must be one of {DRIVE_KINDS}, got {drive_kind!r}")
    if d is None:
        d = derive(params)
    if params.kappa0 * params.gamma0 <= 0:
        raise UndefinedFanoParameterError("q undefined: kappa0*gamma0 == 0")
    conditions = bic_conditions(params, d)
    small = eta_max_small_q(params, d, drive_kind)
    large = eta_max_large_q(params, d, drive_kind)
    if d.q < Q_SMALL:
        branch = "small_q"
    elif d.q > Q_LARGE:
        branch = "large_q"
    else:
        branch = "interpolation"
    diverges = d.beta_gamma == 0.0 and d.beta_kappa == 0.0
    return EnhancementReport(
        delta_0c_bic=conditions.delta_0c_bic,
        delta_0L_bic=conditions.delta_0L_bic,
        eta_m_small_q=small,
        eta_m_large_q=large,
        drive_kind=drive_kind,
        branch=branch,
        diverges=diverges,
    )


def decomposition_analytic(d: DerivedQuantities, params: SystemParams) -> tuple[float, float]:
    """Closed-form quantum-signal weight I0 and squeezing weight I2 = g2 - 1 - I0.

    The I0 expression is exact at leading drive order for cavity drive; for
    atom drive the wavefunction/master-equation decompositions are the
    appropriate route.
    """
    det2 = d.g_F * d.g_F - (d.delta_0 + d.delta_c) * d.delta_c
    if abs(d.delta_0) ** 2 * abs(det2) < SINGULAR_TOL:
        raise SingularPointError("decomposition denominator vanished")
    i0 = abs(d.g_F**4 / (d.delta_0**2 * det2)) ** 2
    g2 = g2_analytic(d, params)
    return i0, g2 - 1.0 - i0


def observables_analytic(params: SystemParams, include_eta: bool = False) -> ObservableSet:
    """ObservableSet from the closed forms (intensity from its own expression,
    g2 from the amplitude route, decomposition from the closed-form I0)."""
    d = derive(params)
    n_c = intensity_analytic(d, params)
    if n_c == 0.0:
        raise ZeroIntensityError("undriven point: correlations undefined")
    g2 = g2_analytic(d, params)
    i0, i2 = decomposition_analytic(d, params)
    eta = enhancement(params, d) if include_eta else None
    return ObservableSet(
        n_c=n_c,
        g2=g2,
        i0=i0,
        i2=i2,
        eta=eta,
        solver="analytic",
        flags=g2_reference_flags(d, params),
    )
