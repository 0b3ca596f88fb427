"""Steady-state amplitudes of the driven atom-cavity system truncated at two
excitations, evolved under the non-Hermitian Hamiltonian

    H = delta_c c'c + delta_0 s+s- + g_F (c's- + s+c) + omega_0 (s+ + s-)
        + omega_c (c' + c)

with complex detunings delta_0, delta_c and complex coupling g_F from
params.derive.  In the weak-drive regime the ground-state amplitude stays 1
and the excited amplitudes follow order by order: the one-excitation pair
(c_10, c_01) is sourced by the drives, the two-excitation pair (c_20, c_11)
by the one-excitation pair, with the sqrt(2) bosonic factor on the photon
ladder and no doubly-excited atom state.
"""
from __future__ import annotations

import math
import warnings
from dataclasses import dataclass

import numpy as np

from .errors import SingularPointError, ZeroIntensityError
from .observables import ObservableSet
from .params import DerivedQuantities, SystemParams, derive

SQRT2 = math.sqrt(2.0)
# |g_F^2 - delta_0*delta_c| below this (units gamma0^2) counts as an exact
# lossless bound state; finite extra dissipation keeps real systems away.
SINGULAR_TOL = 1e-12
# Weak-drive validity: warn above this drive amplitude (units gamma0).
DRIVE_WARN = 1e-2


@dataclass(frozen=True)
class Amplitudes:
    """Wavefunction coefficients |c_10|, |c_01| = O(omega); |c_20|, |c_11| = O(omega^2)."""

    c_g: complex
    c_10: complex
    c_01: complex
    c_20: complex
    c_11: complex


def solve_blocks(g_F, delta_0, delta_c, omega_0, omega_c):
    """Order-by-order solution of both excitation blocks.

    Accepts scalars or numpy arrays (broadcast); returns (c10, c01, c20, c11).
    Array inputs yield nan at singular points instead of raising.
    """
    det1 = g_F * g_F - delta_0 * delta_c
    c10 = (omega_c * delta_0 - omega_0 * g_F) / det1
    c01 = (omega_0 * delta_c - omega_c * g_F) / det1
    det2 = delta_c * (delta_0 + delta_c) - g_F * g_F
    source = omega_0 * c10 + omega_c * c01
    c20 = (g_F * source - omega_c * c10 * (delta_0 + delta_c)) / (SQRT2 * det2)
    c11 = (g_F * omega_c * c10 - delta_c * source) / det2
    return c10, c01, c20, c11


def solve_amplitudes(params: SystemParams, d: DerivedQuantities | None = None) -> Amplitudes:
    """Steady-state amplitudes with c_g = 1 at the given parameter point."""
    if d is None:
        d = derive(params)
    strongest = max(params.omega_0, params.omega_c)
    if strongest > DRIVE_WARN:
        warnings.warn(
            f"drive amplitude {strongest:g} exceeds the weak-drive validity range"
            " (results are perturbative in the drive)",
            stacklevel=2,
        )
    det1 = d.g_F * d.g_F - d.delta_0 * d.delta_c
    det2 = d.delta_c * (d.delta_0 + d.delta_c) - d.g_F * d.g_F
    if abs(det1) < SINGULAR_TOL or abs(det2) < SINGULAR_TOL:
        raise SingularPointError(
            "parameters sit on an exact lossless bound state; the truncated"
            " steady state diverges"
        )
    c10, c01, c20, c11 = solve_blocks(d.g_F, d.delta_0, d.delta_c, params.omega_0, params.omega_c)
    return Amplitudes(c_g=1.0 + 0.0j, c_10=c10, c_01=c01, c_20=c20, c_11=c11)


def observables_from_amplitudes(a: Amplitudes) -> ObservableSet:
    """Photon statistics of the truncated state.

    n_c keeps the two-excitation populations; the field moments keep every
    term the truncation supports, so the decomposition closes against the
    master-equation solver order by order.
    """
    n_c = abs(a.c_10) ** 2 + abs(a.c_11) ** 2 + 2.0 * abs(a.c_20) ** 2
    if n_c < 1e-300:
        raise ZeroIntensityError("no cavity field at this point; g2 is undefined")
    two_photon = 2.0 * abs(a.c_20) ** 2
    g2 = two_photon / n_c**2
    c_mean = (
        a.c_g.conjugate() * a.c_10
        + a.c_01.conjugate() * a.c_11
        + SQRT2 * a.c_10.conjugate() * a.c_20
    )
    c2_mean = SQRT2 * a.c_g.conjugate() * a.c_20
    i0 = (two_photon + abs(c_mean) ** 4 - 2.0 * (c_mean.conjugate() ** 2 * c2_mean).real) / n_c**2
    i2 = g2 - 1.0 - i0
    return ObservableSet(n_c=n_c, g2=g2, i0=i0, i2=i2, solver="wavefunction")


def observables(params: SystemParams, include_eta: bool = False) -> ObservableSet:
    """Front door: amplitudes then observables, optionally with eta."""
    obs = observables_from_amplitudes(solve_amplitudes(params))
    if not include_eta:
        return obs
    bare = observables_from_amplitudes(solve_amplitudes(params.without_fano()))
    return ObservableSet(
        n_c=obs.n_c, g2=obs.g2, i0=obs.i0, i2=obs.i2, eta=bare.g2 / obs.g2, solver="wavefunction"
    )


def g2_value(params: SystemParams, d: DerivedQuantities | None = None) -> float:
    """g2(0) from the truncated amplitudes (drive-magnitude independent at weak drive)."""
    a = solve_amplitudes(params, d)
    return observables_from_amplitudes(a).g2


def _curve_inputs(params: SystemParams, delta_0L):
    d = derive(params)
    x = np.asarray(delta_0L, dtype=float)
    delta_c = x - 0.5j * d.kappa
    delta_0 = (params.delta_0c + x) - 0.5j * d.gamma
    return d.g_F, delta_0, delta_c


def g2_curve(params: SystemParams, delta_0L) -> np.ndarray:
    """Vectorized g2(0) along a drive-detuning axis; nan marks singular cells."""
    g_F, delta_0, delta_c = _curve_inputs(params, delta_0L)
    with np.errstate(divide="ignore", invalid="ignore"):
        c10, c01, c20, c11 = solve_blocks(g_F, delta_0, delta_c, params.omega_0, params.omega_c)
        n_c = np.abs(c10) ** 2 + np.abs(c11) ** 2 + 2.0 * np.abs(c20) ** 2
        g2 = 2.0 * np.abs(c20) ** 2 / n_c**2
    det1 = g_F * g_F - delta_0 * delta_c
    g2 = np.where(np.abs(det1) < SINGULAR_TOL, np.nan, g2)
    return g2


def intensity_curve(params: SystemParams, delta_0L) -> np.ndarray:
    """Vectorized cavity intensity along a drive-detuning axis."""
    g_F, delta_0, delta_c = _curve_inputs(params, delta_0L)
    with np.errstate(divide="ignore", invalid="ignore"):
        c10, c01, c20, c11 = solve_blocks(g_F, delta_0, delta_c, params.omega_0, params.omega_c)
        n_c = np.abs(c10) ** 2 + np.abs(c11) ** 2 + 2.0 * np.abs(c20) ** 2
    det1 = g_F * g_F - delta_0 * delta_c
    return np.where(np.abs(det1) < SINGULAR_TOL, np.nan, n_c)
