import math

import numpy as np
import pytest

from fanojc.errors import SingularPointError, ZeroIntensityError
from fanojc.params import SystemParams, derive
from fanojc.wavefunction import (
    observables,
    observables_from_amplitudes,
    solve_amplitudes,
    solve_blocks,
)

SQRT2 = math.sqrt(2.0)

FIG1 = SystemParams(g=15.0, kappa0=0.3, gamma_n=1e-2, delta_0c=19.25, omega_0=1e-3)


def random_points(n, seed=7):
    rng = np.random.default_rng(seed)
    points = []
    for _ in range(n):
        g = rng.uniform(0.1, 20.0)
        kappa0 = rng.uniform(0.1, 20.0)
        q = 2.0 * g / math.sqrt(kappa0)
        params = SystemParams(
            g=g,
            kappa0=kappa0,
            kappa_n=rng.uniform(0.0, kappa0),
            gamma_n=rng.uniform(0.0, 1.0),
            delta_0c=rng.uniform(-2 * q, 2 * q),
            delta_0L=rng.uniform(-2 * q, 2 * q),
            omega_0=rng.uniform(0.0, 1e-3),
            omega_c=rng.uniform(1e-5, 1e-3),
        )
        points.append(params)
    return points


def test_undriven_amplitudes_vanish():
    a = solve_amplitudes(SystemParams(g=2.0, kappa0=0.5, delta_0c=1.0))
    assert a.c_10 == 0 and a.c_01 == 0 and a.c_20 == 0 and a.c_11 == 0


def test_driven_empty_cavity_is_coherent():
    p = SystemParams(g=0.0, kappa0=1.0, delta_0L=0.4, omega_c=1e-4, fano_enabled=False)
    a = solve_amplitudes(p)
    assert a.c_01 == 0 and a.c_11 == 0
    assert a.c_20 / a.c_10**2 == pytest.approx(1.0 / SQRT2, rel=1e-12)
    obs = observables_from_amplitudes(a)
    assert obs.g2 == pytest.approx(1.0, abs=1e-6)
    assert obs.i0 == pytest.approx(0.0, abs=1e-10)
    assert obs.i2 == pytest.approx(0.0, abs=1e-6)


def test_block_residuals():
    p = FIG1.replace(delta_0L=8.2, omega_c=2e-4)
    d = derive(p)
    a = solve_amplitudes(p)
    # one-excitation block
    r1 = d.delta_c * a.c_10 + d.g_F * a.c_01 + p.omega_c
    r2 = d.g_F * a.c_10 + d.delta_0 * a.c_01 + p.omega_0
    scale1 = max(abs(d.delta_c * a.c_10), abs(d.g_F * a.c_01), p.omega_c)
    assert abs(r1) / scale1 < 1e-12
    assert abs(r2) / scale1 < 1e-12
    # two-excitation block
    r3 = 2 * d.delta_c * a.c_20 + SQRT2 * d.g_F * a.c_11 + SQRT2 * p.omega_c * a.c_10
    r4 = (
        SQRT2 * d.g_F * a.c_20
        + (d.delta_0 + d.delta_c) * a.c_11
        + p.omega_0 * a.c_10
        + p.omega_c * a.c_01
    )
    scale2 = max(abs(2 * d.delta_c * a.c_20), abs(SQRT2 * d.g_F * a.c_11), 1e-300)
    assert abs(r3) / scale2 < 1e-12
    assert abs(r4) / scale2 < 1e-12


def test_amplitude_drive_orders():
    p = FIG1.replace(delta_0L=8.0, omega_0=1e-4)
    a = solve_amplitudes(p)
    b = solve_amplitudes(p.replace(omega_0=1e-5))
    assert abs(b.c_10 / a.c_10) == pytest.approx(0.1, rel=1e-10)
    assert abs(b.c_01 / a.c_01) == pytest.approx(0.1, rel=1e-10)
    assert abs(b.c_20 / a.c_20) == pytest.approx(0.01, rel=1e-10)
    assert abs(b.c_11 / a.c_11) == pytest.approx(0.01, rel=1e-10)


def test_observable_drive_scaling():
    # scaling both drives by s: n_c -> s^2 n_c, g2 unchanged (weak-drive base)
    p = FIG1.replace(delta_0L=7.9, omega_0=1e-6, omega_c=5e-7)
    base = observables_from_amplitudes(solve_amplitudes(p))
    for s in (0.1, 0.5):
        scaled = observables_from_amplitudes(
            solve_amplitudes(p.replace(omega_0=p.omega_0 * s, omega_c=p.omega_c * s))
        )
        assert scaled.n_c == pytest.approx(base.n_c * s * s, rel=1e-10)
        assert scaled.g2 == pytest.approx(base.g2, rel=1e-10)


def test_conjugation_antilinearity():
    d = derive(FIG1.replace(delta_0L=8.1, omega_c=3e-4))
    direct = solve_blocks(d.g_F, d.delta_0, d.delta_c, 1e-3, 3e-4)
    conjugated = solve_blocks(
        d.g_F.conjugate(), d.delta_0.conjugate(), d.delta_c.conjugate(), 1e-3, 3e-4
    )
    for lhs, rhs in zip(direct, conjugated):
        assert rhs == pytest.approx(lhs.conjugate(), rel=1e-12)


def test_decomposition_identity_random_cloud():
    for p in random_points(25):
        obs = observables_from_amplitudes(solve_amplitudes(p))
        assert 1.0 + obs.i0 + obs.i2 == pytest.approx(obs.g2, abs=1e-10)


def test_zero_intensity_error():
    with pytest.raises(ZeroIntensityError):
        observables_from_amplitudes(
            solve_amplitudes(SystemParams(g=1.0, kappa0=0.5, delta_0c=2.0))
        )


def test_singular_at_exact_bound_state():
    q = 2.0 * 15.0 / math.sqrt(0.3)
    p = SystemParams(
        g=15.0,
        kappa0=0.3,
        delta_0c=q * (1.0 - 0.3) / 2.0,
        delta_0L=q * 0.3 / 2.0,
        omega_0=1e-3,
    )
    with pytest.raises(SingularPointError):
        solve_amplitudes(p)


def test_weak_drive_warning():
    with pytest.warns(UserWarning):
        solve_amplitudes(FIG1.replace(delta_0L=8.0, omega_0=0.05))


def test_strong_coupling_scan_tenfold_reduction():
    # scanning the drive detuning at g=16, kappa0=17, gamma_n=1: the
    # interference dip is at least ten times deeper than any bare dip
    from fanojc import sweeps

    base = SystemParams(g=16.0, kappa0=17.0, gamma_n=1.0, omega_0=1e-3)
    d0c, _, _ = sweeps.maximize_eta(base, "atom")
    p = base.replace(delta_0c=d0c)
    xs = np.linspace(-110.0, 110.0, 4001)
    from fanojc.wavefunction import g2_curve

    on = g2_curve(p, xs)
    off = g2_curve(p.without_fano(), xs)
    assert np.nanmin(off) / np.nanmin(on) >= 10.0


def test_eta_in_observables():
    obs = observables(FIG1.replace(delta_0L=8.19747), include_eta=True)
    assert obs.eta is not None and obs.eta > 1.0


def test_field_moment_third_order_term_negligible():
    # keeping the two-excitation contribution in <c> moves the squeezing
    # weight by at most drive order: either tiny relative to I2 or tiny
    # against the decomposition scale max(1, |I2|)
    for p in random_points(25, seed=21):
        a = solve_amplitudes(p)
        full = observables_from_amplitudes(a)
        n_c = abs(a.c_10) ** 2 + abs(a.c_11) ** 2 + 2.0 * abs(a.c_20) ** 2
        c_mean = a.c_g.conjugate() * a.c_10 + a.c_01.conjugate() * a.c_11
        c2_mean = SQRT2 * a.c_g.conjugate() * a.c_20
        two_photon = 2.0 * abs(a.c_20) ** 2
        i0 = (
            two_photon + abs(c_mean) ** 4 - 2.0 * (c_mean.conjugate() ** 2 * c2_mean).real
        ) / n_c**2
        i2 = full.g2 - 1.0 - i0
        assert abs(i2 - full.i2) / max(1.0, abs(full.i2)) < 0.01
