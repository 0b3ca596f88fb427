import math

import numpy as np
import pytest

from fanojc.errors import (
    DimensionOverflowError,
    RankDeficiencyError,
    ZeroIntensityError,
)
from fanojc.lindblad import (
    OracleConfig,
    build_hamiltonian,
    build_liouvillian,
    export_state,
    jump_operators,
    load_state_matrix,
    observables_from_state,
    operators,
    steady_state,
    steady_state_auto,
)
from fanojc.params import SystemParams

FIG1_DIP = SystemParams(
    g=15.0, kappa0=0.3, gamma_n=1e-2, delta_0c=19.25, delta_0L=8.19748, omega_0=1e-3
)


def test_closed_system_is_commutator():
    p = SystemParams(g=1.0, kappa0=0.0, gamma0=1.0, delta_0c=0.5, omega_c=1e-3)
    # drop every dissipator by hand: gamma0 must stay positive for validation,
    # so compare against the commutator built from the same Hamiltonian
    cfg = OracleConfig(n_max=3)
    liouvillian = build_liouvillian(p.replace(gamma0=1.0), cfg)
    h = build_hamiltonian(p, cfg.n_max)
    dim = h.shape[0]
    eye = np.eye(dim, dtype=complex)
    commutator = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    sm_part = liouvillian - commutator
    # remaining part is the single atomic dissipator
    _, sm = operators(cfg.n_max)
    jdj = sm.conj().T @ sm
    expected = np.kron(sm.conj(), sm) - 0.5 * np.kron(eye, jdj) - 0.5 * np.kron(jdj.T, eye)
    assert np.allclose(sm_part, expected, atol=1e-14)


def test_collective_jump_cross_coupling():
    p = SystemParams(g=1.0, kappa0=1.0, gamma0=1.0, omega_c=1e-3)
    jumps = jump_operators(p, 3)
    assert len(jumps) == 1
    c, sm = operators(3)
    assert np.allclose(jumps[0], c + sm, atol=1e-15)


def test_fano_toggle_changes_only_cross_terms():
    p = SystemParams(g=2.0, kappa0=0.8, gamma_n=0.1, delta_0c=1.0, omega_0=1e-3)
    cfg = OracleConfig(n_max=3)
    on = build_liouvillian(p, cfg)
    off = build_liouvillian(p.without_fano(), cfg)
    c, sm = operators(cfg.n_max)
    dim = c.shape[0]
    eye = np.eye(dim, dtype=complex)
    cross_op = c.conj().T @ sm + sm.conj().T @ c
    cross = (
        np.kron(sm.conj(), c)
        + np.kron(c.conj(), sm)
        - 0.5 * np.kron(eye, cross_op)
        - 0.5 * np.kron(cross_op.T, eye)
    )
    scale = math.sqrt(p.kappa0 * p.gamma0)
    assert np.allclose(on - off, scale * cross, atol=1e-13)


def test_fano_toggle_no_op_without_common_cavity_decay():
    p = SystemParams(g=1.0, kappa0=0.0, kappa_n=0.5, gamma_n=0.1, omega_c=1e-3)
    cfg = OracleConfig(n_max=3)
    on = build_liouvillian(p, cfg)
    off = build_liouvillian(p.without_fano(), cfg)
    assert np.array_equal(on, off)


def test_effective_hamiltonian_cross_term():
    # -(i/2) sum J'J reproduces the -i sqrt(kappa0*gamma0)/2 coupling
    p = SystemParams(g=3.0, kappa0=0.5, gamma0=2.0, omega_0=1e-3)
    n_max = 3
    jumps = jump_operators(p, n_max)
    anti = sum(-0.5j * (j.conj().T @ j) for j in jumps)
    c, sm = operators(n_max)
    # coefficient of c' sm: take matrix element <atom g, 1 photon | . | atom e, 0>
    ket = np.zeros(c.shape[0], dtype=complex)
    bra = np.zeros(c.shape[0], dtype=complex)
    ket[(n_max + 1) * 1 + 0] = 1.0  # excited atom, vacuum
    bra[0 * (n_max + 1) + 1] = 1.0  # ground atom, one photon
    coefficient = bra.conj() @ anti @ ket
    assert coefficient == pytest.approx(-0.5j * math.sqrt(0.5 * 2.0), abs=1e-15)


def test_undriven_steady_state_is_ground_vacuum():
    p = SystemParams(g=2.0, kappa0=0.5, gamma_n=0.1, delta_0c=1.0)
    cfg = OracleConfig(n_max=4)
    state = steady_state(build_liouvillian(p, cfg), cfg)
    expected = np.zeros_like(state.rho)
    expected[0, 0] = 1.0
    assert np.allclose(state.rho, expected, atol=1e-12)


def test_driven_damped_cavity():
    p = SystemParams(g=0.0, kappa0=1.0, delta_0L=0.0, omega_c=1e-3, fano_enabled=False)
    cfg = OracleConfig(n_max=6)
    state = steady_state(build_liouvillian(p, cfg), cfg)
    obs = observables_from_state(state)
    assert obs.n_c == pytest.approx(4e-6, rel=1e-6)
    assert obs.g2 == pytest.approx(1.0, abs=1e-6)
    assert obs.i0 == pytest.approx(0.0, abs=1e-6)
    assert obs.i2 == pytest.approx(0.0, abs=1e-6)


def test_state_invariants():
    cfg = OracleConfig(n_max=8)
    state = steady_state(build_liouvillian(FIG1_DIP, cfg), cfg)
    assert np.trace(state.rho).real == pytest.approx(1.0, abs=1e-12)
    assert abs(np.trace(state.rho).imag) < 1e-12
    assert np.max(np.abs(state.rho - state.rho.conj().T)) < 1e-12
    eigenvalues = np.linalg.eigvalsh(0.5 * (state.rho + state.rho.conj().T))
    assert eigenvalues.min() > -1e-10
    assert state.residual < 1e-10


def test_trace_preservation():
    cfg = OracleConfig(n_max=5)
    liouvillian = build_liouvillian(FIG1_DIP, cfg)
    dim = 2 * (cfg.n_max + 1)
    trace_vec = np.zeros(dim * dim, dtype=complex)
    trace_vec[np.arange(dim) * (dim + 1)] = 1.0
    assert np.max(np.abs(trace_vec @ liouvillian)) < 1e-12


def test_decomposition_identity_oracle():
    cfg = OracleConfig(n_max=8)
    state = steady_state(build_liouvillian(FIG1_DIP, cfg), cfg)
    obs = observables_from_state(state)
    assert 1.0 + obs.i0 + obs.i2 == pytest.approx(obs.g2, abs=1e-8)


def test_cutoff_convergence_near_resonance():
    cfg = OracleConfig(n_max=10, auto_converge=True, rel_tol=1e-6)
    state, n_used = steady_state_auto(FIG1_DIP, cfg)
    obs = observables_from_state(state)
    bigger = OracleConfig(n_max=n_used + 2)
    state2 = steady_state(build_liouvillian(FIG1_DIP, bigger), bigger)
    obs2 = observables_from_state(state2)
    assert abs(obs.g2 - obs2.g2) / obs2.g2 < 1e-6
    assert abs(obs.n_c - obs2.n_c) / obs2.n_c < 1e-6


def test_zero_intensity_error():
    p = SystemParams(g=1.0, kappa0=0.5, delta_0c=1.0)
    cfg = OracleConfig(n_max=3)
    state = steady_state(build_liouvillian(p, cfg), cfg)
    with pytest.raises(ZeroIntensityError):
        observables_from_state(state)


def test_dimension_cap():
    with pytest.raises(DimensionOverflowError):
        build_liouvillian(FIG1_DIP, OracleConfig(n_max=30))


def test_config_validation():
    from fanojc.errors import InvalidParameterError

    with pytest.raises(InvalidParameterError):
        build_liouvillian(FIG1_DIP, OracleConfig(n_max=1))


def test_rank_deficiency_detected():
    # a generator with a free stationary subspace: all-zero dynamics
    cfg = OracleConfig(n_max=2)
    with pytest.raises(RankDeficiencyError):
        steady_state(np.zeros((16, 16), dtype=complex), cfg)


def test_export_round_trip(tmp_path):
    cfg = OracleConfig(n_max=3)
    state = steady_state(build_liouvillian(FIG1_DIP, cfg), cfg)
    path = tmp_path / "rho.txt"
    export_state(state, path)
    loaded = load_state_matrix(path)
    assert np.allclose(loaded, state.rho, atol=1e-15)
    first = path.read_text()
    export_state(state, path)
    assert path.read_text() == first
