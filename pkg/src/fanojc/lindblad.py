"""Full master-equation steady state on the atom (x) truncated-Fock space.

This is the ground truth the closed forms are checked against.  The
interference between the two radiative channels is realized exactly, with a
single collective jump operator

    J1 = sqrt(kappa0) c + sqrt(gamma0) s-

(relative phase zero, matching real bath couplings), plus independent jumps
sqrt(kappa_n) c and sqrt(gamma_n) s-.  The non-Hermitian part of
H - (i/2) sum J'J then reproduces the complex coupling g - i*sqrt(kappa0*gamma0)/2
used by the wavefunction solver.

The Liouvillian is built dense on column-stacked density matrices and the
steady state is found by a direct solve with one row replaced by the trace
constraint; desk-scale cutoffs keep the superoperator below ~2500 x 2500.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from .errors import (
    DimensionOverflowError,
    InvalidParameterError,
    RankDeficiencyError,
    ZeroIntensityError,
)
from .observables import ObservableSet
from .params import SystemParams, derive


@dataclass(frozen=True)
class OracleConfig:
    """Fock cutoff controls for the dense steady-state solver.

    auto_converge raises n_max in steps of two until n_c and g2 change by
    less than rel_tol between consecutive cutoffs.  max_superop_dim caps
    4*(n_max+1)^2, the linear dimension of the dense Liouvillian.
    """

    n_max: int = 6
    auto_converge: bool = False
    rel_tol: float = 1e-6
    max_superop_dim: int = 2500

    def validate(self) -> None:
        if self.n_max < 2:
            raise InvalidParameterError("n_max must be >= 2 for two-photon correlations")
        if self.rel_tol <= 0:
            raise InvalidParameterError("rel_tol must be positive")


@dataclass(frozen=True)
class SteadyState:
    """Density matrix (basis: atom level (x) Fock number) and the solve residual."""

    rho: np.ndarray
    residual: float

    @property
    def dim(self) -> int:
        return self.rho.shape[0]

    @property
    def n_max(self) -> int:
        return self.dim // 2 - 1


def _fock_annihilation(n_levels: int) -> np.ndarray:
    return np.diag(np.sqrt(np.arange(1, n_levels, dtype=float)), 1).astype(complex)


def operators(n_max: int) -> tuple[np.ndarray, np.ndarray]:
    """Photon annihilation and atomic lowering operators on atom (x) Fock."""
    n_levels = n_max + 1
    a = _fock_annihilation(n_levels)
    sm = np.array([[0.0, 1.0], [0.0, 0.0]], dtype=complex)
    c = np.kron(np.eye(2, dtype=complex), a)
    sigma_minus = np.kron(sm, np.eye(n_levels, dtype=complex))
    return c, sigma_minus


def build_hamiltonian(params: SystemParams, n_max: int) -> np.ndarray:
    d = derive(params)
    c, sm = operators(n_max)
    cd, sp = c.conj().T, sm.conj().T
    h = (
        d.delta_c.real * (cd @ c)
        + d.delta_0.real * (sp @ sm)
        + params.g * (cd @ sm + sp @ c)
        + params.omega_0 * (sp + sm)
        + params.omega_c * (cd + c)
    )
    return h


def jump_operators(params: SystemParams, n_max: int) -> list[np.ndarray]:
    """Collapse operators; the radiative pair is collective when interference is on."""
    c, sm = operators(n_max)
    jumps = []
    if params.fano_enabled:
        if params.kappa0 > 0 or params.gamma0 > 0:
            jumps.append(math.sqrt(params.kappa0) * c + math.sqrt(params.gamma0) * sm)
    else:
        if params.kappa0 > 0:
            jumps.append(math.sqrt(params.kappa0) * c)
        if params.gamma0 > 0:
            jumps.append(math.sqrt(params.gamma0) * sm)
    if params.kappa_n > 0:
        jumps.append(math.sqrt(params.kappa_n) * c)
    if params.gamma_n > 0:
        jumps.append(math.sqrt(params.gamma_n) * sm)
    return jumps


def build_liouvillian(params: SystemParams, cfg: OracleConfig) -> np.ndarray:
    """Dense generator acting on column-stacked density matrices."""
    params.validate()
    cfg.validate()
    superop_dim = 4 * (cfg.n_max + 1) ** 2
    if superop_dim > cfg.max_superop_dim:
        raise DimensionOverflowError(
            f"superoperator dimension {superop_dim} exceeds cap {cfg.max_superop_dim}"
        )
    h = build_hamiltonian(params, cfg.n_max)
    dim = h.shape[0]
    eye = np.eye(dim, dtype=complex)
    liouvillian = -1j * (np.kron(eye, h) - np.kron(h.T, eye))
    for jump in jump_operators(params, cfg.n_max):
        jdj = jump.conj().T @ jump
        liouvillian += (
            np.kron(jump.conj(), jump)
            - 0.5 * np.kron(eye, jdj)
            - 0.5 * np.kron(jdj.T, eye)
        )
    return liouvillian


def steady_state(liouvillian: np.ndarray, cfg: OracleConfig) -> SteadyState:
    """Solve L(rho) = 0 with trace(rho) = 1 replacing one scalar equation."""
    size = liouvillian.shape[0]
    dim = math.isqrt(size)
    if dim * dim != size:
        raise InvalidParameterError("Liouvillian is not square over a matrix space")
    constrained = liouvillian.copy()
    trace_row = np.zeros(size, dtype=complex)
    trace_row[np.arange(dim) * (dim + 1)] = 1.0
    constrained[0, :] = trace_row
    rhs = np.zeros(size, dtype=complex)
    rhs[0] = 1.0
    try:
        vec = np.linalg.solve(constrained, rhs)
        # one step of iterative refinement keeps the residual near rounding
        vec += np.linalg.solve(constrained, rhs - constrained @ vec)
    except np.linalg.LinAlgError as exc:
        raise RankDeficiencyError(
            "trace-constrained steady-state system is singular; the dynamics"
            " admit more than one stationary state"
        ) from exc
    residual = float(np.linalg.norm(liouvillian @ vec))
    if not np.isfinite(residual) or residual > 1e-8:
        raise RankDeficiencyError(
            f"steady-state residual {residual:.3e} is too large; the"
            " constrained system is effectively singular"
        )
    rho = vec.reshape((dim, dim), order="F")
    return SteadyState(rho=rho, residual=residual)


def observables_from_state(state: SteadyState) -> ObservableSet:
    """Traces of the photon moments, with the decomposition closed through I2."""
    c, _ = operators(state.n_max)
    cd = c.conj().T
    rho = state.rho
    n_c = float(np.trace(rho @ (cd @ c)).real)
    if n_c < 1e-300:
        raise ZeroIntensityError("steady state carries no cavity field")
    two_photon = float(np.trace(rho @ (cd @ cd @ c @ c)).real)
    g2 = two_photon / n_c**2
    c_mean = complex(np.trace(rho @ c))
    c2_mean = complex(np.trace(rho @ (c @ c)))
    i0 = (two_photon + abs(c_mean) ** 4 - 2.0 * (c_mean.conjugate() ** 2 * c2_mean).real) / n_c**2
    i2 = g2 - 1.0 - i0
    return ObservableSet(n_c=n_c, g2=g2, i0=i0, i2=i2, solver="oracle")


def steady_state_auto(params: SystemParams, cfg: OracleConfig) -> tuple[SteadyState, int]:
    """Solve at cfg.n_max, then (when auto_converge) raise the cutoff by two
    until n_c and g2 are stable to cfg.rel_tol; returns the converged state."""
    n = cfg.n_max
    state = steady_state(build_liouvillian(params, replace(cfg, n_max=n)), cfg)
    if not cfg.auto_converge:
        return state, n
    previous = _convergence_pair(state)
    while True:
        n += 2
        state_next = steady_state(build_liouvillian(params, replace(cfg, n_max=n)), cfg)
        current = _convergence_pair(state_next)
        if previous is None and current is None:
            return state_next, n
        if previous is not None and current is not None:
            dn = abs(current[0] - previous[0]) / abs(current[0])
            dg = abs(current[1] - previous[1]) / abs(current[1])
            if dn < cfg.rel_tol and dg < cfg.rel_tol:
                return state_next, n
        previous = current
        state = state_next


def _convergence_pair(state: SteadyState) -> tuple[float, float] | None:
    try:
        obs = observables_from_state(state)
    except ZeroIntensityError:
        return None
    return obs.n_c, obs.g2


def oracle_observables(
    params: SystemParams, cfg: OracleConfig | None = None, include_eta: bool = False
) -> ObservableSet:
    """Steady-state observables, optionally with eta from an interference-free rerun."""
    if cfg is None:
        cfg = OracleConfig()
    state, n_used = steady_state_auto(params, cfg)
    obs = observables_from_state(state)
    if not include_eta:
        return obs
    bare_state, _ = steady_state_auto(params.without_fano(), replace(cfg, n_max=n_used))
    bare = observables_from_state(bare_state)
    return ObservableSet(
        n_c=obs.n_c, g2=obs.g2, i0=obs.i0, i2=obs.i2, eta=bare.g2 / obs.g2, solver="oracle"
    )


def export_state(state: SteadyState, path: str | Path) -> None:
    """Write the density matrix as text, row-major, one row per line,
    entries as comma-joined re,im pairs separated by spaces."""
    lines = []
    for row in state.rho:
        lines.append(" ".join(f"{z.real:.17g},{z.imag:.17g}" for z in row))
    Path(path).write_text("\n".join(lines) + "\n")


def load_state_matrix(path: str | Path) -> np.ndarray:
    """Read a matrix written by export_state."""
    rows = []
    for line in Path(path).read_text().splitlines():
        if not line.strip():
            continue
        rows.append([complex(*map(float, entry.split(","))) for entry in line.split()])
    return np.array(rows, dtype=complex)
