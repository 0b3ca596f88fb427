"""Cross-solver verification: truncated-wavefunction g2 against the
master-equation steady state on a randomized parameter cloud."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import lindblad, wavefunction
from .params import SystemParams

CLOUD_RANGES = {
    "g": (0.1, 20.0),
    "kappa0": (0.1, 20.0),
    "beta": (0.0, 0.5),
}


@dataclass(frozen=True)
class PointComparison:
    params: SystemParams
    g2_wavefunction: float
    g2_oracle: float
    rel_deviation: float
    n_max_used: int


@dataclass(frozen=True)
class ComparisonReport:
    points: tuple[PointComparison, ...]
    max_rel_deviation: float
    omega: float


def random_cloud(n: int = 100, seed: int = 1234, omega: float = 1e-3) -> list[SystemParams]:
    """Seeded random parameter points with detunings spanning +-2q."""
    rng = np.random.default_rng(seed)
    points = []
    for _ in range(n):
        g = rng.uniform(*CLOUD_RANGES["g"])
        kappa0 = rng.uniform(*CLOUD_RANGES["kappa0"])
        beta_kappa = rng.uniform(*CLOUD_RANGES["beta"])
        beta_gamma = rng.uniform(*CLOUD_RANGES["beta"])
        kappa_n = kappa0 * beta_kappa / (1.0 - beta_kappa)
        gamma_n = beta_gamma / (1.0 - beta_gamma)
        q = 2.0 * g / np.sqrt(kappa0)
        delta_0c = rng.uniform(-2.0 * q, 2.0 * q)
        delta_0L = rng.uniform(-2.0 * q, 2.0 * q)
        drive = "atom" if rng.integers(0, 2) == 0 else "cavity"
        params = SystemParams(
            g=g,
            kappa0=kappa0,
            kappa_n=kappa_n,
            gamma_n=gamma_n,
            delta_0c=delta_0c,
            delta_0L=delta_0L,
        ).with_drive(drive, omega)
        points.append(params)
    return points


def compare_solvers(
    points: list[SystemParams] | None = None,
    omega: float = 1e-3,
    cfg: lindblad.OracleConfig | None = None,
    n: int = 100,
    seed: int = 1234,
) -> ComparisonReport:
    """g2 from both solvers at every point, with the worst relative deviation."""
    if points is None:
        points = random_cloud(n=n, seed=seed, omega=omega)
    if cfg is None:
        cfg = lindblad.OracleConfig(n_max=6, auto_converge=True)
    results = []
    worst = 0.0
    for params in points:
        g2_wf = wavefunction.observables(params).g2
        state, n_used = lindblad.steady_state_auto(params, cfg)
        g2_or = lindblad.observables_from_state(state).g2
        deviation = abs(g2_wf - g2_or) / g2_or
        worst = max(worst, deviation)
        results.append(
            PointComparison(
                params=params,
                g2_wavefunction=g2_wf,
                g2_oracle=g2_or,
                rel_deviation=deviation,
                n_max_used=n_used,
            )
        )
    return ComparisonReport(points=tuple(results), max_rel_deviation=worst, omega=omega)
