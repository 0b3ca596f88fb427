"""Parameters of a coherently driven two-level atom coupled to one cavity mode,
where atom and cavity decay partly into a shared radiation continuum (rates
gamma0, kappa0) and partly into independent baths (gamma_n, kappa_n).

Everything is expressed in units of the atomic radiative linewidth gamma0,
so gamma0 = 1 in all presets.  Decay into the shared continuum makes the two
channels interfere; the interference strength is controlled by the cross rate
sqrt(kappa0*gamma0) and by the dimensionless parameter q = 2g/sqrt(kappa0*gamma0).

Detuning bookkeeping: delta_0c = omega_atom - omega_cavity, and delta_0L is
the drive detuning measured from the bare cavity resonance
(omega_cavity - omega_drive).  The atom-drive detuning is therefore
delta_0c + delta_0L; the interference resonance sits near
delta_0L = q*(1 - beta_gamma)*kappa0/2 regardless of delta_0c.
"""
from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from pathlib import Path

from .errors import InvalidParameterError

# Fields accepted in config files and --set overrides.
NUMERIC_FIELDS = (
    "g",
    "kappa0",
    "kappa_n",
    "gamma0",
    "gamma_n",
    "delta_0c",
    "delta_0L",
    "omega_0",
    "omega_c",
)
BOOL_FIELDS = ("fano_enabled",)


@dataclass(frozen=True)
class SystemParams:
    """Physical rates, detunings and drive amplitudes, in units of gamma0.

    fano_enabled=False removes the cross term sqrt(kappa0*gamma0) from every
    dissipator and from the coherent coupling's non-Hermitian part while
    keeping all total rates, so it is the interference-free baseline at
    otherwise identical parameters.
    """

    g: float = 0.0
    kappa0: float = 0.0
    kappa_n: float = 0.0
    gamma0: float = 1.0
    gamma_n: float = 0.0
    delta_0c: float = 0.0
    delta_0L: float = 0.0
    omega_0: float = 0.0
    omega_c: float = 0.0
    fano_enabled: bool = True

    def validate(self) -> None:
        if self.gamma0 <= 0:
            raise InvalidParameterError(f"gamma0 must be positive, got {self.gamma0}")
        for name in ("kappa0", "kappa_n", "gamma_n"):
            value = getattr(self, name)
            if value < 0:
                raise InvalidParameterError(f"{name} must be >= 0, got {value}")
        if self.g < 0:
            raise InvalidParameterError(f"g must be >= 0, got {self.g}")
        if self.omega_0 < 0 or self.omega_c < 0:
            raise InvalidParameterError("drive amplitudes must be >= 0")
        for name in ("delta_0c", "delta_0L"):
            if not math.isfinite(getattr(self, name)):
                raise InvalidParameterError(f"{name} must be finite")

    def replace(self, **updates) -> "SystemParams":
        return dataclasses.replace(self, **updates)

    def without_fano(self) -> "SystemParams":
        return self.replace(fano_enabled=False)

    def with_drive(self, kind: str, amplitude: float = 1e-3) -> "SystemParams":
        """Return a copy driven only through the atom or only through the cavity."""
        if kind == "atom":
            return self.replace(omega_0=amplitude, omega_c=0.0)
        if kind == "cavity":
            return self.replace(omega_0=0.0, omega_c=amplitude)
        raise InvalidParameterError(f"unknown drive kind {kind!r}")

    @property
    def driven(self) -> bool:
        return self.omega_0 > 0 or self.omega_c > 0


@dataclass(frozen=True)
class DerivedQuantities:
    """Quantities every solver consumes, computed once from SystemParams.

    delta_0 and delta_c are the complex atom and cavity detunings (real part
    relative to the drive, imaginary part minus half the total linewidth);
    g_F is the complex coupling whose imaginary part encodes the decay-channel
    interference.
    """

    kappa: float
    gamma: float
    beta_kappa: float
    beta_gamma: float
    q: float
    g_F: complex
    delta_c: complex
    delta_0: complex
    g_crit: float


def derive(params: SystemParams) -> DerivedQuantities:
    """Totals, dissipation fractions, q, complex detunings and complex coupling."""
    params.validate()
    kappa = params.kappa0 + params.kappa_n
    gamma = params.gamma0 + params.gamma_n
    beta_kappa = params.kappa_n / kappa if kappa > 0 else 0.0
    beta_gamma = params.gamma_n / gamma
    cross = math.sqrt(params.kappa0 * params.gamma0)
    if cross > 0:
        q = 2.0 * params.g / cross
    else:
        q = math.inf if params.g > 0 else math.nan
    if params.fano_enabled and cross > 0:
        g_F = complex(params.g, -0.5 * cross)
    else:
        g_F = complex(params.g, 0.0)
    delta_c = complex(params.delta_0L, -0.5 * kappa)
    delta_0 = complex(params.delta_0c + params.delta_0L, -0.5 * gamma)
    return DerivedQuantities(
        kappa=kappa,
        gamma=gamma,
        beta_kappa=beta_kappa,
        beta_gamma=beta_gamma,
        q=q,
        g_F=g_F,
        delta_c=delta_c,
        delta_0=delta_0,
        g_crit=0.5 * (kappa + gamma),
    )


def params_from_mapping(mapping: dict, base: SystemParams | None = None) -> SystemParams:
    """Build SystemParams from a flat key/value mapping; unknown keys are rejected."""
    params = base if base is not None else SystemParams()
    updates = {}
    for key, value in mapping.items():
        if key in NUMERIC_FIELDS:
            try:
                updates[key] = float(value)
            except (TypeError, ValueError) as exc:
                raise InvalidParameterError(f"cannot parse {key}={value!r} as a number") from exc
        elif key in BOOL_FIELDS:
            updates[key] = _parse_bool(key, value)
        else:
            raise InvalidParameterError(f"unknown parameter {key!r}")
    params = params.replace(**updates)
    params.validate()
    return params


def load_config(path: str | Path, base: SystemParams | None = None) -> SystemParams:
    """Read a flat key = value config file (``#`` starts a comment)."""
    mapping = {}
    for lineno, raw in enumerate(Path(path).read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidParameterError(f"{path}:{lineno}: expected key = value, got {raw!r}")
        key, value = (part.strip() for part in line.split("=", 1))
        mapping[key] = value
    return params_from_mapping(mapping, base=base)


def _parse_bool(key: str, value) -> bool:
    if isinstance(value, bool):
        return value
    text = str(value).strip().lower()
    if text in ("1", "true", "yes", "on"):
        return True
    if text in ("0", "false", "no", "off"):
        return False
    raise InvalidParameterError(f"cannot parse {key}={value!r} as a boolean")
