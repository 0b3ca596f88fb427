"""Parameter scans, extremum location and resonance search.

Scans evaluate any SystemParams field on a dense 1-D or 2-D grid with a
chosen solver; per-point singularities become flagged nan cells rather than
aborting the run.  Extremum location follows one pattern throughout: coarse
scan, bracket every interior sample extremum, golden-section polish.  The
interference-resonance search minimizes the decay of the single-excitation
dressed states, whose 2x2 block is diagonalized in closed form.
"""
from __future__ import annotations

import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import analytic, lindblad, wavefunction
from .errors import (
    InvalidParameterError,
    SingularPointError,
    ZeroIntensityError,
)
from .observables import OBSERVABLE_NAMES, ObservableSet
from .params import NUMERIC_FIELDS, DerivedQuantities, SystemParams, derive

GOLDEN = (math.sqrt(5.0) - 1.0) / 2.0
SOLVERS = ("analytic", "wavefunction", "oracle")
DETUNING_AXES = ("delta_0c", "delta_0L")


# ---------------------------------------------------------------------------
# sweep grids


@dataclass(frozen=True)
class SweepAxis:
    name: str
    start: float
    stop: float
    count: int

    def validate(self) -> None:
        if self.name not in NUMERIC_FIELDS:
            raise InvalidParameterError(f"unknown sweep axis {self.name!r}")
        if self.count < 2:
            raise InvalidParameterError("axis point count must be >= 2")
        if not (math.isfinite(self.start) and math.isfinite(self.stop)):
            raise InvalidParameterError("axis range must be finite")
        if self.start == self.stop:
            raise InvalidParameterError("axis range must not be degenerate")

    def values(self) -> np.ndarray:
        lo, hi = sorted((self.start, self.stop))
        return np.linspace(lo, hi, self.count)


@dataclass(frozen=True)
class SweepSpec:
    axes: tuple[SweepAxis, ...]
    solver: str = "wavefunction"
    observables: tuple[str, ...] = ("n_c", "g2")

    def validate(self) -> None:
        if len(self.axes) not in (1, 2):
            raise InvalidParameterError("sweeps support one or two axes")
        for axis in self.axes:
            axis.validate()
        if self.solver not in SOLVERS:
            raise InvalidParameterError(f"solver must be one of {SOLVERS}")
        for name in self.observables:
            if name not in OBSERVABLE_NAMES:
                raise InvalidParameterError(f"unknown observable {name!r}")
        if not self.observables:
            raise InvalidParameterError("at least one observable is required")


@dataclass
class SweepResult:
    spec: SweepSpec
    base: SystemParams
    axis_values: list[np.ndarray]
    data: dict[str, np.ndarray]
    flags: dict[tuple[int, ...], str] = field(default_factory=dict)

    def to_csv(self, path: str | Path) -> None:
        """Header: axis names then observable names; one row per cell, row-major."""
        names = [axis.name for axis in self.spec.axes]
        header = ",".join(names + list(self.spec.observables))
        lines = [header]
        for idx in np.ndindex(*self._shape()):
            coords = [self.axis_values[k][idx[k]] for k in range(len(idx))]
            row = [_fmt(v) for v in coords]
            row += [_fmt(self.data[name][idx]) for name in self.spec.observables]
            lines.append(",".join(row))
        Path(path).write_text("\n".join(lines) + "\n")

    def to_json(self, path: str | Path, created: str | None = None) -> None:
        """Nested arrays plus metadata; pass `created` to stamp the file
        (omitted by default so repeated runs are byte-identical)."""
        payload = {
            "axes": [
                {"name": axis.name, "values": [float(v) for v in self.axis_values[k]]}
                for k, axis in enumerate(self.spec.axes)
            ],
            "solver": self.spec.solver,
            "params": _params_dict(self.base),
            "observables": {
                name: _nested(self.data[name]) for name in self.spec.observables
            },
            "flags": [
                {"index": list(idx), "flag": flag} for idx, flag in sorted(self.flags.items())
            ],
        }
        if created is not None:
            payload["created"] = created
        Path(path).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")

    def _shape(self) -> tuple[int, ...]:
        return tuple(len(v) for v in self.axis_values)


def _fmt(value: float) -> str:
    return f"{value:.12g}"


def _params_dict(params: SystemParams) -> dict:
    out = {name: getattr(params, name) for name in NUMERIC_FIELDS}
    out["fano_enabled"] = params.fano_enabled
    return out


def _nested(array: np.ndarray) -> list:
    return [
        None if (isinstance(v, float) and math.isnan(v)) else v
        for v in array.tolist()
    ] if array.ndim == 1 else [_nested(row) for row in array]


def evaluate_point(
    params: SystemParams,
    solver: str = "wavefunction",
    observables: tuple[str, ...] = ("n_c", "g2"),
    cfg: lindblad.OracleConfig | None = None,
) -> ObservableSet:
    """Dispatch a single-point evaluation to the chosen backend."""
    include_eta = "eta" in observables
    if solver == "analytic":
        return analytic.observables_analytic(params, include_eta=include_eta)
    if solver == "wavefunction":
        return wavefunction.observables(params, include_eta=include_eta)
    if solver == "oracle":
        return lindblad.oracle_observables(params, cfg=cfg, include_eta=include_eta)
    raise InvalidParameterError(f"unknown solver {solver!r}")


def sweep(
    spec: SweepSpec,
    base: SystemParams,
    cfg: lindblad.OracleConfig | None = None,
    workers: int = 1,
) -> SweepResult:
    """Dense grid of observables; singular cells are flagged, never fatal."""
    spec.validate()
    base.validate()
    axis_values = [axis.values() for axis in spec.axes]
    shape = tuple(len(v) for v in axis_values)
    data = {name: np.full(shape, np.nan) for name in spec.observables}
    flags: dict[tuple[int, ...], str] = {}
    indices = list(np.ndindex(*shape))

    def run_cell(idx):
        updates = {
            spec.axes[k].name: float(axis_values[k][idx[k]]) for k in range(len(idx))
        }
        point = base.replace(**updates)
        try:
            obs = evaluate_point(point, spec.solver, spec.observables, cfg)
        except SingularPointError:
            return idx, None, "singular-point"
        except ZeroIntensityError:
            return idx, None, "zero-intensity"
        return idx, obs, None

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(run_cell, indices))
    else:
        results = [run_cell(idx) for idx in indices]
    for idx, obs, flag in results:
        if flag is not None:
            flags[idx] = flag
            continue
        for name in spec.observables:
            value = obs.value(name)
            data[name][idx] = np.nan if value is None else value
    return SweepResult(spec=spec, base=base, axis_values=axis_values, data=data, flags=flags)


# ---------------------------------------------------------------------------
# golden-section refinement


def golden_section_min(f, a: float, b: float, xtol: float = 1e-6) -> tuple[float, float]:
    """Golden-section minimum of f on [a, b]; assumes a single interior minimum."""
    a, b = min(a, b), max(a, b)
    c = b - GOLDEN * (b - a)
    d = a + GOLDEN * (b - a)
    fc, fd = f(c), f(d)
    while (b - a) > xtol:
        if fc < fd:
            b, d, fd = d, c, fc
            c = b - GOLDEN * (b - a)
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            d = a + GOLDEN * (b - a)
            fd = f(d)
    x = c if fc < fd else d
    return x, min(fc, fd)


def _scan(f, lo: float, hi: float, npoints: int) -> tuple[np.ndarray, np.ndarray]:
    xs = np.linspace(lo, hi, npoints)
    ys = np.array([f(x) for x in xs])
    return xs, ys


def _refine_interior_minima(f, xs, ys, xtol) -> list[tuple[float, float]]:
    """Bracket every interior sampled minimum and polish it."""
    found = []
    for i in range(1, len(xs) - 1):
        if not np.isfinite(ys[i]):
            continue
        left = ys[i - 1] if np.isfinite(ys[i - 1]) else math.inf
        right = ys[i + 1] if np.isfinite(ys[i + 1]) else math.inf
        if ys[i] <= left and ys[i] <= right and (ys[i] < left or ys[i] < right):
            x, fx = golden_section_min(f, xs[i - 1], xs[i + 1], xtol=xtol)
            found.append((float(x), float(fx)))
    return found


def _dedupe(candidates: list[tuple[float, float]], spacing: float) -> list[tuple[float, float]]:
    merged: list[tuple[float, float]] = []
    for x, fx in sorted(candidates):
        if merged and abs(x - merged[-1][0]) < 0.5 * spacing:
            if fx < merged[-1][1]:
                merged[-1] = (x, fx)
        else:
            merged.append((x, fx))
    return merged


# ---------------------------------------------------------------------------
# single-excitation dressed states and resonance search


def single_excitation_eigenvalues(d: DerivedQuantities) -> tuple[complex, complex]:
    """Eigenvalues of the 2x2 complex-symmetric block [[delta_c, g_F], [g_F, delta_0]]."""
    mean = 0.5 * (d.delta_0 + d.delta_c)
    split = np.sqrt(0.25 * (d.delta_0 - d.delta_c) ** 2 + d.g_F * d.g_F)
    return complex(mean + split), complex(mean - split)


def minimum_decay(params: SystemParams) -> float:
    """Smaller |Im| of the two dressed-state eigenvalues (drive-detuning free)."""
    lam_plus, lam_minus = single_excitation_eigenvalues(derive(params))
    return min(abs(lam_plus.imag), abs(lam_minus.imag))


@dataclass(frozen=True)
class Extremum:
    location: float
    value: float
    kind: str  # "minimum" | "maximum"
    classification: str | None = None  # "conventional" | "unconventional" | None
    boundary: bool = False


@dataclass(frozen=True)
class ExtremumReport:
    axis: str
    location: dict[str, float]
    value: float
    kind: str
    all_local_minima: tuple[Extremum, ...] = ()
    all_local_maxima: tuple[Extremum, ...] = ()
    boundary: bool = False
    prediction: dict[str, float] | None = None


def locate_bic(
    params: SystemParams,
    search_range: tuple[float, float] | None = None,
    npoints: int = 201,
    xtol: float = 1e-6,
) -> ExtremumReport:
    """Atom-cavity detuning minimizing the decay of the least-damped dressed
    state, reported next to the first-order prediction."""
    prediction = analytic.bic_conditions(params)
    center = prediction.delta_0c_bic
    if search_range is None:
        half = max(5.0, 0.8 * abs(center))
        search_range = (center - half, center + half)
    lo, hi = min(search_range), max(search_range)

    def objective(value: float) -> float:
        return minimum_decay(params.replace(delta_0c=value))

    xs, ys = _scan(objective, lo, hi, npoints)
    spacing = float(xs[1] - xs[0])
    candidates = _dedupe(_refine_interior_minima(objective, xs, ys, xtol), spacing)
    edge_best = (float(xs[0]), float(ys[0])) if ys[0] < ys[-1] else (float(xs[-1]), float(ys[-1]))
    if not candidates:
        candidates = [edge_best]
    best = min(candidates, key=lambda item: item[1])
    boundary = bool(min(best[0] - lo, hi - best[0]) <= spacing)
    minima = tuple(
        Extremum(
            location=x, value=fx, kind="minimum", boundary=bool(min(x - lo, hi - x) <= spacing)
        )
        for x, fx in candidates
    )
    return ExtremumReport(
        axis="delta_0c",
        location={"delta_0c": best[0]},
        value=best[1],
        kind="minimum",
        all_local_minima=minima,
        boundary=boundary,
        prediction={"delta_0c": center, "delta_0L": prediction.delta_0L_bic},
    )


def fano_maximum(params: SystemParams, axis: str = "delta_0L") -> float:
    """Refined location (along `axis`) of the intensity resonance, i.e. the
    minimum of |g_F^2 - delta_0*delta_c|.

    For the drive-detuning axis the real-part zeros are the roots of
    x(x + delta_0c) = Re(g_F^2) + kappa*gamma/4, which seed the polish; the
    atom-cavity axis is handled by the same scan-and-polish on its own grid.
    """
    d = derive(params)

    def det_mag(value: float) -> float:
        dd = derive(params.replace(**{axis: value}))
        return abs(dd.g_F * dd.g_F - dd.delta_0 * dd.delta_c)

    if axis == "delta_0L":
        b = (d.g_F * d.g_F).real + 0.25 * d.kappa * d.gamma
        disc = params.delta_0c**2 + 4.0 * b
        roots = [
            0.5 * (-params.delta_0c + math.sqrt(disc)),
            0.5 * (-params.delta_0c - math.sqrt(disc)),
        ]
        seed = min(roots, key=det_mag)
        slope = max(abs(2.0 * seed + params.delta_0c), 0.5 * (d.kappa + d.gamma))
        width = max(det_mag(seed) / slope, 1e-9)
        window = max(8.0 * width, 1e-6 * max(1.0, abs(seed)))
        x, _ = golden_section_min(det_mag, seed - window, seed + window, xtol=1e-12)
        return x
    if axis == "delta_0c":
        center = analytic.bic_conditions(params).delta_0c_bic if params.kappa0 * params.gamma0 > 0 else 0.0
        half = max(5.0, abs(center))
        xs, ys = _scan(det_mag, center - half, center + half, 401)
        candidates = _refine_interior_minima(det_mag, xs, ys, 1e-9)
        if not candidates:
            return float(xs[np.argmin(ys)])
        return min(candidates, key=lambda item: item[1])[0]
    raise InvalidParameterError(f"axis must be a detuning parameter, got {axis!r}")


def locate_g2_extrema(
    params: SystemParams,
    axis: str = "delta_0L",
    search_range: tuple[float, float] | None = None,
    npoints: int = 2001,
    threshold: float = math.inf,
    xtol: float = 1e-9,
) -> ExtremumReport:
    """All local dips and peaks of g2(0) along a detuning axis.

    Dips are classified "conventional" when they are the one nearest the
    refined intensity-resonance location and lie within five half-linewidths
    of it; every other dip is "unconventional".
    """
    if axis not in DETUNING_AXES:
        raise InvalidParameterError(f"axis must be a detuning parameter, got {axis!r}")
    d = derive(params)
    if search_range is None:
        span = max(4.0 * abs(d.q) if math.isfinite(d.q) else 0.0, 10.0)
        search_range = (-span, span)
    lo, hi = min(search_range), max(search_range)

    def g2_at(value: float) -> float:
        try:
            return analytic.g2_analytic(derive(params.replace(**{axis: value})), params.replace(**{axis: value}))
        except (SingularPointError, ZeroIntensityError):
            return math.inf

    xs, ys = _scan(g2_at, lo, hi, npoints)
    spacing = xs[1] - xs[0]
    minima = _dedupe(_refine_interior_minima(g2_at, xs, ys, xtol), spacing)
    maxima_raw = _refine_interior_minima(lambda x: -g2_at(x), xs, -ys, xtol)
    maxima = _dedupe([(x, -fx) for x, fx in maxima_raw], spacing)

    try:
        anchor = fano_maximum(params, axis=axis)
    except (InvalidParameterError, ValueError):
        anchor = None
    window = 5.0 * 0.5 * d.gamma
    conventional_idx = None
    if anchor is not None and minima:
        distances = [abs(x - anchor) for x, _ in minima]
        nearest = int(np.argmin(distances))
        if distances[nearest] <= window:
            conventional_idx = nearest

    minima_reports = tuple(
        Extremum(
            location=x,
            value=fx,
            kind="minimum",
            classification="conventional" if i == conventional_idx else "unconventional",
            boundary=bool(min(x - lo, hi - x) <= spacing),
        )
        for i, (x, fx) in enumerate(minima)
        if fx <= threshold
    )
    maxima_reports = tuple(
        Extremum(
            location=x, value=fx, kind="maximum", boundary=bool(min(x - lo, hi - x) <= spacing)
        )
        for x, fx in maxima
    )
    if minima:
        best = min(minima, key=lambda item: item[1])
        location, value, kind = {axis: best[0]}, best[1], "minimum"
        boundary = bool(min(best[0] - lo, hi - best[0]) <= spacing)
    else:
        i = int(np.argmin(ys))
        location, value, kind = {axis: float(xs[i])}, float(ys[i]), "minimum"
        boundary = True
    prediction = None
    if params.kappa0 * params.gamma0 > 0:
        report = analytic.bic_conditions(params)
        prediction = {"delta_0c": report.delta_0c_bic, "delta_0L": report.delta_0L_bic}
        if anchor is not None:
            prediction["fano_maximum"] = anchor
    return ExtremumReport(
        axis=axis,
        location=location,
        value=value,
        kind=kind,
        all_local_minima=minima_reports,
        all_local_maxima=maxima_reports,
        boundary=boundary,
        prediction=prediction,
    )


def conventional_dip(
    params: SystemParams, seed: float | None = None, window: float | None = None
) -> tuple[float, float]:
    """Refined drive detuning and g2 value of the dip at the intensity resonance."""
    anchor = fano_maximum(params) if seed is None else seed
    if window is None:
        window = max(0.05 * abs(anchor), 0.2)

    def g2_at(value: float) -> float:
        point = params.replace(delta_0L=value)
        try:
            return analytic.g2_analytic(derive(point), point)
        except (SingularPointError, ZeroIntensityError):
            return math.inf

    xs, ys = _scan(g2_at, anchor - window, anchor + window, 241)
    candidates = _refine_interior_minima(g2_at, xs, ys, 1e-10)
    if not candidates:
        i = int(np.argmin(ys))
        return float(xs[i]), float(ys[i])
    # dip belonging to the resonance: nearest refined minimum
    x, fx = min(candidates, key=lambda item: abs(item[0] - anchor))
    deepest = min(candidates, key=lambda item: item[1])
    if deepest[1] < fx and abs(deepest[0] - anchor) <= window:
        x, fx = deepest
    return x, fx


def maximize_eta(
    params: SystemParams,
    drive_kind: str = "atom",
    rounds: int = 3,
    amplitude: float = 1e-3,
) -> tuple[float, float, float]:
    """Direct numerical maximization of eta over both detunings.

    Seeds at the first-order resonance conditions, then alternates a
    drive-detuning polish (re-anchored on the intensity resonance, which is
    extremely narrow at large q) with an atom-cavity-detuning pass.
    Returns (delta_0c, delta_0L, eta).
    """
    p = params.with_drive(drive_kind, amplitude)
    prediction = analytic.bic_conditions(p)
    d_current = prediction.delta_0c_bic

    def eta_at(d0c: float, d0l: float) -> float:
        point = p.replace(delta_0c=d0c, delta_0L=d0l)
        try:
            return analytic.enhancement(point)
        except (SingularPointError, ZeroIntensityError):
            return math.inf

    def best_laser(d0c: float) -> tuple[float, float]:
        """Per-d laser detuning maximizing eta, tracked from the resonance anchor."""
        anchor = fano_maximum(p.replace(delta_0c=d0c))
        window = max(0.15 * abs(anchor), 0.05)
        xs, ys = _scan(lambda x: -eta_at(d0c, x), anchor - window, anchor + window, 161)
        candidates = _refine_interior_minima(lambda x: -eta_at(d0c, x), xs, ys, 1e-11)
        if candidates:
            x, fneg = min(candidates, key=lambda item: item[1])
            return x, -fneg
        i = int(np.argmin(ys))
        return float(xs[i]), float(-ys[i])

    x_current, eta_current = best_laser(d_current)
    for round_index in range(rounds):
        half = max(0.5, 0.4 * abs(d_current)) * (0.5**round_index)

        def objective(d0c: float) -> float:
            return -best_laser(d0c)[1]

        ds, es = _scan(objective, d_current - half, d_current + half, 41)
        refined = _refine_interior_minima(objective, ds, es, 1e-7)
        if refined:
            d_candidate = min(refined, key=lambda item: item[1])[0]
        else:
            d_candidate = float(ds[np.argmin(es)])
        x_candidate, eta_candidate = best_laser(d_candidate)
        if eta_candidate > eta_current:
            d_current, x_current, eta_current = d_candidate, x_candidate, eta_candidate
    return d_current, x_current, eta_current
