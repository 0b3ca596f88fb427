"""Named study presets and their datasets.

Each identifier regenerates one reference dataset from built-in parameters:

    fig1b   minimal g2 with/without interference while scanning the
            atom-cavity detuning (g=15, kappa0=0.3, kappa_n=0, gamma_n=0.01)
    fig1c   peak enhancement versus gamma0/gamma for atom and cavity drive
    fig2a   g2 versus drive detuning, g=1, kappa0=0.3, atom drive
    fig2b   g2 versus drive detuning, g=16, kappa0=17, atom drive
    fig2cd  global-dip to resonance-dip ratio over a (g, kappa0) grid
    fig3a   g2 versus drive detuning, g=16, kappa0=17, cavity drive
    fig3b   g2 versus drive detuning for weak couplings, cavity drive
    fig3c   decomposition (I0, I2) for the fig3a configuration
    fig3d   cavity intensity for the fig3b configuration

Builders emit plain column tables (written as CSV or JSON); the optional
plot renderer draws an unstyled matplotlib line chart (or colormap for the
grid dataset) next to the data file.
"""
from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import analytic, sweeps, wavefunction
from .errors import InvalidParameterError
from .params import SystemParams, derive

FIGURE_IDS = (
    "fig1b",
    "fig1c",
    "fig2a",
    "fig2b",
    "fig2cd",
    "fig3a",
    "fig3b",
    "fig3c",
    "fig3d",
)

FIG1_PARAMS = dict(g=15.0, kappa0=0.3, kappa_n=0.0, gamma_n=1e-2)
FIG2A_PARAMS = dict(g=1.0, kappa0=0.3, kappa_n=0.0)
FIG2B_PARAMS = dict(g=16.0, kappa0=17.0, kappa_n=0.0)
FIG3BD_PARAMS = dict(kappa0=0.3, kappa_n=0.0, gamma_n=1e-2)
DRIVE_AMPLITUDE = 1e-3


@dataclass
class FigureDataset:
    name: str
    columns: dict[str, np.ndarray]
    meta: dict = field(default_factory=dict)

    def to_csv(self, path: str | Path) -> None:
        names = list(self.columns)
        rows = zip(*(self.columns[name] for name in names))
        lines = [",".join(names)]
        for row in rows:
            lines.append(",".join(f"{v:.12g}" for v in row))
        Path(path).write_text("\n".join(lines) + "\n")

    def to_json(self, path: str | Path) -> None:
        payload = {
            "name": self.name,
            "columns": {k: [float(v) for v in vals] for k, vals in self.columns.items()},
            "meta": self.meta,
        }
        Path(path).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")


def _tracked_optimum(params: SystemParams) -> float:
    """Atom-cavity detuning with the least-damped dressed state (quick refine)."""
    return sweeps.locate_bic(params, npoints=101).location["delta_0c"]


def _global_min_g2(params: SystemParams, lo: float, hi: float, npoints: int = 1201) -> float:
    """Global minimum of g2 over a drive-detuning window, dip-refined."""
    xs = np.linspace(lo, hi, npoints)
    ys = wavefunction.g2_curve(params, xs)
    ys = np.where(np.isfinite(ys), ys, np.inf)

    def g2_at(x: float) -> float:
        pt = params.replace(delta_0L=float(x))
        try:
            return analytic.g2_analytic(derive(pt), pt)
        except Exception:
            return math.inf

    best = float(np.min(ys))
    order = np.argsort(ys)
    for i in order[:4]:
        i = int(i)
        if not np.isfinite(ys[i]):
            continue
        a = xs[max(i - 1, 0)]
        b = xs[min(i + 1, npoints - 1)]
        _, fx = sweeps.golden_section_min(g2_at, float(a), float(b), xtol=1e-10)
        best = min(best, fx)
    # the resonance dip can be narrower than the scan spacing
    try:
        _, fx = sweeps.conventional_dip(params)
        best = min(best, fx)
    except Exception:
        pass
    return best


def build_fig1b(points: int = 151) -> FigureDataset:
    base = SystemParams(**FIG1_PARAMS).with_drive("atom", DRIVE_AMPLITUDE)
    d0c_values = np.linspace(0.0, 30.0, points)
    g2_min_fano = np.empty(points)
    g2_min_bare = np.empty(points)
    eta_at_dip = np.empty(points)
    for i, d0c in enumerate(d0c_values):
        p = base.replace(delta_0c=float(d0c))
        q = derive(p).q
        window = max(2.5 * q, 20.0)
        g2_min_fano[i] = _global_min_g2(p, -window, window)
        g2_min_bare[i] = _global_min_g2(p.without_fano(), -window, window)
        x_dip, g2_dip = sweeps.conventional_dip(p)
        bare_at_dip = analytic.g2_analytic(
            derive(p.without_fano().replace(delta_0L=x_dip)),
            p.without_fano().replace(delta_0L=x_dip),
        )
        eta_at_dip[i] = bare_at_dip / g2_dip
    return FigureDataset(
        name="fig1b",
        columns={
            "delta_0c": d0c_values,
            "g2_min_fano": g2_min_fano,
            "g2_min_bare": g2_min_bare,
            "eta_at_dip": eta_at_dip,
        },
        meta={"params": FIG1_PARAMS, "drive": "atom"},
    )


def build_fig1c(points: int = 13) -> FigureDataset:
    gamma_n = np.geomspace(1e-3, 1.0, points)
    base = SystemParams(**{**FIG1_PARAMS, "gamma_n": 1e-2})
    # fixed off-resonance reference points: optima of two larger gamma_n
    fixed_a = sweeps.maximize_eta(base.replace(gamma_n=0.1), "atom", rounds=2)[:2]
    fixed_b = sweeps.maximize_eta(base.replace(gamma_n=0.5), "atom", rounds=2)[:2]
    eta_atom = np.empty(points)
    eta_cavity = np.empty(points)
    eta_fixed_a = np.empty(points)
    eta_fixed_b = np.empty(points)
    for i, gn in enumerate(gamma_n):
        p = base.replace(gamma_n=float(gn))
        eta_atom[i] = sweeps.maximize_eta(p, "atom", rounds=2)[2]
        eta_cavity[i] = sweeps.maximize_eta(p, "cavity", rounds=2)[2]
        pa = p.with_drive("atom", DRIVE_AMPLITUDE).replace(delta_0c=fixed_a[0], delta_0L=fixed_a[1])
        pb = p.with_drive("atom", DRIVE_AMPLITUDE).replace(delta_0c=fixed_b[0], delta_0L=fixed_b[1])
        eta_fixed_a[i] = analytic.enhancement(pa)
        eta_fixed_b[i] = analytic.enhancement(pb)
    return FigureDataset(
        name="fig1c",
        columns={
            "gamma_n": gamma_n,
            "gamma0_over_gamma": 1.0 / (1.0 + gamma_n),
            "eta_atom_opt": eta_atom,
            "eta_cavity_opt": eta_cavity,
            "eta_atom_fixed_a": eta_fixed_a,
            "eta_atom_fixed_b": eta_fixed_b,
        },
        meta={
            "params": {k: v for k, v in FIG1_PARAMS.items() if k != "gamma_n"},
            "axis_note": "gamma0_over_gamma = gamma0/(gamma0+gamma_n) at fixed gamma0 = 1",
            "fixed_a": list(fixed_a),
            "fixed_b": list(fixed_b),
        },
    )


def _detuning_scan(
    name: str,
    caption: dict,
    drive: str,
    gamma_n_values: tuple[float, ...],
    lo: float,
    hi: float,
    points: int,
    decomposition: bool = False,
) -> FigureDataset:
    xs = np.linspace(lo, hi, points)
    columns: dict[str, np.ndarray] = {"delta_0L": xs}
    meta: dict = {"params": caption, "drive": drive, "delta_0c": {}}
    for gn in gamma_n_values:
        base = SystemParams(**caption, gamma_n=gn).with_drive(drive, DRIVE_AMPLITUDE)
        d0c = _tracked_optimum(base)
        meta["delta_0c"][f"gamma_n={gn:g}"] = d0c
        p = base.replace(delta_0c=d0c)
        label = f"gn{gn:g}"
        if decomposition:
            for tag, pp in (("fano", p), ("bare", p.without_fano())):
                i0 = np.empty(points)
                i2 = np.empty(points)
                for k, x in enumerate(xs):
                    pt = pp.replace(delta_0L=float(x))
                    try:
                        i0[k], i2[k] = analytic.decomposition_analytic(derive(pt), pt)
                    except Exception:
                        i0[k], i2[k] = np.nan, np.nan
                columns[f"I0_{label}_{tag}"] = i0
                columns[f"I2_{label}_{tag}"] = i2
        else:
            columns[f"g2_{label}_fano"] = wavefunction.g2_curve(p, xs)
            columns[f"g2_{label}_bare"] = wavefunction.g2_curve(p.without_fano(), xs)
    return FigureDataset(name=name, columns=columns, meta=meta)


def build_fig2a(points: int = 2001) -> FigureDataset:
    return _detuning_scan("fig2a", FIG2A_PARAMS, "atom", (1e-2, 1.0), -4.0, 4.0, points)


def build_fig2b(points: int = 3001) -> FigureDataset:
    return _detuning_scan("fig2b", FIG2B_PARAMS, "atom", (1e-2, 1.0), -30.0, 110.0, points)


def build_fig3a(points: int = 3001) -> FigureDataset:
    return _detuning_scan("fig3a", FIG2B_PARAMS, "cavity", (1e-2, 1.0), -30.0, 110.0, points)


def build_fig3c(points: int = 1501) -> FigureDataset:
    return _detuning_scan(
        "fig3c", FIG2B_PARAMS, "cavity", (1e-2, 1.0), -30.0, 110.0, points, decomposition=True
    )


def build_fig2cd(grid: int = 17) -> FigureDataset:
    g_values = np.geomspace(0.5, 20.0, grid)
    k_values = np.geomspace(0.5, 20.0, grid)
    rows_gamma, rows_g, rows_k = [], [], []
    rows_min, rows_dip, rows_ratio, rows_d0c = [], [], [], []
    for gn in (1e-2, 1.0):
        for g in g_values:
            for k0 in k_values:
                base = SystemParams(
                    g=float(g), kappa0=float(k0), gamma_n=gn
                ).with_drive("atom", DRIVE_AMPLITUDE)
                d0c = _tracked_optimum(base)
                p = base.replace(delta_0c=d0c)
                q = derive(p).q
                window = max(2.5 * q, 6.0) + abs(d0c)
                x_dip, g2_dip = sweeps.conventional_dip(p)
                g2_min = _global_min_g2(p, -window, window, npoints=801)
                rows_gamma.append(gn)
                rows_g.append(float(g))
                rows_k.append(float(k0))
                rows_min.append(g2_min)
                rows_dip.append(g2_dip)
                rows_ratio.append(g2_min / g2_dip)
                rows_d0c.append(d0c)
    return FigureDataset(
        name="fig2cd",
        columns={
            "gamma_n": np.array(rows_gamma),
            "g": np.array(rows_g),
            "kappa0": np.array(rows_k),
            "g2_min": np.array(rows_min),
            "g2_resonance_dip": np.array(rows_dip),
            "ratio_min_to_dip": np.array(rows_ratio),
            "delta_0c_opt": np.array(rows_d0c),
        },
        meta={"layout": "grid", "grid": grid, "drive": "atom", "gamma_n": [1e-2, 1.0]},
    )


def _weak_coupling_scan(name: str, observable: str, points: int) -> FigureDataset:
    xs = np.linspace(-3.0, 3.0, points)
    columns: dict[str, np.ndarray] = {"delta_0L": xs}
    meta: dict = {"params": FIG3BD_PARAMS, "drive": "cavity", "delta_0c": {}}
    for g in (0.1, 0.4, 0.8, 1.4):
        base = SystemParams(**FIG3BD_PARAMS, g=g).with_drive("cavity", DRIVE_AMPLITUDE)
        d0c = analytic.bic_conditions(base).delta_0c_bic
        meta["delta_0c"][f"g={g:g}"] = d0c
        p = base.replace(delta_0c=d0c)
        curve = wavefunction.g2_curve if observable == "g2" else wavefunction.intensity_curve
        columns[f"{observable}_g{g:g}_fano"] = curve(p, xs)
        columns[f"{observable}_g{g:g}_bare"] = curve(p.without_fano(), xs)
    return FigureDataset(name=name, columns=columns, meta=meta)


def build_fig3b(points: int = 3001) -> FigureDataset:
    return _weak_coupling_scan("fig3b", "g2", points)


def build_fig3d(points: int = 3001) -> FigureDataset:
    return _weak_coupling_scan("fig3d", "n_c", points)


_BUILDERS = {
    "fig1b": build_fig1b,
    "fig1c": build_fig1c,
    "fig2a": build_fig2a,
    "fig2b": build_fig2b,
    "fig2cd": build_fig2cd,
    "fig3a": build_fig3a,
    "fig3b": build_fig3b,
    "fig3c": build_fig3c,
    "fig3d": build_fig3d,
}


def build_figure(fig_id: str, **kwargs) -> FigureDataset:
    if fig_id not in _BUILDERS:
        raise InvalidParameterError(
            f"unknown figure id {fig_id!r}; choose from {', '.join(FIGURE_IDS)}"
        )
    return _BUILDERS[fig_id](**kwargs)


def preset_point(name: str) -> SystemParams:
    """Parameter point behind `point --preset`: the named configuration at its
    interference-resonance dip."""
    if name in ("fig1", "fig1b", "fig1c"):
        base = SystemParams(**FIG1_PARAMS, delta_0c=19.25).with_drive("atom", DRIVE_AMPLITUDE)
    elif name == "fig2a":
        base = SystemParams(**FIG2A_PARAMS, gamma_n=1e-2).with_drive("atom", DRIVE_AMPLITUDE)
        base = base.replace(delta_0c=_tracked_optimum(base))
    elif name in ("fig2b", "fig3a", "fig3c"):
        drive = "atom" if name == "fig2b" else "cavity"
        base = SystemParams(**FIG2B_PARAMS, gamma_n=1e-2).with_drive(drive, DRIVE_AMPLITUDE)
        base = base.replace(delta_0c=_tracked_optimum(base))
    elif name in ("fig3b", "fig3d"):
        base = SystemParams(**FIG3BD_PARAMS, g=0.1).with_drive("cavity", DRIVE_AMPLITUDE)
        base = base.replace(delta_0c=analytic.bic_conditions(base).delta_0c_bic)
    else:
        raise InvalidParameterError(f"unknown preset {name!r}")
    x_dip, _ = sweeps.conventional_dip(base)
    return base.replace(delta_0L=x_dip)


def render_plot(dataset: FigureDataset, path: str | Path) -> None:
    """Minimal matplotlib rendering next to the data file (no styling promises)."""
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    plt.rcParams["svg.hashsalt"] = "fanojc"
    path = Path(path)
    if dataset.meta.get("layout") == "grid":
        fig = _render_grid(dataset, plt)
    else:
        fig, ax = plt.subplots(figsize=(6.0, 4.0))
        names = list(dataset.columns)
        x = dataset.columns[names[0]]
        positive = True
        span = 0.0
        for name in names[1:]:
            y = dataset.columns[name]
            ax.plot(x, y, label=name, linewidth=1.0)
            finite = y[np.isfinite(y)]
            if finite.size:
                positive &= bool(np.all(finite > 0))
                span = max(span, float(np.max(finite) / max(np.min(finite), 1e-300)))
        if positive and span > 1e3:
            ax.set_yscale("log")
        ax.set_xlabel(names[0])
        ax.set_title(dataset.name)
        ax.legend(fontsize=6)
    metadata = {"Date": None} if path.suffix == ".svg" else None
    fig.savefig(path, metadata=metadata)
    plt.close(fig)


def _render_grid(dataset: FigureDataset, plt):
    grid = dataset.meta["grid"]
    gamma_panels = dataset.meta["gamma_n"]
    fig, axes = plt.subplots(1, len(gamma_panels), figsize=(5.0 * len(gamma_panels), 4.0))
    axes = np.atleast_1d(axes)
    ratio = dataset.columns["ratio_min_to_dip"]
    g = dataset.columns["g"]
    k0 = dataset.columns["kappa0"]
    per_panel = grid * grid
    for i, (ax, gn) in enumerate(zip(axes, gamma_panels)):
        sel = slice(i * per_panel, (i + 1) * per_panel)
        gg = g[sel].reshape(grid, grid)
        kk = k0[sel].reshape(grid, grid)
        rr = ratio[sel].reshape(grid, grid)
        mesh = ax.pcolormesh(gg, kk, rr, shading="nearest")
        ax.set_xscale("log")
        ax.set_yscale("log")
        ax.set_xlabel("g")
        ax.set_ylabel("kappa0")
        ax.set_title(f"gamma_n = {gn:g}")
        fig.colorbar(mesh, ax=ax)
    return fig
