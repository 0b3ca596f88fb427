"""Shared result container for single-point photon statistics."""
from __future__ import annotations

from dataclasses import dataclass

OBSERVABLE_NAMES = ("n_c", "g2", "I0", "I2", "eta")


@dataclass(frozen=True)
class ObservableSet:
    """Cavity intensity, equal-time two-photon correlation and its
    coherent/squeezing decomposition at one parameter point.

    i0 is the sub-Poissonian (quantum-signal) part and i2 the squeezing part
    of g2 - 1, with i2 defined by the closure i2 = g2 - 1 - i0 so the
    decomposition identity holds to rounding at any drive.  eta is the ratio
    of the interference-free g2 to g2 at identical parameters (None when not
    requested).  solver records which backend produced the numbers.
    """

    n_c: float
    g2: float
    i0: float
    i2: float
    eta: float | None = None
    solver: str = ""
    flags: tuple[str, ...] = ()

    def value(self, name: str) -> float | None:
        key = {"n_c": "n_c", "g2": "g2", "I0": "i0", "I2": "i2", "eta": "eta"}[name]
        return getattr(self, key)

    def as_dict(self) -> dict:
        out = {"n_c": self.n_c, "g2": self.g2, "I0": self.i0, "I2": self.i2}
        if self.eta is not None:
            out["eta"] = self.eta
        return out
