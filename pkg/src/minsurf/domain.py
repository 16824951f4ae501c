"""Parameter domains in the z = u + iv plane.

A DomainSpec is a closed rectangle with an optional finite list of
punctures (points the data is singular at, e.g. z = 0 for the 1/z^2
height differential) and a branch-cut direction for log.  Sample points
for residual reports and rank estimates come from a fixed Halton
sequence so that every report is reproducible.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["DomainSpec", "halton"]


def _radical_inverse(n: int, base: int) -> float:
    inv, denom = 0.0, 1.0
    while n > 0:
        denom *= base
        n, rem = divmod(n, base)
        inv += rem / denom
    return inv


def halton(count: int, skip: int = 0) -> np.ndarray:
    """First ``count`` points of the (2,3)-Halton sequence after ``skip``,
    as an array of shape (count, 2) in the unit square."""
    idx = np.arange(skip + 1, skip + count + 1)
    pts = np.empty((count, 2))
    for j, base in enumerate((2, 3)):
        pts[:, j] = [_radical_inverse(int(n), base) for n in idx]
    return pts


@dataclass(frozen=True)
class DomainSpec:
    """Rectangle [u_min,u_max] x [v_min,v_max] minus punctures."""

    u_min: float = -1.0
    u_max: float = 1.0
    v_min: float = -1.0
    v_max: float = 1.0
    punctures: tuple = ()
    branch_cut: float = math.pi  # direction angle of the log cut ray

    def __post_init__(self):
        if not (self.u_max > self.u_min and self.v_max > self.v_min):
            raise ValueError("degenerate domain rectangle")
        object.__setattr__(self, "punctures",
                           tuple(complex(p) for p in self.punctures))

    @classmethod
    def square(cls, half_width: float, center: complex = 0j, **kw) -> "DomainSpec":
        c = complex(center)
        return cls(c.real - half_width, c.real + half_width,
                   c.imag - half_width, c.imag + half_width, **kw)

    @property
    def center(self) -> complex:
        return complex(0.5 * (self.u_min + self.u_max),
                       0.5 * (self.v_min + self.v_max))

    def contains(self, z: complex) -> bool:
        return (self.u_min <= z.real <= self.u_max
                and self.v_min <= z.imag <= self.v_max)

    def puncture_distance(self, z) -> np.ndarray:
        """Distance from point(s) to the nearest puncture (inf if none)."""
        z = np.asarray(z, dtype=np.complex128)
        if not self.punctures:
            return np.full(z.shape, np.inf)
        d = np.min([np.abs(z - p) for p in self.punctures], axis=0)
        return d

    def grid(self, nu: int, nv: int):
        """Grid axes (u, v) covering the rectangle, endpoints included."""
        if nu < 2 or nv < 2:
            raise ValueError("grid resolution must be at least 2x2")
        return (np.linspace(self.u_min, self.u_max, nu),
                np.linspace(self.v_min, self.v_max, nv))

    def sample_points(self, count: int, skip: int = 0,
                      clearance: float | None = None) -> np.ndarray:
        """Halton samples over the rectangle, skipping puncture-adjacent
        points.  ``clearance`` defaults to 2% of the rectangle diagonal."""
        if clearance is None:
            diag = math.hypot(self.u_max - self.u_min, self.v_max - self.v_min)
            clearance = 0.02 * diag
        out = np.empty(count, dtype=np.complex128)
        have = 0
        offset = skip
        while have < count:
            batch = halton(2 * (count - have) + 8, skip=offset)
            offset += len(batch)
            z = (self.u_min + batch[:, 0] * (self.u_max - self.u_min)
                 + 1j * (self.v_min + batch[:, 1] * (self.v_max - self.v_min)))
            ok = z[self.puncture_distance(z) > clearance]
            take = min(len(ok), count - have)
            out[have:have + take] = ok[:take]
            have += take
        return out

    def default_base_point(self) -> complex:
        """Center of the rectangle, nudged off punctures if necessary."""
        z0 = self.center
        if not self.punctures:
            return z0
        diag = math.hypot(self.u_max - self.u_min, self.v_max - self.v_min)
        if float(self.puncture_distance(z0)) > 0.05 * diag:
            return z0
        return complex(self.sample_points(1, skip=17)[0])

    def to_json(self) -> dict:
        d = {"rect": [self.u_min, self.u_max, self.v_min, self.v_max]}
        if self.punctures:
            d["punctures"] = [[p.real, p.imag] for p in self.punctures]
        if self.branch_cut != math.pi:
            d["branch_cut"] = self.branch_cut
        return d

    @classmethod
    def from_json(cls, d: dict) -> "DomainSpec":
        rect = d.get("rect", [-1.0, 1.0, -1.0, 1.0])
        punct = tuple(complex(p[0], p[1]) for p in d.get("punctures", []))
        return cls(*map(float, rect), punctures=punct,
                   branch_cut=float(d.get("branch_cut", math.pi)))
