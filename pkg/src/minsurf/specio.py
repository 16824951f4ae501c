"""JSON surface-spec: the wire format the CLI pipes between stages.

Two shapes are accepted:

    {"weierstrass": {"G": "...", "Psi": "..."}, "domain": {...}}
    {"curve": ["...", "...", ...], "domain": {...}}

Expression strings use the infix syntax of ``expr.parse``; ``domain`` is
optional (default [-1,1]^2) with keys "rect", "punctures", "branch_cut";
an optional "base_point": [re, im] rides along for downstream stages.
"""

from __future__ import annotations

import json

from . import expr as ex
from .domain import DomainSpec
from .nullcurve import NullCurve, WeierstrassData, from_weierstrass

__all__ = ["SurfaceSpec", "loads", "dumps", "load", "dump"]


class SurfaceSpec:
    """Parsed surface-spec: either Weierstrass data or an explicit curve."""

    def __init__(self, weierstrass=None, curve=None, base_point=None):
        if (weierstrass is None) == (curve is None):
            raise ValueError("spec needs exactly one of 'weierstrass' or 'curve'")
        self.weierstrass = weierstrass
        self.curve = curve
        self.base_point = base_point

    @property
    def domain(self) -> DomainSpec:
        return (self.weierstrass or self.curve).domain

    def as_curve(self) -> NullCurve:
        if self.curve is not None:
            return self.curve
        return from_weierstrass(self.weierstrass)

    def to_json(self) -> dict:
        d = {}
        if self.weierstrass is not None:
            d["weierstrass"] = {"G": ex.to_source(self.weierstrass.G),
                                "Psi": ex.to_source(self.weierstrass.Psi)}
        else:
            d["curve"] = [ex.to_source(c) for c in self.curve.components]
        d["domain"] = self.domain.to_json()
        if self.base_point is not None:
            d["base_point"] = [self.base_point.real, self.base_point.imag]
        return d

    @classmethod
    def from_json(cls, d: dict) -> "SurfaceSpec":
        domain = DomainSpec.from_json(d.get("domain", {}))
        base = d.get("base_point")
        base = complex(base[0], base[1]) if base is not None else None
        if "weierstrass" in d:
            wd = d["weierstrass"]
            w = WeierstrassData(ex.parse(wd["G"]), ex.parse(wd["Psi"]), domain)
            return cls(weierstrass=w, base_point=base)
        if "curve" in d:
            comps = tuple(ex.parse(s) for s in d["curve"])
            return cls(curve=NullCurve(comps, domain), base_point=base)
        raise ValueError("spec needs 'weierstrass' or 'curve'")


def loads(text: str) -> SurfaceSpec:
    return SurfaceSpec.from_json(json.loads(text))


def dumps(spec: SurfaceSpec) -> str:
    return json.dumps(spec.to_json(), indent=2, sort_keys=True)


def load(fh) -> SurfaceSpec:
    return SurfaceSpec.from_json(json.load(fh))


def dump(spec: SurfaceSpec, fh) -> None:
    fh.write(dumps(spec))
    fh.write("\n")
