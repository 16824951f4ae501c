"""Level-set extraction, plane fitting, and conic classification.

These are the instruments that verify foliation claims: slice a surface
along a coordinate level set (always a parameter line on the surfaces
treated here), fit a plane through the ambient points, drop to in-plane
coordinates, and fit/classify a conic.

The conic fit is algebraic least squares: the right singular vector of
the smallest singular value of the [x^2, xy, y^2, x, y, 1] design
matrix, computed after isotropic normalization of the sample (centroid
at the origin, RMS radius sqrt(2)).  Without that normalization the
design matrix is hopelessly ill-conditioned for slices with e^u-sized
coordinates.  Classification and eccentricity are computed from the
matrix invariants of the *normalized* conic (both are invariant under
similarity transforms), while the reported coefficients are mapped back
to the original in-plane frame.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (AxisNotMonotone, DegenerateConic, DegenerateInput,
                     IllConditioned, NotHyperbola, NotPlanar)

__all__ = [
    "PlanarCurveSample", "ConicFit", "ParametricSurface",
    "slice_surface", "slice_parameter_line", "fit_plane", "planar_sample",
    "fit_conic", "eccentricity", "asymptotes",
]

# classification tolerances on the normalized-frame conic
PARABOLA_TOL = 1e-9      # |B^2 - 4AC|
CIRCLE_ECC_TOL = 1e-7    # ellipse with e below this is a circle
DEGENERATE_TOL = 1e-9    # smallest |eigenvalue| of the 3x3 conic matrix
LINE_SV_TOL = 1e-9       # sigma_2 / sigma_1 of the centered sample
AMBIGUOUS_GAP = 1e-6     # relative gap between two smallest design SVs


class ParametricSurface:
    """Callable immersion (u, v) -> R^n with rectangular parameter ranges."""

    def __init__(self, func, u_range, v_range, name=""):
        self.func = func
        self.u_range = tuple(map(float, u_range))
        self.v_range = tuple(map(float, v_range))
        self.name = name

    def __call__(self, u, v):
        return np.asarray(self.func(u, v), dtype=float)


@dataclass(frozen=True)
class PlanarCurveSample:
    """Ambient curve points with their fitted plane and 2D coordinates."""

    points: np.ndarray         # (m, n) ambient
    origin: np.ndarray         # (n,) plane point (centroid)
    basis: np.ndarray          # (2, n) orthonormal in-plane directions
    xy: np.ndarray             # (m, 2) in-plane coordinates
    planarity_residual: float  # max out-of-plane distance / diameter

    @property
    def diameter(self) -> float:
        span = self.points.max(axis=0) - self.points.min(axis=0)
        return float(np.linalg.norm(span))


def fit_plane(points: np.ndarray):
    """Least-squares 2-plane through n-dimensional points via SVD.

    Returns (origin, basis, residual) with residual the maximum
    out-of-plane distance divided by the curve diameter.  Raises
    DegenerateInput for fewer than 3 points or collinear data.
    """
    pts = np.asarray(points, dtype=float)
    if pts.ndim != 2 or pts.shape[0] < 3:
        raise DegenerateInput("need at least 3 points")
    origin = pts.mean(axis=0)
    centered = pts - origin
    _, s, vh = np.linalg.svd(centered, full_matrices=False)
    diam = float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0)))
    if diam == 0 or s[0] == 0 or s[1] / s[0] < 1e-12:
        raise DegenerateInput("points are collinear (or a single point)")
    basis = vh[:2]
    out_of_plane = centered - (centered @ basis.T) @ basis
    residual = float(np.max(np.linalg.norm(out_of_plane, axis=1))) / diam
    return origin, basis, residual


def planar_sample(points: np.ndarray) -> PlanarCurveSample:
    """Fit a plane and express the points in its coordinates.

    Collinear input (an exact line slice) is planar too: the frame is
    then the line direction plus an arbitrary orthogonal direction, so
    the downstream conic fit can classify it as a line.
    """
    pts = np.asarray(points, dtype=float)
    try:
        origin, basis, residual = fit_plane(pts)
    except DegenerateInput:
        origin = pts.mean(axis=0)
        centered = pts - origin
        _, s, vh = np.linalg.svd(centered, full_matrices=True)
        if s[0] == 0:
            raise
        d = vh[0]
        perp = vh[1] if vh.shape[0] > 1 else np.zeros_like(d)
        basis = np.stack([d, perp])
        diam = float(np.linalg.norm(pts.max(axis=0) - pts.min(axis=0)))
        out = centered - np.outer(centered @ d, d)
        residual = float(np.max(np.linalg.norm(out, axis=1))) / diam
    xy = (pts - origin) @ basis.T
    return PlanarCurveSample(pts, origin, basis, xy, residual)


# ---------------------------------------------------------------------------
# slicing
# ---------------------------------------------------------------------------

def _axis_dependence(surface: ParametricSurface, axis: int, probes: int = 9):
    """Which parameter the given coordinate depends on: 'u', 'v', or None."""
    us = np.linspace(*surface.u_range, probes)
    vs = np.linspace(*surface.v_range, probes)
    coord = np.array([[surface(u, v)[axis] for v in vs] for u in us])
    scale = max(np.ptp(coord), 1.0)
    du = np.max(np.ptp(coord, axis=0))   # variation across u at fixed v
    dv = np.max(np.ptp(coord, axis=1))   # variation across v at fixed u
    if dv <= 1e-9 * scale and du > 1e-9 * scale:
        return "u", coord[:, 0], us
    if du <= 1e-9 * scale and dv > 1e-9 * scale:
        return "v", coord[0, :], vs
    return None, None, None


def slice_parameter_line(surface: ParametricSurface, param: str, value: float,
                         npoints: int = 100, sweep=None) -> PlanarCurveSample:
    """Sample the curve obtained by freezing one parameter.

    ``sweep`` overrides the swept range of the other parameter.
    """
    if npoints < 12:
        raise ValueError("need at least 12 points on a slice")
    if param == "u":
        lo, hi = sweep if sweep is not None else surface.v_range
        ts = np.linspace(lo, hi, npoints)
        pts = np.array([surface(value, t) for t in ts])
    elif param == "v":
        lo, hi = sweep if sweep is not None else surface.u_range
        ts = np.linspace(lo, hi, npoints)
        pts = np.array([surface(t, value) for t in ts])
    else:
        raise ValueError("param must be 'u' or 'v'")
    return planar_sample(pts)


def slice_surface(surface: ParametricSurface, axis: int, value: float,
                  npoints: int = 100, sweep=None) -> PlanarCurveSample:
    """Level set {X_axis = value} extracted as a parameter line.

    The chosen coordinate must depend monotonically on exactly one
    parameter (true for all surfaces treated here); otherwise
    AxisNotMonotone is raised.  The parameter value is found by bisection
    and the other parameter is swept.
    """
    param, coord, ts = _axis_dependence(surface, axis)
    if param is None:
        raise AxisNotMonotone(
            f"coordinate {axis} is not a function of a single parameter")
    diffs = np.diff(coord)
    if not (np.all(diffs > 0) or np.all(diffs < 0)):
        raise AxisNotMonotone(f"coordinate {axis} is not monotone")
    lo, hi = ts[0], ts[-1]
    flo = coord[0] - value
    fhi = coord[-1] - value
    if flo * fhi > 0:
        raise ValueError(f"level {value} is outside the sampled range")

    def f(t):
        uv = (t, 0.5 * sum(surface.v_range)) if param == "u" else \
             (0.5 * sum(surface.u_range), t)
        return surface(*uv)[axis] - value

    for _ in range(200):
        mid = 0.5 * (lo + hi)
        fm = f(mid)
        if fm == 0 or (hi - lo) < 1e-15 * max(1.0, abs(lo) + abs(hi)):
            break
        if (fm > 0) == (fhi > 0):
            hi, fhi = mid, fm
        else:
            lo, flo = mid, fm
    frozen = 0.5 * (lo + hi)
    return slice_parameter_line(surface, param, frozen, npoints, sweep=sweep)


# ---------------------------------------------------------------------------
# conic fitting
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ConicFit:
    """Fitted conic A x^2 + B xy + C y^2 + D x + E y + F = 0."""

    coefficients: np.ndarray   # unit-norm (A, B, C, D, E, F), original frame
    classification: str        # ellipse | circle | parabola | hyperbola |
                               # line | line-pair | degenerate
    eccentricity: float        # inf for lines, nan for degenerate
    residual: float            # max |algebraic distance|, normalized frame
    center: np.ndarray | None          # central conics only
    semi_axes: tuple | None            # (major, minor) ellipse;
                                       # (transverse, conjugate) hyperbola
    axis_directions: np.ndarray | None  # (2, 2) principal directions
    leading_coefficient: float | None   # parabola: |lambda| in y = lambda x^2


def _conic_matrix(k):
    a, b, c, d, e, f = k
    return np.array([[a, b / 2, d / 2],
                     [b / 2, c, e / 2],
                     [d / 2, e / 2, f]])


def _classify(k):
    """Classify unit-norm coefficients (in the normalized sample frame)."""
    a, b, c, d, e, f = k
    m3 = _conic_matrix(k)
    eig3 = np.linalg.eigvalsh(m3)
    if np.min(np.abs(eig3)) <= DEGENERATE_TOL:
        # rank-deficient conic: one or two lines
        disc = b * b - 4 * a * c
        return "line-pair" if disc > PARABOLA_TOL else "degenerate"
    disc = b * b - 4 * a * c
    if abs(disc) <= PARABOLA_TOL:
        return "parabola"
    return "ellipse" if disc < 0 else "hyperbola"


def _central_geometry(k):
    """Center, semi-axes, axis directions, eccentricity of a central conic
    (coefficients in any frame)."""
    a, b, c, d, e, f = k
    m22 = np.array([[a, b / 2], [b / 2, c]])
    center = np.linalg.solve(m22, [-d / 2, -e / 2])
    f_c = f + 0.5 * (d * center[0] + e * center[1])
    lam, vecs = np.linalg.eigh(m22)   # lam ascending, columns orthonormal
    # canonical form: lam1 x'^2 + lam2 y'^2 = -f_c
    rhs = -f_c
    kind = "ellipse" if lam[0] * lam[1] > 0 else "hyperbola"
    if kind == "ellipse":
        if lam[0] * rhs <= 0:
            raise DegenerateConic("imaginary ellipse")
        ax = np.sqrt(rhs / lam)       # semi-axes along the two eigenvectors
        order = np.argsort(ax)[::-1]  # major first
        major, minor = ax[order]
        ecc = math.sqrt(max(0.0, 1.0 - (minor / major) ** 2))
        return center, (float(major), float(minor)), vecs[:, order].T, ecc
    # hyperbola: transverse axis has lam of the same sign as rhs
    it = 0 if lam[0] * rhs > 0 else 1
    ic = 1 - it
    a_t = math.sqrt(rhs / lam[it])
    b_c = math.sqrt(-rhs / lam[ic])
    ecc = math.sqrt(1.0 + (b_c / a_t) ** 2)
    dirs = np.stack([vecs[:, it], vecs[:, ic]])
    return center, (float(a_t), float(b_c)), dirs, ecc


def _parabola_leading(k):
    """|lambda| of the vertex form y = lambda x^2 for a parabola."""
    a, b, c, d, e, f = k
    m22 = np.array([[a, b / 2], [b / 2, c]])
    lam, vecs = np.linalg.eigh(m22)
    i_axis = int(np.argmax(np.abs(lam)))   # the nonzero eigenvalue
    lam1 = lam[i_axis]
    ey_dir = vecs[:, 1 - i_axis]           # parabola axis direction
    ep = d * ey_dir[0] + e * ey_dir[1]
    if abs(ep) < 1e-300:
        raise DegenerateConic("parabola without a linear term")
    return abs(lam1 / ep)


def _denormalize(k, scale, tx, ty):
    """Map coefficients from x' = scale (x - t) frame back to x."""
    t = np.array([[scale, 0.0, -scale * tx],
                  [0.0, scale, -scale * ty],
                  [0.0, 0.0, 1.0]])
    m = t.T @ _conic_matrix(k) @ t
    out = np.array([m[0, 0], 2 * m[0, 1], m[1, 1],
                    2 * m[0, 2], 2 * m[1, 2], m[2, 2]])
    return out / np.linalg.norm(out)


def _line_fit(pc: PlanarCurveSample) -> ConicFit:
    xy = pc.xy
    centroid = xy.mean(axis=0)
    _, _, vh = np.linalg.svd(xy - centroid, full_matrices=False)
    n = vh[1]  # unit normal of the line in-plane
    coeff = np.array([0.0, 0.0, 0.0, n[0], n[1], -float(n @ centroid)])
    coeff /= np.linalg.norm(coeff)
    resid = float(np.max(np.abs((xy - centroid) @ n)))
    return ConicFit(coeff, "line", math.inf, resid, None, None,
                    np.stack([vh[0], vh[1]]), None)


def fit_conic(pc: PlanarCurveSample, planarity_tol: float = 1e-6) -> ConicFit:
    """Algebraic least-squares conic through an in-plane sample."""
    if pc.xy.shape[0] < 6:
        raise ValueError("need at least 6 points to fit a conic")
    if pc.planarity_residual > planarity_tol:
        raise NotPlanar(
            f"planarity residual {pc.planarity_residual:.3e} exceeds "
            f"{planarity_tol:.1e}")
    xy = pc.xy
    centroid = xy.mean(axis=0)
    centered = xy - centroid

    # exact-line data make the conic fit ambiguous; detect first
    sv = np.linalg.svd(centered, compute_uv=False)
    if sv[0] == 0 or sv[1] / sv[0] <= LINE_SV_TOL:
        return _line_fit(pc)

    rms = math.sqrt(float(np.mean(np.sum(centered ** 2, axis=1))))
    scale = math.sqrt(2.0) / rms
    x, y = (scale * centered).T

    design = np.column_stack([x * x, x * y, y * y, x, y, np.ones_like(x)])
    _, s, vh = np.linalg.svd(design, full_matrices=False)
    if (s[-2] - s[-1]) <= AMBIGUOUS_GAP * s[0]:
        raise IllConditioned("two smallest singular values nearly equal; "
                             "conic fit is ambiguous")
    k_norm = vh[-1]
    k_norm = k_norm / np.linalg.norm(k_norm)
    residual = float(np.max(np.abs(design @ k_norm)))

    cls = _classify(k_norm)
    coeff = _denormalize(k_norm, scale, centroid[0], centroid[1])

    center = semi = dirs = None
    lead = None
    ecc = math.nan
    if cls in ("ellipse", "hyperbola"):
        center, semi, dirs, ecc = _central_geometry(coeff)
        if cls == "ellipse" and ecc <= CIRCLE_ECC_TOL:
            cls = "circle"
    elif cls == "parabola":
        ecc = 1.0
        lead = _parabola_leading(coeff)
    elif cls == "line":
        ecc = math.inf
    return ConicFit(coeff, cls, float(ecc), residual, center, semi, dirs, lead)


def eccentricity(fit: ConicFit) -> float:
    """Defining eccentricity; 0 for circles, 1 for parabolas, inf for a
    single line.  Raises DegenerateConic for line pairs/degenerate fits."""
    if fit.classification in ("degenerate", "line-pair"):
        raise DegenerateConic(f"no eccentricity for {fit.classification}")
    if fit.classification == "circle":
        return 0.0
    return fit.eccentricity


def asymptotes(fit: ConicFit) -> np.ndarray:
    """Unit direction vectors of the two asymptotes of a hyperbola,
    shape (2, 2), in the same in-plane frame as the fit."""
    if fit.classification != "hyperbola":
        raise NotHyperbola(f"asymptotes of a {fit.classification}")
    (a_t, b_c) = fit.semi_axes
    et, ec = fit.axis_directions
    d1 = a_t * et + b_c * ec
    d2 = a_t * et - b_c * ec
    return np.stack([d1 / np.linalg.norm(d1), d2 / np.linalg.norm(d2)])
