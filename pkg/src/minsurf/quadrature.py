"""Complex path integration along straight segments.

Integrals of holomorphic integrands are taken with composite adaptive
Gauss-Legendre quadrature of order 16.  A panel over [a, b] is compared
against the two half-panels; if the discrepancy exceeds the budgeted
tolerance the segment is split and each half inherits half the budget,
up to a depth cap of 40.  Integrands here are entire or meromorphic away
from punctures, so panels converge spectrally and nearly every segment
is accepted at depth 0 or 1.

``integrate_segments`` drives many segments at once through the tape
evaluator (one batched call per refinement level), which is what makes
surface-patch integration cheap.
"""

from __future__ import annotations

import math

import numpy as np

from .engine import compile_expr, eval_program
from .errors import EvaluationSingularity, NoConvergence, SingularPath

__all__ = ["integrate_path", "integrate_segments", "GL_ORDER", "MAX_DEPTH"]

GL_ORDER = 16
MAX_DEPTH = 40

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GL_ORDER)


def _segment_puncture_distance(a, b, punctures):
    """Min distance from segments [a_i, b_i] to any puncture."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    dist = np.full(a.shape, np.inf)
    d = b - a
    len2 = np.abs(d) ** 2
    for p in punctures:
        t = np.zeros(a.shape)
        nz = len2 > 0
        t[nz] = np.clip(((p - a[nz]) * np.conj(d[nz])).real / len2[nz], 0.0, 1.0)
        dist = np.minimum(dist, np.abs(a + t * d - p))
    return dist


def _panels(prog, a, b, cut):
    """Order-16 GL integral over each segment [a_i, b_i]."""
    mid = 0.5 * (a + b)
    half = 0.5 * (b - a)
    z = mid[:, None] + half[:, None] * _NODES[None, :]
    vals = eval_program(prog, z.ravel(), cut=cut).reshape(z.shape)
    if not np.all(np.isfinite(vals.view(np.float64))):
        raise SingularPath("integrand is singular on an integration segment")
    return (vals @ _WEIGHTS) * half


def integrate_segments(expr, a, b, tol: float = 1e-12, *, cut: float = math.pi,
                       punctures=(), max_depth: int = MAX_DEPTH) -> np.ndarray:
    """Integrate ``expr`` along straight segments a_i -> b_i.

    Returns one complex integral per segment, each with absolute error
    at most ``tol``.  All pending segments of a refinement level are
    evaluated in a single batched kernel call.
    """
    a = np.atleast_1d(np.asarray(a, dtype=np.complex128))
    b = np.atleast_1d(np.asarray(b, dtype=np.complex128))
    if a.shape != b.shape:
        raise ValueError("segment endpoint arrays must have the same shape")
    if punctures:
        d = _segment_puncture_distance(a, b, punctures)
        if np.any(d < 1e-9 * (1.0 + np.abs(b - a))):
            raise SingularPath("integration segment passes through a puncture")

    prog = compile_expr(expr)
    total = np.zeros(a.shape, dtype=np.complex128)
    idx = np.arange(a.size)
    seg_a, seg_b = a.copy(), b.copy()
    seg_tol = np.full(a.size, float(tol))

    for depth in range(max_depth + 1):
        whole = _panels(prog, seg_a, seg_b, cut)
        mid = 0.5 * (seg_a + seg_b)
        left = _panels(prog, seg_a, mid, cut)
        right = _panels(prog, mid, seg_b, cut)
        refined = left + right
        done = np.abs(whole - refined) <= seg_tol
        np.add.at(total, idx[done], refined[done])
        if np.all(done):
            return total
        keep = ~done
        idx = np.concatenate([idx[keep], idx[keep]])
        seg_a = np.concatenate([seg_a[keep], mid[keep]])
        seg_b = np.concatenate([mid[keep], seg_b[keep]])
        seg_tol = np.concatenate([0.5 * seg_tol[keep], 0.5 * seg_tol[keep]])
    raise NoConvergence(
        f"quadrature did not converge within depth {max_depth}")


def integrate_path(expr, z0, z1, tol: float = 1e-12, *, domain=None) -> complex:
    """Integral of ``expr`` along the straight segment z0 -> z1.

    Absolute error is at most ``tol``.  When ``domain`` is given, its
    punctures are checked against the segment and its branch cut angle
    is used for log.
    """
    if tol <= 0:
        raise ValueError("tol must be positive")
    cut = domain.branch_cut if domain is not None else math.pi
    punctures = domain.punctures if domain is not None else ()
    try:
        result = integrate_segments(expr, [z0], [z1], tol,
                                    cut=cut, punctures=punctures)
    except EvaluationSingularity as err:
        raise SingularPath(str(err)) from err
    return complex(result[0])
