"""Bulk evaluation of expression trees on arrays of complex points.

Everything downstream (quadrature panels, residual sampling, surface
patches, metric grids) reduces to evaluating a handful of small ASTs at
10^4..10^6 points, so this is the package's hot kernel.  An expression is
compiled once into a flat postfix instruction tape and then run by one of
two interchangeable stack machines:

* a numba ``@njit`` kernel looping points-outer / instructions-inner
  (complex128 scalars through ``cmath``, no array temporaries), and
* a pure-numpy fallback looping instructions-outer over whole arrays.

The numpy path is selected when numba is unavailable or when the
environment variable ``MINSURF_NO_NUMBA`` is set to a non-empty value
other than ``0``.  ``benchmarks/bench_backends.py`` compares the two.

``log`` uses the principal branch by default; a rotated branch cut is
supported by passing the cut direction angle (the principal branch
corresponds to ``cut = pi``).
"""

from __future__ import annotations

import cmath
import math
import os

import numpy as np

from .errors import EvaluationSingularity
from . import expr as ex

__all__ = ["compile_expr", "evaluate", "eval_program", "using_numba", "Program"]

# opcodes
_LOAD_Z, _LOAD_C, _ADD, _SUB, _MUL, _DIV, _NEG, _POW, _EXP, _LOG, _SINH, _COSH = range(12)

_DISABLE_ENV = os.environ.get("MINSURF_NO_NUMBA", "0") not in ("", "0")

try:
    if _DISABLE_ENV:
        raise ImportError("numba disabled by MINSURF_NO_NUMBA")
    from numba import njit

    _HAVE_NUMBA = True
except ImportError:
    _HAVE_NUMBA = False

    def njit(*args, **kwargs):  # no-op decorator fallback
        def wrap(f):
            return f
        return wrap


def using_numba() -> bool:
    """True when the jitted kernel is active (import-time decision)."""
    return _HAVE_NUMBA


class Program:
    """Flat postfix tape: opcodes, per-op integer args, constant pool."""

    __slots__ = ("ops", "args", "consts", "stack_size")

    def __init__(self, ops, args, consts, stack_size):
        self.ops = np.asarray(ops, dtype=np.int64)
        self.args = np.asarray(args, dtype=np.int64)
        self.consts = np.asarray(consts, dtype=np.complex128)
        self.stack_size = int(stack_size)


def compile_expr(e: ex.Expr) -> Program:
    """Flatten an AST into a Program (postorder walk)."""
    ops, args, consts = [], [], []

    def emit(op, arg=0):
        ops.append(op)
        args.append(arg)

    def walk(node):
        if isinstance(node, ex.Const):
            consts.append(complex(node.value))
            emit(_LOAD_C, len(consts) - 1)
            return 1
        if isinstance(node, ex.Var):
            emit(_LOAD_Z)
            return 1
        if isinstance(node, (ex.Add, ex.Sub, ex.Mul, ex.Div)):
            da = walk(node.a)
            db = walk(node.b)
            emit({ex.Add: _ADD, ex.Sub: _SUB, ex.Mul: _MUL, ex.Div: _DIV}[type(node)])
            return max(da, 1 + db)
        if isinstance(node, ex.Neg):
            d = walk(node.a)
            emit(_NEG)
            return d
        if isinstance(node, ex.Pow):
            d = walk(node.a)
            emit(_POW, node.n)
            return d
        for cls, op in ((ex.Exp, _EXP), (ex.Log, _LOG), (ex.Sinh, _SINH), (ex.Cosh, _COSH)):
            if isinstance(node, cls):
                d = walk(node.a)
                emit(op)
                return d
        raise TypeError(f"not an expression node: {node!r}")

    depth = walk(e)
    if not consts:
        consts.append(0j)  # keep the const pool non-empty for the kernel
    return Program(ops, args, consts, depth)


@njit(cache=True)
def _run_numba(ops, args, consts, z, cut, stack_size, out):  # pragma: no cover
    shift = cut - math.pi
    rot = cmath.exp(-1j * shift)
    stack = np.empty(stack_size, np.complex128)
    for p in range(z.size):
        zp = z[p]
        sp = 0
        for k in range(len(ops)):
            op = ops[k]
            if op == 0:  # LOAD_Z
                stack[sp] = zp
                sp += 1
            elif op == 1:  # LOAD_C
                stack[sp] = consts[args[k]]
                sp += 1
            elif op == 2:
                sp -= 1
                stack[sp - 1] = stack[sp - 1] + stack[sp]
            elif op == 3:
                sp -= 1
                stack[sp - 1] = stack[sp - 1] - stack[sp]
            elif op == 4:
                sp -= 1
                stack[sp - 1] = stack[sp - 1] * stack[sp]
            elif op == 5:
                sp -= 1
                if stack[sp] == 0:  # match numpy: inf, detected by caller
                    stack[sp - 1] = complex(np.inf, np.inf)
                else:
                    stack[sp - 1] = stack[sp - 1] / stack[sp]
            elif op == 6:
                stack[sp - 1] = -stack[sp - 1]
            elif op == 7:
                n = args[k]
                base = stack[sp - 1]
                if base == 0 and n < 0:
                    stack[sp - 1] = complex(np.inf, np.inf)
                else:
                    m = -n if n < 0 else n
                    acc = complex(1.0, 0.0)
                    while m:  # exponentiation by squaring
                        if m & 1:
                            acc = acc * base
                        base = base * base
                        m >>= 1
                    stack[sp - 1] = 1.0 / acc if n < 0 else acc
            elif op == 8:
                stack[sp - 1] = cmath.exp(stack[sp - 1])
            elif op == 9:
                if stack[sp - 1] == 0:
                    stack[sp - 1] = complex(-np.inf, 0.0)
                else:
                    stack[sp - 1] = cmath.log(stack[sp - 1] * rot) + 1j * shift
            elif op == 10:
                stack[sp - 1] = cmath.sinh(stack[sp - 1])
            else:
                stack[sp - 1] = cmath.cosh(stack[sp - 1])
        out[p] = stack[0]
    return out


def _run_numpy(ops, args, consts, z, cut, stack_size, out):
    shift = cut - math.pi
    rot = cmath.exp(-1j * shift)
    stack = []
    with np.errstate(all="ignore"):
        for k in range(len(ops)):
            op = ops[k]
            if op == _LOAD_Z:
                stack.append(z.copy())
            elif op == _LOAD_C:
                stack.append(np.full(z.shape, consts[args[k]]))
            elif op == _ADD:
                b = stack.pop()
                stack[-1] = stack[-1] + b
            elif op == _SUB:
                b = stack.pop()
                stack[-1] = stack[-1] - b
            elif op == _MUL:
                b = stack.pop()
                stack[-1] = stack[-1] * b
            elif op == _DIV:
                b = stack.pop()
                stack[-1] = stack[-1] / b
            elif op == _NEG:
                stack[-1] = -stack[-1]
            elif op == _POW:
                stack[-1] = stack[-1] ** int(args[k])
            elif op == _EXP:
                stack[-1] = np.exp(stack[-1])
            elif op == _LOG:
                stack[-1] = np.log(stack[-1] * rot) + 1j * shift
            elif op == _SINH:
                stack[-1] = np.sinh(stack[-1])
            elif op == _COSH:
                stack[-1] = np.cosh(stack[-1])
    out[...] = stack[0]
    return out


def eval_program(prog: Program, z: np.ndarray, cut: float = math.pi,
                 backend: str | None = None) -> np.ndarray:
    """Run a compiled tape over an array of points.

    ``backend`` forces "numba" or "numpy" (the benchmark uses this); by
    default the import-time selection applies.  No finiteness check is
    performed here; ``evaluate`` is the checked entry point.
    """
    z = np.ascontiguousarray(z, dtype=np.complex128)
    out = np.empty(z.shape, dtype=np.complex128)
    use = {"numba": True, "numpy": False}.get(backend, _HAVE_NUMBA)
    if use and not _HAVE_NUMBA:
        raise RuntimeError("numba backend requested but numba is unavailable")
    runner = _run_numba if use else _run_numpy
    runner(prog.ops, prog.args, prog.consts, z.ravel(), float(cut),
           max(prog.stack_size, 1), out.reshape(-1))
    return out


def evaluate(e: ex.Expr, z, cut: float = math.pi):
    """Evaluate an expression at scalar or ndarray ``z``.

    Raises EvaluationSingularity when any output is non-finite (division
    by zero, log of zero, overflow).
    """
    scalar = np.isscalar(z) or np.ndim(z) == 0
    arr = np.atleast_1d(np.asarray(z, dtype=np.complex128))
    out = eval_program(compile_expr(e), arr, cut=cut)
    if not np.all(np.isfinite(out.view(np.float64))):
        raise EvaluationSingularity(f"non-finite value evaluating {ex.to_source(e)!r}")
    if scalar:
        return complex(out.ravel()[0])
    return out.reshape(np.shape(z))
