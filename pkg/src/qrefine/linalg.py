"""Dense linear-algebra substrate: direct solve, compensated residuals,
symmetric eigendecomposition, condition number.

Matrices and vectors are plain float64 numpy arrays; LinearSystem wraps
the (A, b) pair with shape and finiteness checks.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .encoding import DyadicVector
from .errors import DimensionMismatch, NotSymmetric, SingularMatrix
from .precision import DoubleDouble, dd_sum, float_parts, two_prod, two_sum

_PIVOT_FLOOR = 1e-300


@dataclass(frozen=True)
class LinearSystem:
    a: np.ndarray
    b: np.ndarray

    def __post_init__(self) -> None:
        a = np.asarray(self.a, dtype=float)
        b = np.asarray(self.b, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise DimensionMismatch(f"coefficient matrix must be square, got {a.shape}")
        if b.shape != (a.shape[0],):
            raise DimensionMismatch(f"rhs shape {b.shape} does not match matrix {a.shape}")
        if not (np.isfinite(a).all() and np.isfinite(b).all()):
            raise DimensionMismatch("matrix and rhs entries must be finite")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)

    @property
    def n(self) -> int:
        return self.a.shape[0]


@dataclass(frozen=True)
class EigenBasis:
    """Eigenvalues (descending) and orthonormal eigenvector columns."""

    values: np.ndarray
    vectors: np.ndarray


def solve_direct(system: LinearSystem) -> np.ndarray:
    """Gaussian elimination with partial pivoting."""
    n = system.n
    a = system.a.copy()
    b = system.b.copy()
    for col in range(n):
        p = col + int(np.argmax(np.abs(a[col:, col])))
        if abs(a[p, col]) <= _PIVOT_FLOOR:
            raise SingularMatrix(f"pivot {a[p, col]!r} in column {col} below threshold")
        if p != col:
            a[[col, p]] = a[[p, col]]
            b[[col, p]] = b[[p, col]]
        factors = a[col + 1 :, col] / a[col, col]
        a[col + 1 :, col:] -= np.outer(factors, a[col, col:])
        b[col + 1 :] -= factors * b[col]
    x = np.zeros(n)
    for row in range(n - 1, -1, -1):
        x[row] = (b[row] - a[row, row + 1 :] @ x[row + 1 :]) / a[row, row]
    return x


def residual_norm_sq(system: LinearSystem, x: DyadicVector) -> DoubleDouble:
    """||Ax - b||^2 as a double-double, with x taken exactly.

    Each component of x is expanded into its exact float parts; every
    product enters the row sum as an error-free (hi, lo) pair, so the
    result is good to ~30 significant digits.
    """
    if len(x) != system.n:
        raise DimensionMismatch("solution length != system size")
    parts = [float_parts(m, x.exponent) for m in x.mantissas]
    total = DoubleDouble(0.0, 0.0)
    for k in range(system.n):
        terms = [-float(system.b[k])]
        for i in range(system.n):
            aki = float(system.a[k, i])
            for p in parts[i]:
                hi, lo = two_prod(aki, p)
                terms.append(hi)
                terms.append(lo)
        r = dd_sum(terms)
        sq_hi, sq_err = two_prod(r.hi, r.hi)
        cross = 2.0 * r.hi * r.lo + r.lo * r.lo
        s, e = two_sum(total.hi, sq_hi)
        e += total.lo + sq_err + cross
        s, e = two_sum(s, e)
        total = DoubleDouble(s, e)
    return total


def symmetric_eigen(s: np.ndarray) -> EigenBasis:
    """Cyclic Jacobi rotations until the off-diagonal mass vanishes."""
    s = np.asarray(s, dtype=float)
    if s.ndim != 2 or s.shape[0] != s.shape[1]:
        raise NotSymmetric(f"matrix must be square, got {s.shape}")
    scale = np.max(np.abs(s)) or 1.0
    if np.max(np.abs(s - s.T)) > 1e-12 * scale:
        raise NotSymmetric("matrix is not symmetric to 1e-12 relative")
    n = s.shape[0]
    a = s.copy()
    v = np.eye(n)
    for _ in range(60):
        off = float(np.sqrt(np.sum(np.tril(a, -1) ** 2)))
        if off <= 1e-30 * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                if abs(a[p, q]) <= 1e-300:
                    continue
                theta = (a[q, q] - a[p, p]) / (2.0 * a[p, q])
                # hypot keeps this finite for any theta
                t = math.copysign(1.0, theta) / (abs(theta) + math.hypot(theta, 1.0))
                c = 1.0 / math.sqrt(t * t + 1.0)
                sn = t * c
                rot = np.eye(n)
                rot[p, p] = rot[q, q] = c
                rot[p, q] = sn
                rot[q, p] = -sn
                a = rot.T @ a @ rot
                v = v @ rot
    values = np.diag(a).copy()
    order = np.argsort(values)[::-1]
    values = values[order]
    vectors = v[:, order]
    for j in range(n):
        anchor = int(np.argmax(np.abs(vectors[:, j])))
        if vectors[anchor, j] < 0:
            vectors[:, j] = -vectors[:, j]
    return EigenBasis(values=values, vectors=vectors)


def condition_number(a: np.ndarray) -> float:
    """2-norm condition number sqrt(lmax/lmin) of A^T A."""
    a = np.asarray(a, dtype=float)
    basis = symmetric_eigen(a.T @ a)
    lmax = float(basis.values[0])
    lmin = float(basis.values[-1])
    if lmax <= 0.0 or lmin <= lmax * (a.shape[0] ** 2) * 2.5e-16:
        raise SingularMatrix("smallest eigenvalue of A^T A is zero within tolerance")
    return float(np.sqrt(lmax / lmin))
