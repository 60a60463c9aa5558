"""Dense complex linear algebra for the small matrices this package builds.

Everything here is elimination-based so the pivot magnitudes that decide
singularity and rank are available to callers; the matrices involved are at
most a few dozen rows, so no factorization library is needed.
"""

from __future__ import annotations

import numpy as np

from .errors import SingularMatrixError

SOLVE_PIVOT_RTOL = 1e-13
NULLSPACE_RTOL = 1e-9


def norm_inf(a) -> float:
    """Max absolute row sum for 2-D input, max magnitude for 1-D."""
    a = np.asarray(a)
    if a.ndim == 1:
        return float(np.max(np.abs(a))) if a.size else 0.0
    if a.size == 0:
        return 0.0
    return float(np.max(np.sum(np.abs(a), axis=1)))


def solve(a, b, pivot_rtol: float = SOLVE_PIVOT_RTOL) -> tuple[np.ndarray, float]:
    """Solve a square system by partially pivoted elimination.

    Returns (x, cond) where cond estimates norm_inf(A) * norm_inf(inv(A)).
    Raises SingularMatrixError, carrying the offending pivot magnitude, when
    a pivot falls below pivot_rtol * norm_inf(A).
    """
    a = np.array(a, dtype=complex)
    b = np.array(b, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    n = a.shape[0]
    if b.shape != (n,):
        raise ValueError(f"right-hand side has shape {b.shape}, expected ({n},)")

    a_norm = norm_inf(a)
    threshold = pivot_rtol * a_norm
    # Augment with the identity so the same sweep yields inv(A) for the
    # condition estimate.
    work = np.hstack([a, b[:, None], np.eye(n, dtype=complex)])
    for k in range(n):
        p = k + int(np.argmax(np.abs(work[k:, k])))
        pivot = abs(work[p, k])
        if pivot <= threshold:
            raise SingularMatrixError(
                f"pivot {pivot:.3e} below threshold {threshold:.3e} "
                f"at elimination step {k}",
                pivot=pivot,
            )
        if p != k:
            work[[k, p]] = work[[p, k]]
        work[k] /= work[k, k]
        for i in range(n):
            if i != k and work[i, k] != 0.0:
                work[i] -= work[i, k] * work[k]

    x = work[:, n]
    inv = work[:, n + 1 :]
    cond = a_norm * norm_inf(inv)
    return x, cond


def _echelon(a: np.ndarray, tol: float):
    """Completely pivoted row echelon form.

    Returns (work, col_perm, rank): work holds the eliminated rows, and
    col_perm[i] is the original column in eliminated position i.  Rank is
    decided against tol * max|a|.
    """
    work = np.array(a, dtype=complex)
    m, n = work.shape
    col_perm = list(range(n))
    scale = float(np.max(np.abs(work))) if work.size else 0.0
    threshold = tol * scale
    rank = 0
    for k in range(min(m, n)):
        sub = np.abs(work[k:, :][:, col_perm[k:]])
        flat = int(np.argmax(sub))
        i = k + flat // (n - k)
        j = k + flat % (n - k)
        if sub.flat[flat] <= threshold:
            break
        if i != k:
            work[[k, i]] = work[[i, k]]
        if j != k:
            col_perm[k], col_perm[j] = col_perm[j], col_perm[k]
        piv_col = col_perm[k]
        for r in range(k + 1, m):
            f = work[r, piv_col] / work[k, piv_col]
            if f != 0.0:
                work[r] -= f * work[k]
                work[r, piv_col] = 0.0
        rank += 1
    return work, col_perm, rank


def rank(a, tol: float = NULLSPACE_RTOL) -> int:
    """Numerical rank at relative threshold tol."""
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={a.ndim}")
    return _echelon(a, tol)[2]


def nullspace(a, tol: float = NULLSPACE_RTOL) -> list[np.ndarray]:
    """Basis of the numerical nullspace at relative threshold tol.

    Each basis vector is scaled so its first nonzero coordinate (in index
    order) equals 1; vectors are returned ordered by their free column.
    """
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2:
        raise ValueError(f"expected a matrix, got ndim={a.ndim}")
    n = a.shape[1]
    work, col_perm, r = _echelon(a, tol)

    basis = []
    for free in sorted(col_perm[r:]):
        x = np.zeros(n, dtype=complex)
        x[free] = 1.0
        # Back-substitute through the pivot columns.
        for i in range(r - 1, -1, -1):
            piv = col_perm[i]
            acc = work[i, free] + sum(
                work[i, col_perm[t]] * x[col_perm[t]] for t in range(i + 1, r)
            )
            x[piv] = -acc / work[i, piv]
        top = float(np.max(np.abs(x)))
        first = int(np.argmax(np.abs(x) > 1e-12 * top))
        x /= x[first]
        basis.append(x)
    return basis
