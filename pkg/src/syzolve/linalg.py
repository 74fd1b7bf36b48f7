"""Dense elimination kernels used as oracles and for basis construction.

Exact field: fraction-free (Bareiss) elimination with row pivoting, so the
intermediate entries stay as small as determinant minors allow.  Float field:
LAPACK LU with an explicit pivot-magnitude singularity test.
"""

import numpy as np
import scipy.linalg

from .errors import SingularMatrixError

FLOAT_PIVOT_RTOL = 1e-12


def exact_solve(rows, rhs_cols):
    """Solve A X = B over an exact field.

    rows: list of lists (n x n); rhs_cols: list of right-hand-side columns,
    each of length n.  Returns the list of solution columns.  Raises
    SingularMatrixError when A is singular.
    """
    n = len(rows)
    m = len(rhs_cols)
    aug = [list(rows[i]) + [col[i] for col in rhs_cols] for i in range(n)]
    _bareiss_forward(aug, n)
    # back substitution on the triangularized augmented system
    sols = [[None] * n for _ in range(m)]
    for c in range(m):
        for i in range(n - 1, -1, -1):
            acc = aug[i][n + c]
            for j in range(i + 1, n):
                acc = acc - aug[i][j] * sols[c][j]
            sols[c][i] = acc / aug[i][i]
    return sols


def exact_is_singular(rows):
    """Rank test by the same fraction-free elimination."""
    n = len(rows)
    work = [list(r) for r in rows]
    try:
        _bareiss_forward(work, n)
    except SingularMatrixError:
        return True
    return False


def _bareiss_forward(aug, n):
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise SingularMatrixError(f"zero pivot in column {k}")
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
        pk = aug[k][k]
        width = len(aug[0])
        for i in range(k + 1, n):
            row = aug[i]
            f = row[k]
            krow = aug[k]
            if f == 0:
                for j in range(k + 1, width):
                    row[j] = (row[j] * pk) / prev
            else:
                for j in range(k + 1, width):
                    row[j] = (row[j] * pk - f * krow[j]) / prev
            row[k] = 0
        prev = pk


def float_solve(a, b):
    """Solve over float64 via LU; fails loudly on a tiny pivot."""
    a = np.asarray(a, dtype=float)
    b = np.asarray(b, dtype=float)
    scale = np.abs(a).max() if a.size else 0.0
    if scale == 0.0:
        raise SingularMatrixError("zero matrix")
    lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    dmin = np.abs(np.diag(lu)).min()
    if dmin <= FLOAT_PIVOT_RTOL * scale:
        raise SingularMatrixError(
            f"pivot {dmin:.3e} below threshold {FLOAT_PIVOT_RTOL * scale:.3e}"
        )
    return scipy.linalg.lu_solve((lu, piv), b, check_finite=False)


def float_is_singular(a):
    try:
        float_solve(a, np.zeros(len(a)))
    except SingularMatrixError:
        return True
    return False
