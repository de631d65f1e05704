"""Row reduction over a prime field."""

from __future__ import annotations

import numpy as np


def rref_mod_p(rows, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form of ``rows`` over F_p.

    Returns the nonzero rows of the RREF and the pivot columns.
    """
    M = np.array(rows, dtype=np.int64) % p
    if M.ndim != 2 or M.size == 0:
        ncols = M.shape[1] if M.ndim == 2 else 0
        return np.zeros((0, ncols), dtype=np.int64), []
    nrows, ncols = M.shape
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        nz = np.nonzero(M[r:, c])[0]
        if nz.size == 0:
            continue
        k = r + int(nz[0])
        if k != r:
            M[[r, k]] = M[[k, r]]
        M[r] = (M[r] * pow(int(M[r, c]), -1, p)) % p
        col = M[:, c].copy()
        col[r] = 0
        hit = np.nonzero(col)[0]
        if hit.size:
            M[hit] = (M[hit] - np.outer(col[hit], M[r])) % p
        pivots.append(c)
        r += 1
    return M[:r].copy(), pivots


def rank_mod_p(rows, p: int) -> int:
    return len(rref_mod_p(rows, p)[1])


def solve_mod_p(A, b, p: int) -> np.ndarray | None:
    """Unique solution x of A x = b over F_p, or None if there is none or it is not unique."""
    A = np.array(A, dtype=np.int64) % p
    b = np.array(b, dtype=np.int64).reshape(-1, 1) % p
    n = A.shape[1]
    R, piv = rref_mod_p(np.hstack([A, b]), p)
    if n in piv or len(piv) != n:
        return None
    return R[:n, n].copy()
