"""Hot loops: batched trail dynamic programme and family-norm maxima.

Set KRCRYSTAL_BACKEND=numpy to skip numba; the default uses numba when it
imports cleanly and falls back to numpy otherwise.
"""

from __future__ import annotations

import os

import numpy as np

NEG = np.int64(-(1 << 40))

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised only without numba
    HAVE_NUMBA = False


def backend() -> str:
    choice = os.environ.get("KRCRYSTAL_BACKEND", "numba").lower()
    if choice not in ("numba", "numpy"):
        raise ValueError(f"KRCRYSTAL_BACKEND must be numba or numpy, not {choice!r}")
    return "numba" if choice == "numba" and HAVE_NUMBA else "numpy"


def trail_dp_numpy(C, succ, gain_col, start, stop):
    """Best trail score for each row of C.

    succ[k, b] is the node reached from b by taking step k (-1 if the step
    is not allowed); gain_col[k] is the column of C collected when step k
    is skipped (-1 for no gain).  Walks go from `start` to `stop`.
    """
    C = np.asarray(C, dtype=np.int64)
    n_steps, n_nodes = succ.shape
    V = np.full((C.shape[0], n_nodes), NEG, dtype=np.int64)
    V[:, stop] = 0
    for k in range(n_steps - 1, -1, -1):
        stay = V
        if gain_col[k] >= 0:
            stay = V + C[:, gain_col[k]][:, None]
        nxt = succ[k]
        ok = nxt >= 0
        moved = np.full_like(V, NEG)
        moved[:, ok] = V[:, nxt[ok]]
        V = np.maximum(stay, moved)
    return V[:, start]


def family_max_numpy(C, F):
    """max_p sum_{k in p} c_k for 0/1 family incidence rows F."""
    return (np.asarray(C, dtype=np.int64) @ np.asarray(F, dtype=np.int64).T).max(axis=1)


if HAVE_NUMBA:

    @numba.njit(cache=True)
    def _trail_dp_numba(C, succ, gain_col, start, stop):
        n_rows = C.shape[0]
        n_steps, n_nodes = succ.shape
        out = np.empty(n_rows, dtype=np.int64)
        V = np.empty(n_nodes, dtype=np.int64)
        W = np.empty(n_nodes, dtype=np.int64)
        for row in range(n_rows):
            for b in range(n_nodes):
                V[b] = NEG
            V[stop] = 0
            for k in range(n_steps - 1, -1, -1):
                g = 0
                if gain_col[k] >= 0:
                    g = C[row, gain_col[k]]
                for b in range(n_nodes):
                    best = V[b] + g
                    t = succ[k, b]
                    if t >= 0 and V[t] > best:
                        best = V[t]
                    W[b] = best
                for b in range(n_nodes):
                    V[b] = W[b]
            out[row] = V[start]
        return out

    @numba.njit(cache=True)
    def _family_max_numba(C, F):
        n_rows, m = C.shape
        n_fam = F.shape[0]
        out = np.empty(n_rows, dtype=np.int64)
        for row in range(n_rows):
            best = 0
            for f in range(n_fam):
                s = 0
                for k in range(m):
                    if F[f, k]:
                        s += C[row, k]
                if s > best:
                    best = s
            out[row] = best
        return out


def trail_dp(C, succ, gain_col, start, stop, use=None):
    use = use or backend()
    C = np.ascontiguousarray(np.atleast_2d(C), dtype=np.int64)
    if use == "numba":
        return _trail_dp_numba(C, succ, gain_col, np.int64(start), np.int64(stop))
    return trail_dp_numpy(C, succ, gain_col, start, stop)


def family_max(C, F, use=None):
    use = use or backend()
    C = np.ascontiguousarray(np.atleast_2d(C), dtype=np.int64)
    if use == "numba":
        return _family_max_numba(C, np.ascontiguousarray(F, dtype=np.int64))
    return family_max_numpy(C, F)
