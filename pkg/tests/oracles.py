"""Independent reference computations used only by the tests.

Nothing here imports the package's solvers; each function recomputes its
quantity the slow, obvious way.
"""
import itertools
import math

import numpy as np


def brute_eta_ip(Q, A):
    """Double loop over pairs with correctly rounded sums."""
    Q = np.asarray(Q, dtype=float).tolist()
    A = np.asarray(A, dtype=float).tolist()
    QA = [[math.fsum(q * v for q, v in zip(row, x)) for row in Q] for x in A]
    best, arg = -1.0, None
    for i in range(len(A)):
        for j in range(i, len(A)):
            d = abs(math.fsum(a * b for a, b in zip(QA[i], QA[j]))
                    - math.fsum(a * b for a, b in zip(A[i], A[j])))
            if d > best:
                best, arg = d, (i, j)
    return best, arg


def brute_eta_sd(Q, A):
    Q = np.asarray(Q, dtype=float)
    A = np.asarray(A, dtype=float)
    best, arg = 0.0, (0, 0)
    for i in range(len(A)):
        for j in range(i + 1, len(A)):
            d = A[i] - A[j]
            qd = Q @ A[i] - Q @ A[j]
            v = abs(math.fsum(qd * qd) - math.fsum(d * d))
            if v > best:
                best, arg = v, (i, j)
    return best, arg


def hull_distance_by_faces(P, N):
    """Exact distance between conv(P) and conv(N) in low dimension.

    The nearest point of the difference polytope to the origin lies in the
    relative interior of a simplex spanned by at most n of its vertices, so
    projecting the origin onto every such affine hull and keeping the
    projections with nonnegative barycentric weights finds it.
    """
    P = np.asarray(P, dtype=float)
    N = np.asarray(N, dtype=float)
    V = np.array([p - q for p in P for q in N])
    n = V.shape[1]
    best = min(np.linalg.norm(v) for v in V)
    for k in range(2, n + 1):
        for idx in itertools.combinations(range(len(V)), k):
            S = V[list(idx)]
            D = (S[1:] - S[0]).T
            if np.linalg.matrix_rank(D) < k - 1:
                continue
            beta = np.linalg.lstsq(D, -S[0], rcond=None)[0]
            lam = np.concatenate([[1 - beta.sum()], beta])
            if np.all(lam >= -1e-12):
                best = min(best, np.linalg.norm(lam @ S))
    return best


def segment_grid_distance(a0, a1, b0, b1, steps=2001):
    """Distance between two segments by a dense parameter grid."""
    s = np.linspace(0.0, 1.0, steps)
    U = a0[None, :] + s[:, None] * (a1 - a0)[None, :]
    W = b0[None, :] + s[:, None] * (b1 - b0)[None, :]
    d = np.linalg.norm(U[:, None, :] - W[None, :, :], axis=2)
    k = np.unravel_index(np.argmin(d), d.shape)
    return d[k], U[k[0]], W[k[1]]


def rip_lower_bound(Q, s, samples, rng):
    """max |‖Qx‖² − ‖x‖²| over random unit s-sparse x (never exceeds δ_s)."""
    Q = np.asarray(Q, dtype=float)
    n = Q.shape[1]
    best = 0.0
    for _ in range(samples // 1000):
        X = np.zeros((1000, n))
        g = rng.standard_normal((1000, s))
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        for r in range(1000):
            X[r, rng.choice(n, s, replace=False)] = g[r]
        QX = X @ Q.T
        best = max(best, float(np.max(np.abs(np.sum(QX * QX, axis=1) - 1.0))))
    return best
