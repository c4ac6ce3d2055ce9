"""Hard-margin SVM from the nearest points of the two class hulls.

For a separable set the closest pair ``(x_plus, x_minus)`` between
``conv(X+)`` and ``conv(X-)`` at distance ``delta`` gives

    w* = 2 (x_plus - x_minus) / delta^2
    b* = 1 - 2 <x_plus - x_minus, x_plus> / delta^2

which separates the set with functional margin 1 and has ``||w*|| = 2/delta``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Optional

import numpy as np
from scipy.optimize import linprog
from scipy.spatial.distance import cdist

from .dataset import Hyperplane, SupportSet
from .errors import ContractError, IterationLimit, NotSeparable
from .projection import as_matrix

WEIGHT_PRUNE = 1e-14
SEPARATION_FLOOR = 1e-12


@dataclass(frozen=True)
class HullWitness:
    """Nearest pair between the class hulls, with its convex weights.

    ``coeffs_plus[k]`` weights the k-th positive point of the set (positives in
    set order), likewise ``coeffs_minus``.  ``certified_gap`` is an upper
    bound on ``delta**2 - delta_opt**2``.
    """

    x_plus: np.ndarray
    x_minus: np.ndarray
    delta: float
    coeffs_plus: np.ndarray
    coeffs_minus: np.ndarray
    certified_gap: float
    iterations: int = 0


@dataclass(frozen=True)
class CompatibilityReport:
    c_measured: float
    c_bound: float
    argmax: int
    deviation: float
    note: str = ""


class SeparabilityResult(NamedTuple):
    separable: bool
    hyperplane: Optional[Hyperplane]
    status: str


def _split(data: SupportSet):
    P, N = data.positives(), data.negatives()
    if len(P) == 0 or len(N) == 0:
        raise ContractError("both classes must be nonempty")
    return P, N


def _affine_minimizer(V: np.ndarray) -> np.ndarray:
    """Weights (summing to 1) of the min-norm point of the affine hull of the rows of V."""
    if V.shape[0] == 1:
        return np.ones(1)
    D = (V[1:] - V[0]).T
    beta = np.linalg.lstsq(D, -V[0], rcond=None)[0]
    return np.concatenate([[1.0 - beta.sum()], beta])


def _fw_gap(z, P, N):
    """Duality gap of min ||z||^2 over conv(P) - conv(N) at z, with the LMO vertex."""
    sp = P @ z
    sn = N @ z
    i = int(np.argmin(sp))
    j = int(np.argmax(sn))
    return 2.0 * (z @ z - (sp[i] - sn[j])), i, j


def _witness(P, N, corral, lam, iterations) -> HullWitness:
    a = np.zeros(len(P))
    c = np.zeros(len(N))
    for (i, j), l in zip(corral, lam):
        a[i] += l
        c[j] += l
    for v in (a, c):
        v[v < WEIGHT_PRUNE] = 0.0
        v /= v.sum()
    xp = a @ P
    xm = c @ N
    d = xp - xm
    gap = max(0.0, _fw_gap(d, P, N)[0])
    return HullWitness(xp, xm, float(np.linalg.norm(d)), a, c, float(gap), iterations)


def nearest_hull_points(data: SupportSet, tol: Optional[float] = None,
                        max_iters: int = 200_000) -> HullWitness:
    """Closest points of ``conv(X+)`` and ``conv(X-)``.

    Solves ``min ||u - v||^2`` over the two hulls as a min-norm-point problem
    on the difference polytope ``conv(X+) - conv(X-)``, whose vertices are
    pairs ``x_i - x_j`` reached through a linear minimization oracle.  Each
    outer step is a Frank-Wolfe step: the oracle vertex is added to an active
    set ("corral"), and the point is moved to the affine minimizer of the
    active set, dropping vertices whose weight would turn negative (Wolfe's
    fully corrective variant).  The iteration stops once the Frank-Wolfe
    duality gap on ``delta**2`` is at most ``tol``.

    Raises
    ------
    NotSeparable
        if ``delta**2`` falls to ``1e-12 * max ||x||^2`` or below.
    IterationLimit
        if ``max_iters`` outer steps pass without reaching ``tol``.
    """
    P, N = _split(data)
    sq = float(np.max(np.einsum("ij,ij->i", data.X, data.X)))
    if tol is None:
        tol = 1e-10 * max(1.0, sq)
    floor = SEPARATION_FLOOR * sq

    d2 = cdist(P, N, "sqeuclidean")
    i0, j0 = np.unravel_index(int(np.argmin(d2)), d2.shape)
    corral = [(int(i0), int(j0))]
    V = (P[i0] - N[j0])[None, :]
    lam = np.ones(1)
    z = V[0].copy()

    for it in range(1, max_iters + 1):
        if z @ z <= floor:
            raise NotSeparable(f"class hulls intersect (delta^2 = {z @ z:.3g} <= floor {floor:.3g})")
        gap, i, j = _fw_gap(z, P, N)
        if gap <= tol:
            return _witness(P, N, corral, lam, it)
        if (i, j) in corral:
            # no new vertex to add: numerically at the optimum of this active set
            w = _witness(P, N, corral, lam, it)
            if w.certified_gap <= tol:
                return w
            raise IterationLimit(f"solver stalled with gap {w.certified_gap:.3g} > tol {tol:.3g}", w)
        corral.append((i, j))
        V = np.vstack([V, P[i] - N[j]])
        lam = np.append(lam, 0.0)
        while True:
            alpha = _affine_minimizer(V)
            if np.all(alpha > WEIGHT_PRUNE):
                lam = alpha
                break
            neg = alpha <= WEIGHT_PRUNE
            ratios = lam[neg] / np.maximum(lam[neg] - alpha[neg], np.finfo(float).tiny)
            theta = float(np.clip(np.min(ratios), 0.0, 1.0))
            lam = theta * alpha + (1.0 - theta) * lam
            keep = lam > WEIGHT_PRUNE
            if keep.all():
                keep[int(np.argmin(lam))] = False
            corral = [c for c, k in zip(corral, keep) if k]
            V = V[keep]
            lam = lam[keep]
            lam /= lam.sum()
        z = lam @ V

    w = _witness(P, N, corral, lam, max_iters)
    raise IterationLimit(f"no convergence in {max_iters} iterations (gap {w.certified_gap:.3g})", w)


def construct_hyperplane(witness: HullWitness) -> Hyperplane:
    d = witness.x_plus - witness.x_minus
    dd = float(d @ d)
    if not dd > 0:
        raise ContractError("witness points coincide; delta must be > 0")
    return Hyperplane(2.0 * d / dd, 1.0 - 2.0 * float(d @ witness.x_plus) / dd)


def fit(data: SupportSet, tol: Optional[float] = None, max_iters: int = 200_000):
    """``(Hyperplane, HullWitness)`` of the geometric hard-SVM solution."""
    witness = nearest_hull_points(data, tol, max_iters)
    return construct_hyperplane(witness), witness


def functional_margin(h: Hyperplane, data: SupportSet) -> float:
    """``min_i y_i (<w, x_i> + b)``; the set is separated by h iff this is >= 1."""
    if h.w.size != data.n:
        raise ContractError(f"dimension mismatch: hyperplane n={h.w.size}, set n={data.n}")
    return float(np.min(data.y * h.decision(data.X)))


def is_separable_lp(data: SupportSet) -> SeparabilityResult:
    """Decide whether some (w, b) has ``y(<w,x> + b) >= 1`` on every point.

    Solves the feasibility LP with HiGHS.  A feasible answer is rescaled so
    its functional margin is exactly 1 and then re-audited; infeasibility is
    the solver's certified status.
    """
    _split(data)
    X, y = data.X, data.y.astype(np.float64)
    Nn, n = X.shape
    A_ub = -y[:, None] * np.hstack([X, np.ones((Nn, 1))])
    res = linprog(np.zeros(n + 1), A_ub=A_ub, b_ub=-np.ones(Nn),
                  bounds=[(None, None)] * (n + 1), method="highs")
    if res.status == 2:
        return SeparabilityResult(False, None, "infeasible")
    if res.status != 0 or res.x is None:
        return SeparabilityResult(False, None, f"solver status {res.status}: {res.message}")
    w, b = res.x[:n], float(res.x[n])
    fm = float(np.min(y * (X @ w + b)))
    if not fm > 0 or not np.any(w):
        return SeparabilityResult(False, None, "solver point does not separate")
    h = Hyperplane(w / fm, b / fm)
    if functional_margin(h, data) < 1.0 - 1e-9:
        return SeparabilityResult(False, None, "rescaled solution failed the margin audit")
    return SeparabilityResult(True, h, "feasible")


def compatibility_constant(Q, w, data, eta: float) -> CompatibilityReport:
    """Smallest c with ``max_x |<Qw, Qx> - <w, x>| <= c * eta`` over the set."""
    E = as_matrix(Q)
    X = data.X if isinstance(data, SupportSet) else np.atleast_2d(np.asarray(data, dtype=np.float64))
    w = np.asarray(w, dtype=np.float64)
    if w.size != E.shape[1] or X.shape[1] != E.shape[1]:
        raise ContractError("dimension mismatch between Q, w and the set")
    if eta < 0:
        raise ContractError("eta must be >= 0")
    dev = np.abs((X @ E.T) @ (E @ w) - X @ w)
    k = int(np.argmax(dev))
    worst = float(dev[k])
    bound = float(w @ w)
    if eta == 0:
        if worst == 0:
            return CompatibilityReport(0.0, bound, k, worst, "eta = 0 and no deviation")
        return CompatibilityReport(math.inf, bound, k, worst, "eta = 0 but deviation is nonzero")
    return CompatibilityReport(worst / eta, bound, k, worst)
