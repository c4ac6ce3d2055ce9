"""Geometric distortion introduced by a linear map.

Inner-product distortion over a finite set A is

    eta_ip = max_{x, x' in A} |<Qx, Qx'> - <x, x'>|

with the diagonal ``x = x'`` included, and squared-distance distortion is

    eta_sd = max_{x, x' in A} | ||Qx - Qx'||^2 - ||x - x'||^2 |.

Also here: the conversions between the two, the restricted isometry
constant by exhaustive support enumeration, and a Monte Carlo Gaussian width.
"""
from __future__ import annotations

from dataclasses import dataclass, asdict
from itertools import combinations
from math import comb
from typing import NamedTuple

import numpy as np

from .dataset import SupportSet
from .errors import ContractError
from .projection import as_matrix
from .rng import make_rng, parse_seed

RIP_SUPPORT_CAP = 10**6


class PairMax(NamedTuple):
    value: float
    pair: tuple


@dataclass(frozen=True)
class DistortionReport:
    eta_ip: float
    eta_sd: float
    argmax_ip: tuple
    argmax_sd: tuple
    n: int
    m: int
    set_size: int

    def to_dict(self) -> dict:
        d = asdict(self)
        d["argmax_ip"] = list(self.argmax_ip)
        d["argmax_sd"] = list(self.argmax_sd)
        return d


@dataclass(frozen=True)
class RipEstimate:
    s: int
    delta_s: float
    method: str
    supports_examined: int


@dataclass(frozen=True)
class GaussianWidthEstimate:
    mean: float
    stderr: float
    trials: int
    seed: int


def _points(A) -> np.ndarray:
    if isinstance(A, SupportSet):
        return A.X
    A = np.asarray(A, dtype=np.float64)
    if A.ndim == 1:
        A = A[None, :]
    if A.ndim != 2 or A.shape[0] == 0:
        raise ContractError("point set must be a nonempty (N, n) array")
    return A


def _check_dims(E: np.ndarray, A: np.ndarray) -> None:
    if E.shape[1] != A.shape[1]:
        raise ContractError(f"dimension mismatch: matrix has n={E.shape[1]}, points have n={A.shape[1]}")


def _upper_argmax(D: np.ndarray) -> PairMax:
    """Max over i <= j of D[i, j]; row-major argmax gives the lexicographically first pair."""
    masked = np.where(np.triu(np.ones(D.shape, dtype=bool)), D, -np.inf)
    flat = int(np.argmax(masked))
    i, j = divmod(flat, D.shape[1])
    return PairMax(float(D[i, j]), (i, j))


def eta_inner_product(Q, A) -> PairMax:
    E = as_matrix(Q)
    A = _points(A)
    _check_dims(E, A)
    QA = A @ E.T
    return _upper_argmax(np.abs(QA @ QA.T - A @ A.T))


def eta_squared_distance(Q, A) -> PairMax:
    E = as_matrix(Q)
    A = _points(A)
    _check_dims(E, A)
    QA = A @ E.T
    N = A.shape[0]
    D = np.zeros((N, N))
    # explicit differences avoid the cancellation of the Gram-matrix identity
    for i in range(N - 1):
        d = A[i + 1:] - A[i]
        qd = QA[i + 1:] - QA[i]
        D[i, i + 1:] = np.abs(np.einsum("ij,ij->i", qd, qd) - np.einsum("ij,ij->i", d, d))
    return _upper_argmax(D)


def audit(Q, A) -> DistortionReport:
    E = as_matrix(Q)
    A = _points(A)
    ip = eta_inner_product(E, A)
    sd = eta_squared_distance(E, A)
    return DistortionReport(ip.value, sd.value, ip.pair, sd.pair,
                            n=E.shape[1], m=E.shape[0], set_size=A.shape[0])


def ip_to_sd_bound(eta: float) -> float:
    """An eta-inner-product-preserving map is 4*eta-squared-distance-preserving."""
    if not eta >= 0:
        raise ContractError(f"eta must be >= 0, got {eta}")
    return 4.0 * eta


def sd_to_ip_bound(eta: float, A) -> float:
    """Converse conversion, valid only when the set contains the origin."""
    if not eta >= 0:
        raise ContractError(f"eta must be >= 0, got {eta}")
    A = _points(A)
    if not np.any(np.all(A == 0.0, axis=1)):
        raise ContractError("origin required: the set must contain the zero vector")
    return 1.5 * eta


def sparse_ip_bound(delta_2s: float, R: float) -> float:
    """Inner-product distortion over s-sparse vectors of norm <= R."""
    if not delta_2s >= 0 or not R >= 0:
        raise ContractError("delta_2s and R must be >= 0")
    return delta_2s * R * R


def rip_constant_exact(Q, s: int, chunk: int = 4096) -> RipEstimate:
    """Exact order-s restricted isometry constant.

    Enumerates every column subset S with ``|S| = s`` and returns the largest
    spectral norm of ``Q_S^T Q_S - I``.  Smaller supports are principal
    submatrices of some size-s support, so they cannot raise the maximum.
    """
    E = as_matrix(Q)
    n = E.shape[1]
    if not 1 <= s <= n:
        raise ContractError(f"sparsity order s must lie in [1, n={n}], got {s}")
    total = comb(n, s)
    if total > RIP_SUPPORT_CAP:
        raise ContractError(
            f"C({n},{s}) = {total} supports exceeds the cap of {RIP_SUPPORT_CAP}; "
            "exact RIP is only feasible for small n or s")
    G = E.T @ E
    eye = np.eye(s)
    best = 0.0
    it = combinations(range(n), s)
    while True:
        block = np.array(list(_take(it, chunk)), dtype=np.intp)
        if block.size == 0:
            break
        sub = G[block[:, :, None], block[:, None, :]] - eye
        ev = np.linalg.eigvalsh(sub)
        best = max(best, float(np.max(np.abs(ev))))
    return RipEstimate(s, best, "exact-enumeration", total)


def _take(it, k):
    for _, item in zip(range(k), it):
        yield item


def gaussian_width_mc(A, trials: int, seed=0) -> GaussianWidthEstimate:
    """Monte Carlo estimate of ``E sup_{x in A} <g, x>`` for standard normal g."""
    A = _points(A)
    if trials < 1:
        raise ContractError("trials must be >= 1")
    seed = parse_seed(seed)
    g = make_rng(seed).standard_normal((trials, A.shape[1]))
    sup = np.max(g @ A.T, axis=1)
    stderr = float(np.std(sup, ddof=1) / np.sqrt(trials)) if trials > 1 else 0.0
    return GaussianWidthEstimate(float(np.mean(sup)), stderr, trials, seed)
