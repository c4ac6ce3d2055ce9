"""Finite labeled point sets.

A :class:`SupportSet` is the finite stand-in for the support of a
data-generating distribution: every statement of the form "for all x in the
support" is checked as "for all rows of the set".  Features are float64,
labels are the integers +1 / -1.
"""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Optional

import numpy as np
from scipy import special

from .errors import ContractError, ParseError
from .rng import make_rng, parse_seed


def _frozen(a: np.ndarray) -> np.ndarray:
    a = np.array(a, dtype=np.float64, copy=True)
    a.setflags(write=False)
    return a


@dataclass(frozen=True)
class LabeledPoint:
    x: np.ndarray
    y: int

    def __post_init__(self):
        x = _frozen(np.ravel(self.x))
        if not np.all(np.isfinite(x)):
            raise ContractError("point coordinates must be finite")
        if self.y not in (1, -1):
            raise ContractError(f"invalid label {self.y!r}; expected +1 or -1")
        object.__setattr__(self, "x", x)
        object.__setattr__(self, "y", int(self.y))


@dataclass(frozen=True, eq=False)
class SupportSet:
    """Ordered labeled points sharing one ambient dimension.

    Stored column-wise: ``X`` has shape ``(N, n)`` and ``y`` shape ``(N,)``.
    Both arrays are read-only.
    """

    X: np.ndarray
    y: np.ndarray

    def __post_init__(self):
        X = np.asarray(self.X, dtype=np.float64)
        if X.ndim == 1:
            X = X[:, None]
        if X.ndim != 2 or X.shape[0] == 0 or X.shape[1] == 0:
            raise ContractError("a SupportSet needs at least one point of dimension >= 1")
        if not np.all(np.isfinite(X)):
            raise ContractError("point coordinates must be finite")
        y = np.asarray(self.y)
        if y.shape != (X.shape[0],):
            raise ContractError(f"got {X.shape[0]} points but {y.size} labels")
        if not np.all((y == 1) | (y == -1)):
            bad = y[(y != 1) & (y != -1)][0]
            raise ContractError(f"invalid label {bad!r}; expected +1 or -1")
        y = y.astype(np.int64)
        y.setflags(write=False)
        object.__setattr__(self, "X", _frozen(X))
        object.__setattr__(self, "y", y)

    @classmethod
    def from_points(cls, points: Iterable[LabeledPoint]) -> "SupportSet":
        points = list(points)
        if not points:
            raise ContractError("a SupportSet cannot be empty")
        dims = {p.x.size for p in points}
        if len(dims) != 1:
            raise ContractError(f"points have mixed dimensions {sorted(dims)}")
        return cls(np.stack([p.x for p in points]), np.array([p.y for p in points]))

    @property
    def n(self) -> int:
        return self.X.shape[1]

    @property
    def points(self) -> list:
        return [LabeledPoint(x, int(y)) for x, y in zip(self.X, self.y)]

    def __len__(self) -> int:
        return self.X.shape[0]

    def positives(self) -> np.ndarray:
        return self.X[self.y == 1]

    def negatives(self) -> np.ndarray:
        return self.X[self.y == -1]

    def radius(self) -> float:
        return float(np.max(np.linalg.norm(self.X, axis=1)))

    def sparsity(self) -> int:
        return int(np.max(np.count_nonzero(self.X, axis=1)))

    def with_features(self, X: np.ndarray) -> "SupportSet":
        """Same labels, new feature matrix (used after compression)."""
        return SupportSet(X, self.y)

    def __eq__(self, other):
        if not isinstance(other, SupportSet):
            return NotImplemented
        return (self.X.shape == other.X.shape and np.array_equal(self.X, other.X)
                and np.array_equal(self.y, other.y))


@dataclass(frozen=True)
class Hyperplane:
    """Affine classifier ``x -> <w, x> + b``.

    With the functional-margin-1 convention the geometric margin is ``1/||w||``.
    """

    w: np.ndarray
    b: float

    def __post_init__(self):
        w = _frozen(np.ravel(self.w))
        if not np.all(np.isfinite(w)) or not np.isfinite(self.b):
            raise ContractError("hyperplane parameters must be finite")
        if not np.any(w):
            raise ContractError("hyperplane normal must be nonzero")
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "b", float(self.b))

    @property
    def norm(self) -> float:
        return float(np.linalg.norm(self.w))

    def margin(self) -> float:
        return 1.0 / self.norm

    def decision(self, X: np.ndarray) -> np.ndarray:
        return np.asarray(X, dtype=np.float64) @ self.w + self.b

    def to_dict(self) -> dict:
        return {"w": self.w.tolist(), "b": self.b}

    @classmethod
    def from_dict(cls, d: dict) -> "Hyperplane":
        return cls(np.asarray(d["w"], dtype=np.float64), float(d["b"]))


@dataclass(frozen=True)
class GenConfig:
    n: int
    count: int
    gamma: float
    R: float
    sparsity: Optional[int] = None
    seed: int = 0
    b0: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "seed", parse_seed(self.seed))
        if self.n < 1 or self.count < 1:
            raise ContractError("n and count must be >= 1")
        if not self.gamma > 0:
            raise ContractError("target margin gamma must be > 0")
        if self.R < 1.0 / self.gamma:
            raise ContractError(f"infeasible config: R={self.R} < 1/gamma={1.0 / self.gamma}")
        # the thinnest class slab sits at distance gamma*(1+|b0|) from the origin
        if self.R <= self.gamma * (1.0 + abs(self.b0)):
            raise ContractError(
                f"infeasible config: R={self.R} leaves no room beyond the margin slab")
        if self.sparsity is not None and not 1 <= self.sparsity <= self.n:
            raise ContractError(f"sparsity must lie in [1, n={self.n}]")


# ---------------------------------------------------------------------------
# CSV

def csv_text(data: SupportSet) -> str:
    """The CSV encoding written by :func:`save_csv`."""
    if not isinstance(data, SupportSet) or len(data) == 0:
        raise ContractError("CSV output needs a nonempty SupportSet")
    lines = [",".join([f"x{i + 1}" for i in range(data.n)] + ["y"])]
    for x, y in zip(data.X, data.y):
        lines.append(",".join([f"{v:.17g}" for v in x] + [str(int(y))]))
    return "\n".join(lines) + "\n"


def save_csv(data: SupportSet, path) -> None:
    """Write ``x1..xn,y`` with 17 significant digits per coordinate."""
    text = csv_text(data)
    path = Path(path)
    try:
        path.write_text(text)
    except OSError as exc:
        raise OSError(f"cannot write {path}: {exc}") from exc


def load_csv(path) -> SupportSet:
    path = Path(path)
    try:
        fh = path.open(newline="")
    except OSError as exc:
        raise OSError(f"cannot read {path}: {exc}") from exc
    with fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows:
        raise ParseError(f"{path}: empty file")
    header = [h.strip() for h in rows[0]]
    if "y" not in header:
        raise ParseError(f"{path}: header has no label column 'y'")
    ycol = header.index("y")
    if len(rows) == 1:
        raise ParseError(f"{path}: no data rows")
    X, labels = [], []
    for r, row in enumerate(rows[1:], start=2):
        if len(row) != len(header):
            raise ParseError(f"{path}: row {r} has {len(row)} cells, header has {len(header)}")
        feats = []
        for c, cell in enumerate(row):
            if c == ycol:
                continue
            try:
                feats.append(float(cell))
            except ValueError:
                raise ParseError(
                    f"{path}: row {r}, column {header[c]!r}: not a number: {cell!r}") from None
        try:
            label = float(row[ycol])
        except ValueError:
            raise ParseError(f"{path}: row {r}: invalid label {row[ycol]!r}") from None
        if label not in (1.0, -1.0):
            raise ParseError(f"{path}: row {r}: invalid label {row[ycol]!r}")
        X.append(feats)
        labels.append(int(label))
    return SupportSet(np.array(X, dtype=np.float64), np.array(labels))


# ---------------------------------------------------------------------------
# synthetic separable data

def _truncated_coordinate(rng, lo: float, R: float, k: int, size: int) -> np.ndarray:
    """Draw ``t = <e, x>`` for x uniform in the radius-R ball of R^k, given t >= lo.

    t^2/R^2 follows Beta(1/2, (k+1)/2) with a symmetric sign, so the
    truncated draw is an inverse-CDF sample on the upper tail.
    """
    a, b = 0.5, 0.5 * (k + 1)

    def sf(t):  # P(T > t)
        half = 0.5 * special.betaincc(a, b, min(t * t / (R * R), 1.0))
        return half if t >= 0 else 1.0 - half

    def isf(q):
        upper = q <= 0.5
        v = special.betainccinv(a, b, np.clip(np.where(upper, 2 * q, 2 * (1 - q)), 0.0, 1.0))
        t = R * np.sqrt(np.clip(v, 0.0, 1.0))
        return np.where(upper, t, -t)

    u = rng.uniform(0.0, sf(lo), size=size)
    return np.maximum(isf(u), lo)


def _ball_fill(rng, e: np.ndarray, t: np.ndarray, R: float) -> np.ndarray:
    """Complete coordinates ``t`` along unit ``e`` to points uniform in the ball slice."""
    k = e.size
    x = t[:, None] * e[None, :]
    if k > 1:
        g = rng.standard_normal((t.size, k))
        g -= np.outer(g @ e, e)
        g /= np.linalg.norm(g, axis=1, keepdims=True)
        rho = np.sqrt(np.maximum(R * R - t * t, 0.0))
        r = rho * rng.uniform(size=t.size) ** (1.0 / (k - 1))
        x += r[:, None] * g
    nx = np.linalg.norm(x, axis=1)
    over = nx > R
    x[over] *= (R / nx[over])[:, None]
    return x


def _sample_class(rng, direction: np.ndarray, lo: float, R: float, count: int,
                  sparsity: Optional[int]) -> np.ndarray:
    """Uniform points of the radius-R ball with ``<direction, x> >= lo``."""
    n = direction.size
    if sparsity is None:
        t = _truncated_coordinate(rng, lo, R, n, count)
        return _ball_fill(rng, direction, t, R)
    out = np.zeros((count, n))
    for i in range(count):
        for _ in range(10_000):
            support = np.sort(rng.choice(n, size=sparsity, replace=False))
            unorm = np.linalg.norm(direction[support])
            if unorm * R > lo:
                break
        else:
            raise ContractError("could not find a support with room for the margin; "
                                "increase R or the sparsity")
        e = direction[support] / unorm
        t = _truncated_coordinate(rng, lo / unorm, R, sparsity, 1)
        out[i, support] = _ball_fill(rng, e, t, R)[0]
    return out


def generate_separable(cfg: GenConfig) -> tuple:
    """Sample a separable set and the hyperplane that separates it.

    Returns ``(SupportSet, Hyperplane)`` where the hyperplane has
    ``||w0|| = 1/gamma`` and every point satisfies ``y(<w0,x> + b0) >= 1``.
    Points are uniform in the radius-R ball (on a random s-subset of
    coordinates when ``cfg.sparsity`` is set) conditioned on that margin
    constraint, which is the distribution rejection sampling would produce.
    Positives come first, then negatives.
    """
    rng = make_rng(cfg.seed)
    u = rng.standard_normal(cfg.n)
    u /= np.linalg.norm(u)
    w0 = u / cfg.gamma
    # y(<w0,x> + b0) >= 1  <=>  y(<u,x> + gamma*b0) >= gamma
    shift = cfg.gamma * cfg.b0
    pos = _sample_class(rng, u, cfg.gamma - shift, cfg.R, cfg.count, cfg.sparsity)
    neg = -_sample_class(rng, u, cfg.gamma + shift, cfg.R, cfg.count, cfg.sparsity)
    X = np.vstack([pos, neg])
    y = np.concatenate([np.ones(cfg.count, dtype=np.int64), -np.ones(cfg.count, dtype=np.int64)])
    return SupportSet(X, y), Hyperplane(w0, cfg.b0)
