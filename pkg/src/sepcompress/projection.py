"""Random and explicit compression matrices."""
from __future__ import annotations

import csv
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from .dataset import SupportSet
from .errors import ContractError, ParseError
from .rng import make_rng, parse_seed

ENSEMBLES = ("gaussian", "rademacher", "uniform", "explicit")


@dataclass(frozen=True, eq=False)
class ProjectionMatrix:
    """An ``m x n`` compression matrix plus how it was produced.

    ``scaled`` records that the entries already carry the ``1/sqrt(m)``
    factor.  ``seed`` is ``None`` for explicit matrices.
    """

    entries: np.ndarray
    ensemble: str = "explicit"
    seed: Optional[int] = None
    scaled: bool = False

    def __post_init__(self):
        E = np.array(self.entries, dtype=np.float64, copy=True)
        if E.ndim != 2 or E.shape[0] < 1 or E.shape[1] < 1:
            raise ContractError(f"projection matrix must be 2-D with m, n >= 1, got shape {E.shape}")
        if not np.all(np.isfinite(E)):
            raise ContractError("projection matrix entries must be finite")
        if self.ensemble not in ENSEMBLES:
            raise ContractError(f"unknown ensemble {self.ensemble!r}; choose from {ENSEMBLES}")
        E.setflags(write=False)
        object.__setattr__(self, "entries", E)

    @property
    def m(self) -> int:
        return self.entries.shape[0]

    @property
    def n(self) -> int:
        return self.entries.shape[1]

    @classmethod
    def explicit(cls, entries) -> "ProjectionMatrix":
        return cls(entries, "explicit", None, False)

    def __eq__(self, other):
        if not isinstance(other, ProjectionMatrix):
            return NotImplemented
        return (self.ensemble == other.ensemble and self.seed == other.seed
                and self.scaled == other.scaled
                and self.entries.shape == other.entries.shape
                and np.array_equal(self.entries, other.entries))


def as_matrix(Q) -> np.ndarray:
    """Entries of a ProjectionMatrix, or a plain 2-D array, as float64."""
    if isinstance(Q, ProjectionMatrix):
        return Q.entries
    Q = np.asarray(Q, dtype=np.float64)
    if Q.ndim != 2:
        raise ContractError(f"expected a 2-D matrix, got shape {Q.shape}")
    return Q


def generate(m: int, n: int, ensemble: str = "gaussian", seed=0, scaled: bool = True) -> ProjectionMatrix:
    """Draw an i.i.d. sub-Gaussian matrix.

    gaussian
        standard normal entries
    rademacher
        +1 / -1 with equal probability
    uniform
        uniform on ``[-sqrt(3), sqrt(3)]`` (zero mean, unit variance)

    With ``scaled=True`` the unscaled draw is divided by ``sqrt(m)``, so the
    scaled and unscaled matrices from one seed differ by exactly that factor.
    """
    if m < 1 or n < 1:
        raise ContractError(f"m and n must be >= 1, got m={m}, n={n}")
    seed = parse_seed(seed)
    rng = make_rng(seed)
    if ensemble == "gaussian":
        E = rng.standard_normal((m, n))
    elif ensemble == "rademacher":
        E = 2.0 * rng.integers(0, 2, size=(m, n)).astype(np.float64) - 1.0
    elif ensemble == "uniform":
        E = rng.uniform(-np.sqrt(3.0), np.sqrt(3.0), size=(m, n))
    else:
        raise ContractError(f"unknown ensemble {ensemble!r}; choose gaussian, rademacher or uniform")
    if scaled:
        E = E / np.sqrt(m)
    return ProjectionMatrix(E, ensemble, seed, scaled)


def apply(Q, x) -> np.ndarray:
    E = as_matrix(Q)
    x = np.asarray(x, dtype=np.float64)
    if x.ndim != 1 or x.size != E.shape[1]:
        raise ContractError(f"dimension mismatch: matrix has n={E.shape[1]}, vector has {x.shape}")
    return E @ x


def apply_set(Q, data: SupportSet) -> SupportSet:
    E = as_matrix(Q)
    if data.n != E.shape[1]:
        raise ContractError(f"dimension mismatch: matrix has n={E.shape[1]}, set has n={data.n}")
    return data.with_features(data.X @ E.T)


def save_matrix_csv(Q, path) -> None:
    """Row-major, no header, 17 significant digits."""
    E = as_matrix(Q)
    with Path(path).open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        for row in E:
            writer.writerow([f"{v:.17g}" for v in row])


def load_matrix_csv(path) -> ProjectionMatrix:
    path = Path(path)
    with path.open(newline="") as fh:
        rows = [r for r in csv.reader(fh) if r]
    if not rows:
        raise ParseError(f"{path}: empty matrix file")
    width = len(rows[0])
    E = np.empty((len(rows), width))
    for r, row in enumerate(rows, start=1):
        if len(row) != width:
            raise ParseError(f"{path}: row {r} has {len(row)} columns, expected {width}")
        for c, cell in enumerate(row):
            try:
                E[r - 1, c] = float(cell)
            except ValueError:
                raise ParseError(f"{path}: row {r}, column {c + 1}: not a number: {cell!r}") from None
    return ProjectionMatrix.explicit(E)
