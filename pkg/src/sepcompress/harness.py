"""End-to-end checks of margin preservation under compression.

:func:`verify` takes a separable set and a matrix Q and walks the whole
construction: nearest hull points, the hard-SVM hyperplane ``(w*, b*)``, the
exact inner-product distortion ``eta`` of Q over the set, and the compressed
hyperplane

    w_bar = Q w* / (1 - eta ||w*||^2),    b_bar = b* / (1 - eta ||w*||^2).

Whenever ``eta < 1/||w*||^2`` the compressed hyperplane must separate the
compressed set with functional margin >= 1; a violation is a counterexample.
:func:`sweep` repeats this over random matrices for a grid of lengths m.
"""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field, fields
from pathlib import Path
from typing import Optional, Sequence

import numpy as np

from . import bounds
from .dataset import GenConfig, Hyperplane, SupportSet, generate_separable
from .distortion import eta_inner_product, gaussian_width_mc
from .errors import ContractError
from .hullsvm import (HullWitness, compatibility_constant, fit, functional_margin,
                      is_separable_lp)
from .projection import ProjectionMatrix, as_matrix, generate
from .rng import derive_seed, parse_seed

MARGIN_TOL = 1e-9

PRESERVED = "preserved"
EXCEEDED = "threshold exceeded"
COUNTEREXAMPLE = "counterexample"


def _json_float(v):
    if v is None:
        return None
    v = float(v)
    return v if math.isfinite(v) else None


@dataclass(frozen=True)
class VerificationReport:
    n: int
    m: int
    set_size: int
    eta_ip: float
    argmax_ip: tuple
    threshold_star: float
    threshold_prior: Optional[float]
    w_star: np.ndarray
    b_star: float
    delta: float
    w_star_norm: float
    certified_gap: float
    margin_before: float
    margin_after_raw: float
    raw_lower_bound: float
    w_bar: Optional[np.ndarray]
    b_bar: Optional[float]
    margin_after_scaled: Optional[float]
    c_measured: Optional[float]
    c_bound: float
    prior_margin: Optional[float] = None
    prior_norm: Optional[float] = None
    norm_within_prior: Optional[bool] = None
    separation_within_prior: Optional[bool] = None
    lp_separable: Optional[bool] = None
    verdict: str = EXCEEDED

    def to_dict(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, np.ndarray):
                v = [float(t) for t in v]
            elif isinstance(v, tuple):
                v = list(v)
            elif isinstance(v, (bool, np.bool_)):
                v = bool(v)
            elif isinstance(v, (float, np.floating)):
                v = _json_float(v)
            out[f.name] = v
        return out


@dataclass(frozen=True)
class SweepRow:
    m: int
    repetitions: int
    frac_below_threshold: float
    frac_lp_separable: Optional[float]
    mean_eta: float
    max_eta: float
    counterexamples: int = 0


@dataclass(frozen=True)
class SweepResult:
    rows: tuple
    predicted_m: Optional[int]
    ensemble: str
    seed: int
    n: int
    set_size: int
    w_star_norm: float
    threshold: float

    def to_dict(self) -> dict:
        d = {f.name: getattr(self, f.name) for f in fields(self) if f.name != "rows"}
        d["threshold"] = _json_float(self.threshold)
        d["rows"] = [{f.name: getattr(r, f.name) for f in fields(r)} for r in self.rows]
        return d


def _verify_fitted(data: SupportSet, h: Hyperplane, witness: HullWitness, Q,
                   prior: Optional[Hyperplane], check_lp: bool) -> VerificationReport:
    E = as_matrix(Q)
    if E.shape[1] != data.n:
        raise ContractError(f"dimension mismatch: Q has n={E.shape[1]}, set has n={data.n}")
    ip = eta_inner_product(E, data)
    eta = ip.value
    w2 = float(h.w @ h.w)
    threshold = 1.0 / w2

    QX = data.X @ E.T
    Qw = E @ h.w
    raw = data.y * (QX @ Qw + h.b)
    shrink = 1.0 - eta * w2
    w_bar = b_bar = scaled = None
    if shrink > 0:
        w_bar = Qw / shrink
        b_bar = h.b / shrink
        scaled = float(np.min(data.y * (QX @ w_bar + b_bar)))

    compat = compatibility_constant(E, h.w, data, eta)

    prior_margin = prior_norm = norm_ok = sep_ok = threshold_prior = None
    if prior is not None:
        if prior.w.size != data.n:
            raise ContractError("prior hyperplane dimension does not match the set")
        prior_norm = prior.norm
        threshold_prior = 1.0 / prior_norm**2
        prior_margin = functional_margin(prior, data)
        if prior_margin >= 1.0 - 1e-12:
            norm_ok = h.norm <= prior_norm + MARGIN_TOL
            sep_ok = witness.delta >= 2.0 / prior_norm - MARGIN_TOL

    lp = None
    if check_lp:
        lp = is_separable_lp(data.with_features(QX)).separable

    if eta < threshold:
        verdict = PRESERVED if scaled is not None and scaled >= 1.0 - MARGIN_TOL else COUNTEREXAMPLE
    else:
        verdict = EXCEEDED
    if norm_ok is False or sep_ok is False:
        verdict = COUNTEREXAMPLE

    return VerificationReport(
        n=data.n, m=E.shape[0], set_size=len(data),
        eta_ip=eta, argmax_ip=ip.pair,
        threshold_star=threshold, threshold_prior=threshold_prior,
        w_star=h.w, b_star=h.b, delta=witness.delta, w_star_norm=h.norm,
        certified_gap=witness.certified_gap,
        margin_before=functional_margin(h, data),
        margin_after_raw=float(np.min(raw)), raw_lower_bound=shrink,
        w_bar=w_bar, b_bar=b_bar, margin_after_scaled=scaled,
        c_measured=compat.c_measured, c_bound=compat.c_bound,
        prior_margin=prior_margin, prior_norm=prior_norm,
        norm_within_prior=norm_ok, separation_within_prior=sep_ok,
        lp_separable=lp, verdict=verdict,
    )


def verify(data: SupportSet, Q, prior: Optional[Hyperplane] = None,
           check_lp: bool = True) -> VerificationReport:
    """Check that compression by Q keeps ``data`` linearly separable.

    Parameters
    ----------
    data : SupportSet
        Separable labeled points; :class:`NotSeparable` propagates otherwise.
    Q : ProjectionMatrix or array of shape (m, n)
    prior : Hyperplane, optional
        A known separator with functional margin >= 1.  When given, the
        report also checks ``||w*|| <= ||w0||`` and ``delta >= 2/||w0||``.
    check_lp : bool
        Run the LP separability oracle on the compressed set.

    Returns
    -------
    VerificationReport
        ``verdict`` is ``"preserved"`` when ``eta < 1/||w*||^2`` and the
        compressed hyperplane has functional margin >= 1 - 1e-9,
        ``"threshold exceeded"`` when the distortion is too large for the
        guarantee to apply, and ``"counterexample"`` if a guarantee failed.
    """
    h, witness = fit(data)
    return _verify_fitted(data, h, witness, Q, prior, check_lp)


def predicted_length(data: SupportSet, prior: Hyperplane, cfg: GenConfig,
                     bcfg: bounds.BoundsConfig, seed: int, m_cap: int = 10**9) -> Optional[int]:
    """Compression length the bounds predict for this set (sparse or general)."""
    if cfg.sparsity is not None and 2 * cfg.sparsity <= cfg.n:
        return bounds.sparse_compression_length(cfg.R, prior.norm, cfg.sparsity, cfg.n,
                                                bcfg.epsilon, bcfg.C)
    width = gaussian_width_mc(data.X, 2000, seed).mean
    return bounds.min_general_compression_length(max(width, 0.0), data.radius(), bcfg.epsilon,
                                                 bcfg.K, prior.norm, m_cap)


def sweep(gen_cfg: GenConfig, ensemble: str, m_list: Sequence[int], repetitions: int, seed,
          bounds_cfg: Optional[bounds.BoundsConfig] = None,
          matrix: Optional[ProjectionMatrix] = None, check_lp: bool = True) -> SweepResult:
    """Empirical preservation rates over random matrices ``Q/sqrt(m)``.

    The set is drawn once from ``gen_cfg``.  Repetition r at length m uses
    the matrix seeded by child stream ``(m, r)`` of ``seed``, so every cell
    of the grid is reproducible on its own.  With ``ensemble="explicit"``
    the given ``matrix`` is used for every repetition instead.
    """
    if not m_list:
        raise ContractError("m_list must be nonempty")
    if repetitions < 1:
        raise ContractError("repetitions must be >= 1")
    seed = parse_seed(seed)
    bcfg = bounds_cfg or bounds.BoundsConfig()
    if ensemble == "explicit" and matrix is None:
        raise ContractError("ensemble 'explicit' needs a matrix")

    data, prior = generate_separable(gen_cfg)
    h, witness = fit(data)
    threshold = 1.0 / float(h.w @ h.w)

    rows = []
    for m in m_list:
        etas, below, lp_ok, bad = [], 0, 0, 0
        for r in range(repetitions):
            if ensemble == "explicit":
                if matrix.m != m:
                    raise ContractError(f"explicit matrix has m={matrix.m}, sweep asked for m={m}")
                Q = matrix
            else:
                Q = generate(m, gen_cfg.n, ensemble, derive_seed(seed, m, r), scaled=True)
            rep = _verify_fitted(data, h, witness, Q, prior, check_lp)
            etas.append(rep.eta_ip)
            below += rep.eta_ip < threshold
            lp_ok += bool(rep.lp_separable)
            bad += rep.verdict == COUNTEREXAMPLE
        rows.append(SweepRow(
            m=int(m), repetitions=repetitions,
            frac_below_threshold=below / repetitions,
            frac_lp_separable=lp_ok / repetitions if check_lp else None,
            mean_eta=float(np.mean(etas)), max_eta=float(np.max(etas)),
            counterexamples=bad))

    return SweepResult(tuple(rows), predicted_length(data, prior, gen_cfg, bcfg, seed),
                       ensemble, seed, gen_cfg.n, len(data), h.norm, threshold)


def calibrate_constant(result: SweepResult, gen_cfg: GenConfig,
                       bounds_cfg: Optional[bounds.BoundsConfig] = None) -> Optional[float]:
    """Fit C (sparse sets) or K (general sets) to an observed sweep.

    The observed length is the smallest swept m from which every larger
    swept m keeps ``eta < 1/||w*||^2`` in at least a ``1 - epsilon`` fraction
    of repetitions.  C is chosen so the sparse bound equals that m; K is the
    largest constant for which the general check still passes there.
    Returns None when no swept m reaches the target.
    """
    bcfg = bounds_cfg or bounds.BoundsConfig()
    target = 1.0 - bcfg.epsilon
    rows = sorted(result.rows, key=lambda r: r.m)
    m_obs = None
    for k in range(len(rows)):
        if all(r.frac_below_threshold >= target for r in rows[k:]):
            m_obs = rows[k].m
            break
    if m_obs is None:
        return None
    data, prior = generate_separable(gen_cfg)
    w0 = prior.norm
    if gen_cfg.sparsity is not None and 2 * gen_cfg.sparsity <= gen_cfg.n:
        unit = bounds.sparse_compression_value(gen_cfg.R, w0, gen_cfg.sparsity, gen_cfg.n,
                                               bcfg.epsilon, 1.0)
        return m_obs / unit
    width = max(gaussian_width_mc(data.X, 2000, result.seed).mean, 0.0)
    r = data.radius()
    a = width + math.log(2.0 / bcfg.epsilon) * r
    if a == 0:
        return math.inf
    # 1.5 (K^2 a^2 + 2 sqrt(m) K a r) / m = 1/w0^2, positive root in K
    rhs = m_obs / (1.5 * w0 * w0)
    p = 2.0 * math.sqrt(m_obs) * a * r
    return (-p + math.sqrt(p * p + 4.0 * a * a * rhs)) / (2.0 * a * a)


def report_emit(report, fmt: str = "json", path=None) -> str:
    """Serialize a report; write it to ``path`` when given and return the text.

    JSON is available for every report type (fields in declaration order).
    CSV is for :class:`SweepResult` and has one row per swept m.
    """
    if fmt == "json":
        payload = report.to_dict() if hasattr(report, "to_dict") else report
        text = json.dumps(payload, indent=2, allow_nan=False) + "\n"
    elif fmt == "csv":
        if not isinstance(report, SweepResult):
            raise ContractError("CSV output is only defined for sweep results")
        buf = io.StringIO()
        names = [f.name for f in fields(SweepRow)]
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(names)
        for row in report.rows:
            writer.writerow(["" if getattr(row, k) is None else repr(getattr(row, k)) for k in names])
        text = buf.getvalue()
    else:
        raise ContractError(f"unknown format {fmt!r}; use json or csv")
    if path is not None:
        try:
            Path(path).write_text(text)
        except OSError as exc:
            raise OSError(f"cannot write {path}: {exc}") from exc
    return text
