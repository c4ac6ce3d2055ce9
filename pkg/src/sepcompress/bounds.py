"""Closed-form compression-length and generalization bounds.

The constants ``C`` and ``K`` depend only on the sub-Gaussian norm of the
rows of the random matrix and have no published values.  Both default to
1.0; treat any number computed with the defaults as a shape, not a
guarantee, or fit them with :func:`sepcompress.harness.calibrate_constant`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

from .errors import DomainError


@dataclass(frozen=True)
class BoundsConfig:
    C: float = 1.0
    K: float = 1.0
    epsilon: float = 0.05
    delta_conf: float = 0.05

    def __post_init__(self):
        if not self.C > 0 or not self.K > 0:
            raise DomainError("constants C and K must be positive")
        _unit_interval("epsilon", self.epsilon)
        _unit_interval("delta_conf", self.delta_conf)


def _unit_interval(name, v):
    if not 0 < v < 1:
        raise DomainError(f"{name} must lie in (0, 1), got {v}")


def _positive(name, v):
    if not v > 0:
        raise DomainError(f"{name} must be > 0, got {v}")


def _smallest_int_above(x: float) -> int:
    """Smallest integer strictly greater than x."""
    return math.floor(x) + 1


def rip_sample_bound_value(s: int, n: int, delta: float, epsilon: float, C: float = 1.0) -> float:
    """``C delta^-2 (s ln(e n / s) + ln(2/epsilon))`` before rounding."""
    if not 1 <= s <= n:
        raise DomainError(f"need 1 <= s <= n, got s={s}, n={n}")
    if not 0 < delta <= 1:
        raise DomainError(f"delta must lie in (0, 1], got {delta}")
    _unit_interval("epsilon", epsilon)
    _positive("C", C)
    return C * (s * math.log(math.e * n / s) + math.log(2.0 / epsilon)) / delta**2


def rip_sample_bound(s: int, n: int, delta: float, epsilon: float, C: float = 1.0) -> int:
    """Rows needed for the order-s RIP constant of ``Q/sqrt(m)`` to be <= delta w.p. 1 - epsilon."""
    return math.ceil(rip_sample_bound_value(s, n, delta, epsilon, C))


def sparse_compression_value(R: float, w0_norm: float, s: int, n: int, epsilon: float,
                             C: float = 1.0) -> float:
    """``C R^4 ||w0||^4 (2s ln(e n / (2s)) + ln(2/epsilon))``."""
    _positive("R", R)
    _positive("w0_norm", w0_norm)
    if not (s >= 1 and 2 * s <= n):
        raise DomainError(f"need 1 <= 2s <= n, got s={s}, n={n}")
    _unit_interval("epsilon", epsilon)
    _positive("C", C)
    return C * R**4 * w0_norm**4 * (2 * s * math.log(math.e * n / (2 * s)) + math.log(2.0 / epsilon))


def sparse_compression_length(R: float, w0_norm: float, s: int, n: int, epsilon: float,
                              C: float = 1.0) -> int:
    """Smallest m strictly above the sparse-support compression threshold."""
    return _smallest_int_above(sparse_compression_value(R, w0_norm, s, n, epsilon, C))


def jl_distortion_bound(m: int, width: float, radius: float, epsilon: float, K: float = 1.0) -> float:
    """Squared-distance distortion of ``Q/sqrt(m)`` over a set of given Gaussian width and radius.

    ``(K^2 a^2 + 2 sqrt(m) K a r) / m`` with ``a = width + ln(2/epsilon) r``.
    """
    if m < 1:
        raise DomainError(f"m must be >= 1, got {m}")
    if not width >= 0 or not radius >= 0:
        raise DomainError("width and radius must be >= 0")
    _unit_interval("epsilon", epsilon)
    _positive("K", K)
    a = width + math.log(2.0 / epsilon) * radius
    return (K * K * a * a + 2.0 * math.sqrt(m) * K * a * radius) / m


def general_compression_check(m: int, width: float, radius: float, epsilon: float, K: float,
                              w0_norm: float) -> bool:
    """True when 3/2 of the JL distortion bound is below the squared margin ``1/||w0||^2``."""
    _positive("w0_norm", w0_norm)
    return 1.5 * jl_distortion_bound(m, width, radius, epsilon, K) < 1.0 / w0_norm**2


def min_general_compression_length(width: float, radius: float, epsilon: float, K: float,
                                   w0_norm: float, m_cap: int) -> Optional[int]:
    """Smallest ``m <= m_cap`` passing :func:`general_compression_check`, else None.

    The bound decreases in m, so the passing set is an up-ray and bisection applies.
    """
    if m_cap < 1:
        raise DomainError(f"m_cap must be >= 1, got {m_cap}")
    check = lambda m: general_compression_check(m, width, radius, epsilon, K, w0_norm)  # noqa: E731
    if not check(m_cap):
        return None
    lo, hi = 0, m_cap  # check(lo) treated as False, check(hi) True
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if check(mid):
            hi = mid
        else:
            lo = mid
    return hi


def gen_bound_L(R: float, z: float, delta_conf: float, sample_size: int) -> float:
    """Hard-SVM generalization bound evaluated at ``z = ||w_S||``."""
    _positive("R", R)
    _unit_interval("delta_conf", delta_conf)
    if sample_size < 1:
        raise DomainError(f"sample_size must be >= 1, got {sample_size}")
    if not z > 1:
        raise DomainError(f"z={z}: argument outside bound's domain (log2 z must be > 0)")
    inner = 4.0 / delta_conf * math.log2(z)
    if inner < 1:
        raise DomainError(f"z={z}: argument outside bound's domain (ln of {inner:.4g} < 0)")
    return (8.0 * R * z + 2.0 + math.sqrt(math.log(inner))) / math.sqrt(sample_size)


def compressed_gen_bound(L_value: float, eta: float, ws_norm: float) -> float:
    """Generalization bound after compression: ``L / sqrt(1 - eta ||w_S||^2)``."""
    if not L_value >= 0:
        raise DomainError("L_value must be >= 0")
    if not eta >= 0:
        raise DomainError("eta must be >= 0")
    shrink = 1.0 - eta * ws_norm**2
    if not shrink > 0:
        raise DomainError(f"compression threshold violated: eta*||w_S||^2 = {1 - shrink:.6g} >= 1")
    return L_value / math.sqrt(shrink)


def bounds_report(cfg: dict) -> dict:
    """Evaluate every bound whose inputs are present in ``cfg``.

    Recognized keys: C, K, epsilon, delta_conf, R, s, n, w0_norm, width,
    radius, sample_size, m_cap, plus optional m (for the JL bound at a given
    length), rip_delta, z (defaults to w0_norm) and eta.  Bounds whose
    inputs are missing are omitted; domain errors are reported as strings.
    """
    bc = BoundsConfig(cfg.get("C", 1.0), cfg.get("K", 1.0),
                      cfg.get("epsilon", 0.05), cfg.get("delta_conf", 0.05))
    has = lambda *keys: all(cfg.get(k) is not None for k in keys)  # noqa: E731
    out = {"C": bc.C, "K": bc.K, "epsilon": bc.epsilon, "delta_conf": bc.delta_conf}

    def run(name, fn):
        try:
            out[name] = fn()
        except DomainError as exc:
            out[name] = {"error": str(exc)}

    if has("R", "w0_norm", "s", "n"):
        run("sparse_compression_length", lambda: sparse_compression_length(
            cfg["R"], cfg["w0_norm"], cfg["s"], cfg["n"], bc.epsilon, bc.C))
    if has("s", "n"):
        if has("rip_delta"):
            rd = cfg["rip_delta"]
        elif has("R", "w0_norm"):
            rd = min(1.0, 1.0 / (cfg["R"] ** 2 * cfg["w0_norm"] ** 2))
        else:
            rd = None
        if rd is not None:
            out["rip_delta"] = rd
            # order 2s: differences of two s-sparse points
            run("rip_sample_bound", lambda: rip_sample_bound(2 * cfg["s"], cfg["n"], rd, bc.epsilon, bc.C))
    if has("width", "radius", "m"):
        run("jl_distortion_bound", lambda: jl_distortion_bound(
            cfg["m"], cfg["width"], cfg["radius"], bc.epsilon, bc.K))
        if has("w0_norm"):
            run("general_compression_check", lambda: general_compression_check(
                cfg["m"], cfg["width"], cfg["radius"], bc.epsilon, bc.K, cfg["w0_norm"]))
    if has("width", "radius", "w0_norm", "m_cap"):
        run("min_general_compression_length", lambda: min_general_compression_length(
            cfg["width"], cfg["radius"], bc.epsilon, bc.K, cfg["w0_norm"], cfg["m_cap"]))
    z = cfg.get("z", cfg.get("w0_norm"))
    if has("R", "sample_size") and z is not None:
        run("gen_bound_L", lambda: gen_bound_L(cfg["R"], z, bc.delta_conf, cfg["sample_size"]))
        if has("eta") and isinstance(out.get("gen_bound_L"), float):
            run("compressed_gen_bound", lambda: compressed_gen_bound(out["gen_bound_L"], cfg["eta"], z))
    return out
