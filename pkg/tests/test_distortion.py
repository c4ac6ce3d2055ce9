import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from oracles import brute_eta_ip, brute_eta_sd, rip_lower_bound
from sepcompress.distortion import (audit, eta_inner_product, eta_squared_distance,
                                    gaussian_width_mc, ip_to_sd_bound, rip_constant_exact,
                                    sd_to_ip_bound, sparse_ip_bound)
from sepcompress.errors import ContractError
from sepcompress.projection import generate


def test_identity_has_no_distortion(rng):
    A = rng.standard_normal((20, 5))
    assert eta_inner_product(np.eye(5), A).value == 0.0
    assert eta_squared_distance(np.eye(5), A).value == 0.0


def test_diag_example():
    r = eta_inner_product(np.diag([1.1, 1.0]), np.eye(2))
    assert r.value == pytest.approx(0.21, abs=1e-15)
    assert r.pair == (0, 0)


def test_two_identity_squared_distance():
    r = eta_squared_distance(2 * np.eye(2), np.array([[0.0, 0.0], [1.0, 0.0]]))
    assert r.value == 3.0 and r.pair == (0, 1)


@pytest.mark.parametrize("seed", range(5))
def test_against_brute_force(seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((50, 8))
    Q = generate(5, 8, "gaussian", seed).entries
    val, pair = brute_eta_ip(Q, A)
    r = eta_inner_product(Q, A)
    assert r.pair == pair
    assert r.value == pytest.approx(val, rel=1e-12, abs=1e-13)
    val, pair = brute_eta_sd(Q, A)
    r = eta_squared_distance(Q, A)
    assert r.pair == pair
    assert r.value == pytest.approx(val, rel=1e-12, abs=1e-13)


def test_tie_break_lowest_pair():
    # every diagonal entry distorts by exactly 3
    r = eta_inner_product(2 * np.eye(3), np.eye(3))
    assert r.pair == (0, 0)


def test_dimension_mismatch():
    with pytest.raises(ContractError):
        eta_inner_product(np.eye(3), np.eye(2))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**32))
def test_permutation_invariance(seed):
    rng = np.random.default_rng(seed)
    A = rng.standard_normal((15, 4))
    Q = rng.standard_normal((3, 4))
    perm = rng.permutation(15)
    assert eta_inner_product(Q, A[perm]).value == pytest.approx(eta_inner_product(Q, A).value, rel=1e-13)


@pytest.mark.parametrize("alpha", [0.0, 1.0, 2.0])
def test_scaling_law(rng, alpha):
    x = rng.standard_normal(6)
    r = eta_inner_product(alpha * np.eye(6), x[None, :])
    assert r.value == pytest.approx(abs(alpha**2 - 1) * (x @ x), rel=1e-14)


def test_conversion_values():
    assert ip_to_sd_bound(0.0) == 0.0
    assert ip_to_sd_bound(0.25) == 1.0
    A = np.array([[0.0, 0.0], [1.0, 2.0]])
    assert sd_to_ip_bound(0.0, A) == 0.0
    assert sd_to_ip_bound(1.0, A) == 1.5
    with pytest.raises(ContractError, match="origin required"):
        sd_to_ip_bound(1.0, np.array([[1e-300, 0.0]]))
    with pytest.raises(ContractError):
        ip_to_sd_bound(-1.0)


@pytest.mark.parametrize("seed", range(100))
def test_conversion_chain(seed):
    rng = np.random.default_rng(1000 + seed)
    n = int(rng.integers(2, 10))
    A = np.vstack([np.zeros(n), rng.standard_normal((int(rng.integers(2, 20)), n))])
    Q = rng.standard_normal((int(rng.integers(1, 10)), n)) / 2
    ip = eta_inner_product(Q, A).value
    sd = eta_squared_distance(Q, A).value
    assert sd <= ip_to_sd_bound(ip) + 1e-12
    assert ip <= sd_to_ip_bound(sd, A) + 1e-12


def test_sparse_ip_bound_values():
    assert sparse_ip_bound(0.0, 7.0) == 0.0
    assert sparse_ip_bound(0.1, 2.0) == pytest.approx(0.4, abs=1e-15)
    with pytest.raises(ContractError):
        sparse_ip_bound(-0.1, 1.0)


def test_rip_identity():
    for s in range(1, 5):
        assert rip_constant_exact(np.eye(4), s).delta_s == 0.0


def test_rip_diag_example():
    r = rip_constant_exact(np.diag([1.0, 0.5]), 1)
    assert r.delta_s == pytest.approx(0.75, abs=1e-15)
    assert r.supports_examined == 2 and r.method == "exact-enumeration"


def test_rip_against_random_lower_bound():
    Q = generate(6, 8, "gaussian", 42).entries
    exact = rip_constant_exact(Q, 2).delta_s
    lower = rip_lower_bound(Q, 2, 100_000, np.random.default_rng(0))
    assert lower <= exact + 1e-12
    assert exact - lower < 0.05


def test_rip_monotone_in_s():
    Q = generate(5, 9, "rademacher", 8)
    d = [rip_constant_exact(Q, s).delta_s for s in range(1, 10)]
    assert all(a <= b + 1e-12 for a, b in zip(d, d[1:]))


def test_rip_cap_and_range():
    with pytest.raises(ContractError, match="cap"):
        rip_constant_exact(np.ones((2, 60)), 30)
    with pytest.raises(ContractError):
        rip_constant_exact(np.eye(3), 4)


def test_audit_report_fields(rng):
    A = rng.standard_normal((10, 4))
    rep = audit(generate(3, 4, "gaussian", 1), A)
    d = rep.to_dict()
    assert list(d) == ["eta_ip", "eta_sd", "argmax_ip", "argmax_sd", "n", "m", "set_size"]
    assert rep.eta_sd <= 4 * rep.eta_ip + 1e-12
    assert (d["n"], d["m"], d["set_size"]) == (4, 3, 10)


def test_gaussian_width_origin():
    g = gaussian_width_mc(np.zeros((1, 5)), 100, 3)
    assert g.mean == 0.0 and g.stderr == 0.0


def test_gaussian_width_pm_e1():
    A = np.vstack([np.eye(6)[0], -np.eye(6)[0]])
    g = gaussian_width_mc(A, 10_000, 17)
    assert abs(g.mean - math.sqrt(2 / math.pi)) < 4 * g.stderr


def test_gaussian_width_homogeneous_and_deterministic(rng):
    A = rng.standard_normal((30, 7))
    g1 = gaussian_width_mc(A, 500, 5)
    g2 = gaussian_width_mc(2 * A, 500, 5)
    assert g2.mean == 2 * g1.mean
    assert gaussian_width_mc(A, 500, 5) == g1
    with pytest.raises(ContractError):
        gaussian_width_mc(A, 0, 5)
