import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from varinterp import (
    AtomFunction,
    CapacityError,
    ConfigError,
    Couple,
    DomainError,
    ExponentFunction,
    HaarGrid,
    LinearOperatorSpec,
    NormSpec,
    apply_operator,
    decompose,
    j_functional,
    k_brute_force,
    k_functional,
    k_functional_many,
    k_truncation_oracle,
    kj_inequality_check,
    norm_intersection,
    norm_sum,
    operator_bound_check,
    reverse,
)


LL = Couple.l1_linf()


def test_weighted_seq_validation():
    with pytest.raises(ConfigError):
        Couple.weighted_seq([1.0, -1.0], [1.0, 1.0])
    with pytest.raises(ConfigError):
        Couple.weighted_seq([1.0], [1.0, 1.0])


def test_weighted_norms():
    c = Couple.weighted_seq([1.0, 2.0], [3.0, 0.5])
    f = np.array([1.0, -2.0])
    assert c.norm0(f) == pytest.approx(1.0 + 4.0)
    assert c.norm1(f) == pytest.approx(3.0 + 1.0)


def test_l1_linf_norms_on_atoms():
    f = AtomFunction([3.0], [2.0])
    assert LL.norm0(f) == pytest.approx(6.0)  # L1
    assert LL.norm1(f) == pytest.approx(3.0)  # Linf
    assert norm_intersection(LL, f) == pytest.approx(6.0)


def test_sum_and_intersection_on_identical_couple():
    c = Couple.weighted_seq([1.0, 1.0], [1.0, 1.0])
    f = np.array([1.0, 1.0])
    assert norm_sum(c, f) == pytest.approx(2.0)
    assert norm_intersection(c, f) == pytest.approx(2.0)


def test_k_functional_worked_examples():
    # step of height 3 on measure 2: integral of min over truncations
    f = AtomFunction([3.0], [2.0])
    assert k_functional(LL, 1.0, f) == pytest.approx(3.0)
    assert k_functional(LL, 2.0, f) == pytest.approx(6.0)
    assert k_functional(LL, 5.0, f) == pytest.approx(6.0)
    # two-coordinate weighted couple
    c = Couple.weighted_seq([1.0, 1.0], [1.0, 4.0])
    f = np.array([1.0, 1.0])
    assert k_functional(c, 2.0, f) == pytest.approx(2.0)
    assert k_functional(c, 0.1, f) == pytest.approx(0.5)


def test_k_functional_zero_and_domain():
    assert k_functional(LL, 3.0, AtomFunction([0.0], [1.0])) == 0.0
    c = Couple.weighted_seq([1.0], [1.0])
    assert k_functional(c, 0.5, np.array([0.0])) == 0.0
    with pytest.raises(DomainError):
        k_functional(c, 0.0, np.array([1.0]))
    with pytest.raises(DomainError):
        k_functional(c, -1.0, np.array([1.0]))


def test_k_endpoint_limits():
    c = Couple.weighted_seq([1.0, 2.0], [3.0, 0.5])
    f = np.array([1.0, -1.0])
    assert k_functional(c, 1e-6, f) / 1e-6 == pytest.approx(c.norm1(f), rel=1e-9)
    assert k_functional(c, 1e6, f) == pytest.approx(c.norm0(f), rel=1e-9)


def test_k_brute_force_matches_weighted_closed_form():
    rng = np.random.default_rng(11)
    for _ in range(25):
        n = int(rng.integers(2, 6))
        c = Couple.weighted_seq(10.0 ** rng.uniform(-1, 1, n),
                                10.0 ** rng.uniform(-1, 1, n))
        f = rng.uniform(-2.0, 2.0, n)
        t = float(10.0 ** rng.uniform(-3, 3))
        closed = k_functional(c, t, f)
        brute = k_brute_force(c, t, f, rng=rng)
        assert brute == pytest.approx(closed, rel=1e-6, abs=1e-12)


def test_k_brute_force_capacity_cap():
    c = Couple.weighted_seq(np.ones(7), np.ones(7))
    with pytest.raises(CapacityError):
        k_brute_force(c, 1.0, np.ones(7))


def test_k_brute_force_details():
    c = Couple.weighted_seq([1.0, 1.0], [1.0, 4.0])
    res = k_brute_force(c, 2.0, np.array([1.0, 1.0]), return_details=True)
    assert res.value == pytest.approx(2.0, rel=1e-8)
    assert not res.cap_hit
    assert res.evaluations > 0
    g = res.minimizer
    assert c.norm0(g) + 2.0 * c.norm1(np.array([1.0, 1.0]) - g) == pytest.approx(
        res.value, rel=1e-9)


def test_truncation_oracle_matches_profile_formula():
    rng = np.random.default_rng(5)
    for _ in range(25):
        n = int(rng.integers(1, 7))
        f = AtomFunction(10.0 ** rng.uniform(-1, 1, n),
                         10.0 ** rng.uniform(-2, 2, n))
        t = float(10.0 ** rng.uniform(-3, 3))
        from_profile = k_functional(LL, t, f)
        from_oracle, level = k_truncation_oracle(f, t)
        assert from_oracle == pytest.approx(from_profile, rel=1e-12, abs=1e-300)
        assert level >= 0.0


def test_decompose_reconstructs_and_achieves_k():
    c = Couple.weighted_seq([1.0, 2.0], [3.0, 0.5])
    f = np.array([1.0, -2.0])
    for t in (0.1, 1.0, 10.0):
        f0, f1 = decompose(c, t, f)
        assert np.allclose(f0 + f1, f)
        cost = c.norm0(f0) + t * c.norm1(f1)
        assert cost == pytest.approx(k_functional(c, t, f), rel=1e-12)
    a0, a1 = decompose(LL, 1.0, AtomFunction([3.0], [2.0]))
    assert LL.norm0(a0) + LL.norm1(a1) == pytest.approx(3.0)


def test_j_functional():
    c = Couple.weighted_seq([1.0, 1.0], [1.0, 1.0])
    assert j_functional(c, 3.0, np.array([1.0, 0.0])) == pytest.approx(3.0)
    f = AtomFunction([3.0], [2.0])
    assert j_functional(LL, 1.0, f) == pytest.approx(6.0)
    with pytest.raises(DomainError):
        j_functional(c, 0.0, np.array([1.0, 0.0]))


def test_k_is_concave_and_monotone_in_t():
    c = Couple.weighted_seq([1.0, 2.0, 0.5], [3.0, 0.5, 1.0])
    f = np.array([1.0, -1.0, 0.5])
    ts = np.geomspace(1e-3, 1e3, 61)
    ks = k_functional_many(c, ts, f)
    assert np.all(np.diff(ks) >= -1e-12)
    slopes = np.diff(ks) / np.diff(ts)
    assert np.all(np.diff(slopes) <= 1e-9)


def test_k_symmetry_identity_exact():
    c = Couple.weighted_seq([1.0, 2.0], [3.0, 0.5])
    f = np.array([1.0, -1.0])
    for t in (0.3, 1.0, 7.0):
        assert k_functional(c, t, f) == pytest.approx(
            t * k_functional(reverse(c), 1.0 / t, f), rel=1e-12)


def test_kj_inequalities():
    c = Couple.weighted_seq([1.0, 1.0], [1.0, 4.0])
    f = np.array([1.0, 1.0])
    rep = kj_inequality_check(c, f, 1.0, 4.0)
    assert rep.passed and rep.worst_margin >= 0.0
    # s = t collapses every comparison to K <= K, J <= J, K <= J
    rep = kj_inequality_check(c, f, 2.0, 2.0)
    assert rep.passed
    assert rep.k_s == rep.k_t and rep.j_s == rep.j_t


def test_finite_generic_norm_specs():
    c = Couple.finite_generic(NormSpec(2.0, [1.0, 1.0, 1.0]),
                              NormSpec(math.inf, [1.0, 2.0, 1.0]))
    f = np.array([1.0, -0.5, 2.0])
    assert c.norm0(f) == pytest.approx(math.sqrt(1.0 + 0.25 + 4.0))
    assert c.norm1(f) == pytest.approx(max(1.0, 1.0, 2.0))
    kv = k_functional(c, 1.5, f)
    assert kv <= c.norm0(f) + 1e-12
    assert kv <= 1.5 * c.norm1(f) + 1e-12


def test_couple_json_round_trip():
    c = Couple.weighted_seq([1.0, 2.0], [3.0, 0.5])
    c2 = Couple.from_json(c.to_json())
    assert np.array_equal(c2.w0, c.w0) and np.array_equal(c2.w1, c.w1)
    assert Couple.from_json(LL.to_json()).kind == "l1_linf"
    g = Couple.finite_generic(NormSpec(2.0, [1.0, 1.0]), NormSpec("inf", [1.0, 2.0]))
    g2 = Couple.from_json(g.to_json())
    f = np.array([0.7, -1.3])
    assert g2.norm0(f) == g.norm0(f) and g2.norm1(f) == g.norm1(f)


def test_operator_exact_bounds_and_application():
    c = Couple.weighted_seq([1.0, 1.0], [1.0, 4.0])
    M = np.array([[0.5, 0.2], [-0.1, 0.8]])
    op = LinearOperatorSpec.from_matrix(M, c)
    # norm of a matrix on l1(w) is the largest weighted column sum
    assert op.bound0 == pytest.approx(1.0)
    assert op.bound1 == pytest.approx(0.9)
    f = np.array([1.0, 1.0])
    assert np.allclose(apply_operator(op, f), M @ f)
    with pytest.raises(ConfigError):
        apply_operator(op, np.ones(3))


def test_operator_bound_check_identity():
    c = Couple.weighted_seq([1.0, 1.0], [1.0, 4.0])
    op = LinearOperatorSpec.from_matrix(np.eye(2), c)
    grid = HaarGrid(16, 32)
    q = ExponentFunction.constant(2.0)
    rep = operator_bound_check(op, c, 0.5, q, np.array([1.0, 1.0]), grid)
    assert rep.passed
    assert rep.lhs == rep.rhs


def test_operator_json_round_trip():
    c = Couple.weighted_seq([1.0, 1.0], [1.0, 4.0])
    op = LinearOperatorSpec.from_matrix(np.array([[0.5, 0.2], [-0.1, 0.8]]), c)
    op2 = LinearOperatorSpec.from_json(op.to_json())
    assert np.array_equal(op2.matrix, op.matrix)
    assert op2.bound0 == op.bound0 and op2.bound1 == op.bound1


def test_reverse_swaps_norms():
    c = Couple.weighted_seq([1.0, 2.0], [3.0, 0.5])
    r = reverse(c)
    f = np.array([1.0, -1.0])
    assert r.norm0(f) == c.norm1(f) and r.norm1(f) == c.norm0(f)
    with pytest.raises(ConfigError):
        reverse(LL)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_k_homogeneity(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    c = Couple.weighted_seq(10.0 ** rng.uniform(-1, 1, n),
                            10.0 ** rng.uniform(-1, 1, n))
    f = rng.uniform(-2.0, 2.0, n)
    t = float(10.0 ** rng.uniform(-2, 2))
    scale = float(10.0 ** rng.uniform(-1, 1))
    assert k_functional(c, t, scale * f) == pytest.approx(
        scale * k_functional(c, t, f), rel=1e-12, abs=1e-300)


@settings(max_examples=30, deadline=None)
@given(st.integers(min_value=0, max_value=2 ** 32 - 1))
def test_kj_inequalities_random(seed):
    rng = np.random.default_rng(seed)
    n = int(rng.integers(2, 5))
    c = Couple.weighted_seq(10.0 ** rng.uniform(-1, 1, n),
                            10.0 ** rng.uniform(-1, 1, n))
    f = rng.uniform(-2.0, 2.0, n)
    s, t = (float(10.0 ** rng.uniform(-2, 2)) for _ in range(2))
    assert kj_inequality_check(c, f, s, t).passed
