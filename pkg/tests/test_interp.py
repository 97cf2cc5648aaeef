import math

import numpy as np
import pytest

from varinterp import (
    AtomFunction,
    ConfigError,
    Couple,
    ExponentFunction,
    HaarGrid,
    JRepresentation,
    KMethodParams,
    class_membership_check,
    construct_j_representation,
    density_check,
    embedding_checks,
    j_norm_discrete,
    k_norm_continuous,
    k_norm_discrete,
    k_norm_sup,
    kj_equivalence_check,
    lorentz_identification_check,
    norm_intersection,
    proposition_checks,
    reiteration_check,
)
from varinterp.interp import (
    prop_equal_limits,
    prop_exponent_monotone,
    prop_identical_couple,
    prop_reversal_symmetry,
    prop_theta_monotone,
)


GRID = HaarGrid(16, 32)
Q2 = ExponentFunction.constant(2.0)
LL = Couple.l1_linf()
CHI = AtomFunction([1.0], [1.0])
WS = Couple.weighted_seq([1.0, 2.0], [3.0, 0.5])
F2 = np.array([1.0, -1.0])


def params(theta=0.5, q=Q2, grid=GRID):
    return KMethodParams(theta, q, grid)


def test_k_method_params_validation():
    with pytest.raises(ConfigError):
        KMethodParams(0.0, Q2, GRID)
    with pytest.raises(ConfigError):
        KMethodParams(1.0, Q2, GRID)


def test_k_norm_continuous_indicator_spot_value():
    # K(t, chi) = min(t, 1), theta = 1/2, q = 2: the squared integrand is
    # t*1_{t<1} + 1/t*1_{t>1}, modular 2, norm sqrt(2)
    got = k_norm_continuous(LL, CHI, params())
    assert got == pytest.approx(math.sqrt(2.0), abs=1e-3)


def test_k_norm_continuous_zero():
    zero = AtomFunction([0.0], [1.0])
    assert k_norm_continuous(LL, zero, params()) == 0.0


def test_k_norm_discrete_indicator_exact():
    # alpha_v = min(2^v, 1): lower block sums 2^v over v in [-V, 0],
    # upper block sums 2^{-v} over v in [1, V], both under sqrt
    V = 16
    got = k_norm_discrete(LL, CHI, 0.5, 2.0, 2.0, V)
    expect = math.sqrt(2.0 - 2.0 ** -V) + math.sqrt(1.0 - 2.0 ** -V)
    assert got == pytest.approx(expect, rel=1e-14)


def test_k_norm_sup_indicator():
    # sup min(t,1)/sqrt(t) = 1 at t = 1; nodes sit du/2 away from t = 1 in
    # log scale, so the sampled sup is exp(-du/4)
    got = k_norm_sup(LL, CHI, 0.5, GRID)
    assert got == pytest.approx(math.exp(-GRID.du / 4.0), rel=1e-12)
    assert got == pytest.approx(1.0, abs=6e-3)
    # endpoint thetas recover the endpoint norms
    assert k_norm_sup(LL, CHI, 0.0, GRID) == pytest.approx(1.0)  # L1 mass
    assert k_norm_sup(LL, CHI, 1.0, GRID) == pytest.approx(1.0)  # sup height
    with pytest.raises(ConfigError):
        k_norm_sup(LL, CHI, 1.5, GRID)


def test_k_norm_homogeneity():
    base = k_norm_continuous(WS, F2, params())
    assert k_norm_continuous(WS, 10.0 * F2, params()) == pytest.approx(
        10.0 * base, rel=1e-8)
    assert k_norm_continuous(WS, 4.0 * F2, params()) == 4.0 * base
    based = k_norm_discrete(WS, F2, 0.5, 2.0, 2.0, 16)
    assert k_norm_discrete(WS, 0.1 * F2, 0.5, 2.0, 2.0, 16) == pytest.approx(
        0.1 * based, rel=1e-8)


def test_embedding_checks_pass_and_scale():
    rep = embedding_checks(WS, F2, params())
    assert rep.passed
    assert rep.growth_margin >= 0.0
    rep10 = embedding_checks(WS, 10.0 * F2, params())
    assert rep10.c_to_sum == pytest.approx(rep.c_to_sum, rel=1e-9)
    assert rep10.c_from_intersection == pytest.approx(rep.c_from_intersection,
                                                      rel=1e-9)


def test_j_representation_telescopes_and_bounds():
    jrep = construct_j_representation(WS, F2, 16)
    assert jrep.j_bound_ok and jrep.worst_ratio <= 3.03
    recon = sum(jrep.term(v) for v in range(-16, 17))
    assert np.array_equal(recon, F2)

    jrep = construct_j_representation(LL, CHI, 12)
    assert jrep.j_bound_ok
    recon = sum(t.total_l1 for t in jrep.terms)
    assert recon == pytest.approx(CHI.total_l1, rel=1e-12)


def test_j_representation_single_transition():
    # with w1 huge, the optimal decomposition flips from g=0 to g=f in one
    # step, leaving a single dominant term
    c = Couple.weighted_seq([1.0, 1.0], [1e6, 1e6])
    f = np.array([1.0, 0.0])
    jrep = construct_j_representation(c, f, 8)
    norms = [c.norm0(u) for u in jrep.terms]
    assert sum(1 for x in norms if x > 1e-9) == 1


def test_j_norm_discrete_single_term():
    u0 = F2.copy()
    zero = np.zeros(2)
    V = 3
    terms = [zero] * V + [u0] + [zero] * V
    j_values = np.array([0.0] * V + [norm_intersection(WS, u0)] + [0.0] * V)
    rep = JRepresentation(V, terms, np.zeros(2 * V + 1), j_values,
                          np.zeros(2 * V + 1), 0.0, True)
    got = j_norm_discrete(WS, rep, 0.5, 2.0, 2.0)
    assert got == pytest.approx(norm_intersection(WS, u0), rel=1e-14)


def test_kj_equivalence_check():
    rep = kj_equivalence_check(WS, F2, params())
    assert rep.passed
    assert rep.worst_term_ratio <= 3.03
    assert rep.ratio_j_over_k > 0.0 and math.isfinite(rep.forward_constant)
    # ratio is scale invariant
    rep4 = kj_equivalence_check(WS, 4.0 * F2, params())
    assert rep4.ratio_j_over_k == pytest.approx(rep.ratio_j_over_k, rel=1e-9)


def test_density_residuals_shrink():
    rep = density_check(WS, F2, params())
    assert rep.passed
    assert rep.non_increasing
    assert rep.final_ratio <= 1e-3
    assert rep.truncations[-1] == GRID.V - 2
    rep = density_check(LL, AtomFunction([3.0, 1.0], [0.5, 1.0]), params())
    assert rep.passed


def test_prop_exponent_monotone():
    r4 = ExponentFunction.constant(4.0)
    rep = prop_exponent_monotone(WS, F2, 0.5, Q2, r4, GRID)
    assert rep.passed
    assert rep.values["ratio_r"] <= rep.values["ratio_sup"] * 10  # both finite
    with pytest.raises(ConfigError):
        prop_exponent_monotone(WS, F2, 0.5, r4, Q2, GRID)


def test_prop_reversal_symmetry_constant_q():
    rep = prop_reversal_symmetry(WS, F2, 0.3, Q2, GRID)
    assert rep.passed
    assert abs(rep.values["continuous_ratio"] - 1.0) <= 1e-9


def test_prop_reversal_symmetry_variable_q_equal_limits():
    qv = ExponentFunction.from_expression("2 + 0.5*min(t, 1/t)",
                                          p_at_zero=2.0, p_at_infinity=2.0)
    rep = prop_reversal_symmetry(WS, F2, 0.3, qv, GRID)
    assert rep.passed
    assert abs(rep.values["continuous_ratio"] - 1.0) <= 1e-9
    qbad = ExponentFunction.from_expression("2 + 1/log(e + 1/t)",
                                            p_at_zero=2.0, p_at_infinity=3.0)
    with pytest.raises(ConfigError):
        prop_reversal_symmetry(WS, F2, 0.3, qbad, GRID)


def test_prop_equal_limits_discrete_exact():
    qa = ExponentFunction.from_expression("1.8 + 0.7/log(e + 1/t)",
                                          p_at_zero=1.8, p_at_infinity=2.5)
    qb = ExponentFunction.from_expression("1.8 + 0.7*(t/(1 + t))",
                                          p_at_zero=1.8, p_at_infinity=2.5)
    rep = prop_equal_limits(WS, F2, 0.5, qa, qb, grid=GRID)
    assert rep.passed
    assert rep.values["discrete_a"] == rep.values["discrete_b"]
    # the continuous norms see the differing middles
    assert rep.values["continuous_a"] != rep.values["continuous_b"]


def test_prop_theta_monotone_ordered_couple():
    ordered = Couple.weighted_seq([1.0, 2.0], [2.0, 8.0])
    rep = prop_theta_monotone(ordered, F2, 0.3, 0.7, Q2, GRID)
    assert rep.passed
    assert rep.values["ratio"] > 0.0


def test_prop_identical_couple_closed_form():
    w = np.array([1.0, 3.0])
    grid = HaarGrid(8, 16)
    rep = prop_identical_couple(w, np.array([2.0, -1.0]), 0.5, Q2, grid)
    assert rep.passed
    expect = math.sqrt(2.0 * (1.0 - 2.0 ** -8))
    assert rep.values["expected_ratio"] == pytest.approx(expect, rel=1e-14)
    assert rep.values["ratio"] == pytest.approx(expect, rel=2e-3)
    # the ratio does not depend on f
    rep2 = prop_identical_couple(w, np.array([0.3, 0.9]), 0.5, Q2, grid)
    assert rep2.values["ratio"] == pytest.approx(rep.values["ratio"], rel=1e-9)


def test_proposition_checks_umbrella():
    reports = proposition_checks(WS, F2)
    assert "exponent_monotone" in reports and "reversal_symmetry" in reports
    assert all(rep.passed for rep in reports.values())
    ident = Couple.weighted_seq([1.0, 3.0], [1.0, 3.0])
    reports = proposition_checks(ident, F2)
    assert "identical_couple" in reports and "theta_monotone" in reports
    assert all(rep.passed for rep in reports.values())


def test_reiteration_smoke():
    c = Couple.weighted_seq([1.0, 2.0], [3.0, 0.5])
    rep = reiteration_check(c, F2, 0.25, 0.75, 0.5, Q2,
                            inner_grid=HaarGrid(8, 4), outer_V=6,
                            base_grid=HaarGrid(12, 16), refine=False,
                            resolution=1e-6)
    assert rep.passed
    assert rep.theta == pytest.approx(0.5)
    assert math.isfinite(rep.constant) and rep.constant >= 1.0


def test_reiteration_validation():
    with pytest.raises(ConfigError):
        reiteration_check(WS, F2, 0.75, 0.25, 0.5, Q2)
    with pytest.raises(ConfigError):
        reiteration_check(WS, F2, 0.25, 0.75, 0.0, Q2)


def test_lorentz_identification_indicator():
    rep = lorentz_identification_check(CHI, 0.5, Q2, GRID)
    assert rep.passed
    assert rep.p == pytest.approx(2.0)
    assert rep.ratio == pytest.approx(math.sqrt(2.0), abs=2e-3)
    # exact scale invariance for power-of-two scalings
    rep4 = lorentz_identification_check(CHI.scaled(4.0), 0.5, Q2, GRID)
    assert rep4.ratio == rep.ratio


def test_lorentz_identification_needs_equal_limits():
    q = ExponentFunction.from_expression("2 + 1/log(e + 1/t)",
                                         p_at_zero=2.0, p_at_infinity=3.0)
    with pytest.raises(ConfigError):
        lorentz_identification_check(CHI, 0.5, q, GRID)


def test_class_membership():
    rep = class_membership_check(WS, F2, params())
    assert rep.passed
    assert rep.k_class_constant > 0.0 and rep.j_class_constant > 0.0
    rep = class_membership_check(LL, AtomFunction([2.0], [0.5]), params())
    assert rep.passed
