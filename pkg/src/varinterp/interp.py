"""Real interpolation norms with variable exponents, and their checks.

The continuous K-method norm of f in a couple (A0, A1) is

    ||f||_{th, q(.)} = || t^{-th} K(t, f) ||_{L^{q(.)}((0, oo), dt/t)}

discretized on a HaarGrid. The discrete variant replaces the integral by
the two-sided weighted sum over K(2^v, f), v = -V..V, with the exponent
q(0) on v <= 0 and q_inf on v >= 1; the J-method variant does the same
with J(2^v, u_v) for a representation f = sum u_v built from near-optimal
K-decompositions by telescoping.

The remaining entry points are numerical checks: each returns a small
report dataclass with the computed constants and a `passed` flag, leaving
thresholds visible at the call site.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .couples import (
    Couple,
    decompose,
    j_functional,
    k_brute_force,
    k_functional,
    k_functional_many,
    reverse,
)
from .errors import CapacityError, ConfigError, ConstructionError
from .exponents import ExponentFunction, essential_bounds
from .rearrange import AtomFunction, lorentz_norm
from .varleb import (
    HaarGrid,
    LambdaNormParams,
    SampledFunction,
    TwoSidedSequence,
    lambda_norm,
    luxemburg_norm,
)

__all__ = [
    "KMethodParams",
    "k_norm_continuous",
    "k_norm_discrete",
    "k_norm_sup",
    "embedding_checks",
    "EmbeddingReport",
    "JRepresentation",
    "construct_j_representation",
    "j_norm_discrete",
    "kj_equivalence_check",
    "KJEquivalenceReport",
    "density_check",
    "DensityReport",
    "prop_exponent_monotone",
    "prop_reversal_symmetry",
    "prop_equal_limits",
    "prop_theta_monotone",
    "prop_identical_couple",
    "proposition_checks",
    "reiteration_check",
    "ReiterationReport",
    "lorentz_identification_check",
    "LorentzIdentificationReport",
    "class_membership_check",
    "ClassMembershipReport",
]


@dataclass(frozen=True)
class KMethodParams:
    """Interpolation parameters: theta in (0, 1), exponent q, sampling grid."""

    theta: float
    q: object
    grid: HaarGrid

    def __post_init__(self):
        if not 0.0 < self.theta < 1.0:
            raise ConfigError("theta must lie in (0, 1)")


def k_norm_continuous(couple, f, params):
    """The K-method norm, via the Luxemburg norm of t^{-theta} K(t, f)."""
    ts = params.grid.nodes
    kvals = k_functional_many(couple, ts, f)
    phi = SampledFunction(params.grid, ts ** (-params.theta) * kvals)
    return luxemburg_norm(phi, params.q)


def k_norm_discrete(couple, f, theta, q_zero, q_infinity, V):
    """Two-sided dyadic K-method norm with limit exponents only."""
    ts = 2.0 ** np.arange(-V, V + 1).astype(float)
    alpha = k_functional_many(couple, ts, f)
    return lambda_norm(TwoSidedSequence(V, alpha),
                       LambdaNormParams(theta, q_zero, q_infinity))


def k_norm_sup(couple, f, theta, grid):
    """sup_t t^{-theta} K(t, f) over the grid; theta may be 0 or 1 here."""
    if not 0.0 <= theta <= 1.0:
        raise ConfigError("theta must lie in [0, 1] for the sup norm")
    ts = np.concatenate([[grid.t_min], grid.nodes, [grid.t_max]])
    kvals = k_functional_many(couple, ts, f)
    return float(np.max(ts ** (-theta) * kvals))


@dataclass(frozen=True)
class EmbeddingReport:
    k_norm: float
    gamma: float
    growth_margin: float
    sup_ratio: float
    c_from_intersection: float
    c_to_sum: float
    passed: bool


def embedding_checks(couple, f, params, *, n_probes=20, slack=1.01):
    """Pointwise growth bound and the embedding chain constants.

    Verifies K(s, f) <= slack * gamma * s^theta * ||f|| at log-spaced probes
    with gamma = ((1 - theta) q+)^{1/q+}, and records the constants of
    A0 cap A1 -> (A0, A1)_{th,q} -> A0 + A1, namely ||f|| / J(1, f) and
    K(1, f) / ||f||.
    """
    knorm = k_norm_continuous(couple, f, params)
    theta = params.theta
    _, q_plus = essential_bounds(params.q, params.grid)
    gamma = ((1.0 - theta) * q_plus) ** (1.0 / q_plus)
    ss = np.geomspace(params.grid.t_min, params.grid.t_max, n_probes)
    kvals = k_functional_many(couple, ss, f)
    ratios = kvals / ss ** theta
    sup_ratio = float(np.max(ratios))
    if knorm == 0.0:
        growth_margin = 0.0 if sup_ratio == 0.0 else -math.inf
        c_int = 0.0
        c_sum = 0.0
    else:
        growth_margin = (slack * gamma * knorm - sup_ratio) / (gamma * knorm)
        j_one = j_functional(couple, 1.0, f)
        c_int = knorm / j_one if j_one > 0 else 0.0
        c_sum = k_functional(couple, 1.0, f) / knorm
    passed = growth_margin >= 0.0 and math.isfinite(c_int) and math.isfinite(c_sum)
    return EmbeddingReport(knorm, gamma, growth_margin, sup_ratio,
                           c_int, c_sum, passed)


# ---------------------------------------------------------------------------
# J-method representations
# ---------------------------------------------------------------------------


def _subtract(couple, a, b):
    if couple.kind == "l1_linf":
        diff = a.values - b.values
        scale = max(float(np.max(np.abs(a.values), initial=0.0)), 1e-300)
        if np.any(diff < -1e-9 * scale):
            raise ConstructionError("telescoping produced a negative part")
        return AtomFunction(np.maximum(diff, 0.0), a.masses)
    return np.asarray(a, dtype=float) - np.asarray(b, dtype=float)


@dataclass(frozen=True)
class JRepresentation:
    """A finite J-method representation f = sum_{v=-V}^{V} u_v."""

    V: int
    terms: list
    k_values: np.ndarray
    j_values: np.ndarray
    ratios: np.ndarray
    worst_ratio: float
    j_bound_ok: bool

    def term(self, v):
        return self.terms[v + self.V]


def construct_j_representation(couple, f, V, *, ratio_cap=3.03):
    """Build f = sum u_v by telescoping near-optimal K-decompositions.

    With f = f0_v + f1_v the decomposition at t = 2^v, the terms are
    u_{-V} = f0_{-V+1}, u_v = f0_{v+1} - f0_v, and u_V = f - f0_V, which sum
    to f exactly. For exact decompositions J(2^v, u_v) <= 3 K(2^v, f); the
    report records the worst observed ratio against ratio_cap.
    """
    if V < 1:
        raise ConfigError("V must be >= 1")
    vs = np.arange(-V, V + 1)
    ts = 2.0 ** vs.astype(float)
    k_values = np.asarray(k_functional_many(couple, ts, f), dtype=float)

    parts = {}
    for v in range(-V + 1, V + 1):
        f0, f1 = decompose(couple, float(2.0 ** v), f)
        cost = couple.norm0(f0) + 2.0 ** v * couple.norm1(f1)
        reference = k_values[v + V]
        if cost > reference * (1.0 + 1e-3) + 1e-12:
            raise ConstructionError(
                f"decomposition at t=2^{v} costs {cost:.6g} > K={reference:.6g}")
        parts[v] = f0

    terms = [parts[-V + 1]]
    for v in range(-V + 1, V):
        terms.append(_subtract(couple, parts[v + 1], parts[v]))
    terms.append(_subtract(couple, f, parts[V]))

    j_values = np.array([j_functional(couple, float(2.0 ** v), u)
                         for v, u in zip(vs, terms)])
    with np.errstate(invalid="ignore", divide="ignore"):
        ratios = np.where(k_values > 0, j_values / np.maximum(k_values, 1e-300), 0.0)
    worst = float(np.max(ratios)) if len(ratios) else 0.0
    return JRepresentation(V, terms, k_values, j_values, ratios, worst,
                           bool(worst <= ratio_cap))


def j_norm_discrete(couple, representation, theta, q_zero, q_infinity):
    """Discrete J-method norm of a representation."""
    return lambda_norm(TwoSidedSequence(representation.V, representation.j_values),
                       LambdaNormParams(theta, q_zero, q_infinity))


@dataclass(frozen=True)
class KJEquivalenceReport:
    k_discrete: float
    j_discrete: float
    k_continuous: float
    ratio_j_over_k: float
    forward_constant: float
    worst_term_ratio: float
    passed: bool


def kj_equivalence_check(couple, f, params, *, V=None):
    """Compare the discrete J- and K-method norms on the same element.

    The J-norm of the telescoped representation dominates the K-norm up to
    the termwise factor 3; the forward direction (continuous K-norm against
    the discrete J-norm) is recorded as forward_constant.
    """
    if V is None:
        V = params.grid.V
    theta = params.theta
    q0 = params.q.p_at_zero
    qi = params.q.p_at_infinity
    rep = construct_j_representation(couple, f, V)
    kd = k_norm_discrete(couple, f, theta, q0, qi, V)
    jd = j_norm_discrete(couple, rep, theta, q0, qi)
    kc = k_norm_continuous(couple, f, params)
    ratio = jd / kd if kd > 0 else 0.0
    forward = kc / jd if jd > 0 else 0.0
    passed = rep.j_bound_ok and (kd == 0.0 or
                                 (math.isfinite(ratio) and math.isfinite(forward)))
    return KJEquivalenceReport(kd, jd, kc, ratio, forward, rep.worst_ratio, passed)


@dataclass(frozen=True)
class DensityReport:
    truncations: list
    residual_ratios: list
    non_increasing: bool
    final_ratio: float
    passed: bool


def density_check(couple, f, params, N_list=None, *, V=None):
    """Norm convergence of the truncated J-representation to f.

    The residual after keeping terms |v| <= N is the sum of the tail terms;
    its K-method norm relative to ||f|| should decrease in N and be small
    once N approaches V.
    """
    if V is None:
        V = params.grid.V
    if N_list is None:
        N_list = list(range(2, V - 1, 2)) + [V - 2]
    truncations = sorted(set(N_list))
    rep = construct_j_representation(couple, f, V)
    knorm = k_norm_continuous(couple, f, params)
    ratios = []
    for n_keep in truncations:
        tail = [rep.term(v) for v in range(-V, V + 1) if abs(v) > n_keep]
        if not tail:
            ratios.append(0.0)
            continue
        if couple.kind == "l1_linf":
            values = np.sum([u.values for u in tail], axis=0)
            residual = AtomFunction(values, f.masses)
        else:
            residual = np.sum(tail, axis=0)
        rk = k_norm_continuous(couple, residual, params)
        ratios.append(rk / knorm if knorm > 0 else 0.0)
    diffs = np.diff(ratios)
    non_increasing = bool(np.all(diffs <= 1e-12))
    final_ratio = ratios[-1]
    passed = non_increasing and final_ratio <= 1e-3
    return DensityReport(list(truncations), ratios, non_increasing,
                         final_ratio, passed)


# ---------------------------------------------------------------------------
# Structural propositions
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PropositionReport:
    name: str
    values: dict
    passed: bool


def prop_exponent_monotone(couple, f, theta, q, r, grid):
    """Raising the integrability exponent pointwise shrinks the norm scale.

    Requires q <= r on the grid. Records ||f||_r / ||f||_q and the sup-norm
    ratio; both must be finite for nonzero f.
    """
    q_vals = np.asarray(q(grid.nodes), dtype=float)
    r_vals = np.asarray(r(grid.nodes), dtype=float)
    if np.any(q_vals > r_vals + 1e-12):
        raise ConfigError("prop_exponent_monotone needs q <= r on the grid")
    norm_q = k_norm_continuous(couple, f, KMethodParams(theta, q, grid))
    norm_r = k_norm_continuous(couple, f, KMethodParams(theta, r, grid))
    sup_norm = k_norm_sup(couple, f, theta, grid)
    if norm_q == 0.0:
        ratio_r = ratio_sup = 0.0
    else:
        ratio_r = norm_r / norm_q
        ratio_sup = sup_norm / norm_q
    passed = math.isfinite(ratio_r) and math.isfinite(ratio_sup)
    return PropositionReport("exponent_monotone",
                             {"norm_q": norm_q, "norm_r": norm_r,
                              "sup_norm": sup_norm, "ratio_r": ratio_r,
                              "ratio_sup": ratio_sup}, passed)


def prop_reversal_symmetry(couple, f, theta, q, grid, *, V=8):
    """Swapping the couple, theta -> 1 - theta and t -> 1/t preserves norms.

    Requires q(0) = q_inf. On a symmetric grid the substitution u -> -u
    maps one modular onto the other exactly, so the continuous norms agree
    to solver tolerance. The discrete norms swap blocks up to the v = 0
    boundary term; their ratio is recorded but only sanity-bounded.
    """
    if abs(q.p_at_zero - q.p_at_infinity) > 1e-12:
        raise ConfigError("reversal symmetry needs q(0) = q_inf")
    rev = reverse(couple)
    forward = k_norm_continuous(couple, f, KMethodParams(theta, q, grid))

    def q_reflected(ts):
        return np.asarray(q(1.0 / np.asarray(ts, dtype=float)), dtype=float)

    backward = k_norm_continuous(rev, f, KMethodParams(1.0 - theta, q_reflected, grid))
    ratio = backward / forward if forward > 0 else 1.0

    q0 = q.p_at_zero
    qi = q.p_at_infinity
    kd_fwd = k_norm_discrete(couple, f, theta, q0, qi, V)
    kd_rev = k_norm_discrete(rev, f, 1.0 - theta, qi, q0, V)
    d_ratio = kd_rev / kd_fwd if kd_fwd > 0 else 1.0
    passed = abs(ratio - 1.0) <= 1e-9 and 0.25 <= d_ratio <= 4.0
    return PropositionReport("reversal_symmetry",
                             {"continuous_forward": forward,
                              "continuous_backward": backward,
                              "continuous_ratio": ratio,
                              "discrete_ratio": d_ratio}, passed)


def prop_equal_limits(couple, f, theta, q_a, q_b, *, V=8, grid=None):
    """Discrete norms coincide whenever the exponents share both limits.

    The discrete norm reads only q(0) and q_inf, so two exponents that
    agree there give identical values even when they differ in between;
    when a grid is supplied the (generally different) continuous norms are
    recorded alongside for contrast.
    """
    if abs(q_a.p_at_zero - q_b.p_at_zero) > 1e-12 or \
            abs(q_a.p_at_infinity - q_b.p_at_infinity) > 1e-12:
        raise ConfigError("prop_equal_limits needs matching limit exponents")
    d_a = k_norm_discrete(couple, f, theta, q_a.p_at_zero, q_a.p_at_infinity, V)
    d_b = k_norm_discrete(couple, f, theta, q_b.p_at_zero, q_b.p_at_infinity, V)
    values = {"discrete_a": d_a, "discrete_b": d_b}
    if grid is not None:
        c_a = k_norm_continuous(couple, f, KMethodParams(theta, q_a, grid))
        c_b = k_norm_continuous(couple, f, KMethodParams(theta, q_b, grid))
        values["continuous_a"] = c_a
        values["continuous_b"] = c_b
        values["continuous_ratio"] = c_b / c_a if c_a > 0 else 1.0
    passed = d_a == d_b
    return PropositionReport("equal_limits", values, passed)


def prop_theta_monotone(couple, f, theta_small, theta_large, q, grid):
    """For an ordered couple (norm0 <= norm1), larger theta gives the
    smaller space: ||f||_{theta_small} stays within a bounded multiple of
    ||f||_{theta_large}. Also confirms K(t, f) is flat for t >= 1."""
    if not theta_small <= theta_large:
        raise ConfigError("need theta_small <= theta_large")
    if couple.kind == "weighted_seq" and np.any(couple.w0 > couple.w1):
        raise ConfigError("prop_theta_monotone needs an ordered couple (w0 <= w1)")
    n_small = k_norm_continuous(couple, f, KMethodParams(theta_small, q, grid))
    n_large = k_norm_continuous(couple, f, KMethodParams(theta_large, q, grid))
    k_one = k_functional(couple, 1.0, f)
    k_top = k_functional(couple, grid.t_max, f)
    flat = abs(k_top - k_one) <= 1e-9 * max(k_one, 1e-300)
    ratio = n_small / n_large if n_large > 0 else 0.0
    passed = flat and math.isfinite(ratio)
    return PropositionReport("theta_monotone",
                             {"norm_small_theta": n_small,
                              "norm_large_theta": n_large,
                              "ratio": ratio, "k_flat_above_one": flat}, passed)


def prop_identical_couple(weights, f, theta, q, grid):
    """Interpolating a space with itself returns the space.

    K(t, f) = min(1, t) ||f|| exactly, so the norm ratio equals
    || t^{-theta} min(1, t) ||_{q(.)} independently of f. For constant q
    the truncated modular has the closed form
    (1 - 2^{-V(1-th)q})/((1-th)q) + (1 - 2^{-V th q})/(th q), checked to
    quadrature accuracy.
    """
    couple = Couple.weighted_seq(weights, weights)
    base = couple.norm0(f)
    norm = k_norm_continuous(couple, f, KMethodParams(theta, q, grid))
    ratio = norm / base if base > 0 else 0.0
    values = {"base_norm": base, "k_method_norm": norm, "ratio": ratio}
    passed = base == 0.0 or (math.isfinite(ratio) and ratio > 0)
    if q.is_constant and base > 0:
        qc = q.p_at_zero
        V = grid.V
        m0 = (1.0 - 2.0 ** (-V * (1.0 - theta) * qc)) / ((1.0 - theta) * qc)
        m1 = (1.0 - 2.0 ** (-V * theta * qc)) / (theta * qc)
        expected = (m0 + m1) ** (1.0 / qc)
        values["expected_ratio"] = expected
        passed = passed and abs(ratio - expected) <= 2e-3 * expected
    return PropositionReport("identical_couple", values, passed)


def proposition_checks(couple, f, params=None, *, V=8):
    """Run every structural proposition applicable to the couple kind."""
    if params is None:
        params = KMethodParams(0.5, ExponentFunction.constant(2.0), HaarGrid(8, 16))
    theta, q, grid = params.theta, params.q, params.grid

    def bumped(ts):
        return np.asarray(q(ts), dtype=float) + 1.0

    reports = {}
    reports["exponent_monotone"] = prop_exponent_monotone(
        couple, f, theta, q, bumped, grid)
    if couple.is_vector_couple:
        reports["reversal_symmetry"] = prop_reversal_symmetry(
            couple, f, theta, q, grid, V=V)
    if q.is_constant:
        q_wobble = ExponentFunction.from_expression(
            f"{q.p_at_zero} + min(t, 1/t)",
            p_at_zero=q.p_at_zero, p_at_infinity=q.p_at_infinity)
        reports["equal_limits"] = prop_equal_limits(
            couple, f, theta, q, q_wobble, V=V, grid=grid)
    if couple.kind == "weighted_seq" and np.all(couple.w0 <= couple.w1):
        reports["theta_monotone"] = prop_theta_monotone(
            couple, f, min(theta, 0.75) * 0.5, theta, q, grid)
    if couple.kind == "weighted_seq" and np.array_equal(couple.w0, couple.w1):
        reports["identical_couple"] = prop_identical_couple(
            couple.w0, f, theta, q, grid)
    return reports


# ---------------------------------------------------------------------------
# Reiteration
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReiterationReport:
    theta: float
    base_norm: float
    outer_norm: float
    constant: float
    refined_constant: float | None
    drift: float | None
    passed: bool


def reiteration_check(couple, f, theta0, theta1, eta, q, q0=None, q1=None, *,
                      inner_grid=None, outer_V=10, base_grid=None,
                      refine=True, resolution=1e-7):
    """Interpolate between two interpolation spaces of the same couple.

    Builds X_i = (A0, A1)_{theta_i, q_i} as a derived generic couple whose
    norms are the continuous K-method norms on an inner grid, evaluates the
    outer discrete norm of f in (X_0, X_1)_{eta, q} by brute-force K, and
    compares with the direct norm at theta = (1-eta) theta0 + eta theta1.
    The outer exponent q is treated as a free input; no relation between q
    and (q0, q1) is enforced. The equivalence constant should be stable
    when the inner grid is refined.
    """
    if not couple.is_vector_couple:
        raise ConfigError("reiteration_check needs a finite-dimensional couple")
    f = np.asarray(f, dtype=float)
    if len(f) > 4:
        raise CapacityError("reiteration supports dimension <= 4")
    if not 0.0 < eta < 1.0 or not 0.0 < theta0 < theta1 < 1.0:
        raise ConfigError("need 0 < theta0 < theta1 < 1 and eta in (0, 1)")
    if q0 is None:
        q0 = q
    if q1 is None:
        q1 = q
    if inner_grid is None:
        inner_grid = HaarGrid(12, 8)
    if base_grid is None:
        base_grid = HaarGrid(16, 32)
    theta = (1.0 - eta) * theta0 + eta * theta1

    def outer_norm_on(grid_in):
        def make_norm(theta_i, q_i):
            def nrm(g):
                if not np.any(g):
                    return 0.0
                return k_norm_continuous(couple, g,
                                         KMethodParams(theta_i, q_i, grid_in))
            return nrm

        derived = Couple.finite_generic(make_norm(theta0, q0), make_norm(theta1, q1))
        js = np.arange(-outer_V, outer_V + 1)
        alpha = np.empty(len(js))
        warm = None
        for idx, j in enumerate(js):
            res = k_brute_force(derived, float(2.0 ** j), f,
                                resolution=resolution, n_random_starts=1,
                                extra_starts=() if warm is None else (warm,),
                                return_details=True)
            alpha[idx] = res.value
            warm = res.minimizer
        return lambda_norm(TwoSidedSequence(outer_V, alpha),
                           LambdaNormParams(eta, q.p_at_zero, q.p_at_infinity))

    base = k_norm_continuous(couple, f, KMethodParams(theta, q, base_grid))
    outer = outer_norm_on(inner_grid)
    ratio = outer / base if base > 0 else 1.0
    constant = max(ratio, 1.0 / ratio) if ratio > 0 else math.inf

    refined_constant = None
    drift = None
    if refine:
        outer2 = outer_norm_on(inner_grid.refined(spo_factor=2))
        ratio2 = outer2 / base if base > 0 else 1.0
        refined_constant = max(ratio2, 1.0 / ratio2) if ratio2 > 0 else math.inf
        drift = abs(refined_constant - constant) / constant
    passed = math.isfinite(constant) and (drift is None or drift <= 0.1)
    return ReiterationReport(theta, base, outer, constant,
                             refined_constant, drift, passed)


# ---------------------------------------------------------------------------
# Lorentz identification and membership classes
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class LorentzIdentificationReport:
    theta: float
    p: float
    k_method_norm: float
    lorentz_norm: float
    ratio: float
    passed: bool


def lorentz_identification_check(f, theta, q, grid):
    """(L1, Linf)_{theta, q(.)} matches the Lorentz space with p = 1/(1-theta).

    Needs q(0) = q_inf so that both descriptions use the same limit
    exponent. The ratio of the two norms is recorded; equivalence means it
    stays within fixed brackets independent of f (checked across a corpus
    by the suite driver, and for stability under refinement in tests).
    """
    if abs(q.p_at_zero - q.p_at_infinity) > 1e-12:
        raise ConfigError("identification needs q(0) = q_inf")
    couple = Couple.l1_linf()
    p_value = 1.0 / (1.0 - theta)
    knorm = k_norm_continuous(couple, f, KMethodParams(theta, q, grid))
    p_const = ExponentFunction.constant(p_value)
    lnorm = lorentz_norm(f, p_const, q, grid)
    ratio = knorm / lnorm if lnorm > 0 else (0.0 if knorm == 0 else math.inf)
    passed = knorm == 0.0 or (math.isfinite(ratio) and ratio > 0)
    return LorentzIdentificationReport(theta, p_value, knorm, lnorm, ratio, passed)


@dataclass(frozen=True)
class ClassMembershipReport:
    k_class_constant: float
    j_class_constant: float
    passed: bool


def class_membership_check(couple, f, params):
    """Constants placing the interpolation space in the class of order theta.

    With X the K-method space, c_K is the smallest C such that
    K(t, f) <= C t^theta ||f||_X at the probes, and c_J the smallest C such
    that ||f||_X <= C t^{-theta} J(t, f). Finite constants certify
    membership on the sampled range.
    """
    theta = params.theta
    knorm = k_norm_continuous(couple, f, params)
    if knorm == 0.0:
        return ClassMembershipReport(0.0, 0.0, True)
    ss = np.geomspace(params.grid.t_min, params.grid.t_max, 41)
    kvals = k_functional_many(couple, ss, f)
    c_k = float(np.max(kvals / ss ** theta)) / knorm
    jvals = np.array([j_functional(couple, float(s), f) for s in ss])
    c_j = knorm * float(np.max(ss ** theta / jvals))
    passed = math.isfinite(c_k) and math.isfinite(c_j)
    return ClassMembershipReport(c_k, c_j, passed)
