"""Randomized check suite: generators, check drivers, and the registry.

Every check identifier maps to a driver that builds a corpus of random
instances, runs the corresponding operation, and condenses the outcome
into a CheckReport. Instance randomness is counter-based: the generator
for instance i of a check is Philox keyed by (seed, crc32(check id), i),
so suites are reproducible and any single instance can be regenerated in
isolation.

The headline `constant` differs per check (worst relative error for
oracle comparisons, corpus equivalence constant for two-sided bounds,
worst margin for inequality checks); driver docstrings say which.
"""

from __future__ import annotations

import math
import os
import tempfile
import zlib
from dataclasses import dataclass, field

import numpy as np

from .couples import (
    Couple,
    LinearOperatorSpec,
    k_brute_force,
    k_functional,
    k_truncation_oracle,
    kj_inequality_check,
    operator_bound_check,
)
from .errors import ConfigError
from .exponents import ExponentFunction
from .hardy import (
    HardyInstance,
    hardy_continuous_check,
    hardy_discrete_check,
    key_estimate_check,
)
from .interp import (
    KMethodParams,
    class_membership_check,
    density_check,
    embedding_checks,
    k_norm_continuous,
    k_norm_discrete,
    kj_equivalence_check,
    lorentz_identification_check,
    prop_equal_limits,
    prop_exponent_monotone,
    prop_identical_couple,
    prop_reversal_symmetry,
    prop_theta_monotone,
    reiteration_check,
)
from .rearrange import (
    AtomFunction,
    distribution_function,
    lorentz_discrete_norm,
    lorentz_norm,
    rearrangement,
)
from .reports import CheckReport
from .varleb import (
    HaarGrid,
    SampledFunction,
    TwoSidedSequence,
    luxemburg_norm,
    modular,
    modular_norm_sandwich,
    unit_ball_check,
)

__all__ = [
    "CheckSuiteConfig",
    "CHECK_IDS",
    "instance_rng",
    "run_check",
    "run_check_suite",
]

LN2 = math.log(2.0)


def instance_rng(seed, check_id, index):
    """Counter-based generator keyed by (seed, check id, instance index)."""
    tag = zlib.crc32(check_id.encode("utf-8"))
    key = np.array([seed % 2 ** 64, ((tag << 32) ^ index) % 2 ** 64],
                   dtype=np.uint64)
    return np.random.Generator(np.random.Philox(key=key))


# ---------------------------------------------------------------------------
# Instance generators
# ---------------------------------------------------------------------------


def _rand_constant_exponent(rng, lo=1.2, hi=4.0):
    return ExponentFunction.constant(float(rng.uniform(lo, hi)))


def _rand_variable_exponent(rng, lo=1.2, hi=3.0, equal_limits=False):
    c = float(rng.uniform(lo, hi))
    d = float(rng.uniform(0.3, 1.2))
    if equal_limits:
        return ExponentFunction.from_expression(
            f"{c} + {d}*min(t, 1/t)", p_at_zero=c, p_at_infinity=c)
    return ExponentFunction.from_expression(
        f"{c} + {d}/log(e + 1/t)", p_at_zero=c, p_at_infinity=c + d)


def _rand_exponent(rng, i, **kwargs):
    if i % 2 == 0:
        return _rand_constant_exponent(rng)
    return _rand_variable_exponent(rng, **kwargs)


def _rand_sampled(rng, grid):
    n = grid.node_count
    width = int(rng.integers(max(2, n // 8), max(3, n // 2)))
    start = int(rng.integers(0, n - width))
    values = np.zeros(n)
    values[start:start + width] = rng.uniform(0.0, 2.0, width)
    return SampledFunction(grid, values)


def _rand_vector(rng, n):
    v = rng.uniform(-2.0, 2.0, n)
    v[int(rng.integers(0, n))] = float(rng.uniform(0.5, 2.0))
    return v


def _rand_weighted_couple(rng, n=None, ordered=False):
    if n is None:
        n = int(rng.integers(2, 6))
    w0 = 10.0 ** rng.uniform(-1.0, 1.0, n)
    if ordered:
        w1 = w0 * 10.0 ** rng.uniform(0.0, 1.0, n)
    else:
        w1 = 10.0 ** rng.uniform(-1.0, 1.0, n)
    return Couple.weighted_seq(w0, w1)


def _rand_atoms(rng, max_atoms=6):
    n = int(rng.integers(1, max_atoms + 1))
    values = 10.0 ** rng.uniform(-1.0, 1.0, n)
    masses = 10.0 ** rng.uniform(-2.0, 2.0, n)
    return AtomFunction(values, masses)


def _rand_block_callable(rng, u_lo=-5.0, u_hi=5.0, blocks=3, quantum=None):
    """Sum of indicator blocks in log scale.

    With a quantum (a cell width in u), edges snap to cell boundaries so the
    same function is resolved exactly on a grid and its refinements; grid
    nodes sit at half-cell offsets and never touch an edge.
    """
    edges = np.sort(rng.uniform(u_lo * LN2, u_hi * LN2, 2 * blocks))
    if quantum is not None:
        edges = np.round(edges / quantum) * quantum
    heights = rng.uniform(0.2, 2.0, blocks)
    if quantum is not None and not np.any(edges[1::2] > edges[0::2]):
        edges = np.array([-4.0 * quantum, 4.0 * quantum])
        heights = heights[:1]
        blocks = 1

    def fn(ts):
        u = np.log(np.asarray(ts, dtype=float))
        out = np.zeros_like(u)
        for j in range(blocks):
            out += heights[j] * ((u >= edges[2 * j]) & (u < edges[2 * j + 1]))
        return out

    return fn


def _bracket_constant(ratios):
    """Smallest C with all ratios in [1/C, C]."""
    finite = [r for r in ratios if r > 0 and math.isfinite(r)]
    if not finite:
        return math.inf
    return max(max(finite), 1.0 / min(finite))


# ---------------------------------------------------------------------------
# Drivers
# ---------------------------------------------------------------------------


def _check_luxemburg(config):
    """Worst deviation of the solver from the constant-q closed form
    (rho^{1/q}), or of modular(phi/norm) from 1 for variable q."""
    worst, worst_i = 0.0, 0
    for i in range(config.trials):
        rng = instance_rng(config.seed, "luxemburg-closed-form", i)
        phi = _rand_sampled(rng, config.grid)
        if i % 2 == 0:
            q = _rand_constant_exponent(rng)
            norm = luxemburg_norm(phi, q)
            expected = modular(phi, q) ** (1.0 / q.p_at_zero)
            err = abs(norm - expected) / expected if expected > 0 else abs(norm)
        else:
            q = _rand_variable_exponent(rng)
            norm = luxemburg_norm(phi, q)
            if norm == 0.0:
                err = 0.0
            else:
                err = abs(modular(phi.scaled(1.0 / norm), q) - 1.0)
        if err > worst:
            worst, worst_i = err, i
    return CheckReport("luxemburg-closed-form", config.trials, worst, worst_i,
                       worst <= 1e-6)


def _check_sandwich(config):
    """Worst bracket ratio of the modular-power sandwich (pass at 1 + 1e-6)."""
    worst, worst_i, all_ok = 0.0, 0, True
    for i in range(config.trials):
        rng = instance_rng(config.seed, "modular-sandwich", i)
        phi = _rand_sampled(rng, config.grid)
        q = _rand_exponent(rng, i)
        rep = modular_norm_sandwich(phi, q)
        all_ok &= rep.passed
        if rep.norm > 0 and rep.upper > 0:
            ratio = max(rep.lower / rep.norm, rep.norm / rep.upper)
        else:
            ratio = 0.0
        if ratio > worst:
            worst, worst_i = ratio, i
    return CheckReport("modular-sandwich", config.trials, worst, worst_i, all_ok)


def _check_unit_ball(config):
    """Fraction of instances where norm <= 1 iff modular <= 1 (must be 1)."""
    bad, worst_i = 0, 0
    for i in range(config.trials):
        rng = instance_rng(config.seed, "unit-ball", i)
        phi = _rand_sampled(rng, config.grid)
        q = _rand_exponent(rng, i)
        norm = luxemburg_norm(phi, q)
        if norm == 0.0:
            continue
        ok = True
        for c, inside in ((0.8, True), (1.25, False)):
            rep = unit_ball_check(phi.scaled(c / norm), q)
            ok &= rep.consistent and (rep.modular_value <= 1.0 + 1e-8) == inside
        if not ok:
            bad += 1
            worst_i = i
    fraction = 1.0 - bad / config.trials
    return CheckReport("unit-ball", config.trials, fraction, worst_i, bad == 0)


def _check_k_oracle(config):
    """Worst relative disagreement between closed-form K and its oracle."""
    worst, worst_i = 0.0, 0
    for i in range(config.trials):
        rng = instance_rng(config.seed, "k-oracle", i)
        t = float(10.0 ** rng.uniform(-3.0, 3.0))
        if i % 3 < 2:
            couple = _rand_weighted_couple(rng, n=int(rng.integers(2, 6)))
            f = _rand_vector(rng, couple.dimension)
            closed = k_functional(couple, t, f)
            oracle = k_brute_force(couple, t, f, rng=rng)
        else:
            f = _rand_atoms(rng)
            closed = k_functional(Couple.l1_linf(), t, f)
            oracle, _ = k_truncation_oracle(f, t)
        err = abs(closed - oracle) / max(closed, oracle, 1e-300)
        if err > worst:
            worst, worst_i = err, i
    return CheckReport("k-oracle", config.trials, worst, worst_i, worst <= 1e-6)


def _check_kj_bounds(config):
    """Worst normalized margin of the K/J comparison inequalities (>= 0)."""
    worst, worst_i = math.inf, 0
    for i in range(config.trials):
        rng = instance_rng(config.seed, "kj-functional-bounds", i)
        s, t = (float(10.0 ** rng.uniform(-2.0, 2.0)) for _ in range(2))
        if i % 2 == 0:
            couple = _rand_weighted_couple(rng)
            f = _rand_vector(rng, couple.dimension)
        else:
            couple = Couple.l1_linf()
            f = _rand_atoms(rng)
        rep = kj_inequality_check(couple, f, s, t)
        if rep.worst_margin < worst:
            worst, worst_i = rep.worst_margin, i
    return CheckReport("kj-functional-bounds", config.trials, worst, worst_i,
                       worst >= 0.0)


def _check_k_discrete_continuous(config):
    """Corpus constant C for discrete/continuous K-norm ratios, with drift
    under refinement (V doubled, density doubled)."""
    grid = config.grid
    fine = HaarGrid(grid.V * 2, grid.samples_per_octave * 2)
    ratios, ratios_fine = [], []
    for i in range(config.trials):
        rng = instance_rng(config.seed, "k-discrete-continuous", i)
        theta = float(rng.uniform(0.2, 0.8))
        q = _rand_exponent(rng, i)
        if i % 2 == 0:
            couple = _rand_weighted_couple(rng)
            f = _rand_vector(rng, couple.dimension)
        else:
            couple = Couple.l1_linf()
            f = _rand_atoms(rng)
        q0, qi = q.p_at_zero, q.p_at_infinity
        for target, g, V in ((ratios, grid, grid.V), (ratios_fine, fine, fine.V)):
            kd = k_norm_discrete(couple, f, theta, q0, qi, V)
            kc = k_norm_continuous(couple, f, KMethodParams(theta, q, g))
            target.append(kd / kc if kc > 0 else math.inf)
    constant = _bracket_constant(ratios)
    refined = _bracket_constant(ratios_fine)
    drift = abs(refined - constant) / constant if math.isfinite(constant) else math.inf
    worst_i = int(np.argmax([max(r, 1.0 / r) for r in ratios]))
    passed = math.isfinite(constant) and drift <= 0.05
    return CheckReport("k-discrete-continuous", config.trials, constant,
                       worst_i, passed, drift)


def _check_embedding(config):
    """Largest chain constant; fails if any growth margin is negative."""
    worst_c, worst_i, all_ok = 0.0, 0, True
    for i in range(config.trials):
        rng = instance_rng(config.seed, "embedding-chain", i)
        theta = float(rng.uniform(0.2, 0.8))
        q = _rand_exponent(rng, i)
        if i % 2 == 0:
            couple = _rand_weighted_couple(rng)
            f = _rand_vector(rng, couple.dimension)
        else:
            couple = Couple.l1_linf()
            f = _rand_atoms(rng)
        rep = embedding_checks(couple, f, KMethodParams(theta, q, config.grid))
        all_ok &= rep.passed
        c = max(rep.c_from_intersection, rep.c_to_sum)
        if c > worst_c:
            worst_c, worst_i = c, i
    return CheckReport("embedding-chain", config.trials, worst_c, worst_i, all_ok)


def _check_kj_equivalence(config, v_base=16, v_refined=24):
    """Corpus constant for discrete J-norm vs K-norm ratios; every instance
    must keep termwise J <= 3.03 K, and the constant must be stable in V."""
    ratios, ratios_fine = [], []
    all_ok = True
    for i in range(config.trials):
        rng = instance_rng(config.seed, "kj-equivalence", i)
        theta = float(rng.uniform(0.2, 0.8))
        q = _rand_exponent(rng, i)
        if i % 2 == 0:
            couple = _rand_weighted_couple(rng)
            f = _rand_vector(rng, couple.dimension)
        else:
            couple = Couple.l1_linf()
            f = _rand_atoms(rng)
        params = KMethodParams(theta, q, config.grid)
        rep = kj_equivalence_check(couple, f, params, V=v_base)
        rep_fine = kj_equivalence_check(couple, f, params, V=v_refined)
        all_ok &= rep.passed and rep_fine.passed
        ratios.append(rep.ratio_j_over_k)
        ratios_fine.append(rep_fine.ratio_j_over_k)
    constant = _bracket_constant(ratios)
    refined = _bracket_constant(ratios_fine)
    drift = abs(refined - constant) / constant if math.isfinite(constant) else math.inf
    worst_i = int(np.argmax([max(r, 1.0 / r) for r in ratios]))
    passed = all_ok and math.isfinite(constant) and drift <= 0.1
    return CheckReport("kj-equivalence", config.trials, constant, worst_i,
                       passed, drift)


def _check_density(config):
    """Largest final residual ratio of truncated J-representations."""
    worst, worst_i, all_ok = 0.0, 0, True
    for i in range(config.trials):
        rng = instance_rng(config.seed, "density", i)
        theta = float(rng.uniform(0.2, 0.8))
        q = _rand_exponent(rng, i)
        if i % 2 == 0:
            couple = _rand_weighted_couple(rng)
            f = _rand_vector(rng, couple.dimension)
        else:
            couple = Couple.l1_linf()
            f = _rand_atoms(rng)
        rep = density_check(couple, f, KMethodParams(theta, q, config.grid))
        all_ok &= rep.passed
        if rep.final_ratio > worst:
            worst, worst_i = rep.final_ratio, i
    return CheckReport("density", config.trials, worst, worst_i, all_ok)


def _check_operator(config):
    """Largest lhs/rhs ratio of the interpolated operator bound (<= 1)."""
    worst, worst_i, all_ok = 0.0, 0, True
    for i in range(config.trials):
        rng = instance_rng(config.seed, "operator-bound", i)
        couple = _rand_weighted_couple(rng)
        n = couple.dimension
        op = LinearOperatorSpec.from_matrix(rng.normal(0.0, 1.0, (n, n)), couple)
        f = _rand_vector(rng, n)
        theta = float(rng.uniform(0.2, 0.8))
        q = _rand_exponent(rng, i)
        rep = operator_bound_check(op, couple, theta, q, f, config.grid)
        all_ok &= rep.passed
        ratio = rep.lhs / rep.rhs if rep.rhs > 0 else 0.0
        if ratio > worst:
            worst, worst_i = ratio, i
    return CheckReport("operator-bound", config.trials, worst, worst_i, all_ok)


def _check_prop_exponent_monotone(config):
    """Largest recorded embedding ratio for pointwise-larger exponents."""
    worst, worst_i, all_ok = 0.0, 0, True
    for i in range(config.trials):
        rng = instance_rng(config.seed, "prop-exponent-monotone", i)
        theta = float(rng.uniform(0.2, 0.8))
        if i % 2 == 0:
            base = float(rng.uniform(1.2, 3.0))
            q = ExponentFunction.constant(base)
            r = ExponentFunction.constant(base + float(rng.uniform(0.5, 2.0)))
        else:
            c = float(rng.uniform(1.2, 2.5))
            d = float(rng.uniform(0.3, 1.0))
            shift = float(rng.uniform(0.5, 1.5))
            q = ExponentFunction.from_expression(
                f"{c} + {d}/log(e + 1/t)", p_at_zero=c, p_at_infinity=c + d)
            r = ExponentFunction.from_expression(
                f"{c + shift} + {d}/log(e + 1/t)",
                p_at_zero=c + shift, p_at_infinity=c + shift + d)
        couple = _rand_weighted_couple(rng)
        f = _rand_vector(rng, couple.dimension)
        rep = prop_exponent_monotone(couple, f, theta, q, r, config.grid)
        all_ok &= rep.passed
        c_val = max(rep.values["ratio_r"], rep.values["ratio_sup"])
        if c_val > worst:
            worst, worst_i = c_val, i
    return CheckReport("prop-exponent-monotone", config.trials, worst, worst_i,
                       all_ok)


def _check_prop_reversal(config):
    """Largest deviation of the reversal-symmetry continuous ratio from 1."""
    worst, worst_i, all_ok = 0.0, 0, True
    for i in range(config.trials):
        rng = instance_rng(config.seed, "prop-reversal", i)
        theta = float(rng.uniform(0.2, 0.8))
        q = _rand_constant_exponent(rng)
        couple = _rand_weighted_couple(rng)
        f = _rand_vector(rng, couple.dimension)
        rep = prop_reversal_symmetry(couple, f, theta, q, config.grid)
        all_ok &= rep.passed
        dev = abs(rep.values["continuous_ratio"] - 1.0)
        if dev > worst:
            worst, worst_i = dev, i
    return CheckReport("prop-reversal", config.trials, worst, worst_i, all_ok)


def _check_prop_equal_limits(config):
    """Discrete norms must agree exactly for exponents sharing both limits;
    constant records the spread of the (differing) continuous norms."""
    worst, worst_i, all_ok = 1.0, 0, True
    for i in range(config.trials):
        rng = instance_rng(config.seed, "prop-equal-limits", i)
        theta = float(rng.uniform(0.2, 0.8))
        c = float(rng.uniform(1.2, 2.5))
        d = float(rng.uniform(0.3, 1.2))
        q_a = ExponentFunction.from_expression(
            f"{c} + {d}/log(e + 1/t)", p_at_zero=c, p_at_infinity=c + d)
        q_b = ExponentFunction.from_expression(
            f"{c} + {d}*(t/(1 + t))", p_at_zero=c, p_at_infinity=c + d)
        couple = _rand_weighted_couple(rng)
        f = _rand_vector(rng, couple.dimension)
        rep = prop_equal_limits(couple, f, theta, q_a, q_b, grid=config.grid)
        all_ok &= rep.passed
        r = rep.values["continuous_ratio"]
        spread = max(r, 1.0 / r) if r > 0 else math.inf
        if spread > worst:
            worst, worst_i = spread, i
    return CheckReport("prop-equal-limits", config.trials, worst, worst_i, all_ok)


def _check_prop_theta_monotone(config):
    """Largest theta-monotonicity constant on ordered couples."""
    worst, worst_i, all_ok = 0.0, 0, True
    for i in range(config.trials):
        rng = instance_rng(config.seed, "prop-theta-monotone", i)
        lo, hi = np.sort(rng.uniform(0.15, 0.85, 2))
        if hi - lo < 0.05:
            hi = min(0.9, lo + 0.05)
        q = _rand_exponent(rng, i)
        couple = _rand_weighted_couple(rng, ordered=True)
        f = _rand_vector(rng, couple.dimension)
        rep = prop_theta_monotone(couple, f, float(lo), float(hi), q, config.grid)
        all_ok &= rep.passed
        if rep.values["ratio"] > worst:
            worst, worst_i = rep.values["ratio"], i
    return CheckReport("prop-theta-monotone", config.trials, worst, worst_i,
                       all_ok)


def _check_prop_identical_couple(config):
    """Norm ratio on identical couples: f-independent per (theta, q) group
    and matching the truncated closed form at constant q."""
    groups = ((0.3, 1.5), (0.5, 2.0), (0.7, 3.0))
    ratios = {g: [] for g in groups}
    worst, worst_i, all_ok = 0.0, 0, True
    for i in range(config.trials):
        rng = instance_rng(config.seed, "prop-identical-couple", i)
        theta, q_val = groups[i % len(groups)]
        q = ExponentFunction.constant(q_val)
        n = int(rng.integers(2, 6))
        w = 10.0 ** rng.uniform(-1.0, 1.0, n)
        f = _rand_vector(rng, n)
        rep = prop_identical_couple(w, f, theta, q, config.grid)
        all_ok &= rep.passed
        ratios[(theta, q_val)].append(rep.values["ratio"])
        if rep.values["ratio"] > worst:
            worst, worst_i = rep.values["ratio"], i
    for group_ratios in ratios.values():
        if len(group_ratios) >= 2:
            spread = max(group_ratios) - min(group_ratios)
            all_ok &= spread <= 1e-9 * max(group_ratios)
    return CheckReport("prop-identical-couple", config.trials, worst, worst_i,
                       all_ok)


def _check_reiteration(config):
    """Reiteration equivalence constant; few instances, each refined."""
    count = min(config.trials, 2)
    worst_c, worst_drift, worst_i, all_ok = 0.0, 0.0, 0, True
    for i in range(count):
        rng = instance_rng(config.seed, "reiteration", i)
        couple = _rand_weighted_couple(rng, n=3)
        f = _rand_vector(rng, 3)
        theta0 = float(rng.uniform(0.2, 0.35))
        theta1 = float(rng.uniform(0.65, 0.8))
        q = ExponentFunction.constant(float(rng.uniform(1.5, 3.0)))
        rep = reiteration_check(couple, f, theta0, theta1, 0.5, q,
                                inner_grid=HaarGrid(10, 6), outer_V=8)
        all_ok &= rep.passed
        if rep.constant > worst_c:
            worst_c, worst_i = rep.constant, i
        if rep.drift is not None:
            worst_drift = max(worst_drift, rep.drift)
    return CheckReport("reiteration", count, worst_c, worst_i, all_ok,
                       worst_drift)


def _check_lorentz_identification(config):
    """Corpus bracket constant for K-method vs Lorentz norms on atoms, with
    exact scale invariance and refinement stability."""
    thetas = (0.25, 0.5, 0.75)
    fine = config.grid.refined(spo_factor=2)
    ratios, ratios_fine = [], []
    all_ok = True
    for i in range(config.trials):
        rng = instance_rng(config.seed, "lorentz-identification", i)
        theta = thetas[i % 3]
        q = _rand_exponent(rng, i, equal_limits=True)
        f = _rand_atoms(rng)
        rep = lorentz_identification_check(f, theta, q, config.grid)
        rep_fine = lorentz_identification_check(f, theta, q, fine)
        all_ok &= rep.passed and rep_fine.passed
        ratios.append(rep.ratio)
        ratios_fine.append(rep_fine.ratio)
        if i % 25 == 0:
            scaled = lorentz_identification_check(f.scaled(4.0), theta, q,
                                                  config.grid)
            all_ok &= scaled.ratio == rep.ratio
    constant = _bracket_constant(ratios)
    refined = _bracket_constant(ratios_fine)
    drift = abs(refined - constant) / constant if math.isfinite(constant) else math.inf
    worst_i = int(np.argmax([max(r, 1.0 / r) for r in ratios]))
    passed = all_ok and math.isfinite(constant) and drift <= 0.1
    return CheckReport("lorentz-identification", config.trials, constant,
                       worst_i, passed, drift)


def _check_lorentz_discrete(config):
    """Corpus bracket constant for dyadic vs continuous Lorentz norms."""
    ratios = []
    for i in range(config.trials):
        rng = instance_rng(config.seed, "lorentz-discrete", i)
        p = _rand_exponent(rng, i)
        q = _rand_exponent(rng, i + 1)
        f = _rand_atoms(rng)
        dn = lorentz_discrete_norm(f, p, q, config.grid.V)
        cn = lorentz_norm(f, p, q, config.grid)
        ratios.append(dn / cn if cn > 0 else math.inf)
    constant = _bracket_constant(ratios)
    worst_i = int(np.argmax([max(r, 1.0 / r) for r in ratios]))
    return CheckReport("lorentz-discrete", config.trials, constant, worst_i,
                       math.isfinite(constant))


def _check_rearrangement(config):
    """Worst discrepancy in rearrangement identities (equimeasurability,
    mass and integral preservation, right-continuity)."""
    worst, worst_i = 0.0, 0
    for i in range(config.trials):
        rng = instance_rng(config.seed, "rearrangement", i)
        f = _rand_atoms(rng, max_atoms=8)
        profile = rearrangement(f)
        scale = max(f.total_l1, 1e-300)
        err = abs(profile.l1 - f.total_l1) / scale
        err = max(err, abs(profile.integral_to(profile.total_mass * 2.0)
                           - f.total_l1) / scale)
        for lam in rng.uniform(0.0, f.sup_value * 1.1, 12):
            mass_f = distribution_function(f, float(lam))
            widths = np.diff(profile.breakpoints)
            mass_star = float(np.sum(widths[profile.levels > lam]))
            err = max(err, abs(mass_f - mass_star) / max(mass_f, 1.0))
        for j in range(len(profile.levels)):
            err = max(err, abs(profile.value_at(profile.breakpoints[j])
                               - profile.levels[j]) / profile.levels[j])
        if err > worst:
            worst, worst_i = err, i
    return CheckReport("rearrangement", config.trials, worst, worst_i,
                       worst <= 1e-9)


def _check_hardy_discrete(config):
    """Largest measured-to-cap ratio of the discrete Hardy constant."""
    q_cycle = (1.0, 2.0, math.inf, None)
    worst, worst_i, all_ok = 0.0, 0, True
    for i in range(config.trials):
        rng = instance_rng(config.seed, "hardy-discrete", i)
        a = float(rng.uniform(0.1, 0.85))
        q = q_cycle[i % 4]
        if q is None:
            q = float(rng.uniform(1.0, 4.0))
        V = 24
        values = rng.uniform(0.0, 1.0, 2 * V + 1) * (rng.random(2 * V + 1) < 0.7)
        eps = TwoSidedSequence(V, values)
        rep = hardy_discrete_check(HardyInstance(a, q, eps))
        all_ok &= rep.within_cap
        ratio = rep.constant / rep.cap
        if ratio > worst:
            worst, worst_i = ratio, i
    return CheckReport("hardy-discrete", config.trials, worst, worst_i, all_ok)


def _check_hardy_continuous(config):
    """Largest continuous Hardy constant, stable under grid refinement."""
    s_cycle = (0.5, 1.0, 2.0)
    grid = HaarGrid(8, 16)
    fine = grid.refined(spo_factor=2)
    worst_c, worst_drift, worst_i = 0.0, 0.0, 0
    for i in range(config.trials):
        rng = instance_rng(config.seed, "hardy-continuous", i)
        s = s_cycle[i % 3]
        q = _rand_exponent(rng, i)
        fn = _rand_block_callable(rng, quantum=grid.du)
        rep = hardy_continuous_check(s, q, SampledFunction.from_callable(grid, fn))
        rep_fine = hardy_continuous_check(s, q,
                                          SampledFunction.from_callable(fine, fn))
        drift = (abs(rep_fine.constant - rep.constant) / rep.constant
                 if rep.constant > 0 else 0.0)
        worst_drift = max(worst_drift, drift)
        if rep.constant > worst_c:
            worst_c, worst_i = rep.constant, i
    passed = math.isfinite(worst_c) and worst_drift <= 0.1
    return CheckReport("hardy-continuous", config.trials, worst_c, worst_i,
                       passed, worst_drift)


def _key_estimate_driver(config, variant, check_id):
    grid = config.grid
    nodes = grid.nodes
    V = grid.V
    worst, worst_i, accepted, all_ok = math.inf, 0, 0, True
    for i in range(config.trials):
        rng = instance_rng(config.seed, check_id, i)
        p = _rand_variable_exponent(rng, lo=1.5, hi=3.0)
        m = float(rng.uniform(1.0, 3.0))
        if variant == "at_zero":
            a, b = grid.t_min, float(2.0 ** rng.uniform(-V + 2.0, 0.0))
        elif variant == "at_infinity":
            a, b = float(2.0 ** rng.uniform(0.0, V - 2.0)), grid.t_max
        else:
            a, b = grid.t_min, float(2.0 ** rng.uniform(-V + 2.0, float(V)))
        mask = (nodes > a) & (nodes < b)
        w_vals = 10.0 ** rng.uniform(-0.5, 0.5, grid.node_count)
        w = SampledFunction(grid, w_vals)
        f_vals = np.zeros(grid.node_count)
        f_vals[mask] = rng.uniform(0.0, 1.0, int(np.sum(mask)))
        if i % 2 == 1:
            # exercise the modular branch of the hypothesis: scale beyond
            # sup-norm 1 but keep the f-modular over Q at 0.9
            raw = np.zeros(grid.node_count)
            raw[mask] = rng.uniform(0.0, 2.0, int(np.sum(mask)))
            p_y = np.asarray(p(nodes[mask]), dtype=float)
            dy = nodes[mask] * grid.du
            wq = w_vals[mask]

            def modular_at(c):
                return float(np.sum((c * raw[mask]) ** p_y * wq * dy))

            hi = 1.0
            for _ in range(60):
                if modular_at(hi) >= 0.9 or hi > 1e6:
                    break
                hi *= 2.0
            lo = 0.0
            for _ in range(60):
                mid = 0.5 * (lo + hi)
                if modular_at(mid) < 0.9:
                    lo = mid
                else:
                    hi = mid
            f_vals = raw * lo
        f = SampledFunction(grid, f_vals)
        rep = key_estimate_check(p, (a, b), w, f, m, variant)
        if not rep.accepted:
            continue
        accepted += 1
        all_ok &= rep.passed
        if rep.worst_margin < worst:
            worst, worst_i = rep.worst_margin, i
    passed = all_ok and accepted == config.trials and worst >= -1e-12
    return CheckReport(check_id, accepted, worst, worst_i, passed)


def _check_key_estimate_local(config):
    return _key_estimate_driver(config, "local", "key-estimate-local")


def _check_key_estimate_at_zero(config):
    return _key_estimate_driver(config, "at_zero", "key-estimate-at-zero")


def _check_key_estimate_at_infinity(config):
    return _key_estimate_driver(config, "at_infinity", "key-estimate-at-infinity")


def _check_class_membership(config):
    """Largest K-class constant; all membership constants must be finite."""
    worst, worst_i, all_ok = 0.0, 0, True
    for i in range(config.trials):
        rng = instance_rng(config.seed, "class-membership", i)
        theta = float(rng.uniform(0.2, 0.8))
        q = _rand_exponent(rng, i)
        if i % 2 == 0:
            couple = _rand_weighted_couple(rng)
            f = _rand_vector(rng, couple.dimension)
        else:
            couple = Couple.l1_linf()
            f = _rand_atoms(rng)
        rep = class_membership_check(couple, f, KMethodParams(theta, q, config.grid))
        all_ok &= rep.passed
        if rep.k_class_constant > worst:
            worst, worst_i = rep.k_class_constant, i
    return CheckReport("class-membership", config.trials, worst, worst_i, all_ok)


CHECK_REGISTRY = {
    "luxemburg-closed-form": _check_luxemburg,
    "modular-sandwich": _check_sandwich,
    "unit-ball": _check_unit_ball,
    "k-oracle": _check_k_oracle,
    "kj-functional-bounds": _check_kj_bounds,
    "k-discrete-continuous": _check_k_discrete_continuous,
    "embedding-chain": _check_embedding,
    "kj-equivalence": _check_kj_equivalence,
    "density": _check_density,
    "operator-bound": _check_operator,
    "prop-exponent-monotone": _check_prop_exponent_monotone,
    "prop-reversal": _check_prop_reversal,
    "prop-equal-limits": _check_prop_equal_limits,
    "prop-theta-monotone": _check_prop_theta_monotone,
    "prop-identical-couple": _check_prop_identical_couple,
    "reiteration": _check_reiteration,
    "lorentz-identification": _check_lorentz_identification,
    "lorentz-discrete": _check_lorentz_discrete,
    "rearrangement": _check_rearrangement,
    "hardy-discrete": _check_hardy_discrete,
    "hardy-continuous": _check_hardy_continuous,
    "key-estimate-local": _check_key_estimate_local,
    "key-estimate-at-zero": _check_key_estimate_at_zero,
    "key-estimate-at-infinity": _check_key_estimate_at_infinity,
    "class-membership": _check_class_membership,
}

CHECK_IDS = tuple(CHECK_REGISTRY)


@dataclass(frozen=True)
class CheckSuiteConfig:
    """Configuration of a suite run; empty checks means the full registry."""

    seed: int = 42
    trials: int = 100
    grid: HaarGrid = field(default_factory=lambda: HaarGrid(16, 32))
    checks: tuple = ()
    output_dir: str | None = None

    def __post_init__(self):
        object.__setattr__(self, "checks", tuple(self.checks))
        if self.trials < 1:
            raise ConfigError("trials must be >= 1")
        unknown = [c for c in self.checks if c not in CHECK_REGISTRY]
        if unknown:
            raise ConfigError(f"unknown check ids: {', '.join(unknown)}")

    def selected(self):
        return self.checks or CHECK_IDS

    @classmethod
    def from_json_dict(cls, data):
        grid_data = data.get("grid", {})
        grid = HaarGrid(int(grid_data.get("V", 16)),
                        int(grid_data.get("samples_per_octave", 32)))
        try:
            return cls(seed=int(data.get("seed", 42)),
                       trials=int(data.get("trials", 100)),
                       grid=grid,
                       checks=tuple(data.get("checks", ())),
                       output_dir=data.get("output"))
        except (TypeError, ValueError) as exc:
            raise ConfigError(f"malformed suite config: {exc}") from exc


def run_check(check_id, *, seed=42, trials=100, grid=None):
    """Run a single check by identifier and return its CheckReport."""
    if check_id not in CHECK_REGISTRY:
        raise ConfigError(f"unknown check id {check_id!r}")
    config = CheckSuiteConfig(seed=seed, trials=trials,
                              grid=grid if grid is not None else HaarGrid(16, 32),
                              checks=(check_id,))
    return CHECK_REGISTRY[check_id](config)


def _atomic_write(path, text):
    directory = os.path.dirname(path) or "."
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-")
    try:
        with os.fdopen(fd, "w") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _format_cell(value):
    if value is None:
        return ""
    return f"{value:.12g}"


def run_check_suite(config):
    """Run the configured checks; write reports if an output dir is set.

    Returns (exit_code, reports): 0 when every check passed, 1 otherwise.
    Report files carry no timestamps, so identical configurations produce
    byte-identical outputs.
    """
    reports = [CHECK_REGISTRY[check_id](config) for check_id in config.selected()]
    if config.output_dir is not None:
        os.makedirs(config.output_dir, exist_ok=True)
        for rep in reports:
            _atomic_write(os.path.join(config.output_dir, f"{rep.check}.json"),
                          rep.to_json())
        lines = ["check,instances,constant,drift,pass"]
        for rep in reports:
            lines.append(",".join([
                rep.check,
                str(rep.instances),
                _format_cell(rep.constant),
                _format_cell(rep.refinement_drift),
                "true" if rep.passed else "false",
            ]))
        _atomic_write(os.path.join(config.output_dir, "summary.csv"),
                      "\n".join(lines) + "\n")
    exit_code = 0 if all(rep.passed for rep in reports) else 1
    return exit_code, reports
