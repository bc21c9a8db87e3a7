"""Extremal witness polynomials and the certified lower bounds they give.

For even m the witness is (x1^2 - x2^2)(x3^2 - x4^2)...(x_{m-1}^2 - x_m^2);
for odd m the last factor is replaced by x_m. Each factor satisfies
|x_{2j-1}^2 - x_{2j}^2| <= max(x_{2j-1}^2, x_{2j}^2), so the sup-norm
reduces to maximizing a product of powers on the l_p sphere, which has the
closed forms below.
"""

from __future__ import annotations

import math
from itertools import product

import numpy as np

from .constants import BoundReport, lower_bound_real
from .norms import coeff_norm, hl_exponent, parse_p
from .polynomial import REAL, HomoPoly, evaluate


def build_witness(m: int) -> HomoPoly:
    if m < 2:
        raise ValueError("witness needs m >= 2")
    pairs = m // 2
    terms = {}
    for choice in product((0, 1), repeat=pairs):
        alpha = [0] * m
        for j, c in enumerate(choice):
            alpha[2 * j + c] = 2
        if m % 2:
            alpha[m - 1] = 1
        terms[tuple(alpha)] = float((-1) ** sum(choice))
    return HomoPoly(REAL, m, m, terms)


def witness_sup_norm(m: int, p) -> float:
    """Exact ||P_m|| (even m) or ||Q_m|| (odd m) on the unit sphere of l_p^m."""
    p = parse_p(p)
    if m < 2:
        raise ValueError("witness needs m >= 2")
    if math.isinf(p):
        return 1.0
    if m % 2 == 0:
        return (m / 2) ** (-m / p)
    # t^(m-1) s with (m-1)/2 t^p + s^p = 1: t^p = 2/m, s^p = 1/m
    return (2 / m) ** ((m - 1) / p) * m ** (-1 / p)


def witness_maximizer(m: int, p) -> np.ndarray:
    p = parse_p(p)
    x = np.zeros(m)
    if m % 2 == 0:
        x[0::2] = 1.0 if math.isinf(p) else (2 / m) ** (1 / p)
    else:
        x[0:m - 1:2] = 1.0 if math.isinf(p) else (2 / m) ** (1 / p)
        x[m - 1] = 1.0 if math.isinf(p) else (1 / m) ** (1 / p)
    return x


def reduced_odd_norm_bound(m: int, p) -> float:
    """The cruder bound ||Q_m|| <= ||P_{m-1}|| = ((m-1)/2)^(-(m-1)/p)."""
    p = parse_p(p)
    if m % 2 == 0:
        raise ValueError("only defined for odd m")
    return 1.0 if math.isinf(p) else ((m - 1) / 2) ** (-(m - 1) / p)


def witness_ratio(m: int, p) -> BoundReport:
    """Certified lower bound coeff_norm(W, rho) / ||W|| on H^pol_{R,m,p}."""
    p = parse_p(p)
    if m < 2 or p < 2 * m or math.isinf(p):
        raise ValueError(f"need m >= 2 and 2m <= p < inf, got m={m}, p={p}")
    W = build_witness(m)
    rho = hl_exponent(m, p)
    num = coeff_norm(W, rho)
    den = witness_sup_norm(m, p)
    params = {"rho": rho, "coeff_norm": num, "sup_norm": den, "terms": len(W)}
    if m % 2:
        params["reduced_norm_bound"] = reduced_odd_norm_bound(m, p)
        params["reduced_ratio"] = num / params["reduced_norm_bound"]
    return BoundReport("witness_ratio", "lower", num / den, m, p,
                       "coefficient norm over exact sup-norm of the witness",
                       params, label="certified")


def grid_sweep_check(m: int, p, points: int = 10_000, seed: int = 0) -> float:
    """Largest |W(x)| over random points of the unit sphere, for sanity checks
    of the closed form (never exceeds witness_sup_norm)."""
    p = parse_p(p)
    rng = np.random.default_rng(seed)
    x = rng.standard_normal((points, m))
    if math.isinf(p):
        x /= np.abs(x).max(axis=1, keepdims=True)
    else:
        x /= (np.abs(x) ** p).sum(axis=1, keepdims=True) ** (1 / p)
    return float(np.abs(evaluate(build_witness(m), x)).max())


def certification_gap(m: int, p) -> float:
    """witness_ratio minus the proof-chain lower bound (nonnegative)."""
    return witness_ratio(m, p).value - lower_bound_real(m, p).proof_chain
