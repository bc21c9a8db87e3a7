"""Heuristic search for polynomials with a large Hardy-Littlewood ratio.

The objective coeff_norm(P, rho) / ||P|| is scale invariant and its
denominator is itself a maximization, so the search does accept-if-better
multiplicative coordinate moves instead of gradient steps. Ratios of
non-witness polynomials are only estimates: the inner sup-norm is a lower
bound, which makes the ratio an over-estimate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from . import multiindex as mi
from .norms import coeff_norm, hl_exponent, parse_p, sup_norm
from .polynomial import REAL, HomoPoly, random_polynomial
from .witnesses import build_witness, witness_ratio


def hl_ratio(P: HomoPoly, p, n_starts: int = 32, seed: int = 0) -> dict:
    """coeff_norm(P, rho) / numeric ||P||: an upper estimate of P's true ratio."""
    p = parse_p(p)
    rho = hl_exponent(P.m, p)
    sup = sup_norm(P, p, n_starts=n_starts, seed=seed)
    num = coeff_norm(P, rho)
    return {"ratio": num / sup.best_value if sup.best_value > 0 else math.inf,
            "coeff_norm": num, "sup_norm": sup.best_value, "rho": rho,
            "kkt_residual": sup.kkt_residual, "converged": sup.converged,
            "label": "heuristic (sup-norm is a numeric lower bound)"}


@dataclass
class SearchResult:
    best_poly: HomoPoly
    ratio: float
    history: list = field(default_factory=list)
    certified: bool = False
    label: str = ""
    witness_ratio: float | None = None


def _to_poly(c: np.ndarray, basis, m: int, n: int, rho: float) -> HomoPoly:
    P = HomoPoly(REAL, n, m, {a: float(v) for a, v in zip(basis, c) if v != 0.0})
    nrm = coeff_norm(P, rho)
    return P.scale(1.0 / nrm)


def search_lower_bound(m: int, n: int, p, iters: int = 200, restarts: int = 1, seed: int = 0,
                       inner_starts: int = 8, step: float = 0.3) -> SearchResult:
    """Maximize coeff_norm(P, rho) / ||P|| over real m-homogeneous P in n variables.

    Restart 0 starts from the witness when it fits (n >= m) and scores it
    with its exact norm, so the result never falls below the witness ratio.
    Other restarts start from seeded random polynomials.
    """
    p = parse_p(p)
    if m < 2 or n < 2:
        raise ValueError("need m >= 2 and n >= 2")
    if p < 2 * m or math.isinf(p):
        raise ValueError(f"need 2m <= p < inf, got p = {p}")
    rho = hl_exponent(m, p)
    basis = mi.enumerate_exponents(m, n)
    index = {a: j for j, a in enumerate(basis)}
    fits = n >= m
    w_ratio = witness_ratio(m, p).value if fits else None

    def score(c, inner_seed):
        P = _to_poly(c, basis, m, n, rho)
        val = sup_norm(P, p, n_starts=inner_starts, seed=inner_seed).best_value
        return P, (1.0 / val if val > 0 else 0.0)

    best = None  # (ratio, poly, is_witness)
    history = []
    for r in range(restarts):
        rng = np.random.default_rng([seed, r])
        inner_seed = int(rng.integers(2**31))
        c = np.zeros(len(basis))
        if r == 0 and fits:
            W = build_witness(m).embed(n)
            for a, v in W.terms.items():
                c[index[a]] = v
            cur_P, cur_ratio, cur_w = _to_poly(c, basis, m, n, rho), w_ratio, True
        else:
            R = random_polynomial(m, n, REAL, seed=int(rng.integers(2**31)))
            c = np.array([R.terms.get(a, 0.0) for a in basis])
            (cur_P, cur_ratio), cur_w = score(c, inner_seed), False
        c = np.array([cur_P.terms.get(a, 0.0) for a in basis])
        if best is None or cur_ratio > best[0]:
            best = (cur_ratio, cur_P, cur_w)
        history.append({"restart": r, "iter": 0, "ratio": cur_ratio, "best": best[0]})
        for it in range(1, iters + 1):
            j = int(rng.integers(len(basis)))
            trial = c.copy()
            top = np.max(np.abs(c))
            if trial[j] == 0.0:
                trial[j] = rng.choice([-1.0, 1.0]) * step * top * rng.random()
            elif rng.random() < 0.1:
                trial[j] = -trial[j]
            else:
                trial[j] *= math.exp(step * rng.standard_normal())
            P, ratio = score(trial, inner_seed)
            if ratio > cur_ratio:
                c = np.array([P.terms.get(a, 0.0) for a in basis])
                cur_P, cur_ratio, cur_w = P, ratio, False
                if ratio > best[0]:
                    best = (ratio, P, False)
            history.append({"restart": r, "iter": it, "ratio": cur_ratio, "best": best[0]})

    ratio, P, is_w = best
    if is_w:
        return SearchResult(P, ratio, history, True, "certified (witness closed form)", w_ratio)
    check = hl_ratio(P, p, n_starts=4 * inner_starts, seed=seed + 1)
    ratio = min(ratio, check["ratio"])
    if fits and ratio < w_ratio:
        W = _to_poly(np.array([build_witness(m).embed(n).terms.get(a, 0.0) for a in basis]),
                     basis, m, n, rho)
        return SearchResult(W, w_ratio, history, True, "certified (witness closed form)", w_ratio)
    return SearchResult(P, ratio, history, False, "heuristic: inner norm is a lower bound", w_ratio)


def history_csv(history) -> str:
    lines = ["restart,iter,ratio,best"]
    for h in history:
        lines.append(f"{h['restart']},{h['iter']},{h['ratio']:.12g},{h['best']:.12g}")
    return "\n".join(lines) + "\n"
