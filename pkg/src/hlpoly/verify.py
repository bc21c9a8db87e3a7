"""Checkers for the inequalities the bounds are built from.

Every check returns a :class:`CheckReport`. ``holds`` follows the usual
rule ``lhs <= rhs * (1 + tol)``, widened to ``rhs + 3 * stderr`` for Monte
Carlo right-hand sides. ``verdict`` refines it:

* ``pass``: holds outright.
* ``within-band``: holds only thanks to the 3-sigma guard band.
* ``inconclusive``: numerically violated, but the violating side is a
  numeric sup-norm lower bound or an approximate measure, so it is not
  evidence against the inequality.
* ``fail``: a hard violation.
"""

from __future__ import annotations

import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import multiindex as mi
from .norms import (
    INF, SpaceParams, coeff_norm, format_p, lp_norm, parse_p, sphere_mean_power,
    sup_norm, torus_mean_power,
)
from .polynomial import COMPLEX, REAL, HomoPoly, as_complex, complexify, polar, random_polynomial

DEFAULT_TOL = 1e-12


@dataclass
class CheckReport:
    check: str
    lhs: float
    rhs: float
    holds: bool
    margin: float
    verdict: str
    details: str = ""
    seed: int | None = None
    stderr: float | None = None
    extra: dict = field(default_factory=dict)

    @property
    def hard_failure(self) -> bool:
        return self.verdict == "fail"

    def to_record(self) -> dict:
        rec = {"check": self.check, "holds": self.holds, "lhs": self.lhs, "rhs": self.rhs,
               "margin": self.margin, "seed": self.seed, "verdict": self.verdict}
        if self.stderr is not None:
            rec["stderr"] = self.stderr
        if self.details:
            rec["details"] = self.details
        for k, v in self.extra.items():
            rec[k] = format_p(v) if isinstance(v, float) and math.isinf(v) else v
        return rec


def _verdict(lhs, rhs, tol, band=0.0, soft=False):
    if lhs <= rhs * (1 + tol):
        return True, "pass"
    if lhs <= (rhs + band) * (1 + tol):
        return True, "within-band"
    return False, "inconclusive" if soft else "fail"


def _derive_seed(*parts: int) -> int:
    return int(np.random.SeedSequence(list(parts)).generate_state(1)[0])


# ---------------------------------------------------------------------------
# Blei mixed-norm interpolation


@dataclass(frozen=True)
class BleiInstance:
    tensor: np.ndarray
    m: int
    n: int
    k: int
    s: float
    q: float
    rho: float

    def __post_init__(self):
        t = np.asarray(self.tensor)
        if t.shape != (self.n,) * self.m:
            raise ValueError(f"tensor shape {t.shape} is not ({self.n},)*{self.m}")
        if self.n ** self.m > 10**6:
            raise ValueError("n^m exceeds 10^6")
        if not 1 <= self.k <= self.m:
            raise ValueError(f"k = {self.k} out of range 1..{self.m}")
        if not 1 <= self.s <= self.q:
            raise ValueError(f"need 1 <= s <= q, got s={self.s}, q={self.q}")
        resid = abs(self.m / self.rho - self.k / self.s - (self.m - self.k) / self.q)
        if resid > 1e-12:
            raise ValueError(f"m/rho = k/s + (m-k)/q violated by {resid:.3g}")


def solve_rho(m: int, k: int, s: float, q: float) -> float:
    return m / (k / s + (m - k) / q)


def blei_sides(inst: BleiInstance) -> tuple[float, float]:
    a = np.abs(np.asarray(inst.tensor, dtype=complex if np.iscomplexobj(inst.tensor) else float))
    m, k, s, q = inst.m, inst.k, inst.s, inst.q
    lhs = float(np.sum(a**inst.rho) ** (1 / inst.rho))
    S_all = mi.subsets(m, k)
    log_rhs = 0.0
    for S in S_all:
        hat = tuple(ax for ax in range(m) if ax not in S)
        inner = np.sum(a**q, axis=hat) if hat else a**q
        outer = np.sum(inner ** (s / q))
        if outer == 0:
            return lhs, 0.0
        log_rhs += math.log(outer) / s
    return lhs, math.exp(log_rhs / len(S_all))


def check_blei(inst: BleiInstance, tol: float = DEFAULT_TOL, seed: int | None = None) -> CheckReport:
    lhs, rhs = blei_sides(inst)
    holds, verdict = _verdict(lhs, rhs, tol)
    return CheckReport("blei", lhs, rhs, holds, rhs - lhs, verdict,
                       f"m={inst.m} n={inst.n} k={inst.k} s={inst.s:.6g} q={inst.q:.6g} rho={inst.rho:.6g}",
                       seed=seed, extra={"m": inst.m, "n": inst.n, "k": inst.k})


def random_blei_instance(m: int, n: int, k: int, seed: int) -> BleiInstance:
    """Draw s ~ U[1,2], q ~ U[s,4], solve rho, and a random tensor.

    A third of the tensors are sparse to probe the equality regime.
    """
    rng = np.random.default_rng(seed)
    while True:
        s = rng.uniform(1.0, 2.0)
        q = rng.uniform(s, 4.0)
        rho = solve_rho(m, k, s, q)
        if s <= rho <= q:
            break
    a = rng.standard_normal((n,) * m)
    style = rng.integers(3)
    if style == 1:
        a *= rng.random(a.shape) < 0.3
    elif style == 2:
        a = np.abs(a) ** 4 * rng.choice([-1.0, 1.0], a.shape)
    if not a.any():
        a.flat[rng.integers(a.size)] = 1.0
    return BleiInstance(a, m, n, k, s, q, rho)


BLEI_SHAPES = ((2, 2, 1), (2, 3, 1), (3, 2, 1), (3, 2, 2), (4, 2, 2))


def run_blei_suite(trials: int = 1000, seed: int = 0, shapes=BLEI_SHAPES,
                   workers: int = 1) -> list[CheckReport]:
    jobs = [(shape, t) for shape in shapes for t in range(trials)]

    def one(job):
        (m, n, k), t = job
        sd = _derive_seed(seed, m, n, k, t)
        return check_blei(random_blei_instance(m, n, k, sd), seed=sd)

    return _map(one, jobs, workers)


# ---------------------------------------------------------------------------
# Bayart torus inequality


def check_bayart(P: HomoPoly, s: float, samples: int = 100_000, seed: int = 0,
                 tol: float = DEFAULT_TOL) -> CheckReport:
    if not 1 <= s <= 2:
        raise ValueError(f"s = {s} outside [1, 2]")
    P = as_complex(P)
    lhs = coeff_norm(P, 2.0)
    est = torus_mean_power(P, s, samples, seed)
    factor = (2 / s) ** (P.m / 2)
    rhs = factor * est.mean
    band = 3 * factor * est.stderr
    holds, verdict = _verdict(lhs, rhs, tol, band)
    return CheckReport("bayart", lhs, rhs, holds, rhs - lhs, verdict,
                       f"m={P.m} n={P.n} s={s}", seed=seed, stderr=factor * est.stderr,
                       extra={"s": s, "samples": samples, "m": P.m, "n": P.n})


def run_bayart_suite(trials: int = 200, s_values=(1.0, 1.5, 2.0), samples: int = 100_000,
                     seed: int = 0, max_m: int = 4, max_n: int = 3,
                     workers: int = 1) -> list[CheckReport]:
    def one(t):
        sd = _derive_seed(seed, t)
        rng = np.random.default_rng(sd)
        m = int(rng.integers(1, max_m + 1))
        n = int(rng.integers(1, max_n + 1))
        P = random_polynomial(m, n, COMPLEX, seed=sd, distribution="gaussian")
        return [check_bayart(P, s, samples, sd) for s in s_values]

    return [r for rs in _map(one, range(trials), workers) for r in rs]


# ---------------------------------------------------------------------------
# Harris polarization inequality


def harris_factor(partition) -> float:
    """m1!...mk! m^m / (m1^m1 ... mk^mk m!), with 0^0 = 1."""
    m = sum(partition)
    if m <= mi.MAX_EXACT_DEGREE:
        num = math.prod(math.factorial(mj) for mj in partition) * m**m
        den = math.prod(mj**mj for mj in partition) * math.factorial(m)
        return num / den
    logf = m * math.log(m) - math.lgamma(m + 1)
    for mj in partition:
        logf += math.lgamma(mj + 1) - (mj * math.log(mj) if mj else 0.0)
    return math.exp(logf)


def certified_sup_upper(P: HomoPoly, p: float) -> float:
    """sum |a_alpha| sup|z^alpha| over the l_p ball: a certified upper bound
    on ||P||, using sup|z^alpha| = prod (alpha_j/m)^(alpha_j/p)."""
    p = parse_p(p)
    total = 0.0
    for alpha, c in P.terms.items():
        if math.isinf(p):
            w = 1.0
        else:
            w = math.exp(sum(a / p * math.log(a / P.m) for a in alpha if a))
        total += abs(c) * w
    return total


def repeated_polar(P: HomoPoly, partition, points) -> complex:
    """L(x1 (m1 times), ..., xk (mk times)) via the sparse polar expansion."""
    args = [np.asarray(x) for x, mj in zip(points, partition) for _ in range(mj)]
    return complex(polar(P).apply(*args))


def check_harris(P: HomoPoly, partition, points, space: SpaceParams | float,
                 n_starts: int = 32, seed: int = 0, tol: float = 1e-9) -> CheckReport:
    partition = tuple(int(mj) for mj in partition)
    if len(partition) != len(points):
        raise ValueError(f"{len(partition)} blocks but {len(points)} points")
    if any(mj < 0 for mj in partition) or sum(partition) != P.m:
        raise ValueError(f"partition {partition} does not sum to m = {P.m}")
    if not isinstance(space, SpaceParams):
        space = SpaceParams(space, P.n)
    pts = [np.asarray(x, dtype=complex) for x in points]
    for x in pts:
        if x.shape != (P.n,):
            raise ValueError(f"point of shape {x.shape}, expected ({P.n},)")
        if abs(float(lp_norm(x, space.p)) - 1.0) > 1e-10:
            raise ValueError("point not on the unit sphere of l_p^n")
    Pc = as_complex(P)
    lhs = abs(repeated_polar(Pc, partition, pts))
    factor = harris_factor(partition)
    norm = sup_norm(Pc, space, n_starts=n_starts, seed=seed).best_value
    cert = certified_sup_upper(Pc, space.p)
    rhs = factor * norm
    holds, verdict = _verdict(lhs, rhs, tol)
    details = "holds modulo sup-norm lower bound"
    if not holds:
        if lhs > factor * cert * (1 + tol):
            verdict = "fail"
            details = "exceeds factor times certified upper bound"
        else:
            verdict = "inconclusive"
            details = "exceeds numeric bound only; suspicious"
    return CheckReport("harris", lhs, rhs, holds, rhs - lhs, verdict, details, seed=seed,
                       extra={"factor": factor, "sup_norm": norm, "certified_upper": cert,
                              "partition": list(partition), "p": space.p})


def _compositions(m: int):
    """Ordered partitions of m into positive parts."""
    if m == 0:
        yield ()
        return
    for first in range(1, m + 1):
        for rest in _compositions(m - first):
            yield (first,) + rest


def random_sphere_point(rng: np.random.Generator, n: int, p: float) -> np.ndarray:
    z = rng.standard_normal(n) + 1j * rng.standard_normal(n)
    if math.isinf(p):
        z = rng.uniform(0, 1, n) * np.exp(1j * rng.uniform(0, 2 * math.pi, n))
    return z / lp_norm(z, p)


def run_harris_suite(trials: int = 200, p=INF, seed: int = 0, max_m: int = 4, max_n: int = 3,
                     n_starts: int = 16, workers: int = 1) -> list[CheckReport]:
    p = parse_p(p)

    def one(t):
        sd = _derive_seed(seed, t)
        rng = np.random.default_rng(sd)
        m = int(rng.integers(2, max_m + 1))
        n = int(rng.integers(1, max_n + 1))
        P = random_polynomial(m, n, COMPLEX, seed=sd, distribution="gaussian")
        parts = list(_compositions(m))
        part = parts[t % len(parts)]
        pts = [random_sphere_point(rng, n, p) for _ in part]
        return check_harris(P, part, pts, SpaceParams(p, n), n_starts=n_starts, seed=sd)

    return _map(one, range(trials), workers)


# ---------------------------------------------------------------------------
# Complexification


def check_complexification(P: HomoPoly, space: SpaceParams | float, n_starts: int = 32,
                           seed: int = 0, tol: float = 1e-6) -> CheckReport:
    if P.is_complex:
        raise ValueError("check_complexification needs a real polynomial")
    if not isinstance(space, SpaceParams):
        space = SpaceParams(space, P.n)
    real = sup_norm(P, space, n_starts=n_starts, seed=seed)
    cplx = sup_norm(complexify(P), space, n_starts=n_starts, seed=seed)
    bound = 2.0 ** (P.m - 1)
    ratio = cplx.best_value / real.best_value if real.best_value > 0 else 0.0
    holds = ratio <= bound * (1 + tol)
    verdict = "pass" if holds else "inconclusive"
    return CheckReport("complexify", cplx.best_value, bound * real.best_value, holds,
                       bound * real.best_value - cplx.best_value, verdict,
                       "both norms are numeric lower bounds", seed=seed,
                       extra={"ratio": ratio, "bound": bound, "norm_real": real.best_value,
                              "norm_complex": cplx.best_value, "m": P.m, "n": P.n, "p": space.p})


def run_complexify_suite(trials: int = 100, seed: int = 11, max_m: int = 4, max_n: int = 3,
                         n_starts: int = 16, workers: int = 1) -> list[CheckReport]:
    def one(t):
        sd = _derive_seed(seed, t)
        rng = np.random.default_rng(sd)
        m = int(rng.integers(1, max_m + 1))
        n = int(rng.integers(1, max_n + 1))
        P = random_polynomial(m, n, REAL, seed=sd)
        return check_complexification(P, SpaceParams(2 * m, n), n_starts=n_starts, seed=sd)

    return _map(one, range(trials), workers)


# ---------------------------------------------------------------------------
# Integral inequality with constant K^m


def eq888_exponent(p: float) -> float:
    return 2.0 if math.isinf(p) else 2 * p / (p - 2)


def check_eq888(P: HomoPoly, p, s: float, K: float, samples: int = 100_000, seed: int = 0,
                tol: float = DEFAULT_TOL) -> CheckReport:
    """(sum |a|^(2p/(p-2)))^((p-2)/(2p)) <= K^m (int_{S_p} |P|^s)^(1/s).

    Exact Haar sampling at p = inf; the cone measure otherwise, in which case
    a violation is reported as inconclusive rather than failed.
    """
    p = parse_p(p)
    if p <= 2:
        raise ValueError("need p > 2")
    r = eq888_exponent(p)
    if not 1 <= s <= r:
        raise ValueError(f"s = {s} outside [1, {r:g}]")
    if K <= 0:
        raise ValueError("K must be positive")
    P = as_complex(P)
    lhs = coeff_norm(P, r)
    if math.isinf(p):
        est = torus_mean_power(P, s, samples, seed)
    else:
        est = sphere_mean_power(P, SpaceParams(p, P.n), s, samples, seed)
    Km = K**P.m
    rhs = Km * est.mean
    holds, verdict = _verdict(lhs, rhs, tol, 3 * Km * est.stderr, soft=not math.isinf(p))
    label = "exact torus measure" if math.isinf(p) else "approximate measure (cone)"
    return CheckReport("eq888", lhs, rhs, holds, rhs - lhs, verdict, label, seed=seed,
                       stderr=Km * est.stderr,
                       extra={"p": p, "s": s, "K": K, "measure": est.measure, "samples": samples})


def _map(fn, items, workers: int):
    items = list(items)
    if workers <= 1:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=workers) as ex:
        return list(ex.map(fn, items))
