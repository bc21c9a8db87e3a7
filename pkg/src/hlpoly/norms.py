"""Both sides of the Hardy-Littlewood inequality.

Coefficient norms are exact; sup-norms are numerical maximizations and
therefore lower bounds on ||P||; integral norms are Monte Carlo estimates.
``p = math.inf`` denotes the sup-norm space l_inf^n (the torus in the
complex case).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np
from scipy.optimize import minimize

from .polynomial import HomoPoly, as_complex, evaluate, gradient

INF = math.inf
POLISH_TOP = 3


def parse_p(value) -> float:
    """Accept floats, ints and the spellings 'inf' / 'infinity'."""
    if isinstance(value, str) and value.strip().lower() in ("inf", "infinity", "oo"):
        return INF
    p = float(value)
    if math.isnan(p):
        raise ValueError("p is NaN")
    return p


def format_p(p: float) -> str | float:
    return "inf" if math.isinf(p) else p


@dataclass(frozen=True)
class SpaceParams:
    p: float
    n: int

    def __post_init__(self):
        object.__setattr__(self, "p", parse_p(self.p))
        if self.p < 1:
            raise ValueError(f"p must be >= 1, got {self.p}")
        if self.n < 1:
            raise ValueError(f"n must be >= 1, got {self.n}")


def lp_norm(x, p: float) -> np.ndarray:
    a = np.abs(np.asarray(x))
    if math.isinf(p):
        return a.max(axis=-1)
    return np.sum(a**p, axis=-1) ** (1.0 / p)


# ---------------------------------------------------------------------------
# Hardy-Littlewood exponent and coefficient norm


def hl_exponent(m: int, p) -> float:
    """rho = 2mp / (mp + p - 2m), with the p -> inf limit 2m / (m + 1)."""
    p = parse_p(p)
    if m < 1:
        raise ValueError("m must be >= 1")
    if p < 2 * m:
        raise ValueError(f"p = {p} < 2m = {2 * m}: Hardy-Littlewood exponent out of range")
    if math.isinf(p):
        return 2 * m / (m + 1)
    if p == 2 * m:
        return 2.0
    return 2 * m * p / (m * p + p - 2 * m)


def coeff_norm(P: HomoPoly, rho: float) -> float:
    if rho <= 0:
        raise ValueError("rho must be positive")
    if len(P) == 0:
        return 0.0
    a = np.abs(P.coeffs)
    # factor out the max to avoid overflow for large rho
    top = a.max()
    return float(top * np.sum((a / top) ** rho) ** (1.0 / rho))


# ---------------------------------------------------------------------------
# Sup-norm on the unit sphere of l_p^n


@dataclass(frozen=True)
class SupNormResult:
    best_value: float
    maximizer: np.ndarray
    kkt_residual: float
    n_starts: int
    converged: bool
    p: float = INF
    label: str = "numeric lower bound"


class _Ratio:
    """|P(x)| / ||x||_p^m and its gradient in real coordinates.

    The coordinates are x (real field), (Re z, Im z) (complex, finite p) or
    phases theta with z = exp(i theta) (complex, p = inf). For a real field
    with p = inf the ratio is replaced by sign * P(x) on the box [-1, 1]^n.
    """

    def __init__(self, P: HomoPoly, p: float, sign: float = 1.0):
        self.P, self.p, self.sign, self.n, self.m = P, p, sign, P.n, P.m
        if P.is_complex:
            self.mode = "torus" if math.isinf(p) else "complex"
        else:
            self.mode = "box" if math.isinf(p) else "real"

    @property
    def dim(self):
        return 2 * self.n if self.mode == "complex" else self.n

    def point(self, y: np.ndarray) -> np.ndarray:
        if self.mode == "complex":
            return y[: self.n] + 1j * y[self.n :]
        if self.mode == "torus":
            return np.exp(1j * y)
        return y

    def value_grad(self, y: np.ndarray) -> tuple[float, np.ndarray]:
        """Return (objective, gradient) of the quantity being maximized."""
        n, m, p = self.n, self.m, self.p
        x = self.point(y)
        v, g = gradient(self.P, x[None, :])
        v, g = v[0], g[0]
        if self.mode == "box":
            return self.sign * v, self.sign * g
        if self.mode == "real":
            a = np.abs(y)
            N = np.sum(a**p) ** (1 / p)
            dN = np.sign(y) * a ** (p - 1) / N ** (p - 1)
            r = v / N**m
            return self.sign * r, self.sign * (g / N**m - m * r * dN / N)
        if self.mode == "torus":
            # |P|^2 with d/dtheta_j P = i z_j dP/dz_j
            w = np.conj(v) * g * x
            return float(abs(v) ** 2), -2.0 * np.imag(w)
        a = np.abs(x)
        N = np.sum(a**p) ** (1 / p)
        scale = a ** (p - 2) if p >= 2 else np.where(a > 0, a ** (p - 2), 0.0)
        dN = np.concatenate([scale * x.real, scale * x.imag]) / N ** (p - 1)
        w = np.conj(v) * g
        d_abs2 = np.concatenate([2 * w.real, -2 * w.imag])
        f = abs(v) ** 2 / N ** (2 * m)
        return float(f), d_abs2 / N ** (2 * m) - 2 * m * f * dN / N

    def modulus_grad_norm(self, y: np.ndarray) -> float:
        """Norm of the gradient of |P(x)| / ||x||_p^m at y."""
        f, g = self.value_grad(y)
        if self.mode in ("complex", "torus"):
            return float(np.linalg.norm(g) / (2 * math.sqrt(f))) if f > 0 else 0.0
        if self.mode == "box":
            # projected gradient for the box constraint
            g = g.copy()
            g[(y >= 1.0) & (g > 0)] = 0.0
            g[(y <= -1.0) & (g < 0)] = 0.0
        return float(np.linalg.norm(g))

    def start(self, rng: np.random.Generator) -> np.ndarray:
        if self.mode == "torus":
            return rng.uniform(0.0, 2 * math.pi, self.n)
        if self.mode == "box":
            return rng.uniform(-1.0, 1.0, self.n)
        y = rng.standard_normal(self.dim)
        return y / lp_norm(self.point(y), self.p)

    def fun(self, y):
        f, g = self.value_grad(y)
        return -f, -g

    def ascend(self, y0: np.ndarray, max_iters: int, tol: float) -> np.ndarray:
        bounds = [(-1.0, 1.0)] * self.n if self.mode == "box" else None
        opts = {"maxiter": max_iters, "gtol": tol * 1e-2, "ftol": 1e-16, "maxcor": 20}
        res = minimize(self.fun, y0, jac=True, method="L-BFGS-B", bounds=bounds, options=opts)
        y = res.x if np.all(np.isfinite(res.x)) else y0
        return y if self.mode == "box" else self._renormalize(y)

    def polish(self, y: np.ndarray, max_iters: int, tol: float) -> np.ndarray:
        if self.mode == "box":
            return y
        res = minimize(self.fun, y, jac=True, method="BFGS",
                       options={"maxiter": max_iters, "gtol": tol * 1e-2})
        if np.all(np.isfinite(res.x)) and -res.fun >= self.value_grad(y)[0]:
            y = self._renormalize(res.x)
        return self._newton_polish(y)

    def _newton_polish(self, y, steps: int = 3, h: float = 1e-6):
        # Hessian is singular along scaling (and phase) directions: lstsq step
        f0, g = self.value_grad(y)
        for _ in range(steps):
            H = np.empty((y.size, y.size))
            for j in range(y.size):
                e = np.zeros_like(y)
                e[j] = h
                H[:, j] = (self.value_grad(y + e)[1] - self.value_grad(y - e)[1]) / (2 * h)
            step = np.linalg.lstsq(0.5 * (H + H.T), -g, rcond=1e-9)[0]
            y_new = self._renormalize(y + step)
            f_new, g_new = self.value_grad(y_new)
            if not (np.isfinite(f_new) and f_new >= f0 - 1e-14 * abs(f0)
                    and np.linalg.norm(g_new) < np.linalg.norm(g)):
                break
            y, f0, g = y_new, f_new, g_new
        return y

    def _renormalize(self, y):
        if self.mode == "torus":
            return np.mod(y, 2 * math.pi)
        nrm = lp_norm(self.point(y), self.p)
        return y / nrm if nrm > 0 else y


def sup_norm(P: HomoPoly, space: SpaceParams | float, n_starts: int = 32,
             max_iters: int = 500, tol: float = 1e-10, seed: int = 0) -> SupNormResult:
    """Numerically maximize |P| on the unit sphere of l_p^n.

    Each start ``k`` draws its initial point from ``default_rng([seed, k])``
    so results do not depend on evaluation order. Real polynomials maximize
    both P and -P; complex ones maximize |P|^2 over 2n real coordinates (on
    the torus via phases when p = inf). The value is attained at the
    returned feasible point, hence always a lower bound on ||P||.
    """
    if not isinstance(space, SpaceParams):
        space = SpaceParams(space, P.n)
    if space.n != P.n:
        raise ValueError(f"space dimension {space.n} != polynomial dimension {P.n}")
    p = space.p
    if len(P) == 0:
        x = np.zeros(P.n, dtype=complex if P.is_complex else float)
        x[0] = 1.0
        return SupNormResult(0.0, x, 0.0, 0, True, p)
    scale = float(np.max(np.abs(P.coeffs)))
    Q = P.scale(1.0 / scale)
    signs = (1.0,) if P.is_complex else (1.0, -1.0)
    cands = []
    for k in range(n_starts):
        rng = np.random.default_rng([seed, k])
        y0 = None
        for sgn in signs:
            R = _Ratio(Q, p, sgn)
            if y0 is None:
                y0 = R.start(rng)
            y = R.ascend(y0, max_iters, tol)
            val = abs(complex(evaluate(Q, _normalize(R.point(y), p))))
            cands.append((val, k, sgn, R, y))
    # stable order: ties resolved by start index, then sign
    cands.sort(key=lambda c: (-c[0], c[1], -c[2]))
    best = (-INF, None, None, None)
    for _, _, _, R, y in cands[:POLISH_TOP]:
        y = R.polish(y, max_iters, tol)
        x = _normalize(R.point(y), p)
        val = abs(complex(evaluate(Q, x)))
        if val > best[0]:
            best = (val, x, R, y)
    _, x, R, y = best
    if R.mode == "box":
        y = x.real.copy()
    elif R.mode == "real":
        y = x.copy()
    elif R.mode == "complex":
        y = np.concatenate([x.real, x.imag])
    resid = scale * R.modulus_grad_norm(y)
    value = abs(complex(evaluate(P, x)))
    return SupNormResult(value, x, resid, n_starts, resid < tol, p)


def _normalize(x: np.ndarray, p: float) -> np.ndarray:
    if math.isinf(p) and np.iscomplexobj(x):
        # on the torus every coordinate has modulus one
        return x / np.abs(x)
    nrm = lp_norm(x, p)
    return x / nrm


# ---------------------------------------------------------------------------
# Monte Carlo integral norms


@dataclass(frozen=True)
class McEstimate:
    mean: float
    stderr: float
    samples: int
    seed: int
    measure: str = "haar"
    extra: dict = field(default_factory=dict)


class _Welford:
    """Streaming mean/variance; chunks merge with Chan's update."""

    def __init__(self):
        self.n, self.mean, self.m2 = 0, 0.0, 0.0

    def add_chunk(self, values: np.ndarray) -> None:
        nb = values.size
        if nb == 0:
            return
        mb = float(values.mean())
        m2b = float(((values - mb) ** 2).sum())
        n = self.n + nb
        delta = mb - self.mean
        self.mean += delta * nb / n
        self.m2 += m2b + delta**2 * self.n * nb / n
        self.n = n

    @property
    def stderr(self) -> float:
        if self.n < 2:
            return 0.0
        return math.sqrt(self.m2 / (self.n - 1) / self.n)


CHUNK = 1 << 15


def _power_mean(P: HomoPoly, s: float, samples: int, seed: int, draw, measure: str) -> McEstimate:
    acc = _Welford()
    done, c = 0, 0
    while done < samples:
        size = min(CHUNK, samples - done)
        rng = np.random.default_rng([seed, c])
        z = draw(rng, size)
        acc.add_chunk(np.abs(evaluate(P, z)) ** s)
        done += size
        c += 1
    mean = acc.mean
    if mean <= 0:
        return McEstimate(0.0, 0.0, samples, seed, measure)
    # delta method for t -> t^(1/s)
    value = mean ** (1.0 / s)
    se = value / (s * mean) * acc.stderr
    return McEstimate(value, se, samples, seed, measure, {"raw_mean": mean, "raw_stderr": acc.stderr})


def torus_mean_power(P: HomoPoly, s: float, samples: int = 100_000, seed: int = 0) -> McEstimate:
    """(int_{T^n} |P|^s dmu)^(1/s) with mu the normalized Haar measure."""
    if s <= 0:
        raise ValueError("s must be positive")
    P = as_complex(P)
    n = P.n

    def draw(rng, size):
        return np.exp(1j * rng.uniform(0.0, 2 * math.pi, (size, n)))

    return _power_mean(P, s, samples, seed, draw, "haar")


def sample_cone(rng: np.random.Generator, size: int, n: int, p: float, complex_: bool) -> np.ndarray:
    """Points of the unit l_p sphere distributed by the cone measure.

    Coordinates have density proportional to exp(-|t|^p) (real) or
    exp(-|z|^p) on C (complex, uniform phase) before normalization.
    """
    if complex_:
        r = rng.gamma(2.0 / p, 1.0, (size, n)) ** (1.0 / p)
        x = r * np.exp(1j * rng.uniform(0.0, 2 * math.pi, (size, n)))
    else:
        r = rng.gamma(1.0 / p, 1.0, (size, n)) ** (1.0 / p)
        x = r * rng.choice([-1.0, 1.0], (size, n))
    return x / lp_norm(x, p)[:, None]


def sphere_mean_power(P: HomoPoly, space: SpaceParams | float, s: float,
                      samples: int = 100_000, seed: int = 0) -> McEstimate:
    """(mean of |P|^s over the cone measure of S_{l_p^n})^(1/s).

    The cone measure coincides with normalized surface measure only for
    p = 2; the estimate is labeled ``cone-measure``.
    """
    if not isinstance(space, SpaceParams):
        space = SpaceParams(space, P.n)
    if math.isinf(space.p):
        raise ValueError("p = inf: use torus_mean_power")
    if s <= 0:
        raise ValueError("s must be positive")
    p, n, cplx = space.p, P.n, P.is_complex

    def draw(rng, size):
        return sample_cone(rng, size, n, p, cplx)

    return _power_mean(P, s, samples, seed, draw, "cone-measure")
