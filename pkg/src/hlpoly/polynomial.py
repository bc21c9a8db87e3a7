"""Homogeneous polynomials stored as sparse exponent -> coefficient maps."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from . import multiindex as mi

REAL = "real"
COMPLEX = "complex"
DROP_BELOW = 1e-300


@dataclass(frozen=True)
class HomoPoly:
    """An m-homogeneous polynomial sum_alpha a_alpha x^alpha in n variables.

    ``terms`` maps exponent tuples to coefficients (float for the real
    field, complex for the complex field). Construction canonicalizes:
    exponents are validated, tiny coefficients are dropped and terms are
    sorted in ``enumerate_exponents`` order.
    """

    field: str
    n: int
    m: int
    terms: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.field not in (REAL, COMPLEX):
            raise ValueError(f"unknown field {self.field!r}")
        if self.n < 1 or self.m < 0:
            raise ValueError(f"need n >= 1 and m >= 0, got n={self.n}, m={self.m}")
        clean = {}
        for alpha, c in self.terms.items():
            alpha = tuple(int(a) for a in alpha)
            if len(alpha) != self.n or sum(alpha) != self.m or min(alpha) < 0:
                raise ValueError(f"exponent {alpha} invalid for n={self.n}, m={self.m}")
            if self.field == REAL:
                if isinstance(c, complex):
                    if c.imag != 0.0:
                        raise ValueError("real-field polynomial with nonzero imaginary part")
                    c = c.real
                c = float(c)
            else:
                c = complex(c)
            if abs(c) < DROP_BELOW:
                continue
            clean[alpha] = clean.get(alpha, 0) + c
        # descending-lex order, same as enumerate_exponents
        ordered = {a: clean[a] for a in sorted(clean, reverse=True) if clean[a] != 0}
        object.__setattr__(self, "terms", ordered)

    @property
    def is_complex(self) -> bool:
        return self.field == COMPLEX

    @cached_property
    def exponents(self) -> np.ndarray:
        return np.array(list(self.terms), dtype=np.int64).reshape(len(self.terms), self.n)

    @cached_property
    def coeffs(self) -> np.ndarray:
        dtype = complex if self.is_complex else float
        return np.array(list(self.terms.values()), dtype=dtype)

    def __len__(self):
        return len(self.terms)

    def coefficient(self, alpha) -> float | complex:
        return self.terms.get(tuple(alpha), 0.0)

    def scale(self, c) -> HomoPoly:
        fld = COMPLEX if (self.is_complex or isinstance(c, complex)) else REAL
        return HomoPoly(fld, self.n, self.m, {a: c * v for a, v in self.terms.items()})

    def embed(self, n: int) -> HomoPoly:
        """Same polynomial viewed in n >= self.n variables."""
        if n < self.n:
            raise ValueError("cannot embed into fewer variables")
        pad = (0,) * (n - self.n)
        return HomoPoly(self.field, n, self.m, {a + pad: c for a, c in self.terms.items()})

    def __call__(self, x):
        return evaluate(self, x)

    def to_json(self) -> str:
        return to_json(self)


def _powers(x: np.ndarray, m: int) -> np.ndarray:
    # (N, n) -> (N, n, m+1) by repeated multiplication; complex ** would take
    # a different rounding path than real ** on real-valued inputs
    pw = np.empty(x.shape + (m + 1,), dtype=x.dtype)
    pw[..., 0] = 1
    for k in range(1, m + 1):
        pw[..., k] = pw[..., k - 1] * x
    return pw


def _monomials(E: np.ndarray, x: np.ndarray, m: int) -> np.ndarray:
    # x: (N, n) -> (N, T) table of x^alpha
    pw = _powers(x, m)
    cols = np.arange(E.shape[1])
    return np.prod(pw[:, cols, E], axis=-1) if E.size else np.ones((x.shape[0], 0), x.dtype)


def _dot(M: np.ndarray, c: np.ndarray) -> np.ndarray:
    # real matmuls only, so a complexified polynomial at a real point
    # reproduces the real evaluation bit for bit
    if not (np.iscomplexobj(M) or np.iscomplexobj(c)):
        return (M * c).sum(axis=-1)
    Mr, Mi, cr, ci = M.real, np.imag(M), c.real, np.imag(c)
    re = (Mr * cr).sum(axis=-1) - (Mi * ci).sum(axis=-1)
    im = (Mr * ci).sum(axis=-1) + (Mi * cr).sum(axis=-1)
    return re + 1j * im


def evaluate(P: HomoPoly, x):
    """Evaluate P at a point or a batch of points (last axis has length n)."""
    x = np.asarray(x)
    if x.shape[-1:] != (P.n,):
        raise ValueError(f"point dimension {x.shape[-1:] } does not match n = {P.n}")
    if np.iscomplexobj(x) and not P.is_complex:
        raise ValueError("complex point for a real-field polynomial; complexify first")
    batch = x.reshape(-1, P.n)
    if len(P) == 0:
        vals = np.zeros(batch.shape[0], dtype=np.result_type(batch, P.coeffs))
    else:
        vals = _dot(_monomials(P.exponents, batch, P.m), P.coeffs)
    vals = vals.reshape(x.shape[:-1])
    return vals[()] if vals.ndim == 0 else vals


def gradient(P: HomoPoly, x: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Return (P(x), dP/dx) for a batch ``x`` of shape (N, n).

    For complex x this is the holomorphic derivative.
    """
    E = P.exponents
    c = P.coeffs
    N = x.shape[0]
    if len(P) == 0:
        return np.zeros(N, x.dtype), np.zeros_like(x)
    pw = _powers(x, P.m)
    cols = np.arange(P.n)
    vals = np.prod(pw[:, cols, E], axis=-1) @ c
    grad = np.empty((N, P.n), dtype=np.result_type(x, c))
    for j in range(P.n):
        Ej = E.copy()
        Ej[:, j] = np.maximum(Ej[:, j] - 1, 0)
        grad[:, j] = np.prod(pw[:, cols, Ej], axis=-1) @ (c * E[:, j])
    return vals, grad


def polar_coefficient(P: HomoPoly, i) -> float | complex:
    """L(e_{i_1}, ..., e_{i_m}) for the symmetric m-linear polar L of P.

    Indices are 0-based. Equals a_alpha / multinomial(m, alpha) where
    alpha is the exponent of ``i``.
    """
    i = tuple(i)
    if len(i) != P.m:
        raise ValueError(f"index tuple of length {len(i)} for degree {P.m}")
    alpha = mi.exponent_of(i, P.n)
    a = P.terms.get(alpha)
    if a is None:
        return 0.0
    return a / mi.multinomial(P.m, alpha)


@dataclass(frozen=True)
class MultilinearView:
    """The polar form of ``source`` as a lazy accessor; never a dense tensor."""

    source: HomoPoly

    @property
    def m(self):
        return self.source.m

    @property
    def n(self):
        return self.source.n

    def __getitem__(self, i):
        return polar_coefficient(self.source, i)

    def nonzero(self):
        """Yield (canonical tuple, value) for each nonzero class."""
        for alpha in self.source.terms:
            i = mi.canonical_index(alpha)
            yield i, self[i]

    def apply(self, *points) -> complex | float:
        """L(y_1, ..., y_m) by sparse expansion over the orbit of each term."""
        if len(points) != self.m:
            raise ValueError(f"need {self.m} arguments, got {len(points)}")
        Y = np.asarray(points)
        total = 0.0
        for i, val in self.nonzero():
            acc = 0.0
            for j in mi.distinct_permutations(i):
                acc += np.prod(Y[np.arange(self.m), list(j)])
            total += val * acc
        return total


def polar(P: HomoPoly) -> MultilinearView:
    return MultilinearView(P)


def restrict_diagonal(L: MultilinearView) -> HomoPoly:
    """Recover P(x) = L(x, ..., x) from the polar accessor."""
    P = L.source
    terms = {}
    for i, val in L.nonzero():
        alpha = mi.exponent_of(i, P.n)
        terms[alpha] = mi.multinomial(P.m, alpha) * val
    return HomoPoly(P.field, P.n, P.m, terms)


def complexify(P: HomoPoly) -> HomoPoly:
    if P.is_complex:
        raise ValueError("polynomial is already complex")
    return HomoPoly(COMPLEX, P.n, P.m, {a: complex(c) for a, c in P.terms.items()})


def as_complex(P: HomoPoly) -> HomoPoly:
    return P if P.is_complex else complexify(P)


def random_polynomial(m: int, n: int, field: str = REAL, seed: int = 0,
                      distribution: str = "uniform_pm1", k: int | None = None) -> HomoPoly:
    """Seeded random polynomial.

    ``distribution`` is one of ``uniform_pm1`` (coefficients uniform in
    [-1, 1]), ``gaussian`` or ``sparse`` (k terms on a random support with
    Gaussian values). Complex draws use independent real and imaginary parts.
    """
    if m < 1 or n < 1:
        raise ValueError("need m >= 1 and n >= 1")
    rng = np.random.default_rng(seed)
    alphas = mi.enumerate_exponents(m, n)
    if distribution == "sparse":
        if k is None:
            raise ValueError("sparse distribution needs k")
        idx = np.sort(rng.choice(len(alphas), size=min(k, len(alphas)), replace=False))
        alphas = [alphas[t] for t in idx]
        draw = rng.standard_normal
    elif distribution == "gaussian":
        draw = rng.standard_normal
    elif distribution == "uniform_pm1":
        draw = lambda size: rng.uniform(-1.0, 1.0, size)  # noqa: E731
    else:
        raise ValueError(f"unknown distribution {distribution!r}")
    vals = draw(len(alphas))
    if field == COMPLEX:
        vals = vals + 1j * draw(len(alphas))
    # measure-zero exact zeros would break the term count contract
    vals = np.where(np.abs(vals) < 1e-12, 1.0, vals)
    return HomoPoly(field, n, m, {a: v.item() for a, v in zip(alphas, vals)})


def monomial(alpha, coeff=1.0, field: str = REAL) -> HomoPoly:
    alpha = tuple(alpha)
    return HomoPoly(field, len(alpha), sum(alpha), {alpha: coeff})


# -- JSON ---------------------------------------------------------------

def to_dict(P: HomoPoly) -> dict:
    terms = []
    for alpha, c in P.terms.items():
        c = complex(c)
        t = {"alpha": list(alpha), "re": c.real}
        if P.is_complex:
            t["im"] = c.imag
        terms.append(t)
    return {"field": P.field, "n": P.n, "m": P.m, "terms": terms}


def from_dict(d: dict) -> HomoPoly:
    try:
        fld, n, m = d["field"], int(d["n"]), int(d["m"])
        terms = {}
        for t in d["terms"]:
            alpha = tuple(t["alpha"])
            if any(not isinstance(a, int) or isinstance(a, bool) for a in alpha):
                raise ValueError(f"non-integer exponent {list(alpha)}")
            re = float(t.get("re", 0.0))
            im = float(t.get("im", 0.0))
            if fld == REAL and im != 0.0:
                raise ValueError("real-field term with nonzero 'im'")
            if alpha in terms:
                raise ValueError(f"duplicate exponent {list(alpha)}")
            terms[alpha] = complex(re, im) if fld == COMPLEX else re
    except (KeyError, TypeError) as exc:
        raise ValueError(f"malformed polynomial JSON: {exc!r}") from exc
    if not all(math.isfinite(abs(c)) for c in terms.values()):
        raise ValueError("non-finite coefficient")
    return HomoPoly(fld, n, m, terms)


def to_json(P: HomoPoly) -> str:
    return json.dumps(to_dict(P))


def from_json(text: str) -> HomoPoly:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValueError(f"malformed polynomial JSON: {exc}") from exc
    if not isinstance(d, dict):
        raise ValueError("malformed polynomial JSON: top level must be an object")
    return from_dict(d)
