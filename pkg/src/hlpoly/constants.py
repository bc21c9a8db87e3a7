"""Closed-form bounds for the polynomial Hardy-Littlewood constants.

Every formula is evaluated as a log and exponentiated at the end, so m up
to a few hundred is fine. Exponents that are rational functions of p are
replaced by their exact limits at ``p = inf``.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

from .norms import INF, format_p, parse_p

LN2 = math.log(2.0)


def _lfact(k: int) -> float:
    return math.lgamma(k + 1)


def _ratio_limit(num, den, p: float, lim: float) -> float:
    """num(p)/den(p) for finite p; the supplied limit at p = inf."""
    return lim if math.isinf(p) else num(p) / den(p)


@dataclass(frozen=True)
class BoundReport:
    name: str
    kind: str  # "lower" | "upper"
    value: float
    m: int
    p: float
    provenance: str
    params: dict = field(default_factory=dict)
    label: str = ""

    def __post_init__(self):
        if self.kind not in ("lower", "upper"):
            raise ValueError(f"kind must be lower/upper, got {self.kind!r}")
        if not (math.isfinite(self.value) and self.value > 0):
            raise ValueError(f"bound {self.name} has invalid value {self.value}")

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "kind": self.kind,
            "value": self.value,
            "m": self.m,
            "p": format_p(self.p),
            "provenance": self.provenance,
            "params": {k: (format_p(v) if isinstance(v, float) and math.isinf(v) else v)
                       for k, v in self.params.items()},
            "label": self.label,
        }


EXTERNAL_DEFAULT = "external default (sqrt 2)^(k-1), not derived here"


@dataclass
class ConstantConfig:
    """User-supplied multilinear constants.

    ``bh_multilinear[k]`` is a k-linear Bohnenblust-Hille constant; missing k
    fall back to (sqrt 2)^(k-1) when ``use_default_bh`` is set.
    ``k_table[(s, p)]`` holds K_{s,p} values for the conditional bound; at
    p = inf the Bayart value sqrt(2/s) is used when no entry is given.
    """

    bh_multilinear: dict = field(default_factory=dict)
    k_table: dict = field(default_factory=dict)
    use_default_bh: bool = True

    def __post_init__(self):
        self.bh_multilinear = {int(k): float(v) for k, v in self.bh_multilinear.items()}
        self.k_table = {(float(s), parse_p(p)): float(v) for (s, p), v in self.k_table.items()}
        for v in list(self.bh_multilinear.values()) + list(self.k_table.values()):
            if v < 1:
                raise ValueError(f"supplied constant {v} < 1")

    def bh(self, k: int) -> tuple[float, str]:
        if k in self.bh_multilinear:
            return self.bh_multilinear[k], "user table"
        if not self.use_default_bh:
            raise KeyError(f"no B_k constant configured for k = {k}")
        return math.sqrt(2.0) ** (k - 1), EXTERNAL_DEFAULT

    def K(self, s: float, p: float, tol: float = 1e-9) -> tuple[float, str] | None:
        for (s0, p0), v in self.k_table.items():
            same_p = (math.isinf(p) and math.isinf(p0)) or (not math.isinf(p0) and abs(p0 - p) <= tol)
            if same_p and abs(s0 - s) <= tol:
                return v, "user table"
        if math.isinf(p):
            return math.sqrt(2.0 / s), "Bayart torus value sqrt(2/s)"
        return None

    @classmethod
    def from_json(cls, text: str) -> ConstantConfig:
        d = json.loads(text)
        ktab = {(e["s"], e["p"]): e["K"] for e in d.get("k_table", [])}
        return cls(bh_multilinear=d.get("bh_multilinear", {}), k_table=ktab,
                   use_default_bh=d.get("use_default_bh", True))

    def to_json(self) -> str:
        return json.dumps({
            "bh_multilinear": {str(k): v for k, v in self.bh_multilinear.items()},
            "k_table": [{"s": s, "p": format_p(p), "K": v} for (s, p), v in self.k_table.items()],
        })


def _check_mp(m: int, p: float, allow_inf: bool = True) -> float:
    p = parse_p(p)
    if m < 2:
        raise ValueError(f"m must be >= 2, got {m}")
    if p < 2 * m:
        raise ValueError(f"p = {p} < 2m = {2 * m}")
    if math.isinf(p) and not allow_inf:
        raise ValueError("p = inf not allowed here")
    return p


# ---------------------------------------------------------------------------
# Lower bounds for real scalars (witness families)


@dataclass(frozen=True)
class LowerBoundReal:
    """All the values the lower-bound argument produces at (m, p).

    ``proof_chain`` is the value recomputed from the witness coefficient
    count and the norm bound used in the argument; ``theorem_display`` is
    the headline formula; for odd m ``display_chain`` keeps the extra
    (m-1)^((m-1)/p) factor of the intermediate line.
    """

    report: BoundReport
    proof_chain: float
    theorem_display: float
    display_chain: float | None
    refined: float
    headline: float


def lower_bound_real(m: int, p) -> LowerBoundReal:
    p = _check_mp(m, p, allow_inf=False)
    headline = m / 16 * LN2
    disp = (m * p + p - 6 * m + 4) / (4 * p) * (m - 1) / m * LN2
    if m % 2 == 0:
        # 2^((mp+p-6m)/(4p)) m^(m/p)
        chain = (m * p + p - 6 * m) / (4 * p) * LN2 + m / p * math.log(m)
        display_chain = None
        refined = chain
    else:
        # 2^((mp+p-2m)(m-1)/(4mp)) ((m-1)/2)^((m-1)/p)
        chain = (m * p + p - 2 * m) * (m - 1) / (4 * m * p) * LN2 + (m - 1) / p * math.log((m - 1) / 2)
        display_chain = disp + (m - 1) / p * math.log(m - 1)
        refined = display_chain
    report = BoundReport(
        name="lower_real_proof_chain", kind="lower", value=math.exp(chain), m=m, p=p,
        provenance="witness P_m (even m) / Q_m (odd m) with the norm bound of the argument",
        params={"theorem_display": math.exp(disp), "headline": math.exp(headline),
                "display_chain": None if display_chain is None else math.exp(display_chain)},
    )
    return LowerBoundReal(report, math.exp(chain), math.exp(disp),
                          None if display_chain is None else math.exp(display_chain),
                          math.exp(refined), math.exp(headline))


# ---------------------------------------------------------------------------
# Upper bounds


def upper_bound_first(m: int, p, C_mp: float, K_mp: float | None = None) -> BoundReport:
    """D = C m^m / (m!)^((mp+p-2m)/(2mp)); with a polarization constant K,
    D = (m!)^((mp-p+2m)/(2mp)) C K instead."""
    p = _check_mp(m, p)
    if C_mp < 1:
        raise ValueError("C_mp must be >= 1")
    if K_mp is None:
        e = _ratio_limit(lambda q: m * q + q - 2 * m, lambda q: 2 * m * q, p, (m + 1) / (2 * m))
        logv = math.log(C_mp) + m * math.log(m) - e * _lfact(m)
        name, prov = "upper_first", "C m^m / (m!)^((mp+p-2m)/(2mp))"
    else:
        if K_mp <= 0:
            raise ValueError("K_mp must be positive")
        e = _ratio_limit(lambda q: m * q - q + 2 * m, lambda q: 2 * m * q, p, (m - 1) / (2 * m))
        logv = e * _lfact(m) + math.log(C_mp) + math.log(K_mp)
        name, prov = "upper_polarized", "(m!)^((mp-p+2m)/(2mp)) C K(m,p)"
    return BoundReport(name, "upper", math.exp(logv), m, p, prov, {"C_mp": C_mp, "K_mp": K_mp})


def polarization_bounds(m: int, p) -> list[BoundReport]:
    """Known bounds on ||L|| / ||P|| applicable at (m, p)."""
    p = parse_p(p)
    if m < 2 or p < 1:
        raise ValueError("need m >= 2 and p >= 1")
    lmm = m * math.log(m) - _lfact(m)  # log(m^m / m!)
    out = [BoundReport("generic", "upper", math.exp(lmm), m, p,
                       "||L|| <= m^m/m! ||P||", {"condition": "always"})]
    if m & (m - 1) == 0:
        e = 1.0 if math.isinf(p) else abs(p - 2) / p
        out.append(BoundReport("harris_pow2", "upper", math.exp(e * lmm), m, p,
                               "Harris: C(m,p) <= (m^m/m!)^(|p-2|/p)",
                               {"condition": "m power of 2", "field": "complex"}))
    if math.isinf(p):
        v = m / 2 * math.log(m) + (m + 1) / 2 * math.log(m + 1) - m * LN2 - _lfact(m)
        out.append(BoundReport("harris_inf", "upper", math.exp(v), m, p,
                               "Harris: C(m,inf) <= m^(m/2)(m+1)^((m+1)/2)/(2^m m!)",
                               {"condition": "p = inf", "field": "complex"}))
    if p <= m / (m - 1):
        v = m / p * math.log(m) - _lfact(m)
        # an exact value of the polarization constant, reported as its upper side
        out.append(BoundReport("sarantopoulos", "upper", math.exp(v), m, p,
                               "Sarantopoulos: K(m,p) = m^(m/p)/m!",
                               {"condition": "1 <= p <= m/(m-1)", "exact": True}))
    return out


def best_polarization(m: int, p) -> BoundReport:
    return min(polarization_bounds(m, p), key=lambda b: b.value)


def multilinear_hl_constant(k: int, p, config: ConstantConfig | None = None) -> BoundReport:
    """(2/sqrt(pi))^(2k(k-1)/p) B_k^((p-2k)/p); equals B_k at p = inf."""
    config = config or ConstantConfig()
    p = parse_p(p)
    if k < 1 or p < 2 * k:
        raise ValueError(f"need k >= 1 and p >= 2k, got k={k}, p={p}")
    B, src = config.bh(k)
    e1 = 0.0 if math.isinf(p) else 2 * k * (k - 1) / p
    e2 = 1.0 if math.isinf(p) else (p - 2 * k) / p
    logv = e1 * math.log(2 / math.sqrt(math.pi)) + e2 * math.log(B)
    return BoundReport("multilinear_hl", "upper", math.exp(logv), k, p,
                       "(2/sqrt(pi))^(2k(k-1)/p) (B_k^mult)^((p-2k)/p)",
                       {"k": k, "B_k": B, "B_source": src}, label=src)


def interpolation_exponents(m: int, k: int, p: float) -> dict:
    """rho, s_k and q together with the residual of m/rho = k/s_k + (m-k)/q."""
    if math.isinf(p):
        rho, s_k, q = 2 * m / (m + 1), 2 * k / (k + 1), 2.0
    else:
        rho = 2 * m * p / (m * p + p - 2 * m)
        s_k = 2 * k * p / (k * p + p - 2 * k)
        q = 2 * p / (p - 2)
    resid = abs(m / rho - (k / s_k + (m - k) / q))
    return {"rho": rho, "s_k": s_k, "q": q, "identity_residual": resid}


def theorem_hardy_bound(m: int, k: int, p, config: ConstantConfig | None = None,
                        K: float | None = None) -> BoundReport:
    """Complex-field upper bound through interpolation on k of the m slots.

    At finite p the constant K_{s_k,p} is an assumption (it comes from a
    conjectured integral inequality), so it must be supplied through ``K``
    or ``config.k_table`` and the result is labeled conditional.
    """
    config = config or ConstantConfig()
    p = parse_p(p)
    if m < 2:
        raise ValueError("m must be >= 2")
    if not 1 <= k <= m - 1:
        raise ValueError(f"k = {k} out of range 1..{m - 1}")
    if p < 2 * m:
        raise ValueError(f"p = {p} < 2m = {2 * m}")
    ex = interpolation_exponents(m, k, p)
    if ex["identity_residual"] > 1e-12:
        raise ArithmeticError(f"interpolation identity violated by {ex['identity_residual']}")
    s_k = ex["s_k"]
    if K is not None:
        K_val, K_src = float(K), "explicit"
    else:
        found = config.K(s_k, p)
        if found is None:
            raise ValueError(f"K_(s={s_k:.6g}, p={p:g}) not supplied; finite-p bound is conditional on it")
        K_val, K_src = found
    B, B_src = config.bh(k)
    j = m - k
    e_fact = 0.5 if math.isinf(p) else (p - 2) / (2 * p)
    e1 = 0.0 if math.isinf(p) else 2 * k * (k - 1) / p
    e2 = 1.0 if math.isinf(p) else (p - 2 * k) / p
    logv = (j * math.log(K_val)
            + m * math.log(m) - j * math.log(j)
            + e_fact * (_lfact(j) - _lfact(m))
            + e1 * math.log(2 / math.sqrt(math.pi))
            + e2 * math.log(B))
    label = "" if math.isinf(p) else "conditional on K_{s,p}"
    return BoundReport("theorem_hardy", "upper", math.exp(logv), m, p,
                       "K^(m-k) m^m/(m-k)^(m-k) ((m-k)!/m!)^((p-2)/(2p)) (2/sqrt(pi))^(2k(k-1)/p) B_k^((p-2k)/p)",
                       {"k": k, "K": K_val, "K_source": K_src, "B_k": B, "B_source": B_src, **ex},
                       label=label)


# ---------------------------------------------------------------------------
# Historical Bohnenblust-Hille estimates


@dataclass(frozen=True)
class BHTable:
    rows: list
    symbolic: list


def bh_constant_table(m: int) -> BHTable:
    if m < 2:
        raise ValueError("m must be >= 2")
    r2 = 0.5 * LN2
    rows = [
        BoundReport("bh_1931", "upper", math.exp((m + 1) / (2 * m) * math.log(m) + (m - 1) * r2), m, INF,
                    "D_m^C <= m^((m+1)/(2m)) (sqrt 2)^(m-1)", {"year": 1931, "field": "complex"}),
        BoundReport("dfoos_2011", "upper",
                    math.exp((m - 1) * math.log1p(1 / (m - 1)) + 0.5 * math.log(m) + (m - 1) * r2), m, INF,
                    "D_m^C <= (1 + 1/(m-1))^(m-1) sqrt(m) (sqrt 2)^(m-1)", {"year": 2011, "field": "complex"}),
        BoundReport("real_lower", "lower", math.exp(m * math.log(1.1)), m, INF,
                    "(1.1)^m <= D_m^R", {"field": "real"}),
    ]
    symbolic = [
        {"name": "bps_2013", "kind": "upper", "field": "complex", "expression": "C(eps) (1+eps)^m"},
        {"name": "real_upper", "kind": "upper", "field": "real", "expression": "C(eps) (2+eps)^m"},
    ]
    return BHTable(rows, symbolic)
