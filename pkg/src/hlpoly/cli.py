"""``hl`` command line interface.

Exit codes: 0 success, 1 a check reported a hard failure, 2 usage or input
error. All numbers are produced by the library functions; this module only
formats them.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys

import numpy as np

from . import constants as C
from . import polynomial as poly
from . import verify as V
from .norms import INF, SpaceParams, format_p, hl_exponent, parse_p
from .search import history_csv, hl_ratio, search_lower_bound
from .witnesses import build_witness, reduced_odd_norm_bound, witness_ratio, witness_sup_norm


class UsageError(Exception):
    pass


def _jsonable(obj):
    if isinstance(obj, float) and math.isinf(obj):
        return "inf"
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.generic):
        return obj.item()
    if isinstance(obj, complex):
        return {"re": obj.real, "im": obj.imag}
    return obj


def _dump(obj) -> str:
    return json.dumps(_jsonable(obj), ensure_ascii=False)


def _emit(text: str, out: str | None) -> None:
    if not text.endswith("\n"):
        text += "\n"
    if out:
        with open(out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _threads(args) -> int:
    if getattr(args, "threads", None):
        return args.threads
    env = os.environ.get("HL_THREADS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            raise UsageError(f"HL_THREADS must be an integer, got {env!r}") from None
    return 1


def _p_arg(text: str) -> float:
    try:
        return parse_p(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid p {text!r}") from None


def _m_range(text: str) -> list[int]:
    try:
        if ":" in text:
            lo, hi = text.split(":")
            return list(range(int(lo), int(hi) + 1))
        return [int(v) for v in text.split(",")]
    except ValueError:
        raise argparse.ArgumentTypeError(f"invalid m range {text!r}") from None


def _load_poly(path: str) -> poly.HomoPoly:
    try:
        with open(path, encoding="utf-8") as fh:
            return poly.from_json(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _load_config(path: str | None) -> C.ConstantConfig:
    if not path:
        return C.ConstantConfig()
    try:
        with open(path, encoding="utf-8") as fh:
            return C.ConstantConfig.from_json(fh.read())
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise UsageError(f"malformed constant config: {exc}") from None


# ---------------------------------------------------------------------------
# subcommands


def bounds_record(m: int, p: float, config: C.ConstantConfig) -> dict:
    rho = hl_exponent(m, p)
    C_mp = C.multilinear_hl_constant(m, p, config)
    pol = C.best_polarization(m, p)
    rec = {
        "m": m, "p": p, "rho": rho,
        "lower": {},
        "upper": {
            "first": C.upper_bound_first(m, p, C_mp.value).to_dict(),
            "polarized": C.upper_bound_first(m, p, C_mp.value, pol.value).to_dict(),
            "multilinear_constant": C_mp.to_dict(),
            "polarization": pol.to_dict(),
        },
    }
    if not math.isinf(p):
        lb = C.lower_bound_real(m, p)
        rec["lower"] = {
            "witness": witness_ratio(m, p).to_dict(),
            "proof_chain": lb.proof_chain,
            "theorem_display": lb.theorem_display,
            "display_chain": lb.display_chain,
            "headline": lb.headline,
        }
    return rec


def cmd_bounds(args) -> int:
    config = _load_config(args.config)
    _emit(_dump(bounds_record(args.m, args.p, config)), args.out)
    return 0


def _p_grid(spec: str, m: int) -> list[float]:
    if spec == "grid":
        return [float(p) for p in range(2 * m, 65, 2)]
    return [parse_p(v) for v in spec.split(",") if parse_p(v) >= 2 * m]


def _g12(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float) and math.isinf(x):
        return "inf"
    return f"{x:.12g}"


def table_rows(ms, p_spec: str, config: C.ConstantConfig):
    for m in ms:
        for p in _p_grid(p_spec, m):
            C_mp = C.multilinear_hl_constant(m, p, config).value
            K = C.best_polarization(m, p).value
            finite = not math.isinf(p)
            yield {
                "m": m, "p": p, "rho": hl_exponent(m, p),
                "lower_witness": witness_ratio(m, p).value if finite else None,
                "lower_theorem": C.lower_bound_real(m, p).theorem_display if finite else None,
                "upper_first": C.upper_bound_first(m, p, C_mp).value,
                "upper_polarized": C.upper_bound_first(m, p, C_mp, K).value,
            }


TABLE_COLUMNS = ["m", "p", "rho", "lower_witness", "lower_theorem", "upper_first", "upper_polarized"]


def cmd_table(args) -> int:
    if any(m < 2 for m in args.m):
        raise UsageError("m must be >= 2")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(TABLE_COLUMNS)
    for row in table_rows(args.m, args.p, _load_config(args.config)):
        w.writerow([row["m"], _g12(row["p"])] + [_g12(row[c]) for c in TABLE_COLUMNS[2:]])
    _emit(buf.getvalue(), args.out)
    return 0


def cmd_ratio(args) -> int:
    P = _load_poly(args.poly)
    rec = hl_ratio(P, args.p, n_starts=args.starts, seed=args.seed)
    rec.update(m=P.m, n=P.n, p=args.p)
    _emit(_dump(rec), args.out)
    return 0


def cmd_witness(args) -> int:
    W = build_witness(args.m)
    if args.p is None:
        _emit(poly.to_json(W), args.out)
        return 0
    rec = {"polynomial": poly.to_dict(W), "sup_norm": witness_sup_norm(args.m, args.p)}
    if args.m % 2:
        rec["reduced_norm_bound"] = reduced_odd_norm_bound(args.m, args.p)
    if not math.isinf(args.p):
        rec["ratio"] = witness_ratio(args.m, args.p).to_dict()
    _emit(_dump(rec), args.out)
    return 0


def _parse_point(text: str, n: int) -> np.ndarray:
    try:
        vals = [complex(v.strip().replace("i", "j")) for v in text.split(",")]
    except ValueError:
        raise UsageError(f"cannot parse point {text!r}") from None
    if len(vals) != n:
        raise UsageError(f"point has {len(vals)} coordinates, polynomial has n = {n}")
    if all(v.imag == 0 for v in vals):
        return np.array([v.real for v in vals])
    return np.array(vals)


def cmd_eval(args) -> int:
    P = _load_poly(args.poly)
    x = _parse_point(args.x, P.n)
    if np.iscomplexobj(x) and not P.is_complex:
        P = poly.complexify(P)
    val = complex(poly.evaluate(P, x))
    rec = {"value": val if P.is_complex else val.real, "abs": abs(val)}
    _emit(_dump(rec), args.out)
    return 0


def _verify_records(args):
    workers = _threads(args)
    kind = args.check
    if kind == "blei":
        return V.run_blei_suite(trials=args.trials, seed=args.seed, workers=workers)
    if kind == "bayart":
        if args.poly:
            P = _load_poly(args.poly)
            return [V.check_bayart(P, args.s, args.samples, args.seed)]
        return V.run_bayart_suite(trials=args.trials, samples=args.samples, seed=args.seed,
                                  workers=workers)
    if kind == "harris":
        return V.run_harris_suite(trials=args.trials, p=args.p, seed=args.seed,
                                  n_starts=args.starts, workers=workers)
    if kind == "complexify":
        if args.poly:
            P = _load_poly(args.poly)
            p = args.p if args.p is not None else 2 * P.m
            return [V.check_complexification(P, SpaceParams(p, P.n), n_starts=args.starts, seed=args.seed)]
        return V.run_complexify_suite(trials=args.trials, seed=args.seed, n_starts=args.starts,
                                      workers=workers)
    if kind == "eq888":
        if args.K is None:
            raise UsageError("verify eq888 needs --K")
        if args.poly:
            polys = [_load_poly(args.poly)]
        else:
            polys = [poly.random_polynomial(2 + t % 3, 1 + t % 3, poly.COMPLEX, seed=V._derive_seed(args.seed, t),
                                            distribution="gaussian") for t in range(args.trials)]
        return [V.check_eq888(P, args.p, args.s, args.K, args.samples, args.seed) for P in polys]
    raise UsageError(f"unknown check {kind!r}")


def cmd_verify(args) -> int:
    if args.p is None and args.check in ("harris", "eq888"):
        args.p = INF
    reports = _verify_records(args)
    lines = [_dump(r.to_record()) for r in reports]
    _emit("\n".join(lines), args.out)
    return 1 if any(r.hard_failure for r in reports) else 0


def cmd_search(args) -> int:
    res = search_lower_bound(args.m, args.n, args.p, iters=args.iters, restarts=args.restarts,
                             seed=args.seed, inner_starts=args.inner_starts)
    _emit(poly.to_json(res.best_poly), args.out)
    if args.history:
        with open(args.history, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(history_csv(res.history))
    summary = {"ratio": res.ratio, "certified": res.certified, "label": res.label,
               "witness_ratio": res.witness_ratio, "m": args.m, "n": args.n, "p": args.p}
    sys.stderr.write(_dump(summary) + "\n")
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="hl", description="Polynomial Hardy-Littlewood constants")
    ap.add_argument("--threads", type=int, default=None, help="worker cap (fallback: HL_THREADS)")
    sub = ap.add_subparsers(dest="cmd", required=True)

    def common(sp, seed=True):
        sp.add_argument("--out", default=None, help="write output here instead of stdout")
        if seed:
            sp.add_argument("--seed", type=int, default=0)

    sp = sub.add_parser("bounds", help="lower and upper bounds at one (m, p)")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--p", type=_p_arg, required=True)
    sp.add_argument("--config", default=None, help="ConstantConfig JSON")
    common(sp, seed=False)
    sp.set_defaults(fn=cmd_bounds)

    sp = sub.add_parser("table", help="CSV of bounds over an (m, p) grid")
    sp.add_argument("--m", type=_m_range, required=True, help="'lo:hi' or comma list")
    sp.add_argument("--p", default="grid", help="'grid' (2m, 2m+2, ..., 64) or comma list, 'inf' allowed")
    sp.add_argument("--config", default=None)
    common(sp, seed=False)
    sp.set_defaults(fn=cmd_table)

    sp = sub.add_parser("ratio", help="coefficient norm over numeric sup-norm for a polynomial")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--p", type=_p_arg, required=True)
    sp.add_argument("--starts", type=int, default=32)
    common(sp)
    sp.set_defaults(fn=cmd_ratio)

    sp = sub.add_parser("witness", help="witness polynomial and its certified ratio")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--p", type=_p_arg, default=None)
    common(sp, seed=False)
    sp.set_defaults(fn=cmd_witness)

    sp = sub.add_parser("eval", help="evaluate a polynomial at a point")
    sp.add_argument("--poly", required=True)
    sp.add_argument("--x", required=True, help="comma-separated coordinates, e.g. '1,0' or '0.8,0.8i'")
    common(sp, seed=False)
    sp.set_defaults(fn=cmd_eval)

    sp = sub.add_parser("verify", help="run a lemma check, one JSON record per line")
    sp.add_argument("check", choices=["blei", "bayart", "harris", "complexify", "eq888"])
    sp.add_argument("--trials", type=int, default=100)
    sp.add_argument("--samples", type=int, default=100_000)
    sp.add_argument("--starts", type=int, default=16)
    sp.add_argument("--poly", default=None)
    sp.add_argument("--p", type=_p_arg, default=None)
    sp.add_argument("--s", type=float, default=2.0)
    sp.add_argument("--K", type=float, default=None)
    sp.add_argument("--threads", type=int, default=argparse.SUPPRESS)
    common(sp)
    sp.set_defaults(fn=cmd_verify)

    sp = sub.add_parser("search", help="heuristic search for a better lower-bound witness")
    sp.add_argument("--m", type=int, required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=_p_arg, required=True)
    sp.add_argument("--iters", type=int, default=200)
    sp.add_argument("--restarts", type=int, default=1)
    sp.add_argument("--inner-starts", type=int, default=8)
    sp.add_argument("--history", default=None, help="CSV history path")
    common(sp)
    sp.set_defaults(fn=cmd_search)
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.fn(args)
    except (UsageError, ValueError, KeyError, ArithmeticError) as exc:
        msg = str(exc).splitlines()[0] if str(exc) else type(exc).__name__
        sys.stderr.write(f"hl: error: {msg}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
