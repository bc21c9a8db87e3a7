"""Can local search beat the witness family? Runs search_lower_bound on a few
(m, n, p) cells and compares with the certified witness ratio."""

import argparse
import json
from dataclasses import asdict, dataclass, field

from hlpoly.search import search_lower_bound
from hlpoly.witnesses import witness_ratio


@dataclass
class SearchStudy:
    cells: list = field(default_factory=lambda: [(2, 2, 4), (2, 3, 6), (3, 3, 6), (3, 3, 12), (4, 4, 8)])
    iters: int = 150
    restarts: int = 3
    inner_starts: int = 8
    seed: int = 0


def main(cfg: SearchStudy):
    out = []
    for m, n, p in cfg.cells:
        res = search_lower_bound(m, n, p, iters=cfg.iters, restarts=cfg.restarts,
                                 seed=cfg.seed, inner_starts=cfg.inner_starts)
        w = witness_ratio(m, p).value if n >= m else None
        row = {"m": m, "n": n, "p": p, "ratio": res.ratio, "witness": w,
               "certified": res.certified, "label": res.label}
        out.append(row)
        gain = "" if w is None else f"  gain={res.ratio / w - 1:+.3e}"
        print(f"(m={m}, n={n}, p={p})  ratio={res.ratio:.8f}{gain}  [{res.label}]")
    print(json.dumps({"config": asdict(cfg), "results": out}, indent=1))


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--iters", type=int, default=150)
    ap.add_argument("--restarts", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    a = ap.parse_args()
    main(SearchStudy(iters=a.iters, restarts=a.restarts, seed=a.seed))
