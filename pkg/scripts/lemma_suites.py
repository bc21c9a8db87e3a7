"""Run every randomized inequality suite and tabulate verdicts."""

import argparse
import time
from collections import Counter
from dataclasses import dataclass

from hlpoly import verify as V
from hlpoly.norms import INF


@dataclass
class SuiteConfig:
    blei_trials: int = 1000
    bayart_trials: int = 200
    harris_trials: int = 200
    complexify_trials: int = 100
    samples: int = 100_000
    seed: int = 3
    workers: int = 1


def main(cfg: SuiteConfig):
    suites = {
        "blei": lambda: V.run_blei_suite(cfg.blei_trials, seed=cfg.seed, workers=cfg.workers),
        "bayart": lambda: V.run_bayart_suite(cfg.bayart_trials, samples=cfg.samples,
                                             seed=cfg.seed, workers=cfg.workers),
        "harris": lambda: V.run_harris_suite(cfg.harris_trials, p=INF, seed=cfg.seed,
                                             workers=cfg.workers),
        "complexify": lambda: V.run_complexify_suite(cfg.complexify_trials, seed=11,
                                                     workers=cfg.workers),
    }
    for name, run in suites.items():
        t0 = time.perf_counter()
        reps = run()
        counts = Counter(r.verdict for r in reps)
        tight = min(r.margin / max(abs(r.rhs), 1e-300) for r in reps)
        print(f"{name:10s} n={len(reps):5d}  {dict(counts)}  min rel margin={tight:.3e}  "
              f"({time.perf_counter() - t0:.1f}s)")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=3)
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--samples", type=int, default=100_000)
    a = ap.parse_args()
    main(SuiteConfig(seed=a.seed, workers=a.workers, samples=a.samples))
