"""Odd degree: compare the three lower-bound values for Q_m over p."""

import argparse

from hlpoly.constants import lower_bound_real
from hlpoly.witnesses import witness_ratio


def main(ms, p_max):
    print(f"{'m':>3} {'p':>4} {'proof chain':>12} {'display':>12} {'theorem':>12} {'certified':>12}")
    for m in ms:
        for p in range(2 * m, p_max + 1, 2 * m):
            lb = lower_bound_real(m, p)
            w = witness_ratio(m, p).value
            print(f"{m:3d} {p:4d} {lb.proof_chain:12.6f} {lb.display_chain:12.6f} "
                  f"{lb.theorem_display:12.6f} {w:12.6f}")


if __name__ == "__main__":
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--m", type=int, nargs="+", default=[3, 5, 7, 9])
    ap.add_argument("--p-max", type=int, default=48)
    a = ap.parse_args()
    main(a.m, a.p_max)
