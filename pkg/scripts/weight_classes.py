"""Doubling and A* ladders for a handful of weights, including two that are not doubling."""

import argparse

from wapprox import weights as W

WEIGHTS = {
    "constant": W.constant(),
    "jacobi(1/2,1/2)": W.jacobi(0.5, 0.5),
    "flagship": W.generalized_jacobi([-1, 0, 1], [0.5, 0.3, 0.5]),
    "gdt log at 0": W.make_gdt_weight(W.jacobi(0.5, 0.5), [(0.0, 0.5, 1.0)]),
    "piecewise": W.named("piecewise_nonexample"),
    "flat exponential": W.named("flat_exponential"),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--resolutions", type=int, nargs="+", default=[128, 256, 512])
    args = ap.parse_args()
    for name, w in WEIGHTS.items():
        rep = W.classify_weight(w, resolutions=tuple(args.resolutions))
        d = " ".join(f"{v:8.3g}" for v in rep.doubling_ladder)
        a = " ".join(f"{v:8.3g}" for v in rep.astar_ladder)
        print(f"{name:<18} doubling [{d}]  A* [{a}]  diverging={rep.diverging}")


if __name__ == "__main__":
    main()
