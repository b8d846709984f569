"""E_n, the complete modulus at t = 1/n and their ratio for |x|^a on the flagship weight."""

import argparse

from wapprox import best_approx as BA
from wapprox import functions as F
from wapprox import moduli as Mo
from wapprox import verify as V
from wapprox import weights as W


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--alpha", type=float, default=0.6)
    ap.add_argument("--r", type=int, default=2)
    ap.add_argument("--ns", type=int, nargs="+", default=[4, 8, 16, 32, 64])
    args = ap.parse_args()

    f = F.function_registry("power_abs", alpha=args.alpha)
    w = W.generalized_jacobi([-1, 0, 1], [0.5, 0.3, 0.5])
    Z = (-1.0, 0.0, 1.0)
    ctx = V.Context(f, w, Z)
    cache = BA.ApproximationCache()
    print(f"{'n':>4} {'E_n':>12} {'omega(1/n)':>12} {'ratio':>8}")
    for n in args.ns:
        E = ctx.E(n)
        q = Mo.ModulusQuery(f, w, Z, r=args.r, t=1.0 / n)
        om = Mo.complete_modulus(q, cache).value
        print(f"{n:>4} {E:12.4e} {om:12.4e} {E / om:8.3f}")


if __name__ == "__main__":
    main()
