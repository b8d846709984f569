"""Complete moduli with swapped constants around the fixed-interval modulus, over t."""

import argparse

from wapprox import best_approx as BA
from wapprox import functions as F
from wapprox import geometry as G
from wapprox import moduli as Mo
from wapprox import weights as W


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--r", type=int, nargs="+", default=[1, 2])
    ap.add_argument("--alpha", type=float, default=0.6)
    args = ap.parse_args()

    f = F.function_registry("power_abs", alpha=args.alpha)
    w = W.generalized_jacobi([-1, 0, 1], [0.5, 0.3, 0.5])
    Z = G.ZSet((-1.0, 0.0, 1.0))
    Ap, B = Mo.sandwich_constant(Z), 0.5
    cache = BA.ApproximationCache()
    print(f"{'r':>2} {'t':>8} {'lower':>12} {'mt':>12} {'upper':>12}")
    for r in args.r:
        for k in range(6):
            t = 0.5**k
            q = Mo.ModulusQuery(f, w, Z, r=r, t=t)
            lo = Mo.complete_modulus(q.replace(A=Ap, B=B), cache).value
            mid = Mo.mt_modulus(q, cache).value
            hi = Z.M * Mo.complete_modulus(q.replace(A=B, B=Ap), cache).value
            print(f"{r:>2} {t:8.4f} {lo:12.4e} {mid:12.4e} {hi:12.4e}")


if __name__ == "__main__":
    main()
