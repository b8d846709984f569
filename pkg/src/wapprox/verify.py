"""Realization functional and numerical verification suites.

Each suite returns a VerdictReport. The theorems assert the existence of
constants, so most checks record a ratio per rung of a ladder and ask the
ratios to stay within a fixed factor of their median; exact (in)equalities
that hold on shared grids are recorded as such.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field

import numpy as np

from . import geometry, moduli
from . import weights as W
from .best_approx import DEFAULT_CACHE, ApproximationCache, best_weighted_approx
from .functions import TargetFunction, from_callable, from_poly
from .geometry import as_zset
from .moduli import ModulusQuery
from .polynomials import ChebPoly, random_poly, taylor_at, weighted_poly_norm
from .report import VerdictReport

# values below NOISE * scale are rounding noise and are recorded as 0
NOISE = 1e-11
# E-terms come from a solver converged to ~1e-12; inequalities that involve
# them allow this relative slack
SOLVER_SLACK = 1e-10


@dataclass(frozen=True)
class Grids:
    h_grid: int = 60
    x_grid: int = 2001
    theta: float = 0.85
    approx_grid: int = 1024
    norm_grid: int = 4096

    def scaled(self, k: float) -> "Grids":
        if k <= 0:
            raise ValueError("grid scale must be positive")
        return Grids(max(16, int(round(self.h_grid * k))), max(16, int(round(self.x_grid * k))),
                     self.theta, max(16, int(round(self.approx_grid * k))),
                     max(16, int(round(self.norm_grid * k))))


DEFAULT_GRIDS = Grids()


def _query(f, w, Z, r, A, B, t, grids: Grids) -> ModulusQuery:
    return ModulusQuery(f, w, as_zset(Z), r, A, B, t, grids.h_grid, grids.x_grid, grids.theta)


class Context:
    """Shared grids and memoized global best approximations for one (f, w, Z)."""

    def __init__(self, f: TargetFunction, w, Z, grids: Grids = DEFAULT_GRIDS,
                 cache: ApproximationCache | None = None):
        self.f, self.w, self.Z, self.grids = f, w, as_zset(Z), grids
        self.cache = DEFAULT_CACHE if cache is None else cache
        self.nodes = geometry.graded_grid(grids.approx_grid, self.Z.points)
        self.nodes_key = ("global", grids.approx_grid, self.Z.points)
        x = np.union1d(geometry.chebyshev_grid(grids.norm_grid + 1), self.nodes)
        self.xn = x[f.regular_mask(x)]
        self.wn = np.asarray(w(self.xn), float)
        fx = f(self.xn)
        self.fx = np.where(np.isfinite(fx), fx, 0.0)
        self.scale = max(float(np.max(np.abs(self.wn * self.fx))), 1e-300)

    def best(self, n: int):
        if self.grids.approx_grid < 8 * n:
            raise ValueError(f"approx_grid {self.grids.approx_grid} < 8n for n={n}")
        return self.cache.solve(self.f, self.w, (-1.0, 1.0), n, self.nodes, self.nodes_key)

    def E(self, n: int) -> float:
        return self.clean(self.best(n).error)

    def clean(self, v: float) -> float:
        return 0.0 if abs(v) <= NOISE * self.scale else float(v)

    def error_norm(self, p: ChebPoly) -> float:
        return float(np.max(self.wn * np.abs(self.fx - p(self.xn))))

    def deriv_norm(self, p: ChebPoly, r: int) -> float:
        return weighted_poly_norm(p, self.w, r, r, grid=self.xn, weight_values=self.wn)

    def omega(self, r, A, B, t) -> float:
        q = _query(self.f, self.w, self.Z, r, A, B, t, self.grids)
        return self.clean(moduli.complete_modulus(q, self.cache).value)


def realization_functional(f, w, Z, r: int, t: float, n: int, candidates, grids: Grids = DEFAULT_GRIDS,
                           ctx: Context | None = None) -> float:
    """min over candidates of ||w(f - P)|| + t^r ||w phi^r P^(r)|| on the norm grid."""
    cands = list(candidates)
    if not cands:
        raise ValueError("candidate set is empty")
    ctx = ctx or Context(f, w, Z, grids)
    return min(ctx.error_norm(p) + t**r * ctx.deriv_norm(p, r) for p in cands)


def realization_candidates(ctx: Context, n: int):
    """Minimax solutions for n and ceil(n/2), their Fejer means, and interpolants."""
    out = []
    for m in sorted({n, math.ceil(n / 2)}, reverse=True):
        p = ctx.best(m).poly
        out.append(p)
        c = p.coeffs
        out.append(ChebPoly(c * (1.0 - np.arange(len(c)) / len(c)), p.interval))
        try:
            out.append(ChebPoly.interpolant(lambda x: np.nan_to_num(ctx.f(x), posinf=0.0, neginf=0.0), m))
        except (ValueError, FloatingPointError):
            pass
    return out


def _timed(report: VerdictReport, start: float) -> VerdictReport:
    report.runtime = time.perf_counter() - start
    return report


def _inputs(f, w, Z, r, **extra):
    d = {"f": f.description or f.key, "w": w.to_dict() if hasattr(w, "to_dict") else repr(w),
         "Z": list(as_zset(Z).points), "r": r}
    d.update(extra)
    return d


def verify_jackson(f, w, Z, r: int, B: float = 1.0, n_ladder=(4, 8, 16, 32, 64),
                   grids: Grids = DEFAULT_GRIDS, ctx: Context | None = None) -> VerdictReport:
    start = time.perf_counter()
    ctx = ctx or Context(f, w, Z, grids)
    rep = VerdictReport("jackson", _inputs(f, w, Z, r, B=B, n_ladder=list(n_ladder)))
    for n in n_ladder:
        om = ctx.omega(r, 1.0, B, 1.0 / n)
        E = ctx.E(n)
        rep.add("jackson", n, E, om)
        d = ctx.clean(n ** (-r) * ctx.deriv_norm(ctx.best(n).poly, r))
        rep.add("jackson_derivative", n, d, om)
    return _timed(rep, start)


def verify_inverse(f, w, Z, r: int, A: float = 1.0, B: float = 1.0, n_ladder=(4, 8, 16, 32, 64),
                   grids: Grids = DEFAULT_GRIDS, ctx: Context | None = None) -> VerdictReport:
    start = time.perf_counter()
    ctx = ctx or Context(f, w, Z, grids)
    rep = VerdictReport("inverse", _inputs(f, w, Z, r, A=A, B=B, n_ladder=list(n_ladder)))
    for n in n_ladder:
        rhs = ctx.clean(n ** (-r) * sum(k ** (r - 1) * ctx.E(k) for k in range(1, n + 1)))
        rep.add("inverse", n, ctx.omega(r, A, B, 1.0 / n), rhs)
        rep.add("chain", n, ctx.E(n), rhs, kind="upper")
    return _timed(rep, start)


def verify_realization(f, w, Z, r: int, A: float = 1.0, B: float = 1.0, c1: float = 1.0, c2: float = 1.0,
                       n_ladder=(4, 8, 16, 32, 64), grids: Grids = DEFAULT_GRIDS,
                       ctx: Context | None = None) -> VerdictReport:
    if not c2 >= c1 > 0:
        raise ValueError("need c2 >= c1 > 0")
    start = time.perf_counter()
    ctx = ctx or Context(f, w, Z, grids)
    rep = VerdictReport("realization", _inputs(f, w, Z, r, A=A, B=B, c1=c1, c2=c2, n_ladder=list(n_ladder)))
    for n in n_ladder:
        cands = realization_candidates(ctx, n)
        R = ctx.clean(realization_functional(f, w, Z, r, 1.0 / n, n, cands, ctx=ctx))
        for label, c in sorted({("c1", c1), ("c2", c2)}, key=lambda p: p[1]):
            if label == "c2" and c2 == c1:
                continue
            om = ctx.omega(r, A, B, c / n)
            rep.add(f"R/omega[{label}]", n, R, om)
            rep.add(f"omega/R[{label}]", n, om, R)
        R2 = ctx.clean(realization_functional(f, w, Z, r, 2.0 / n, n, cands, ctx=ctx))
        rep.add("R_scale", n, R2, 2**r * R, kind="inequality", tol=1e-12)
    return _timed(rep, start)


# ---------------------------------------------------------------------------
# polynomial inequalities
# ---------------------------------------------------------------------------

def endpoint_caps(n: int, lam: float = 1.0):
    """Two caps at +-1 of total arcsine measure lam / n."""
    d = 1.0 - math.cos(lam / (2.0 * n))
    return [(-1.0, -1.0 + d), (1.0 - d, 1.0)]


def central_cap(n: int, lam: float = 1.0):
    """[-d, d] of arcsine measure lam / n."""
    d = math.sin(lam / (2.0 * n))
    return [(-d, d)]


def _outside(x, caps):
    m = np.ones(x.shape, dtype=bool)
    for a, b in caps:
        m &= ~((x >= a) & (x <= b))
    return m


def _equiv(a, b):
    if a == 0 and b == 0:
        return 1.0
    if a == 0 or b == 0:
        return math.inf
    return max(a / b, b / a)


POLY_WEIGHTS = {
    "constant": lambda: W.constant(1.0),
    "chebyshev2": lambda: W.jacobi(0.5, 0.5),
    "flagship": lambda: W.generalized_jacobi((-1.0, 0.0, 1.0), (0.5, 0.3, 0.5)),
}


def verify_polynomial_inequalities(w, n_ladder=(8, 16, 32, 64), trials: int = 20, seed: int = 0,
                                   Z=(-1.0, 0.0, 1.0), orders=(1, 2), label: str = "",
                                   grids: Grids = DEFAULT_GRIDS, modulus_x_grid: int | None = None) -> VerdictReport:
    """Worst observed constants of the polynomial inequalities along n_ladder.

    The norm grid has ``norm_grid + 1`` Chebyshev extreme points, with
    ``norm_grid`` a multiple of 2n for every n in the ladder so that the
    extremal Bernstein case is sampled exactly.
    """
    if trials < 20:
        raise ValueError("trials must be >= 20")
    start = time.perf_counter()
    Z = as_zset(Z)
    label = label or (w.key() if hasattr(w, "key") else "w")
    rng = np.random.default_rng(seed)
    N = grids.norm_grid
    lcm = 2 * math.lcm(*[int(n) for n in n_ladder])
    N = max(lcm, (N // lcm) * lcm)
    x = geometry.chebyshev_grid(N + 1)
    wx = np.asarray(w(x), float)
    phi = geometry.varphi(x)
    mx = modulus_x_grid or max(16, grids.x_grid // 2)
    rep = VerdictReport("polynomial_inequalities",
                        {"w": w.to_dict() if hasattr(w, "to_dict") else repr(w), "n_ladder": list(n_ladder),
                         "trials": trials, "seed": seed, "Z": list(Z.points), "orders": list(orders),
                         "norm_grid": N})
    mus = lambda n: (0.5, 1.0, 2.0, n / 2.0, float(n))
    worst: dict = {}

    def note(check, n, v):
        key = (check, n)
        worst[key] = max(worst.get(key, 0.0), float(v))

    for n in n_ladder:
        wn = W.averaged_weight(w, n, x)
        phin = phi + 1.0 / n
        lam = np.maximum(phi, 1.0 / n)
        rhon = geometry.rho_n(n, x)
        out_caps = _outside(x, endpoint_caps(n))
        out_mid = _outside(x, central_cap(n))
        for _ in range(trials):
            p = random_poly(n, rng)
            px = p(x)
            nw = float(np.max(wx * np.abs(px)))
            note("remez_endpoints", n, nw / np.max(wx[out_caps] * np.abs(px[out_caps])))
            note("remez_center", n, nw / np.max(wx[out_mid] * np.abs(px[out_mid])))
            note("averaged_norm", n, _equiv(nw, np.max(wn * np.abs(px))))
            for mu in mus(n):
                note("averaged_phi_power", n, _equiv(np.max(wx * phi**mu * np.abs(px)), np.max(wn * phi**mu * np.abs(px))))
                note("averaged_lambda_power", n, _equiv(np.max(wx * lam**mu * np.abs(px)), np.max(wn * lam**mu * np.abs(px))))
            for mu in (1.0, 2.0):
                four = [np.max(g * np.abs(px)) for g in (wx * phin**mu, wx * phi**mu, wn * phi**mu, wn * phin**mu)]
                note("phi_variants", n, max(four) / min(four))
            for r in orders:
                dr = np.abs(p.deriv(r)(x))
                a = n ** (-r) * np.max(wx * phi**r * dr)
                b = n ** (-r) * np.max(wn * phi**r * dr)
                c = np.max(wn * rhon**r * dr)
                d = np.max(wx * rhon**r * dr)
                note(f"markov_bernstein_r{r}", n, a / nw)
                note(f"bernstein_equivalence_r{r}", n, max(_equiv(a, b), _equiv(b, c), _equiv(c, d), _equiv(a, d)))
                for j in range(1, Z.M + 1):
                    lo, hi = geometry.singular_neighborhood(Z, j, 1.0, 1.0 / n)
                    inside = (x >= lo) & (x <= hi)
                    q = taylor_at(p, Z.points[j - 1], r)
                    num = np.max(wx[inside] * np.abs(px[inside] - q(x[inside])))
                    note(f"taylor_local_r{r}", n, num / a)
                t = 1.0 / n
                qm = ModulusQuery(from_poly(p), w, Z, r, 1.0, 1.0, t, grids.h_grid, mx, grids.theta)
                om = moduli.main_part_modulus(qm).value
                note(f"poly_modulus_r{r}", n, om / (t**r * np.max(wx * phi**r * dr)))
    checks = []
    for (check, n) in worst:
        if check not in checks:
            checks.append(check)
    for check in checks:
        for n in n_ladder:
            rep.add(f"{check}[{label}]", n, worst[(check, n)], 1.0, kind="growth")
    # classical extremal case: n^-1 ||phi T_n'|| = ||T_n|| for w = 1
    for n in n_ladder:
        T = ChebPoly.T(n)
        lhs = weighted_poly_norm(T, W.constant(1.0), 1, 1, n_scale=n, grid=x) / n
        rep.add("bernstein_extremal", n, lhs, weighted_poly_norm(T, W.constant(1.0), grid=x), kind="target", tol=1e-6)
    rep.add("markov_bernstein_constant", 0, weighted_poly_norm(ChebPoly([1.0]), w, 1, 1, grid=x), 0.0,
            kind="inequality")
    return _timed(rep, start)


# ---------------------------------------------------------------------------
# modulus properties
# ---------------------------------------------------------------------------

def lattice_ladder(count: int = 5, first: int = 9, step: int = 4, theta: float = 0.85):
    """Values 2 theta^k on the shared h-lattice (so their h-grids nest)."""
    return tuple(moduli.LATTICE_TOP * theta ** (first + step * i) for i in range(count))


BASIC_CHECKS = ("main_saturation", "complete_saturation", "monotone_t", "monotone_A", "complete_monotone_B",
                "restricted_vs_main")
ALL_PROPERTY_CHECKS = BASIC_CHECKS + (
    "locality", "modulus_vs_norm", "modulus_vs_best_error", "main_rescaling", "main_doubling_t", "identity_pp", "complete_B_enlarge", "complete_B_halve",
)


@dataclass(frozen=True)
class PropertyParams:
    A: float = 1.0
    B: float = 1.0
    A_pair: tuple = (0.5, 2.0)
    B_pair: tuple = (0.5, 2.0)
    c_star: float = 2.0
    t_ladder: tuple = field(default_factory=lattice_ladder)
    checks: tuple = ALL_PROPERTY_CHECKS


def _identity_pp_rows(rep, f, r, points=(0.1, -0.35, 0.6), h=0.05):
    """Delta_{2h}^r(f, x) against the 2^r-term sum of Delta_h^r values."""
    import itertools
    for x in points:
        lhs = moduli.symmetric_difference(f, 2 * h, r, x)
        rhs = 0.0
        for bits in itertools.product((0, 1), repeat=r):
            rhs += moduli.symmetric_difference(f, h, r, x + (sum(bits) - r / 2.0) * h)
        rep.add("identity_pp", x, lhs, rhs, kind="close", tol=1e-12)


def verify_modulus_properties(f, w, Z, r: int, params: PropertyParams = PropertyParams(),
                              grids: Grids = DEFAULT_GRIDS, cache: ApproximationCache | None = None) -> VerdictReport:
    start = time.perf_counter()
    Z = as_zset(Z)
    cache = DEFAULT_CACHE if cache is None else cache
    P = params
    rep = VerdictReport("modulus_properties", _inputs(f, w, Z, r, A=P.A, B=P.B, A_pair=list(P.A_pair),
                                                      B_pair=list(P.B_pair), c_star=P.c_star,
                                                      t_ladder=list(P.t_ladder), checks=list(P.checks)))
    q0 = _query(f, w, Z, r, P.A, P.B, P.t_ladder[0], grids)

    xr = q0.xs[f.regular_mask(q0.xs)]
    fr = f(xr)
    floor = NOISE * float(np.max(np.abs(np.asarray(w(xr)) * np.where(np.isfinite(fr), fr, 0.0))))

    def clean(v):
        # thresholding is monotone, so it cannot create or hide an inequality violation above the floor
        return 0.0 if abs(v) <= floor else float(v)

    def Om(**kw):
        return clean(moduli.main_part_modulus(q0.replace(**kw)).value)

    def om(**kw):
        return clean(moduli.complete_modulus(q0.replace(**kw), cache).value)

    ts = sorted(P.t_ladder)
    chk = set(P.checks)
    if "main_saturation" in chk:
        s = math.sqrt(2.0 / P.A)
        for k in (1.5, 2.0, 3.0):
            rep.add("main_saturation", k, Om(t=k * s), Om(t=s), kind="equality", tol=1e-12)
    if "complete_saturation" in chk:
        t0 = max(math.sqrt(2.0 / P.A), math.sqrt(2.0 / P.B))
        base = om(t=t0)
        for k in (1.5, 2.0, 3.0):
            rep.add("complete_saturation", k, om(t=k * t0), base, kind="equality", tol=1e-12)
        E = clean(cache.error(f, w, (-1.0, 1.0), r, q0.xs, q0.nodes_key))
        rep.add("complete_lower_bound", 1, Z.M * E, base, kind="inequality", tol=SOLVER_SLACK)
    if "monotone_t" in chk:
        for t1, t2 in zip(ts, ts[1:]):
            rep.add("main_monotone_t", t1, Om(t=t1), Om(t=t2), kind="inequality")
            rep.add("complete_monotone_t", t1, om(t=t1), om(t=t2), kind="inequality", tol=SOLVER_SLACK)
    if "monotone_A" in chk:
        A1, A2 = sorted(P.A_pair)
        for t in ts:
            rep.add("main_monotone_A", t, Om(A=A2, t=t), Om(A=A1, t=t), kind="inequality")
            rep.add("complete_monotone_A", t, om(A=A2, t=t), om(A=A1, t=t), kind="inequality", tol=SOLVER_SLACK)
    if "complete_monotone_B" in chk:
        B1, B2 = sorted(P.B_pair)
        for t in ts:
            rep.add("complete_monotone_B", t, om(B=B1, t=t), om(B=B2, t=t), kind="inequality", tol=SOLVER_SLACK)
    if "restricted_vs_main" in chk:
        cs = P.c_star
        for t in ts:
            S = geometry.main_set(Z, P.A, t)
            lhs = clean(moduli.restricted_modulus(q0.replace(t=cs * t), S).value)
            rhs = Om(A=P.A / max(cs, cs * cs), t=cs * t)
            rep.add("restricted_vs_main", t, lhs, rhs, kind="inequality")
    scale = None
    if chk & {"modulus_vs_norm", "modulus_vs_best_error"}:
        x = q0.xs[f.regular_mask(q0.xs)]
        fx = f(x)
        scale = float(np.max(np.abs(np.asarray(w(x)) * np.where(np.isfinite(fx), fx, 0.0))))
    # fixed right-hand sides: ratios shrink with t, so rows go coarsest first
    if "modulus_vs_norm" in chk:
        for t in reversed(ts):
            rep.add("modulus_vs_norm", t, om(t=t), scale, kind="upper")
    if "modulus_vs_best_error" in chk:
        E = clean(cache.error(f, w, (-1.0, 1.0), r, q0.xs, q0.nodes_key))
        shifted = from_callable(lambda x: f(x) + 5.0, f.singular_points, f"{f.description}+5", f.key + "+5")
        qs = q0.replace(f=shifted)
        fs = shifted(xr)
        floor_s = NOISE * float(np.max(np.abs(np.asarray(w(xr)) * np.where(np.isfinite(fs), fs, 0.0))))

        def clean_s(v):
            return 0.0 if abs(v) <= floor_s else float(v)

        Es = clean_s(cache.error(shifted, w, (-1.0, 1.0), r, qs.xs, qs.nodes_key))
        for t in reversed(ts):
            rep.add("modulus_vs_best_error", t, om(t=t), E, kind="upper")
            rep.add("modulus_vs_best_error_shift", t, clean_s(moduli.complete_modulus(qs.replace(t=t), cache).value), Es,
                    kind="upper")
    if "main_rescaling" in chk:
        for t in ts:
            rep.add("main_rescaling", t, Om(t=2 * t), Om(A=math.sqrt(2) * P.A, t=math.sqrt(2) * t))
    if "main_doubling_t" in chk:
        for t in ts:
            a, b = Om(A=1.0, t=t), Om(A=1.0, t=2 * t)
            rep.add("main_doubling_t_monotone", t, a, b, kind="inequality")
            rep.add("main_doubling_t", t, b, a)
    if "complete_B_enlarge" in chk or "complete_B_halve" in chk:
        c0 = min(1.0, Z.spacing / (4 * P.B))
        small = [t for t in ts if t < c0] or [c0 / 2]
        for t in small:
            if "complete_B_enlarge" in chk:
                rep.add("complete_B_enlarge", t, om(A=1.0, B=P.B * (1 + 1 / (2 * r)), t=t), om(A=1.0, t=t))
            if "complete_B_halve" in chk:
                rep.add("complete_B_halve", t, om(A=1.0, t=t), om(A=1.0, B=P.B / 2, t=t))
    if "identity_pp" in chk:
        _identity_pp_rows(rep, f, r)
    if "locality" in chk:
        _locality_rows(rep, w, Z, r, P.A, q0)
    return _timed(rep, start)


def _locality_rows(rep, w, Z, r, A, q0, per_h: int = 200):
    """Worst w(y)/w(x) over stencils and w(x)/w_n(x) on Dom(A, h, r), n = ceil(1/h)."""
    xs = q0.xs
    for h in h_lattice_sample(q0):
        dom = geometry.difference_domain(Z, A, h, r, xs)
        if dom.size == 0:
            continue
        dom = dom[np.linspace(0, dom.size - 1, min(per_h, dom.size)).astype(int)]
        wx = np.asarray(w(dom), float)
        keep = wx > 0
        dom, wx = dom[keep], wx[keep]
        if dom.size == 0:
            continue
        half = r * h * geometry.varphi(dom) / 2.0
        worst = 1.0
        for s in np.linspace(-1.0, 1.0, 5):
            wy = np.asarray(w(dom + s * half), float)
            worst = max(worst, float(np.max(np.maximum(wy / wx, wx / wy))))
        n = math.ceil(1.0 / h)
        wn = W.averaged_weight(w, n, dom)
        rep.add("locality_stencil", h, worst, 1.0)
        rep.add("locality_average", h, float(np.max(np.maximum(wn / wx, wx / wn))), 1.0)


def h_lattice_sample(q0, count: int = 6):
    hs = q0.hs
    return hs[np.linspace(0, hs.size - 1, count).astype(int)]


# ---------------------------------------------------------------------------
# near-best extension
# ---------------------------------------------------------------------------

def nested_pairs(z: float = 0.0, count: int = 10, first: float = 0.5, ratio: float = 0.6):
    """(I, J) pairs around z with I in J and |J| <= 2|I|, shrinking toward z.

    Even rungs are centred at z; odd rungs put z off-centre in I.
    """
    out = []
    for k in range(count):
        s = first * ratio**k
        if k % 2 == 0:
            I, J = (z - s / 2, z + s / 2), (z - s, z + s)
        else:
            I, J = (z - s / 4, z + 3 * s / 4), (z - s, z + s)
        clip = lambda iv: (max(-1.0, iv[0]), min(1.0, iv[1]))
        out.append((clip(I), clip(J)))
    return out


def interval_nodes(interval, Z, count: int = 256):
    a, b = interval
    x = geometry.chebyshev_grid(count + 1, float(a), float(b))
    g = geometry.graded_grid(17, as_zset(Z).points)
    return np.union1d(x, g[(g >= a) & (g <= b)])


def verify_near_best_extension(f, w, Z, r: int, pairs=None, count: int = 256) -> VerdictReport:
    start = time.perf_counter()
    Z = as_zset(Z)
    pairs = nested_pairs() if pairs is None else pairs
    rep = VerdictReport("near_best_extension", _inputs(f, w, Z, r, pairs=[[list(I), list(J)] for I, J in pairs]))
    for k, (I, J) in enumerate(pairs):
        if not (J[0] <= I[0] < I[1] <= J[1]):
            raise ValueError(f"pair {k}: I must lie inside J")
        q = best_weighted_approx(f, w, I, r, nodes=interval_nodes(I, Z, count)).poly.on_interval(J)
        xJ = interval_nodes(J, Z, count)
        xJ = xJ[f.regular_mask(xJ)]
        wJ = np.asarray(w(xJ), float)
        fJ = f(xJ)
        ext = float(np.max(wJ * np.abs(fJ - q(xJ))))
        EJ = best_weighted_approx(f, w, J, r, nodes=xJ).error
        floor = NOISE * max(float(np.max(np.abs(wJ * fJ))), 1e-300)
        ext, EJ = (0.0 if ext <= floor else ext), (0.0 if EJ <= floor else EJ)
        rep.add("near_best_extension", k, ext, EJ)
    return _timed(rep, start)


SUITES = ("jackson", "inverse", "realization", "polynomial_inequalities", "modulus_properties",
          "near_best_extension")
