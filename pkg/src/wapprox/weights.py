"""Weights on [-1, 1]: construction, evaluation, mass, and class diagnostics.

A weight is identically zero outside [-1, 1]. The supported families are
constants, generalized Jacobi products ``prod |x - z_i|^gamma_i``, their
logarithmic (generalized Ditzian-Totik) extension with factors
``(ln(e / |x - z_i|))^Gamma_i``, products with a monotone radial profile
``g(|x - xi|)``, and arbitrary callables with declared zero/break points.

The diagnostics estimate the doubling constant, the A* constant and the
stability constant c_* of the no-rapid-change condition on sampled families
of intervals and point pairs. They are grid lower bounds of suprema; the
``diverging`` flag records when they keep growing under refinement.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy.optimize import brentq

from . import geometry
from .quadrature import integrate, integrate_intervals

KINDS = ("constant", "generalized_jacobi", "generalized_dt", "product_monotone", "custom_callable")

# growth factor per resolution doubling that counts as divergence
DIVERGENCE_FACTOR = 1.5


@dataclass(frozen=True)
class Factor:
    z: float
    gamma: float
    Gamma: float = 0.0


# ---------------------------------------------------------------------------
# radial profiles g(u), u = |x - xi| in [0, 2]
# ---------------------------------------------------------------------------

def _profile_power(gamma: float):
    return lambda u: np.power(u, gamma)


def _profile_gdt(gamma: float, Gamma: float):
    # nondecreasing on [0, 2] with bounded g(2u)/g(u)
    if gamma == 0:
        if Gamma > 0:
            raise ValueError("gdt profile needs Gamma <= 0 when gamma == 0")

        def g(u):
            with np.errstate(divide="ignore"):
                return np.where(u > 0, np.power(1.0 - np.log(np.where(u > 0, u, 1.0)), Gamma), 0.0 if Gamma < 0 else 1.0)
        return g
    psi = 1.0 + max(0.0, Gamma) / gamma

    def g(u):
        safe = np.where(u > 0, u, 1.0)
        return np.where(u > 0, np.power(safe, gamma) * np.power(psi - np.log(safe), Gamma), 0.0)
    return g


PROFILES: dict[str, Callable[..., Callable]] = {
    "power": _profile_power,
    "gdt": _profile_gdt,
}


# ---------------------------------------------------------------------------
# named custom weights (JSON-addressable callables)
# ---------------------------------------------------------------------------

def _piecewise_nonexample(x):
    return np.where(x < 0, -x, x * x)


def _flat_exponential(x):
    safe = np.where(x > 0, x, 1.0)
    return np.where(x > 0, np.exp(-1.0 / safe**2), 0.0)


CUSTOM_WEIGHTS: dict[str, tuple[Callable, tuple, tuple]] = {
    # name: (callable, zero_set, breakpoints)
    "piecewise_nonexample": (_piecewise_nonexample, (0.0,), (0.0,)),
    "flat_exponential": (_flat_exponential, (0.0,), (0.0,)),
}


@dataclass(frozen=True, eq=False)
class Weight:
    """Pointwise-evaluable weight on [-1, 1].

    ``value`` is a positive constant multiplier (the whole weight for kind
    ``constant``). ``zero_set`` lists the points where w may vanish;
    ``breakpoints`` lists further points where w is not smooth.
    """

    kind: str
    factors: tuple = ()
    base: "Weight | None" = None
    value: float = 1.0
    zero_set: tuple = ()
    breakpoints: tuple = ()
    func: Callable | None = field(default=None, repr=False)
    name: str = ""
    xi: float = 0.0
    profile: tuple = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown weight kind {self.kind!r}; expected one of {KINDS}")
        if self.value <= 0:
            raise ValueError("weight multiplier must be positive")
        for fac in self.factors:
            if not -1.0 <= fac.z <= 1.0:
                raise ValueError(f"factor point {fac.z} outside [-1, 1]")
            if fac.gamma < 0:
                raise ValueError("factor exponents gamma must be >= 0")
            if fac.gamma == 0 and fac.Gamma > 0:
                raise ValueError("log exponent Gamma must be <= 0 when gamma == 0")
            if self.kind == "generalized_jacobi" and fac.Gamma != 0:
                raise ValueError("generalized Jacobi factors carry no log exponent")
        if self.kind in ("product_monotone", "custom_callable") and self.func is None:
            raise ValueError(f"{self.kind} weight needs a callable")

    # -- evaluation ---------------------------------------------------------
    def __call__(self, x):
        return eval_weight(self, x)

    def _inside(self, x):
        """Evaluate on points already known to lie in [-1, 1]."""
        if self.kind == "constant":
            out = np.full(x.shape, self.value)
        elif self.kind in ("generalized_jacobi", "generalized_dt"):
            out = np.full(x.shape, self.value)
            for fac in self.factors:
                d = np.abs(x - fac.z)
                pos = d > 0
                safe = np.where(pos, d, 1.0)
                term = np.power(safe, fac.gamma)
                if fac.Gamma != 0:
                    term = term * np.power(1.0 - np.log(safe), fac.Gamma)
                at_zero = 0.0 if (fac.gamma > 0 or fac.Gamma < 0) else 1.0
                out = out * np.where(pos, term, at_zero)
        elif self.kind == "product_monotone":
            out = self.value * np.asarray(self.func(np.abs(x - self.xi)), dtype=float)
        else:
            out = self.value * np.asarray(self.func(x), dtype=float)
        if self.base is not None:
            out = out * self.base._inside(x)
        return out

    # -- metadata -----------------------------------------------------------
    def singular_points(self) -> tuple:
        pts = set(self.zero_set) | set(self.breakpoints)
        for fac in self.factors:
            if fac.gamma != 0 or fac.Gamma != 0:
                pts.add(fac.z)
        if self.kind == "product_monotone":
            pts.add(self.xi)
        if self.base is not None:
            pts |= set(self.base.singular_points())
        return tuple(sorted(float(p) for p in pts if -1.0 <= p <= 1.0))

    def declared_zeros(self) -> tuple:
        zs = set(self.zero_set)
        for fac in self.factors:
            if fac.gamma > 0 or fac.Gamma < 0:
                zs.add(fac.z)
        if self.kind == "product_monotone":
            zs.add(self.xi)
        if self.base is not None:
            zs |= set(self.base.declared_zeros())
        return tuple(sorted(zs))

    def to_dict(self) -> dict:
        d: dict = {"kind": self.kind}
        if self.value != 1.0:
            d["value"] = self.value
        if self.factors:
            d["factors"] = [{"z": f.z, "gamma": f.gamma, "Gamma": f.Gamma} for f in self.factors]
        if self.base is not None:
            d["base"] = self.base.to_dict()
        if self.kind == "product_monotone":
            d["xi"] = self.xi
            d["profile"] = dict(self.profile)
        if self.kind == "custom_callable":
            d["name"] = self.name or f"callable@{id(self.func):x}"
        if self.zero_set and self.kind == "custom_callable":
            d["zero_set"] = list(self.zero_set)
        return d

    def key(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def __repr__(self):
        return f"Weight({self.key()})"


def eval_weight(w: Weight, x):
    """w(x), vectorized; zero for |x| > 1."""
    arr = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(arr)):
        raise ValueError("weight evaluated at a non-finite point")
    flat = np.atleast_1d(arr).ravel()
    out = np.zeros(flat.shape)
    inside = np.abs(flat) <= 1.0
    if inside.any():
        out[inside] = w._inside(flat[inside])
    out = out.reshape(np.shape(arr))
    return float(out) if np.ndim(arr) == 0 else out


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------

def constant(value: float = 1.0) -> Weight:
    return Weight("constant", value=value)


def generalized_jacobi(points: Sequence[float], gammas: Sequence[float], value: float = 1.0) -> Weight:
    factors = tuple(Factor(float(z), float(g)) for z, g in zip(points, gammas))
    return Weight("generalized_jacobi", factors=factors, value=value)


def jacobi(alpha: float, beta: float) -> Weight:
    """Classical (1 + x)^alpha (1 - x)^beta."""
    return generalized_jacobi([-1.0, 1.0], [alpha, beta])


def make_gdt_weight(base: Weight | None, factors: Sequence) -> Weight:
    """w * prod |x - z_i|^gamma_i (ln(e/|x - z_i|))^Gamma_i.

    ``factors`` holds (z, gamma, Gamma) triples or Factor objects.
    """
    facs = []
    for f in factors:
        fac = f if isinstance(f, Factor) else Factor(*map(float, f))
        if fac.gamma < 0:
            raise ValueError("gamma must be >= 0")
        if fac.gamma == 0 and fac.Gamma > 0:
            raise ValueError(f"factor at z={fac.z}: Gamma={fac.Gamma} > 0 requires gamma > 0")
        facs.append(fac)
    if base is not None and base.kind == "constant" and not facs:
        return base
    if base is not None and base.kind == "constant":
        return Weight("generalized_dt", factors=tuple(facs), value=base.value)
    return Weight("generalized_dt", factors=tuple(facs), base=base)


def times_varphi(w: Weight, mu: float) -> Weight:
    """w * phi^mu, written as |x + 1|^(mu/2) |x - 1|^(mu/2)."""
    return make_gdt_weight(w, [(-1.0, mu / 2, 0.0), (1.0, mu / 2, 0.0)])


def profile_doubling_constant(g: Callable, samples: int = 400) -> float:
    """Sampled sup of g(2u)/g(u) over a log grid in (0, 1]."""
    u = np.geomspace(1e-12, 1.0, samples)
    gu, g2u = np.asarray(g(u), float), np.asarray(g(2 * u), float)
    if np.any(np.diff(np.asarray(g(np.geomspace(1e-12, 2.0, samples)), float)) < -1e-12):
        raise ValueError("profile is not nondecreasing")
    with np.errstate(divide="ignore", invalid="ignore"):
        ratio = np.where(gu > 0, g2u / np.where(gu > 0, gu, 1.0), np.where(g2u > 0, np.inf, 1.0))
    return float(np.max(ratio))


def product_monotone(base: Weight | None, xi: float, profile: str, **params) -> Weight:
    """base(x) * g(|x - xi|) for a named nondecreasing profile g with g(2u) <= K g(u)."""
    if profile not in PROFILES:
        raise ValueError(f"unknown profile {profile!r}; known: {sorted(PROFILES)}")
    g = PROFILES[profile](**params)
    K = profile_doubling_constant(g)
    if not math.isfinite(K):
        raise ValueError("profile violates g(2u) <= K g(u)")
    return Weight("product_monotone", base=base, func=g, xi=float(xi),
                  profile=tuple(sorted({"name": profile, **params}.items())))


def custom(func: Callable, zero_set=(), breakpoints=(), name: str = "") -> Weight:
    return Weight("custom_callable", func=func, zero_set=tuple(zero_set),
                  breakpoints=tuple(breakpoints), name=name)


def named(name: str) -> Weight:
    if name not in CUSTOM_WEIGHTS:
        raise ValueError(f"unknown custom weight {name!r}; known: {sorted(CUSTOM_WEIGHTS)}")
    func, zeros, brk = CUSTOM_WEIGHTS[name]
    return custom(func, zeros, brk, name=name)


def from_dict(spec: dict) -> Weight:
    """Build a Weight from its JSON object form."""
    kind = spec.get("kind")
    base = from_dict(spec["base"]) if spec.get("base") else None
    value = float(spec.get("value", 1.0))
    if kind == "constant":
        return Weight("constant", value=value)
    if kind in ("generalized_jacobi", "generalized_dt"):
        factors = tuple(Factor(float(f["z"]), float(f.get("gamma", 0.0)), float(f.get("Gamma", 0.0)))
                        for f in spec.get("factors", []))
        return Weight(kind, factors=factors, base=base, value=value)
    if kind == "product_monotone":
        prof = dict(spec["profile"])
        pname = prof.pop("name")
        return product_monotone(base, spec.get("xi", 0.0), pname, **prof)
    if kind == "custom_callable":
        w = named(spec["name"])
        if base is not None:
            return Weight("custom_callable", func=w.func, zero_set=w.zero_set,
                          breakpoints=w.breakpoints, name=w.name, base=base)
        return w
    raise ValueError(f"unknown weight kind {kind!r}")


# ---------------------------------------------------------------------------
# mass and averaged weight
# ---------------------------------------------------------------------------

def weight_mass(w: Weight, a: float, b: float, tol: float = 1e-10) -> float:
    """Integral of w over [a, b] (w = 0 outside [-1, 1])."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    if not a <= b:
        raise ValueError("need a <= b")
    lo, hi = max(a, -1.0), min(b, 1.0)
    if hi <= lo:
        return 0.0
    return integrate(w._inside, lo, hi, w.singular_points(), tol=tol)


def interval_masses(w: Weight, lo, hi, tol: float = 1e-10):
    """Vectorized weight_mass over many intervals."""
    lo = np.clip(np.asarray(lo, float), -1.0, 1.0)
    hi = np.clip(np.asarray(hi, float), -1.0, 1.0)
    return integrate_intervals(w._inside, lo, hi, w.singular_points(), tol=tol)


def averaged_weight(w: Weight, n: int, x, tol: float = 1e-10):
    """w_n(x) = rho_n(x)^-1 * integral of w over [x - rho_n(x), x + rho_n(x)]."""
    if n < 1:
        raise ValueError("n must be >= 1")
    xa = np.asarray(x, dtype=float)
    if np.any(np.abs(xa) > 1):
        raise ValueError("averaged weight is defined on [-1, 1]")
    flat = np.atleast_1d(xa).ravel()
    rho = geometry.rho_n(n, flat)
    out = interval_masses(w, flat - rho, flat + rho, tol) / rho
    return float(out[0]) if xa.ndim == 0 else out.reshape(xa.shape)


def _window_crossings(n: int, points) -> tuple:
    """x in [-1, 1] where x - rho_n(x) or x + rho_n(x) hits one of ``points``."""
    x = np.linspace(-1.0, 1.0, 4001)
    out = set()
    for p in points:
        for sign in (-1.0, 1.0):
            def g(t, p=p, sign=sign):
                return t + sign * float(geometry.rho_n(n, t)) - p
            vals = x + sign * geometry.rho_n(n, x) - p
            for i in np.nonzero(np.sign(vals[:-1]) * np.sign(vals[1:]) <= 0)[0]:
                if vals[i] == 0:
                    out.add(float(x[i]))
                elif vals[i + 1] != 0:
                    out.add(float(brentq(g, x[i], x[i + 1], xtol=1e-15)))
    return tuple(sorted(out))


def averaged(w: Weight, n: int) -> Weight:
    """w_n packaged as a Weight (positive everywhere on [-1, 1]).

    w_n is smooth except at +-1 and where an edge of the averaging window
    crosses a singular point of w or an endpoint of [-1, 1]; those are
    declared as breakpoints so the quadrature grades toward them.
    """
    # rho_n carries the square-root behaviour of phi at +-1
    brk = (-1.0, 1.0) + _window_crossings(n, tuple(w.singular_points()) + (-1.0, 1.0))
    # inner accuracy well below the 1e-12 used for interval masses of w_n
    return custom(lambda x: averaged_weight(w, n, x, tol=1e-14), breakpoints=brk, name=f"averaged[{n}]{w.key()}")


# ---------------------------------------------------------------------------
# class diagnostics
# ---------------------------------------------------------------------------

class _MassTable:
    """Masses of all unions of consecutive cells of width 1/resolution."""

    def __init__(self, w: Weight, resolution: int):
        self.res = resolution
        self.edges = np.linspace(-1.0, 1.0, 2 * resolution + 1)
        cells = interval_masses(w, self.edges[:-1], self.edges[1:], tol=1e-12)
        self.prefix = np.concatenate(([0.0], np.cumsum(cells)))
        self.suffix = np.concatenate((np.cumsum(cells[::-1])[::-1], [0.0]))
        self.values = eval_weight(w, self.edges)

    def mass(self, s, e):
        """Mass between edge indices s <= e (clipped to the table)."""
        s = np.clip(s, 0, len(self.edges) - 1)
        e = np.clip(e, 0, len(self.edges) - 1)
        left = self.prefix[e] - self.prefix[s]
        right = self.suffix[s] - self.suffix[e]
        # subtract the smaller accumulated quantity to limit cancellation
        use_left = self.prefix[s] <= self.suffix[e]
        return np.maximum(np.where(use_left, left, right), 0.0)

    def families(self):
        """(start, length) index pairs: dyadic lengths slid along the finest grid."""
        levels = int(round(math.log2(self.res)))
        starts, lengths = [], []
        for d in range(levels + 1):
            ell = 2 * self.res // 2**d
            s = np.arange(0, 2 * self.res - ell + 1, 2)
            starts.append(s)
            lengths.append(np.full(s.shape, ell))
        return np.concatenate(starts), np.concatenate(lengths)


def _ratio(num, den):
    with np.errstate(divide="ignore", invalid="ignore"):
        r = np.where(den > 0, num / np.where(den > 0, den, 1.0), np.where(num > 0, np.inf, np.nan))
    return r


@dataclass
class DoublingEstimate:
    doubling: float
    kappa: float
    resolution: int
    diverging: bool


def estimate_doubling_constant(w: Weight, resolution: int = 128) -> DoublingEstimate:
    """Sampled sup of w(2I)/w(I) and of w(I1)/w(I2) over adjacent equal intervals."""
    if resolution < 8 or resolution & (resolution - 1):
        raise ValueError("resolution must be a power of two >= 8")
    table = _MassTable(w, resolution)
    s, ell = table.families()
    mI = table.mass(s, s + ell)
    m2I = table.mass(s - ell // 2, s + ell + ell // 2)
    ratios = _ratio(m2I, mI)
    pair = s + 2 * ell <= 2 * resolution
    m1, m2 = mI[pair], table.mass(s[pair] + ell[pair], s[pair] + 2 * ell[pair])
    kap = np.concatenate((_ratio(m1, m2), _ratio(m2, m1)))
    doubling = float(np.nanmax(ratios)) if np.any(~np.isnan(ratios)) else 1.0
    kappa = float(np.nanmax(kap)) if np.any(~np.isnan(kap)) else 1.0
    return DoublingEstimate(doubling, kappa, resolution, not (math.isfinite(doubling) and math.isfinite(kappa)))


@dataclass
class AStarEstimate:
    astar: float
    resolution: int
    diverging: bool


def estimate_astar_constant(w: Weight, resolution: int = 128) -> AStarEstimate:
    """Sampled sup of max{w(a), w(b)} (b - a) / w[a, b] over the interval family."""
    if resolution < 8 or resolution & (resolution - 1):
        raise ValueError("resolution must be a power of two >= 8")
    table = _MassTable(w, resolution)
    s, ell = table.families()
    m = table.mass(s, s + ell)
    ends = np.maximum(table.values[s], table.values[s + ell])
    length = table.edges[s + ell] - table.edges[s]
    ratios = _ratio(ends * length, m)
    est = float(np.nanmax(ratios)) if np.any(~np.isnan(ratios)) else 1.0
    return AStarEstimate(est, resolution, not math.isfinite(est))


def diverges(ladder: Sequence[float], factor: float = DIVERGENCE_FACTOR) -> bool:
    """Infinite entry, or growth by more than ``factor`` on two consecutive doublings."""
    vals = list(ladder)
    if any(not math.isfinite(v) for v in vals):
        return True
    run = 0
    for a, b in zip(vals, vals[1:]):
        run = run + 1 if b > factor * a else 0
        if run >= 2:
            return True
    return False


def decays(ladder: Sequence[float], factor: float = DIVERGENCE_FACTOR) -> bool:
    """Mirror of :func:`diverges` for quantities that should stay away from 0."""
    vals = list(ladder)
    if any(v <= 0 for v in vals):
        return True
    return diverges([1.0 / v for v in vals], factor)


@dataclass
class WStarCheck:
    c_star: float
    passed: bool
    vacuous: bool
    per_n: dict


def _wstar_pairs(Z, n, A, B, samples, extra=()):
    comps = geometry.main_set(Z, A, 1.0 / n)
    if comps.empty:
        return None
    # spacing must shrink faster than rho_n, or a zero of w inside I_{A,1/n}
    # would stay invisible at every n
    count = min(samples * max(1, (n // 8) ** 2), 64 * samples)
    xs = np.union1d(geometry.chebyshev_grid(count), np.asarray(extra, float))
    pts = []
    for lo, hi in comps.intervals:
        inner = xs[(xs >= lo) & (xs <= hi)]
        pts.append(np.concatenate(([lo, hi], inner)))
    x = np.concatenate(pts)
    owner = np.concatenate([np.full(len(p), i) for i, p in enumerate(pts)])
    lo = np.array([c[0] for c in comps.intervals])[owner]
    hi = np.array([c[1] for c in comps.intervals])[owner]
    rho = geometry.rho_n(n, x)
    fr = np.array([-1.0, -0.5, -0.25, 0.25, 0.5, 1.0])
    y = x[:, None] + B * rho[:, None] * fr[None, :]
    y = np.clip(y, lo[:, None], hi[:, None])
    return np.repeat(x, len(fr)), y.ravel()


def check_wstar_condition(w: Weight, Z, n, A: float = 1.0, B: float = 1.0, samples: int = 2000) -> WStarCheck:
    """Sampled constant c_* of the no-rapid-change condition on I_{A,1/n}.

    ``n`` may be an int or a ladder of ints; with a ladder, ``passed`` also
    requires that the estimate does not collapse as n grows.
    """
    if A <= 0 or B <= 0:
        raise ValueError("A and B must be positive")
    Z = geometry.as_zset(Z)
    ladder = [int(n)] if np.ndim(n) == 0 else [int(k) for k in n]
    per_n = {}
    for k in ladder:
        if k < 1:
            raise ValueError("n must be >= 1")
        pairs = _wstar_pairs(Z, k, A, B, samples, w.singular_points())
        if pairs is None:
            per_n[k] = None
            continue
        x, y = pairs
        wx, wy = eval_weight(w, x), eval_weight(w, y)
        with np.errstate(divide="ignore", invalid="ignore"):
            r = np.minimum(_ratio(wx, wy), _ratio(wy, wx))
        r = np.where(np.isnan(r), 1.0, r)
        per_n[k] = float(np.min(r))
    vals = [v for v in per_n.values() if v is not None]
    if not vals:
        return WStarCheck(1.0, True, True, per_n)
    passed = min(vals) > 0 and not decays(vals)
    return WStarCheck(min(vals), passed, False, per_n)


@dataclass
class WeightClassReport:
    doubling_estimate: float
    astar_estimate: float
    wstar_constant_estimate: float | None
    resolutions: list
    diverging: bool
    doubling_ladder: list = field(default_factory=list)
    kappa_ladder: list = field(default_factory=list)
    astar_ladder: list = field(default_factory=list)
    wstar_ladder: dict = field(default_factory=dict)
    doubling_diverging: bool = False
    astar_diverging: bool = False
    wstar_passed: bool | None = None

    def to_dict(self) -> dict:
        def clean(v):
            if isinstance(v, float) and not math.isfinite(v):
                return "inf"
            if isinstance(v, list):
                return [clean(u) for u in v]
            if isinstance(v, dict):
                return {str(k): clean(u) for k, u in v.items()}
            return v
        return {k: clean(v) for k, v in self.__dict__.items()}


def classify_weight(w: Weight, Z=None, resolutions=(128, 256, 512), wstar_ns=(8, 16, 32),
                    A: float = 1.0, B: float = 1.0) -> WeightClassReport:
    """Doubling / A* / c_* estimates across a resolution ladder."""
    dbl = [estimate_doubling_constant(w, r) for r in resolutions]
    ast = [estimate_astar_constant(w, r) for r in resolutions]
    d_ladder = [e.doubling for e in dbl]
    k_ladder = [e.kappa for e in dbl]
    a_ladder = [e.astar for e in ast]
    d_div = diverges(d_ladder) or diverges(k_ladder)
    # every A* weight is doubling, so a diverging doubling ladder also rules out A*
    a_div = diverges(a_ladder) or d_div
    wstar = None
    if Z is not None:
        wstar = check_wstar_condition(w, Z, list(wstar_ns), A, B)
    return WeightClassReport(
        doubling_estimate=d_ladder[-1],
        astar_estimate=a_ladder[-1],
        wstar_constant_estimate=None if wstar is None else wstar.c_star,
        resolutions=list(resolutions),
        diverging=d_div or a_div,
        doubling_ladder=d_ladder,
        kappa_ladder=k_ladder,
        astar_ladder=a_ladder,
        wstar_ladder={} if wstar is None else wstar.per_n,
        doubling_diverging=d_div,
        astar_diverging=a_div,
        wstar_passed=None if wstar is None else wstar.passed,
    )
