"""Scalar-arithmetic oracle for the checkers at q = 1.

At q = 1 every map in the standard set is the plain product of its
arguments, so each checker can be recomputed with scalar arithmetic.
"""
import itertools
import math

import numpy as np

from mlineq import functions as fn
from mlineq import inequalities as iq
from mlineq import linalg as la
from mlineq import maps as mp
from mlineq import means as mn
from mlineq.linalg import Interval

DRAWS = 1000
TOL = 1e-8
SEED = 2718


def s(A):
    return complex(np.asarray(A).reshape(-1)[0])


def r(A):
    return s(A).real


def prod(xs):
    out = 1.0
    for x in xs:
        out *= x
    return out


def K(m, M, p):
    # closed form of the generalized Kantorovich constant, written out independently
    if m == M or p in (0, 1):
        return 1.0
    return (m * M**p - M * m**p) / ((p - 1) * (M - m)) * ((p - 1) / p * (M**p - m**p) / (m * M**p - M * m**p)) ** p


def gmean(alpha):
    return lambda a, b: a ** (1 - alpha) * b**alpha


def scalar_power_mean(t, w, xs):
    return sum(wi * x**t for wi, x in zip(w, xs)) ** (1 / t)


def scalar_karcher(w, xs):
    return math.exp(sum(wi * math.log(x) for wi, x in zip(w, xs)))


# --- oracles: return [(kind, lesser, greater)] with plain numbers ------------


def o_adjoint(c, x):
    T = [s(t) for t in x["T"]]
    return [("eq", prod(T).conjugate(), prod([t.conjugate() for t in T]))]


def o_monotone(c, x):
    return [("leq", prod(map(r, x["A"])), prod(map(r, x["B"])))]


def o_russo_dye(c, x):
    return [("leq", abs(prod(map(s, x["C"]))), 1.0), ("eq", 1.0, 1.0)]


def o_cdj(c, x):
    a = [r(A) for A in x["A"]]
    f = _scalar_f(c.f)
    outer, inner = f(prod(a)), prod(f(v) for v in a)
    return [("leq", outer, inner)] if c.direction == "convex" else [("leq", inner, outer)]


def _scalar_f(f):
    if f.tag == "power":
        p = f.params["r"]
        return lambda t: t**p
    if f.tag == "log":
        return math.log
    raise NotImplementedError(f.tag)


def o_power_family(c, x):
    a = [r(A) for A in x["A"]]
    powered, of_map = prod(v**c.r for v in a), prod(a) ** c.r
    return [("leq", powered, of_map)] if 0 <= c.r <= 1 else [("leq", of_map, powered)]


def o_power_monotonicity(c, x):
    a = [r(A) for A in x["A"]]
    return [("leq", prod(v**c.s for v in a) ** (1 / c.s), prod(v**c.t for v in a) ** (1 / c.t))]


def o_ando(c, x):
    g = gmean(c.mean.representing.params["r"])
    a, b = [r(A) for A in x["A"]], [r(B) for B in x["B"]]
    return [("leq", prod(g(u, v) for u, v in zip(a, b)), g(prod(a), prod(b)))]


def o_mean_symmetrization(c, x):
    al = c.mean.representing.params["r"]
    a, b = r(x["A"]), r(x["B"])
    m, mo = gmean(al)(a, b), gmean(1 - al)(a, b)
    return [("leq", 2 * m * mo, 2 * a * b)]


def o_fiedler(c, x):
    a = r(x["A"])
    u = (1 - c.lam) * c.alpha + c.lam * c.beta
    v = (1 - c.lam) * c.beta + c.lam * c.alpha
    return [("leq", 2 * a ** (u + v), 2 * a ** (c.alpha + c.beta))]


def o_choi_normal(c, x):
    z = [s(A) for A in x["A"]]
    big = prod(abs(v) ** 2 for v in z)
    p = prod(z)
    return [("leq", abs(p) ** 2, big), ("leq", abs(p) ** 2, big)]


def o_schwarz(c, x):
    a = [r(A) for A in x["A"]]
    if c.variant == "hermitian":
        h = [r(H) for H in x["H"]]
        return [("leq", prod(h) ** 2 / prod(a), prod(v * v / u for v, u in zip(h, a)))]
    z = prod(s(X) for X in x["X"])
    return [("leq", abs(z) ** 2 / prod(a), prod(a))]


def o_kantorovich(c, x):
    m, M = c.spectrum.m, c.spectrum.M
    const = (m * m + M * M) / (m * M)
    if c.variant == "rank-one":
        a, b = r(x["A"][0]), r(x["B"][0])
        lhs = a / b + b / a
        return [("leq", lhs, const), ("leq", lhs, const)]
    if c.variant == "scalar-weights":
        a, t = [r(A) for A in x["A"]], list(x["t"])
        P = sum(ti * ai for ti, ai in zip(t, a))
        Q = sum(ti / ai for ti, ai in zip(t, a))
        return [("leq", P * Q, const / 2 * sum(t) ** 2)]
    a, b = [r(A) for A in x["A"]], [r(B) for B in x["B"]]
    X, Y = [r(v) for v in x["X"]], [r(v) for v in x["Y"]]
    s1 = sum(xi * ai for xi, ai in zip(X, a))
    s2 = sum(yi / bi for yi, bi in zip(Y, b))
    s3 = sum(xi / ai for xi, ai in zip(X, a))
    s4 = sum(yi * bi for yi, bi in zip(Y, b))
    return [("leq", s1 * s2 + s3 * s4, const * sum(X) * sum(Y))]


def o_convexity(c, x):
    a, b = r(x["A"]), r(x["B"])
    if c.mode == "center0":
        w = abs(s(x["X"])) ** 2 * abs(s(x["Y"])) ** 2
        f = lambda t: w * (a ** (1 + t) * b ** (1 - t) + a ** (1 - t) * b ** (1 + t))
    else:
        f = lambda t: a**t * b ** (1 - t) + a ** (1 - t) * b**t
    pts = list(c.points)
    out = []
    for i, p in enumerate(pts):
        for q in pts[i + 1:]:
            lo = 2 * p - q
            if any(abs(lo - g) < 1e-12 for g in pts):
                out.append(("leq", 2 * f(p), f(lo) + f(q)))
    cen = c.center
    for t in pts:
        out.append(("leq", f(cen), f(t)))
        out.append(("eq", f(2 * cen - t), f(t)))
        end = pts[-1] if t >= cen else pts[0]
        out.append(("leq", f(t), f(end)))
    for p, q in zip(pts, pts[1:]):
        if p >= cen:
            out.append(("leq", f(p), f(q)))
        elif q <= cen:
            out.append(("leq", f(q), f(p)))
    return out


def o_reverse_cdj(c, x):
    k = len(x["A"])
    p = c.f.params["r"]
    const = K(c.spectrum.m**k, c.spectrum.M**k, p)
    a = [r(A) for A in x["A"]]
    outer, inner = prod(a) ** p, prod(v**p for v in a)
    if c.direction == "convex":
        return [("leq", inner, const * outer)]
    return [("leq", const * outer, inner)]


def o_reverse_ando(c, x):
    al = c.mean.representing.params["r"]
    k = len(x["A"])
    m, M = c.spectrum.m, c.spectrum.M
    const = K((m / M) ** k, (M / m) ** k, al)
    g = gmean(al)
    a, b = [r(A) for A in x["A"]], [r(B) for B in x["B"]]
    return [("leq", const * g(prod(a), prod(b)), prod(g(u, v) for u, v in zip(a, b)))]


def o_reverse_mean_additivity(c, x):
    al = c.mean.representing.params["r"]
    m, M = c.spectrum.m, c.spectrum.M
    const = K(m / M, M / m, al)
    g = gmean(al)
    A, B, C, Dd = (r(x[k]) for k in "ABCD")
    return [("leq", const * g(A + B, C + Dd), g(A, C) + g(B, Dd))]


def o_reverse_symmetrization(c, x):
    al = c.mean.representing.params["r"]
    m, M = c.spectrum.m, c.spectrum.M
    const = K((m / M) ** 2, (M / m) ** 2, al) ** -2
    a, b = r(x["A"]), r(x["B"])
    m_, mo = gmean(al)(a, b), gmean(1 - al)(a, b)
    return [("leq", 2 * a * b, const * 2 * m_ * mo)]


def _combos(x):
    tuples = [[r(A) for A in tp] for tp in x["tuples"]]
    weights = [list(w) for w in x["weights"]]
    vals = [prod(c) for c in itertools.product(*tuples)]
    wts = [prod(c) for c in itertools.product(*weights)]
    return tuples, weights, vals, wts


def o_info_power(c, x):
    tuples, weights, vals, wts = _combos(x)
    lhs = prod(scalar_power_mean(c.t, w, tp) for w, tp in zip(weights, tuples))
    rhs = scalar_power_mean(c.t, wts, vals)
    if c.t > 0:
        return [("leq", lhs, rhs)]
    k = len(tuples)
    m, M = c.spectrum.m, c.spectrum.M
    return [("leq", rhs, (M**k + m**k) ** 2 / (4 * M**k * m**k) * lhs)]


def o_info_karcher(c, x):
    tuples, weights, vals, wts = _combos(x)
    lhs = prod(scalar_karcher(w, tp) for w, tp in zip(weights, tuples))
    mid = scalar_karcher(wts, vals)
    k = len(tuples)
    m, M = c.spectrum.m, c.spectrum.M
    return [("leq", lhs, mid), ("leq", mid, (M**k + m**k) ** 2 / (4 * M**k * m**k) * lhs)]


ORACLES = {
    "adjoint": o_adjoint, "monotone": o_monotone, "russo_dye": o_russo_dye, "cdj": o_cdj,
    "power_family": o_power_family, "power_monotonicity": o_power_monotonicity, "ando": o_ando,
    "mean_symmetrization": o_mean_symmetrization, "fiedler": o_fiedler, "choi_normal": o_choi_normal,
    "schwarz": o_schwarz, "kantorovich": o_kantorovich, "convexity": o_convexity,
    "reverse_cdj": o_reverse_cdj, "reverse_ando": o_reverse_ando,
    "reverse_mean_additivity": o_reverse_mean_additivity, "reverse_symmetrization": o_reverse_symmetrization,
    "info_power": o_info_power, "info_karcher": o_info_karcher,
}


def oracle_margin(sides):
    best = (math.inf, math.inf)
    for kind, lesser, greater in sides:
        lesser, greater = complex(lesser), complex(greater)
        scale = max(1.0, abs(lesser), abs(greater))
        raw = (greater - lesser).real if kind == "leq" else -abs(greater - lesser)
        if raw / scale < best[1]:
            best = (raw, raw / scale)
    return best


# --- the checker instances --------------------------------------------------


def _maps():
    rng = np.random.default_rng(1)
    cong = mp.congruence_transformed(mp.hadamard_map(1), [la.random_positive(1, Interval(0.5, 2), rng) for _ in range(2)])
    return [mp.tensor_map(1), mp.hadamard_map(1), cong, mp.hadamard_map(1, 3)]


def _instances():
    spec = Interval(0.5, 2.0)
    out = []
    for phi in _maps():
        out += [
            iq.AdjointPreserving(phi=phi),
            iq.Monotone(phi=phi, spectrum=spec),
            iq.RussoDye(phi=phi),
            iq.ChoiDavisJensen(phi=phi, f=fn.power(2), direction="convex", spectrum=spec),
            iq.ChoiDavisJensen(phi=phi, f=fn.power(0.5), direction="concave", spectrum=spec),
            iq.PowerFamily(phi=phi, r=-1.0, spectrum=spec),
            iq.PowerFamily(phi=phi, r=0.5, spectrum=spec),
            iq.PowerMonotonicity(phi=phi, s=-2.0, t=1.0, spectrum=spec),
            iq.AndoMultilinear(phi=phi, mean=mn.geometric(0.3), spectrum=spec),
            iq.ChoiNormal(phi=phi, spectrum=spec),
            iq.SchwarzMultilinear(phi=phi, variant="hermitian", spectrum=spec),
            iq.SchwarzMultilinear(phi=phi, variant="general", spectrum=spec),
            iq.ReverseCDJ(phi=phi, f=fn.power(2), direction="convex", spectrum=Interval(1, 2)),
            iq.ReverseCDJ(phi=phi, f=fn.power(0.5), direction="concave", spectrum=Interval(1, 2)),
            iq.ReverseAndo(phi=phi, mean=mn.geometric(0.5), spectrum=Interval(1, 2)),
            iq.InfoMonotonicityPower(phi=phi, t=0.5, n=2, spectrum=Interval(1, 2)),
            iq.InfoMonotonicityPower(phi=phi, t=-1.0, n=3, spectrum=Interval(1, 2)),
            iq.InfoMonotonicityKarcher(phi=phi, n=2, spectrum=Interval(1, 2)),
        ]
        if phi.k == 2:
            out += [
                iq.MeanSymmetrization(phi=phi, mean=mn.geometric(0.3), spectrum=spec),
                iq.FiedlerExtension(phi=phi, alpha=1.0, beta=3.0, lam=0.3, spectrum=spec),
                iq.Kantorovich(phi=phi, variant="congruence", spectrum=Interval(1, 2), n=2),
                iq.Kantorovich(phi=phi, variant="rank-one", spectrum=Interval(1, 2)),
                iq.ConvexityProfile(phi=phi, mode="center0", spectrum=spec),
                iq.ConvexityProfile(phi=phi, mode="center_half", spectrum=spec),
                iq.ReverseSymmetrization(phi=phi, mean=mn.geometric(0.5), spectrum=Interval(1, 2)),
            ]
            if phi.symmetric:
                out.append(iq.Kantorovich(phi=phi, variant="scalar-weights", spectrum=Interval(1, 2), n=3))
    out.append(iq.ReverseMeanAdditivity(mean=mn.geometric(0.5), spectrum=Interval(1, 4), q=1))
    out.append(iq.ReverseMeanAdditivity(mean=mn.geometric(0.2), spectrum=Interval(1, 2), q=1))
    return out


INSTANCES = _instances()


def disagreements(ineq, draws=DRAWS, seed=SEED):
    oracle = ORACLES[ineq.family]
    bad = []
    for trial in range(draws):
        x = ineq.inputs_for_trial(seed, trial)
        raw, scaled = ineq.margin(x)
        o_raw, o_scaled = oracle_margin(oracle(ineq, x))
        same_verdict = (scaled >= -TOL) == (o_scaled >= -TOL)
        if not same_verdict or abs(scaled - o_scaled) > 1e-9:
            bad.append((trial, scaled, o_scaled))
    return bad
