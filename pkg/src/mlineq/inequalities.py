"""Checkers for the multilinear matrix inequalities.

Each class below is one inequality family.  Inputs are drawn at random from
seeded substreams (or supplied as ``fixed``) and every comparison is reported
as ``(kind, lesser, greater)``; see :mod:`mlineq.checks`.
"""
from __future__ import annotations

import itertools
import math

import numpy as np

from . import functions as fn
from . import linalg as la
from . import means as mn
from .checks import CheckResult, Inequality, run_check
from .functions import HypothesisError, ScalarFunction
from .linalg import Interval
from .maps import MapDescriptor, hadamard_map, is_unital, rank_one_map, slotwise


class PreconditionError(ValueError):
    pass


def _require_unital(phi: MapDescriptor):
    if not is_unital(phi, 1e-9):
        raise PreconditionError(f"{phi.label} is not unital")


def _require_bilinear(phi: MapDescriptor):
    if phi.k != 2:
        raise PreconditionError(f"{phi.label} must be bilinear (k = 2)")


def _positives(phi: MapDescriptor, spec: Interval, rng, count: int | None = None):
    return [la.random_positive(phi.q, spec, rng) for _ in range(count or phi.k)]


def _fmap(f: ScalarFunction, mats):
    return [la.matrix_function(A, f) for A in mats]


def _check_spectra(mats, spec: Interval, what="input"):
    for A in mats:
        w = la.eigvalsh(A)
        slack = 1e-10 * spec.M
        if w[0] < spec.m - slack or w[-1] > spec.M + slack:
            raise PreconditionError(
                f"{what} spectrum [{w[0]:.6g}, {w[-1]:.6g}] leaves [{spec.m:g}, {spec.M:g}]"
            )


# ----------------------------------------------------------------------------
# structural properties of maps


class AdjointPreserving(Inequality):
    """``Phi(T_1, ..., T_k)^* = Phi(T_1^*, ..., T_k^*)`` for arbitrary ``T_i``."""

    family = "adjoint"

    def describe(self):
        return self.phi.label

    def draw(self, rng):
        return {"T": [la.random_complex(self.phi.q, rng) for _ in range(self.phi.k)]}

    def sides(self, x):
        T = x["T"]
        return [("eq", la.adjoint(self.phi(*T)), self.phi(*[la.adjoint(t) for t in T]))]


class Monotone(Inequality):
    """``0 <= A_i <= B_i  =>  Phi(A) <= Phi(B)``."""

    family = "monotone"

    def describe(self):
        return self.phi.label

    def draw(self, rng):
        B = _positives(self.phi, self.spectrum, rng)
        A = []
        for Bi in B:
            half, _ = la.sqrtm_pair(Bi)
            C = la.random_positive(self.phi.q, Interval(1e-3, 1.0), rng)
            A.append(la.as_hermitian(half @ C @ half))
        return {"A": A, "B": B}

    def sides(self, x):
        return [("leq", self.phi(*x["A"]), self.phi(*x["B"]))]


class RussoDye(Inequality):
    """A unital positive multilinear map has norm one: ``||Phi(C)|| <= 1`` on contractions."""

    family = "russo_dye"

    def validate(self):
        _require_unital(self.phi)

    def describe(self):
        return self.phi.label

    def draw(self, rng):
        return {"C": [la.random_contraction(self.phi.q, rng) for _ in range(self.phi.k)]}

    def sides(self, x):
        norm = la.opnorm(self.phi(*x["C"]))
        at_identity = la.opnorm(self.phi(*[la.identity(self.phi.q)] * self.phi.k))
        return [("leq", [[norm]], [[1.0]]), ("eq", [[at_identity]], [[1.0]])]


# ----------------------------------------------------------------------------
# Jensen type


class ChoiDavisJensen(Inequality):
    """``f(Phi(A)) <= Phi(f(A_1), ..., f(A_k))`` for sub-multiplicative matrix convex ``f``;
    reversed for super-multiplicative matrix concave ``f``."""

    family = "cdj"

    def validate(self):
        _require_unital(self.phi)
        if self.direction not in ("convex", "concave"):
            raise ValueError("direction must be 'convex' or 'concave'")
        if self.expected_failure:
            return
        f, s = self.f, self.spectrum
        if self.direction == "convex":
            if not f.convex:
                raise HypothesisError(f"{f.label} is not tagged matrix convex")
            fn.verify_multiplicativity(f, "sub", s.m, s.M)
        else:
            if not f.concave:
                raise HypothesisError(f"{f.label} is not tagged matrix concave")
            fn.verify_multiplicativity(f, "super", s.m, s.M)

    def describe(self):
        return f"{self.phi.label},{self.f.label},{self.direction}"

    def draw(self, rng):
        return {"A": _positives(self.phi, self.spectrum, rng)}

    def sides(self, x):
        A = x["A"]
        outer = la.matrix_function(self.phi(*A), self.f)
        inner = self.phi(*_fmap(self.f, A))
        if self.direction == "convex":
            return [("leq", outer, inner)]
        return [("leq", inner, outer)]


class PowerFamily(Inequality):
    """``Phi(A^r) <= Phi(A)^r`` for r in [0,1]; ``Phi(A)^r <= Phi(A^r)`` for r in [-1,0] or [1,2]."""

    family = "power_family"

    def validate(self):
        _require_unital(self.phi)
        if not -1 <= self.r <= 2:
            raise PreconditionError(f"r = {self.r} outside [-1, 2]")

    def describe(self):
        return f"{self.phi.label},r={self.r:g}"

    def draw(self, rng):
        return {"A": _positives(self.phi, self.spectrum, rng)}

    def sides(self, x):
        A, r = x["A"], self.r
        powered = self.phi(*[la.mpower(a, r) for a in A])
        of_map = la.mpower(self.phi(*A), r)
        if 0 <= r <= 1:
            return [("leq", powered, of_map)]
        return [("leq", of_map, powered)]


def power_monotonicity_condition(s: float, t: float) -> str | None:
    """Name of the satisfied hypothesis set, or ``None``."""
    outside = lambda x: x <= -1 or x >= 1
    if s <= t and outside(s) and outside(t):
        return "s<=t, |s|,|t|>=1"
    if 0.5 <= s <= 1 <= t:
        return "1/2<=s<=1<=t"
    if s <= -1 <= t <= -0.5:
        return "s<=-1<=t<=-1/2"
    return None


class PowerMonotonicity(Inequality):
    """``Phi(A^s)^{1/s} <= Phi(A^t)^{1/t}`` under the three admissible (s, t) regimes."""

    family = "power_monotonicity"

    def validate(self):
        _require_unital(self.phi)
        if self.s == 0 or self.t == 0:
            raise PreconditionError("s and t must be nonzero")
        if power_monotonicity_condition(self.s, self.t) is None:
            raise PreconditionError(
                f"(s, t) = ({self.s:g}, {self.t:g}) satisfies none of: s<=t with s,t outside (-1,1); "
                "1/2<=s<=1<=t; s<=-1<=t<=-1/2"
            )

    def describe(self):
        return f"{self.phi.label},s={self.s:g},t={self.t:g}"

    def draw(self, rng):
        return {"A": _positives(self.phi, self.spectrum, rng)}

    def sides(self, x):
        A = x["A"]
        low = la.mpower(self.phi(*[la.mpower(a, self.s) for a in A]), 1 / self.s)
        high = la.mpower(self.phi(*[la.mpower(a, self.t) for a in A]), 1 / self.t)
        return [("leq", low, high)]


class AndoMultilinear(Inequality):
    """``Phi(A_1 s B_1, ..., A_k s B_k) <= Phi(A) s Phi(B)`` for super-multiplicative means."""

    family = "ando"

    def validate(self):
        r = self.spectrum.ratio()
        fn.verify_multiplicativity(self.mean.representing, "super", r.m, r.M)

    def describe(self):
        return f"{self.phi.label},{self.mean.name}"

    def draw(self, rng):
        return {"A": _positives(self.phi, self.spectrum, rng), "B": _positives(self.phi, self.spectrum, rng)}

    def sides(self, x):
        A, B = x["A"], x["B"]
        lhs = self.phi(*[self.mean(a, b) for a, b in zip(A, B)])
        rhs = self.mean(self.phi(*A), self.phi(*B))
        return [("leq", lhs, rhs)]


class MeanSymmetrization(Inequality):
    """``Phi(A,B) + Phi(B,A) >= Phi(A s B, A s^o B) + Phi(A s^o B, A s B)``."""

    family = "mean_symmetrization"

    def validate(self):
        _require_bilinear(self.phi)
        _require_unital(self.phi)
        r = self.spectrum.ratio()
        fn.verify_multiplicativity(self.mean.representing, "super", r.m, r.M)

    def describe(self):
        return f"{self.phi.label},{self.mean.name}"

    def draw(self, rng):
        A, B = _positives(self.phi, self.spectrum, rng, 2)
        return {"A": A, "B": B}

    def sides(self, x):
        A, B, phi = x["A"], x["B"], self.phi
        m, mo = self.mean(A, B), self.mean.transpose()(A, B)
        return [("leq", phi(m, mo) + phi(mo, m), phi(A, B) + phi(B, A))]


class FiedlerExtension(Inequality):
    """``Phi(A^a, A^b) + Phi(A^b, A^a) >= Phi(A^u, A^v) + Phi(A^v, A^u)``,
    ``u = (1-l)a + l b``, ``v = (1-l)b + l a``."""

    family = "fiedler"

    def validate(self):
        _require_bilinear(self.phi)
        if not 0 <= self.lam <= 1:
            raise PreconditionError("lambda must lie in [0, 1]")

    def describe(self):
        return f"{self.phi.label},a={self.alpha:g},b={self.beta:g},l={self.lam:g}"

    def draw(self, rng):
        return {"A": la.random_positive(self.phi.q, self.spectrum, rng)}

    def sides(self, x):
        A, phi, l = x["A"], self.phi, self.lam
        a, b = self.alpha, self.beta
        u, v = (1 - l) * a + l * b, (1 - l) * b + l * a
        P = lambda e: la.mpower(A, e)
        return [("leq", phi(P(u), P(v)) + phi(P(v), P(u)), phi(P(a), P(b)) + phi(P(b), P(a)))]


class ChoiNormal(Inequality):
    """``Phi(A^*A) >= Phi(A)Phi(A^*)`` and ``>= Phi(A^*)Phi(A)`` for normal ``A_i``."""

    family = "choi_normal"
    phases = "uniform"

    def validate(self):
        _require_unital(self.phi)
        if self.fixed is not None:
            for A in self.fixed["A"]:
                if la.commutator_norm(A) > 1e-10 * max(1.0, la.opnorm(A)) ** 2:
                    raise PreconditionError("inputs fail the normality tolerance")

    def describe(self):
        return self.phi.label

    def draw(self, rng):
        return {"A": [la.random_normal(self.phi.q, self.spectrum, rng, self.phases) for _ in range(self.phi.k)]}

    def sides(self, x):
        A, phi = x["A"], self.phi
        Ast = [la.adjoint(a) for a in A]
        big = phi(*[s @ a for s, a in zip(Ast, A)])
        P, Ps = phi(*A), phi(*Ast)
        return [("leq", P @ Ps, big), ("leq", Ps @ P, big)]


class SchwarzMultilinear(Inequality):
    """Hermitian variant: ``Phi(H) Phi(A)^{-1} Phi(H) <= Phi(H_i A_i^{-1} H_i)``.
    General variant: ``A_i >= X_i^* A_i^{-1} X_i  =>  Phi(A) >= Phi(X)^* Phi(A)^{-1} Phi(X)``."""

    family = "schwarz"

    def validate(self):
        if self.variant not in ("hermitian", "general"):
            raise ValueError("variant must be 'hermitian' or 'general'")

    def describe(self):
        return f"{self.phi.label},{self.variant}"

    def draw(self, rng):
        A = _positives(self.phi, self.spectrum, rng)
        if self.variant == "hermitian":
            return {"A": A, "H": [la.random_hermitian(self.phi.q, rng, self.spectrum.M) for _ in A]}
        X = []
        for a in A:
            half, _ = la.sqrtm_pair(a)
            X.append(half @ la.random_contraction(self.phi.q, rng) @ half)
        return {"A": A, "X": X}

    def sides(self, x):
        A, phi = x["A"], self.phi
        PA_inv = la.inv_pos(phi(*A))
        if self.variant == "hermitian":
            H = x["H"]
            PH = phi(*H)
            rhs = phi(*[h @ la.inv_pos(a) @ h for h, a in zip(H, A)])
            return [("leq", PH @ PA_inv @ PH, rhs)]
        PX = phi(*x["X"])
        return [("leq", la.adjoint(PX) @ PA_inv @ PX, phi(*A))]


class Kantorovich(Inequality):
    """Multilinear Kantorovich inequalities with constant ``(m^2+M^2)/(mM)``.

    ``congruence``: the two-term bound with ``X_i^{1/2} A_i X_i^{1/2}`` sums;
    ``scalar-weights``: ``Phi(sum t_i A_i, sum t_i A_i^{-1}) <= (m^2+M^2)/(2mM) Phi(sum t_i, sum t_i)``
    (needs a symmetric map); ``rank-one``: the rank-one map anchored at a random unit vector,
    checked both as an operator and through its quadratic form.
    """

    family = "kantorovich"
    n = 2

    def validate(self):
        _require_bilinear(self.phi)
        _require_unital(self.phi)
        if self.variant not in ("congruence", "scalar-weights", "rank-one"):
            raise ValueError(f"unknown variant {self.variant!r}")
        if self.variant == "scalar-weights" and not self.phi.symmetric:
            raise PreconditionError(f"scalar-weights variant needs a symmetric map; {self.phi.label} is not")
        if self.fixed is not None:
            for key in ("A", "B"):
                if key in self.fixed:
                    _check_spectra(self.fixed[key], self.spectrum)

    def describe(self):
        return f"{self.phi.label if self.variant != 'rank-one' else 'rank-one'},{self.variant}"

    @property
    def constant(self) -> float:
        m, M = self.spectrum.m, self.spectrum.M
        return (m * m + M * M) / (m * M)

    def draw(self, rng):
        q, s = self.phi.q, self.spectrum
        if self.variant == "rank-one":
            A, B = la.random_positive(q, s, rng), la.random_positive(q, s, rng)
            return {"A": [A], "B": [B], "x": la.random_unit_vector(q, rng)}
        n = self.n
        A = [la.random_positive(q, s, rng) for _ in range(n)]
        if self.variant == "scalar-weights":
            return {"A": A, "t": rng.uniform(0.1, 1.0, size=n)}
        B = [la.random_positive(q, s, rng) for _ in range(n)]
        weights = Interval(0.1, 2.0)
        X = [la.random_positive(q, weights, rng) for _ in range(n)]
        Y = [la.random_positive(q, weights, rng) for _ in range(n)]
        return {"A": A, "B": B, "X": X, "Y": Y}

    def sides(self, x):
        c, phi = self.constant, self.phi
        if self.variant == "rank-one":
            A, B, v = x["A"][0], x["B"][0], x["x"]
            Ai, Bi = la.inv_pos(A), la.inv_pos(B)
            psi = rank_one_map(v)
            op = psi(A, Bi) + psi(Ai, B)
            scalar = (np.vdot(v, Bi @ v) * np.vdot(v, A @ v) + np.vdot(v, B @ v) * np.vdot(v, Ai @ v)).real
            return [("leq", op, c * la.identity(A.shape[0])), ("leq", [[scalar]], [[c]])]
        if self.variant == "scalar-weights":
            A, t = x["A"], np.asarray(x["t"], dtype=float)
            P = sum(ti * a for ti, a in zip(t, A))
            Q = sum(ti * la.inv_pos(a) for ti, a in zip(t, A))
            ident = la.identity(phi.q)
            return [("leq", phi(P, Q), (c / 2) * t.sum() ** 2 * phi(ident, ident))]
        A, B, X, Y = x["A"], x["B"], x["X"], x["Y"]
        Xh = [la.sqrtm_pair(xi)[0] for xi in X]
        Yh = [la.sqrtm_pair(yi)[0] for yi in Y]
        s1 = sum(h @ a @ h for h, a in zip(Xh, A))
        s2 = sum(h @ la.inv_pos(b) @ h for h, b in zip(Yh, B))
        s3 = sum(h @ la.inv_pos(a) @ h for h, a in zip(Xh, A))
        s4 = sum(h @ b @ h for h, b in zip(Yh, B))
        return [("leq", phi(s1, s2) + phi(s3, s4), c * phi(sum(X), sum(Y)))]


class ConvexityProfile(Inequality):
    """Loewner convexity of ``t -> Phi(X^*A^{1+t}X, Y^*B^{1-t}Y) + Phi(X^*A^{1-t}X, Y^*B^{1+t}Y)``.

    ``mode="center0"`` is that function (minimum at 0); ``mode="center_half"``
    is ``Phi(A^t, B^{1-t}) + Phi(A^{1-t}, B^t)`` (minimum at 1/2).  On the grid
    this asserts midpoint convexity, the minimum at the center, symmetry about
    the center, monotonicity away from it and domination by the grid ends.
    """

    family = "convexity"
    grid = None

    GRIDS = {"center0": (-1.0, -0.5, 0.0, 0.5, 1.0), "center_half": (0.0, 0.25, 0.5, 0.75, 1.0)}

    def validate(self):
        _require_bilinear(self.phi)
        if self.mode not in self.GRIDS:
            raise ValueError(f"unknown mode {self.mode!r}")

    @property
    def center(self) -> float:
        return 0.0 if self.mode == "center0" else 0.5

    @property
    def points(self) -> tuple[float, ...]:
        return tuple(self.grid) if self.grid is not None else self.GRIDS[self.mode]

    def describe(self):
        return f"{self.phi.label},{self.mode}"

    def draw(self, rng):
        q = self.phi.q
        A, B = la.random_positive(q, self.spectrum, rng), la.random_positive(q, self.spectrum, rng)
        if self.mode == "center0":
            return {"A": A, "B": B, "X": la.random_complex(q, rng), "Y": la.random_complex(q, rng)}
        return {"A": A, "B": B}

    def profile(self, x) -> dict[float, np.ndarray]:
        A, B, phi = x["A"], x["B"], self.phi
        wa, Va = np.linalg.eigh(la.as_hermitian(A))
        wb, Vb = np.linalg.eigh(la.as_hermitian(B))
        P = lambda w, V, e: la.as_hermitian((V * w**e) @ V.conj().T)
        out = {}
        for t in self.points:
            if self.mode == "center0":
                X, Y = x["X"], x["Y"]
                Xs, Ys = la.adjoint(X), la.adjoint(Y)
                out[t] = phi(Xs @ P(wa, Va, 1 + t) @ X, Ys @ P(wb, Vb, 1 - t) @ Y) + phi(
                    Xs @ P(wa, Va, 1 - t) @ X, Ys @ P(wb, Vb, 1 + t) @ Y
                )
            else:
                out[t] = phi(P(wa, Va, t), P(wb, Vb, 1 - t)) + phi(P(wa, Va, 1 - t), P(wb, Vb, t))
        return out

    def sides(self, x):
        f = self.profile(x)
        pts = sorted(f)
        index = {round(t, 12): t for t in pts}
        look = lambda t: index.get(round(t, 12))
        c = self.center
        out = []
        # midpoint convexity on every equally spaced triple of grid points
        for i, s in enumerate(pts):
            for t in pts[i + 1:]:
                lo = look(2 * s - t)
                if lo is not None:
                    out.append(("leq", 2 * f[s], f[lo] + f[t]))
        center = look(c)
        for t in pts:
            if center is not None:
                out.append(("leq", f[center], f[t]))
            mirror = look(2 * c - t)
            if mirror is not None and mirror > t:
                out.append(("eq", f[mirror], f[t]))
        # monotone away from the center, hence dominated by the grid ends
        for a, b in zip(pts, pts[1:]):
            if a >= c:
                out.append(("leq", f[a], f[b]))
            elif b <= c:
                out.append(("leq", f[b], f[a]))
        for t in pts:
            end = pts[-1] if t >= c else pts[0]
            out.append(("leq", f[t], f[end]))
        return out


# ----------------------------------------------------------------------------
# reverse inequalities


class ReverseCDJ(Inequality):
    """``Phi(f(A)) <= alpha(m^k, M^k, f) f(Phi(A))`` (super-multiplicative convex ``f``);
    ``beta(m^k, M^k, f) f(Phi(A)) <= Phi(f(A))`` (sub-multiplicative concave ``f``)."""

    family = "reverse_cdj"

    def validate(self):
        _require_unital(self.phi)
        if self.direction not in ("convex", "concave"):
            raise ValueError("direction must be 'convex' or 'concave'")
        wide = self.spectrum.power(self.phi.k)
        vals = self.f(np.linspace(wide.m, wide.M, 1001))
        if not np.all(vals > 0):
            raise PreconditionError(f"{self.f.label} must be positive on [{wide.m:g}, {wide.M:g}]")
        s = self.spectrum
        if self.direction == "convex":
            if not self.f.convex:
                raise HypothesisError(f"{self.f.label} is not tagged matrix convex")
            fn.verify_multiplicativity(self.f, "super", s.m, s.M)
        else:
            if not self.f.concave:
                raise HypothesisError(f"{self.f.label} is not tagged matrix concave")
            fn.verify_multiplicativity(self.f, "sub", s.m, s.M)
        if self.fixed is not None:
            _check_spectra(self.fixed["A"], self.spectrum)

    @property
    def constant(self) -> float:
        wide = self.spectrum.power(self.phi.k)
        which = "alpha" if self.direction == "convex" else "beta"
        return mn.reverse_constant(wide.m, wide.M, self.f, which)

    def describe(self):
        return f"{self.phi.label},{self.f.label},{self.direction}"

    def draw(self, rng):
        return {"A": _positives(self.phi, self.spectrum, rng)}

    def sides(self, x):
        A = x["A"]
        c = self.constant
        outer = la.matrix_function(self.phi(*A), self.f)
        inner = self.phi(*_fmap(self.f, A))
        if self.direction == "convex":
            return [("leq", inner, c * outer)]
        return [("leq", c * outer, inner)]


class ReverseAndo(Inequality):
    """``Phi(A_i s B_i) >= beta(m^k/M^k, M^k/m^k, f) Phi(A) s Phi(B)``."""

    family = "reverse_ando"

    def validate(self):
        _require_unital(self.phi)
        r = self.spectrum.ratio()
        fn.verify_multiplicativity(self.mean.representing, "sub", r.m, r.M)

    @property
    def constant(self) -> float:
        r = self.spectrum.ratio().power(self.phi.k)
        return mn.reverse_constant(r.m, r.M, self.mean.representing, "beta")

    def describe(self):
        return f"{self.phi.label},{self.mean.name}"

    def draw(self, rng):
        return {"A": _positives(self.phi, self.spectrum, rng), "B": _positives(self.phi, self.spectrum, rng)}

    def sides(self, x):
        A, B = x["A"], x["B"]
        lhs = self.phi(*[self.mean(a, b) for a, b in zip(A, B)])
        rhs = self.constant * self.mean(self.phi(*A), self.phi(*B))
        return [("leq", rhs, lhs)]


class ReverseMeanAdditivity(Inequality):
    """``beta(m/M, M/m, f) [(A+B) s (C+D)] <= A s C + B s D``.

    ``constant`` overrides the beta constant (used by the catalog).
    """

    family = "reverse_mean_additivity"
    constant = None
    q = 3

    def validate(self):
        if self.fixed is not None and not self.expected_failure:
            _check_spectra([self.fixed[k] for k in "ABCD"], self.spectrum)

    @property
    def factor(self) -> float:
        if self.constant is not None:
            return self.constant
        r = self.spectrum.ratio()
        return mn.reverse_constant(r.m, r.M, self.mean.representing, "beta")

    def describe(self):
        extra = ",displayed-constant" if self.constant is not None else ""
        return f"q={self.q},{self.mean.name}{extra}"

    def draw(self, rng):
        return {k: la.random_positive(self.q, self.spectrum, rng) for k in "ABCD"}

    def sides(self, x):
        A, B, C, D = (x[k] for k in "ABCD")
        s = self.mean
        return [("leq", self.factor * s(A + B, C + D), s(A, C) + s(B, D))]


class ReverseSymmetrization(Inequality):
    """``Phi(A,B) + Phi(B,A) <= beta(m^2/M^2, M^2/m^2, f)^{-2} [Phi(A s B, A s^o B) + Phi(A s^o B, A s B)]``."""

    family = "reverse_symmetrization"

    def validate(self):
        _require_bilinear(self.phi)
        _require_unital(self.phi)

    @property
    def constant(self) -> float:
        r = self.spectrum.ratio().power(2)
        return mn.reverse_constant(r.m, r.M, self.mean.representing, "beta") ** -2

    def describe(self):
        return f"{self.phi.label},{self.mean.name}"

    def draw(self, rng):
        A, B = _positives(self.phi, self.spectrum, rng, 2)
        return {"A": A, "B": B}

    def sides(self, x):
        A, B, phi = x["A"], x["B"], self.phi
        m, mo = self.mean(A, B), self.mean.transpose()(A, B)
        return [("leq", phi(A, B) + phi(B, A), self.constant * (phi(m, mo) + phi(mo, m)))]


# ----------------------------------------------------------------------------
# information monotonicity


def _slot_draw(phi, spectrum, n, rng):
    tuples = [[la.random_positive(phi.q, spectrum, rng) for _ in range(n)] for _ in range(phi.k)]
    weights = [la.random_weights(n, rng) for _ in range(phi.k)]
    return {"tuples": tuples, "weights": weights}


class InfoMonotonicityPower(Inequality):
    """``Phi(P_t(w1; A1), ..., P_t(wk; Ak)) <= P_t(w1 x ... x wk; Phi(A1, ..., Ak))`` for t in (0,1];
    for t in [-1,0) the reverse with factor ``(M^k+m^k)^2/(4M^k m^k)``.

    ``Phi(A1, ..., Ak)`` is the tuple of ``Phi`` over every combination of one
    matrix per slot, weighted by the products of the slot weights.
    """

    family = "info_power"

    def validate(self):
        _require_unital(self.phi)
        if self.t == 0 or abs(self.t) > 1:
            raise PreconditionError("t must lie in [-1, 1] without 0")
        if self.fixed is not None:
            tuples, weights = self.fixed["tuples"], self.fixed["weights"]
            if len(tuples) != self.phi.k or any(len(w) != len(tp) for w, tp in zip(weights, tuples)):
                raise PreconditionError("weight-vector length does not match tuple length")
            if self.t < 0:
                _check_spectra([a for tp in tuples for a in tp], self.spectrum)

    def describe(self):
        return f"{self.phi.label},t={self.t:g}"

    def draw(self, rng):
        return _slot_draw(self.phi, self.spectrum, self.n, rng)

    def _mean(self, w, mats):
        return mn.power_mean(self.t, w, mats)

    def sides(self, x):
        tuples, weights = x["tuples"], x["weights"]
        lhs = self.phi(*[self._mean(w, tp) for w, tp in zip(weights, tuples)])
        rhs = self._mean(mn.product_weights(weights), slotwise(self.phi, tuples))
        if self.t > 0:
            return [("leq", lhs, rhs)]
        c = mn.kantorovich_square(self.spectrum.m, self.spectrum.M, self.phi.k)
        return [("leq", rhs, c * lhs)]


class InfoMonotonicityKarcher(InfoMonotonicityPower):
    """``Phi(G(w1; A1), ...) <= G(w1 x ... x wk; Phi(A...)) <= (M^k+m^k)^2/(4M^k m^k) Phi(G(w1; A1), ...)``."""

    family = "info_karcher"

    t = None

    def validate(self):
        _require_unital(self.phi)

    def describe(self):
        return self.phi.label

    def _mean(self, w, mats):
        return mn.karcher_mean(w, mats)

    def sides(self, x):
        tuples, weights = x["tuples"], x["weights"]
        lhs = self.phi(*[self._mean(w, tp) for w, tp in zip(weights, tuples)])
        mid = self._mean(mn.product_weights(weights), slotwise(self.phi, tuples))
        c = mn.kantorovich_square(self.spectrum.m, self.spectrum.M, self.phi.k)
        return [("leq", lhs, mid), ("leq", mid, c * lhs)]


# ----------------------------------------------------------------------------
# functional API


def _run(ineq, trials, seed, tol):
    return run_check(ineq, trials, seed, tol)


def check_adjoint_preserving(phi, trials, seed, tol=1e-12) -> CheckResult:
    res = _run(AdjointPreserving(phi=phi), trials, seed, tol)
    res.max_deviation = -res.worst_margin
    return res


def check_monotone(phi, trials, seed, tol=la.DEFAULT_TOL, spectrum=Interval(0.5, 2.0)) -> CheckResult:
    return _run(Monotone(phi=phi, spectrum=spectrum), trials, seed, tol)


def russo_dye_check(phi, trials, seed, tol=la.DEFAULT_TOL) -> CheckResult:
    res = _run(RussoDye(phi=phi), trials, seed, tol)
    res.max_deviation = 1.0 - res.worst_margin
    return res


def check_cdj(phi, f, direction, trials, seed, tol=la.DEFAULT_TOL, spectrum=Interval(0.5, 2.0)) -> CheckResult:
    return _run(ChoiDavisJensen(phi=phi, f=f, direction=direction, spectrum=spectrum), trials, seed, tol)


def check_power_family(phi, r, trials, seed, tol=la.DEFAULT_TOL, spectrum=Interval(0.5, 2.0)) -> CheckResult:
    return _run(PowerFamily(phi=phi, r=float(r), spectrum=spectrum), trials, seed, tol)


def check_power_monotonicity(phi, s, t, trials, seed, tol=la.DEFAULT_TOL, spectrum=Interval(0.5, 2.0)):
    return _run(PowerMonotonicity(phi=phi, s=float(s), t=float(t), spectrum=spectrum), trials, seed, tol)


def check_ando_multilinear(phi, mean, trials, seed, tol=la.DEFAULT_TOL, spectrum=Interval(0.5, 2.0)):
    return _run(AndoMultilinear(phi=phi, mean=mean, spectrum=spectrum), trials, seed, tol)


def check_mean_symmetrization(phi, mean, trials, seed, tol=la.DEFAULT_TOL, spectrum=Interval(0.5, 2.0)):
    return _run(MeanSymmetrization(phi=phi, mean=mean, spectrum=spectrum), trials, seed, tol)


def check_fiedler_extension(phi, alpha, beta, lam, trials, seed, tol=la.DEFAULT_TOL, spectrum=Interval(0.5, 2.0)):
    ineq = FiedlerExtension(phi=phi, alpha=float(alpha), beta=float(beta), lam=float(lam), spectrum=spectrum)
    return _run(ineq, trials, seed, tol)


def check_choi_normal(phi, trials, seed, tol=la.DEFAULT_TOL, spectrum=Interval(0.5, 2.0), phases="uniform"):
    return _run(ChoiNormal(phi=phi, spectrum=spectrum, phases=phases), trials, seed, tol)


def check_schwarz_multilinear(phi, variant, trials, seed, tol=la.DEFAULT_TOL, spectrum=Interval(0.5, 2.0)):
    return _run(SchwarzMultilinear(phi=phi, variant=variant, spectrum=spectrum), trials, seed, tol)


def check_kantorovich(phi, variant, trials, seed, tol=la.DEFAULT_TOL, spectrum=Interval(1.0, 2.0), n=2):
    return _run(Kantorovich(phi=phi, variant=variant, spectrum=spectrum, n=n), trials, seed, tol)


def convexity_profile(phi, A, B, X=None, Y=None, grid=None, tol=la.DEFAULT_TOL, mode="center0") -> CheckResult:
    """Evaluate the convexity profile at fixed inputs on ``grid``."""
    fixed = {"A": A, "B": B}
    if mode == "center0":
        q = np.atleast_2d(A).shape[0]
        fixed["X"] = la.identity(q) if X is None else X
        fixed["Y"] = la.identity(q) if Y is None else Y
    ineq = ConvexityProfile(phi=phi, mode=mode, spectrum=Interval(1.0, 1.0),
                            grid=None if grid is None else [float(g) for g in grid], fixed=fixed)
    return _run(ineq, 1, 0, tol)


def check_reverse_cdj(phi, f, direction, spectrum, trials, seed, tol=la.DEFAULT_TOL) -> CheckResult:
    return _run(ReverseCDJ(phi=phi, f=f, direction=direction, spectrum=spectrum), trials, seed, tol)


def check_reverse_ando(phi, mean, spectrum, trials, seed, tol=la.DEFAULT_TOL) -> CheckResult:
    return _run(ReverseAndo(phi=phi, mean=mean, spectrum=spectrum), trials, seed, tol)


def check_reverse_mean_additivity(mean, spectrum, trials, seed, tol=la.DEFAULT_TOL, q=3) -> CheckResult:
    return _run(ReverseMeanAdditivity(mean=mean, spectrum=spectrum, q=q), trials, seed, tol)


def check_reverse_symmetrization(phi, mean, spectrum, trials, seed, tol=la.DEFAULT_TOL) -> CheckResult:
    return _run(ReverseSymmetrization(phi=phi, mean=mean, spectrum=spectrum), trials, seed, tol)


def check_info_monotonicity_power(phi, t, weights, tuples, tol=la.DEFAULT_TOL, spectrum=None) -> CheckResult:
    """Fixed-input check; ``tuples[i]`` feeds slot ``i`` with weights ``weights[i]``."""
    spectrum = spectrum or _enclosing(tuples)
    fixed = {"tuples": tuples, "weights": [np.asarray(mn.WeightVector.of(w).array) for w in weights]}
    ineq = InfoMonotonicityPower(phi=phi, t=float(t), spectrum=spectrum, n=len(tuples[0]), fixed=fixed)
    return _run(ineq, 1, 0, tol)


def check_info_monotonicity_karcher(phi, weights, tuples, spectrum=None, tol=la.DEFAULT_TOL) -> CheckResult:
    spectrum = spectrum or _enclosing(tuples)
    fixed = {"tuples": tuples, "weights": [np.asarray(mn.WeightVector.of(w).array) for w in weights]}
    ineq = InfoMonotonicityKarcher(phi=phi, spectrum=spectrum, n=len(tuples[0]), fixed=fixed)
    return _run(ineq, 1, 0, tol)


def _enclosing(tuples) -> Interval:
    ws = np.concatenate([la.eigvalsh(a) for tp in tuples for a in tp])
    return Interval(float(ws.min()), float(ws.max()))


# ----------------------------------------------------------------------------
# catalog of expected violations

# Known failures with no matrix witness; recorded for reference, never run.
CATALOG_NOTES = (
    "log-multiplicativity: the scalar bound log(xyz) <= log(x) log(y) log(z) "
    "fails for three variables, so a k = 3 logarithm check is left unverified.",
)


def catalog() -> list[Inequality]:
    """Inequalities that must fail at their recorded witness."""
    two, one = 2 * la.identity(2), la.identity(2)

    cdj = ChoiDavisJensen(
        phi=hadamard_map(2, 2), f=fn.square_minus_identity(), direction="convex",
        spectrum=Interval(1.0, 2.0), fixed={"A": [two, one]}, expected_failure=True,
    )
    m, M = 1.0, 4.0
    displayed = 2 * (M * m) ** 0.25 / (math.sqrt(M) + math.sqrt(m))
    ram = ReverseMeanAdditivity(
        mean=mn.geometric(0.5), spectrum=Interval(m, M), q=1, constant=displayed,
        fixed={"A": np.array([[4.0 + 0j]]), "B": np.array([[1.0 + 0j]]),
               "C": np.array([[1.0 + 0j]]), "D": np.array([[4.0 + 0j]])},
        expected_failure=True,
    )
    return [cdj, ram]
