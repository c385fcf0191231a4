"""Kubo-Ando means, matrix power means, the Karcher mean and the
reverse-inequality constants ``K(m, M, r)``, ``alpha(m, M, f)``, ``beta(m, M, f)``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from . import functions as fn
from . import linalg as la
from .functions import ScalarFunction


class ConvergenceError(RuntimeError):
    def __init__(self, msg: str, residual: float):
        super().__init__(f"{msg} (last residual {residual:.3e})")
        self.residual = residual


@dataclass(frozen=True)
class MeanDescriptor:
    """A Kubo-Ando mean given by its representing function ``f(t) = 1 sigma t``."""

    name: str
    representing: ScalarFunction

    def __post_init__(self):
        if abs(self.representing.scalar(1.0) - 1.0) > 1e-12:
            raise ValueError(f"representing function of {self.name} must satisfy f(1) = 1")

    def transpose(self) -> "MeanDescriptor":
        return MeanDescriptor(self.name + "^o", fn.transpose_function(self.representing))

    def __call__(self, A, B) -> np.ndarray:
        return kubo_ando_mean(self, A, B)

    def to_dict(self) -> dict:
        return {"name": self.name, "representing": self.representing.to_dict()}

    @classmethod
    def from_dict(cls, d: dict) -> "MeanDescriptor":
        return cls(d["name"], ScalarFunction.from_dict(d["representing"]))


def geometric(alpha: float = 0.5) -> MeanDescriptor:
    name = "#" if alpha == 0.5 else f"#_{alpha:g}"
    return MeanDescriptor(name, fn.power(alpha))


def arithmetic_mean() -> MeanDescriptor:
    return MeanDescriptor("arithmetic", fn.arithmetic())


def harmonic_mean() -> MeanDescriptor:
    return MeanDescriptor("harmonic", fn.harmonic())


@dataclass(frozen=True)
class WeightVector:
    weights: tuple[float, ...]

    def __post_init__(self):
        w = np.asarray(self.weights, dtype=float)
        if w.ndim != 1 or w.size == 0 or (w < 0).any() or abs(w.sum() - 1) > 1e-12:
            raise ValueError(f"weights must be nonnegative and sum to 1, got {self.weights}")

    @classmethod
    def of(cls, w) -> "WeightVector":
        if isinstance(w, WeightVector):
            return w
        return cls(tuple(float(v) for v in np.ravel(w)))

    @property
    def array(self) -> np.ndarray:
        return np.asarray(self.weights)

    def __len__(self):
        return len(self.weights)


def product_weights(weights: Sequence[WeightVector]) -> WeightVector:
    """Weights ``prod_i w^(i)_{j_i}`` over all index combinations (itertools.product order)."""
    w = np.ones(1)
    for v in weights:
        w = np.outer(w, WeightVector.of(v).array).ravel()
    return WeightVector(tuple(w / w.sum()))


# ----------------------------------------------------------------------------
# two-variable means


def _congruence_mean(A, B, f) -> np.ndarray:
    half, ihalf = la.sqrtm_pair(A)
    Y = la.as_hermitian(ihalf @ la.as_hermitian(B) @ ihalf)
    return la.as_hermitian(half @ la.matrix_function(Y, f) @ half)


def kubo_ando_mean(mean: MeanDescriptor, A, B) -> np.ndarray:
    """``A^{1/2} f(A^{-1/2} B A^{-1/2}) A^{1/2}``."""
    return _congruence_mean(A, B, mean.representing)


def weighted_geometric(A, B, alpha: float) -> np.ndarray:
    """``A #_alpha B``."""
    if not 0 <= alpha <= 1:
        raise ValueError("alpha must lie in [0, 1]")
    if alpha == 0:
        return la.as_hermitian(A)
    half, ihalf = la.sqrtm_pair(A)
    Y = la.as_hermitian(ihalf @ la.as_hermitian(B) @ ihalf)
    return la.as_hermitian(half @ la.mpower(Y, alpha) @ half)


# ----------------------------------------------------------------------------
# multivariate means


def _power_mean_positive(t, w, mats, tol, max_iter):
    X = la.as_hermitian(sum(wi * A for wi, A in zip(w, mats)))
    if t == 1:
        return X
    residual = math.inf
    accelerate = True
    for _ in range(max_iter):
        half, ihalf = la.sqrtm_pair(X)
        S = sum(wi * la.mpower(la.as_hermitian(ihalf @ A @ ihalf), t) for wi, A in zip(w, mats))
        S = la.as_hermitian(S)
        # X = sum w_i (X #_t A_i)  <=>  S = I
        residual = la.opnorm(S - la.identity(S.shape[0]))
        if residual <= 1e-14:
            return X
        # S^(1/t) solves the commuting case in one step; plain S is the
        # contraction of the fixed-point map and is the safe fallback
        step = la.mpower(S, 1.0 / t) if accelerate else S
        X_new = la.as_hermitian(half @ step @ half)
        change = la.opnorm(X_new - X) / la.opnorm(X_new)
        if accelerate and change > 10 * residual / t:
            accelerate = False
            continue
        X = X_new
        if change <= 1e-13:
            return X
    raise ConvergenceError(f"power mean (t={t}) did not converge in {max_iter} iterations", residual)


def power_mean(t: float, weights, mats: Sequence, tol: float = 1e-12, max_iter: int = 1000) -> np.ndarray:
    """Matrix power mean ``P_t(w; A)`` for ``t`` in ``[-1, 1] \\ {0}``.

    For ``t > 0`` this is the positive solution of ``X = sum_i w_i (X #_t A_i)``;
    negative ``t`` goes through ``P_t(w; A) = P_{-t}(w; A^{-1})^{-1}``.
    """
    w = WeightVector.of(weights).array
    if len(w) != len(mats):
        raise ValueError("weight vector length does not match the tuple length")
    if t == 0 or abs(t) > 1:
        raise ValueError("t must lie in [-1, 1] without 0")
    mats = [la.as_hermitian(A) for A in mats]
    for A in mats:
        if la.psd_margin(A) <= 0:
            raise la.LinalgError("power mean inputs must be strictly positive")
    if t > 0:
        return _power_mean_positive(t, w, mats, tol, max_iter)
    inverses = [la.inv_pos(A) for A in mats]
    return la.inv_pos(_power_mean_positive(-t, w, inverses, tol, max_iter))


def power_mean_residual(t: float, weights, mats, X) -> float:
    """``||X - sum_i w_i (X #_t A_i)||`` for ``t > 0``; for ``t < 0`` the same on inverses."""
    w = WeightVector.of(weights).array
    if t < 0:
        mats = [la.inv_pos(A) for A in mats]
        X = la.inv_pos(X)
        t = -t
    rhs = sum(wi * weighted_geometric(X, A, t) for wi, A in zip(w, mats))
    return la.opnorm(X - rhs)


def karcher_residual(weights, mats, X) -> float:
    w = WeightVector.of(weights).array
    _, ihalf = la.sqrtm_pair(X)
    L = sum(wi * la.logm_pos(la.as_hermitian(ihalf @ A @ ihalf)) for wi, A in zip(w, mats))
    return la.opnorm(L)


def karcher_mean(weights, mats: Sequence, tol: float = 1e-10, max_iter: int = 2000) -> np.ndarray:
    """Karcher mean via ``X <- X^{1/2} exp(sum w_i log(X^{-1/2} A_i X^{-1/2})) X^{1/2}``."""
    w = WeightVector.of(weights).array
    if len(w) != len(mats):
        raise ValueError("weight vector length does not match the tuple length")
    mats = [la.as_hermitian(A) for A in mats]
    for A in mats:
        if la.psd_margin(A) <= 0:
            raise la.LinalgError("Karcher mean inputs must be strictly positive")
    X = la.as_hermitian(sum(wi * A for wi, A in zip(w, mats)))
    residual = math.inf
    for _ in range(max_iter):
        half, ihalf = la.sqrtm_pair(X)
        L = la.as_hermitian(sum(wi * la.logm_pos(la.as_hermitian(ihalf @ A @ ihalf)) for wi, A in zip(w, mats)))
        residual = la.opnorm(L)
        if residual <= tol * 1e-2:
            return X
        X_new = la.as_hermitian(half @ la.expm_herm(L) @ half)
        if residual <= tol and la.opnorm(X_new - X) <= 1e-15 * la.opnorm(X):
            return X_new
        X = X_new
    if residual <= tol:
        return X
    raise ConvergenceError(f"Karcher mean did not converge in {max_iter} iterations", residual)


# ----------------------------------------------------------------------------
# constants


def kantorovich_constant(m: float, M: float, r: float) -> float:
    """Generalized Kantorovich constant; 1 at the removable points ``m = M``, ``r in {0, 1}``."""
    if not 0 < m <= M:
        raise ValueError("need 0 < m <= M")
    if m == M or r == 0 or r == 1:
        return 1.0
    mMr = m * M**r
    Mmr = M * m**r
    first = (mMr - Mmr) / ((r - 1) * (M - m))
    second = ((r - 1) / r) * (M**r - m**r) / (mMr - Mmr)
    return float(first * second**r)


def _chord_ratio(m, M, f):
    fm, fM = f.scalar(m), f.scalar(M)
    slope = (fM - fm) / (M - m)

    def ratio(t):
        t = np.asarray(t, dtype=float)
        return (slope * (t - m) + fm) / f(t)

    return ratio


def _extremum(m: float, M: float, f: ScalarFunction, sign: float, grid: int = 100_001, tol: float = 1e-10) -> float:
    if not 0 < m <= M:
        raise ValueError("need 0 < m <= M")
    if m == M:
        return 1.0
    ts = np.linspace(m, M, grid)
    fv = f(ts)
    if not np.all(fv > 0):
        bad = ts[np.argmax(~(fv > 0))]
        raise ValueError(f"{f.label} must be positive on [{m}, {M}] (fails at t={bad:.6g})")
    ratio = _chord_ratio(m, M, f)
    vals = sign * ratio(ts)
    i = int(np.argmax(vals))
    a, b = ts[max(i - 1, 0)], ts[min(i + 1, grid - 1)]
    g = lambda t: sign * float(ratio(np.array([t]))[0])
    invphi = (math.sqrt(5) - 1) / 2
    c, d = b - invphi * (b - a), a + invphi * (b - a)
    gc, gd = g(c), g(d)
    while b - a > tol:
        if gc > gd:
            b, d, gd = d, c, gc
            c = b - invphi * (b - a)
            gc = g(c)
        else:
            a, c, gc = c, d, gd
            d = a + invphi * (b - a)
            gd = g(d)
    best = max(vals[i], g((a + b) / 2), g(ts[0]), g(ts[-1]))
    return float(sign * best)


def alpha_bound(m: float, M: float, f: ScalarFunction) -> float:
    """``max_{m<=t<=M} chord(t) / f(t)`` for the chord of ``f`` through ``m`` and ``M``."""
    return _extremum(m, M, f, +1.0)


def beta_bound(m: float, M: float, f: ScalarFunction) -> float:
    """``min_{m<=t<=M} chord(t) / f(t)``."""
    return _extremum(m, M, f, -1.0)


def reverse_constant(m: float, M: float, f: ScalarFunction, which: str) -> float:
    """``alpha``/``beta`` with the closed form ``K(m, M, r)`` used for power functions."""
    if f.tag == "power":
        return kantorovich_constant(m, M, f.params["r"])
    return alpha_bound(m, M, f) if which == "alpha" else beta_bound(m, M, f)


def kantorovich_square(m: float, M: float, n: int = 1) -> float:
    """``(M^n + m^n)^2 / (4 M^n m^n)``."""
    a, b = m**n, M**n
    return (a + b) ** 2 / (4 * a * b)
