"""Scalar functions used in the functional calculus.

A :class:`ScalarFunction` is a serializable description (``tag`` plus
``params``) of a real function together with its domain and some
caller-asserted structural tags.  The evaluator is rebuilt from the tag, so
functions survive a JSON round trip and can be shipped to worker processes.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable

import numpy as np


@dataclass(frozen=True)
class Domain:
    lo: float = -math.inf
    hi: float = math.inf
    lo_open: bool = False
    hi_open: bool = False

    def contains(self, x: float) -> bool:
        above = x > self.lo if self.lo_open else x >= self.lo
        below = x < self.hi if self.hi_open else x <= self.hi
        return above and below

    def contains_clip(self, w: np.ndarray, scale: float = 1.0, slack: float = 1e-12) -> np.ndarray:
        """Check eigenvalues ``w``; closed endpoints absorb roundoff of ``slack * scale``."""
        from .linalg import DomainError

        w = np.asarray(w, dtype=float)
        eps = slack * scale
        lo_bad = w <= self.lo if self.lo_open else w < self.lo - eps
        hi_bad = w >= self.hi if self.hi_open else w > self.hi + eps
        bad = lo_bad | hi_bad
        if bad.any():
            raise DomainError(float(w[bad][0]), self)
        if not self.lo_open and np.isfinite(self.lo):
            w = np.maximum(w, self.lo)
        if not self.hi_open and np.isfinite(self.hi):
            w = np.minimum(w, self.hi)
        return w

    def __str__(self):
        left = "(" if self.lo_open else "["
        right = ")" if self.hi_open else "]"
        return f"{left}{self.lo:g}, {self.hi:g}{right}"

    def to_dict(self) -> dict:
        return {"lo": self.lo, "hi": self.hi, "lo_open": self.lo_open, "hi_open": self.hi_open}


POSITIVE_CLOSED = Domain(0.0, math.inf)
POSITIVE_OPEN = Domain(0.0, math.inf, lo_open=True)


def _power(r):
    r = float(r)
    if r == 0:
        return lambda t: np.ones_like(np.asarray(t, dtype=float))
    if r == 1:
        return lambda t: np.asarray(t, dtype=float)
    return lambda t: np.power(np.asarray(t, dtype=float), r)


def _affine(a, b):
    return lambda t: a + b * np.asarray(t, dtype=float)


def _transpose(base):
    f = ScalarFunction.from_dict(base)
    return lambda t: np.asarray(t, dtype=float) * f(1.0 / np.asarray(t, dtype=float))


_BUILDERS: dict[str, Callable[..., Callable]] = {
    "power": _power,
    "affine": _affine,
    "arithmetic": lambda: (lambda t: (1.0 + np.asarray(t, dtype=float)) / 2.0),
    "harmonic": lambda: (lambda t: 2.0 * np.asarray(t, dtype=float) / (1.0 + np.asarray(t, dtype=float))),
    "log": lambda: (lambda t: np.log(np.asarray(t, dtype=float))),
    "square_minus_identity": lambda: (lambda t: np.asarray(t, dtype=float) ** 2 - np.asarray(t, dtype=float)),
    "transpose": _transpose,
}


@dataclass(frozen=True)
class ScalarFunction:
    """A real function of one variable with domain and structural tags.

    ``convex``/``concave`` mean matrix convexity/concavity on the domain and
    ``submultiplicative``/``supermultiplicative`` are scalar conditions; all
    four are asserted by the caller, never proven here.
    """

    tag: str
    params: dict = field(default_factory=dict)
    domain: Domain = POSITIVE_CLOSED
    convex: bool = False
    concave: bool = False
    submultiplicative: bool = False
    supermultiplicative: bool = False
    name: str = ""

    def __post_init__(self):
        if self.tag not in _BUILDERS:
            raise ValueError(f"unknown function tag {self.tag!r}")

    @cached_property
    def _fn(self) -> Callable:
        return _BUILDERS[self.tag](**self.params)

    def __call__(self, t):
        return self._fn(t)

    def scalar(self, t: float) -> float:
        return float(self._fn(np.array([float(t)]))[0])

    def __getstate__(self):
        state = dict(self.__dict__)
        state.pop("_fn", None)
        return state

    def __setstate__(self, state):
        self.__dict__.update(state)

    def __hash__(self):
        return hash((self.tag, repr(sorted(self.params.items()))))

    def __eq__(self, other):
        return isinstance(other, ScalarFunction) and self.to_dict() == other.to_dict()

    @property
    def label(self) -> str:
        return self.name or self.tag

    def to_dict(self) -> dict:
        return {
            "tag": self.tag,
            "params": self.params,
            "domain": self.domain.to_dict(),
            "convex": self.convex,
            "concave": self.concave,
            "submultiplicative": self.submultiplicative,
            "supermultiplicative": self.supermultiplicative,
            "name": self.name,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "ScalarFunction":
        d = dict(d)
        d["domain"] = Domain(**d["domain"])
        return cls(**d)

    def check_total(self, n: int = 1000) -> None:
        """Evaluate on ``n`` sample points of the domain; raise if anything is not finite."""
        lo = self.domain.lo if np.isfinite(self.domain.lo) else -1e3
        hi = self.domain.hi if np.isfinite(self.domain.hi) else lo + 1e3
        pts = np.linspace(lo, hi, n + 2)[1:-1]
        vals = self(pts)
        if not np.all(np.isfinite(vals)):
            raise ValueError(f"{self.label} is not total on {self.domain}")


# ----------------------------------------------------------------------------
# library


def power(r: float) -> ScalarFunction:
    """``t^r``; multiplicative, matrix convex for r in [-1,0] or [1,2], concave on [0,1]."""
    r = float(r)
    return ScalarFunction(
        "power",
        {"r": r},
        domain=POSITIVE_CLOSED if r >= 0 else POSITIVE_OPEN,
        convex=(-1 <= r <= 0) or (1 <= r <= 2),
        concave=0 <= r <= 1,
        submultiplicative=True,
        supermultiplicative=True,
        name=f"t^{r:g}",
    )


def sqrt() -> ScalarFunction:
    return power(0.5)


def affine(a: float, b: float) -> ScalarFunction:
    return ScalarFunction(
        "affine", {"a": float(a), "b": float(b)}, domain=Domain(), convex=True, concave=True,
        name=f"{a:g}+{b:g}t",
    )


def arithmetic() -> ScalarFunction:
    return ScalarFunction("arithmetic", domain=POSITIVE_CLOSED, convex=True, concave=True, name="(1+t)/2")


def harmonic() -> ScalarFunction:
    return ScalarFunction("harmonic", domain=POSITIVE_CLOSED, concave=True, name="2t/(1+t)")


def log(super_on_unit_e2: bool = True) -> ScalarFunction:
    """Natural log; super-multiplicative on ``[1, e^2]`` (tag asserted for that range)."""
    return ScalarFunction(
        "log", domain=POSITIVE_OPEN, concave=True, supermultiplicative=super_on_unit_e2, name="log t"
    )


def square_minus_identity() -> ScalarFunction:
    """``t^2 - t``: matrix convex but not sub-multiplicative."""
    return ScalarFunction("square_minus_identity", domain=Domain(), convex=True, name="t^2-t")


def transpose_function(f: ScalarFunction) -> ScalarFunction:
    """``t -> t f(1/t)``, the representing function of the transposed mean."""
    if f.domain.lo > 0 or f.domain.hi < math.inf:
        raise ValueError("transpose needs f defined on (0, inf)")
    if f.tag == "power":
        return power(1.0 - f.params["r"])
    if f.tag == "transpose":
        return ScalarFunction.from_dict(f.params["base"])
    if f.tag == "arithmetic":
        return arithmetic()
    if f.tag == "harmonic":
        return harmonic()
    return ScalarFunction(
        "transpose",
        {"base": f.to_dict()},
        domain=POSITIVE_OPEN,
        convex=f.convex,
        concave=f.concave,
        name=f"({f.label})^o",
    )


def verify_multiplicativity(f: ScalarFunction, kind: str, lo: float, hi: float, n: int = 100) -> None:
    """Sample ``n*n`` grid points of ``[lo, hi]^2`` and raise if the tagged
    sub-/super-multiplicativity is contradicted."""
    if kind not in ("sub", "super"):
        raise ValueError(kind)
    flag = f.submultiplicative if kind == "sub" else f.supermultiplicative
    if not flag:
        raise HypothesisError(f"{f.label} is not tagged {kind}-multiplicative")
    x = np.linspace(lo, hi, n)
    X, Y = np.meshgrid(x, x)
    fxy = f(X * Y)
    prod = f(X) * f(Y)
    slack = 1e-12 * np.maximum(1.0, np.abs(prod))
    bad = (fxy > prod + slack) if kind == "sub" else (fxy < prod - slack)
    if bad.any():
        i = np.argwhere(bad)[0]
        raise HypothesisError(
            f"{f.label} is tagged {kind}-multiplicative but fails at x={X[tuple(i)]:.6g}, y={Y[tuple(i)]:.6g}"
        )


class HypothesisError(ValueError):
    """A hypothesis asserted by the caller is contradicted by sampling."""
