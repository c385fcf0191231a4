"""Seeded randomized Loewner-order checking.

An :class:`Inequality` draws random inputs and turns them into one or more
comparisons ``(kind, lesser, greater)``.  :func:`run_check` runs it over
independent per-trial RNG substreams and keeps the worst witness.

Margins are the minimum eigenvalue of ``greater - lesser`` (for ``"eq"``
comparisons, minus the operator norm of the difference).  The *scaled* margin
divides by ``max(1, ||lesser||, ||greater||)`` and decides ``holds``.
"""
from __future__ import annotations

import time
import zlib
from dataclasses import dataclass, field
from typing import Any, ClassVar

import numpy as np

from . import linalg as la
from .functions import ScalarFunction
from .linalg import Interval
from .maps import MapDescriptor
from .means import MeanDescriptor
from .serialize import decode, encode

REGISTRY: dict[str, type["Inequality"]] = {}


@dataclass
class CheckResult:
    name: str
    family: str
    holds: bool
    worst_margin: float
    worst_scaled_margin: float
    trials: int
    seed: int
    tol: float
    witness: dict | None = None
    expected_failure: bool = False
    error: str | None = None
    wall_ms: float = 0.0
    max_deviation: float | None = None

    @property
    def as_expected(self) -> bool:
        if self.error is not None:
            return False
        return self.holds != self.expected_failure

    def to_dict(self, witness_ref: str | None = None) -> dict:
        return {
            "name": self.name,
            "family": self.family,
            "holds": self.holds,
            "expected_failure": self.expected_failure,
            "worst_margin": self.worst_margin,
            "worst_scaled_margin": self.worst_scaled_margin,
            "trials": self.trials,
            "seed": self.seed,
            "wall_ms": self.wall_ms,
            "witness_ref": witness_ref,
            "error": self.error,
        }


def comparison_margin(kind: str, lesser, greater) -> tuple[float, float]:
    """Raw and scaled margin of one comparison."""
    lesser = np.atleast_2d(lesser)
    greater = np.atleast_2d(greater)
    scale = max(1.0, la.opnorm(lesser), la.opnorm(greater))
    diff = greater - lesser
    if kind == "leq":
        raw = la.psd_margin(la.as_hermitian(diff))
    elif kind == "eq":
        raw = -la.opnorm(diff)
    else:
        raise ValueError(kind)
    return raw, raw / scale


def _encode_param(v):
    if isinstance(v, MapDescriptor):
        return {"__map__": v.to_dict()}
    if isinstance(v, ScalarFunction):
        return {"__function__": v.to_dict()}
    if isinstance(v, MeanDescriptor):
        return {"__mean__": v.to_dict()}
    if isinstance(v, Interval):
        return {"__interval__": v.as_list()}
    return encode(v)


def _decode_param(v):
    if isinstance(v, dict):
        if "__map__" in v:
            return MapDescriptor.from_dict(v["__map__"])
        if "__function__" in v:
            return ScalarFunction.from_dict(v["__function__"])
        if "__mean__" in v:
            return MeanDescriptor.from_dict(v["__mean__"])
        if "__interval__" in v:
            return Interval(*v["__interval__"])
    return decode(v)


class Inequality:
    """Base class for one checked inequality family.

    Subclasses set ``family`` and implement :meth:`draw` and :meth:`sides`;
    constructor keyword arguments are the serializable parameters.
    """

    family: ClassVar[str] = ""

    def __init_subclass__(cls, **kw):
        super().__init_subclass__(**kw)
        if cls.family:
            REGISTRY[cls.family] = cls

    def __init__(self, fixed: dict | None = None, expected_failure: bool = False, **params):
        self.fixed = fixed
        self.expected_failure = expected_failure
        self.params = params
        for k, v in params.items():
            setattr(self, k, v)
        self.validate()

    # --- hooks -----------------------------------------------------------
    def validate(self) -> None:
        """Check hypotheses; raise on violation."""

    def draw(self, rng: np.random.Generator) -> dict:
        raise NotImplementedError

    def sides(self, inputs: dict) -> list[tuple[str, Any, Any]]:
        raise NotImplementedError

    def describe(self) -> str:
        return ""

    # --- plumbing --------------------------------------------------------
    @property
    def name(self) -> str:
        d = self.describe()
        return f"{self.family}[{d}]" if d else self.family

    def inputs_for_trial(self, seed: int, trial: int) -> dict:
        if self.fixed is not None:
            return self.fixed
        key = zlib.crc32(self.name.encode())
        return self.draw(la.trial_rng(seed, key, trial))

    def margin(self, inputs: dict) -> tuple[float, float]:
        worst = (np.inf, np.inf)
        for kind, lesser, greater in self.sides(inputs):
            raw, scaled = comparison_margin(kind, lesser, greater)
            if scaled < worst[1]:
                worst = (raw, scaled)
        return worst

    def to_dict(self) -> dict:
        return {
            "family": self.family,
            "params": {k: _encode_param(v) for k, v in self.params.items()},
            "expected_failure": self.expected_failure,
            "fixed": None if self.fixed is None else encode(self.fixed),
        }

    @staticmethod
    def from_dict(d: dict) -> "Inequality":
        cls = REGISTRY[d["family"]]
        params = {k: _decode_param(v) for k, v in d["params"].items()}
        fixed = d.get("fixed")
        return cls(
            fixed=None if fixed is None else decode(fixed),
            expected_failure=d.get("expected_failure", False),
            **params,
        )


def run_check(ineq: Inequality, trials: int, seed: int, tol: float = la.DEFAULT_TOL) -> CheckResult:
    """Run ``ineq`` over ``trials`` seeded draws (one draw if inputs are fixed)."""
    if trials < 1:
        raise ValueError("trials must be >= 1")
    start = time.perf_counter()
    n = 1 if ineq.fixed is not None else trials
    worst_raw, worst_scaled, worst_trial, worst_inputs = np.inf, np.inf, 0, None
    for trial in range(n):
        inputs = ineq.inputs_for_trial(seed, trial)
        raw, scaled = ineq.margin(inputs)
        if scaled < worst_scaled or worst_inputs is None:
            worst_raw, worst_scaled, worst_trial, worst_inputs = raw, scaled, trial, inputs
    witness = {
        "check": ineq.to_dict(),
        "name": ineq.name,
        "seed": int(seed),
        "trial": worst_trial,
        "tol": tol,
        "inputs": encode(worst_inputs),
        "worst_margin": float(worst_raw),
        "worst_scaled_margin": float(worst_scaled),
    }
    return CheckResult(
        name=ineq.name,
        family=ineq.family,
        holds=bool(worst_scaled >= -tol),
        worst_margin=float(worst_raw),
        worst_scaled_margin=float(worst_scaled),
        trials=n,
        seed=int(seed),
        tol=tol,
        witness=witness,
        expected_failure=ineq.expected_failure,
        wall_ms=(time.perf_counter() - start) * 1e3,
    )


def replay(witness: dict) -> tuple[float, float]:
    """Re-evaluate a serialized witness; returns ``(raw, scaled)`` margins."""
    ineq = Inequality.from_dict(witness["check"])
    return ineq.margin(decode(witness["inputs"]))
