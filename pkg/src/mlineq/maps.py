"""Positive multilinear maps ``M_q^k -> M_p`` as serializable descriptors."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Sequence

import numpy as np

from . import linalg as la

TENSOR = "Tensor"
HADAMARD = "Hadamard"
TRACE_PRODUCT = "TraceProduct"
NORMALIZED_TRACE_PAIR = "NormalizedTracePair"
TRACE_PAIR = "TracePair"
RANK_ONE = "RankOne"
LINEAR_COMPOSED = "LinearComposed"
CONGRUENCE = "CongruenceTransformed"

KINDS = (TENSOR, HADAMARD, TRACE_PRODUCT, NORMALIZED_TRACE_PAIR, TRACE_PAIR, RANK_ONE, LINEAR_COMPOSED, CONGRUENCE)


class MapError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class MapDescriptor:
    """Tagged construction of a multilinear map.

    ``payload`` depends on ``kind``:

    * ``RankOne``: ``{"vector": x}``, a unit vector fixing the coefficient
      ``<S x, x>`` so that ``Phi(T, S) x = (T x (x) S x) x`` at that vector.
    * ``LinearComposed``: ``{"choi": C}``, the Choi matrix
      ``sum_ij E_ij (x) Psi(E_ij)`` of ``Psi: M_{q^k} -> M_p``.
    * ``CongruenceTransformed``: ``{"base": MapDescriptor, "anchors": [A_i]}``.
    """

    kind: str
    k: int
    q: int
    p: int
    payload: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise MapError(f"unknown map kind {self.kind!r}")
        if self.k < 1 or self.q < 1 or self.p < 1:
            raise MapError("k, q, p must be positive")
        expected_p = {TENSOR: self.q**self.k, HADAMARD: self.q, RANK_ONE: self.q,
                      NORMALIZED_TRACE_PAIR: 1, TRACE_PAIR: 1}
        if self.kind in expected_p and self.p != expected_p[self.kind]:
            raise MapError(f"{self.kind} needs p = {expected_p[self.kind]}, got {self.p}")
        if self.kind in (NORMALIZED_TRACE_PAIR, TRACE_PAIR, RANK_ONE) and self.k != 2:
            raise MapError(f"{self.kind} is bilinear (k = 2)")
        if self.kind == LINEAR_COMPOSED:
            C = self.payload["choi"]
            n = self.q**self.k * self.p
            if C.shape != (n, n):
                raise MapError(f"Choi matrix must be {n}x{n}, got {C.shape}")
        if self.kind == CONGRUENCE:
            base, anchors = self.payload["base"], self.payload["anchors"]
            if (base.k, base.q, base.p) != (self.k, self.q, self.p) or len(anchors) != self.k:
                raise MapError("congruence base/anchor shapes disagree")
            for A in anchors:
                if la.psd_margin(A) <= 0:
                    raise MapError("congruence anchors must be strictly positive")

    # ------------------------------------------------------------------
    @property
    def label(self) -> str:
        names = {TENSOR: "tensor", HADAMARD: "hadamard", TRACE_PRODUCT: "trace-product",
                 NORMALIZED_TRACE_PAIR: "normalized-trace", TRACE_PAIR: "trace-pair",
                 RANK_ONE: "rank-one", LINEAR_COMPOSED: "linear-composed", CONGRUENCE: "congruence"}
        base = names[self.kind]
        if self.kind == CONGRUENCE:
            base += "(" + self.payload["base"].label + ")"
        return base

    @cached_property
    def _congruence_parts(self):
        base, anchors = self.payload["base"], self.payload["anchors"]
        halves = [la.sqrtm_pair(A)[0] for A in anchors]
        center = la.as_hermitian(base(*anchors))
        _, center_ihalf = la.sqrtm_pair(center)
        return base, halves, center_ihalf

    @cached_property
    def _choi_blocks(self):
        n = self.q**self.k
        return self.payload["choi"].reshape(n, self.p, n, self.p)

    def __call__(self, *mats) -> np.ndarray:
        return evaluate(self, mats)

    def to_dict(self) -> dict:
        from .serialize import encode

        payload = {}
        if self.kind == RANK_ONE:
            payload = {"vector": encode(self.payload["vector"])}
        elif self.kind == LINEAR_COMPOSED:
            payload = {"choi": encode(self.payload["choi"])}
        elif self.kind == CONGRUENCE:
            payload = {"base": self.payload["base"].to_dict(),
                       "anchors": [encode(A) for A in self.payload["anchors"]]}
        return {"kind": self.kind, "k": self.k, "q": self.q, "p": self.p, "payload": payload}

    @classmethod
    def from_dict(cls, d: dict) -> "MapDescriptor":
        from .serialize import decode

        kind, payload = d["kind"], d.get("payload", {})
        if kind == RANK_ONE:
            payload = {"vector": decode(payload["vector"])}
        elif kind == LINEAR_COMPOSED:
            payload = {"choi": decode(payload["choi"])}
        elif kind == CONGRUENCE:
            payload = {"base": cls.from_dict(payload["base"]),
                       "anchors": [decode(A) for A in payload["anchors"]]}
        else:
            payload = {}
        return cls(kind, int(d["k"]), int(d["q"]), int(d["p"]), payload)

    @property
    def symmetric(self) -> bool:
        """Whether ``Phi(A, B) = Phi(B, A)`` holds identically (bilinear kinds only)."""
        return self.k == 2 and self.kind in (HADAMARD, TRACE_PRODUCT, NORMALIZED_TRACE_PAIR, TRACE_PAIR)


# ----------------------------------------------------------------------------
# constructors


def tensor_map(q: int, k: int = 2) -> MapDescriptor:
    return MapDescriptor(TENSOR, k, q, q**k)


def hadamard_map(q: int, k: int = 2) -> MapDescriptor:
    return MapDescriptor(HADAMARD, k, q, q)


def trace_product_map(q: int, k: int = 2, p: int = 1) -> MapDescriptor:
    return MapDescriptor(TRACE_PRODUCT, k, q, p)


def normalized_trace_pair(q: int) -> MapDescriptor:
    return MapDescriptor(NORMALIZED_TRACE_PAIR, 2, q, 1)


def trace_pair(q: int) -> MapDescriptor:
    """``(X, Y) -> Tr(XY)``: positive and bilinear, not unital for q > 1."""
    return MapDescriptor(TRACE_PAIR, 2, q, 1)


def rank_one_map(x) -> MapDescriptor:
    x = np.asarray(x, dtype=complex).ravel()
    nx = np.linalg.norm(x)
    if nx == 0:
        raise MapError("rank-one anchor vector must be nonzero")
    return MapDescriptor(RANK_ONE, 2, x.size, x.size, {"vector": x / nx})


def choi_matrix(psi, n: int, p: int) -> np.ndarray:
    """Choi matrix of a linear map ``psi: M_n -> M_p`` given as a callable."""
    C = np.zeros((n * p, n * p), dtype=complex)
    for i in range(n):
        for j in range(n):
            E = np.zeros((n, n), dtype=complex)
            E[i, j] = 1.0
            C[i * p:(i + 1) * p, j * p:(j + 1) * p] = psi(E)
    return C


def linear_composed(q: int, k: int, choi) -> MapDescriptor:
    choi = np.asarray(choi, dtype=complex)
    p = choi.shape[0] // q**k
    return MapDescriptor(LINEAR_COMPOSED, k, q, p, {"choi": choi})


def linear_composed_identity(q: int, k: int = 2) -> MapDescriptor:
    n = q**k
    return linear_composed(q, k, choi_matrix(lambda X: X, n, n))


def compression_transpose_map(q: int, k: int, rng: np.random.Generator) -> MapDescriptor:
    """``Psi(X) = (V1* X V1 + V2* X^T V2) / 2`` with random isometries ``C^q -> C^{q^k}``.

    Unital and positive but not completely positive (because of the transpose).
    """
    n = q**k
    V1 = la.haar_unitary(n, rng)[:, :q]
    V2 = la.haar_unitary(n, rng)[:, :q]

    def psi(X):
        return (V1.conj().T @ X @ V1 + V2.conj().T @ X.T @ V2) / 2

    return linear_composed(q, k, choi_matrix(psi, n, q))


def congruence_transformed(base: MapDescriptor, anchors: Sequence) -> MapDescriptor:
    """``Psi(Y) = Phi(A)^{-1/2} Phi(A_1^{1/2} Y_1 A_1^{1/2}, ...) Phi(A)^{-1/2}``; unital."""
    anchors = [la.as_hermitian(A) for A in anchors]
    return MapDescriptor(CONGRUENCE, base.k, base.q, base.p, {"base": base, "anchors": anchors})


# ----------------------------------------------------------------------------
# evaluation


def evaluate(phi: MapDescriptor, mats: Sequence) -> np.ndarray:
    """``Phi(A_1, ..., A_k)``."""
    if len(mats) != phi.k:
        raise MapError(f"{phi.label} takes {phi.k} arguments, got {len(mats)}")
    mats = [np.atleast_2d(np.asarray(A, dtype=complex)) for A in mats]
    for A in mats:
        if A.shape != (phi.q, phi.q):
            raise MapError(f"{phi.label} expects {phi.q}x{phi.q} inputs, got {A.shape}")
    kind = phi.kind
    if kind == TENSOR:
        return la.kron_all(mats)
    if kind == HADAMARD:
        out = mats[0].copy()
        for A in mats[1:]:
            out = out * A
        return out
    if kind == TRACE_PRODUCT:
        return np.prod([np.trace(A) for A in mats]) * la.identity(phi.p)
    if kind == NORMALIZED_TRACE_PAIR:
        return np.array([[np.trace(mats[0] @ mats[1]) / phi.q]])
    if kind == TRACE_PAIR:
        return np.array([[np.trace(mats[0] @ mats[1])]])
    if kind == RANK_ONE:
        x = phi.payload["vector"]
        T, S = mats
        return np.vdot(x, S @ x) * T
    if kind == LINEAR_COMPOSED:
        X = la.kron_all(mats)
        return np.einsum("ij,iajb->ab", X, phi._choi_blocks)
    if kind == CONGRUENCE:
        base, halves, c = phi._congruence_parts
        inner = base(*[h @ Y @ h for h, Y in zip(halves, mats)])
        return c @ inner @ c
    raise MapError(kind)  # pragma: no cover


def is_unital(phi: MapDescriptor, tol: float = 1e-10) -> bool:
    ident = [la.identity(phi.q)] * phi.k
    return bool(la.opnorm(phi(*ident) - la.identity(phi.p)) <= tol)


def slotwise(phi: MapDescriptor, tuples: Sequence[Sequence]) -> list[np.ndarray]:
    """Apply ``phi`` to every combination drawn one from each slot's tuple.

    ``tuples[i]`` is the tuple feeding slot ``i``; the result is ordered like
    ``itertools.product`` over slots.
    """
    import itertools

    return [phi(*combo) for combo in itertools.product(*tuples)]
