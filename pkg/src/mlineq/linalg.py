"""Dense complex matrix helpers: spectral calculus, Loewner comparisons and
seeded generators for structured random test matrices.

Matrices are plain ``numpy`` complex arrays.  "Hermitian" inputs are checked
(and exactly symmetrized) by :func:`as_hermitian`.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

EIG_SWEEP_CAP = 100
MERGE_GAP = 1e-9
DEFAULT_TOL = 1e-8


class LinalgError(ValueError):
    """Raised for dimension mismatches, singular inputs and solver failures."""


class DomainError(ValueError):
    """An eigenvalue fell outside the domain of a scalar function."""

    def __init__(self, eigenvalue: float, domain):
        self.eigenvalue = eigenvalue
        self.domain = domain
        super().__init__(f"eigenvalue {eigenvalue!r} outside function domain {domain}")


@dataclass(frozen=True)
class Interval:
    """Spectral bounds ``0 < m <= M``."""

    m: float
    M: float

    def __post_init__(self):
        if not (self.m > 0 and self.M >= self.m and np.isfinite(self.M)):
            raise ValueError(f"invalid interval [{self.m}, {self.M}]: need 0 < m <= M")

    def power(self, k: float) -> "Interval":
        return Interval(self.m**k, self.M**k)

    def ratio(self) -> "Interval":
        """The interval ``[m/M, M/m]`` of congruence ratios."""
        return Interval(self.m / self.M, self.M / self.m)

    def as_list(self) -> list[float]:
        return [self.m, self.M]


@dataclass(frozen=True, eq=False)
class SpectralDecomposition:
    eigenvalues: np.ndarray
    projections: tuple[np.ndarray, ...]

    @property
    def dim(self) -> int:
        return self.projections[0].shape[0]


# ----------------------------------------------------------------------------
# basic helpers


def as_matrix(A) -> np.ndarray:
    A = np.atleast_2d(np.asarray(A, dtype=complex))
    if A.ndim != 2 or A.shape[0] != A.shape[1] or A.shape[0] < 1:
        raise LinalgError(f"expected a non-empty square matrix, got shape {A.shape}")
    return A


def hermitian_part(A) -> np.ndarray:
    A = as_matrix(A)
    return (A + A.conj().T) / 2


def as_hermitian(A, rtol: float = 1e-6) -> np.ndarray:
    """Return the exact Hermitian part of ``A``; reject inputs far from Hermitian."""
    A = as_matrix(A)
    skew = np.abs(A - A.conj().T).max()
    if skew > rtol * max(1.0, np.abs(A).max()):
        raise LinalgError(f"matrix is not Hermitian (max |A - A*| = {skew:.3e})")
    return (A + A.conj().T) / 2


def opnorm(A) -> float:
    """Operator (spectral) norm."""
    return float(np.linalg.norm(as_matrix(A), 2))


def adjoint(A) -> np.ndarray:
    return np.asarray(A).conj().T


def identity(dim: int) -> np.ndarray:
    return np.eye(dim, dtype=complex)


# ----------------------------------------------------------------------------
# eigensolvers


def _eigh(A: np.ndarray):
    try:
        return np.linalg.eigh(A)
    except np.linalg.LinAlgError as exc:
        raise LinalgError(
            f"Hermitian eigensolver did not converge (||A|| = {opnorm(A):.6g}, "
            f"cap {EIG_SWEEP_CAP} sweeps)"
        ) from exc


def jacobi_eigh(A, max_sweeps: int = EIG_SWEEP_CAP, rtol: float = 1e-13):
    """Cyclic complex Jacobi eigensolver.

    Returns ``(w, V)`` with ascending eigenvalues, like :func:`numpy.linalg.eigh`.
    Each rotation first removes the phase of the pivot so the 2x2 subproblem
    becomes real symmetric.
    """
    a = as_hermitian(A).copy()
    n = a.shape[0]
    v = np.eye(n, dtype=complex)
    scale = max(np.linalg.norm(a), np.finfo(float).tiny)
    for _ in range(max_sweeps):
        off = np.linalg.norm(a - np.diag(np.diag(a)))
        if off <= rtol * scale:
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[p, q]
                if abs(apq) <= 1e-300:
                    continue
                phase = apq / abs(apq)
                app, aqq = a[p, p].real, a[q, q].real
                theta = (aqq - app) / (2 * abs(apq))
                t = np.sign(theta) / (abs(theta) + np.sqrt(theta * theta + 1)) if theta else 1.0
                c = 1 / np.sqrt(t * t + 1)
                s = t * c
                # unitary acting on columns p, q
                ap = a[:, p].copy()
                aq = a[:, q].copy()
                a[:, p] = c * ap - s * np.conj(phase) * aq
                a[:, q] = s * phase * ap + c * aq
                ap = a[p, :].copy()
                aq = a[q, :].copy()
                a[p, :] = c * ap - s * phase * aq
                a[q, :] = s * np.conj(phase) * ap + c * aq
                a[p, q] = a[q, p] = 0.0
                vp = v[:, p].copy()
                vq = v[:, q].copy()
                v[:, p] = c * vp - s * np.conj(phase) * vq
                v[:, q] = s * phase * vp + c * vq
    else:
        raise LinalgError(
            f"Jacobi eigensolver did not converge (||A|| = {scale:.6g}, cap {max_sweeps} sweeps)"
        )
    w = np.diag(a).real
    order = np.argsort(w)
    return w[order], v[:, order]


def hermitian_eig(A, merge_gap: float = MERGE_GAP) -> SpectralDecomposition:
    """Spectral decomposition with near-degenerate eigenvalues merged.

    Eigenvalues closer than ``merge_gap * ||A||`` share one projection; the
    merged eigenvalue is the cluster mean.
    """
    A = as_hermitian(A)
    w, V = _eigh(A)
    gap = merge_gap * max(np.abs(w).max(), np.finfo(float).tiny)
    groups: list[list[int]] = [[0]]
    for j in range(1, len(w)):
        if w[j] - w[groups[-1][-1]] < gap:
            groups[-1].append(j)
        else:
            groups.append([j])
    lams, projs = [], []
    for g in groups:
        U = V[:, g]
        P = U @ U.conj().T
        projs.append((P + P.conj().T) / 2)
        lams.append(float(np.mean(w[g])))
    return SpectralDecomposition(np.array(lams), tuple(projs))


def spectral_synthesis(decomp: SpectralDecomposition) -> np.ndarray:
    return sum(lam * P for lam, P in zip(decomp.eigenvalues, decomp.projections))


def eigvalsh(A) -> np.ndarray:
    try:
        return np.linalg.eigvalsh(as_hermitian(A))
    except np.linalg.LinAlgError as exc:
        raise LinalgError(f"eigvalsh failed (||A|| = {opnorm(A):.6g})") from exc


# ----------------------------------------------------------------------------
# functional calculus


def matrix_function(A, f: Callable, domain=None) -> np.ndarray:
    """``sum_j f(lambda_j) P_j`` for Hermitian ``A``.

    ``f`` is either a :class:`mlineq.functions.ScalarFunction` (its domain is
    checked) or a plain vectorized callable with an optional ``domain``
    object exposing ``contains_clip``.
    """
    A = as_hermitian(A)
    w, V = _eigh(A)
    dom = domain if domain is not None else getattr(f, "domain", None)
    if dom is not None:
        w = dom.contains_clip(w, scale=max(1.0, np.abs(w).max()))
    fw = np.asarray(f(w), dtype=complex)
    out = (V * fw) @ V.conj().T
    return (out + out.conj().T) / 2


def mpower(A, r: float) -> np.ndarray:
    """Real power of a positive matrix (strictly positive for ``r < 0``)."""
    A = as_hermitian(A)
    w, V = _eigh(A)
    if r == 1:
        return A
    if r == 0:
        return identity(A.shape[0])
    tiny = 1e-12 * max(1.0, np.abs(w).max())
    if w.min() < -tiny or (r < 0 and w.min() <= 0):
        raise DomainError(float(w.min()), f"t^{r}")
    w = np.clip(w, 0.0, None)
    out = (V * w**r) @ V.conj().T
    return (out + out.conj().T) / 2


def sqrtm_pair(A):
    """``(A^{1/2}, A^{-1/2})`` from one eigendecomposition; ``A`` strictly positive."""
    A = as_hermitian(A)
    w, V = _eigh(A)
    if w.min() <= 0:
        raise LinalgError(f"matrix is singular or not positive (min eigenvalue {w.min():.3e})")
    s = np.sqrt(w)
    half = (V * s) @ V.conj().T
    ihalf = (V / s) @ V.conj().T
    return (half + half.conj().T) / 2, (ihalf + ihalf.conj().T) / 2


def inv(A) -> np.ndarray:
    A = as_matrix(A)
    try:
        out = np.linalg.inv(A)
    except np.linalg.LinAlgError as exc:
        raise LinalgError("singular matrix") from exc
    return out


def inv_pos(A) -> np.ndarray:
    """Inverse of a strictly positive matrix through its spectrum."""
    return mpower(A, -1.0)


def logm_pos(A) -> np.ndarray:
    A = as_hermitian(A)
    w, V = _eigh(A)
    if w.min() <= 0:
        raise DomainError(float(w.min()), "log")
    out = (V * np.log(w)) @ V.conj().T
    return (out + out.conj().T) / 2


def expm_herm(A) -> np.ndarray:
    A = as_hermitian(A)
    w, V = _eigh(A)
    out = (V * np.exp(w)) @ V.conj().T
    return (out + out.conj().T) / 2


# ----------------------------------------------------------------------------
# Loewner order


def psd_margin(A) -> float:
    """Minimum eigenvalue of a Hermitian matrix."""
    return float(eigvalsh(A)[0])


def loewner_scale(A, B) -> float:
    return max(1.0, opnorm(A), opnorm(B))


def loewner_leq(A, B, tol: float = DEFAULT_TOL) -> bool:
    """``A <= B`` up to ``tol * max(1, ||A||, ||B||)``."""
    A, B = as_matrix(A), as_matrix(B)
    if A.shape != B.shape:
        raise LinalgError(f"dimension mismatch {A.shape} vs {B.shape}")
    if tol < 0:
        raise ValueError("tol must be nonnegative")
    return psd_margin(B - A) >= -tol * loewner_scale(A, B)


# ----------------------------------------------------------------------------
# products


def tensor_product(A, B) -> np.ndarray:
    return np.kron(np.atleast_2d(A), np.atleast_2d(B))


def hadamard_product(A, B) -> np.ndarray:
    A, B = np.atleast_2d(A), np.atleast_2d(B)
    if A.shape != B.shape:
        raise LinalgError(f"dimension mismatch {A.shape} vs {B.shape}")
    return A * B


def block2x2_psd_check(A, B, X, tol: float = DEFAULT_TOL) -> tuple[bool, bool]:
    """Positivity of ``[[A, X], [X*, B]]`` and the Schur condition ``X B^-1 X* <= A``.

    For strictly positive ``A``, ``B`` the two flags agree.
    """
    A, B = as_hermitian(A), as_hermitian(B)
    X = as_matrix(X)
    if psd_margin(B) <= 0:
        raise LinalgError("B must be strictly positive (singular B)")
    block = np.block([[A, X], [X.conj().T, B]])
    block_flag = psd_margin(hermitian_part(block)) >= -tol * max(1.0, opnorm(block))
    schur = X @ inv_pos(B) @ X.conj().T
    return bool(block_flag), bool(loewner_leq(hermitian_part(schur), A, tol))


# ----------------------------------------------------------------------------
# seeded generators


def trial_rng(seed: int, *keys: int) -> np.random.Generator:
    """Independent substream for ``(seed, keys...)``."""
    return np.random.default_rng(np.random.SeedSequence([int(seed) & (2**64 - 1), *keys]))


def haar_unitary(dim: int, rng: np.random.Generator) -> np.ndarray:
    z = (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    d = np.diag(r)
    return q * (d / np.abs(d))


def random_spectrum(dim: int, spec: Interval, rng: np.random.Generator) -> np.ndarray:
    lam = rng.uniform(spec.m, spec.M, size=dim)
    if dim >= 2:
        lam[0], lam[-1] = spec.m, spec.M
    return lam


def random_positive(dim: int, spec: Interval, rng: np.random.Generator) -> np.ndarray:
    """``U diag(lambda) U*`` with Haar ``U`` and spectrum in ``[m, M]``, endpoints attained."""
    if dim < 1:
        raise ValueError("dim must be >= 1")
    lam = random_spectrum(dim, spec, rng)
    U = haar_unitary(dim, rng)
    A = (U * lam) @ U.conj().T
    return (A + A.conj().T) / 2


def random_normal(
    dim: int, modulus_spec: Interval, rng: np.random.Generator, phases: str = "uniform"
) -> np.ndarray:
    """Normal matrix ``U diag(mu) U*`` with ``|mu|`` uniform in ``[m, M]``.

    ``phases`` is ``"uniform"``, ``"real"`` (phases 0 or pi, Hermitian output)
    or ``"zero"`` (positive output).
    """
    r = rng.uniform(modulus_spec.m, modulus_spec.M, size=dim)
    if phases == "uniform":
        theta = rng.uniform(0, 2 * np.pi, size=dim)
    elif phases == "real":
        theta = np.pi * rng.integers(0, 2, size=dim)
    elif phases == "zero":
        theta = np.zeros(dim)
    else:
        raise ValueError(f"unknown phase mode {phases!r}")
    mu = r * np.exp(1j * theta)
    if phases != "uniform":
        mu = mu.real.astype(complex)
    U = haar_unitary(dim, rng)
    return (U * mu) @ U.conj().T


def random_hermitian(dim: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    z = rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))
    return scale * (z + z.conj().T) / 2


def random_complex(dim: int, rng: np.random.Generator, scale: float = 1.0) -> np.ndarray:
    return scale * (rng.standard_normal((dim, dim)) + 1j * rng.standard_normal((dim, dim))) / np.sqrt(2)


def random_contraction(dim: int, rng: np.random.Generator) -> np.ndarray:
    """``U diag(radii) V`` with radii in ``[0, 1]``; occasionally radius 1 exactly."""
    radii = rng.uniform(0, 1, size=dim)
    radii[rng.uniform(size=dim) < 0.3] = 1.0
    return (haar_unitary(dim, rng) * radii) @ haar_unitary(dim, rng)


def random_unit_vector(dim: int, rng: np.random.Generator) -> np.ndarray:
    x = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    return x / np.linalg.norm(x)


def random_weights(k: int, rng: np.random.Generator) -> np.ndarray:
    w = rng.dirichlet(np.ones(k))
    return w / w.sum()


def commutator_norm(A) -> float:
    A = as_matrix(A)
    return opnorm(A @ A.conj().T - A.conj().T @ A)


def kron_all(mats: Sequence[np.ndarray]) -> np.ndarray:
    out = np.atleast_2d(mats[0])
    for M in mats[1:]:
        out = np.kron(out, M)
    return out
