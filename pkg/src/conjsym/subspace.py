"""Subspaces of C^n carried by orthonormal column bases."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionMismatch
from .linalg import _rng, opnorm, orthonormal_columns

# basis-independent equality of subspaces
SUBSPACE_TOL = 1e-8


@dataclass(frozen=True, eq=False)
class Subspace:
    """Column span of ``basis``, an ``n x k`` matrix with orthonormal columns (``k`` may be 0)."""

    basis: np.ndarray

    def __post_init__(self):
        b = np.asarray(self.basis, dtype=np.complex128)
        if b.ndim != 2:
            raise DimensionMismatch(f"basis must be 2-d, got shape {b.shape}")
        object.__setattr__(self, "basis", b)

    @classmethod
    def span(cls, vectors, n: int | None = None) -> "Subspace":
        """Orthonormalized span of the columns of ``vectors``."""
        v = np.asarray(vectors, dtype=np.complex128)
        if v.ndim == 1:
            v = v.reshape(-1, 1)
        if v.shape[1] == 0:
            return cls.zero(v.shape[0] if n is None else n)
        return cls(orthonormal_columns(v))

    @classmethod
    def zero(cls, n: int) -> "Subspace":
        return cls(np.zeros((n, 0), dtype=np.complex128))

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(np.eye(n, dtype=np.complex128))

    @property
    def n(self) -> int:
        return self.basis.shape[0]

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.conj().T

    def orthonormality_defect(self) -> float:
        if self.dim == 0:
            return 0.0
        return float(np.linalg.norm(self.basis.conj().T @ self.basis - np.eye(self.dim)))

    def distance_from(self, vectors) -> float:
        """Operator norm of the component of ``vectors`` outside this subspace."""
        v = np.asarray(vectors, dtype=np.complex128)
        if v.ndim == 1:
            v = v.reshape(-1, 1)
        if v.shape[0] != self.n:
            raise DimensionMismatch(f"vectors of length {v.shape[0]} vs ambient dimension {self.n}")
        return opnorm(v - self.basis @ (self.basis.conj().T @ v))

    def contains(self, other: "Subspace", tol: float = SUBSPACE_TOL) -> bool:
        return other.dim <= self.dim and self.distance_from(other.basis) <= tol

    def equals(self, other: "Subspace", tol: float = SUBSPACE_TOL) -> bool:
        """Dimension match plus sine of the largest principal angle at most ``tol``."""
        if self.n != other.n or self.dim != other.dim:
            return False
        return self.distance_from(other.basis) <= tol

    def complement(self) -> "Subspace":
        if self.dim == 0:
            return Subspace.full(self.n)
        q, _ = np.linalg.qr(self.basis, mode="complete")
        return Subspace(q[:, self.dim :])

    def intersect(self, other: "Subspace", tol: float = 1e-10) -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.n)
        # principal vectors with cosine 1
        u, s, _ = np.linalg.svd(self.basis.conj().T @ other.basis)
        k = int(np.sum(s >= 1.0 - tol))
        return Subspace(self.basis @ u[:, :k])


def random_subspace(n: int, dim: int, seed=0) -> Subspace:
    """Orthonormalized complex Gaussian columns."""
    rng = _rng(seed)
    z = rng.standard_normal((n, dim)) + 1j * rng.standard_normal((n, dim))
    q, _ = np.linalg.qr(z)
    return Subspace(q)
