"""Spectral projections and atomic measures over a finite spectrum.

Borel sets of the spectrum are modelled as sets of cluster indices of a
``UnitarySpectralDecomposition``.  Measures live on the same index set.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field

import numpy as np

from .errors import ClusterSetMismatch, IndexOutOfRange
from .linalg import UnitarySpectralDecomposition, as_vector
from .subspace import Subspace

__all__ = [
    "AtomicMeasure",
    "UnitarySpectralDecomposition",
    "abs_continuous",
    "cluster_projections",
    "elementary_measure",
    "h_mu_subspace",
    "measure_join",
    "measure_meet",
    "spectral_projection",
    "spectral_subspace",
]


def _check_omega(dec: UnitarySpectralDecomposition, omega: Iterable[int]) -> frozenset[int]:
    members = frozenset(int(j) for j in omega)
    for j in members:
        if not 0 <= j < dec.d:
            raise IndexOutOfRange(f"cluster index {j} not in range(0, {dec.d})")
    return members


def cluster_projections(dec: UnitarySpectralDecomposition) -> list[np.ndarray]:
    return [dec.block(j) @ dec.block(j).conj().T for j in range(dec.d)]


def spectral_projection(dec: UnitarySpectralDecomposition, omega: Iterable[int]) -> np.ndarray:
    """``E(omega)``: orthogonal projection onto the eigenspaces indexed by ``omega``."""
    members = sorted(_check_omega(dec, omega))
    if not members:
        return np.zeros((dec.n, dec.n), dtype=np.complex128)
    cols = np.concatenate([np.arange(dec.clusters[j].start, dec.clusters[j].stop) for j in members])
    w = dec.w[:, cols]
    return w @ w.conj().T


def spectral_subspace(dec: UnitarySpectralDecomposition, omega: Iterable[int]) -> Subspace:
    members = sorted(_check_omega(dec, omega))
    if not members:
        return Subspace.zero(dec.n)
    return Subspace(np.concatenate([dec.block(j) for j in members], axis=1))


@dataclass(frozen=True)
class AtomicMeasure:
    """Finite positive measure on the clusters ``0 .. n_clusters - 1``.

    Zero-mass atoms are dropped at construction.
    """

    atoms: Mapping[int, float] = field(default_factory=dict)
    n_clusters: int | None = None

    def __post_init__(self):
        clean = {}
        for k, m in dict(self.atoms).items():
            k = int(k)
            m = float(m)
            if not np.isfinite(m) or m < 0:
                raise ValueError(f"atom {k} has invalid mass {m}")
            if self.n_clusters is not None and not 0 <= k < self.n_clusters:
                raise IndexOutOfRange(f"atom {k} outside cluster set of size {self.n_clusters}")
            if m > 0:
                clean[k] = m
        object.__setattr__(self, "atoms", dict(sorted(clean.items())))

    @classmethod
    def counting(cls, omega: Iterable[int], n_clusters: int) -> "AtomicMeasure":
        """Unit mass on each cluster in ``omega``."""
        return cls({j: 1.0 for j in omega}, n_clusters)

    @property
    def support(self) -> frozenset[int]:
        return frozenset(self.atoms)

    @property
    def total(self) -> float:
        return float(sum(self.atoms.values()))

    def __call__(self, omega: Iterable[int]) -> float:
        return float(sum(self.atoms.get(int(j), 0.0) for j in omega))

    def mass(self, j: int) -> float:
        return self.atoms.get(j, 0.0)

    def to_dict(self) -> dict:
        out = {"atoms": {str(k): v for k, v in self.atoms.items()}}
        if self.n_clusters is not None:
            out["n_clusters"] = self.n_clusters
        return out

    @classmethod
    def from_dict(cls, obj) -> "AtomicMeasure":
        return cls({int(k): float(v) for k, v in obj["atoms"].items()}, obj.get("n_clusters"))


def elementary_measure(dec: UnitarySpectralDecomposition, x) -> AtomicMeasure:
    """``mu_x``: mass ``||P_j x||^2`` on cluster ``j``."""
    x = as_vector(x, dec.n)
    coeffs = dec.w.conj().T @ x
    masses = {j: float(np.sum(np.abs(coeffs[c.cols]) ** 2)) for j, c in enumerate(dec.clusters)}
    return AtomicMeasure(masses, dec.d)


def h_mu_subspace(dec: UnitarySpectralDecomposition, mu: AtomicMeasure) -> Subspace:
    """``{x : mu_x << mu}``, the sum of eigenspaces charged by ``mu``."""
    return spectral_subspace(dec, (j for j in mu.support if j < dec.d))


def _same_cluster_set(m1: AtomicMeasure, m2: AtomicMeasure) -> int | None:
    if m1.n_clusters is not None and m2.n_clusters is not None and m1.n_clusters != m2.n_clusters:
        raise ClusterSetMismatch(f"cluster sets of size {m1.n_clusters} and {m2.n_clusters}")
    return m1.n_clusters if m1.n_clusters is not None else m2.n_clusters


def measure_join(m1: AtomicMeasure, m2: AtomicMeasure) -> AtomicMeasure:
    n = _same_cluster_set(m1, m2)
    keys = set(m1.atoms) | set(m2.atoms)
    return AtomicMeasure({k: m1.mass(k) + m2.mass(k) for k in keys}, n)


def measure_meet(m1: AtomicMeasure, m2: AtomicMeasure) -> AtomicMeasure:
    """Infimum over partitions, which for atoms is the atom-wise minimum."""
    n = _same_cluster_set(m1, m2)
    keys = set(m1.atoms) & set(m2.atoms)
    return AtomicMeasure({k: min(m1.mass(k), m2.mass(k)) for k in keys}, n)


def abs_continuous(m1: AtomicMeasure, m2: AtomicMeasure) -> bool:
    """``m1 << m2``: support inclusion."""
    _same_cluster_set(m1, m2)
    return m1.support <= m2.support
