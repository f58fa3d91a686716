"""Dense complex matrix helpers and the spectral decomposition of unitaries.

Matrices are plain ``numpy`` arrays of dtype ``complex128``.  The helpers
here only add the dimension checks and error types the rest of the package
relies on.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import ClusteringUnstable, DimensionMismatch, NotSquare, NotUnitary, ParseError

TWO_PI = 2.0 * math.pi

# unitarity gate applied before decomposing
UNITARY_GATE = 1e-8


def as_matrix(m) -> np.ndarray:
    """Coerce ``m`` to a finite 2-d complex128 array with at least one row and column."""
    arr = np.asarray(m, dtype=np.complex128)
    if arr.ndim == 1:
        arr = arr.reshape(1, -1)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DimensionMismatch(f"expected a non-empty 2-d matrix, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise ValueError("matrix contains NaN or Inf")
    return arr


def as_vector(x, n: int | None = None) -> np.ndarray:
    vec = np.asarray(x, dtype=np.complex128).reshape(-1)
    if n is not None and vec.shape[0] != n:
        raise DimensionMismatch(f"vector of length {vec.shape[0]}, expected {n}")
    if not np.all(np.isfinite(vec)):
        raise ValueError("vector contains NaN or Inf")
    return vec


def require_square(m: np.ndarray) -> int:
    if m.shape[0] != m.shape[1]:
        raise NotSquare(f"expected a square matrix, got shape {m.shape}")
    return m.shape[0]


def matmul(a, b) -> np.ndarray:
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape[1] != b.shape[0]:
        raise DimensionMismatch(f"cannot multiply {a.shape} by {b.shape}")
    return a @ b


def adjoint(m) -> np.ndarray:
    return as_matrix(m).conj().T


def transpose(m) -> np.ndarray:
    return as_matrix(m).T.copy()


def entrywise_conj(m) -> np.ndarray:
    return as_matrix(m).conj()


def fro(m) -> float:
    return float(np.linalg.norm(m, "fro"))


def opnorm(m) -> float:
    """Spectral norm; zero for empty matrices."""
    m = np.asarray(m)
    if m.size == 0:
        return 0.0
    return float(np.linalg.norm(m, 2))


def unitary_residual(m) -> float:
    m = as_matrix(m)
    n = require_square(m)
    return fro(m.conj().T @ m - np.eye(n))


def symmetry_residual(m) -> float:
    m = as_matrix(m)
    return fro(m - m.T)


@dataclass(frozen=True)
class UnitaryCheckReport:
    residual: float
    is_unitary: bool
    tol: float


def check_unitary(m, tol: float = 1e-10) -> UnitaryCheckReport:
    """Frobenius residual of ``m* m - I`` against ``tol``."""
    residual = unitary_residual(m)
    return UnitaryCheckReport(residual=residual, is_unitary=residual <= tol, tol=tol)


def _rng(seed) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def haar_unitary(n: int, seed=0) -> np.ndarray:
    """Haar-distributed ``n x n`` unitary.

    QR of a complex Ginibre matrix with the diagonal of ``R`` rotated to be
    real positive.  ``seed`` is an integer or an existing ``Generator``
    (which is advanced).
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    rng = _rng(seed)
    z = (rng.standard_normal((n, n)) + 1j * rng.standard_normal((n, n))) / math.sqrt(2.0)
    q, r = np.linalg.qr(z)
    d = np.diagonal(r)
    phases = d / np.abs(d)
    return q * phases[np.newaxis, :]


def dft_matrix(n: int) -> np.ndarray:
    """Unitary DFT matrix ``F[j, k] = exp(-2 pi i jk / n) / sqrt(n)``."""
    k = np.arange(n)
    return np.exp(-2j * np.pi * np.outer(k, k) / n) / math.sqrt(n)


def orthonormal_columns(m, rtol: float = 1e-10) -> np.ndarray:
    """Orthonormal basis for the column span of ``m`` (rank-revealing SVD)."""
    m = np.asarray(m, dtype=np.complex128)
    if m.size == 0:
        return np.zeros((m.shape[0], 0), dtype=np.complex128)
    u, s, _ = np.linalg.svd(m, full_matrices=False)
    if s.size == 0 or s[0] == 0.0:
        return np.zeros((m.shape[0], 0), dtype=np.complex128)
    rank = int(np.sum(s > rtol * max(s[0], 1.0)))
    return u[:, :rank]


def normalize_column_phases(w: np.ndarray, floor: float = 1e-12) -> np.ndarray:
    """Rotate each column so its first entry above ``floor`` is real positive."""
    w = w.copy()
    for k in range(w.shape[1]):
        col = w[:, k]
        idx = np.flatnonzero(np.abs(col) > floor)
        if idx.size:
            z = col[idx[0]]
            w[:, k] = col * (abs(z) / z)
    return w


# ---------------------------------------------------------------------------
# spectral decomposition


@dataclass(frozen=True)
class Cluster:
    xi: complex
    mult: int
    start: int

    @property
    def stop(self) -> int:
        return self.start + self.mult

    @property
    def cols(self) -> slice:
        return slice(self.start, self.stop)

    @property
    def arg(self) -> float:
        return math.atan2(self.xi.imag, self.xi.real) % TWO_PI


@dataclass(frozen=True)
class UnitarySpectralDecomposition:
    """``U = W diag(xi_j I_{n_j}) W*`` with clustered eigenvalues.

    Columns of ``w`` are grouped contiguously by cluster in the order of
    ``clusters`` (increasing argument in ``[0, 2 pi)``).
    """

    w: np.ndarray
    clusters: tuple[Cluster, ...]
    cluster_tol: float = 1e-8
    raw_eigenvalues: np.ndarray = field(default=None, repr=False, compare=False)

    @property
    def n(self) -> int:
        return self.w.shape[0]

    @property
    def d(self) -> int:
        return len(self.clusters)

    @property
    def multiplicities(self) -> tuple[int, ...]:
        return tuple(c.mult for c in self.clusters)

    @property
    def eigenvalues(self) -> np.ndarray:
        return np.array([c.xi for c in self.clusters], dtype=np.complex128)

    def diagonal(self) -> np.ndarray:
        return np.concatenate([np.full(c.mult, c.xi) for c in self.clusters])

    def block(self, j: int) -> np.ndarray:
        """Orthonormal basis of the ``j``-th eigenspace."""
        return self.w[:, self.clusters[j].cols]

    def reconstruct(self) -> np.ndarray:
        return (self.w * self.diagonal()[np.newaxis, :]) @ self.w.conj().T

    def residual(self, u) -> float:
        return fro(as_matrix(u) - self.reconstruct())

    def cluster_of(self, z: complex, tol: float | None = None) -> int | None:
        """Index of the cluster whose representative is within ``tol`` of ``z``."""
        tol = max(self.cluster_tol, 1e-9) if tol is None else tol
        for j, c in enumerate(self.clusters):
            if abs(c.xi - z) <= tol:
                return j
        return None

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "cluster_tol": self.cluster_tol,
            "clusters": [
                {
                    "index": j,
                    "xi": [c.xi.real, c.xi.imag],
                    "arg": c.arg,
                    "mult": c.mult,
                    "col_range": [c.start, c.stop],
                }
                for j, c in enumerate(self.clusters)
            ],
        }


def _rotation_phase(u: np.ndarray) -> float:
    """Midpoint of the widest gap between eigenvalue arguments."""
    args = np.sort(np.angle(np.linalg.eigvals(u)) % TWO_PI)
    gaps = np.diff(np.concatenate([args, [args[0] + TWO_PI]]))
    k = int(np.argmax(gaps))
    return float(args[k] + gaps[k] / 2.0)


def _joint_eigenbasis(u: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    # Cayley transform of the rotated unitary is Hermitian and its spectrum is
    # an injective function of the eigen-argument, so a single eigh gives an
    # orthonormal eigenbasis of U with no grouping step.
    n = u.shape[0]
    phi = _rotation_phase(u)
    ur = u * np.exp(-1j * phi)
    eye = np.eye(n)
    k = 1j * np.linalg.solve((eye - ur).T, (eye + ur).T).T
    k = (k + k.conj().T) / 2.0
    _, v = np.linalg.eigh(k)
    lam = np.einsum("ij,ij->j", v.conj(), u @ v)
    return v, lam / np.abs(lam)


def cluster_arguments(args: np.ndarray, cluster_tol: float) -> list[list[int]]:
    """Group eigen-arguments (radians) into clusters on the circle.

    Adjacent sorted arguments whose arc distance is at most ``cluster_tol``
    are merged, including across the ``0 = 2 pi`` seam.  Returns lists of
    indices into ``args``, each sorted by unwrapped argument.

    Raises ``ClusteringUnstable`` when a gap falls in
    ``[cluster_tol / 2, 2 cluster_tol]``.
    """
    args = np.asarray(args, dtype=float) % TWO_PI
    m = args.size
    order = np.argsort(args, kind="stable")
    sorted_args = args[order]
    if m == 1:
        return [[int(order[0])]]
    gaps = np.empty(m)
    gaps[:-1] = np.diff(sorted_args)
    gaps[-1] = sorted_args[0] + TWO_PI - sorted_args[-1]
    for g in gaps:
        if cluster_tol / 2.0 <= g <= 2.0 * cluster_tol:
            raise ClusteringUnstable(g, cluster_tol)
    runs: list[list[int]] = [[int(order[0])]]
    for i in range(1, m):
        if gaps[i - 1] <= cluster_tol:
            runs[-1].append(int(order[i]))
        else:
            runs.append([int(order[i])])
    if len(runs) > 1 and gaps[-1] <= cluster_tol:
        runs[0] = runs.pop() + runs[0]
    return runs


def spectral_decompose_unitary(u, cluster_tol: float = 1e-8) -> UnitarySpectralDecomposition:
    """Clustered spectral decomposition of a unitary matrix.

    Raises ``NotUnitary`` if ``||U* U - I||_F > 1e-8`` and
    ``ClusteringUnstable`` if the clustering is ambiguous at ``cluster_tol``.
    """
    u = as_matrix(u)
    n = require_square(u)
    report = check_unitary(u, UNITARY_GATE)
    if not report.is_unitary:
        raise NotUnitary(report.residual)
    v, lam = _joint_eigenbasis(u)
    args = np.angle(lam) % TWO_PI
    runs = cluster_arguments(args, cluster_tol)

    groups = []
    for run in runs:
        # unwrap relative to the first member so seam-straddling runs average correctly
        ref = args[run[0]]
        rel = (args[run] - ref + math.pi) % TWO_PI - math.pi
        mean = (ref + float(np.mean(rel))) % TWO_PI
        key = mean - TWO_PI if TWO_PI - mean <= cluster_tol else mean
        ordered = [idx for _, idx in sorted(zip(rel, run))]
        groups.append((key, mean, ordered))
    groups.sort(key=lambda g: g[0])

    columns = []
    clusters = []
    start = 0
    for _, mean, idxs in groups:
        columns.extend(idxs)
        xi = complex(math.cos(mean), math.sin(mean))
        clusters.append(Cluster(xi=xi, mult=len(idxs), start=start))
        start += len(idxs)
    w = normalize_column_phases(v[:, columns])
    return UnitarySpectralDecomposition(
        w=w, clusters=tuple(clusters), cluster_tol=cluster_tol, raw_eigenvalues=lam[columns]
    )


def unitary_with_spectrum(eigenvalues, seed=0) -> np.ndarray:
    """``W diag(eigenvalues) W*`` for a Haar-random ``W``."""
    lam = np.asarray(eigenvalues, dtype=np.complex128)
    w = haar_unitary(lam.size, seed)
    return (w * lam[np.newaxis, :]) @ w.conj().T


# ---------------------------------------------------------------------------
# JSON


def matrix_to_dict(m) -> dict:
    m = as_matrix(m)
    flat = m.reshape(-1)
    return {
        "rows": int(m.shape[0]),
        "cols": int(m.shape[1]),
        "data": [[float(z.real), float(z.imag)] for z in flat],
    }


def matrix_from_dict(obj) -> np.ndarray:
    try:
        rows = int(obj["rows"])
        cols = int(obj["cols"])
        data = obj["data"]
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"malformed matrix object: {exc}") from exc
    if rows < 1 or cols < 1 or len(data) != rows * cols:
        raise ParseError(f"data length {len(data)} does not match {rows}x{cols}")
    try:
        arr = np.array([complex(float(re), float(im)) for re, im in data], dtype=np.complex128)
    except (TypeError, ValueError) as exc:
        raise ParseError(f"bad matrix entry: {exc}") from exc
    if not np.all(np.isfinite(arr)):
        raise ParseError("matrix contains NaN or Inf")
    return arr.reshape(rows, cols)


def dumps_matrix(m, **extra) -> str:
    obj = matrix_to_dict(m)
    obj.update(extra)
    return json.dumps(obj)


def loads_matrix(text: str) -> np.ndarray:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(str(exc)) from exc
    return matrix_from_dict(obj)


def save_matrix(path, m, **extra) -> None:
    Path(path).write_text(dumps_matrix(m, **extra) + "\n")


def load_matrix(path) -> np.ndarray:
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise ParseError(str(exc)) from exc
    return loads_matrix(text)
