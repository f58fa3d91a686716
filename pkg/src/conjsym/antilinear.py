"""Antilinear operators on C^n and conjugations.

An antilinear operator is stored as a square matrix ``a`` acting by
``x -> a @ conj(x)``.  It is a conjugation exactly when ``a`` is unitary and
symmetric (``a.T == a``).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import DimensionMismatch, NotSymmetricUnitary, ParseError
from .linalg import (
    as_matrix,
    as_vector,
    fro,
    haar_unitary,
    matrix_from_dict,
    matrix_to_dict,
    require_square,
    symmetry_residual,
    unitary_residual,
)

# construction-time invariant check
CONJUGATION_TOL = 1e-10
# accepted residual for derived factorizations
FACTOR_TOL = 1e-9
# equality of antilinear operators
EQUALITY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class AntilinearOp:
    """``x -> a @ conj(x)`` for a square matrix ``a``."""

    a: np.ndarray

    def __post_init__(self):
        a = as_matrix(self.a)
        require_square(a)
        object.__setattr__(self, "a", a)

    @property
    def n(self) -> int:
        return self.a.shape[0]

    def __call__(self, x) -> np.ndarray:
        return apply(self, x)

    def __eq__(self, other) -> bool:
        if not isinstance(other, AntilinearOp):
            return NotImplemented
        return self.a.shape == other.a.shape and fro(self.a - other.a) <= EQUALITY_TOL

    __hash__ = None


class Conjugation(AntilinearOp):
    """Antilinear, isometric, involutive map; ``a`` symmetric unitary.

    The invariants are checked at construction with tolerance ``tol``.
    """

    def __init__(self, a, tol: float = CONJUGATION_TOL):
        super().__init__(a)
        ur = unitary_residual(self.a)
        sr = symmetry_residual(self.a)
        if ur > tol or sr > tol:
            raise NotSymmetricUnitary(ur, sr)

    def __repr__(self) -> str:
        return f"Conjugation(n={self.n})"

    @classmethod
    def standard(cls, n: int) -> "Conjugation":
        """Entrywise complex conjugation."""
        return cls(np.eye(n))


def apply(op: AntilinearOp, x) -> np.ndarray:
    """Apply ``op`` to a vector, or column-wise to a matrix."""
    arr = np.asarray(x, dtype=np.complex128)
    if arr.shape[0] != op.n:
        raise DimensionMismatch(f"operator of size {op.n} applied to input of shape {arr.shape}")
    if arr.ndim == 1:
        arr = as_vector(arr, op.n)
    return op.a @ arr.conj()


def compose(f, g):
    """Composition ``f o g`` of linear (ndarray) and antilinear operators.

    antilinear o antilinear is linear with matrix ``A conj(B)``;
    linear o antilinear is antilinear with ``M A``;
    antilinear o linear is antilinear with ``A conj(M)``.
    """
    fa = isinstance(f, AntilinearOp)
    ga = isinstance(g, AntilinearOp)
    fm = f.a if fa else as_matrix(f)
    gm = g.a if ga else as_matrix(g)
    if fm.shape[1] != gm.shape[0]:
        raise DimensionMismatch(f"cannot compose {fm.shape} with {gm.shape}")
    if fa and ga:
        return fm @ gm.conj()
    if fa:
        return AntilinearOp(fm @ gm.conj())
    if ga:
        return AntilinearOp(fm @ gm)
    return fm @ gm


@dataclass(frozen=True)
class ConjugationReport:
    is_conjugation: bool
    unitary_residual: float
    symmetry_residual: float
    involution_residual: float

    def __bool__(self) -> bool:
        return self.is_conjugation


def is_conjugation(op, tol: float = CONJUGATION_TOL) -> ConjugationReport:
    a = op.a if isinstance(op, AntilinearOp) else as_matrix(op)
    n = require_square(a)
    ur = unitary_residual(a)
    sr = symmetry_residual(a)
    ir = fro(a @ a.conj() - np.eye(n))
    return ConjugationReport(ur <= tol and sr <= tol, ur, sr, ir)


@dataclass(frozen=True)
class SymmetryReport:
    is_csymmetric: bool
    residual: float

    def __bool__(self) -> bool:
        return self.is_csymmetric


def csymmetric_residual(u, c: AntilinearOp) -> float:
    """``||C U C - U*||_F``; ``C U C`` has matrix ``a conj(u) conj(a)``."""
    u = as_matrix(u)
    n = require_square(u)
    if n != c.n:
        raise DimensionMismatch(f"unitary of size {n} vs conjugation of size {c.n}")
    return fro(c.a @ u.conj() @ c.a.conj() - u.conj().T)


def is_csymmetric(u, c: AntilinearOp, tol: float = FACTOR_TOL) -> SymmetryReport:
    r = csymmetric_residual(u, c)
    return SymmetryReport(r <= tol, r)


def isometry_defect(c: AntilinearOp) -> float:
    """``||a* a - I||_F``; zero iff ``||Cx|| = ||x||`` for all ``x``."""
    return unitary_residual(c.a)


def involution_defect(c: AntilinearOp) -> float:
    """``||C^2 - I||_F``."""
    return fro(c.a @ c.a.conj() - np.eye(c.n))


def transfer(v, c: AntilinearOp) -> AntilinearOp:
    """``V C V*`` as an antilinear operator (matrix ``v a v^T``)."""
    v = as_matrix(v)
    if v.shape != (c.n, c.n):
        raise DimensionMismatch(f"unitary of shape {v.shape} vs conjugation of size {c.n}")
    m = v @ c.a @ v.T
    if isinstance(c, Conjugation):
        return Conjugation(m, tol=FACTOR_TOL)
    return AntilinearOp(m)


def random_symmetric_unitary(n: int, seed=0) -> np.ndarray:
    """``A A^T`` with ``A`` Haar: circular orthogonal ensemble."""
    a = haar_unitary(n, seed)
    v = a @ a.T
    return (v + v.T) / 2.0


def random_conjugation(n: int, seed=0) -> Conjugation:
    return Conjugation(random_symmetric_unitary(n, seed))


# ---------------------------------------------------------------------------
# Takagi factorization of symmetric unitaries


@dataclass(frozen=True, eq=False)
class TakagiFactor:
    """Unitary ``q`` with ``v = q q^T``."""

    q: np.ndarray
    residual: float


def _widest_gap_phase(phases: np.ndarray) -> float:
    args = np.sort(phases % (2 * math.pi))
    gaps = np.diff(np.concatenate([args, [args[0] + 2 * math.pi]]))
    k = int(np.argmax(gaps))
    return float(args[k] + gaps[k] / 2.0)


def takagi_symmetric_unitary(v, tol: float = 1e-8) -> TakagiFactor:
    """Factor a symmetric unitary as ``v = q q^T`` with ``q`` unitary.

    For symmetric unitary ``v`` the real and imaginary parts commute, so
    ``v = O diag(exp(i theta)) O^T`` with ``O`` real orthogonal and
    ``q = O diag(exp(i theta / 2))``.  ``O`` comes from one real symmetric
    eigensolve: the Cayley transform of ``v`` rotated away from its spectrum
    is Hermitian and symmetric, hence real symmetric.  Half-angles use the
    principal branch with ``theta`` in ``[0, 2 pi)``.
    """
    v = as_matrix(v)
    n = require_square(v)
    ur = unitary_residual(v)
    sr = symmetry_residual(v)
    if ur > tol or sr > tol:
        raise NotSymmetricUnitary(ur, sr)
    v = (v + v.T) / 2.0
    phi = _widest_gap_phase(np.angle(np.linalg.eigvals(v)))
    vr = v * np.exp(-1j * phi)
    eye = np.eye(n)
    k = 1j * np.linalg.solve((eye - vr).T, (eye + vr).T).T
    k = ((k + k.T) / 2.0).real
    k = (k + k.T) / 2.0
    _, o = np.linalg.eigh(k)
    lam = np.einsum("ji,jk,ki->i", o, v, o)
    theta = np.angle(lam) % (2 * math.pi)
    q = o * np.exp(0.5j * theta)[np.newaxis, :]
    return TakagiFactor(q=q, residual=fro(v - q @ q.T))


def real_basis(c: Conjugation) -> np.ndarray:
    """Unitary ``Q`` whose columns are fixed by ``c``."""
    return takagi_symmetric_unitary(c.a).q


# ---------------------------------------------------------------------------
# JSON: the matrix format tagged with "kind": "antilinear"


def antilinear_to_dict(op: AntilinearOp) -> dict:
    out = matrix_to_dict(op.a)
    out["kind"] = "antilinear"
    return out


def conjugation_from_dict(obj, tol: float = FACTOR_TOL) -> Conjugation:
    """Parse and validate; raises ``ParseError`` or ``NotSymmetricUnitary``."""
    if not isinstance(obj, dict) or obj.get("kind") != "antilinear":
        raise ParseError('conjugation objects need "kind": "antilinear"')
    return Conjugation(matrix_from_dict(obj), tol=tol)


def save_conjugation(path, op: AntilinearOp) -> None:
    Path(path).write_text(json.dumps(antilinear_to_dict(op)) + "\n")


def load_conjugation(path, tol: float = FACTOR_TOL) -> Conjugation:
    try:
        obj = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ParseError(str(exc)) from exc
    return conjugation_from_dict(obj, tol)
