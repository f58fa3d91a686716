"""The family of conjugations ``C`` with ``C U C = U*`` for a unitary matrix ``U``.

With ``U = W diag(xi_j I_{n_j}) W*`` every member is
``C = W diag(V_1, ..., V_d) J W*`` where each ``V_j`` is an ``n_j x n_j``
symmetric unitary and ``J`` is entrywise conjugation.  As an antilinear
matrix this is ``a = W blockdiag(V_j) W^T``.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .antilinear import (
    FACTOR_TOL,
    AntilinearOp,
    Conjugation,
    compose,
    csymmetric_residual,
    is_conjugation,
)
from .errors import DimensionMismatch, InvalidBlock, NotMember, NotUnitary
from .linalg import (
    UNITARY_GATE,
    UnitarySpectralDecomposition,
    _rng,
    as_matrix,
    check_unitary,
    fro,
    haar_unitary,
    matrix_to_dict,
    opnorm,
    require_square,
    spectral_decompose_unitary,
    symmetry_residual,
    unitary_residual,
)
from .spectral import cluster_projections


@dataclass(frozen=True, eq=False)
class ConjugationParametrization:
    """Spectral data of ``u`` that parametrizes its conjugation family."""

    u: np.ndarray
    dec: UnitarySpectralDecomposition

    @property
    def block_dims(self) -> tuple[int, ...]:
        return self.dec.multiplicities

    @property
    def n(self) -> int:
        return self.dec.n

    @property
    def real_dimension(self) -> int:
        """Real dimension of the family: ``sum n_j (n_j + 1) / 2``."""
        return sum(k * (k + 1) // 2 for k in self.block_dims)

    def to_dict(self) -> dict:
        out = self.dec.to_dict()
        out["block_dims"] = list(self.block_dims)
        out["family_real_dimension"] = self.real_dimension
        return out


def parametrize(u, cluster_tol: float = 1e-8) -> ConjugationParametrization:
    u = as_matrix(u)
    return ConjugationParametrization(u=u, dec=spectral_decompose_unitary(u, cluster_tol))


def _coerce(p) -> ConjugationParametrization:
    if isinstance(p, ConjugationParametrization):
        return p
    if isinstance(p, UnitarySpectralDecomposition):
        return ConjugationParametrization(u=p.reconstruct(), dec=p)
    return parametrize(p)


def validate_blocks(p: ConjugationParametrization, blocks, tol: float = FACTOR_TOL) -> list[np.ndarray]:
    blocks = [as_matrix(b) for b in blocks]
    if len(blocks) != p.dec.d:
        raise DimensionMismatch(f"{len(blocks)} blocks for {p.dec.d} clusters")
    for j, (b, k) in enumerate(zip(blocks, p.block_dims)):
        if b.shape != (k, k):
            raise DimensionMismatch(f"block {j} has shape {b.shape}, expected {(k, k)}")
        ur = unitary_residual(b)
        sr = symmetry_residual(b)
        if ur > tol or sr > tol:
            raise InvalidBlock(j, ur, sr)
    return blocks


def build_from_blocks(p, blocks, tol: float = FACTOR_TOL) -> Conjugation:
    """Member ``W diag(V_1..V_d) J W*`` with antilinear matrix ``W blockdiag(V) W^T``."""
    p = _coerce(p)
    blocks = validate_blocks(p, blocks, tol)
    w = p.dec.w
    a = w @ scipy.linalg.block_diag(*blocks) @ w.T
    return Conjugation((a + a.T) / 2.0, tol=tol)


def canonical_blocks(p) -> list[np.ndarray]:
    p = _coerce(p)
    return [np.eye(k, dtype=np.complex128) for k in p.block_dims]


def canonical_member(p) -> Conjugation:
    """All ``V_j = I``: the conjugation with matrix ``W W^T``."""
    p = _coerce(p)
    return build_from_blocks(p, canonical_blocks(p))


def sample_blocks(p, seed=0) -> list[np.ndarray]:
    """Independent ``A_j A_j^T`` with ``A_j`` Haar, drawn from one seeded stream."""
    p = _coerce(p)
    rng = _rng(seed)
    blocks = []
    for k in p.block_dims:
        a = haar_unitary(k, rng)
        v = a @ a.T
        blocks.append((v + v.T) / 2.0)
    return blocks


def sample_member(p, seed=0) -> Conjugation:
    p = _coerce(p)
    return build_from_blocks(p, sample_blocks(p, seed))


def block_form(p, c: AntilinearOp) -> np.ndarray:
    """``W* a conj(W)``: the member's matrix in the eigenbasis, block diagonal iff member."""
    p = _coerce(p)
    if c.n != p.n:
        raise DimensionMismatch(f"conjugation of size {c.n} vs unitary of size {p.n}")
    w = p.dec.w
    return w.conj().T @ c.a @ w.conj()


def off_block_part(p, m: np.ndarray) -> np.ndarray:
    off = m.copy()
    for c in p.dec.clusters:
        off[c.cols, c.cols] = 0.0
    return off


def extract_blocks(p, c: AntilinearOp, tol: float = FACTOR_TOL) -> list[np.ndarray]:
    """Recover ``V_1..V_d`` from a member, or raise ``NotMember``.

    Membership requires the off-block part of ``W* a conj(W)`` to have
    Frobenius norm at most ``tol`` and every diagonal block to be a
    symmetric unitary within ``tol``.
    """
    p = _coerce(p)
    m = block_form(p, c)
    off = off_block_part(p, m)
    off_fro = fro(off)
    blocks = [m[cl.cols, cl.cols].copy() for cl in p.dec.clusters]
    defects = [(unitary_residual(b), symmetry_residual(b)) for b in blocks]
    if off_fro > tol or any(ur > tol or sr > tol for ur, sr in defects):
        raise NotMember(opnorm(off), off_fro, defects)
    return blocks


def is_member(p, c: AntilinearOp, tol: float = FACTOR_TOL) -> bool:
    try:
        extract_blocks(p, c, tol)
    except NotMember:
        return False
    return True


@dataclass(frozen=True)
class CommutantReport:
    symmetric_ok: bool
    intertwine_ok: bool
    symmetric_residual: float
    intertwine_residual: float

    def __bool__(self) -> bool:
        return self.symmetric_ok and self.intertwine_ok


def commutant_conditions(u, c: AntilinearOp, basis=None, tol: float = FACTOR_TOL) -> CommutantReport:
    """Check ``[V]^t = [V]`` and ``[V][U]^t = [U][V]`` for ``V = C J_B`` in basis ``B``.

    ``J_B`` fixes the columns of ``basis`` (default: standard basis), so
    ``[V]_B = B* a conj(B)`` and ``[U]_B = B* U B``.  The conjunction holds
    iff ``C U C = U*``.
    """
    u = as_matrix(u)
    n = require_square(u)
    b = np.eye(n, dtype=np.complex128) if basis is None else as_matrix(basis)
    if b.shape != (n, n) or c.n != n:
        raise DimensionMismatch(f"unitary {u.shape}, basis {b.shape}, conjugation size {c.n}")
    if unitary_residual(b) > UNITARY_GATE:
        raise NotUnitary(unitary_residual(b), "basis is not orthonormal")
    vb = b.conj().T @ c.a @ b.conj()
    ub = b.conj().T @ u @ b
    sym = fro(vb - vb.T)
    inter = fro(vb @ ub.T - ub @ vb)
    return CommutantReport(sym <= tol, inter <= tol, sym, inter)


def factor_unitary(u, cluster_tol: float = 1e-8) -> tuple[Conjugation, Conjugation]:
    """Conjugations ``J1, J2`` in the family of ``u`` with ``u = J1 J2``.

    ``J1`` is the canonical member and ``J2 = U* J1``.
    """
    p = parametrize(u, cluster_tol)
    j1 = canonical_member(p)
    j2_op = compose(p.u.conj().T, j1)
    j2 = Conjugation(j2_op.a, tol=FACTOR_TOL)
    return j1, j2


def transport_family(w, c: AntilinearOp) -> Conjugation:
    """``W C W*``; maps the family of ``U`` onto the family of ``W U W*``."""
    w = as_matrix(w)
    report = check_unitary(w, UNITARY_GATE)
    if not report.is_unitary:
        raise NotUnitary(report.residual)
    if w.shape[0] != c.n:
        raise DimensionMismatch(f"unitary of size {w.shape[0]} vs conjugation of size {c.n}")
    a = w @ c.a @ w.T
    return Conjugation((a + a.T) / 2.0, tol=FACTOR_TOL)


@dataclass(frozen=True)
class SpectralCommutationReport:
    commutes: bool
    residuals: tuple[float, ...]

    @property
    def max_residual(self) -> float:
        return max(self.residuals, default=0.0)

    def __bool__(self) -> bool:
        return self.commutes


def spectral_commutation_residuals(dec: UnitarySpectralDecomposition, c: AntilinearOp) -> list[float]:
    """``||C P_j C - P_j||_F`` per cluster; ``C P C`` has matrix ``a conj(P) conj(a)``."""
    return [fro(c.a @ pj.conj() @ c.a.conj() - pj) for pj in cluster_projections(dec)]


def check_spectral_commutation(u, c: AntilinearOp, tol: float = FACTOR_TOL) -> SpectralCommutationReport:
    """Whether ``C E(omega) C = E(omega)`` for every cluster (hence every subset)."""
    dec = u.dec if isinstance(u, ConjugationParametrization) else (
        u if isinstance(u, UnitarySpectralDecomposition) else spectral_decompose_unitary(u)
    )
    res = spectral_commutation_residuals(dec, c)
    return SpectralCommutationReport(all(r <= tol for r in res), tuple(res))


def membership_residuals(u, c: AntilinearOp) -> dict:
    u = as_matrix(u)
    rep = is_conjugation(c)
    return {
        "csymmetric": csymmetric_residual(u, c),
        "unitary": rep.unitary_residual,
        "symmetry": rep.symmetry_residual,
        "involution": rep.involution_residual,
    }


# ---------------------------------------------------------------------------
# direct route: solve the commutant conditions without the spectral theorem


def symmetric_intertwiner_space(u, rtol: float = 1e-10) -> np.ndarray:
    """Basis of ``{V : V^T = V, V U^T = U V}`` as a stack of ``n x n`` matrices.

    Solved as a linear null space on ``vec(V)``; no eigendecomposition of
    ``u`` is involved.
    """
    u = as_matrix(u)
    n = require_square(u)
    eye = np.eye(n)
    # column-major vec: vec(A X B) = (B^T kron A) vec(X)
    inter = np.kron(u, eye) - np.kron(eye, u)
    perm = np.zeros((n * n, n * n))
    for i in range(n):
        for j in range(n):
            perm[i * n + j, j * n + i] = 1.0
    sym = np.eye(n * n) - perm
    system = np.vstack([inter, sym])
    _, s, vh = np.linalg.svd(system)
    rank = int(np.sum(s > rtol * s[0]))
    null = vh[rank:].conj()
    return np.array([vec.reshape(n, n, order="F") for vec in null])


def member_from_commutant(u, seed=0) -> Conjugation:
    """Random member built only from the commutant conditions in the standard basis.

    A random element of the symmetric intertwiner space is replaced by its
    unitary polar factor, which stays symmetric and intertwining.
    """
    space = symmetric_intertwiner_space(u)
    rng = _rng(seed)
    coeffs = rng.standard_normal(len(space)) + 1j * rng.standard_normal(len(space))
    x = np.tensordot(coeffs, space, axes=1)
    v, _ = scipy.linalg.polar(x)
    return Conjugation((v + v.T) / 2.0, tol=FACTOR_TOL)


def blocks_to_json(blocks) -> list[dict]:
    return [matrix_to_dict(b) for b in blocks]
