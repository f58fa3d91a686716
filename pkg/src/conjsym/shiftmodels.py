"""Discrete bilateral-shift models on roots of unity.

The circle is replaced by the grid ``xi_m = exp(2 pi i m / (nN))``.  For
``psi(z) = z^N`` the multiplication operator ``M_psi`` is diagonal with each
``n``-th root of unity repeated ``N`` times.  The Wold transform splits a
grid function ``f`` into ``N`` functions on the base grid
``eta_k = exp(2 pi i k / n)`` with

    f(xi) = sum_j xi^(j-1) f_j(xi^N),

where ``f_j`` carries the DFT coefficients ``f^(N k + j - 1)``.  Functions
are sampled values; norms are mean-square over the grid (normalized counting
measure), which makes the split norm-preserving.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property

import numpy as np

from .antilinear import FACTOR_TOL, Conjugation, csymmetric_residual, involution_defect, isometry_defect
from .errors import BadPartition, DimensionMismatch, InvalidPhi, RangeError
from .linalg import as_vector, dft_matrix, fro, opnorm, symmetry_residual, unitary_residual


def mean_square_norm(f) -> float:
    f = np.asarray(f)
    return float(np.sqrt(np.mean(np.abs(f) ** 2)))


def principal_arg(z) -> np.ndarray:
    """Argument in ``(-pi, pi]``."""
    t = np.angle(z)
    return np.where(t <= -math.pi, t + 2 * math.pi, t)


@dataclass(frozen=True)
class CyclicShiftModel:
    """Permutation ``e_k -> e_{k+1 mod n}``."""

    n: int

    @cached_property
    def u(self) -> np.ndarray:
        return np.roll(np.eye(self.n, dtype=np.complex128), 1, axis=0)

    def fourier_intertwiner(self) -> np.ndarray:
        """The DFT matrix ``F``: ``F diag(grid) F* = u``."""
        return dft_matrix(self.n)


@dataclass(frozen=True)
class PowerShiftModel:
    n: int
    N: int = 1

    def __post_init__(self):
        if self.n < 1 or self.N < 1:
            raise ValueError("grid size and symbol power must be positive")

    @property
    def size(self) -> int:
        return self.n * self.N

    @cached_property
    def grid(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.size) / self.size)

    @cached_property
    def base_grid(self) -> np.ndarray:
        return np.exp(2j * np.pi * np.arange(self.n) / self.n)

    @property
    def base_args(self) -> np.ndarray:
        return principal_arg(self.base_grid)

    @cached_property
    def symbol_values(self) -> np.ndarray:
        # xi_m^N = eta_(m mod n); indexing keeps repeated values bitwise equal
        return self.base_grid[np.arange(self.size) % self.n]

    @cached_property
    def u(self) -> np.ndarray:
        return np.diag(self.symbol_values)

    def basis_functions(self) -> np.ndarray:
        """Model-space basis ``1, xi, ..., xi^(N-1)`` sampled on the grid, shape ``(N, nN)``."""
        m = np.arange(self.size)
        return np.array([self.grid[(j * m) % self.size] for j in range(self.N)])

    @cached_property
    def wold_matrix(self) -> np.ndarray:
        """Matrix of the Wold transform, rows ordered ``(f_1, ..., f_N)``."""
        return np.column_stack(
            [np.concatenate(wold_transform(self, e)) for e in np.eye(self.size, dtype=np.complex128)]
        )

    def unitary_wold_matrix(self) -> np.ndarray:
        """Wold transform scaled to be unitary for the Euclidean norm."""
        return self.wold_matrix * math.sqrt(self.N)


def _check_model_vector(model: PowerShiftModel, f) -> np.ndarray:
    arr = np.asarray(f, dtype=np.complex128).reshape(-1)
    if arr.size != model.size:
        raise DimensionMismatch(f"grid function of length {arr.size}, expected {model.size}")
    return as_vector(arr)


def wold_transform(model: PowerShiftModel, f) -> list[np.ndarray]:
    """Split ``f`` on the ``nN`` grid into ``N`` functions on the ``n`` grid."""
    f = _check_model_vector(model, f)
    n, N = model.n, model.N
    coeffs = np.fft.fft(f) / model.size
    by_residue = coeffs.reshape(n, N)
    return [np.fft.ifft(by_residue[:, j]) * n for j in range(N)]


def inverse_wold_transform(model: PowerShiftModel, parts) -> np.ndarray:
    n, N = model.n, model.N
    parts = [np.asarray(p, dtype=np.complex128).reshape(-1) for p in parts]
    if len(parts) != N or any(p.size != n for p in parts):
        raise DimensionMismatch(f"expected {N} parts of length {n}")
    by_residue = np.column_stack([np.fft.fft(p) / n for p in parts])
    return np.fft.ifft(by_residue.reshape(-1)) * model.size


def reassemble(model: PowerShiftModel, parts) -> np.ndarray:
    """``sum_j h_j (f_j o psi)`` evaluated pointwise; independent of the FFT path."""
    h = model.basis_functions()
    idx = np.arange(model.size) % model.n
    return sum(h[j] * np.asarray(parts[j])[idx] for j in range(model.N))


@dataclass(frozen=True)
class WoldReport:
    round_trip: float
    parseval: float


def wold_check(model: PowerShiftModel, f) -> WoldReport:
    parts = wold_transform(model, f)
    back = inverse_wold_transform(model, parts)
    split = sum(mean_square_norm(p) ** 2 for p in parts)
    return WoldReport(
        round_trip=float(np.linalg.norm(np.asarray(f) - back)),
        parseval=abs(split - mean_square_norm(f) ** 2),
    )


def inflated_shift(model: PowerShiftModel) -> np.ndarray:
    """``M_xi`` repeated ``N`` times on the base grid."""
    return np.kron(np.eye(model.N), np.diag(model.base_grid))


def intertwine_check(model: PowerShiftModel) -> float:
    """Operator-norm residual of ``W M_psi W^{-1}`` against the inflated base shift.

    Evaluated column by column on the standard basis of the block space.
    """
    w = model.wold_matrix
    target = inflated_shift(model)
    worst = 0.0
    for k in range(model.size):
        e = np.zeros(model.size, dtype=np.complex128)
        e[k] = 1.0
        pulled = inverse_wold_transform(model, np.split(e, model.N))
        pushed = w @ (model.u @ pulled)
        worst = max(worst, float(np.linalg.norm(pushed - target[:, k])))
    return max(worst, opnorm(w @ model.u - target @ w))


# ---------------------------------------------------------------------------
# symbols


@dataclass(frozen=True, eq=False)
class PhiSymbol:
    """``N x N`` matrices indexed by the base grid, shape ``(n, N, N)``."""

    values: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.complex128)
        if v.ndim != 3 or v.shape[1] != v.shape[2]:
            raise DimensionMismatch(f"symbol values must have shape (n, N, N), got {v.shape}")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def N(self) -> int:
        return self.values.shape[1]

    def defects(self) -> list[tuple[float, float]]:
        return [(unitary_residual(p), symmetry_residual(p)) for p in self.values]

    def validate(self, tol: float = FACTOR_TOL) -> "PhiSymbol":
        for k, (ur, sr) in enumerate(self.defects()):
            if ur > tol or sr > tol:
                raise InvalidPhi(k, ur, sr)
        return self


def unimodular_symbol(model: PowerShiftModel, phases) -> PhiSymbol:
    """``N = 1`` symbol ``u = exp(i phases)`` on the base grid; gives ``C = M_u J``."""
    if model.N != 1:
        raise ValueError("unimodular symbols need N = 1")
    u = np.exp(1j * np.broadcast_to(np.asarray(phases, dtype=float), (model.n,)))
    return PhiSymbol(u.reshape(model.n, 1, 1))


def constant_phase_symbol(model: PowerShiftModel, theta: float = 0.0) -> PhiSymbol:
    """``exp(i theta) I_N`` at every grid point."""
    vals = np.broadcast_to(np.exp(1j * theta) * np.eye(model.N), (model.n, model.N, model.N))
    return PhiSymbol(vals.copy())


def _grid_function(values, n: int, name: str) -> np.ndarray:
    arr = np.broadcast_to(np.asarray(values, dtype=float), (n,)).copy()
    if not np.all(np.isfinite(arr)):
        raise RangeError(f"{name} must be finite")
    return arr


def z2_family(model: PowerShiftModel, s, alpha, beta) -> PhiSymbol:
    """Symmetric unitary symbol for ``psi(z) = z^2`` from real grid functions.

    ``phi11 = exp(i alpha) s``, ``phi22 = exp(i beta) s`` and
    ``phi12 = phi21 = i exp(i (alpha + beta) / 2) sqrt(1 - s^2)``,
    with ``0 <= s <= 1`` on the base grid.  ``s``, ``alpha``, ``beta`` may be
    arrays on the base grid, scalars, or callables of the principal argument.
    """
    if model.N != 2:
        raise ValueError("z2_family needs N = 2")
    t = model.base_args
    s, alpha, beta = (f(t) if callable(f) else f for f in (s, alpha, beta))
    s = _grid_function(s, model.n, "s")
    alpha = _grid_function(alpha, model.n, "alpha")
    beta = _grid_function(beta, model.n, "beta")
    if np.any(s < 0) or np.any(s > 1):
        raise RangeError("s must lie in [0, 1] at every grid point")
    off = 1j * np.exp(0.5j * (alpha + beta)) * np.sqrt(1.0 - s**2)
    vals = np.empty((model.n, 2, 2), dtype=np.complex128)
    vals[:, 0, 0] = np.exp(1j * alpha) * s
    vals[:, 1, 1] = np.exp(1j * beta) * s
    vals[:, 0, 1] = off
    vals[:, 1, 0] = off
    return PhiSymbol(vals)


def sincos_symbol(model: PowerShiftModel) -> PhiSymbol:
    """``[[sin t, cos t], [cos t, -sin t]]``: the family with ``s = sin t``, ``alpha = 0``, ``beta = -pi``.

    Written in closed form because ``sin t`` is negative on half the circle;
    with signed ``cos t`` off the diagonal the matrix is a real reflection.
    """
    if model.N != 2:
        raise ValueError("sincos symbol needs N = 2")
    t = model.base_args
    s, c = np.sin(t), np.cos(t)
    vals = np.empty((model.n, 2, 2), dtype=np.complex128)
    vals[:, 0, 0] = s
    vals[:, 1, 1] = -s
    vals[:, 0, 1] = c
    vals[:, 1, 0] = c
    return PhiSymbol(vals)


def lambda_drift_symbol(model: PowerShiftModel, s: float = 0.6, lam: float = 1.5) -> PhiSymbol:
    """Constant ``s``, ``alpha = lam t``, ``beta = -pi - lam t``."""
    return z2_family(model, s, lambda t: lam * t, lambda t: -math.pi - lam * t)


def conjugation_matrix_from_phi(model: PowerShiftModel, phi: PhiSymbol) -> np.ndarray:
    """Antilinear matrix of ``W^{-1} M_Phi J W`` on the ``nN`` grid (no validation)."""
    if phi.n != model.n or phi.N != model.N:
        raise DimensionMismatch(
            f"symbol of shape ({phi.n}, {phi.N}) for model ({model.n}, {model.N})"
        )
    n, N = model.n, model.N
    w = model.unitary_wold_matrix()
    # block space index j * n + k -> (component j, base point k)
    m_phi = np.zeros((n * N, n * N), dtype=np.complex128)
    for k in range(n):
        idx = np.arange(N) * n + k
        m_phi[np.ix_(idx, idx)] = phi.values[k]
    return w.conj().T @ m_phi @ w.conj()


def conjugation_from_phi(model: PowerShiftModel, phi: PhiSymbol, tol: float = FACTOR_TOL) -> Conjugation:
    phi.validate(tol)
    a = conjugation_matrix_from_phi(model, phi)
    return Conjugation((a + a.T) / 2.0, tol=tol)


def apply_phi_formula(model: PowerShiftModel, phi: PhiSymbol, f) -> np.ndarray:
    """``sum_j conj(f_j o psi) sum_k h_k (phi_kj o psi)`` evaluated pointwise."""
    parts = wold_transform(model, f)
    h = model.basis_functions()
    idx = np.arange(model.size) % model.n
    out = np.zeros(model.size, dtype=np.complex128)
    for j in range(model.N):
        inner = sum(h[k] * phi.values[idx, k, j] for k in range(model.N))
        out += parts[j].conj()[idx] * inner
    return out


@dataclass(frozen=True)
class PhiReport:
    csymmetric: float
    involution: float
    isometry: float
    symmetry: float
    formula: float

    def max(self) -> float:
        return max(self.csymmetric, self.involution, self.isometry, self.symmetry, self.formula)

    def as_dict(self) -> dict:
        return {**self.__dict__, "max": self.max()}


def phi_residuals(model: PowerShiftModel, phi: PhiSymbol, seed=0) -> PhiReport:
    c = conjugation_from_phi(model, phi)
    rng = np.random.default_rng(seed)
    f = rng.standard_normal(model.size) + 1j * rng.standard_normal(model.size)
    formula = float(np.linalg.norm(c(f) - apply_phi_formula(model, phi, f)))
    return PhiReport(
        csymmetric=csymmetric_residual(model.u, c),
        involution=involution_defect(c),
        isometry=isometry_defect(c),
        symmetry=symmetry_residual(c.a),
        formula=formula,
    )


def z2_identity_residuals(phi: PhiSymbol) -> dict:
    """Max deviation of ``|phi11|^2 + |phi21|^2 = 1``, ``|phi11| = |phi22|`` and the cross term."""
    v = phi.values
    p11, p21, p22 = v[:, 0, 0], v[:, 1, 0], v[:, 1, 1]
    return {
        "column_norm": float(np.max(np.abs(np.abs(p11) ** 2 + np.abs(p21) ** 2 - 1.0))),
        "diagonal_modulus": float(np.max(np.abs(np.abs(p11) - np.abs(p22)))),
        "cross_term": float(np.max(np.abs(p11.conj() * p21 + p21.conj() * p22))),
    }


# ---------------------------------------------------------------------------
# DFT analog of the Fourier-Plancherel transform

FOURTH_ROOTS = (1.0 + 0j, -1.0 + 0j, -1j, 1j)


def dft_model(n: int, cluster_tol: float = 1e-8) -> dict:
    """Spectral report of the unitary DFT matrix ``F_n``."""
    from .conjfamily import parametrize

    if n < 2:
        raise ValueError("n must be at least 2")
    f = dft_matrix(n)
    p = parametrize(f, cluster_tol)
    mult = {}
    for root in FOURTH_ROOTS:
        j = p.dec.cluster_of(root, tol=1e-9)
        mult[_root_label(root)] = 0 if j is None else p.dec.clusters[j].mult
    stray = [
        c.xi for c in p.dec.clusters if min(abs(c.xi - r) for r in FOURTH_ROOTS) > 1e-9
    ]
    return {
        "n": n,
        "multiplicities": mult,
        "eigenvalues_in_fourth_roots": not stray,
        "parametrization": p.to_dict(),
        "block_dims": list(p.block_dims),
        "transpose_residual": symmetry_residual(f),
        "entrywise_conjugation_residual": csymmetric_residual(f, Conjugation.standard(n)),
    }


def _root_label(z: complex) -> str:
    return {1.0 + 0j: "1", -1.0 + 0j: "-1", -1j: "-i", 1j: "i"}[z]


# ---------------------------------------------------------------------------
# the three-summand flip example


@dataclass(frozen=True, eq=False)
class FlipFixture:
    omega1: np.ndarray
    omega2: np.ndarray
    u: np.ndarray
    c: Conjugation
    k_basis: np.ndarray
    witness: np.ndarray
    witness_defect: float
    csymmetric_residual: float

    def as_dict(self) -> dict:
        return {
            "omega1": self.omega1.tolist(),
            "omega2": self.omega2.tolist(),
            "dimension": int(self.u.shape[0]),
            "csymmetric_residual": self.csymmetric_residual,
            "witness_defect": self.witness_defect,
            "witness": [[float(z.real), float(z.imag)] for z in self.witness],
        }


def flip_example(n: int, omega1) -> FlipFixture:
    """Discrete ``l2(O1) + l2(O2) + l2(O1)`` with multiplication by the grid point.

    ``omega1`` lists grid indices in ``range(n)``; ``omega2`` is the rest.
    ``C(f, g, h) = (conj h, conj g, conj f)`` and ``K`` is the first two
    summands.  The witness is a unit vector of ``K`` whose image has the
    largest possible component outside ``K``.
    """
    o1 = np.array(sorted({int(i) for i in omega1}), dtype=int)
    if o1.size == 0 or o1.size >= n or o1.min() < 0 or o1.max() >= n:
        raise BadPartition("omega1 and its complement must both be nonempty subsets of the grid")
    o2 = np.setdiff1d(np.arange(n), o1)
    grid = np.exp(2j * np.pi * np.arange(n) / n)
    p, q = o1.size, o2.size
    dim = 2 * p + q
    u = np.diag(np.concatenate([grid[o1], grid[o2], grid[o1]]))
    a = np.zeros((dim, dim), dtype=np.complex128)
    a[np.arange(p), p + q + np.arange(p)] = 1.0
    a[p + q + np.arange(p), np.arange(p)] = 1.0
    a[p + np.arange(q), p + np.arange(q)] = 1.0
    c = Conjugation(a)
    k_basis = np.eye(dim, dtype=np.complex128)[:, : p + q]
    outside = np.eye(dim) - k_basis @ k_basis.conj().T
    # antilinear (I - P_K) C restricted to K has matrix (I - P_K) a conj(basis)
    leak = outside @ a @ k_basis.conj()
    # C(K y) = a conj(K) conj(y): the top right singular vector gives conj(y)
    _, _, vh = np.linalg.svd(leak)
    witness = k_basis @ vh[0]
    defect = float(np.linalg.norm(outside @ c(witness)))
    return FlipFixture(
        omega1=o1,
        omega2=o2,
        u=u,
        c=c,
        k_basis=k_basis,
        witness=witness,
        witness_defect=defect,
        csymmetric_residual=csymmetric_residual(u, c),
    )
