"""Hyperinvariant subspaces of a unitary and their conjugation characterization.

For a unitary matrix the hyperinvariant subspaces are exactly the spectral
subspaces ``E(omega) H``, and a subspace is hyperinvariant iff every member
of the conjugation family leaves it invariant.  The soundness direction is
certain; finding a witness that moves a non-spectral subspace is done by
random sampling, so a failure to find one is reported as inconclusive.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from .antilinear import AntilinearOp, Conjugation
from .conjfamily import ConjugationParametrization, _coerce, canonical_member, sample_member
from .errors import DimensionMismatch, TooManyClusters
from .linalg import UnitarySpectralDecomposition, _rng, matrix_to_dict, opnorm
from .spectral import AtomicMeasure, h_mu_subspace, spectral_subspace
from .subspace import SUBSPACE_TOL, Subspace, random_subspace

# movement above this is genuine, below it is residual noise
WITNESS_THRESHOLD = 1e-6
DEFAULT_MEMBER_SAMPLES = 50
MAX_LATTICE_CLUSTERS = 20
MAX_AUDIT_CLUSTERS = 6


@dataclass(frozen=True)
class InvarianceReport:
    invariant: bool
    defect: float

    def __bool__(self) -> bool:
        return self.invariant


def invariance_defect(m: Subspace, c: AntilinearOp) -> float:
    """``||(I - P) C P||``; the antilinear ``C P`` has matrix ``a conj(P)``."""
    if m.n != c.n:
        raise DimensionMismatch(f"subspace in C^{m.n} vs conjugation of size {c.n}")
    if m.dim == 0:
        return 0.0
    b = m.basis
    image = c.a @ b.conj()
    return opnorm(image - b @ (b.conj().T @ image))


def is_invariant_under_conjugation(m: Subspace, c: AntilinearOp, tol: float = WITNESS_THRESHOLD) -> InvarianceReport:
    d = invariance_defect(m, c)
    return InvarianceReport(d <= tol, d)


@dataclass(frozen=True, eq=False)
class LatticeMember:
    omega: frozenset
    subspace: Subspace
    measure: AtomicMeasure

    @property
    def mask(self) -> list[int]:
        return sorted(self.omega)


def hyperinvariant_lattice(dec: UnitarySpectralDecomposition, max_clusters: int = MAX_LATTICE_CLUSTERS) -> list[LatticeMember]:
    """All ``2^d`` spectral subspaces, each with its cluster set and generating measure."""
    if dec.d > max_clusters:
        raise TooManyClusters(dec.d, max_clusters)
    members = []
    for r in range(dec.d + 1):
        for omega in itertools.combinations(range(dec.d), r):
            members.append(
                LatticeMember(
                    omega=frozenset(omega),
                    subspace=spectral_subspace(dec, omega),
                    measure=AtomicMeasure.counting(omega, dec.d),
                )
            )
    return members


def reducing_defect(u, m: Subspace) -> float:
    """``max(||(I-P) U P||, ||(I-P) U* P||)``."""
    if m.dim == 0:
        return 0.0
    u = np.asarray(u)
    b = m.basis
    out = 0.0
    for op in (u, u.conj().T):
        image = op @ b
        out = max(out, opnorm(image - b @ (b.conj().T @ image)))
    return out


@dataclass(frozen=True, eq=False)
class InvarianceVerdict:
    """``invariant_all`` if no sampled member moved the subspace, otherwise the first witness."""

    invariant_all: bool
    tested: int
    max_defect: float
    witness: Conjugation | None = None
    witness_defect: float = 0.0
    witness_index: int | None = None

    @property
    def label(self) -> str:
        return "invariant_all" if self.invariant_all else "witness"


def conjugation_invariance_test(
    dec,
    m: Subspace,
    samples: int = DEFAULT_MEMBER_SAMPLES,
    seed=0,
    threshold: float = WITNESS_THRESHOLD,
) -> InvarianceVerdict:
    """Test ``m`` against the canonical member and ``samples`` random members.

    Index 0 is the canonical member; index ``k >= 1`` is the ``k``-th sample.
    """
    p = _coerce(dec)
    rng = _rng(seed)
    worst = 0.0
    for k in range(samples + 1):
        c = canonical_member(p) if k == 0 else sample_member(p, rng)
        d = invariance_defect(m, c)
        worst = max(worst, d)
        if d > threshold:
            return InvarianceVerdict(False, k + 1, worst, c, d, k)
    return InvarianceVerdict(True, samples + 1, worst)


def random_commutant_element(p: ConjugationParametrization, seed=0) -> np.ndarray:
    """``W blockdiag(G_j) W*`` with Gaussian blocks: a generic operator commuting with ``U``."""
    rng = _rng(seed)
    w = p.dec.w
    t = np.zeros((p.n, p.n), dtype=np.complex128)
    for c in p.dec.clusters:
        k = c.mult
        t[c.cols, c.cols] = rng.standard_normal((k, k)) + 1j * rng.standard_normal((k, k))
    return w @ t @ w.conj().T


def operator_invariance_defect(m: Subspace, t: np.ndarray) -> float:
    if m.dim == 0:
        return 0.0
    b = m.basis
    image = t @ b
    return opnorm(image - b @ (b.conj().T @ image)) / max(opnorm(t), 1.0)


@dataclass
class AuditReport:
    d: int
    n: int
    member_samples: int
    subspace_samples: int
    seed: int
    lattice: list[dict] = field(default_factory=list)
    non_lattice: list[dict] = field(default_factory=list)

    @property
    def lattice_pass(self) -> bool:
        return all(entry["pass"] for entry in self.lattice)

    @property
    def inconclusive(self) -> int:
        return sum(entry["verdict"] == "INCONCLUSIVE" for entry in self.non_lattice)

    @property
    def passed(self) -> bool:
        return self.lattice_pass and self.inconclusive == 0

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "d": self.d,
            "seed": self.seed,
            "member_samples": self.member_samples,
            "subspace_samples": self.subspace_samples,
            "lattice_size": len(self.lattice),
            "lattice": self.lattice,
            "non_lattice": self.non_lattice,
            "summary": {
                "lattice_pass": self.lattice_pass,
                "witnesses_found": sum(e["verdict"] == "witness" for e in self.non_lattice),
                "inconclusive": self.inconclusive,
                "completeness_is_statistical": True,
                "passed": self.passed,
            },
        }


def equivalence_audit(
    dec,
    samples: int = 20,
    seed=0,
    member_samples: int = DEFAULT_MEMBER_SAMPLES,
    max_clusters: int = MAX_AUDIT_CLUSTERS,
    tol: float = SUBSPACE_TOL,
) -> AuditReport:
    """Cross-check the four descriptions of hyperinvariant subspaces.

    Every lattice member ``E(omega) H`` is checked to be reducing, equal to
    ``H_mu`` for the counting measure on ``omega``, invariant under a random
    commutant element, and invariant under the canonical plus
    ``member_samples`` random conjugations.  Then ``samples`` random
    subspaces outside the lattice must each be moved by some sampled member;
    otherwise they are recorded as ``INCONCLUSIVE``.
    """
    p = _coerce(dec)
    if p.dec.d > max_clusters:
        raise TooManyClusters(p.dec.d, max_clusters)
    rng = _rng(seed)
    report = AuditReport(
        d=p.dec.d,
        n=p.n,
        member_samples=member_samples,
        subspace_samples=samples,
        seed=int(seed) if isinstance(seed, (int, np.integer)) else -1,
    )
    lattice = hyperinvariant_lattice(p.dec)
    for lm in lattice:
        reducing = reducing_defect(p.u, lm.subspace)
        hmu = h_mu_subspace(p.dec, lm.measure)
        hmu_ok = hmu.equals(lm.subspace, tol)
        commutant = operator_invariance_defect(lm.subspace, random_commutant_element(p, rng))
        verdict = conjugation_invariance_test(p, lm.subspace, member_samples, rng)
        ok = reducing <= 1e-10 and hmu_ok and commutant <= 1e-9 and verdict.invariant_all
        entry = {
            "omega": lm.mask,
            "dim": lm.subspace.dim,
            "measure": lm.measure.to_dict(),
            "reducing_defect": reducing,
            "h_mu_equal": hmu_ok,
            "commutant_defect": commutant,
            "verdict": verdict.label,
            "max_conjugation_defect": verdict.max_defect,
            "members_tested": verdict.tested,
            "pass": bool(ok),
        }
        if verdict.witness is not None:
            entry["witness"] = matrix_to_dict(verdict.witness.a)
        report.lattice.append(entry)

    if p.n >= 2:
        for _ in range(samples):
            m = _draw_non_lattice(p.n, lattice, rng, tol)
            if m is None:
                continue
            verdict = conjugation_invariance_test(p, m, member_samples, rng)
            report.non_lattice.append(
                {
                    "dim": m.dim,
                    "verdict": "witness" if not verdict.invariant_all else "INCONCLUSIVE",
                    "witness_defect": verdict.witness_defect,
                    "witness_index": verdict.witness_index,
                    "members_tested": verdict.tested,
                }
            )
    return report


def _draw_non_lattice(n: int, lattice, rng, tol: float, attempts: int = 10) -> Subspace | None:
    for _ in range(attempts):
        dim = int(rng.integers(1, n))
        m = random_subspace(n, dim, rng)
        if not any(lm.subspace.equals(m, tol) for lm in lattice):
            return m
    return None
