import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conjsym.antilinear import Conjugation, random_conjugation
from conjsym.errors import DimensionMismatch, TooManyClusters
from conjsym.hyperinv import (
    conjugation_invariance_test,
    equivalence_audit,
    hyperinvariant_lattice,
    invariance_defect,
    is_invariant_under_conjugation,
    operator_invariance_defect,
    random_commutant_element,
    reducing_defect,
)
from conjsym.conjfamily import parametrize
from conjsym.linalg import haar_unitary, spectral_decompose_unitary, unitary_with_spectrum
from conjsym.spectral import spectral_subspace
from conjsym.subspace import Subspace

from conftest import SWAP

E1 = Subspace.span([[1], [0]])


def test_invariance_examples():
    for seed in range(3):
        assert is_invariant_under_conjugation(Subspace.full(3), random_conjugation(3, seed))
    assert is_invariant_under_conjugation(E1, Conjugation.standard(2))
    rep = is_invariant_under_conjugation(E1, Conjugation(SWAP))
    assert not rep
    assert rep.defect == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(DimensionMismatch):
        invariance_defect(E1, Conjugation.standard(3))


def test_lattice_examples():
    lam = np.exp(0.4j)
    lat = hyperinvariant_lattice(spectral_decompose_unitary(lam * np.eye(2)))
    assert sorted(m.subspace.dim for m in lat) == [0, 2]
    lat = hyperinvariant_lattice(spectral_decompose_unitary(np.diag([1, 1j])))
    expected = [Subspace.zero(2), Subspace.span([[1], [0]]), Subspace.span([[0], [1]]), Subspace.full(2)]
    assert len(lat) == 4
    for s in expected:
        assert sum(m.subspace.equals(s) for m in lat) == 1


def test_invariant_but_not_hyperinvariant():
    u = np.diag([1, 1j, 1j])
    dec = spectral_decompose_unitary(u)
    e2 = Subspace.span(np.eye(3)[:, [1]])
    assert reducing_defect(u, e2) <= 1e-12
    assert not any(m.subspace.equals(e2) for m in hyperinvariant_lattice(dec))
    # a commuting matrix that mixes e2 and e3 moves it
    t = np.eye(3)
    t[2, 1] = 1.0
    assert np.allclose(t @ u, u @ t)
    assert operator_invariance_defect(e2, t) > 0.1


def test_lattice_size_limit():
    dec = spectral_decompose_unitary(haar_unitary(5, 0))
    with pytest.raises(TooManyClusters):
        hyperinvariant_lattice(dec, max_clusters=4)
    with pytest.raises(TooManyClusters):
        equivalence_audit(spectral_decompose_unitary(haar_unitary(7, 0)))


@given(st.integers(0, 10_000), st.lists(st.integers(1, 2), min_size=1, max_size=4))
def test_lattice_closure(seed, mults):
    eig = np.repeat(np.exp(2j * np.pi * np.arange(len(mults)) / 5), mults)
    dec = spectral_decompose_unitary(unitary_with_spectrum(eig, seed))
    lat = hyperinvariant_lattice(dec)
    assert len(lat) == 2**dec.d
    by_omega = {m.omega: m.subspace for m in lat}
    full = frozenset(range(dec.d))
    for o1, s1 in by_omega.items():
        assert s1.complement().equals(by_omega[full - o1])
        assert reducing_defect(dec.reconstruct(), s1) <= 1e-10
        for o2, s2 in by_omega.items():
            assert s1.intersect(s2, 1e-8).equals(by_omega[o1 & o2])


def test_spectral_subspaces_invariant_all():
    dec = spectral_decompose_unitary(unitary_with_spectrum([1, 1, -1, 1j, 1j], 2))
    for r in range(dec.d + 1):
        for omega in itertools.combinations(range(dec.d), r):
            v = conjugation_invariance_test(dec, spectral_subspace(dec, omega), samples=20, seed=r)
            assert v.invariant_all and v.label == "invariant_all"
            assert v.tested == 21


def test_witness_diag_lambda_lambda():
    dec = spectral_decompose_unitary(np.exp(1.3j) * np.eye(2))
    found = [conjugation_invariance_test(dec, E1, samples=2, seed=s) for s in range(50)]
    assert sum(not v.invariant_all for v in found) >= 49
    v = found[0]
    assert v.witness_defect > 1e-6
    assert invariance_defect(E1, v.witness) == pytest.approx(v.witness_defect)


def test_witness_diag_1ii():
    dec = spectral_decompose_unitary(np.diag([1, 1j, 1j]))
    v = conjugation_invariance_test(dec, Subspace.span(np.eye(3)[:, [1]]), samples=50, seed=0)
    assert not v.invariant_all
    assert v.witness_index >= 0


def test_commutant_element_commutes():
    u = unitary_with_spectrum([1, 1, -1j], 4)
    t = random_commutant_element(parametrize(u), 1)
    assert np.linalg.norm(t @ u - u @ t) <= 1e-10


@pytest.mark.parametrize(
    "u,size",
    [
        (np.diag(np.exp(1j * np.array([0.2, 2.0, 4.0]))), 8),
        (np.eye(3), 2),
        (np.diag([1, 1, -1]), 4),
    ],
)
def test_audit_examples(u, size):
    rep = equivalence_audit(spectral_decompose_unitary(u), samples=20, seed=0)
    assert len(rep.lattice) == size
    assert rep.lattice_pass
    assert len(rep.non_lattice) == 20
    assert rep.inconclusive == 0
    assert rep.passed
    out = rep.to_dict()
    assert out["summary"]["completeness_is_statistical"]
    assert out["lattice_size"] == size


def test_audit_diag_lambda_lambda():
    rep = equivalence_audit(spectral_decompose_unitary(np.exp(0.5j) * np.eye(2)), samples=10, seed=3)
    assert [e["dim"] for e in rep.lattice] == [0, 2]
    assert all(e["verdict"] == "witness" for e in rep.non_lattice)
