import itertools

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from conjsym.conjfamily import sample_member
from conjsym.errors import ClusterSetMismatch, DimensionMismatch, IndexOutOfRange
from conjsym.hyperinv import invariance_defect
from conjsym.linalg import haar_unitary, spectral_decompose_unitary, unitary_with_spectrum
from conjsym.spectral import (
    AtomicMeasure,
    abs_continuous,
    cluster_projections,
    elementary_measure,
    h_mu_subspace,
    measure_join,
    measure_meet,
    spectral_projection,
)
from conjsym.subspace import Subspace

from conftest import random_vector

DIAG_1II = np.diag([1, 1j, 1j])


def brute_meet(m1, m2, d):
    """inf over partitions {A, complement} of m1(A) + m2(complement), per atom set."""
    # evaluated on each singleton: the measure value at {j}
    out = {}
    for j in range(d):
        best = np.inf
        omega = [j]
        for r in range(len(omega) + 1):
            for a in itertools.combinations(omega, r):
                rest = [k for k in omega if k not in a]
                best = min(best, m1(a) + m2(rest))
        out[j] = best
    return out


def test_projection_examples():
    dec = spectral_decompose_unitary(DIAG_1II)
    assert np.array_equal(spectral_projection(dec, []), np.zeros((3, 3)))
    assert np.allclose(spectral_projection(dec, range(dec.d)), np.eye(3))
    j = dec.cluster_of(1j)
    assert np.allclose(spectral_projection(dec, [j]), np.diag([0, 1, 1]))
    with pytest.raises(IndexOutOfRange):
        spectral_projection(dec, [5])


@pytest.mark.parametrize("d", [1, 3, 5])
def test_projection_algebra(d):
    mults = [1 + (j % 2) for j in range(d)]
    eig = np.repeat(np.exp(2j * np.pi * np.arange(d) / (d + 1)), mults)
    dec = spectral_decompose_unitary(unitary_with_spectrum(eig, d))
    ps = cluster_projections(dec)
    assert np.linalg.norm(sum(ps) - np.eye(dec.n)) <= 1e-10
    for j, k in itertools.combinations(range(d), 2):
        assert np.linalg.norm(ps[j] @ ps[k]) <= 1e-10
    subsets = [s for r in range(d + 1) for s in itertools.combinations(range(d), r)]
    for o1 in subsets:
        e1 = spectral_projection(dec, o1)
        assert np.linalg.norm(e1 @ e1 - e1) <= 1e-10
        assert np.linalg.norm(e1 - e1.conj().T) <= 1e-10
        for o2 in subsets:
            e2 = spectral_projection(dec, o2)
            both = spectral_projection(dec, set(o1) & set(o2))
            assert np.linalg.norm(e1 @ e2 - both) <= 1e-10


def test_elementary_measure(rng):
    dec = spectral_decompose_unitary(np.diag([1, 1j]))
    assert elementary_measure(dec, np.zeros(2)).atoms == {}
    assert elementary_measure(dec, [1, 0]).atoms == {dec.cluster_of(1): pytest.approx(1.0)}
    dec = spectral_decompose_unitary(DIAG_1II)
    x = random_vector(rng, 3)
    mu = elementary_measure(dec, x)
    assert mu.mass(dec.cluster_of(1)) == pytest.approx(abs(x[0]) ** 2)
    assert mu.mass(dec.cluster_of(1j)) == pytest.approx(abs(x[1]) ** 2 + abs(x[2]) ** 2)
    assert mu.total == pytest.approx(np.linalg.norm(x) ** 2, abs=1e-10)
    with pytest.raises(DimensionMismatch):
        elementary_measure(dec, np.ones(2))


def test_h_mu_examples():
    dec = spectral_decompose_unitary(DIAG_1II)
    assert h_mu_subspace(dec, AtomicMeasure({}, dec.d)).dim == 0
    full = AtomicMeasure({0: 0.5, 1: 2.0}, dec.d)
    assert h_mu_subspace(dec, full).equals(Subspace.full(3))
    j = dec.cluster_of(1j)
    h = h_mu_subspace(dec, AtomicMeasure({j: 1.0}, dec.d))
    # oracle: basis vector e_k lies in H_mu iff its elementary measure is << mu
    inside = [k for k in range(3) if abs_continuous(elementary_measure(dec, np.eye(3)[k]), AtomicMeasure({j: 1.0}, dec.d))]
    assert inside == [1, 2]
    assert h.equals(Subspace.span(np.eye(3)[:, 1:]))


def test_h_mu_is_eigenspace_for_dirac():
    u = unitary_with_spectrum([1, -1, -1, 1j], 3)
    dec = spectral_decompose_unitary(u)
    j = dec.cluster_of(-1)
    h = h_mu_subspace(dec, AtomicMeasure({j: 1.0}, dec.d))
    # ker(U + I)
    _, s, vh = np.linalg.svd(u + np.eye(4))
    kernel = vh[s < 1e-8].conj().T
    assert h.equals(Subspace.span(kernel))


def test_meet_join_examples():
    assert measure_meet(AtomicMeasure({1: 2.0}), AtomicMeasure({})).atoms == {}
    assert measure_join(AtomicMeasure({1: 2.0}), AtomicMeasure({1: 3.0})).atoms == {1: 5.0}
    m1, m2 = AtomicMeasure({1: 2.0, 2: 3.0}), AtomicMeasure({1: 1.0})
    meet = measure_meet(m1, m2)
    assert meet.atoms == {1: 1.0}
    oracle = brute_meet(m1, m2, 3)
    assert all(meet.mass(j) == oracle[j] for j in range(3))


def test_abs_continuous_examples():
    assert abs_continuous(AtomicMeasure({}), AtomicMeasure({1: 1.0}))
    assert abs_continuous(AtomicMeasure({1: 5.0}), AtomicMeasure({1: 0.1, 2: 9.0}))
    assert not abs_continuous(AtomicMeasure({1: 1.0, 2: 1.0}), AtomicMeasure({1: 1.0}))


def test_cluster_set_mismatch():
    with pytest.raises(ClusterSetMismatch):
        measure_meet(AtomicMeasure({0: 1.0}, 2), AtomicMeasure({0: 1.0}, 3))
    with pytest.raises(ClusterSetMismatch):
        abs_continuous(AtomicMeasure({0: 1.0}, 2), AtomicMeasure({0: 1.0}, 3))


def test_measure_validation_and_json():
    with pytest.raises(ValueError):
        AtomicMeasure({0: -1.0})
    m = AtomicMeasure({0: 1.5, 2: 0.0}, 3)
    assert m.atoms == {0: 1.5}
    assert AtomicMeasure.from_dict(m.to_dict()).atoms == m.atoms
    assert m.to_dict()["atoms"] == {"0": 1.5}


masses = st.lists(st.sampled_from([0.0, 0.0, 0.3, 1.0, 2.5]), min_size=4, max_size=4)


@given(masses, masses, masses)
def test_meet_matches_partition_oracle(a, b, c):
    d = 4
    m1 = AtomicMeasure(dict(enumerate(a)), d)
    m2 = AtomicMeasure(dict(enumerate(b)), d)
    meet = measure_meet(m1, m2)
    oracle = brute_meet(m1, m2, d)
    for j in range(d):
        assert meet.mass(j) == pytest.approx(oracle[j])
    # meet of a general set: inf over all partitions of that set
    omega = [j for j in range(d) if c[j] > 0]
    best = min(
        m1(sub) + m2([k for k in omega if k not in sub])
        for r in range(len(omega) + 1)
        for sub in itertools.combinations(omega, r)
    )
    assert meet(omega) == pytest.approx(best)


@given(masses, masses, masses)
def test_h_mu_inclusion_criterion(a, b, c):
    eig = np.exp(2j * np.pi * np.array([0, 1, 1, 2, 3, 3]) / 4)
    dec = spectral_decompose_unitary(unitary_with_spectrum(eig, 11))
    d = dec.d
    nu1 = AtomicMeasure(dict(enumerate(a)), d)
    nu2 = AtomicMeasure(dict(enumerate(b)), d)
    mu = AtomicMeasure({j: 1.0 for j in range(d)}, d)
    lhs = h_mu_subspace(dec, nu2).contains(h_mu_subspace(dec, nu1))
    rhs = abs_continuous(measure_meet(nu1, mu), measure_meet(nu2, mu))
    assert lhs == rhs
    # restricted scalar measure: the criterion reads inside H_mu
    mu_c = AtomicMeasure(dict(enumerate(c)), d)
    inner = h_mu_subspace(dec, measure_meet(nu2, mu_c)).contains(h_mu_subspace(dec, measure_meet(nu1, mu_c)))
    assert inner == abs_continuous(measure_meet(nu1, mu_c), measure_meet(nu2, mu_c))


@given(st.integers(0, 10_000))
def test_h_mu_invariant_under_members(seed):
    rng = np.random.default_rng(seed)
    eig = np.exp(1j * np.array([0.1, 0.1, 2.0, 4.0, 4.0]))
    dec = spectral_decompose_unitary(unitary_with_spectrum(eig, seed))
    x = random_vector(rng, 5)
    mu = elementary_measure(dec, x * (rng.random(5) > 0.5))
    h = h_mu_subspace(dec, mu)
    c = sample_member(dec, rng)
    assert invariance_defect(h, c) <= 1e-9


def test_elementary_measure_total_haar(rng):
    dec = spectral_decompose_unitary(haar_unitary(9, 2))
    x = random_vector(rng, 9)
    mu = elementary_measure(dec, x)
    assert abs(mu.total - np.linalg.norm(x) ** 2) <= 1e-10
    assert mu.support == frozenset(range(9))
