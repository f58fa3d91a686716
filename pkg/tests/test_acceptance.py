"""Acceptance criteria, one test per criterion.

Each test prints a single ``[PASS]`` / ``[FAIL]`` line (visible even without
``-s``) and then asserts.  Run ``python3 tests/test_acceptance.py`` for the
lines alone.
"""

import itertools
import sys
import time

import numpy as np
import pytest

from conjsym.antilinear import (
    Conjugation,
    compose,
    csymmetric_residual,
    involution_defect,
    is_conjugation,
    isometry_defect,
    random_conjugation,
    random_symmetric_unitary,
    real_basis,
)
from conjsym.conjfamily import (
    commutant_conditions,
    extract_blocks,
    factor_unitary,
    is_member,
    parametrize,
    sample_member,
)
from conjsym.errors import NotMember
from conjsym.hyperinv import equivalence_audit, invariance_defect
from conjsym.linalg import dft_matrix, fro, haar_unitary, unitary_residual, unitary_with_spectrum
from conjsym.shiftmodels import (
    PowerShiftModel,
    dft_model,
    flip_example,
    intertwine_check,
    lambda_drift_symbol,
    phi_residuals,
    sincos_symbol,
    wold_check,
    z2_identity_residuals,
)
from conjsym.spectral import spectral_projection
from conjsym.subspace import Subspace

RESULTS = {}


def _haar_set(count=200, seed=2024):
    rng = np.random.default_rng(seed)
    return [haar_unitary(int(rng.integers(2, 17)), rng) for _ in range(count)]


def _degenerate(d, rng):
    mults = rng.integers(1, 3, size=d)
    args = np.sort(rng.choice(48, size=d, replace=False)) * (2 * np.pi / 48)
    return unitary_with_spectrum(np.repeat(np.exp(1j * args), mults), rng)


def record(k, title, ok, detail, capsys=None):
    line = f"[{'PASS' if ok else 'FAIL'}] criterion {k:2d}: {title} ({detail})"
    RESULTS[k] = ok
    if capsys is not None:
        with capsys.disabled():
            print("\n" + line)
    else:
        print(line)
    assert ok, line


def criterion_1(capsys=None):
    us = _haar_set()
    rng = np.random.default_rng(1)
    start = time.perf_counter()
    worst = 0.0
    for u in us:
        p = parametrize(u)
        for _ in range(5):
            c = sample_member(p, rng)
            worst = max(worst, involution_defect(c), csymmetric_residual(u, c), isometry_defect(c))
    elapsed = time.perf_counter() - start
    record(1, "forward structure, 200 Haar U x 5 members", worst <= 1e-9 and elapsed < 10.0,
           f"max residual {worst:.2e}, {elapsed:.2f}s", capsys)


def criterion_2(capsys=None):
    us = _haar_set()
    rng = np.random.default_rng(2)
    disagreements = 0
    pairs = 0
    for u in us:
        p = parametrize(u)
        # one member built as V J from the family, one from a generic symmetric unitary V
        candidates = [Conjugation(sample_member(p, rng).a), Conjugation(random_symmetric_unitary(p.n, rng))]
        for c in candidates:
            pairs += 1
            rep = commutant_conditions(u, c, tol=1e-9)
            worst = max(rep.symmetric_residual, rep.intertwine_residual)
            commutant_member = worst <= 1e-9
            commutant_reject = worst > 1e-6
            try:
                extract_blocks(p, c, 1e-9)
                block_member = True
            except NotMember:
                block_member = False
            direct = csymmetric_residual(u, c) <= 1e-9
            if not (commutant_member or commutant_reject):
                disagreements += 1
            elif commutant_member != block_member or block_member != direct:
                disagreements += 1
    record(2, "converse via commutant conditions", disagreements == 0,
           f"{pairs} pairs, {disagreements} disagreements", capsys)


def criterion_3(capsys=None):
    rng = np.random.default_rng(3)
    worst = 0.0
    members = True
    for _ in range(100):
        u = haar_unitary(int(rng.integers(2, 17)), rng)
        j1, j2 = factor_unitary(u)
        worst = max(worst, fro(compose(j1, j2) - u), csymmetric_residual(u, j1), csymmetric_residual(u, j2))
        members &= bool(is_conjugation(j1, 1e-9)) and bool(is_conjugation(j2, 1e-9))
        members &= is_member(u, j1) and is_member(u, j2)
    record(3, "U = J1 J2 on 100 Haar U", worst <= 1e-9 and members,
           f"max residual {worst:.2e}, factors in family: {members}", capsys)


def criterion_4(capsys=None):
    rng = np.random.default_rng(4)
    worst = 0.0
    subsets = 0
    for k in range(50):
        d = 1 + k % 5
        p = parametrize(_degenerate(d, rng))
        c = sample_member(p, rng)
        for r in range(d + 1):
            for omega in itertools.combinations(range(p.dec.d), r):
                e = spectral_projection(p.dec, omega)
                worst = max(worst, fro(c.a @ e.conj() @ c.a.conj() - e))
                subsets += 1
    record(4, "C E(omega) C = E(omega), full subset sweep", worst <= 1e-9,
           f"{subsets} subsets, max residual {worst:.2e}", capsys)


def criterion_5(capsys=None):
    rng = np.random.default_rng(5)
    lattice_ok = True
    inconclusive = 0
    witnesses = 0
    for k in range(20):
        d = 2 + k % 3
        u = _degenerate(d, rng)
        rep = equivalence_audit(parametrize(u), samples=20, seed=int(rng.integers(2**31)), member_samples=50)
        lattice_ok &= rep.lattice_pass and len(rep.lattice) == 2**d
        inconclusive += rep.inconclusive
        witnesses += sum(e["verdict"] == "witness" for e in rep.non_lattice)
    flag = " (statistical)" if inconclusive else ""
    record(5, "hyperinvariance equivalence audit", lattice_ok and inconclusive == 0,
           f"lattice pass {lattice_ok}, {witnesses} witnesses, {inconclusive} inconclusive{flag}", capsys)


def criterion_6(capsys=None):
    lam = np.exp(0.9j)
    u = lam * np.eye(2)
    c1 = Conjugation.standard(2)
    c2 = Conjugation(np.array([[0.0, 1.0], [1.0, 0.0]]))
    e1 = Subspace.span([[1.0], [0.0]])
    members = csymmetric_residual(u, c1) == 0.0 and csymmetric_residual(u, c2) == 0.0
    d1 = invariance_defect(e1, c1)
    d2 = invariance_defect(e1, c2)
    ok = members and d1 <= 1e-12 and abs(d2 - 1.0) <= 1e-12
    record(6, "diag(lambda, lambda) counterexample", ok, f"C1 defect {d1:.1e}, C2 defect {d2:.15f}", capsys)


def criterion_7(capsys=None):
    rng = np.random.default_rng(7)
    worst = {"round_trip": 0.0, "parseval": 0.0, "intertwine": 0.0}
    for n, N in [(8, 1), (16, 2), (8, 3), (4, 4)]:
        m = PowerShiftModel(n, N)
        f = rng.standard_normal(m.size) + 1j * rng.standard_normal(m.size)
        rep = wold_check(m, f)
        worst["round_trip"] = max(worst["round_trip"], rep.round_trip)
        worst["parseval"] = max(worst["parseval"], rep.parseval)
        worst["intertwine"] = max(worst["intertwine"], intertwine_check(m))
    ok = worst["round_trip"] <= 1e-12 and worst["parseval"] <= 1e-10 and worst["intertwine"] <= 1e-10
    record(7, "Wold / intertwine for z^N", ok, ", ".join(f"{k} {v:.1e}" for k, v in worst.items()), capsys)


def criterion_8(capsys=None):
    m = PowerShiftModel(16, 2)
    worst_res = 0.0
    worst_id = 0.0
    for phi in (sincos_symbol(m), lambda_drift_symbol(m)):
        worst_res = max(worst_res, phi_residuals(m, phi).max())
        ids = z2_identity_residuals(phi)
        worst_id = max(worst_id, ids["column_norm"], ids["diagonal_modulus"])
    ok = worst_res <= 1e-9 and worst_id <= 1e-12
    record(8, "z^2 presets on a 32-point grid", ok, f"residual {worst_res:.1e}, identities {worst_id:.1e}", capsys)


def criterion_9(capsys=None):
    rep = dft_model(4)
    eig = np.linalg.eigvals(dft_matrix(4))
    oracle = {k: int(np.sum(np.abs(eig - z) < 1e-8)) for k, z in {"1": 1, "-1": -1, "-i": -1j, "i": 1j}.items()}
    ok = rep["multiplicities"] == oracle == {"1": 2, "-1": 1, "-i": 1, "i": 0}
    worst = 0.0
    for n in (4, 8, 16):
        j = Conjugation.standard(n)
        worst = max(worst, csymmetric_residual(dft_matrix(n), j))
        ok &= is_member(dft_matrix(n), j)
    ok &= worst <= 1e-10
    record(9, "DFT analog", ok, f"F4 multiplicities {rep['multiplicities']}, max residual {worst:.1e}", capsys)


def criterion_10(capsys=None):
    rng = np.random.default_rng(10)
    fixed = 0.0
    unit = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 13))
        c = random_conjugation(n, rng)
        q = real_basis(c)
        fixed = max(fixed, max(np.linalg.norm(c(q[:, k]) - q[:, k]) for k in range(n)))
        unit = max(unit, unitary_residual(q))
    record(10, "Takagi real basis", fixed <= 1e-9 and unit <= 1e-10,
           f"max |Cq - q| {fixed:.1e}, unitarity {unit:.1e}", capsys)


def criterion_11(capsys=None):
    fx = flip_example(8, [0, 1, 2, 3])
    ok = fx.omega2.size == 4 and fx.csymmetric_residual <= 1e-12 and fx.witness_defect >= 0.5
    record(11, "flip example escapes K", ok,
           f"CUC residual {fx.csymmetric_residual:.1e}, witness defect {fx.witness_defect:.3f}", capsys)


CRITERIA = [criterion_1, criterion_2, criterion_3, criterion_4, criterion_5, criterion_6,
            criterion_7, criterion_8, criterion_9, criterion_10, criterion_11]


@pytest.mark.parametrize("criterion", CRITERIA, ids=[f"criterion_{k}" for k in range(1, 12)])
def test_acceptance(criterion, capsys):
    criterion(capsys)


if __name__ == "__main__":
    failed = 0
    for crit in CRITERIA:
        try:
            crit()
        except AssertionError:
            failed += 1
    print(f"{len(CRITERIA) - failed}/{len(CRITERIA)} criteria passed")
    sys.exit(1 if failed else 0)
