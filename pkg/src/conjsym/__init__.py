"""Conjugations commuting a unitary matrix into its adjoint, and hyperinvariant subspaces."""

__version__ = "0.1.0"

from .antilinear import (
    AntilinearOp,
    Conjugation,
    apply,
    compose,
    csymmetric_residual,
    is_conjugation,
    is_csymmetric,
    random_conjugation,
    random_symmetric_unitary,
    real_basis,
    takagi_symmetric_unitary,
    transfer,
)
from .conjfamily import (
    ConjugationParametrization,
    build_from_blocks,
    canonical_member,
    commutant_conditions,
    extract_blocks,
    factor_unitary,
    is_member,
    parametrize,
    sample_member,
    transport_family,
)
from .errors import ConjSymError
from .hyperinv import (
    conjugation_invariance_test,
    equivalence_audit,
    hyperinvariant_lattice,
    invariance_defect,
)
from .linalg import (
    UnitarySpectralDecomposition,
    dft_matrix,
    haar_unitary,
    spectral_decompose_unitary,
    unitary_with_spectrum,
)
from .shiftmodels import PowerShiftModel, conjugation_from_phi, dft_model, flip_example, wold_transform
from .spectral import AtomicMeasure, h_mu_subspace, spectral_projection, spectral_subspace
from .subspace import Subspace
