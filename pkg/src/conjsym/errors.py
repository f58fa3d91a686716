"""Exception hierarchy shared by every module."""


class ConjSymError(Exception):
    """Base class for all errors raised by conjsym."""


class DimensionMismatch(ConjSymError, ValueError):
    pass


class NotSquare(ConjSymError, ValueError):
    pass


class NotUnitary(ConjSymError, ValueError):
    def __init__(self, residual, message=None):
        self.residual = float(residual)
        super().__init__(message or f"matrix is not unitary (residual {self.residual:.3e})")


class ClusteringUnstable(ConjSymError):
    """An eigenvalue gap lies in the ambiguous band around the cluster tolerance.

    Callers may retry with a different ``cluster_tol``.
    """

    def __init__(self, gap, cluster_tol):
        self.gap = float(gap)
        self.cluster_tol = float(cluster_tol)
        super().__init__(
            f"eigenvalue gap {self.gap:.3e} is ambiguous for cluster_tol {self.cluster_tol:.1e}"
        )


class NotSymmetricUnitary(ConjSymError, ValueError):
    def __init__(self, unitary_residual, symmetry_residual):
        self.unitary_residual = float(unitary_residual)
        self.symmetry_residual = float(symmetry_residual)
        super().__init__(
            "matrix is not a symmetric unitary "
            f"(unitarity {self.unitary_residual:.3e}, symmetry {self.symmetry_residual:.3e})"
        )


class InvalidBlock(ConjSymError, ValueError):
    def __init__(self, index, unitary_residual, symmetry_residual):
        self.index = index
        self.unitary_residual = float(unitary_residual)
        self.symmetry_residual = float(symmetry_residual)
        super().__init__(
            f"block {index} is not a symmetric unitary "
            f"(unitarity {self.unitary_residual:.3e}, symmetry {self.symmetry_residual:.3e})"
        )


class NotMember(ConjSymError):
    """Conjugation is not in the family for the given unitary.

    ``off_block_mass`` is the operator norm of the off-block-diagonal part of
    ``W* a conj(W)``; ``off_block_frobenius`` is its Frobenius norm.
    """

    def __init__(self, off_block_mass, off_block_frobenius=None, block_defects=()):
        self.off_block_mass = float(off_block_mass)
        self.off_block_frobenius = float(
            off_block_mass if off_block_frobenius is None else off_block_frobenius
        )
        self.block_defects = tuple(block_defects)
        super().__init__(f"not a member: off-block mass {self.off_block_mass:.3e}")


class IndexOutOfRange(ConjSymError, IndexError):
    pass


class ClusterSetMismatch(ConjSymError, ValueError):
    pass


class InvalidPhi(ConjSymError, ValueError):
    def __init__(self, index, unitary_residual, symmetry_residual):
        self.index = index
        self.unitary_residual = float(unitary_residual)
        self.symmetry_residual = float(symmetry_residual)
        super().__init__(
            f"symbol value at grid point {index} is not a symmetric unitary "
            f"(unitarity {self.unitary_residual:.3e}, symmetry {self.symmetry_residual:.3e})"
        )


class RangeError(ConjSymError, ValueError):
    pass


class BadPartition(ConjSymError, ValueError):
    pass


class TooManyClusters(ConjSymError, ValueError):
    def __init__(self, d, limit):
        self.d = d
        self.limit = limit
        super().__init__(f"{d} clusters exceeds the limit of {limit}")


class ParseError(ConjSymError, ValueError):
    pass
