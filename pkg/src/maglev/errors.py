"""Exception types shared across the package."""


class MaglevError(Exception):
    """Base class for all maglev errors."""


class NonPositiveInput(MaglevError):
    """A parameter that must be strictly positive is not."""


class TransverseTrapUndefined(MaglevError):
    """B'^2 <= B0*B''/2, so the transverse trap frequency is undefined."""


class NegativeJ(MaglevError):
    """Total angular momentum scale J = I*omega_S/hbar + S is not positive."""


class AsymmetricInput(MaglevError):
    """A matrix that must be symmetric is not."""


class RootSolverFailure(MaglevError):
    """The companion-matrix eigensolve did not converge."""


class NoSignChange(MaglevError):
    """Bisection bracket endpoints have the same classification."""


class NotStable(MaglevError):
    """The dynamical matrix spectrum is complex or degenerate."""


class ZeroNormVector(MaglevError):
    """An eigenvector has vanishing indefinite norm (stability boundary)."""


class NonPositiveBlockDeterminant(MaglevError):
    """A 2x2 covariance block has a non-positive determinant."""
