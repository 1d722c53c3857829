"""Exception types shared across the package."""


class QhfocusError(Exception):
    """Base class for all package errors."""


class InvalidFieldError(QhfocusError):
    """A vector field does not satisfy the weighted-homogeneity contract."""


class NormalizationError(QhfocusError):
    """Normalization requested with nonpositive leading coefficients."""


class PolarChartError(QhfocusError):
    """The polar chart broke down (denominator vanished or radius too large)."""


class SingularDivisionError(QhfocusError):
    """Jet division by a series with no usable leading coefficient."""


class StiffnessError(QhfocusError):
    """The ODE integrator failed (step-size underflow or solver abort)."""


class NoReturnError(QhfocusError):
    """An orbit did not come back to the Poincare section within the time cap."""


class AlternationError(QhfocusError):
    """No parameter point realizing the requested sign chain inside the box."""


class QuadratureError(QhfocusError):
    """Requested quadrature tolerance unreachable at the node cap."""


class ReproductionError(QhfocusError):
    """A documented reference value could not be reproduced."""
