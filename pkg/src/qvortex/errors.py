"""Exception hierarchy for qvortex.

Every guard in the package raises one of these; the CLI maps them onto
exit codes (config -> 2, integration/kinetic degeneracy -> 3).
"""


class QvortexError(Exception):
    """Base class for all qvortex errors."""


class InvalidParams(QvortexError, ValueError):
    """Model parameters violate their constraints (e.g. lambda >= 1/2)."""


class NonPositiveRadicand(QvortexError):
    """Expression under the normalization square root is <= 0."""


class DegenerateDenominator(QvortexError):
    """Common denominator of the reduced Lagrangian/Hamiltonian is <= 0."""


class OriginSingular(QvortexError):
    """Coupling coefficient requested with a vortex at the origin (R_i = 0)."""


class DegenerateKinetics(QvortexError):
    """Signed kinetic weights vanish (entanglement weight at 1/2)."""


class SingularSymplecticForm(QvortexError):
    """Kinetic two-form is numerically singular; first-order flow undefined."""


class StepSizeUnderflow(QvortexError):
    """Adaptive integrator step fell below 1e-14 * t_end."""


class NonPositiveE(QvortexError):
    """Canonical transformation requires a positive kinetic sign weight."""


class DomainViolation(QvortexError):
    """Canonical coordinates outside the disk xi^2 + eta^2 < 2E/Lambda."""


class SingularConstraintMatrix(QvortexError):
    """Constraint bracket matrix is not invertible (defensive; cannot occur)."""


class NumericalRankLoss(QvortexError):
    """Schmidt eigenvalue below the roundoff clamping window."""


class NodalPointSingular(QvortexError):
    """Phase requested at a point where the wavefunction vanishes."""


class LoopThroughNode(QvortexError):
    """Circulation loop passes through (or too close to) a nodal point."""


class OrderOutOfRange(QvortexError):
    """Quadrature order outside the supported range 1..64."""


class ConfigError(QvortexError):
    """Malformed or inconsistent run configuration."""
