"""qvortex: reduced dynamics of two entangled pointlike quantum vortices.

Closed-form model evaluation, first-order vortex dynamics from the
degenerate Lagrangian, the canonical (pinned-vortex) reduction with its
Dirac-bracket structure, entanglement entropy, hydrodynamic field
diagnostics, and Gauss-Hermite quadrature oracles that certify every
closed form.
"""

from .errors import (
    ConfigError,
    DegenerateDenominator,
    DegenerateKinetics,
    DomainViolation,
    InvalidParams,
    LoopThroughNode,
    NodalPointSingular,
    NonPositiveE,
    NonPositiveRadicand,
    NumericalRankLoss,
    OrderOutOfRange,
    OriginSingular,
    QvortexError,
    SingularConstraintMatrix,
    SingularSymplecticForm,
    StepSizeUnderflow,
)
from .model import (
    DerivedCoefficients,
    ModelParams,
    VortexState,
    VortexVelocity,
    angular_momenta,
    ansatz_laplacian,
    ansatz_time_derivative,
    ansatz_value,
    canonical_momenta,
    coupling_g,
    coupling_label,
    derived_coefficients,
    nh_residual,
    normalization_factor,
    reduced_hamiltonian,
    reduced_lagrangian,
)
from .dynamics import (
    AntisymmetricReport,
    SymplecticForm,
    Trajectory,
    antisymmetric_subspace_diagnostic,
    fit_frequency,
    integrate,
    kinetic_coefficients,
    potential_v,
    symplectic_form,
    velocity_field,
)
from .canonical import (
    CanonicalState,
    ConstraintAlgebra,
    angular_frequency,
    canonical_flow,
    canonical_hamiltonian,
    canonical_lagrangian,
    dirac_bracket,
    fixed_vortex_lagrangian,
    from_canonical,
    poisson_bracket,
    to_canonical,
    to_canonical_velocity,
)
from .entanglement import (
    EntropySweepResult,
    ReducedDensity,
    entropy_gram,
    entropy_orthonormal,
    entropy_subsystem_equality,
    entropy_sweep,
    overlap_matrices,
    reduced_density,
    reduced_density_orthonormal,
    schmidt_eigenvalues_gram,
)
from .fields import (
    VortexCharge,
    ansatz_slice_evaluator,
    circulation,
    find_nodes,
    phase_and_velocity,
    plaquette_winding_map,
    single_vortex,
    single_vortex_evaluator,
)
from .quadrature import (
    QuadratureRule,
    gauss_hermite_rule,
    lagrangian_quadrature,
    norm_quadrature,
    overlap_quadrature,
)

__version__ = "0.1.0"
