"""Light propagation through separable longitudinally inhomogeneous waveguides.

Classical mode amplitudes follow from the Ermakov-Pinney construction; quantum
states evolve in the comoving frame, where only the accumulated phase theta
matters.
"""

__version__ = "0.1.0"

from .classical import (  # noqa: E402
    ClassicalSolution,
    ClassicalTrajectory,
    comoving_transform,
    diagnostics,
    invariant_value,
    rho_at,
    solve_fundamental,
    theta_at,
)
from .errors import (  # noqa: E402
    CausticError,
    ConfigError,
    DomainError,
    GouypropError,
    IntegrationError,
    ResolutionError,
)
from .media import Constant, Cosine, MediumSpec, Tabulated, beta_local, effective_index_curve  # noqa: E402
from .quantum import (  # noqa: E402
    GaussianStateSpec,
    OfsGrid,
    PropagatorKernel,
    evolve_noise,
    evolved_gaussian,
    fock_propagated,
    fock_wavefunction,
    gaussian_input,
    gouy_phase,
    kernel_value,
    propagate_numeric,
)
from .scenarios import (  # noqa: E402
    ExperimentConfig,
    reference_medium,
    run_cosine_experiment,
    run_homogeneous_baseline,
    sweep_noise,
)
