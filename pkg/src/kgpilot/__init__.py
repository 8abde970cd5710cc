"""Klein-Gordon pilot-wave toolkit for a particle in a 1D box.

Builds superposition states, decomposes them into polar form, evaluates the
competing guidance laws (de Broglie, |S0|-modified, stress-energy eigenflow),
integrates flow lines with event detection, transports frames along them,
and runs the matching covariant point-particle dynamics.
"""

from ._kernels import backend_name
from .classical import (
    ClassicalPath,
    ClassicalState,
    ConstantElectric,
    PotentialSpec,
    Tabulated,
    Zero,
    charge_conjugation_check,
    classical_derivs,
    integrate_classical,
)
from .errors import (
    ConstraintViolationError,
    DegenerateFlowError,
    KgpilotError,
    NearNodeError,
    PoleError,
    UndefinedThetaError,
)
from .guidance import (
    FlowVector,
    VelocityLaw,
    flow_field,
    negative_mass_intervals,
    negativity_scan,
    roots_of_s0,
    superluminal_scan,
    v_debroglie,
    v_modified,
)
from .kgfield import (
    BoxConfig,
    FieldSample,
    ModeSpec,
    PolarSample,
    WaveState,
    default_eps_node,
    effective_mass_sq,
    eval_field,
    eval_field_grid,
    j0,
    omega,
    polar,
    residuals,
    sample_residuals,
)
from .stressenergy import (
    FlowEigenpair,
    StressTensor,
    eigen_flow,
    stress_tensor,
    v_energy,
    v_theta,
)
from .trajectories import (
    DyadFrame,
    InitialCondition,
    IntegratorConfig,
    TrajectoryEvent,
    TrajectoryRecord,
    detect_self_intersection,
    fermi_transport,
    gauss_flux,
    integrate,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "backend_name",
    "BoxConfig",
    "ModeSpec",
    "WaveState",
    "FieldSample",
    "PolarSample",
    "omega",
    "eval_field",
    "eval_field_grid",
    "polar",
    "j0",
    "residuals",
    "sample_residuals",
    "effective_mass_sq",
    "default_eps_node",
    "StressTensor",
    "FlowEigenpair",
    "stress_tensor",
    "eigen_flow",
    "v_energy",
    "v_theta",
    "VelocityLaw",
    "FlowVector",
    "flow_field",
    "v_debroglie",
    "v_modified",
    "roots_of_s0",
    "negativity_scan",
    "superluminal_scan",
    "negative_mass_intervals",
    "InitialCondition",
    "IntegratorConfig",
    "TrajectoryEvent",
    "TrajectoryRecord",
    "DyadFrame",
    "integrate",
    "detect_self_intersection",
    "fermi_transport",
    "gauss_flux",
    "Zero",
    "ConstantElectric",
    "Tabulated",
    "PotentialSpec",
    "ClassicalState",
    "ClassicalPath",
    "classical_derivs",
    "integrate_classical",
    "charge_conjugation_check",
    "KgpilotError",
    "NearNodeError",
    "PoleError",
    "UndefinedThetaError",
    "DegenerateFlowError",
    "ConstraintViolationError",
]
