"""Dense-coding capacity of two-qubit gravitational-cat thermal states.

Closed-form capacities, an independent dense-matrix numeric engine that
cross-checks them, the weak-measurement post-selection protocol, and
parameter-sweep / verification tooling behind the ``gravcat-coding`` CLI.
"""

from .version import TOOL_NAME, __version__

from .linalg import (
    DensityMatrix,
    InvalidStateError,
    NonFiniteResultError,
    NotHermitianError,
    NumericalNoiseWarning,
    PAULI_I,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    Spectrum,
    as_density,
    eigh,
    entropy_bits,
    matrix_function,
    partial_trace_first,
    require_hermitian,
    tensor,
    von_neumann_entropy,
)
from .thermal import (
    DegenerateGeometryError,
    GravcatGeometry,
    GravcatParams,
    InvalidParameterError,
    MIN_TEMPERATURE,
    ThermalClosedForm,
    assemble_thermal_state,
    build_hamiltonian,
    coupling_from_geometry,
    gibbs_numeric,
    thermal_closed_form,
)
from .coding import (
    ADVANTAGE_EPSILON,
    Advantage,
    CapacityReport,
    capacity_closed_form,
    capacity_numeric,
    classify_advantage,
    ensemble_average,
    ensemble_average_via_marginal,
)
from .weak_measurement import (
    OutOfRangeError,
    PostSelectedState,
    ZeroSuccessProbabilityError,
    apply_qwm,
    capacity_wm_closed_form,
    golden_section_maximize,
    optimize_strength,
    qwm_operator,
    wm_state_closed_form,
)
from .rng import SplitMix64
from .sweep import (
    AxisSpec,
    DEFAULT_AXES,
    FIGURES,
    FigurePreset,
    SweepGrid,
    cell_capacity,
    evaluate_sweep,
    figure_config,
    figure_grid,
    render_csv,
    render_json,
)
from .verify import CHECKS, draw_sample, verification_report

__all__ = [
    "ADVANTAGE_EPSILON",
    "Advantage",
    "AxisSpec",
    "CHECKS",
    "CapacityReport",
    "DEFAULT_AXES",
    "DegenerateGeometryError",
    "DensityMatrix",
    "FIGURES",
    "FigurePreset",
    "GravcatGeometry",
    "GravcatParams",
    "InvalidParameterError",
    "InvalidStateError",
    "MIN_TEMPERATURE",
    "NonFiniteResultError",
    "NotHermitianError",
    "NumericalNoiseWarning",
    "OutOfRangeError",
    "PAULI_I",
    "PAULI_X",
    "PAULI_Y",
    "PAULI_Z",
    "PostSelectedState",
    "Spectrum",
    "SplitMix64",
    "SweepGrid",
    "ThermalClosedForm",
    "TOOL_NAME",
    "ZeroSuccessProbabilityError",
    "__version__",
    "apply_qwm",
    "as_density",
    "assemble_thermal_state",
    "build_hamiltonian",
    "capacity_closed_form",
    "capacity_numeric",
    "capacity_wm_closed_form",
    "cell_capacity",
    "classify_advantage",
    "coupling_from_geometry",
    "draw_sample",
    "eigh",
    "ensemble_average",
    "ensemble_average_via_marginal",
    "entropy_bits",
    "evaluate_sweep",
    "figure_config",
    "figure_grid",
    "gibbs_numeric",
    "golden_section_maximize",
    "matrix_function",
    "optimize_strength",
    "partial_trace_first",
    "qwm_operator",
    "render_csv",
    "render_json",
    "require_hermitian",
    "tensor",
    "thermal_closed_form",
    "verification_report",
    "von_neumann_entropy",
    "wm_state_closed_form",
]
