"""APS spectra, reflection symmetry and spectral-flow invariants of twisted
Dirac operators on finite warped cylinders."""

from .eigensolve import (
    Completion,
    Spectrum,
    eigenvalues_shooting,
    kernel_dimension,
    oracle_eigenvalues,
)
from .errors import ApscylError
from .flow import (
    CrossingEvent,
    EquivariantReport,
    FlowReport,
    HolonomyPath,
    crossing_events,
    crossing_spectral_flow,
    endpoint_invertibility,
    equivariant_spectral_flow,
    find_flow_coupling,
    monotone_parity,
)
from .kernels import BACKEND
from .modes import (
    APSCase,
    Lattice,
    ModeSpec,
    classify_mode,
    lattice_window,
    paired_mode,
    reflection_lift_exists,
)
from .odecore import (
    ModeSystemState,
    PerturbationSpec,
    TransferMatrix,
    integrate_system,
    scalar_shoot,
    shoot,
    transfer_matrix,
)
from .symmetry import (
    Boundary,
    EtaReport,
    TraceReport,
    boundary_eta,
    chiral_index,
    pair_spectrum_gap,
    reflection_trace,
)
from .warp import WarpProfile, coefficients, inv_f_integral

__version__ = "0.1.0"
