"""Exception hierarchy.

The CLI maps these onto exit codes: ConfigError -> 2, solver failures
(BlowUpError, SolverError and subclasses) -> 3, violated preconditions
(LiftAbsentError, UnsupportedCaseError, EndpointError, TransversalityError,
LatticeError, DomainError) -> 4.
"""


class ApscylError(Exception):
    """Base class for all library errors."""


class ConfigError(ApscylError):
    """Malformed configuration or CLI arguments."""


class DomainError(ApscylError):
    """Argument outside its documented domain (e.g. t outside [0, T])."""


class LatticeError(ApscylError):
    """Fourier label not on the requested lattice."""


class LiftAbsentError(ApscylError):
    """Reflection lift requested but 2A is not an integer."""


class UnsupportedCaseError(ApscylError):
    """Operation not defined for this APS case (e.g. shooting on m = 0)."""


class BlowUpError(ApscylError):
    """Non-finite state during integration."""

    def __init__(self, step: int, detail: str = ""):
        self.step = step
        msg = f"integration blew up near step {step}"
        super().__init__(msg + (f" ({detail})" if detail else ""))


class SolverError(ApscylError):
    """Numerical solver failed an internal consistency requirement."""


class SpectrumMismatchError(SolverError):
    """Paired spectra returned different cardinalities on the same window."""


class RefinementNeededError(SolverError):
    """Branch tracking could not disambiguate; reports the bad s-interval."""

    def __init__(self, s_lo: float, s_hi: float, detail: str = ""):
        self.s_lo = s_lo
        self.s_hi = s_hi
        msg = f"branch tracking ambiguous on s in [{s_lo:.6g}, {s_hi:.6g}]"
        super().__init__(msg + (f": {detail}" if detail else ""))


class EndpointError(ApscylError):
    """Path endpoint sits on (or too near) the lattice."""


class TransversalityError(ApscylError):
    """Crossing with |A'(s*)| below the transversality floor."""
