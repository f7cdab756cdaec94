"""Exception hierarchy shared by all analysis modules."""


class CooppredError(Exception):
    """Base class for all toolkit errors."""


class ConfigError(CooppredError):
    """Malformed or incomplete configuration input."""


class DomainError(CooppredError, ValueError):
    """Function evaluated outside its mathematical domain."""


class ParamError(CooppredError, ValueError):
    """Parameter set violates its invariants."""


class IntegrationError(CooppredError):
    """Base class for time-integration failures."""


class StepUnderflowError(IntegrationError):
    """Adaptive step size collapsed below the hard floor."""


class NonFiniteError(IntegrationError):
    """State became NaN or infinite."""


class CFLViolationError(IntegrationError):
    """Explicit diffusion step exceeds the stability bound."""


class HistoryUnderflowError(IntegrationError):
    """Delay ring buffer does not cover the requested lag."""


class NoEventError(CooppredError):
    """Integration budget exhausted before the requested event fired."""


class NoBracketError(CooppredError):
    """Bisection target does not change sign on the admissible interval."""


class NoSignChangeError(NoBracketError):
    """Manifold gap keeps one sign; no connecting orbit on the interval."""


class NotApplicableError(CooppredError):
    """Operation not defined in the current cooperation regime."""


class NotAtHopfError(CooppredError):
    """Lyapunov coefficient requested away from the Hopf point."""


class InconclusiveError(CooppredError):
    """Attractor detection ran out of budget without a verdict."""


class DegenerateRescaleError(CooppredError):
    """Normal-form rescaling impossible: a cubic real part vanishes."""


class SingularMapError(CooppredError):
    """Linear unfolding map is singular."""


class MultipleRootError(CooppredError):
    """Purely imaginary characteristic root is not simple."""


class PathAmbiguousError(CooppredError):
    """Counting path crosses a switching curve tangentially."""


class EmptyCurveError(CooppredError):
    """No mode yields a critical diffusion curve over the requested range."""
