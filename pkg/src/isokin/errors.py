"""Exception types shared across the package."""


class IsokinError(Exception):
    """Base class for all package-specific errors."""


class DegeneratePointError(IsokinError):
    """Raised where the spatial gradient vanishes.

    Every isoline characteristic divides by the gradient norm, so a zero
    gradient has no Frenet frame and no well-defined front. Callers that
    want a tolerance-based screen should use :func:`isokin.fields.regularity`
    before computing characteristics.
    """


class DegenerateRegionError(IsokinError):
    """A space-time box contains (near-)degenerate sample points."""


class NoIntersectionError(IsokinError):
    """A displacement root-find exhausted its bracket without a sign change."""


class OracleUnstableError(IsokinError):
    """Difference-quotient extrapolation failed to converge."""


class ContractViolationError(IsokinError):
    """An operation was called outside its stated hypotheses."""
