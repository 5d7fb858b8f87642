"""Exception hierarchy shared by all modules."""


class AdsOrbitsError(Exception):
    """Base class for every error raised by this package."""


class DimensionError(AdsOrbitsError, ValueError):
    pass


class TagError(AdsOrbitsError, TypeError):
    """Operands belong to different (or unsupported) algebras or models."""


class ArgumentError(AdsOrbitsError, ValueError):
    pass


class ConstraintError(AdsOrbitsError, ValueError):
    """A sampling constraint cannot be met on the quadric."""


class DegeneracyError(AdsOrbitsError, ArithmeticError):
    """A numerical rank or eigenvalue clustering is ambiguous at tolerance."""


class UnsupportedError(AdsOrbitsError, ValueError):
    pass


class NumericError(AdsOrbitsError, ArithmeticError):
    pass


class NotNilpotentError(AdsOrbitsError, ValueError):
    pass


class PreconditionError(AdsOrbitsError, ValueError):
    pass


class UnreachableError(AdsOrbitsError, ValueError):
    """Target point is outside the orbit model of the source point."""


class WrongHalfError(UnreachableError):
    """Target lies on the opposite half-slice of an S-orbit."""


class DegeneratePointError(AdsOrbitsError, ValueError):
    """Point where the closed-form orbit invariants all vanish."""


class UnsupportedTubeError(UnsupportedError):
    """The normal space of an orbit is not spacelike, so tubes are undefined."""
