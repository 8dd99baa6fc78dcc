"""Exception types shared across the package."""


class AbvError(Exception):
    """Base class for every error raised by this package."""


class ParseError(AbvError, ValueError):
    pass


class GuardExceeded(AbvError):
    """A computation was refused because the input exceeds the size guard."""


class SupportMismatch(AbvError, ValueError):
    pass


class LambdaMismatch(AbvError, ValueError):
    pass


class SideMismatch(AbvError, ValueError):
    pass


class LengthMismatch(AbvError, ValueError):
    pass


class VersionMismatch(AbvError):
    pass


class CorruptEntry(AbvError):
    pass


class InternalInconsistency(AbvError):
    """Two routes that must agree by theorem disagreed. Always a bug."""
