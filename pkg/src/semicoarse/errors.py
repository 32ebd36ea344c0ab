"""Exception hierarchy shared by every layer of the library."""


class SemiCoarseError(Exception):
    """Base class; the CLI maps any subclass to the invalid-input exit code."""


class UnknownVertex(SemiCoarseError):
    pass


class NotSurjective(SemiCoarseError):
    pass


class NotBornologous(SemiCoarseError):
    def __init__(self, message, pair=None):
        super().__init__(message)
        self.pair = pair


class NotACover(SemiCoarseError):
    pass


class NoBridge(SemiCoarseError):
    pass


class UnsupportedCover(SemiCoarseError):
    pass


class IllegalTailKind(SemiCoarseError):
    pass


class SpaceMismatch(SemiCoarseError):
    pass


class LengthMismatch(SemiCoarseError):
    pass


class GuardUnproved(SemiCoarseError):
    pass


class CertificateInvalid(SemiCoarseError):
    pass


class ResourceCap(SemiCoarseError):
    pass


class JunctionUnverified(SemiCoarseError):
    def __init__(self, message, index=None):
        super().__init__(message)
        self.index = index


class ObjectsNotComposable(SemiCoarseError):
    pass


class NotOpposite(SemiCoarseError):
    pass


class EmptyMergeWindow(SemiCoarseError):
    pass


class TailsNotEqual(SemiCoarseError):
    pass


class UnsupportedRegion(SemiCoarseError):
    pass


class TailsNotControlled(SemiCoarseError):
    pass


class NoAtlasMember(SemiCoarseError):
    pass


class CoverMismatch(SemiCoarseError):
    pass


class MoveInapplicable(SemiCoarseError):
    pass


class ParseError(SemiCoarseError):
    def __init__(self, message, location=None):
        super().__init__(f"{location}: {message}" if location else message)
        self.location = location


class ValidationError(SemiCoarseError):
    pass
