"""Exception types raised across torsionlab."""


class TorsionLabError(Exception):
    pass


class GuardExceeded(TorsionLabError):
    """An exhaustive computation would exceed a configured size guard."""


class InvalidModulus(TorsionLabError):
    pass


class DepthExceeded(TorsionLabError):
    pass


class NotFinite(TorsionLabError):
    """The operation needs a finite ring (or finite module)."""


class NotIdempotent(TorsionLabError):
    pass


class RingMismatch(TorsionLabError):
    pass


class NotSpecializationClosed(TorsionLabError):
    pass


class GeneratorsDontGenerate(TorsionLabError):
    pass


class EmbeddingSearchFailed(TorsionLabError):
    pass


class ParseError(TorsionLabError):
    def __init__(self, message, text="", position=0, expected=()):
        self.text = text
        self.position = position
        self.expected = tuple(expected)
        detail = message
        if expected:
            detail += " (expected one of: %s)" % ", ".join(sorted(set(expected)))
        super().__init__("%s at position %d in %r" % (detail, position, text))
