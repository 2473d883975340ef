class CombdualError(Exception):
    """Base class for library errors."""


class ParseError(CombdualError):
    """Instance or certificate document is malformed."""


class InvalidInstance(CombdualError):
    """Document parses but violates a presentation invariant."""


class InvalidVertex(CombdualError):
    pass


class ResourceLimit(CombdualError):
    pass


class MixedPresentation(CombdualError):
    pass


class InconsistentOrientation(CombdualError):
    pass


class SaturationError(CombdualError):
    """A level-parametric computation did not stabilise where it must."""


class InternalError(CombdualError):
    """A construction contradicted a theorem it relies on; carries diagnostics."""


class SearchExhausted(InternalError):
    pass


class NoBPath(InternalError):
    pass


class CheckerRejected(InternalError):
    def __init__(self, stage: str, detail: str = ""):
        super().__init__(f"{stage}: {detail}" if detail else stage)
        self.stage = stage
