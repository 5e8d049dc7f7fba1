"""Exception hierarchy. Every error raised on purpose derives from LocsysError."""


class LocsysError(Exception):
    pass


class FieldMismatchError(LocsysError):
    pass


class AmbientMismatchError(LocsysError):
    pass


class AlgebraMismatchError(LocsysError):
    pass


class NotIdealError(LocsysError):
    pass


class NotSubalgebraError(LocsysError):
    pass


class CharacteristicError(LocsysError):
    """Trace-form radical requested where char p <= dim."""


class NotSemisimpleError(LocsysError):
    pass


class NonSplitError(LocsysError):
    pass


class NotPerfectError(LocsysError):
    pass


class EmbeddingError(LocsysError):
    pass


class BudgetError(LocsysError):
    pass


class FormatError(LocsysError):
    pass
