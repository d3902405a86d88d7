class EzdivError(Exception):
    """Base class for all errors raised by the engine."""


class ParseError(EzdivError):
    def __init__(self, line: int | None, reason: str):
        self.line = line
        self.reason = reason
        where = f"line {line}: " if line is not None else ""
        super().__init__(f"{where}{reason}")


class InfiniteDimensional(EzdivError):
    """The presented quotient is not Artinian."""


class DegreeBoundExceeded(InfiniteDimensional):
    pass


class NotLocal(EzdivError):
    pass


class NotCommutativeOrAssociative(EzdivError):
    pass


class AlgebraMismatch(EzdivError):
    pass


class NotExactZeroDivisor(EzdivError):
    """Base for the reasons an element fails to be an exact zero-divisor."""


class ZeroElement(NotExactZeroDivisor):
    pass


class NotInMaximalIdeal(NotExactZeroDivisor):
    pass


class AnnihilatorZero(NotExactZeroDivisor):
    pass


class AnnihilatorNotPrincipal(NotExactZeroDivisor):
    pass


class PartnerConditionFails(NotExactZeroDivisor):
    pass


class TableTooShort(EzdivError):
    pass


class HypothesisFails(EzdivError):
    pass


class DivisionFails(EzdivError):
    pass


class ResolutionTooShort(EzdivError):
    pass


class HorizonInconclusive(EzdivError):
    pass
