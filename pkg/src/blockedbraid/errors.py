"""Exception hierarchy shared by every module of the package."""


class BraidError(Exception):
    """Base class for all errors raised by ``blockedbraid``."""


class MalformedToken(BraidError, ValueError):
    def __init__(self, token: str, position: int):
        super().__init__(f"malformed token {token!r} at position {position}")
        self.token = token
        self.position = position


class IndexOutOfRange(BraidError, ValueError):
    def __init__(self, index: int, limit: int, position: int | None = None):
        where = "" if position is None else f" at position {position}"
        super().__init__(f"generator index {index} out of range 1..{limit}{where}")
        self.index = index
        self.limit = limit
        self.position = position


class StrandMismatch(BraidError, ValueError):
    def __init__(self, n1: int, n2: int):
        super().__init__(f"strand counts differ: {n1} != {n2}")


class LengthMismatch(BraidError, ValueError):
    pass


class CertificateCheckFailed(BraidError):
    pass


class InvalidDeterminant(BraidError, ValueError):
    pass


class TooLarge(BraidError, ValueError):
    pass


class BudgetExceeded(BraidError):
    pass


class InadmissibleBase(BraidError, ValueError):
    pass


class WrongTable(BraidError, ValueError):
    pass


class UnsupportedStrandCount(BraidError, ValueError):
    pass
