"""diffposet exceptions"""


class DiffPosetError(Exception):
    """Base class of every error raised by diffposet"""


class PosetStructureError(DiffPosetError, ValueError):
    pass


class RankOutOfRange(DiffPosetError, IndexError):

    def __init__(self, rank: int, low: int, high: int = None, what: str = 'rank'):
        self.rank = rank
        self.low = low
        self.high = high
        if high is None:
            super().__init__(f'{what} {rank} is below the minimum {low}')
        else:
            super().__init__(f'{what} {rank} outside the supported range {low}..{high}')


class HasseParseError(DiffPosetError, ValueError):

    def __init__(self, message: str, line_number: int = None):
        self.line_number = line_number
        if line_number is not None:
            message = f'line {line_number}: {message}'
        super().__init__(message)


class ChainExtensionError(DiffPosetError):

    def __init__(self, message: str, rank: int):
        self.rank = rank
        super().__init__(f'{message} (stuck at rank {rank})')


class SingularMatrixError(DiffPosetError, ZeroDivisionError):
    pass


class CertificateError(DiffPosetError):
    pass


class RunConfigError(DiffPosetError, ValueError):
    pass


class RankMismatchError(DiffPosetError, ValueError):
    pass
