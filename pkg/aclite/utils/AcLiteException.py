from typing import Optional


class AcLiteException(Exception):

    exitCode = 1

    def __init__(self, message) -> None:

        super().__init__(message)
        self.message = message


class ConfigurationError(AcLiteException):

    exitCode = 2


class DimensionError(AcLiteException):

    exitCode = 2

    @staticmethod
    def mismatch(op: str, a, b) -> 'DimensionError':

        return DimensionError(message=f"{op}: incompatible shapes {tuple(a)} and {tuple(b)}")


class BackboneLookupError(AcLiteException):

    exitCode = 2


class VocabularyError(AcLiteException):

    exitCode = 3


class EncodingError(AcLiteException):

    exitCode = 3


class DataError(AcLiteException):

    exitCode = 3


class MetricError(AcLiteException):

    exitCode = 3


class RewardError(AcLiteException):

    exitCode = 3


class FormatError(AcLiteException):

    exitCode = 3

    def __init__(self, message, offset: Optional[int] = None) -> None:

        super().__init__(message=message if offset is None else f"{message} (at byte offset {offset})")
        self.offset = offset


class NumericDomainError(AcLiteException):

    exitCode = 4


class OptimizerError(AcLiteException):

    exitCode = 4


class SelfTestFailure(AcLiteException):

    exitCode = 4
