"""
errors.py

Exception hierarchy for qshell. Every error raised by the library derives from
QShellError so the command layer can map it onto an exit code in one place.
"""


class QShellError(Exception):
    """Base class for all qshell errors."""

    # exit code used by run_qshell when this error escapes a command
    exit_code = 2


#### gf
class NonPrime(QShellError):
    pass


class ReducibleModulus(QShellError):
    pass


class UnsupportedSize(QShellError):
    pass


class DivisionByZero(QShellError, ZeroDivisionError):
    pass


class FieldMismatch(QShellError):
    pass


#### vecspace / qorder
class DimensionMismatch(QShellError):
    pass


class AmbientMismatch(QShellError):
    pass


class TooLarge(QShellError):
    pass


class BadDimension(QShellError):
    pass


class NotNested(QShellError):
    pass


class EmptyDifference(QShellError):
    pass


class ProfileMismatch(QShellError):
    pass


class NotBetween(QShellError):
    pass


class BadIndex(QShellError):
    pass


#### qcomplex / ordercx / homology
class NotPure(QShellError):
    pass


class Empty(QShellError):
    pass


class NotPrefix(QShellError):
    exit_code = 3


class ShellingBroken(QShellError):
    exit_code = 3


class CountDisagreement(QShellError):
    """Two homology routes produced different numbers. Always a defect."""
    exit_code = 3


#### cli
class ParseError(QShellError):
    pass


class BadArgs(QShellError):
    pass


class MethodUnavailable(QShellError):
    pass


class UnknownId(QShellError):
    pass
