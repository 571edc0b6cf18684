"""Exception hierarchy.

Errors split into two families so that front ends can map them to exit
codes: :class:`InputError` for text/structure problems with the input and
:class:`PreconditionError` for well-formed input that an operation cannot
accept.
"""


class ConcordiaError(Exception):
    pass


class InputError(ConcordiaError):
    pass


class PreconditionError(ConcordiaError):
    pass


class MalformedPD(InputError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = ""
        if line is not None:
            where = f" (line {line}" + (f", column {column})" if column is not None else ")")
        super().__init__(message + where)


class InconsistentDiagram(InputError):
    pass


class MalformedPolynomial(InputError):
    pass


class NonFreeAbelianization(PreconditionError):
    pass


class WrongComponentCount(PreconditionError):
    pass


class LengthUnsupported(PreconditionError):
    pass


class UnknownBuiltin(PreconditionError):
    pass


class InvalidSeifertMatrix(InputError):
    pass


class OmegaIsOne(PreconditionError):
    pass


class NotPrime(PreconditionError):
    pass


class SiteInvalid(PreconditionError):
    pass


class NontrivialTangle(SiteInvalid):
    pass


class KnottedAxis(SiteInvalid):
    pass


class TrivialQuotient(PreconditionError):
    pass


class InvalidConfig(PreconditionError):
    pass
