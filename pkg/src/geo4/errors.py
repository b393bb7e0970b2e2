"""Exception hierarchy shared by all modules."""


class Geo4Error(Exception):
    """Base class for every error raised by the package."""


# invariants
class ParityMismatch(Geo4Error):
    pass


class NegativeBetti(Geo4Error):
    pass


class IndivisibleQuotient(Geo4Error):
    pass


class InsufficientCertificates(Geo4Error):
    pass


class RuleNotApplicable(Geo4Error):
    pass


class DescriptorRejected(Geo4Error):
    pass


# mcg
class UnknownCurve(Geo4Error):
    pass


class NoReflectionRegistered(Geo4Error):
    pass


class InconsistentAssignment(Geo4Error):
    pass


class NonPositiveInput(Geo4Error):
    pass


class IndexOutOfRange(Geo4Error):
    pass


class PatternMismatch(Geo4Error):
    pass


# lefschetz
class NonIntegerSignature(Geo4Error):
    pass


class SignatureUnavailable(Geo4Error):
    pass


class MissingPi1Words(Geo4Error):
    pass


class GenusMismatch(Geo4Error):
    pass


class CommutationFails(Geo4Error):
    pass


class ParamOutOfRange(Geo4Error):
    pass


# grouppres
class InvalidWord(Geo4Error):
    pass


class NoApplicableEdge(Geo4Error):
    pass


# geography
class NoSolution(Geo4Error):
    pass


class OutOfRegion(Geo4Error):
    pass


class InvariantMismatch(Geo4Error):
    pass


class MissingAnchor(Geo4Error):
    pass


# dsl
class ParseError(Geo4Error):
    def __init__(self, message, line=0, col=0):
        super().__init__(f"{message} at line {line}, column {col}")
        self.message = message
        self.line = line
        self.col = col
