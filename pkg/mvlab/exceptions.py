"""
Exceptions raised by mvlab.

Failed checks are reported as data (see mvlab.reports); the classes below are
reserved for invalid inputs and violated preconditions.
"""


class MvlabError(Exception):
    """Base class for every mvlab error."""


class InvalidGeneratorError(MvlabError):
    pass


class PreconditionError(MvlabError):
    pass


class InvalidUnitError(MvlabError):
    pass


class MembershipError(MvlabError):
    def __init__(self, value, carrier):
        self.value = value
        self.carrier = carrier
        super().__init__(f"{value} is not an element of {carrier}")


class UnsupportedCarrierError(MvlabError):
    pass


class NotProductClosedError(MvlabError):
    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class NotAModuleError(MvlabError):
    """The group is not closed under the scalar ring; ``witness`` is (r, g) with r*g outside the group."""

    def __init__(self, message, witness=None):
        self.witness = witness
        super().__init__(message)


class HypothesisNotMetError(MvlabError):
    pass


class InvalidHomError(MvlabError):
    pass


class RestrictionError(MvlabError):
    pass


class CompositionError(MvlabError):
    pass


class UniversalPropertyError(MvlabError):
    pass


class DslSyntaxError(MvlabError):
    def __init__(self, message, position):
        self.position = position
        super().__init__(f"{message} at position {position}")


class ElaborationError(MvlabError):
    pass
