"""Exception hierarchy shared by every module of the package."""


class CensusError(Exception):
    """Base class for all errors raised by :mod:`cayley_census`."""


# group construction -------------------------------------------------------

class GroupAxiomError(CensusError):
    """A multiplication table violates one of the group axioms."""


class NotClosed(GroupAxiomError):
    pass


class NoIdentity(GroupAxiomError):
    pass


class NotAssociative(GroupAxiomError):
    pass


class MissingInverse(GroupAxiomError):
    pass


class OrderTooLarge(CensusError):
    pass


class NotAbelian(CensusError):
    pass


class ExponentTooSmall(CensusError):
    pass


class NotInvolution(CensusError):
    pass


class NotASubgroup(CensusError):
    pass


# maps and automorphisms ---------------------------------------------------

class LengthMismatch(CensusError):
    pass


class NotAnAutomorphism(CensusError):
    pass


class WitnessInvalid(CensusError):
    pass


class IdentityAutomorphism(CensusError):
    pass


# subsets and orbits -------------------------------------------------------

class BudgetExceeded(CensusError):
    pass


class GeneratorNotPermutation(CensusError):
    pass


class HTooLarge(CensusError):
    pass


class InternalCheckFailed(CensusError):
    """Two independent computations of the same quantity disagreed."""


# graphs and census --------------------------------------------------------

class GroupTooLarge(CensusError):
    pass


class NotInverseClosed(CensusError):
    pass


class FileParseError(CensusError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}: "
        elif where:
            where += " "
        super().__init__(where + message)


class BadSeed(CensusError):
    pass


class ZeroSamples(CensusError):
    pass


class UnknownGroup(CensusError):
    pass
