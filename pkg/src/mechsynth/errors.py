"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class MechSynthError(Exception):
    """Base class for every error raised by the package."""


class ZeroDenominator(MechSynthError, ZeroDivisionError):
    pass


class DivisionByZero(MechSynthError, ZeroDivisionError):
    pass


class ShapeMismatch(MechSynthError, ValueError):
    pass


class ParseError(MechSynthError, ValueError):
    pass


class NonpositiveValue(MechSynthError, ValueError):
    pass


class DisconnectedGraph(MechSynthError, ValueError):
    pass


class NotWellDefined(MechSynthError, ValueError):
    """The port edges contain a circuit, so no admittance matrix exists."""


class PortCountMismatch(MechSynthError, ValueError):
    pass


class PortCircuit(MechSynthError, ValueError):
    pass


class InternalInvariantError(MechSynthError, RuntimeError):
    """Something that is provably impossible happened."""


class OracleMismatch(InternalInvariantError):
    pass


class CensusExceeded(InternalInvariantError):
    pass


class NoPattern(MechSynthError, ValueError):
    pass


class InvalidCertificate(MechSynthError, ValueError):
    pass


class WrongForm(MechSynthError, ValueError):
    pass


class Inadmissible(MechSynthError, ValueError):
    pass


class IrrationalEntry(MechSynthError, ValueError):
    """A square root that the caller needs is not a rational number."""


class IrrationalElement(IrrationalEntry):
    pass


class NonnegativityViolation(MechSynthError, ValueError):
    pass


class BranchMismatch(MechSynthError, ValueError):
    pass


class TopologyUnavailable(MechSynthError, LookupError):
    pass


class NotParamount(MechSynthError, ValueError):
    pass
