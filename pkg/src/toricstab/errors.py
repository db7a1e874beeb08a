"""Exception hierarchy.

Every error raised on purpose by the engine derives from ``ToricStabError`` so
the command line can map them to the usage exit code in one place.
"""


class ToricStabError(Exception):
    pass


# fans
class FanError(ToricStabError):
    pass


class NonPrimitiveRay(FanError):
    pass


class NonSmoothCone(FanError):
    pass


class NotComplete(FanError):
    pass


class OverlappingCones(FanError):
    pass


class BadCodim(FanError):
    pass


class NotMaximalCone(FanError):
    pass


class UnknownBuiltin(FanError):
    pass


# intersection theory
class UnknownLabel(ToricStabError):
    pass


class WrongDegree(ToricStabError):
    pass


class NotAmple(ToricStabError):
    pass


# charges and stability
class NotSupercritical(ToricStabError):
    pass


class ZeroCharge(ToricStabError):
    pass


class OutOfRange(ToricStabError):
    pass


class UndefinedSlope(ToricStabError):
    pass


class NoFacetPresentation(ToricStabError):
    pass


class HypothesisViolated(ToricStabError):
    pass


class NotAmpleAtSample(ToricStabError):
    pass


# blowups and fibrations
class NotAmpleAfterBlowup(ToricStabError):
    pass


class PushforwardRegimeViolated(ToricStabError):
    pass


class WindowViolated(ToricStabError):
    pass


# one-parameter optimisation
class EmptyFeasibleSet(ToricStabError):
    pass


class XiNotGreaterThanR(ToricStabError):
    pass


class DivisionByZero(ToricStabError, ZeroDivisionError):
    pass
