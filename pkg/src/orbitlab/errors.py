"""Exception types shared across the package."""


class OrbitlabError(Exception):
    """Base class for all package errors."""


class UnsupportedSeries(OrbitlabError):
    pass


class RankTooLarge(OrbitlabError):
    pass


class NotARoot(OrbitlabError):
    pass


class GroupTooLarge(OrbitlabError):
    pass


class ParseError(OrbitlabError):
    def __init__(self, location, message=""):
        self.location = location
        super().__init__(f"{location}: {message}" if message else str(location))


class InconsistentFrame(OrbitlabError):
    def __init__(self, name, message=""):
        self.name = name
        super().__init__(f"{name}: {message}" if message else str(name))


class WrongLabel(OrbitlabError):
    pass


class NotAChamber(OrbitlabError):
    pass


class DegenerateInput(OrbitlabError):
    pass


class NotFixed(OrbitlabError):
    pass


class NoStableChamber(OrbitlabError):
    pass


class DescentUndefined(OrbitlabError):
    pass


class UnsupportedStabilizer(OrbitlabError):
    pass


class MalformedGenerator(OrbitlabError):
    pass


class ZeroAngle(OrbitlabError):
    pass


class NonSemisimple(OrbitlabError):
    pass


class InconsistentSignature(OrbitlabError):
    pass


class NotInStabilizer(OrbitlabError):
    pass


class NotRealRoot(OrbitlabError):
    pass


class MissingCalibration(OrbitlabError):
    pass


class SingularX(OrbitlabError):
    pass


class NotIntegral(OrbitlabError):
    pass


class MissingGeneratorValue(OrbitlabError):
    pass


class OutsideVe(OrbitlabError):
    pass


class SingularPoint(OrbitlabError):
    pass


class Ambiguous(OrbitlabError):
    pass


class NoMatch(OrbitlabError):
    pass
