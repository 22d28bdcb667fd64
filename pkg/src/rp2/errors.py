"""Exception hierarchy shared by all rp2 modules.

Two families matter for the CLI exit-code contract: validation errors
(bad input, exit 2) and numeric errors (overflow, non-finite output,
exit 3).
"""


class RP2Error(Exception):
    """Base class for every error raised by rp2."""


class ValidationError(RP2Error):
    """Input violates a documented precondition."""


class NumericError(RP2Error):
    """A computation produced an unusable numeric result."""


# projlin
class ZeroVector(ValidationError):
    pass


class CoincidentArguments(ValidationError):
    pass


class SingularTransform(NumericError):
    pass


class NotPositiveHyperbolic(ValidationError):
    pass


class PointNotOnConic(ValidationError):
    pass


class DegenerateConic(ValidationError):
    pass


class AtInfinity(NumericError):
    pass


class EndpointsNotOnConic(ValidationError):
    pass


class WitnessOnWrongComponent(ValidationError):
    pass


# coxeter
class InvalidCartanMatrix(ValidationError):
    pass


class DegenerateCartan(ValidationError):
    pass


class IntegerOverflow(NumericError):
    def __init__(self, word):
        self.word = tuple(word)
        super().__init__(
            "64-bit overflow while multiplying word %s; reduce max_len"
            % "".join(str(i) for i in self.word))


# bulge
class PoleOnChord(ValidationError):
    pass


class NotConicPreserving(ValidationError):
    pass


class OrbitSelfCrossing(ValidationError):
    pass


class AxisMismatch(ValidationError):
    pass


class TooFewSamples(ValidationError):
    pass


class InvalidLamination(ValidationError):
    def __init__(self, report):
        self.report = report
        super().__init__("invalid lamination: %s" % "; ".join(
            str(v) for v in report.violations))


# cli
class ConfigError(ValidationError):
    pass
