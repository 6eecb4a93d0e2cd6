"""Exception hierarchy shared by every stage of the pipeline."""


class CentreSymError(Exception):
    """Base class for all library errors."""


class ValidationError(CentreSymError):
    """A CurveSpec violates one of its invariants."""


class NonRegular(ValidationError):
    """The velocity of the curve vanishes somewhere."""


# the zero-speed example in the docs goes by this name too
VanishingSpeed = NonRegular


class VanishingRosetteCurvature(ValidationError):
    """The radius of curvature p + p'' of a support curve is not positive."""


class ParseError(CentreSymError):
    def __init__(self, message, line=None, column=None):
        self.line = line
        self.column = column
        where = f" (line {line}, column {column})" if line is not None else ""
        super().__init__(message + where)


class DegenerateRoot(CentreSymError):
    """A curvature root could not be classified at the configured tolerance."""


class BasePointIsInflexion(CentreSymError):
    pass


class TangentialPreimage(CentreSymError):
    """An extremal angle level is touched tangentially away from an extremum."""


class NotSameFamily(CentreSymError):
    """Two arcs do not belong to the same set of parallel arcs."""


class AsymptoticPair(CentreSymError):
    """The CSS-point denominator vanishes: the chord is an asymptote."""


class SingularPoint(CentreSymError):
    pass


class DegenerateChord(CentreSymError):
    pass


class ParallelConsecutiveChords(CentreSymError):
    pass


class ProlongationAmbiguous(CentreSymError):
    """Glueing-scheme prolongation is not unique (non-generic input)."""


class DoubleAsymptote(CentreSymError):
    pass


class OpenBranch(CentreSymError):
    pass


class InflexionAtPair(CentreSymError):
    pass


class HypothesesUnmet(CentreSymError):
    def __init__(self, failed):
        self.failed = list(failed)
        super().__init__("hypotheses not met: " + ", ".join(self.failed))


class DegenerateConstruction(CentreSymError):
    pass
