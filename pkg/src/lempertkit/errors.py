"""Exception hierarchy.

Two broad families: precondition/usage problems (``ValueError`` subclasses)
and numerical failures (``NumericalFailure``), which the command line maps
to distinct exit codes.
"""


class LempertError(Exception):
    """Base class for every error raised by this package."""


class NumericalFailure(LempertError, ArithmeticError):
    """A computation could not be carried out to the required accuracy."""


# -- geometry / usage ------------------------------------------------------

class NoAutomorphism(LempertError, ValueError):
    """No disc automorphism maps the given inputs onto the given outputs."""


class DimensionMismatch(LempertError, ValueError):
    pass


class OutsideDomain(LempertError, ValueError):
    pass


class RadiusTooLarge(LempertError, ValueError):
    """A differentiation contour leaves the domain."""


class MixedGeodesics(LempertError, ValueError):
    """Covector fields normalized against different geodesics were combined."""


class DegeneratePairing(LempertError, ValueError):
    pass


class DegenerateGradient(LempertError, ValueError):
    pass


class AllSamplesDegenerate(LempertError, ValueError):
    pass


class NotALeftInverse(LempertError, ValueError):
    pass


# -- numerical ---------------------------------------------------------------

class BranchFailure(NumericalFailure):
    """A square-root argument landed on the branch cut (-inf, 0]."""


class DenominatorUnderflow(NumericalFailure):
    pass


class ZeroOnContour(NumericalFailure):
    pass


class NoRootInDisc(NumericalFailure):
    pass


class MultipleRoots(NumericalFailure):
    pass


class NewtonDivergence(NumericalFailure):
    pass
