"""Exception hierarchy shared by the geometry, combinatorics and CLI layers."""


class IsvolError(Exception):
    """Base class for every domain error raised by this package."""


# hyperbolic linear algebra
class IdealPoint(IsvolError, ValueError):
    pass


class NotHyperideal(IsvolError, ValueError):
    pass


class DegenerateEdge(IsvolError, ValueError):
    pass


class IntersectingTruncationPlanes(IsvolError, ValueError):
    pass


class SegmentMissesBall(IntersectingTruncationPlanes):
    """Both endpoints hyperideal, dual planes disjoint, but the segment stays outside the ball."""


# 1-D numerics
class OutOfDomain(IsvolError, ValueError):
    pass


class MaxSubdivisions(IsvolError, RuntimeError):
    pass


class NoSignChange(IsvolError, ValueError):
    pass


# truncated tetrahedra
class InvalidConfig(IsvolError, ValueError):
    def __init__(self, message, condition=None):
        super().__init__(message)
        self.condition = condition


class NumericallyDegenerate(IsvolError, ValueError):
    pass


class TouchesSphere(IsvolError, ValueError):
    pass


class NoFeasiblePoint(IsvolError, RuntimeError):
    pass


# triangulations
class TriangulationError(IsvolError, ValueError):
    pass


class UnpairedFace(TriangulationError):
    pass


class InconsistentInvolution(TriangulationError):
    pass


class BadPermutation(TriangulationError):
    pass


class DuplicateGluing(TriangulationError):
    pass


class FormatError(TriangulationError):
    pass


class NonManifoldLink(TriangulationError):
    pass


class NonIntegral(TriangulationError):
    pass


class NotOrientable(TriangulationError):
    pass


# bounds
class MissingField(IsvolError, ValueError):
    pass


class BadGenus(IsvolError, ValueError):
    pass
