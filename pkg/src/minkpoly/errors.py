"""Exceptions raised by minkpoly constructors and formulas."""


class MinkPolyError(ValueError):
    """Base class for all geometric precondition failures."""


class _Indexed(MinkPolyError):
    def __init__(self, index, msg=None):
        self.index = index
        super().__init__(msg or f"{type(self).__name__} at index {index}")


# linear algebra
class DegenerateSpan(MinkPolyError):
    pass


class AmbiguousOrientation(MinkPolyError):
    pass


class NotNull(MinkPolyError):
    pass


class NonPositiveScale(MinkPolyError):
    pass


# null hyperplanes and polyhedra
class NotNullDirection(MinkPolyError):
    pass


class PointOffPlane(_Indexed):
    pass


class NotNullSpan(MinkPolyError):
    pass


class NonSpacelikeEdge(_Indexed):
    pass


class DegenerateFace(_Indexed):
    pass


class ConvexityViolation(MinkPolyError):
    pass


# 4-polytopes
class DegeneratePlanes(MinkPolyError):
    pass


class NonSpacelikeFace(_Indexed):
    pass


class DependentBasis(MinkPolyError):
    pass


class FamilyUnsupported(MinkPolyError):
    pass


class SingularGram(MinkPolyError):
    pass


class SingularAreaMatrix(MinkPolyError):
    pass


class DegenerateBase(MinkPolyError):
    pass


class NonSpacelikeBase(MinkPolyError):
    pass


class DependentGenerators(MinkPolyError):
    pass


class NonNullHyperface(_Indexed):
    pass


class NonSpacelikeGenerator(_Indexed):
    pass


class RankUnstable(MinkPolyError):
    pass


# tiling
class ExtentTooLarge(MinkPolyError):
    pass
