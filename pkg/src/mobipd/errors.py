"""Exception hierarchy shared by all modules."""

from __future__ import annotations


class MobError(Exception):
    """Base class for every error raised by mobipd."""


# dataset
class MissingColumn(MobError):
    pass


class NonBinaryTreatment(MobError):
    pass


class EmptyAfterFiltering(MobError):
    pass


class SchemaError(MobError):
    pass


# linreg
class RankDeficient(MobError):
    """Design matrix is not of full column rank.

    ``columns`` names the columns found to be linearly dependent on the
    preceding ones, which is how an unestimable stratified intercept surfaces.
    """

    def __init__(self, columns, message: str | None = None):
        self.columns = tuple(columns)
        super().__init__(message or f"rank-deficient design; dependent columns: {list(self.columns)}")


class Underdetermined(MobError):
    pass


class DegenerateVariance(MobError):
    pass


# mixed
class SingularGLS(MobError):
    def __init__(self, theta, message: str | None = None):
        self.theta = tuple(float(v) for v in theta)
        super().__init__(message or f"GLS system singular at variance ratios {self.theta}")


# stability
class TooFewDistinct(MobError):
    pass


# mobtree / glmmtree / methods
class RootUnfittable(MobError):
    pass


class IncompatibleSpec(MobError):
    pass


class ConfigError(MobError):
    pass
