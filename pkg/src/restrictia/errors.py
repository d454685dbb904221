"""Error taxonomy shared by every module in the package."""


class RestrictiaError(Exception):
    """Base class so callers can catch anything raised by this package."""


# field loading and arithmetic

class NotTotallyReal(RestrictiaError):
    pass


class DiscMismatch(RestrictiaError):
    pass


class BasisNotRing(RestrictiaError):
    pass


class BasisNotMaximal(RestrictiaError):
    pass


class ReduciblePolynomial(RestrictiaError):
    pass


class FieldMismatch(RestrictiaError):
    pass


class ZeroInput(RestrictiaError):
    pass


class PrecisionUnreachable(RestrictiaError):
    pass


# ideal arithmetic

class ZeroIdeal(RestrictiaError):
    pass


class NotPrime(RestrictiaError):
    pass


class NotIntegral(RestrictiaError):
    pass


# lattice enumeration

class NotPositiveDefinite(RestrictiaError):
    pass


class NotEven(RestrictiaError):
    pass


# q-series algebra

class BadWeight(RestrictiaError):
    pass


class OddWeight(RestrictiaError):
    pass


class PrecTooSmall(RestrictiaError):
    pass


class NotInSpace(RestrictiaError):
    pass


# restriction pipeline

class NonIntegralIdeal(RestrictiaError):
    pass


class DegenerateSolve(RestrictiaError):
    pass


class GuardMismatch(RestrictiaError):
    pass


class IdentityFailed(RestrictiaError):
    pass


# binary cubic forms

class NonpositiveDisc(RestrictiaError):
    pass


class NotARing(RestrictiaError):
    pass


class NotGenerating(RestrictiaError):
    pass


class BoxOverflow(RestrictiaError):
    pass


# numerical evaluation

class ZeroCoordinate(RestrictiaError):
    pass


class NonconvergentTail(RestrictiaError):
    pass


class TailTooLarge(RestrictiaError):
    pass


class ToleranceUnreachable(RestrictiaError):
    pass
