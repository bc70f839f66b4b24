"""Exception hierarchy shared by every module."""


class BundleError(Exception):
    """Base class for all errors raised by bundlechar."""


# exact-poly
class NonzeroRemainder(BundleError, ArithmeticError):
    pass


class BothZero(BundleError, ValueError):
    pass


class ZeroPolynomial(BundleError, ValueError):
    pass


class NonConvergence(BundleError, ArithmeticError):
    pass


# laurent-sym
class NonUnitDeterminant(BundleError, ValueError):
    pass


class UnboundVariable(BundleError, KeyError):
    pass


class ZeroUnitValue(BundleError, ZeroDivisionError):
    pass


class NotTraceExpressible(BundleError, ValueError):
    pass


# fib-family
class NotDivisibleByU(BundleError, ArithmeticError):
    pass


class UndefinedForN(BundleError, ValueError):
    pass


# rel-matrix
class DerivationMismatch(BundleError, AssertionError):
    pass


class NonGeneric(BundleError, ValueError):
    pass


class RecoveryFailed(BundleError, ValueError):
    pass


# variety-geo
class OnExcludedFiber(BundleError, ValueError):
    pass


class NonHyperbolicN(BundleError, ValueError):
    pass


class NoExtraLine(BundleError, ValueError):
    pass


class MinusTwoUnsupported(BundleError, ValueError):
    pass


class OutOfRange(BundleError, ValueError):
    pass


# arith-inv
class ParabolicYTwo(BundleError, ValueError):
    pass


class SingularIMinusB(BundleError, ValueError):
    pass


class CertificateFailed(BundleError):
    """A cyclotomic factor was found where none should exist."""
