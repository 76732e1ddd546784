"""Exception types raised across the package."""


class NihoError(Exception):
    """Base class for all errors raised by nihocodes."""


# field construction / arithmetic
class NonPrimeModulus(NihoError, ValueError):
    pass


class NotPrimitive(NihoError, ValueError):
    pass


class SizeLimit(NihoError, ValueError):
    pass


class NotInSubfield(NihoError, ValueError):
    pass


class OddCharacteristic(NihoError, ValueError):
    pass


class ZeroInput(NihoError, ValueError):
    pass


# family parameters
class ConstraintViolation(NihoError, ValueError):
    """A family parameter violates a family constraint."""


# exponential sums
class IrrationalSum(NihoError, ArithmeticError):
    """Fiber counts over the nonzero residues differ, so the sum is not rational."""


class DomainError(NihoError, ValueError):
    pass


# closed forms
class NonIntegralFrequency(NihoError, ArithmeticError):
    pass


class NegativeFrequency(NihoError, ArithmeticError):
    pass


class WrongFamily(NihoError, ValueError):
    pass


# codes
class CosetCollision(NihoError, ValueError):
    pass
