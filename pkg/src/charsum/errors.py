"""Exception hierarchy shared by all charsum modules."""


class CharsumError(Exception):
    """Base class for all charsum errors."""


class NotOddPrime(CharsumError):
    """The modulus is not an odd prime."""


class CapacityExceeded(CharsumError):
    """The request exceeds a hard capacity limit (table size or exact-mode order)."""


class IndexOutOfRange(CharsumError):
    """Character index outside [0, p-2]."""


class ZeroInverse(CharsumError):
    """Modular inverse of 0 requested."""


class MixedOrder(CharsumError):
    """Arithmetic between cyclotomic integers of different root orders."""


class PrincipalCharacter(CharsumError):
    """Operation requires a nonprincipal character."""


class ShiftNotCoprime(CharsumError):
    """Shift parameter must be nonzero mod p."""


class DegenerateShifts(CharsumError):
    """Shift pair (a, b) with ab(a-b) = 0 mod p."""


class ZeroInD(CharsumError):
    """Subset D must avoid the residue 0."""
