"""Exception types shared across the package."""


class SrcPolarError(Exception):
    """Base class for all package-specific errors."""


class DomainError(SrcPolarError, ValueError):
    """A symbol or parameter lies outside its valid range."""


class UnsupportedAlphabetError(SrcPolarError, ValueError):
    """Operation defined only for binary (or prime) alphabets."""


class BudgetExceededError(SrcPolarError, ValueError):
    """Exact enumeration would exceed the hard state budget."""


class ProtocolError(SrcPolarError, RuntimeError):
    """Sequential-decoder indices visited out of order."""


class FingerprintMismatchError(SrcPolarError, ValueError):
    """Compressed data does not match the index-set manifest."""


class FormatError(SrcPolarError, ValueError):
    """Malformed serialized container or manifest."""
