"""Error taxonomy shared across the package.

ParameterError   invalid or inconsistent arguments (maps to CLI exit code 2)
ResourceError    request exceeds supported integer ranges or guard limits
CacheFormatError a prime-table cache file is malformed or inconsistent
"""


class ParameterError(ValueError):
    """Raised when arguments violate a documented precondition."""


class ResourceError(RuntimeError):
    """Raised when a request exceeds supported ranges (e.g. primes beyond 2^63)."""


class CacheFormatError(RuntimeError):
    """Raised when a cache file fails magic, version, or consistency checks."""
