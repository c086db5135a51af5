"""Exception hierarchy. Class names double as the CLI's machine-readable error tags."""


class TriadCryptError(Exception):
    """Base class for every error raised by this package."""

    exit_code = 1


class InvalidConfig(TriadCryptError, ValueError):
    exit_code = 10


class SingularParameters(TriadCryptError, ValueError):
    exit_code = 11


class ZeroWaveVector(TriadCryptError, ValueError):
    exit_code = 12


class InsufficientTriads(TriadCryptError):
    exit_code = 13


class EmptyImage(TriadCryptError, ValueError):
    exit_code = 20


class LengthMismatch(TriadCryptError, ValueError):
    exit_code = 21


class DimensionMismatch(TriadCryptError, ValueError):
    exit_code = 22


class UnsupportedImage(TriadCryptError, ValueError):
    exit_code = 23


class InvalidPrime(TriadCryptError, ValueError):
    exit_code = 30


class ZeroConstant(TriadCryptError, ValueError):
    exit_code = 31


class NotBijective(TriadCryptError, ValueError):
    exit_code = 32


class DegenerateVariance(TriadCryptError, ValueError):
    exit_code = 40


class MalformedHeader(TriadCryptError, ValueError):
    exit_code = 50


class UnsupportedFormat(TriadCryptError, ValueError):
    exit_code = 51


class TruncatedPayload(TriadCryptError, ValueError):
    exit_code = 52


class KeyFileError(TriadCryptError, ValueError):
    exit_code = 53


class SumMismatchWarning(UserWarning):
    """Decrypted pixel sum differs from the transmitted S_P (wrong key or tampering)."""
