"""Exception taxonomy shared across the package.

Everything raised on purpose derives from EcdlError so callers (and the
CLI) can catch one base class for operational failures.
"""


class EcdlError(Exception):
    """Base class for all errors raised by this package."""


class NotInvertible(EcdlError):
    """Modular inverse requested for a non-invertible residue."""


class UnknownCurve(EcdlError):
    """Curve name not present in the registry."""


class MalformedPoint(EcdlError):
    """Point with out-of-range coordinates, bad encoding, or off the curve."""


class InfinityNotSerializable(EcdlError):
    """The point at infinity has no byte encoding."""


class CorruptBlock(EcdlError):
    """Block decoding failed: wrong key or tampered ciphertext."""


class LengthMismatch(EcdlError):
    """Recorded plaintext length is inconsistent with the block count."""


class InvalidPublicKey(EcdlError):
    """Encryption key is infinity or not on the curve."""


class ContainerError(EcdlError):
    """Ciphertext container is structurally invalid."""


class CurveMismatch(EcdlError):
    """Key material and data disagree about which curve is in use."""


class KeyFileError(EcdlError):
    """Key or signature file could not be parsed."""


class NotPcap(EcdlError):
    """Input is not a classic pcap capture."""


class UnsupportedLinkType(EcdlError):
    """Capture link type is not Ethernet."""


class TruncatedCapture(EcdlError):
    """Capture record is cut short or inconsistent with the header."""


class TruncatedFrame(EcdlError):
    """Frame too short for the protocol being parsed."""


class NotArp(EcdlError):
    """Payload is not an ARP request/reply."""


class SignatureInvalid(EcdlError):
    """Signature verification failed."""


class SignatureRequired(EcdlError):
    """Signature policy violated: signed data without a verification key, or
    a verification key given for unsigned data."""
