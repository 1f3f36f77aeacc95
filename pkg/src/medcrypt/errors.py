"""Exception hierarchy.

Every failure the library raises on purpose derives from ``MedcryptError`` so
callers (and the CLI) can separate crypto/protocol failures from bugs.
"""


class MedcryptError(Exception):
    """Base class for all library errors."""


class PaddingError(MedcryptError):
    """Block padding is malformed; usually means corruption or a wrong key."""


class LengthError(MedcryptError):
    """Input is not a whole number of cipher blocks, or an IV has the wrong size."""


class KeyLengthError(MedcryptError):
    """Key material has a length the cipher does not accept."""


class SuiteMismatchError(MedcryptError):
    """A key tagged for one cipher suite was handed to a different cipher."""


class MessageRangeError(MedcryptError):
    """RSA message or ciphertext integer is outside ``[0, n)``."""


class ScaleError(MedcryptError):
    """Modulus too large for a desk-scale attack."""


class BlindingError(MedcryptError):
    """Blinding factor shares a factor with the modulus."""


class OrderError(MedcryptError):
    """A patient record would move that patient's timeline backwards."""


class FrameError(MedcryptError):
    """Wire frame fails strict parsing."""


class ReplayError(MedcryptError):
    """Envelope nonce was already accepted in this session."""


class AuthenticityError(MedcryptError):
    """Envelope signature does not verify, or the sender is not the session peer."""


class DecryptError(MedcryptError):
    """Envelope authenticated but its contents could not be decrypted or parsed."""
