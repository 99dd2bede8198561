"""Exception hierarchy with stable machine-readable codes.

Every error carries a kebab-case ``code`` used by the CLI to classify
failures (input errors exit 2, everything else per command semantics).
"""

from __future__ import annotations


class BraceBlockError(Exception):
    code = "error"


class ElementNotInCarrierError(BraceBlockError):
    code = "element-not-in-carrier"


class NotAGroupError(BraceBlockError):
    code = "not-a-group"


class IdentityNotFirstError(NotAGroupError):
    code = "identity-not-first"


class NotASubgroupError(BraceBlockError):
    code = "not-a-subgroup"


class CarrierMismatchError(BraceBlockError):
    code = "carrier-mismatch"


class KNotCentralError(BraceBlockError):
    code = "K-not-central"


class KNotInAError(BraceBlockError):
    code = "K-not-in-A"


class QuotientNotAbelianError(BraceBlockError):
    code = "A-mod-K-not-abelian"


class PairMismatchError(BraceBlockError):
    code = "pair-mismatch"


class NotAHomomorphismError(BraceBlockError):
    code = "not-a-homomorphism"


class ImageEscapesAError(BraceBlockError):
    code = "image-escapes-A"


class NoUnityError(BraceBlockError):
    code = "no-unity"


class DeltaEscapesKError(BraceBlockError):
    code = "delta-escapes-K"


class NotBilinearError(BraceBlockError):
    code = "not-bilinear"


class NonvanishingOnKError(BraceBlockError):
    code = "nonvanishing-on-K"


class ValueOutsideKError(BraceBlockError):
    code = "value-outside-K"


class ValidationFailedError(BraceBlockError):
    code = "validation-failed"


class NotClassTwoError(BraceBlockError):
    code = "not-class-two"


class NotAbelianImageError(BraceBlockError):
    code = "image-not-abelian"


class NotASkewBraceError(BraceBlockError):
    code = "not-a-skew-brace"


class NotABijectionError(BraceBlockError):
    code = "not-a-bijection"


class BoundExceededError(BraceBlockError):
    code = "bound-exceeded"


class InputError(BraceBlockError):
    """CLI-level input problem (bad flags, malformed files)."""

    code = "input-error"
