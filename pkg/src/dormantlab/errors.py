"""Exception taxonomy shared across the package.

The split mirrors the CLI exit-code contract: input problems, internal
inconsistencies, precondition failures and cross-check mismatches are
distinguishable by exception class.
"""


class DormantlabError(Exception):
    """Base class for all package errors."""


class InputError(DormantlabError):
    """Malformed or out-of-contract input (bad prime, bad shape, bad flag)."""


class DegreeBoundViolated(InputError):
    """A companion potential exceeds its degree bound."""


class TypeMismatch(InputError):
    """Graph type (g, r) does not match the requested computation."""


class ComplexityRefusal(InputError):
    """The requested sweep exceeds the configured work budget."""


class NotSplit(DormantlabError):
    """A characteristic/indicial polynomial has an irreducible factor of degree >= 2."""


class NonLogPthPower(DormantlabError):
    """p-fold iterate of the log vector field left the log tangent algebra (arithmetic bug)."""


class UnexpectedExponents(DormantlabError):
    """A dormant candidate produced non-split exponents (signals a bug)."""


class ProfileInconsistent(DormantlabError):
    """Section-count sweep did not stabilize to a consistent splitting type."""


class NotDormant(DormantlabError):
    """Operation requires a connection with vanishing p-curvature."""


class IncompatibleOddPart(DormantlabError):
    """Odd part fails the self-duality needed for the even extension."""


class MalformedBlocks(DormantlabError):
    """Block matrix does not have the (odd | nu / 0 | 0) even-oper shape."""


class NotAssociative(DormantlabError):
    """Structure constants fail associativity; carries a witness triple."""


class NotCommutative(DormantlabError):
    """Structure constants fail commutativity."""


class NonSemisimple(DormantlabError):
    """Regular representation not diagonalizable within tolerance after retries."""


class CasimirSingular(DormantlabError):
    """Genus-0 degree requested but every character kills the Casimir element."""


class NotNearInteger(DormantlabError):
    """A sum that must be integral landed too far from the nearest integer."""
