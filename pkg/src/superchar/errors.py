"""Exception hierarchy for the superchar toolkit."""


class SupercharError(Exception):
    """Base class for all errors raised by this package."""


# --- group construction and validation ---

class NotLatinSquareError(SupercharError):
    """A multiplication table row or column is not a permutation."""


class NotAssociativeError(SupercharError):
    """The multiplication table fails associativity."""


class NoIdentityError(SupercharError):
    """No two-sided identity element exists in the table."""


class OrderLimitExceededError(SupercharError):
    """The group order exceeds the supported limit (512)."""


class NotSubgroupError(SupercharError):
    """An element set is not a subgroup."""


class NotNormalError(SupercharError):
    """A subgroup is not normal in its parent group."""


class ProductNotSubgroupError(SupercharError):
    """The setwise product HN failed to close into a subgroup."""


class NotIsomorphismError(SupercharError):
    """A map is not a bijective homomorphism where one is required."""


# --- partitions and enumeration ---

class ParentMismatchError(SupercharError):
    """Operands live over different parent groups."""


class SearchSpaceTooLargeError(SupercharError):
    """Enumeration was refused: too many conjugacy classes or too large a group."""


# --- supernormal structure ---

class NotSupernormalError(SupercharError):
    """The subgroup is not a union of superclasses."""


class CompatibilityViolationError(SupercharError):
    """Restrict-then-deflate disagreed with deflate-then-restrict (internal bug)."""


class NotConjugationInvariantError(SupercharError):
    """Inner superclasses are not stable under conjugation by the big group."""


# --- chief series ---

class TheoremViolationError(SupercharError):
    """A canonical diamond isomorphism failed to match theories (internal bug)."""


class NoMatchError(SupercharError):
    """No factor matching between two chief series was found (internal bug)."""


class SeriesMismatchError(SupercharError):
    """A chief series does not belong to the given theory."""


class NotApplicableError(SupercharError):
    """The butterfly refinement does not apply to this pair of series."""


# --- numeric character machinery ---

class DiagonalizationFailureError(SupercharError):
    """Class-matrix diagonalization could not separate eigenspaces."""


class PartCountMismatchError(SupercharError):
    """Character-side and class-side part counts disagree (tolerance problem)."""
