"""Exception hierarchy shared by all treebox modules."""


class TreeboxError(Exception):
    """Base class for all treebox domain errors."""


class MalformedWordError(TreeboxError):
    """A letter sequence is not over the alphabet, or word text cannot be parsed."""


class RankMismatchError(TreeboxError):
    """Two objects over free groups of different rank were combined."""


class OutOfRangeError(TreeboxError):
    """An index argument (prefix length, radius, ...) is outside its legal range."""


class ActionUndefinedError(TreeboxError):
    """The translation action was applied at a word that is not a vertex.

    The action is genuinely partial: (T, e) . g exists iff g is a vertex of T.
    """


class WindowExceededError(TreeboxError):
    """An operation needs knowledge beyond the tree's certified window.

    ``max_valid`` carries the largest radius the window can still answer.
    """

    def __init__(self, message: str, max_valid: int = -1):
        super().__init__(message)
        self.max_valid = max_valid


class ContractViolationError(TreeboxError):
    """A membership oracle or ray broke its contract (prefix closure, host containment).

    ``offender`` names the vertex where the violation was caught.
    """

    def __init__(self, message: str, offender: str = ""):
        super().__init__(message)
        self.offender = offender


class UnknownTreeError(TreeboxError):
    """Catalog lookup failed: unknown name or invalid parameters."""


class CannotApproximateError(TreeboxError):
    """Periodic approximation needs the tree to keep growing past the chosen radius."""


class InvalidAxesError(TreeboxError):
    """Fusion needs two distinct generator letters for the carrier cross."""


class MalformedCodeError(TreeboxError):
    """A coding sequence has an inadmissible prefix letter or tail."""


class NoWitnessError(TreeboxError):
    """No witness exists at the certified scale (e.g. trees equal within windows)."""


class PreconditionUnmetError(TreeboxError):
    """An operation's semantic precondition fails for the supplied arguments."""


class TreeJSONError(TreeboxError):
    """A tree document violates the JSON schema; the message names the field."""
