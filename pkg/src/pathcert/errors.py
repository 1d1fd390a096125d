"""Exception types shared across the package."""


class GraphFormatError(ValueError):
    """Malformed graph, tree or certificate input."""

    def __init__(self, message: str, location: str | None = None):
        self.location = location
        super().__init__(f"{location}: {message}" if location else message)


class BudgetExceeded(RuntimeError):
    """A search or oracle ran past its node budget; the answer is unknown."""


class InvalidEmbedding(ValueError):
    """The map is not total on the tree or not injective."""


class ExtensionError(ValueError):
    pass


class PaletteTooSmall(ExtensionError):
    pass


class PartNotStable(ExtensionError):
    pass


class CreatureViolated(ExtensionError):
    pass


class ImproperColoring(ExtensionError):
    pass


class BaseLevelViolation(ValueError):
    """The clique bound t is too small for the graph at the bottom of the recursion."""


class InvariantViolation(AssertionError):
    """A runtime check of a proof step failed. Always a bug."""
