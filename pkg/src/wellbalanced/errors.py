"""Exception types shared by the package."""


class InadmissibleRank(ValueError):
    pass


class DimensionMismatch(ValueError):
    pass


class IdenticalRoots(ValueError):
    pass


class BudgetExceeded(RuntimeError):
    """The exact solver was asked for more than its budget allows.

    This never means "not balanced"; callers must fall back to certificates.
    """


class AlreadyWellBalanced(ValueError):
    pass


class NotApplicable(ValueError):
    pass


class SpecParseError(ValueError):
    pass


class NotARoot(ValueError):
    pass
