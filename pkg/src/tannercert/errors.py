"""Exception types shared across the package."""


class InputError(ValueError):
    """Invalid user-supplied data: bad file, malformed vector, parameter out of range."""


class BudgetError(RuntimeError):
    """A configured enumeration or size budget would be exceeded."""


class SolverFault(RuntimeError):
    """Internal inconsistency detected in the exact LP path; indicates a bug, not bad input."""
