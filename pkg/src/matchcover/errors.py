"""Exception types shared across the package."""


class InputError(ValueError):
    """Malformed or out-of-range input: bad vertex, ground mismatch, bad file."""


class InfeasibleError(Exception):
    """The requested matching does not exist."""


class StructureViolationError(Exception):
    """A pair of lattice elements has no unique meet or join.

    This is never masked: if it fires on a covered-set lattice it falsifies
    the structural assumption the coefficients rely on, so callers must see it.
    """


class CapExceededError(Exception):
    """A safety cap on an exponential-size computation was exceeded."""
