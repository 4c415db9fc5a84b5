"""Exception types shared across the package."""


class StructuralError(ValueError):
    """Shapes, labels or fields do not line up."""


class InputError(ValueError):
    """An argument is outside the operation's domain (unknown label, bad entry, ...)."""


class CapacityError(RuntimeError):
    """An exhaustive routine was asked to run beyond its configured cap."""
