"""Exception hierarchy.

The CLI maps these onto exit codes: ``InputError`` -> 2,
``ResourceLimitError`` -> 3, ``CrossCheckError`` -> 4.
"""


class NormTorusError(Exception):
    pass


class InputError(NormTorusError, ValueError):
    """Malformed or mathematically invalid user input."""


class ResourceLimitError(NormTorusError):
    """A requested computation exceeds the configured size ceiling."""


class CrossCheckError(NormTorusError):
    """Independent computations of the same quantity disagree (a bug)."""


class ExactnessError(NormTorusError, ArithmeticError):
    """A vector that must lie in a lattice does not (d o d != 0 or similar)."""


class TorsionCokernelError(NormTorusError):
    """A cokernel that should be a lattice has torsion."""
