"""Exception hierarchy.

Every error carries an ``exit_code`` used by the command line front end:
2 input/format, 3 infeasible, 4 size guard.
"""


class CoexpandError(Exception):
    exit_code = 2


class FormatError(CoexpandError, ValueError):
    """Malformed input: a file, a facet, a permutation, a bounds vector."""


class RangeError(CoexpandError, IndexError):
    """A dimension index outside the admissible range."""


class SizeGuard(CoexpandError, RuntimeError):
    """An exhaustive enumeration would exceed its configured budget."""

    exit_code = 4


class Infeasible(CoexpandError, ValueError):
    """The target vector is not in the image of the map over the rationals."""

    exit_code = 3


class NoIntegerSolution(Infeasible):
    """The target vector is a rational image point but not an integral one."""


class Unbounded(CoexpandError, ValueError):
    """An LP is unbounded, or a polyhedron is not pointed/bounded."""


NotPointed = Unbounded


class ZeroVector(CoexpandError, ValueError):
    pass


class ZeroMap(CoexpandError, ValueError):
    pass


class NotTU(CoexpandError, ValueError):
    """A total-unimodularity precondition turned out to be false."""


class NotExact(CoexpandError, ValueError):
    pass


class NegativeInput(CoexpandError, ValueError):
    pass


class DomainError(CoexpandError, ValueError):
    pass


class NotAManifold(CoexpandError, ValueError):
    pass


class VoltageInconsistent(CoexpandError, ValueError):
    pass


class NotConnected(CoexpandError, ValueError):
    pass


class NotCertified(CoexpandError, ValueError):
    """No exact method applies (e.g. integer expansion of a non-TU map)."""
