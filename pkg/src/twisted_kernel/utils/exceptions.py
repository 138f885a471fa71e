class TwistedKernelError(Exception):
    """Base class for every error raised by twisted_kernel."""

    pass


class PreconditionError(TwistedKernelError, ValueError):
    """Raised when an operation is called outside its documented domain."""

    pass


class InvalidDiscriminantError(PreconditionError):
    """Raised when a discriminant is not negative fundamental or shares a factor with the level."""

    pass


class CongruenceError(PreconditionError):
    """Raised when r^2 = D (mod 4N) fails for a discriminant/residue pair."""

    pass


class ModulusError(PreconditionError):
    """Raised for incompatible or oversized moduli of formal exponential sums."""

    pass


class StripError(PreconditionError):
    """Raised when s leaves the convergence strip 1 < Re(s) < k - 1."""

    pass


class BoundInapplicableError(PreconditionError):
    """Raised when the explicit estimate is asked for outside sigma > 1, k - sigma > 1."""

    pass


class ArithmeticRangeError(TwistedKernelError, OverflowError):
    """Raised when an integer input exceeds the supported 2**63 scale."""

    pass


class PoleError(TwistedKernelError, ValueError):
    """Raised when Gamma or 1F1 is evaluated at (or too close to) a pole."""

    pass


class ConvergenceError(TwistedKernelError, ArithmeticError):
    """Raised when a series fails to converge or a block sum does not stabilize within n_cap."""

    pass


class InvariantError(TwistedKernelError, AssertionError):
    """Raised when an identity asserted at runtime does not hold."""

    pass


class CharacterNotFoundError(TwistedKernelError, LookupError):
    """Raised when a character index does not exist for its modulus."""

    pass
