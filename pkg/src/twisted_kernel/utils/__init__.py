"""Utility modules for twisted_kernel.

`twisted_kernel.utils.config` is imported directly where needed: it reads the environment and
pulls in the coefficients package, so it is not re-exported here.
"""

from twisted_kernel.utils.exceptions import (
    ArithmeticRangeError,
    BoundInapplicableError,
    CharacterNotFoundError,
    CongruenceError,
    ConvergenceError,
    InvalidDiscriminantError,
    InvariantError,
    ModulusError,
    PoleError,
    PreconditionError,
    StripError,
    TwistedKernelError,
)
from twisted_kernel.utils.parallel import ordered_map
from twisted_kernel.utils.reports import RunReport, Verdict, dumps, load_schema, to_jsonable

__all__ = [
    "ArithmeticRangeError",
    "BoundInapplicableError",
    "CharacterNotFoundError",
    "CongruenceError",
    "ConvergenceError",
    "InvalidDiscriminantError",
    "InvariantError",
    "ModulusError",
    "PoleError",
    "PreconditionError",
    "StripError",
    "TwistedKernelError",
    "ordered_map",
    "RunReport",
    "Verdict",
    "dumps",
    "load_schema",
    "to_jsonable",
]
