"""Binary locally repairable codes with sequential and parallel erasure recovery."""

from . import bounds, constructions, gf2, kernels, recovery
from .code import CodeReport, LinearCode, from_parity_check
from .constructions import BuiltCode, build
from .gf2 import BitMatrix
from .recovery import VerificationReport, check_parallel, peel, verify_sequential, verify_sequential_sampled
from .specs import ConstructionSpec, parse_spec

__version__ = "0.1.0"

__all__ = [
    "BitMatrix",
    "BuiltCode",
    "CodeReport",
    "ConstructionSpec",
    "LinearCode",
    "VerificationReport",
    "bounds",
    "build",
    "check_parallel",
    "constructions",
    "from_parity_check",
    "gf2",
    "kernels",
    "parse_spec",
    "peel",
    "recovery",
    "verify_sequential",
    "verify_sequential_sampled",
]
