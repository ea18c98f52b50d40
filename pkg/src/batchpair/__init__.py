"""Pairings of GF(2^s) with prescribed differences, the polynomial method
behind them, and the functional batch codes they decode."""
from .errors import BatchPairError, CheckFailed, ResourceCap
from .field import Elem, FieldCtx, field_new
from .instance import Requests
from .pairing import Pairing, count_solutions, solve, verify_solution
from .polyring import Poly

__version__ = "0.1.0"

__all__ = [
    "BatchPairError", "CheckFailed", "Elem", "FieldCtx", "Pairing", "Poly", "Requests",
    "ResourceCap", "count_solutions", "field_new", "solve", "verify_solution",
]
