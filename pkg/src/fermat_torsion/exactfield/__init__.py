"""Exact arithmetic in tower extensions of Q and dense linear algebra over them."""

from .element import FieldElement, field_add, field_dot, field_inv, field_mul, field_neg
from .kernels import BACKEND_NAME
from .linalg import ExactMatrix, nullspace, solve
from .tower import Q, Q_ALPHA_BETA, Q_EPS_MU, Tower, TowerMismatchError, get_tower

__all__ = [
    "BACKEND_NAME",
    "ExactMatrix",
    "FieldElement",
    "Q",
    "Q_ALPHA_BETA",
    "Q_EPS_MU",
    "Tower",
    "TowerMismatchError",
    "field_add",
    "field_dot",
    "field_inv",
    "field_mul",
    "field_neg",
    "get_tower",
    "nullspace",
    "solve",
]
