"""Ideal arithmetic in Leavitt path algebras of finite directed graphs."""

from .dsl import DSLError, eval_expr, parse_graph, parse_ideal, print_graph
from .graph import Cycle, Graph, GraphError, OMEGA, hs_closure, quotient_graph
from .ideals import (
    IdealError,
    IdealForm,
    NotPrimeRadical,
    compare,
    contains,
    gr,
    ideal_sum,
    intersect,
    is_prime,
    normalize,
    power,
    prime_power_factor,
    product,
    radical,
)
from .poly import QQ, GF, Poly

__all__ = [
    "Cycle", "DSLError", "GF", "Graph", "GraphError", "IdealError", "IdealForm", "NotPrimeRadical",
    "OMEGA", "Poly", "QQ", "compare", "contains", "eval_expr", "gr", "hs_closure", "ideal_sum",
    "intersect", "is_prime", "normalize", "parse_graph", "parse_ideal", "power", "prime_power_factor",
    "print_graph", "product", "quotient_graph", "radical",
]
__version__ = "0.1.0"
