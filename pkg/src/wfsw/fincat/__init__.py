from .core import CategoryError, Colimit, FinCategory, Mor, Obj, Square, Violation
from .finab import FinAb, group_order
from .finset import FinSet, UnionFind
from .ops import (
    DiagramColimit,
    FinDiagram,
    GuardExceeded,
    arrow_category,
    colimit,
    colimit_search,
    discrete_diagram,
    hom_enumerate,
    parallel_diagram,
    span_diagram,
    validate_category,
)
from .table import TableCategory, poset_category, terminal_category

__all__ = [
    "CategoryError", "Colimit", "DiagramColimit", "FinAb", "FinCategory", "FinDiagram",
    "FinSet", "GuardExceeded", "Mor", "Obj", "Square", "TableCategory", "UnionFind",
    "Violation", "arrow_category", "colimit", "colimit_search", "discrete_diagram",
    "group_order", "hom_enumerate", "parallel_diagram", "poset_category", "span_diagram",
    "terminal_category", "validate_category",
]
