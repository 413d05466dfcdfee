from .base import (
    Factored,
    FunctorialFactorization,
    TableFactorization,
    Undefined,
    accuracy_check,
    accuracy_comparands,
    forced_identity_check,
    validate_ff,
)
from .coalgebra import (
    AlgebraStructure,
    CoalgebraStructure,
    ConcreteMorphism,
    ConcreteOverArrows,
    algebra_category,
    algebra_morphism_check,
    algebra_structures,
    all_algebras,
    all_coalgebras,
    coalgebra_category,
    coalgebra_morphism_check,
    coalgebra_structures,
    discrete_concrete,
    is_algebra,
    is_coalgebra,
)
from .lifting_function import (
    LiftingFunction,
    boxplus_morphism_check,
    boxplus_morphism_witness,
    delta,
    entry_squares,
    gamma,
    gamma_full_embedding_check,
    restrict_boxplus,
    search_lifting_functions,
    small_generated_check,
    underlying_boxplus_equals_box,
    validate_lifting_function,
)

__all__ = [
    "AlgebraStructure", "CoalgebraStructure", "ConcreteMorphism", "ConcreteOverArrows", "Factored",
    "FunctorialFactorization", "LiftingFunction", "TableFactorization", "Undefined",
    "accuracy_check", "accuracy_comparands", "algebra_category", "algebra_morphism_check",
    "algebra_structures", "all_algebras", "all_coalgebras", "boxplus_morphism_check",
    "boxplus_morphism_witness", "coalgebra_category", "coalgebra_morphism_check",
    "coalgebra_structures", "delta", "discrete_concrete", "entry_squares", "forced_identity_check",
    "gamma", "gamma_full_embedding_check", "is_algebra", "is_coalgebra", "restrict_boxplus",
    "search_lifting_functions", "small_generated_check", "underlying_boxplus_equals_box",
    "validate_ff", "validate_lifting_function",
]
