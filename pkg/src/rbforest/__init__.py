"""Free Rota-Baxter algebra on angularly decorated rooted forests.

Exact symbolic computation of the algebra product, grafting operator,
angular coproduct, counit, and antipode, together with concrete models
and a machine-checked verification suite for every algebraic law.
"""

from .coefficients import ONE, WEIGHT, ZERO, WeightPoly
from .forests import (
    LEAF,
    LEAF_FOREST,
    AngleAddr,
    Forest,
    ForestStats,
    Letter,
    Tree,
    VertexAddr,
    concat_with_letter,
    degree,
    depth,
    enumerate_forests,
    make_alphabet,
    random_forest,
    stats,
)
from .algebra import (
    Element,
    check_rb_identity,
    concat,
    double_product,
    graft,
    linear_combine,
    multiply,
)
from .coalgebra import (
    MarkedTree,
    MarkedWord,
    MarkingError,
    SubforestMarking,
    TensorElement,
    closure,
    coproduct,
    coproduct_factorwise,
    counit,
    enumerate_subforests,
    evaluate_marked_word,
    filtration_degree,
    quotient,
    reduced_coproduct,
    subforest_count,
    tensor_multiply,
)
from .hopf import (
    SuiteReport,
    antipode,
    antipode_recursive,
    convolution_check,
    run_axiom_suite,
)
from .models import (
    LaurentModel,
    LaurentSeries,
    ModelError,
    ScalarModel,
    evaluate_hom,
    laurent_mul,
    pole_projection,
)
from .syntax import ParseError, parse_element, parse_forest, render

__all__ = [
    "AngleAddr",
    "Element",
    "Forest",
    "ForestStats",
    "LaurentModel",
    "LaurentSeries",
    "LEAF",
    "LEAF_FOREST",
    "Letter",
    "MarkedTree",
    "MarkedWord",
    "MarkingError",
    "ModelError",
    "ONE",
    "ParseError",
    "ScalarModel",
    "SubforestMarking",
    "SuiteReport",
    "TensorElement",
    "Tree",
    "VertexAddr",
    "WEIGHT",
    "WeightPoly",
    "ZERO",
    "antipode",
    "antipode_recursive",
    "check_rb_identity",
    "closure",
    "concat",
    "concat_with_letter",
    "convolution_check",
    "coproduct",
    "coproduct_factorwise",
    "counit",
    "degree",
    "depth",
    "double_product",
    "enumerate_forests",
    "enumerate_subforests",
    "evaluate_hom",
    "evaluate_marked_word",
    "filtration_degree",
    "graft",
    "laurent_mul",
    "linear_combine",
    "make_alphabet",
    "multiply",
    "parse_element",
    "parse_forest",
    "pole_projection",
    "quotient",
    "random_forest",
    "reduced_coproduct",
    "render",
    "run_axiom_suite",
    "stats",
    "subforest_count",
    "tensor_multiply",
]
