"""Exact symbolic engine for graded noncommutative independence.

Evaluates mixed moments of noncommutative variables under Boolean, free,
conditionally free, and the interpolating level-m tensor models, plus the
associated free-product bialgebra with its coproduct, antipode, and state
convolution. All arithmetic is exact rational.
"""

from .algebra import (
    FpWord,
    Generator,
    LinComb,
    Scalar,
    TildeWord,
    Word,
    clamp_t,
    fp_mul,
    tilde_mul,
    word_star,
)
from .mfree import MContext, j_eval, mfree_eval, phi_m_eval, psi_condition
from .states import (
    DegreeOverflowError,
    MissingMomentError,
    MomentError,
    PointState,
    State,
    StatePair,
    boolean_extend_eval,
    boolean_product_eval,
    cfree_eval,
    cfree_eval_word,
    free_eval,
)

__version__ = "0.1.0"

__all__ = [
    "FpWord",
    "Generator",
    "LinComb",
    "MContext",
    "Scalar",
    "TildeWord",
    "Word",
    "State",
    "StatePair",
    "PointState",
    "MomentError",
    "DegreeOverflowError",
    "MissingMomentError",
    "boolean_extend_eval",
    "boolean_product_eval",
    "cfree_eval",
    "cfree_eval_word",
    "free_eval",
    "clamp_t",
    "fp_mul",
    "tilde_mul",
    "word_star",
    "j_eval",
    "mfree_eval",
    "phi_m_eval",
    "psi_condition",
    "__version__",
]
