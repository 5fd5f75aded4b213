"""Euclidean Jordan algebras, symmetric-cone geometry and the scalar holographic operator."""

__version__ = "0.1.0"

from .jordan import (  # noqa: E402
    Element,
    JordanAlgebra,
    LinearMap,
    algebra_from_name,
    rank1,
    spin,
    sym_real,
)
from .special import Signature, WeightParams  # noqa: E402

__all__ = [
    "__version__",
    "Element",
    "JordanAlgebra",
    "LinearMap",
    "Signature",
    "WeightParams",
    "algebra_from_name",
    "rank1",
    "spin",
    "sym_real",
]
