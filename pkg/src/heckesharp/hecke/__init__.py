"""Multi-parameter affine Hecke algebras of GL type and their automorphisms."""

from .algebra import HeckeElement, RootDatumGL, hecke_mul, im_length, is_central
from .automorphism import HeckeAutomorphism, apply_automorphism, check_closed, translation_defect
from .crossed import (
    CrossedProduct,
    CrossedProductElement,
    GroupAction,
    HeckeGroupAction,
    MatrixAmplified,
    ProjectiveMatrixAction,
    StructureConstantAlgebra,
    crossed_product_mul,
    folklore_iso_check,
    invariant_projection,
    standard_folklore_check,
)

__all__ = [
    "CrossedProduct", "CrossedProductElement", "GroupAction", "HeckeAutomorphism",
    "HeckeElement", "HeckeGroupAction", "MatrixAmplified", "ProjectiveMatrixAction",
    "RootDatumGL", "StructureConstantAlgebra", "apply_automorphism", "check_closed",
    "crossed_product_mul", "folklore_iso_check", "hecke_mul", "im_length",
    "invariant_projection", "is_central", "standard_folklore_check", "translation_defect",
]
