"""Exact computations for affine Hecke algebras of GL type and the finite
groups, tori and twisted group algebras attached to inertial-class
descriptors."""

from . import kernels
from .bernstein import (
    Block,
    GammaAction,
    InertialDescriptor,
    StabilizerData,
    StructureReport,
    TorusQuotient,
    build_stabilizer_data,
    fixed_point_exists,
    quotient_torus,
    stab_orbit,
    structure_report,
    unramified_subgroups,
)
from .catalog import green_search, run_entry
from .coeffring import Cyclotomic, QmodZ, Scalar, TorusLaurent
from .descriptor_io import dump_descriptor, load_descriptor, parse_descriptor
from .errors import DomainError, ParseError
from .finstruct import (
    BlockPermutation,
    FinAbGroup,
    TwoCocycle,
    dual_group,
    is_coboundary,
    snf,
    twisted_algebra_structure,
)
from .hecke import (
    HeckeAutomorphism,
    HeckeElement,
    RootDatumGL,
    apply_automorphism,
    folklore_iso_check,
    hecke_mul,
    invariant_projection,
    is_central,
)

__version__ = "0.1.0"

__all__ = [
    "Block", "BlockPermutation", "Cyclotomic", "DomainError", "FinAbGroup", "GammaAction",
    "HeckeAutomorphism", "HeckeElement", "InertialDescriptor", "ParseError", "QmodZ",
    "RootDatumGL", "Scalar", "StabilizerData", "StructureReport", "TorusLaurent",
    "TorusQuotient", "TwoCocycle", "apply_automorphism", "build_stabilizer_data",
    "dual_group", "dump_descriptor", "fixed_point_exists", "folklore_iso_check",
    "green_search", "hecke_mul", "invariant_projection", "is_central", "is_coboundary",
    "kernels", "load_descriptor", "parse_descriptor", "quotient_torus", "run_entry", "snf",
    "stab_orbit", "structure_report", "twisted_algebra_structure", "unramified_subgroups",
]
