"""Exact intersection lattices, isometry certificates and minimal-genus
decisions for minimal simply-connected elliptic surfaces with b2+ > 1."""

from .elliptic import (
    EllipticSurface,
    GenusVerdict,
    Rule,
    Status,
    adjunction_bound,
    basic_classes,
    canonical_class,
    km_scaled_genus,
    make_surface,
    min_genus,
    nucleus_min_genus,
    parse_surface,
)
from .errors import (
    BadParameters,
    BadTransvectionData,
    BudgetExceeded,
    DegenerateFrame,
    LatticeError,
    LatticeMismatch,
    NeedTwoHyperbolicPlanes,
    NonIntegralReflection,
    NotAnIsometry,
    NotOrthogonalToK,
    ParseError,
    PreconditionFailed,
    ZeroClass,
)
from .isometry import (
    Isometry,
    Realizability,
    SpinorFrame,
    canonical_frame,
    compose,
    eichler_transvection,
    fixes_class,
    identity_isometry,
    isometry_from_json_dict,
    make_frame,
    minus_identity_on_blocks,
    realizability,
    reflection,
    spinor_norm,
    verify_isometry,
)
from .lattice import (
    Block,
    HClass,
    Lattice,
    divisibility,
    format_lattice_spec,
    hclass_from_json_dict,
    is_characteristic,
    lattice_from_json_dict,
    lattice_from_spec,
    make_lattice,
    parse_class,
    parse_lattice_spec,
    square,
)
from .oracle import (
    DEFAULT_BUDGET,
    OrbitReport,
    default_generators,
    enumerate_vectors,
    exhaustive_isometry_search,
    orbit_bfs,
)
from .reduction import (
    ReductionResult,
    phi_isometry,
    reduce_even,
    reduce_in_elliptic,
    reduction_result_from_json_dict,
    sphere_reduction,
)

__version__ = "0.1.0"

__all__ = [
    "BadParameters",
    "BadTransvectionData",
    "Block",
    "BudgetExceeded",
    "DEFAULT_BUDGET",
    "DegenerateFrame",
    "EllipticSurface",
    "GenusVerdict",
    "HClass",
    "Isometry",
    "Lattice",
    "LatticeError",
    "LatticeMismatch",
    "NeedTwoHyperbolicPlanes",
    "NonIntegralReflection",
    "NotAnIsometry",
    "NotOrthogonalToK",
    "OrbitReport",
    "ParseError",
    "PreconditionFailed",
    "Realizability",
    "ReductionResult",
    "Rule",
    "SpinorFrame",
    "Status",
    "ZeroClass",
    "adjunction_bound",
    "basic_classes",
    "canonical_class",
    "canonical_frame",
    "compose",
    "default_generators",
    "divisibility",
    "eichler_transvection",
    "enumerate_vectors",
    "exhaustive_isometry_search",
    "fixes_class",
    "format_lattice_spec",
    "hclass_from_json_dict",
    "identity_isometry",
    "is_characteristic",
    "isometry_from_json_dict",
    "km_scaled_genus",
    "lattice_from_json_dict",
    "lattice_from_spec",
    "make_frame",
    "make_lattice",
    "make_surface",
    "min_genus",
    "minus_identity_on_blocks",
    "nucleus_min_genus",
    "orbit_bfs",
    "parse_class",
    "parse_lattice_spec",
    "parse_surface",
    "phi_isometry",
    "realizability",
    "reduce_even",
    "reduce_in_elliptic",
    "reduction_result_from_json_dict",
    "reflection",
    "spinor_norm",
    "sphere_reduction",
    "square",
    "verify_isometry",
]
