r"""
Exact classification of sphere maps built from wallpaper groups.

The package constructs branched self-covers of the sphere from a wallpaper
group and an equivariant expanding-or-not affine map, then classifies them
exactly: local degrees, fibers, ramification portraits, orbifold signature
and Euler characteristic, parabolicity, and the expansion test on the
linear part.  All decision paths run in rational arithmetic; floats appear
only in diagnostics (contraction sampling, mesh diameters) and rendering.
"""

from .affine import (
    AffineMap,
    ContractionReport,
    DatumCheck,
    coarse_bound,
    conjugate_translation,
    conjugated_element,
    contraction_check,
    degree_of_endomorphism,
    is_valid_lattes_datum,
    translated_lifts,
)
from .crystal import (
    GROUP_KINDS,
    ConePointClass,
    CrystGroup,
    GroupElement,
    embed_point,
    geometric_norm_squared,
    make_group,
)
from .lattice import (
    IntegerMatrix2,
    RationalMatrix2,
    RationalVector2,
    coset_representatives,
    is_expanding,
    matrix_order,
)
from .mesh import MAX_DEPTH, MeshResult, preimage_mesh
from .orbifold import (
    INFINITY,
    PARABOLIC_SIGNATURES,
    ConsistencyError,
    OrbifoldSignature,
    ParabolicCheck,
    PortraitClassification,
    RamificationPortrait,
    RamificationValue,
    classify,
    euler_characteristic,
    has_periodic_critical,
    is_parabolic,
    ramification_function,
    signature,
)
from .quotient import (
    GROUP_SIGNATURES,
    ClassificationReport,
    FiberDegreeReport,
    InvariantResult,
    QuotientMapDatum,
    TheoremConditions,
    constant_fiber_degree_check,
    extract_portrait,
    fiber,
    induced_image,
    local_degree,
    run_verification,
    theorem_report,
)
from .render import mesh_stats, mesh_svg, write_mesh_outputs

__version__ = "0.1.0"

__all__ = [
    "__version__",
    # lattice
    "RationalVector2",
    "IntegerMatrix2",
    "RationalMatrix2",
    "matrix_order",
    "is_expanding",
    "coset_representatives",
    # crystal
    "GROUP_KINDS",
    "CrystGroup",
    "GroupElement",
    "ConePointClass",
    "make_group",
    "embed_point",
    "geometric_norm_squared",
    # affine
    "AffineMap",
    "DatumCheck",
    "is_valid_lattes_datum",
    "conjugated_element",
    "conjugate_translation",
    "degree_of_endomorphism",
    "translated_lifts",
    "coarse_bound",
    "ContractionReport",
    "contraction_check",
    # orbifold
    "RamificationValue",
    "INFINITY",
    "OrbifoldSignature",
    "PARABOLIC_SIGNATURES",
    "RamificationPortrait",
    "ConsistencyError",
    "has_periodic_critical",
    "ramification_function",
    "euler_characteristic",
    "signature",
    "ParabolicCheck",
    "is_parabolic",
    "PortraitClassification",
    "classify",
    # quotient
    "QuotientMapDatum",
    "induced_image",
    "local_degree",
    "fiber",
    "FiberDegreeReport",
    "constant_fiber_degree_check",
    "extract_portrait",
    "TheoremConditions",
    "ClassificationReport",
    "theorem_report",
    "InvariantResult",
    "run_verification",
    "GROUP_SIGNATURES",
    # mesh / render
    "MAX_DEPTH",
    "MeshResult",
    "preimage_mesh",
    "mesh_svg",
    "mesh_stats",
    "write_mesh_outputs",
]
