"""Certified recomputation toolkit for extremal length systoles.

The package is organised bottom-up:

* :mod:`elsys.exact` -- exact arithmetic in Q(sqrt2, i), dense polynomials,
  fraction-free rank.
* :mod:`elsys.agm` -- certified interval enclosures for the AGM and the
  elliptic integral ratio K/K'.
* :mod:`elsys.conformal` -- Moebius maps, cross-ratios, and the four-puncture
  pillowcase normalisation.
* :mod:`elsys.qdiff` -- rational quadratic differentials, pullbacks, residues,
  and the 12x6 derivative matrix.
* :mod:`elsys.flatgeo` -- saddle connection enumeration on the flat octahedron
  and flat torus systolic ratios.
* :mod:`elsys.modulus` -- finite element moduli of curve families in plane
  domains and the prism crossing point.
* :mod:`elsys.catalog` -- the curve-by-curve catalogue of extremal lengths on
  the octahedron and its genus two double cover.
* :mod:`elsys.cli` -- batch verification commands.
"""

__version__ = "0.1.0"

from elsys.exact import (
    ExactMatrix,
    ExactNum,
    ExactPoly,
    matrix_rank,
    poly_gcd,
)
from elsys.agm import (
    CONSTANT_NAMES,
    Context,
    DOUBLE,
    EXTENDED,
    Interval,
    LandenReport,
    Modulus,
    REFERENCE_ENCLOSURES,
    agm_enclosure,
    kratio,
    landen_check,
    landen_transform,
    modulus_from_complement,
    named_constant,
    sqrt2_interval,
    sqrt3_interval,
)
from elsys.conformal import (
    CInterval,
    DomainError,
    INF,
    MarkedSphere,
    MoebiusMap,
    PairingError,
    PillowcaseResult,
    PrecisionError,
    cross_ratio,
    dual_marking,
    moebius_apply,
    pillowcase_modulus,
    pillowcase_normalization,
)
from elsys.qdiff import (
    DerivativeMatrix,
    FieldSamples,
    FloatQD,
    RationalQD,
    edge_qd,
    face_qd,
    finite_poles,
    gardiner_matrix,
    pullback,
    residue,
    residue_at_infinity,
    trajectory_field,
)
from elsys.flatgeo import (
    OCTAHEDRON,
    OctahedronComplex,
    SaddleConnection,
    FlatClassification,
    flat_length_classification,
    saddle_connections,
    torus_systolic_ratio,
)
from elsys.modulus import (
    DualityReport,
    ModulusResult,
    PrismCrossing,
    Quadrilateral,
    RectilinearQuad,
    build_Lx,
    modulus_dual_check,
    prism_crossing,
    quad_modulus,
    rect_modulus,
)
from elsys.catalog import (
    BolzaReport,
    CURVE_KINDS,
    ClassicConstant,
    OctahedronCurve,
    Surd,
    classic_constants,
    el_antiprism_face,
    el_octahedron,
    el_octahedron_detail,
    el_prism_face,
    el_prism_face_marked,
    elsys_bolza,
    face_times_dual,
    lift_to_bolza,
    prism_face_inverse,
)

__all__ = [
    "ExactMatrix", "ExactNum", "ExactPoly", "matrix_rank", "poly_gcd",
    "CONSTANT_NAMES", "Context", "DOUBLE", "EXTENDED", "Interval",
    "LandenReport", "Modulus", "REFERENCE_ENCLOSURES", "agm_enclosure",
    "kratio", "landen_check", "landen_transform", "modulus_from_complement",
    "named_constant", "sqrt2_interval", "sqrt3_interval",
    "CInterval", "DomainError", "INF", "MarkedSphere", "MoebiusMap",
    "PairingError", "PillowcaseResult", "PrecisionError", "cross_ratio",
    "dual_marking", "moebius_apply", "pillowcase_modulus",
    "pillowcase_normalization",
    "DerivativeMatrix", "FieldSamples", "FloatQD", "RationalQD", "edge_qd",
    "face_qd", "finite_poles", "gardiner_matrix", "pullback", "residue",
    "residue_at_infinity", "trajectory_field",
    "OCTAHEDRON", "OctahedronComplex", "SaddleConnection",
    "FlatClassification", "flat_length_classification", "saddle_connections",
    "torus_systolic_ratio",
    "DualityReport", "ModulusResult", "PrismCrossing", "Quadrilateral",
    "RectilinearQuad", "build_Lx", "modulus_dual_check", "prism_crossing",
    "quad_modulus", "rect_modulus",
    "BolzaReport", "CURVE_KINDS", "ClassicConstant", "OctahedronCurve",
    "Surd", "classic_constants", "el_antiprism_face", "el_octahedron",
    "el_octahedron_detail", "el_prism_face", "el_prism_face_marked",
    "elsys_bolza", "face_times_dual", "lift_to_bolza", "prism_face_inverse",
]
