"""Exact intersection homology and blown-up cohomology of filtered
simplicial complexes.

Everything here computes over the integers (or a prime field) with no
floating point anywhere: chain groups are free modules on explicit
simplex or class bases, maps are integer matrices, and homology comes
from Smith normal form.  The main entry points:

- :class:`FilteredComplex` and :func:`barycentric_subdivide` for the
  underlying combinatorics,
- :func:`intersection_homology` and :func:`blown_up_cohomology` for the
  two theories,
- :func:`residual_decomposition_check`, :func:`join_homology_prediction`
  and :func:`blown_up_join_prediction` for the structural comparisons,
- :func:`compare_blown_up` and :func:`tower_check` for the subdivision
  comparison maps,
- :mod:`stratihom.corpus` for ready-made example complexes, and
- ``stratihom`` on the command line for all of it over JSON documents.
"""

from .blowup_cochains import (
    BlownUpIntersectionComplex,
    GlobalBlownUpComplex,
    RelativeBlownUpComplex,
    blown_up_cohomology,
    blown_up_join_prediction,
    class_coboundary,
    class_labels_by_degree,
    decomposed_simplex_complex,
    extension_matrix,
    relative_blown_up_cohomology,
    relative_decomposition_sides,
    restriction_matrix,
    restriction_surjectivity,
)
from .core_complex import (
    FilteredComplex,
    FullnessError,
    Simplex,
    Stratum,
    StructuralError,
    VertexOrder,
    barycentric_subdivide,
    boundary_matrix,
    clot_join,
    clots,
    closed_star,
    complexity,
    decompose,
    facet_closure,
    is_full,
    is_regular_simplex,
    join_complex,
    link,
    order_vertices,
    require_full,
    residual_complex,
)
from .exact_algebra import (
    INTEGERS,
    ZERO_GROUP,
    ChainComplexData,
    HomologyResult,
    RingSpec,
    smith_normal_form,
)
from .extint import NEG_INF, POS_INF, ExtInt, ext
from .intersection_chains import (
    DecompositionReport,
    IntersectionChainComplex,
    Perversity,
    RelativeIntersectionComplex,
    intersection_homology,
    join_case_label,
    join_homology_prediction,
    lower_middle_perversity,
    ordinary_homology,
    residual_decomposition_check,
    top_perversity,
    upper_middle_perversity,
    zero_perversity,
)
from .products import (
    OrderedCochainComplex,
    blown_up_unit,
    class_cup,
    enumerate_decompositions,
    global_cup_vector,
    verify_blow_up_map,
)
from .subdivision import (
    BlownUpComparison,
    GMVertexMap,
    SubdivisionMap,
    TowerReport,
    compare_blown_up,
    gm_vertex_map,
    tower_check,
    transport_perversity,
)

__version__ = "0.1.0"

__all__ = [
    "BlownUpComparison",
    "BlownUpIntersectionComplex",
    "ChainComplexData",
    "DecompositionReport",
    "ExtInt",
    "FilteredComplex",
    "FullnessError",
    "GMVertexMap",
    "GlobalBlownUpComplex",
    "HomologyResult",
    "INTEGERS",
    "IntersectionChainComplex",
    "NEG_INF",
    "OrderedCochainComplex",
    "POS_INF",
    "Perversity",
    "RelativeBlownUpComplex",
    "RelativeIntersectionComplex",
    "RingSpec",
    "Simplex",
    "Stratum",
    "StructuralError",
    "SubdivisionMap",
    "TowerReport",
    "VertexOrder",
    "ZERO_GROUP",
    "barycentric_subdivide",
    "blown_up_cohomology",
    "blown_up_join_prediction",
    "blown_up_unit",
    "boundary_matrix",
    "class_coboundary",
    "class_cup",
    "class_labels_by_degree",
    "clot_join",
    "clots",
    "closed_star",
    "compare_blown_up",
    "complexity",
    "decompose",
    "decomposed_simplex_complex",
    "enumerate_decompositions",
    "ext",
    "extension_matrix",
    "facet_closure",
    "global_cup_vector",
    "gm_vertex_map",
    "intersection_homology",
    "is_full",
    "is_regular_simplex",
    "join_case_label",
    "join_complex",
    "join_homology_prediction",
    "link",
    "lower_middle_perversity",
    "order_vertices",
    "ordinary_homology",
    "relative_blown_up_cohomology",
    "relative_decomposition_sides",
    "require_full",
    "residual_complex",
    "residual_decomposition_check",
    "restriction_matrix",
    "restriction_surjectivity",
    "smith_normal_form",
    "top_perversity",
    "tower_check",
    "transport_perversity",
    "upper_middle_perversity",
    "verify_blow_up_map",
    "zero_perversity",
]
