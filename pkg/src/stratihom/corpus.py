"""Built-in example complexes for the verification harnesses.

Small enough to compute everything exactly, together they exercise every
branch the theorems care about: trivial filtrations (classical homology),
isolated cone points, a pair of suspension points, a pinch point whose
link is disconnected, a one-dimensional singular stratum next to a point
stratum, and one three-dimensional member whose singular strata have
codimension three.  A deliberately non-full member is included for the
checker that is supposed to reject it.
"""

from __future__ import annotations

from dataclasses import dataclass

from .core_complex import FilteredComplex, facet_closure


def _by_vertex_level(
    facets, levels: dict[int, int], n: int
) -> FilteredComplex:
    """Closure of the facets, each simplex at the level of its highest
    vertex.  Complexes built this way are always full."""
    closed = facet_closure(facets)
    return FilteredComplex(
        {s: max(levels[v] for v in s) for s in closed}, n
    )


@dataclass(frozen=True)
class CorpusMember:
    name: str
    description: str
    complex: FilteredComplex

    @property
    def simplex_count(self) -> int:
        return len(self.complex)


def boundary_3_simplex() -> FilteredComplex:
    """The boundary of the tetrahedron, trivially filtered: a two-sphere."""
    return FilteredComplex.trivial(
        [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3)], n=2
    )


def torus_7() -> FilteredComplex:
    """The seven-vertex torus, trivially filtered.

    Triangles (i, i+1, i+3) and (i, i+2, i+3) modulo seven; every pair of
    vertices is an edge and every edge lies in exactly two triangles.
    """
    facets = []
    for i in range(7):
        facets.append(tuple(sorted(((i), (i + 1) % 7, (i + 3) % 7))))
        facets.append(tuple(sorted(((i), (i + 2) % 7, (i + 3) % 7))))
    return FilteredComplex.trivial(facets, n=2)


def projective_plane_6() -> FilteredComplex:
    """The six-vertex projective plane (half of the icosahedron),
    trivially filtered; its first homology is the two-element group."""
    facets = [
        (0, 1, 2), (0, 1, 3), (0, 2, 4), (0, 3, 5), (0, 4, 5),
        (1, 2, 5), (1, 3, 4), (1, 4, 5), (2, 3, 4), (2, 3, 5),
    ]
    return FilteredComplex.trivial(facets, n=2)


def cone_circle() -> FilteredComplex:
    """Cone on a hollow triangle; the apex is a level-zero point."""
    levels = {0: 0, 1: 2, 2: 2, 3: 2}
    return _by_vertex_level(
        [(0, 1, 2), (0, 2, 3), (0, 1, 3)], levels, n=2
    )


def suspension_of_triangle() -> FilteredComplex:
    """Suspension of a hollow triangle: a two-sphere whose two suspension
    points form the level-zero subcomplex."""
    levels = {0: 0, 1: 0, 2: 2, 3: 2, 4: 2}
    facets = [
        (0, 2, 3), (0, 3, 4), (0, 2, 4),
        (1, 2, 3), (1, 3, 4), (1, 2, 4),
    ]
    return _by_vertex_level(facets, levels, n=2)


def pinched_torus() -> FilteredComplex:
    """A torus with one meridian collapsed: an annulus between two hollow
    triangles, both coned to the same apex.  The link of the apex is a
    pair of disjoint circles, so the apex is a genuine pinch point."""
    levels = {0: 0, 1: 2, 2: 2, 3: 2, 4: 2, 5: 2, 6: 2}
    facets = [
        (1, 2, 4), (2, 4, 5), (2, 3, 5), (3, 5, 6), (1, 3, 6), (1, 4, 6),
        (0, 1, 2), (0, 2, 3), (0, 1, 3),
        (0, 4, 5), (0, 5, 6), (0, 4, 6),
    ]
    return _by_vertex_level(facets, levels, n=2)


def singular_path() -> FilteredComplex:
    """Four triangles around a path of singular edges.

    The path 0-1-2 carries the singular set: vertex 0 sits at level zero
    and the rest of the path at level one, so a point stratum of
    codimension two abuts a one-dimensional stratum of codimension one.
    """
    levels = {0: 0, 1: 1, 2: 1, 3: 2, 4: 2}
    facets = [(0, 1, 3), (0, 1, 4), (1, 2, 3), (1, 2, 4)]
    return _by_vertex_level(facets, levels, n=2)


def sphere_and_point() -> FilteredComplex:
    """Disjoint union of the tetrahedron boundary and one isolated
    level-zero vertex.  The lone vertex is a clot whose link is empty,
    the branch of the local calculation nothing connected can reach,
    and the only corpus member the theories see as two components."""
    levels = {0: 2, 1: 2, 2: 2, 3: 2, 9: 0}
    facets = [(0, 1, 2), (0, 1, 3), (0, 2, 3), (1, 2, 3), (9,)]
    return _by_vertex_level(facets, levels, n=2)


def suspension_of_torus() -> FilteredComplex:
    """Suspension of the seven-vertex torus, virtual dimension three; the
    two suspension points are the singular set at level zero."""
    torus = torus_7()
    levels = {v: 3 for v in range(7)}
    levels[7] = 0
    levels[8] = 0
    facets = []
    for t in torus.simplices_of_dim(2):
        facets.append(t + (7,))
        facets.append(t + (8,))
    return _by_vertex_level(facets, levels, n=3)


def skeleton_filtered_simplex() -> FilteredComplex:
    """A triangle filtered by its skeleta.  Not full: the triangle meets
    the vertex level in all three corners, which is no single face."""
    return FilteredComplex(
        {
            (0,): 0, (1,): 0, (2,): 0,
            (0, 1): 1, (0, 2): 1, (1, 2): 1,
            (0, 1, 2): 2,
        },
        2,
    )


def corpus() -> tuple[CorpusMember, ...]:
    """The standard members: full complexes small enough that every
    harness, including the depth-two subdivision tower, runs at desk
    scale."""
    return (
        CorpusMember(
            "boundary-3-simplex",
            "boundary of the tetrahedron, trivial filtration",
            boundary_3_simplex(),
        ),
        CorpusMember(
            "torus-7",
            "seven-vertex torus, trivial filtration",
            torus_7(),
        ),
        CorpusMember(
            "projective-plane-6",
            "six-vertex projective plane, trivial filtration",
            projective_plane_6(),
        ),
        CorpusMember(
            "cone-circle",
            "cone on a hollow triangle, apex at level zero",
            cone_circle(),
        ),
        CorpusMember(
            "suspension-of-triangle",
            "suspension of a hollow triangle, two level-zero points",
            suspension_of_triangle(),
        ),
        CorpusMember(
            "pinched-torus",
            "torus with a collapsed meridian, one pinch point",
            pinched_torus(),
        ),
        CorpusMember(
            "singular-path",
            "four triangles around a graded singular path",
            singular_path(),
        ),
        CorpusMember(
            "sphere-and-point",
            "tetrahedron boundary plus an isolated singular vertex",
            sphere_and_point(),
        ),
    )


def extended_corpus() -> tuple[CorpusMember, ...]:
    """The standard members plus the three-dimensional suspension of the
    torus, which is too large for repeated subdivision but carries the
    codimension-three strata the duality spot check wants."""
    return corpus() + (
        CorpusMember(
            "suspension-of-torus",
            "suspension of the seven-vertex torus, virtual dimension three",
            suspension_of_torus(),
        ),
    )


def special_members() -> tuple[CorpusMember, ...]:
    """Members shipped for negative tests; not full, so excluded from the
    theorem harnesses."""
    return (
        CorpusMember(
            "skeleton-filtered-simplex",
            "triangle filtered by skeleta; deliberately not full",
            skeleton_filtered_simplex(),
        ),
    )


def all_members() -> tuple[CorpusMember, ...]:
    return extended_corpus() + special_members()


def corpus_member(name: str) -> CorpusMember:
    for member in all_members():
        if member.name == name:
            return member
    known = ", ".join(m.name for m in all_members())
    raise KeyError(f"no corpus member named {name!r}; known: {known}")
