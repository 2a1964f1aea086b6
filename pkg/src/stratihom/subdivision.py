"""Barycentric subdivision compared with the original complex.

Three layers live here.  The chain layer is the subdivision operator
itself: each simplex is replaced by the signed sum of the flags inside it,
and the bookkeeping (carrier of a flag, fragments of a simplex with their
orientations) is exposed as :class:`SubdivisionMap`.  The vertex layer is
the stratum-preserving collapse of barycenters back onto vertices,
:class:`GMVertexMap`: a barycenter goes to the greatest vertex of its
parent simplex that lies in the parent's stratum.  On top of these sit the
two degree-zero cochain maps between the blown-up complexes of the
subdivision and of the original: ``collapse`` pushes the class of a
full-dimensional fragment onto the class of its carrier, ``refine`` pulls
a class back through the vertex map, spreading it over every fragment the
vertex map embeds level for level.  Collapse after refine is the
identity, both commute with the coboundary, and both respect the
allowable sublattices of every perversity; those are exact matrix
statements and :func:`compare_blown_up` checks them all.

Finite towers of repeated subdivision stand in for a limit construction:
:func:`tower_check` recomputes intersection homology and blown-up
cohomology after each subdivision and reports whether rank and torsion
stay put.
"""

from __future__ import annotations

import bisect
from dataclasses import dataclass

from .blowup_cochains import (
    BlownUpIntersectionComplex,
    GlobalBlownUpComplex,
    blown_up_cohomology,
)
from .core_complex import (
    FilteredComplex,
    Simplex,
    StructuralError,
    VertexOrder,
    as_simplex,
    barycenter_table,
    barycentric_subdivide,
    boundary_faces,
    boundary_matrix,
    order_vertices,
    require_full,
    satisfies_order_condition,
)
from .exact_algebra import (
    INTEGERS,
    HomologyResult,
    Matrix,
    RingSpec,
    ZERO_GROUP,
    identity,
    mat_mul,
    solve_exact,
    zeros,
)
from .intersection_chains import Perversity, intersection_homology


# -- the chain-level subdivision operator -----------------------------------


class SubdivisionMap:
    """First barycentric subdivision with its chain-level bookkeeping.

    ``source`` is the subdivided complex, ``target`` the original.  Every
    simplex of the source is a flag of simplices of the target, encoded
    through barycenter ids; its carrier is the top of the flag.  The
    fragments of a target simplex are the source simplices of the same
    dimension lying inside it, each with the orientation sign produced by
    coning the barycenter in front of the subdivided boundary.
    """

    def __init__(self, K: FilteredComplex):
        require_full(K)
        self.target = K
        self.parents = barycenter_table(K)
        self.source = barycentric_subdivide(K)
        self._vid = {s: i for i, s in enumerate(self.parents)}
        self._frag: dict[Simplex, tuple[tuple[int, Simplex], ...]] = {}

    def vertex_id(self, s) -> int:
        """Barycenter id of a target simplex."""
        return self._vid[as_simplex(s)]

    def parent(self, v: int) -> Simplex:
        """Target simplex whose barycenter is the source vertex ``v``."""
        return self.parents[v]

    def carrier(self, t) -> Simplex:
        """The target simplex whose interior contains the interior of the
        source simplex ``t``: the largest member of the flag."""
        return max((self.parents[v] for v in t), key=len)

    def fragments(self, s) -> tuple[tuple[int, Simplex], ...]:
        """Signed top-dimensional pieces of the subdivided simplex.

        Recursively: the barycenter coned in front of every fragment of
        every boundary face, re-sorted into canonical vertex order with
        the parity of the re-sort recorded in the sign.
        """
        s = as_simplex(s)
        got = self._frag.get(s)
        if got is not None:
            return got
        b = self._vid[s]
        if len(s) == 1:
            result: tuple[tuple[int, Simplex], ...] = ((1, (b,)),)
        else:
            out = []
            for fsign, face in boundary_faces(s):
                for gsign, frag in self.fragments(face):
                    pos = bisect.bisect_left(frag, b)
                    sign = fsign * gsign * (-1) ** pos
                    out.append((sign, frag[:pos] + (b,) + frag[pos:]))
            result = tuple(out)
        self._frag[s] = result
        return result

    def chain_matrix(self, k: int) -> Matrix:
        """Matrix of the subdivision operator in degree k: columns are the
        target k-simplices, rows the source k-simplices."""
        rows = self.source.simplices_of_dim(k)
        cols = self.target.simplices_of_dim(k)
        idx = {s: i for i, s in enumerate(rows)}
        out = zeros(len(rows), len(cols))
        for j, s in enumerate(cols):
            for sign, frag in self.fragments(s):
                out[idx[frag]][j] = sign
        return out

    def commutes_with_boundary(self) -> bool:
        """Exact check that the operator is a chain map."""
        d = self.target.dim()
        top = d.finite_value() if d.is_finite else -1
        for k in range(1, top + 1):
            tk = self.target.simplices_of_dim(k)
            tkm = self.target.simplices_of_dim(k - 1)
            sk = self.source.simplices_of_dim(k)
            skm = self.source.simplices_of_dim(k - 1)
            lhs = mat_mul(boundary_matrix(sk, skm), self.chain_matrix(k))
            rhs = mat_mul(self.chain_matrix(k - 1), boundary_matrix(tk, tkm))
            if lhs != rhs:
                return False
        return True

    def fragments_partition(self) -> bool:
        """Every source simplex of full dimension inside its carrier shows
        up exactly once among the carrier's fragments, with sign +-1."""
        seen: dict[Simplex, Simplex] = {}
        for s in self.target.simplices:
            frs = self.fragments(s)
            supports = [f for _, f in frs]
            if len(set(supports)) != len(supports):
                return False
            if any(sign not in (1, -1) for sign, _ in frs):
                return False
            for _, f in frs:
                seen[f] = s
        for t in self.source.simplices:
            c = self.carrier(t)
            if len(t) == len(c):
                if seen.get(t) != c:
                    return False
            elif t in seen:
                return False
        return True


def transport_perversity(pbar: Perversity, sd: SubdivisionMap) -> Perversity:
    """Move a perversity onto the subdivision.  Codimension perversities
    carry over as themselves; a table perversity is re-keyed through the
    carrier map, which matches strata to strata."""
    return pbar.induced(
        sd.target, sd.source, sample=lambda S: sd.carrier(S.min_simplex())
    )


# -- the vertex map ----------------------------------------------------------


class GMVertexMap:
    """Collapse of barycenters onto vertices of the original complex.

    A barycenter maps to the greatest vertex (in a filtration-compatible
    order) of its parent simplex among those lying in the parent's
    stratum; with such an order these are exactly the parent's vertices of
    top level.  The linear extension is simplicial and stratum-preserving.
    """

    def __init__(self, sd: SubdivisionMap, order: VertexOrder | None = None):
        K = sd.target
        if order is None:
            order = order_vertices(K)
        elif not satisfies_order_condition(K, order):
            raise ValueError("vertex order is not filtration-compatible")
        self.sd = sd
        self.order = order
        images = []
        for tau in sd.parents:
            S = K.stratum_of(tau)
            candidates = [v for v in tau if K.stratum_of((v,)) == S]
            if not candidates:
                raise StructuralError(
                    f"no vertex of {tau} lies in its own stratum"
                )
            images.append(order.greatest(candidates))
        self._images = tuple(images)

    def image(self, v: int) -> int:
        return self._images[v]

    def simplex_image(self, t) -> Simplex:
        """Image simplex; collapses drop the dimension."""
        return tuple(sorted({self._images[v] for v in t}))

    def is_simplicial(self) -> bool:
        K = self.sd.target
        return all(self.simplex_image(t) in K for t in self.sd.source)

    def preserves_strata(self) -> bool:
        """Each barycenter and its image sit in the same stratum: the one
        whose combinatorial stand-in holds the parent simplex."""
        K = self.sd.target
        for v, tau in enumerate(self.sd.parents):
            img = self._images[v]
            if K.stratum_of((img,)) != K.stratum_of(tau):
                return False
            if self.sd.source.vertex_level(v) != K.vertex_level(img):
                return False
        return True


def gm_vertex_map(
    K: FilteredComplex, order: VertexOrder | None = None
) -> GMVertexMap:
    """Convenience constructor building the subdivision on the way."""
    return GMVertexMap(SubdivisionMap(K), order)


def full_image_fragment(
    sd: SubdivisionMap, gm: GMVertexMap, s
) -> Simplex:
    """The one fragment of ``s`` on which the vertex map is injective.

    Enumerates all fragments and insists on uniqueness; more than one, or
    none, would contradict the construction and raises.
    """
    s = as_simplex(s)
    hits = [
        frag
        for _, frag in sd.fragments(s)
        if len({gm.image(v) for v in frag}) == len(frag)
    ]
    if len(hits) != 1:
        raise StructuralError(
            f"{len(hits)} fragments of {s} have a full-dimensional image"
        )
    return hits[0]


# -- cochain comparison maps on the blown-up complexes -----------------------


def _permutation_sign(seq) -> int:
    """Parity of the permutation taking ``sorted(seq)`` to ``seq``."""
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def _level_block_sign(C: FilteredComplex, t) -> int:
    """Parity between the plain vertex-id listing of ``t`` and the listing
    sorted by (level, id).  The blown-up complex reads a simplex factor by
    factor, so every comparison across it pays this reordering."""
    ranked = sorted(t, key=lambda v: (C.vertex_level(v), v))
    pos = {v: i for i, v in enumerate(ranked)}
    return _permutation_sign([pos[v] for v in t])


class BlownUpComparison:
    """The pair of degree-zero cochain maps between the blown-up complexes
    of a complex and of its barycentric subdivision.

    ``collapse_matrix(k)`` maps classes of the subdivision to classes of
    the original: a class whose flag is full-dimensional inside its
    carrier goes to the class of the carrier with the same coning
    pattern, everything else to zero.  The entry carries the chain-level
    fragment orientation, the two level-block reorderings, and one Koszul
    flip for every cone factor a barycenter's weight crosses on its way
    from the level of the vertex it remembers up to the level of its
    parent simplex (a factor already collapsed to its apex costs
    nothing).  ``refine_matrix(k)`` is the pullback along the vertex map:
    a class of the subdivision hears a class of the original when the
    vertex map embeds its flag level for level, with the parity of the
    image listing inside each level.  Collapse after refine is the
    identity on the nose; both commute with the coboundary, which is the
    nontrivial content and is checked as an exact matrix identity.
    """

    def __init__(self, K: FilteredComplex, order: VertexOrder | None = None):
        self.sd = SubdivisionMap(K)
        self.gm = GMVertexMap(self.sd, order)
        self.original = GlobalBlownUpComplex(K)
        self.subdivided = GlobalBlownUpComplex(self.sd.source)
        self._collapse: dict[int, Matrix] = {}
        self._refine: dict[int, Matrix] = {}
        self._fragment_sign: dict[Simplex, int] = {}
        for s in K.simplices:
            for sign, frag in self.sd.fragments(s):
                self._fragment_sign[frag] = sign

    def degrees(self) -> list[int]:
        return sorted(set(self.original.degrees())
                      | set(self.subdivided.degrees()))

    def _crossing_sign(self, flag: Simplex, eps) -> int:
        """Koszul correction for weights sitting above their own level.

        A flag vertex remembers the vertex its parent simplex acquired
        last; when that vertex lives at level ``lam`` but the parent tops
        out at level ``mu``, the class keeps the weight in factor ``mu``
        and every cone factor from ``lam`` up to (excluding) ``mu`` that
        is not collapsed to its apex contributes a sign flip.
        """
        K = self.sd.target
        sign = 1
        prev: Simplex = ()
        for rho in sorted((self.sd.parent(v) for v in flag), key=len):
            (w,) = set(rho) - set(prev)
            lam = K.vertex_level(w)
            mu = K.level(rho)
            for i in range(lam, min(mu, K.n)):
                if not eps[i]:
                    sign = -sign
            prev = rho
        return sign

    def collapse_matrix(self, k: int) -> Matrix:
        got = self._collapse.get(k)
        if got is not None:
            return got
        out = zeros(self.original.dim(k), self.subdivided.dim(k))
        for j, (flag, eps) in enumerate(self.subdivided.labels(k)):
            carrier = self.sd.carrier(flag)
            if len(flag) != len(carrier):
                continue
            i = self.original.label_index(k, (carrier, eps))
            out[i][j] = (
                self._fragment_sign[flag]
                * _level_block_sign(self.sd.target, carrier)
                * _level_block_sign(self.sd.source, flag)
                * self._crossing_sign(flag, eps)
            )
        self._collapse[k] = out
        return out

    def refine_matrix(self, k: int) -> Matrix:
        got = self._refine.get(k)
        if got is not None:
            return got
        out = zeros(self.subdivided.dim(k), self.original.dim(k))
        for i, (flag, eps) in enumerate(self.subdivided.labels(k)):
            images = [self.gm.image(v) for v in flag]
            if len(set(images)) != len(images):
                continue
            by_level: dict[int, list[int]] = {}
            for v in flag:
                by_level.setdefault(
                    self.sd.source.vertex_level(v), []
                ).append(self.gm.image(v))
            sign = 1
            for seq in by_level.values():
                ranked = sorted(seq)
                pos = {u: t for t, u in enumerate(ranked)}
                sign *= _permutation_sign([pos[u] for u in seq])
            j = self.original.label_index(k, (tuple(sorted(images)), eps))
            out[i][j] = sign
        self._refine[k] = out
        return out

    def round_trip_is_identity(self) -> bool:
        """Collapse composed with refine, degree by degree."""
        for k in self.degrees():
            d = self.original.dim(k)
            got = mat_mul(self.collapse_matrix(k), self.refine_matrix(k))
            if got != identity(d):
                return False
        return True

    def collapse_commutes(self) -> bool:
        for k in self.degrees():
            lhs = mat_mul(
                self.original.coboundary_matrix(k), self.collapse_matrix(k)
            )
            rhs = mat_mul(
                self.collapse_matrix(k + 1),
                self.subdivided.coboundary_matrix(k),
            )
            if lhs != rhs:
                return False
        return True

    def refine_commutes(self) -> bool:
        for k in self.degrees():
            lhs = mat_mul(
                self.subdivided.coboundary_matrix(k), self.refine_matrix(k)
            )
            rhs = mat_mul(
                self.refine_matrix(k + 1), self.original.coboundary_matrix(k)
            )
            if lhs != rhs:
                return False
        return True


@dataclass(frozen=True)
class ComparisonReport:
    """Outcome of the full comparison for one perversity."""

    perversity: str
    degrees: tuple[int, ...]
    collapse_cochain_map: bool
    refine_cochain_map: bool
    round_trip_identity: bool
    lattices_preserved: bool
    round_trip_on_lattices: bool
    lattice_ranks: tuple[tuple[int, int, int], ...]

    @property
    def ok(self) -> bool:
        return (
            self.collapse_cochain_map
            and self.refine_cochain_map
            and self.round_trip_identity
            and self.lattices_preserved
            and self.round_trip_on_lattices
        )


def compare_blown_up(
    K: FilteredComplex,
    pbar: Perversity,
    order: VertexOrder | None = None,
    comparison: BlownUpComparison | None = None,
) -> ComparisonReport:
    """Run every exact check relating the blown-up complexes of K and of
    its subdivision at the given perversity."""
    cmp = comparison if comparison is not None else BlownUpComparison(K, order)
    sub_pbar = transport_perversity(pbar, cmp.sd)
    N = BlownUpIntersectionComplex(K, pbar)
    Np = BlownUpIntersectionComplex(cmp.sd.source, sub_pbar)
    degrees = tuple(cmp.degrees())

    preserved = True
    round_trip_lat = True
    ranks = []
    for k in degrees:
        L = N.lattice_in_ambient(k)
        Lp = Np.lattice_in_ambient(k)
        r = len(L[0]) if L else 0
        rp = len(Lp[0]) if Lp else 0
        ranks.append((k, r, rp))
        try:
            lat_collapse = solve_exact(L, mat_mul(cmp.collapse_matrix(k), Lp))
            lat_refine = solve_exact(Lp, mat_mul(cmp.refine_matrix(k), L))
        except ValueError:
            preserved = False
            round_trip_lat = False
            continue
        if r and mat_mul(lat_collapse, lat_refine) != identity(r):
            round_trip_lat = False
    return ComparisonReport(
        perversity=pbar.name or repr(pbar),
        degrees=degrees,
        collapse_cochain_map=cmp.collapse_commutes(),
        refine_cochain_map=cmp.refine_commutes(),
        round_trip_identity=cmp.round_trip_is_identity(),
        lattices_preserved=preserved,
        round_trip_on_lattices=round_trip_lat,
        lattice_ranks=tuple(ranks),
    )


# -- towers ------------------------------------------------------------------


@dataclass(frozen=True)
class TowerLevel:
    """Invariants of one stage of the subdivision tower."""

    iterations: int
    simplex_count: int
    chain_groups: tuple[HomologyResult, ...]
    cochain_groups: tuple[HomologyResult, ...]


@dataclass(frozen=True)
class TowerReport:
    perversity: str
    levels: tuple[TowerLevel, ...]

    @property
    def stable(self) -> bool:
        """Rank and torsion agree across every level, both theories."""
        base = self.levels[0]
        return all(
            lv.chain_groups == base.chain_groups
            and lv.cochain_groups == base.cochain_groups
            for lv in self.levels[1:]
        )


def tower_check(
    K: FilteredComplex,
    depth: int,
    pbar: Perversity,
    ring: RingSpec = INTEGERS,
    with_cochains: bool = True,
) -> TowerReport:
    """Subdivide ``depth`` times, recomputing intersection homology and
    blown-up cohomology at each stage.

    Fullness is re-asserted on every level; stability of the reported
    groups is the finite stand-in for subdivision invariance.
    """
    require_full(K)
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    levels = []
    current, pb = K, pbar
    for i in range(depth + 1):
        if i:
            sd = SubdivisionMap(current)
            pb = transport_perversity(pb, sd)
            current = sd.source
            require_full(current)
        span = range(K.n + 1)
        chain = intersection_homology(current, pb, ring)
        groups = tuple(chain.get(k, ZERO_GROUP) for k in span)
        if with_cochains:
            cochain = blown_up_cohomology(current, pb, ring)
            cogroups = tuple(cochain.get(k, ZERO_GROUP) for k in span)
        else:
            cogroups = ()
        levels.append(
            TowerLevel(
                iterations=i,
                simplex_count=len(current),
                chain_groups=groups,
                cochain_groups=cogroups,
            )
        )
    return TowerReport(
        perversity=pbar.name or repr(pbar), levels=tuple(levels)
    )
