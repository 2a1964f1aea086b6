"""Perversities, allowability, and intersection homology of filtered
complexes.

A perversity assigns an extended integer to each singular stratum.  A
simplex of a full complex is allowable when, for every level it meets
singularly, the dimension of its intersection with that sublevel stays
within the bound set by the perversity; a chain is an intersection chain
when the chain and its boundary are both supported on allowable simplices.

The intersection chain complex in each degree is the integer lattice of
chains whose boundary, computed with cancellation, lands on allowable
simplices again.  Its homology is reported with free rank and invariant
factors, over the integers or any prime field.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Iterable, Mapping

from .core_complex import (
    FilteredComplex,
    Simplex,
    Stratum,
    StructuralError,
    as_simplex,
    boundary_faces,
    boundary_matrix,
    clot_join,
    clots,
    complexity,
    decompose,
    link,
    meeting_strata,
    perverse_degree_at_level,
    proper_faces,
    require_full,
    residual_complex,
)
from .exact_algebra import (
    INTEGERS,
    ChainComplexData,
    HomologyResult,
    Matrix,
    RingSpec,
    SubquotientComplex,
    ZERO_GROUP,
    identity,
    integer_kernel_basis,
    mat_mul,
    snf_diagonal,
    solve_exact,
    zeros,
)
from .extint import NEG_INF, POS_INF, ExtInt, ext


class Perversity:
    """A function on singular strata, valued in the extended integers.

    Two constructions cover everything this package needs.  A codimension
    perversity depends only on the virtual codimension of the stratum, so
    it transports automatically to links, joins and subdivisions.  A table
    perversity stores one value per stratum of a specific complex, keyed by
    (level, index); it remembers each stratum's codimension so the dual can
    be formed without the complex at hand.
    """

    __slots__ = ("_kind", "_fn", "_table", "_codims", "name")

    def __init__(
        self,
        fn: Callable[[int], ExtInt] | None = None,
        table: Mapping[tuple[int, int], ExtInt] | None = None,
        codims: Mapping[tuple[int, int], int] | None = None,
        name: str = "",
    ):
        if (fn is None) == (table is None):
            raise ValueError("provide exactly one of fn and table")
        self._kind = "codim" if fn is not None else "table"
        self._fn = fn
        self._table = dict(table) if table is not None else None
        if self._kind == "table":
            if codims is None:
                raise ValueError("a table perversity needs stratum codims")
            self._codims = dict(codims)
            missing = set(self._table) - set(self._codims)
            if missing:
                raise ValueError(f"codims missing for strata {missing}")
        else:
            self._codims = None
        self.name = name

    # -- evaluation -------------------------------------------------------

    def of_stratum(self, stratum: Stratum) -> ExtInt:
        if stratum.regular:
            raise ValueError("perversities are defined on singular strata")
        return self._value(stratum.key, stratum.codim)

    def _value(self, key: tuple[int, int], codim: int) -> ExtInt:
        if self._kind == "codim":
            return ext(self._fn(codim))
        try:
            return ext(self._table[key])
        except KeyError:
            raise KeyError(f"no perversity value for stratum {key}") from None

    # -- constructions ----------------------------------------------------

    @classmethod
    def by_codim(
        cls, fn: Callable[[int], ExtInt | int], name: str = ""
    ) -> "Perversity":
        return cls(fn=lambda k: ext(fn(k)), name=name)

    @classmethod
    def from_table(
        cls,
        K: FilteredComplex,
        values: Mapping[tuple[int, int], ExtInt | int],
        name: str = "",
    ) -> "Perversity":
        table = {}
        codims = {}
        for S in K.singular_strata():
            table[S.key] = ext(values[S.key])
            codims[S.key] = S.codim
        extra = set(values) - set(table)
        if extra:
            raise ValueError(f"values given for unknown strata {extra}")
        return cls(table=table, codims=codims, name=name)

    @classmethod
    def constant(cls, value: ExtInt | int, name: str = "") -> "Perversity":
        v = ext(value)
        return cls(fn=lambda k: v, name=name or f"const({v})")

    def dual(self) -> "Perversity":
        """The complementary perversity: codim - 2 minus this one."""
        if self._kind == "codim":
            fn = self._fn
            return Perversity(
                fn=lambda k: ExtInt(k - 2) - fn(k),
                name=f"dual({self.name})" if self.name else "",
            )
        table = {
            key: ExtInt(self._codims[key] - 2) - v
            for key, v in self._table.items()
        }
        return Perversity(
            table=table,
            codims=dict(self._codims),
            name=f"dual({self.name})" if self.name else "",
        )

    def induced(
        self,
        source: FilteredComplex,
        target: FilteredComplex,
        sample: Callable[[Stratum], Simplex] | None = None,
    ) -> "Perversity":
        """Transport to a subcomplex: each singular stratum of the target
        takes the value of the source stratum containing one of its
        simplices.  Codimension perversities transport as themselves."""
        if self._kind == "codim":
            return self
        table = {}
        codims = {}
        for S in target.singular_strata():
            rep = sample(S) if sample is not None else S.min_simplex()
            src = source.stratum_of(rep)
            table[S.key] = self._value(src.key, src.codim)
            codims[S.key] = S.codim
        return Perversity(table=table, codims=codims, name=self.name)

    def __repr__(self) -> str:
        label = self.name or self._kind
        return f"Perversity({label})"


def zero_perversity() -> Perversity:
    return Perversity.by_codim(lambda k: 0, name="zero")


def top_perversity() -> Perversity:
    return Perversity.by_codim(lambda k: k - 2, name="top")


def lower_middle_perversity() -> Perversity:
    return Perversity.by_codim(lambda k: (k - 2) // 2, name="lower-middle")


def upper_middle_perversity() -> Perversity:
    return Perversity.by_codim(lambda k: k - 2 - (k - 2) // 2,
                               name="upper-middle")


# -- allowability -----------------------------------------------------------


def simplex_perverse_degree(
    K: FilteredComplex, s: Iterable[int], stratum: Stratum
) -> ExtInt:
    """Dimension of the simplex's front face at the stratum's level, or
    minus infinity when the stratum misses the simplex.

    On a full complex the intersection of a simplex with a sublevel set is
    the front face of its canonical decomposition, so this is the
    stratum-by-stratum degree that allowability bounds.
    """
    require_full(K)
    key = as_simplex(s)
    if all(S != stratum for _, S in meeting_strata(K, key)):
        return NEG_INF
    return perverse_degree_at_level(K, key, stratum.level)


def is_allowable(
    K: FilteredComplex, pbar: Perversity, s: Iterable[int]
) -> bool:
    """Allowability of one simplex of a full filtered complex.

    For each level l met by the simplex whose stratum is singular, the
    intersection with K_l (a front face, by fullness) must satisfy

        dim(sigma cap K_l)  <=  dim sigma - codim(l) + pbar(stratum).

    Levels with regular strata impose nothing.
    """
    require_full(K)
    key = s if isinstance(s, tuple) else tuple(sorted(s))
    parts = decompose(K, key)
    d = len(key) - 1
    n = K.n
    count = 0
    prefix: list[int] = []
    for l, part in enumerate(parts):
        if not part:
            continue
        prefix.extend(part)
        count += len(part)
        if l == n:
            break
        front = tuple(sorted(prefix))
        stratum = K.stratum_of(front)
        if stratum.regular:
            continue
        bound = ExtInt(d - (n - l)) + pbar.of_stratum(stratum)
        if ExtInt(count - 1) > bound:
            return False
    return True


def allowable_simplices(
    K: FilteredComplex, pbar: Perversity, k: int
) -> tuple[Simplex, ...]:
    return tuple(
        s for s in K.simplices_of_dim(k) if is_allowable(K, pbar, s)
    )


def is_intersection_chain(
    K: FilteredComplex, pbar: Perversity, chain: Mapping[Simplex, int]
) -> bool:
    """Whether a chain and its boundary are supported on allowable
    simplices.  Cancellation counts: a non-allowable face shared by two
    simplices of the chain may drop out of the boundary.
    """
    require_full(K)
    bd: dict[Simplex, int] = {}
    for s, coeff in chain.items():
        if not coeff:
            continue
        key = as_simplex(s)
        if not is_allowable(K, pbar, key):
            return False
        for sign, face in boundary_faces(key):
            bd[face] = bd.get(face, 0) + sign * coeff
    return all(
        coeff == 0 or is_allowable(K, pbar, face)
        for face, coeff in bd.items()
    )


# -- the intersection chain complex ------------------------------------------


@dataclass(frozen=True)
class DegreeData:
    """Bases in one degree: all simplices, the allowable ones, and the
    intersection lattice written in the allowable basis."""

    simplices: tuple
    allowable: tuple
    lattice: tuple  # columns: coefficient vectors over ``allowable``


class IntersectionChainComplex:
    """The complex of intersection chains of (K, pbar).

    In degree k the lattice consists of the integer combinations c of
    allowable k-simplices whose boundary is again supported on allowable
    simplices; the kernel computation keeps the lattice saturated, so the
    homology's torsion is intrinsic.
    """

    def __init__(self, K: FilteredComplex, pbar: Perversity):
        require_full(K)
        self.K = K
        self.pbar = pbar
        self._degree: dict[int, DegreeData] = {}
        self._complex: ChainComplexData | None = None

    def top_degree(self) -> int:
        d = self.K.dim()
        return d.finite_value() if d.is_finite else -1

    def degree_data(self, k: int) -> DegreeData:
        data = self._degree.get(k)
        if data is not None:
            return data
        simplices = self.K.simplices_of_dim(k)
        allowable = tuple(
            s for s in simplices if is_allowable(self.K, self.pbar, s)
        )
        if k == 0:
            lattice = identity(len(allowable))
        elif not allowable:
            lattice = []
        else:
            below = self.K.simplices_of_dim(k - 1)
            allowed_below = {
                s for s in below if is_allowable(self.K, self.pbar, s)
            }
            bad = [t for t in below if t not in allowed_below]
            if not bad:
                lattice = identity(len(allowable))
            else:
                full_bd = boundary_matrix(list(allowable), list(below))
                bad_set = set(bad)
                bad_rows = [
                    full_bd[i] for i, t in enumerate(below) if t in bad_set
                ]
                lattice = integer_kernel_basis(bad_rows)
        data = DegreeData(
            simplices=simplices,
            allowable=allowable,
            lattice=tuple(tuple(row) for row in lattice),
        )
        self._degree[k] = data
        return data

    def lattice_rank(self, k: int) -> int:
        lat = self.degree_data(k).lattice
        return len(lat[0]) if lat else 0

    def ambient_matrix(self, k: int) -> Matrix:
        """The degree-k lattice basis as columns over all k-simplices."""
        data = self.degree_data(k)
        lat = data.lattice
        cols = len(lat[0]) if lat else 0
        emb = zeros(len(data.simplices), cols)
        if cols:
            idx = {s: i for i, s in enumerate(data.simplices)}
            for r, s in enumerate(data.allowable):
                row = lat[r]
                er = emb[idx[s]]
                for c in range(cols):
                    er[c] = row[c]
        return emb

    def as_complex(self) -> ChainComplexData:
        """The intersection lattice as an explicit chain complex.

        Differentials are solved exactly in the echelonized lattice bases;
        the solve doubles as a certificate that the boundary of a lattice
        chain is a lattice chain.
        """
        if self._complex is not None:
            return self._complex
        top = self.top_degree()
        dims: dict[int, int] = {}
        ambient: dict[int, Matrix] = {}
        for k in range(0, top + 1):
            ambient[k] = self.ambient_matrix(k)
            dims[k] = len(ambient[k][0]) if ambient[k] else 0
        diffs: dict[int, Matrix] = {}
        for k in range(1, top + 1):
            if dims.get(k, 0) == 0:
                continue
            data_k = self.degree_data(k)
            data_km1 = self.degree_data(k - 1)
            bd = boundary_matrix(
                list(data_k.simplices), list(data_km1.simplices)
            )
            image = mat_mul(bd, ambient[k])
            if dims.get(k - 1, 0) == 0:
                if any(x for row in image for x in row):
                    raise AssertionError(
                        "lattice boundary escapes in degree "
                        f"{k}; the kernel construction is broken"
                    )
                continue
            target = ambient[k - 1]
            diffs[k] = solve_exact(target, image)
        self._complex = ChainComplexData(dims, diffs, down=True)
        return self._complex

    def homology(self, k: int, ring: RingSpec = INTEGERS) -> HomologyResult:
        if k < 0 or k > self.top_degree():
            return ZERO_GROUP
        return self.as_complex().homology(k, ring)

    def homology_all(
        self, ring: RingSpec = INTEGERS
    ) -> dict[int, HomologyResult]:
        return {
            k: self.homology(k, ring) for k in range(self.top_degree() + 1)
        }


def intersection_homology(
    K: FilteredComplex,
    pbar: Perversity,
    ring: RingSpec = INTEGERS,
) -> dict[int, HomologyResult]:
    """All intersection homology groups of a full filtered complex."""
    return IntersectionChainComplex(K, pbar).homology_all(ring)


def ordinary_homology(
    K: FilteredComplex, ring: RingSpec = INTEGERS
) -> dict[int, HomologyResult]:
    """Simplicial homology, as the infinite-perversity intersection
    homology (every simplex allowable)."""
    return intersection_homology(
        K, Perversity.constant(POS_INF, name="infinite"), ring
    )


# -- relative pairs ----------------------------------------------------------


class RelativeIntersectionComplex:
    """Intersection chains of a pair, presented as an explicit quotient.

    The subcomplex can be a filtered complex or any face-closed collection
    of simplices of K.  Its chains are the intersection chains of K that
    are supported inside it; allowability is judged in the ambient complex
    even for simplices of the subcomplex (the intrinsic filtration gives
    the same answer, so only one point of view is coded).  Chains supported
    in a subcomplex form a saturated sub-lattice, hence the quotient is
    free and carries an exact induced differential.
    """

    def __init__(
        self,
        K: FilteredComplex,
        sub: FilteredComplex | Iterable[Iterable[int]],
        pbar: Perversity,
    ):
        require_full(K)
        self.K = K
        self.pbar = pbar
        if isinstance(sub, FilteredComplex):
            members = set(sub.simplices)
        else:
            members = {as_simplex(s) for s in sub}
        for s in members:
            if s not in K:
                raise StructuralError(
                    f"{s} is not a simplex of the ambient complex"
                )
            for face in proper_faces(s):
                if face not in members:
                    raise StructuralError(
                        f"subcomplex misses the face {face} of {s}"
                    )
        self.sub_simplices = frozenset(members)
        self.absolute = IntersectionChainComplex(K, pbar)
        self._sub_coords: dict[int, Matrix] = {}
        self._quotient: SubquotientComplex | None = None

    def sub_lattice(self, k: int) -> Matrix:
        """Chains of the subcomplex in the coordinates of the absolute
        intersection lattice (columns are basis vectors)."""
        cached = self._sub_coords.get(k)
        if cached is not None:
            return cached
        data = self.absolute.degree_data(k)
        total_cols = len(data.lattice[0]) if data.lattice else 0
        inside = [s for s in data.allowable if s in self.sub_simplices]
        if not inside or total_cols == 0:
            coords = zeros(total_cols, 0)
            self._sub_coords[k] = coords
            return coords
        if k == 0:
            local = identity(len(inside))
        else:
            below = [
                t
                for t in self.K.simplices_of_dim(k - 1)
                if t in self.sub_simplices
            ]
            bad = [
                i
                for i, t in enumerate(below)
                if not is_allowable(self.K, self.pbar, t)
            ]
            if not bad:
                local = identity(len(inside))
            else:
                bd = boundary_matrix(inside, below)
                local = integer_kernel_basis([bd[i] for i in bad])
        cols = len(local[0]) if local else 0
        emb = zeros(len(data.simplices), cols)
        idx = {s: i for i, s in enumerate(data.simplices)}
        for r, s in enumerate(inside):
            row = local[r]
            er = emb[idx[s]]
            for c in range(cols):
                er[c] = row[c]
        coords = solve_exact(self.absolute.ambient_matrix(k), emb)
        self._sub_coords[k] = coords
        return coords

    def quotient(self) -> SubquotientComplex:
        if self._quotient is None:
            parent = self.absolute.as_complex()
            sub = {k: self.sub_lattice(k) for k in parent.dims}
            self._quotient = SubquotientComplex(parent, sub)
        return self._quotient

    def as_complex(self) -> ChainComplexData:
        return self.quotient().as_complex()

    def homology(self, k: int, ring: RingSpec = INTEGERS) -> HomologyResult:
        if k < 0 or k > self.absolute.top_degree():
            return ZERO_GROUP
        return self.as_complex().homology(k, ring)

    def homology_all(
        self, ring: RingSpec = INTEGERS
    ) -> dict[int, HomologyResult]:
        return {
            k: self.homology(k, ring)
            for k in range(self.absolute.top_degree() + 1)
        }


def relative_intersection_homology(
    K: FilteredComplex,
    sub: FilteredComplex | Iterable[Iterable[int]],
    pbar: Perversity,
    ring: RingSpec = INTEGERS,
) -> dict[int, HomologyResult]:
    """Intersection homology of a pair, all degrees."""
    return RelativeIntersectionComplex(K, sub, pbar).homology_all(ring)


# -- the residual decomposition ------------------------------------------------


@dataclass(frozen=True)
class DegreeVerdict:
    degree: int
    star_rank: int
    pair_rank: int
    unimodular: bool


@dataclass(frozen=True)
class DecompositionReport:
    """Outcome of the chain-level comparison between the clot star pairs
    and the pair of the complex with its residual subcomplex."""

    complexity: tuple[ExtInt, ExtInt]
    clots: tuple[Simplex, ...]
    degrees: tuple[DegreeVerdict, ...]

    @property
    def bijective(self) -> bool:
        return all(v.unimodular for v in self.degrees)


def join_rim(J: FilteredComplex, beta: Simplex) -> tuple[Simplex, ...]:
    """The simplices of a clot join that avoid the full clot: the join of
    the clot's boundary with the link, together with the link itself and
    the clot's proper faces."""
    bset = set(beta)
    return tuple(s for s in J.simplices if not bset <= set(s))


def residual_decomposition_check(
    K: FilteredComplex, pbar: Perversity
) -> DecompositionReport:
    """Certify that inclusions of the clot stars induce a bijection

        sum over clots of  C(clot join, rim)  ->  C(K, residual)

    of intersection lattices in every degree.  Bijectivity is decided over
    the integers: the assembled matrix must be square with all invariant
    factors equal to one.
    """
    require_full(K)
    if K.is_empty:
        raise StructuralError("the decomposition needs a nonempty complex")
    betas = clots(K)
    total = RelativeIntersectionComplex(K, residual_complex(K), pbar)
    tq = total.quotient()
    stars = []
    for beta in betas:
        J = clot_join(K, beta)
        rel = RelativeIntersectionComplex(
            J, join_rim(J, beta), pbar.induced(K, J)
        )
        stars.append(rel)
    top = K.dim().finite_value()
    verdicts = []
    for k in range(top + 1):
        rows = tq.dims.get(k, 0)
        ambient_idx = {
            s: i for i, s in enumerate(K.simplices_of_dim(k))
        }
        blocks: list[Matrix] = []
        cols = 0
        for rel in stars:
            q = rel.quotient()
            d = q.dims.get(k, 0)
            if d == 0:
                continue
            cols += d
            lifted = q.lift(k, identity(d))
            in_star = mat_mul(rel.absolute.ambient_matrix(k), lifted)
            emb = zeros(len(ambient_idx), d)
            for r, s in enumerate(rel.absolute.degree_data(k).simplices):
                row = in_star[r]
                er = emb[ambient_idx[s]]
                for c in range(d):
                    er[c] = row[c]
            coords = solve_exact(total.absolute.ambient_matrix(k), emb)
            blocks.append(tq.project(k, coords))
        if rows == 0 or cols == 0:
            verdicts.append(DegreeVerdict(k, cols, rows, rows == cols))
            continue
        assembled = [
            [block[r][c] for block in blocks for c in range(len(block[0]))]
            for r in range(rows)
        ]
        if rows != cols:
            verdicts.append(DegreeVerdict(k, cols, rows, False))
            continue
        invariants = snf_diagonal(assembled)
        ok = len(invariants) == rows and all(
            abs(v) == 1 for v in invariants
        )
        verdicts.append(DegreeVerdict(k, cols, rows, ok))
    return DecompositionReport(
        complexity=complexity(K), clots=betas, degrees=tuple(verdicts)
    )


# -- local calculation at a clot ----------------------------------------------


def truncated_homology(
    groups: Mapping[int, HomologyResult], cutoff: ExtInt
) -> dict[int, HomologyResult]:
    """Keep degrees <= cutoff, zero out the rest."""
    return {
        k: (g if ExtInt(k) <= cutoff else ZERO_GROUP)
        for k, g in groups.items()
    }


def join_homology_prediction(
    K: FilteredComplex,
    pbar: Perversity,
    beta: Simplex,
    ring: RingSpec = INTEGERS,
) -> dict[int, HomologyResult]:
    """Intersection homology of the join of a clot with its link, computed
    from the link alone.

    Let Q be the stratum of the clot and Dpbar its complementary value
    codim(Q) - 2 - pbar(Q).  The join is a repeated cone on the link, and
    coning truncates:

    * Q regular: a cone on an unfiltered ground, one copy of the ring in
      degree zero.
    * Dpbar(Q) >= 0: the homology of the link in degrees <= Dpbar(Q),
      zero above.
    * Dpbar(Q) <= -2: one copy of the ring in degree zero (the cone point
      is so permissive that everything is allowable and the join is
      contractible through allowable chains).
    * Dpbar(Q) == -1: the ring in degree zero when the link has nonzero
      homology in degree zero, and the zero group otherwise (with an empty
      link nothing reaches the cone point).
    """
    Q = K.stratum_of(beta)
    top = K.dim().finite_value()
    degrees = range(top + 1)
    if Q.regular:
        return {
            k: (HomologyResult(1) if k == 0 else ZERO_GROUP) for k in degrees
        }
    dual_q = ExtInt(Q.codim - 2) - pbar.of_stratum(Q)
    L = link(K, beta)
    if dual_q >= ExtInt(0):
        if L.is_empty:
            link_h: dict[int, HomologyResult] = {}
        else:
            pbar_l = pbar.induced(K, L)
            link_h = intersection_homology(L, pbar_l, ring)
        out = {k: ZERO_GROUP for k in degrees}
        for k, g in truncated_homology(link_h, dual_q).items():
            out[k] = g
        return out
    if dual_q <= ExtInt(-2):
        return {
            k: (HomologyResult(1) if k == 0 else ZERO_GROUP) for k in degrees
        }
    # dual_q == -1
    if L.is_empty:
        h0_nonzero = False
    else:
        pbar_l = pbar.induced(K, L)
        h0_nonzero = not IntersectionChainComplex(L, pbar_l).homology(
            0, ring
        ).is_zero
    return {
        k: (HomologyResult(1) if (k == 0 and h0_nonzero) else ZERO_GROUP)
        for k in degrees
    }


def join_case_label(K: FilteredComplex, pbar: Perversity, beta: Simplex) -> str:
    """Which branch of the local calculation a clot falls into; used by the
    verification harness to certify that every branch was exercised."""
    Q = K.stratum_of(beta)
    if Q.regular:
        return "regular"
    dual_q = ExtInt(Q.codim - 2) - pbar.of_stratum(Q)
    if dual_q >= ExtInt(0):
        return "truncate"
    if dual_q <= ExtInt(-2):
        return "point"
    L = link(K, beta)
    if L.is_empty:
        return "h0-zero"
    pbar_l = pbar.induced(K, L)
    if IntersectionChainComplex(L, pbar_l).homology(0).is_zero:
        return "h0-zero"
    return "h0-nonzero"
