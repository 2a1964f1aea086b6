"""Blown-up cochains of filtered simplicial complexes.

Over each regular simplex, with canonical decomposition into level parts,
sits a local cochain complex: the tensor product of the simplicial cochains
of the cones on the singular-level parts with those of the regular part.  A
face of the cone on part i is a pair (F, eps): the face F of the part,
coned (eps = 1, the apex adjoined as greatest vertex) or not.  The empty
face is only a face once coned, and the regular part is never coned.

A global blown-up cochain assigns a local cochain to every regular simplex,
compatibly with restriction to regular faces.  Because restriction sends
basis elements to identically labeled basis elements or to zero, the
compatible families have a canonical basis indexed by pairs
(carrier, eps-pattern): the carrier is a regular simplex (the join of all
the F parts) and the pattern records which factors are coned.  Every
regular simplex containing the carrier sees the same label, and walking
down to the carrier through regular faces shows the labels exhaust the
compatibility classes; the tests re-derive this from a raw union-find over
coordinates.

Perverse degree: over a singular stratum at level l, a class with eps_l = 1
restricts to zero (degree minus infinity), and a class with eps_l = 0 is
constrained exactly over the stratum of its own front face at level l, with
degree the sum of the factor dimensions above l.  Intersection cochains for
a perversity are the cochains with allowable values and allowable
coboundary; since allowability is a property of individual labels, the
complex in each degree is a kernel lattice over the allowed labels.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable, Sequence

from .core_complex import (
    FilteredComplex,
    Simplex,
    closed_star,
    clot_join,
    clots,
    link,
    require_full,
    residual_complex,
)
from .exact_algebra import (
    INTEGERS,
    ChainComplexData,
    HomologyResult,
    Matrix,
    RingSpec,
    ZERO_GROUP,
    identity,
    integer_kernel_basis,
    mat_mul,
    rank,
    solve_exact,
    zeros,
)
from .extint import NEG_INF, ExtInt
from .intersection_chains import Perversity

ConeFace = tuple[Simplex | tuple, int]  # (face, eps); face may be ()
LocalElement = tuple[ConeFace, ...]
ClassLabel = tuple[Simplex, tuple[int, ...]]  # (carrier, eps over factors <n)


# -- cone faces ----------------------------------------------------------------


def cone_face_dim(face: tuple, eps: int) -> int:
    """Dimension of a face of a cone: coning raises it by one, and the bare
    apex (empty face, coned) is a vertex."""
    if not face:
        if not eps:
            raise ValueError("the empty face exists only in the cone")
        return 0
    return len(face) - 1 + eps


def cone_faces(part: tuple, coned: bool) -> list[ConeFace]:
    """All faces of the cone on a simplex part (or of the bare simplex)."""
    out: list[ConeFace] = []
    if coned:
        out.append(((), 1))
    for r in range(1, len(part) + 1):
        for f in itertools.combinations(part, r):
            out.append((f, 0))
            if coned:
                out.append((f, 1))
    return out


def _cone_cofaces(
    face: tuple, eps: int, part: tuple, coned: bool
) -> list[tuple[int, ConeFace]]:
    """Signed codimension-one cofaces within the cone on ``part``."""
    out: list[tuple[int, ConeFace]] = []
    if coned and eps == 0:
        out.append(((-1) ** len(face), (face, 1)))
    for v in part:
        if v in face:
            continue
        g = tuple(sorted(face + (v,)))
        out.append(((-1) ** g.index(v), (g, eps)))
    return out


# -- local complexes -----------------------------------------------------------


def local_elements(parts: Sequence[tuple]) -> list[LocalElement]:
    """Basis of the local blown-up complex of a decomposed regular simplex.

    ``parts`` has one entry per level; the last part is the regular one and
    must be nonempty.
    """
    if not parts or not parts[-1]:
        raise ValueError("a regular simplex needs a nonempty top part")
    choices: list[list[ConeFace]] = []
    for i, part in enumerate(parts):
        coned = i < len(parts) - 1
        choices.append(cone_faces(part, coned))
    return [tuple(c) for c in itertools.product(*choices)]


def element_degree(elem: LocalElement) -> int:
    return sum(cone_face_dim(f, e) for f, e in elem)


def local_coboundary(
    parts: Sequence[tuple], elem: LocalElement
) -> dict[LocalElement, int]:
    """Tensor-product simplicial coboundary within the closed simplex."""
    out: dict[LocalElement, int] = {}
    koszul = 1
    last = len(parts) - 1
    for i, (face, eps) in enumerate(elem):
        for sign, cf in _cone_cofaces(face, eps, parts[i], i < last):
            target = elem[:i] + (cf,) + elem[i + 1 :]
            c = out.get(target, 0) + koszul * sign
            if c:
                out[target] = c
            else:
                del out[target]
        if cone_face_dim(face, eps) % 2:
            koszul = -koszul
    return out


def element_class(elem: LocalElement) -> ClassLabel:
    """The compatibility class a local basis element belongs to."""
    carrier: list[int] = []
    eps = []
    for i, (face, e) in enumerate(elem):
        carrier.extend(face)
        if i < len(elem) - 1:
            eps.append(e)
    return (tuple(sorted(carrier)), tuple(eps))


def decomposed_simplex_complex(
    parts: Sequence[Iterable[int]], n: int | None = None
) -> FilteredComplex:
    """The closed simplex with prescribed level parts, as a full filtered
    complex: each face takes the level of its highest vertex."""
    parts = [tuple(sorted(p)) for p in parts]
    if n is None:
        n = len(parts) - 1
    if len(parts) - 1 > n:
        raise ValueError("more parts than levels")
    level_of = {}
    for i, part in enumerate(parts):
        for v in part:
            level_of[v] = i
    allv = tuple(sorted(level_of))
    if len(allv) != sum(len(p) for p in parts):
        raise ValueError("parts must be disjoint")
    filt = {}
    for r in range(1, len(allv) + 1):
        for f in itertools.combinations(allv, r):
            filt[f] = max(level_of[v] for v in f)
    return FilteredComplex(filt, n)


# -- class labels --------------------------------------------------------------


def class_parts(K: FilteredComplex, label: ClassLabel) -> tuple[tuple, ...]:
    carrier, _ = label
    parts: list[list[int]] = [[] for _ in range(K.n + 1)]
    for v in carrier:
        parts[K.vertex_level(v)].append(v)
    return tuple(tuple(p) for p in parts)


def class_degree(K: FilteredComplex, label: ClassLabel) -> int:
    parts = class_parts(K, label)
    _, eps = label
    total = len(parts[-1]) - 1
    for i in range(K.n):
        total += cone_face_dim(parts[i], eps[i])
    return total


def valid_eps_patterns(parts: Sequence[tuple], n: int) -> list[tuple[int, ...]]:
    """All coning patterns admissible for the given parts: empty singular
    parts are forcibly coned."""
    slots = [(1,) if not parts[i] else (0, 1) for i in range(n)]
    return [tuple(e) for e in itertools.product(*slots)]


def class_labels_by_degree(
    K: FilteredComplex,
) -> dict[int, tuple[ClassLabel, ...]]:
    require_full(K)
    n = K.n
    out: dict[int, list[ClassLabel]] = {}
    for s in K.simplices:
        if K.level(s) != n:
            continue
        parts: list[tuple] = [() for _ in range(n + 1)]
        groups: dict[int, list[int]] = {}
        for v in s:
            groups.setdefault(K.vertex_level(v), []).append(v)
        for lev, vs in groups.items():
            parts[lev] = tuple(vs)
        base = len(parts[n]) - 1
        for eps in valid_eps_patterns(parts, n):
            deg = base + sum(
                cone_face_dim(parts[i], eps[i]) for i in range(n)
            )
            out.setdefault(deg, []).append((s, eps))
    return {k: tuple(sorted(v)) for k, v in out.items()}


def class_local_element(
    K: FilteredComplex, label: ClassLabel
) -> LocalElement:
    """The representative of the class in the coordinate of its carrier."""
    parts = class_parts(K, label)
    _, eps = label
    elem = []
    for i in range(K.n):
        elem.append((parts[i], eps[i]))
    elem.append((parts[-1], 0))
    return tuple(elem)


def class_coboundary(
    K: FilteredComplex, label: ClassLabel
) -> dict[ClassLabel, int]:
    """Coboundary of a class, computed on labels.

    Two kinds of cofaces: coning an unconed nonempty singular part (the
    carrier is unchanged), and adjoining a vertex of the complex joinable
    to the carrier (the vertex lands in the factor of its level).  Signs
    are the cone coface signs times the Koszul sign of the factor, all
    intrinsic to the label, which is what makes the per-coordinate
    coboundaries of a class assemble to a compatible family.
    """
    carrier, eps = label
    n = K.n
    parts = class_parts(K, label)
    dims = [cone_face_dim(parts[i], eps[i]) for i in range(n)]
    dims.append(len(parts[n]) - 1)
    prefix = [0] * (n + 2)
    for i in range(n + 1):
        prefix[i + 1] = prefix[i] + dims[i]
    out: dict[ClassLabel, int] = {}

    for i in range(n):
        if eps[i] == 0:
            koszul = -1 if prefix[i] % 2 else 1
            sign = koszul * ((-1) ** len(parts[i]))
            flipped = eps[:i] + (1,) + eps[i + 1 :]
            target = (carrier, flipped)
            c = out.get(target, 0) + sign
            if c:
                out[target] = c
            else:
                del out[target]

    in_carrier = set(carrier)
    for v in K.vertices():
        if v in in_carrier:
            continue
        bigger = tuple(sorted(carrier + (v,)))
        if bigger not in K:
            continue
        i = K.vertex_level(v)
        new_part = tuple(sorted(parts[i] + (v,)))
        koszul = -1 if prefix[i] % 2 else 1
        sign = koszul * ((-1) ** new_part.index(v))
        target = (bigger, eps)
        c = out.get(target, 0) + sign
        if c:
            out[target] = c
        else:
            del out[target]
    return out


# -- perverse degrees and allowability ------------------------------------------


def face_perverse_degree(elem: LocalElement, ell: int) -> ExtInt:
    """Perverse degree of a local basis element in codimension ell.

    Codimension ell names the factor n - ell.  When that factor is coned
    the element restricts to zero there and the degree is minus infinity;
    otherwise it is the total dimension of the factors past it.
    """
    n = len(elem) - 1
    if not 1 <= ell <= n:
        raise ValueError(f"codimension {ell} outside 1..{n}")
    i = n - ell
    _, eps = elem[i]
    if eps == 1:
        return NEG_INF
    return ExtInt(sum(cone_face_dim(f, e) for f, e in elem[i + 1 :]))


def class_perverse_degree(
    K: FilteredComplex, label: ClassLabel, level: int
) -> ExtInt:
    """Perverse degree of a class over the (unique) stratum it constrains
    at the given level: minus infinity when the factor is coned, else the
    total dimension above the level."""
    if not 0 <= level < K.n:
        return NEG_INF
    _, eps = label
    if eps[level] == 1:
        return NEG_INF
    parts = class_parts(K, label)
    total = len(parts[-1]) - 1
    for j in range(level + 1, K.n):
        total += cone_face_dim(parts[j], eps[j])
    return ExtInt(total)


def class_constraints(
    K: FilteredComplex, label: ClassLabel
) -> list[tuple[int, tuple[int, int], ExtInt]]:
    """The (level, stratum key, perverse degree) triples a class is subject
    to: one per unconed singular factor, over the stratum of the front face
    of the carrier at that level."""
    carrier, eps = label
    out = []
    for level in range(K.n):
        if eps[level] == 1:
            continue
        front = tuple(
            sorted(v for v in carrier if K.vertex_level(v) <= level)
        )
        stratum = K.stratum_of(front)
        out.append(
            (level, stratum.key, class_perverse_degree(K, label, level))
        )
    return out


def is_class_allowable(
    K: FilteredComplex, pbar: Perversity, label: ClassLabel
) -> bool:
    carrier, eps = label
    for level in range(K.n):
        if eps[level] == 1:
            continue
        front = tuple(
            sorted(v for v in carrier if K.vertex_level(v) <= level)
        )
        stratum = K.stratum_of(front)
        if class_perverse_degree(K, label, level) > pbar.of_stratum(stratum):
            return False
    return True


# -- the global complex ----------------------------------------------------------


class GlobalBlownUpComplex:
    """All blown-up cochains of a full filtered complex, in the class basis."""

    def __init__(self, K: FilteredComplex):
        require_full(K)
        self.K = K
        self._labels = class_labels_by_degree(K)
        self._index: dict[int, dict[ClassLabel, int]] = {
            k: {lab: i for i, lab in enumerate(labs)}
            for k, labs in self._labels.items()
        }
        self._matrices: dict[int, Matrix] = {}

    def degrees(self) -> list[int]:
        return sorted(self._labels)

    def top_degree(self) -> int:
        return max(self._labels, default=-1)

    def labels(self, k: int) -> tuple[ClassLabel, ...]:
        return self._labels.get(k, ())

    def label_index(self, k: int, label: ClassLabel) -> int:
        return self._index[k][label]

    def dim(self, k: int) -> int:
        return len(self._labels.get(k, ()))

    def coboundary_matrix(self, k: int) -> Matrix:
        """Matrix of the coboundary from degree k to degree k+1."""
        m = self._matrices.get(k)
        if m is not None:
            return m
        src = self._labels.get(k, ())
        dst_index = self._index.get(k + 1, {})
        m = zeros(len(dst_index), len(src))
        for j, lab in enumerate(src):
            for target, coeff in class_coboundary(self.K, lab).items():
                m[dst_index[target]][j] = coeff
        self._matrices[k] = m
        return m

    def as_complex(self) -> ChainComplexData:
        dims = {k: self.dim(k) for k in self.degrees()}
        diffs = {
            k: self.coboundary_matrix(k)
            for k in self.degrees()
            if self.dim(k) and self.dim(k + 1)
        }
        return ChainComplexData(dims, diffs, down=False)

    def cohomology(self, k: int, ring: RingSpec = INTEGERS) -> HomologyResult:
        if self.dim(k) == 0:
            return ZERO_GROUP
        return self.as_complex().homology(k, ring)

    def cohomology_all(
        self, ring: RingSpec = INTEGERS
    ) -> dict[int, HomologyResult]:
        top = self.top_degree()
        return {k: self.cohomology(k, ring) for k in range(top + 1)}


class BlownUpIntersectionComplex:
    """Blown-up intersection cochains for a perversity.

    Degree k holds the integer combinations of allowed degree-k classes
    whose coboundary is again supported on allowed classes; both conditions
    are coordinate conditions, so the lattice is a kernel over the allowed
    columns of the coboundary restricted to disallowed rows.
    """

    def __init__(
        self,
        K: FilteredComplex,
        pbar: Perversity,
        ambient: GlobalBlownUpComplex | None = None,
        carrier_filter: Callable[[Simplex], bool] | None = None,
    ):
        self.ambient = ambient if ambient is not None else GlobalBlownUpComplex(K)
        self.K = self.ambient.K
        self.pbar = pbar
        self.carrier_filter = carrier_filter
        self._allowed: dict[int, list[int]] = {}
        self._lattice: dict[int, Matrix] = {}
        self._complex: ChainComplexData | None = None

    def _allowed_indices(self, k: int) -> list[int]:
        got = self._allowed.get(k)
        if got is not None:
            return got
        out = []
        for i, lab in enumerate(self.ambient.labels(k)):
            if self.carrier_filter is not None and not self.carrier_filter(
                lab[0]
            ):
                continue
            if is_class_allowable(self.K, self.pbar, lab):
                out.append(i)
        self._allowed[k] = out
        return out

    def allowed_labels(self, k: int) -> tuple[ClassLabel, ...]:
        labs = self.ambient.labels(k)
        return tuple(labs[i] for i in self._allowed_indices(k))

    def lattice(self, k: int) -> Matrix:
        """Columns: the degree-k intersection lattice over the allowed
        labels of degree k."""
        got = self._lattice.get(k)
        if got is not None:
            return got
        allowed = self._allowed_indices(k)
        if not allowed:
            lat: Matrix = []
        else:
            allowed_up = set(self._allowed_indices(k + 1))
            cob = self.ambient.coboundary_matrix(k)
            bad_rows = [
                [cob[r][c] for c in allowed]
                for r in range(self.ambient.dim(k + 1))
                if r not in allowed_up
            ]
            bad_rows = [row for row in bad_rows if any(row)]
            if not bad_rows:
                lat = identity(len(allowed))
            else:
                lat = integer_kernel_basis(bad_rows)
        self._lattice[k] = lat
        return lat

    def lattice_rank(self, k: int) -> int:
        lat = self.lattice(k)
        return len(lat[0]) if lat else 0

    def lattice_in_ambient(self, k: int) -> Matrix:
        """The lattice columns written over all degree-k classes."""
        lat = self.lattice(k)
        allowed = self._allowed_indices(k)
        cols = len(lat[0]) if lat else 0
        out = zeros(self.ambient.dim(k), cols)
        for r, idx in enumerate(allowed):
            for c in range(cols):
                out[idx][c] = lat[r][c]
        return out

    def as_complex(self) -> ChainComplexData:
        if self._complex is not None:
            return self._complex
        top = self.ambient.top_degree()
        dims = {k: self.lattice_rank(k) for k in range(top + 1)}
        diffs: dict[int, Matrix] = {}
        for k in range(top + 1):
            if dims.get(k, 0) == 0 or dims.get(k + 1, 0) == 0:
                continue
            image = mat_mul(
                self.ambient.coboundary_matrix(k), self.lattice_in_ambient(k)
            )
            diffs[k] = solve_exact(self.lattice_in_ambient(k + 1), image)
        self._complex = ChainComplexData(dims, diffs, down=False)
        return self._complex

    def cohomology(self, k: int, ring: RingSpec = INTEGERS) -> HomologyResult:
        if k < 0 or k > self.ambient.top_degree():
            return ZERO_GROUP
        return self.as_complex().homology(k, ring)

    def cohomology_all(
        self, ring: RingSpec = INTEGERS
    ) -> dict[int, HomologyResult]:
        top = self.ambient.top_degree()
        return {k: self.cohomology(k, ring) for k in range(top + 1)}


def blown_up_cohomology(
    K: FilteredComplex, pbar: Perversity, ring: RingSpec = INTEGERS
) -> dict[int, HomologyResult]:
    return BlownUpIntersectionComplex(K, pbar).cohomology_all(ring)


# -- restriction to a subcomplex and relative complexes ---------------------------


def restriction_matrix(
    source: GlobalBlownUpComplex, target: GlobalBlownUpComplex, k: int
) -> Matrix:
    """Matrix of the restriction of global cochains to a subcomplex,
    in the class bases: identical labels correspond, all else maps to
    zero."""
    rows = target.labels(k)
    cols = source.labels(k)
    col_index = {lab: j for j, lab in enumerate(cols)}
    m = zeros(len(rows), len(cols))
    for i, lab in enumerate(rows):
        j = col_index.get(lab)
        if j is None:
            raise ValueError(
                f"label {lab} of the subcomplex does not appear upstairs; "
                "is the subcomplex full with the induced filtration?"
            )
        m[i][j] = 1
    return m


def extension_matrix(
    source: GlobalBlownUpComplex, target: GlobalBlownUpComplex, k: int
) -> Matrix:
    """Extension by zero from the subcomplex's classes, the right inverse
    of the restriction."""
    rows = source.labels(k)
    cols = target.labels(k)
    row_index = {lab: i for i, lab in enumerate(rows)}
    m = zeros(len(rows), len(cols))
    for j, lab in enumerate(cols):
        m[row_index[lab]][j] = 1
    return m


class RelativeBlownUpComplex(BlownUpIntersectionComplex):
    """Blown-up intersection cochains vanishing on a subcomplex.

    The coboundary of a class keeps its carrier or grows it, and a carrier
    outside a subcomplex cannot grow into it, so the classes with carrier
    off the subcomplex span a subcomplex of cochains; intersecting with the
    allowability lattice gives the relative intersection complex.
    """

    def __init__(
        self,
        K: FilteredComplex,
        sub: FilteredComplex,
        pbar: Perversity,
        ambient: GlobalBlownUpComplex | None = None,
    ):
        self.sub = sub
        super().__init__(
            K, pbar, ambient=ambient, carrier_filter=lambda c: c not in sub
        )


# -- local join computations --------------------------------------------------


def blown_up_join_prediction(
    K: FilteredComplex,
    pbar: Perversity,
    beta: Simplex,
    ring: RingSpec = INTEGERS,
) -> dict[int, HomologyResult]:
    """Blown-up intersection cohomology of the closed star of a clot,
    predicted from its link: the join with a simplex at a singular stratum
    truncates the link's cohomology at the perversity of the stratum, and a
    join at a regular stratum is a cone with the cohomology of a point."""
    star = closed_star(K, beta)
    degrees = range(max(len(s) for s in star.simplices))
    Q = K.stratum_of(beta)
    if Q.regular:
        return {
            k: (HomologyResult(1) if k == 0 else ZERO_GROUP) for k in degrees
        }
    bound = pbar.of_stratum(Q)
    L = link(K, beta)
    if L.is_empty:
        return {k: ZERO_GROUP for k in degrees}
    pl = pbar.induced(K, L)
    link_cohomology = BlownUpIntersectionComplex(L, pl).cohomology_all(ring)
    out = {k: ZERO_GROUP for k in degrees}
    for k, g in link_cohomology.items():
        if k in out and ExtInt(k) <= bound:
            out[k] = g
    return out


# -- restriction surjectivity and the relative decomposition -------------------


def restriction_surjectivity(
    K: FilteredComplex,
    pbar: Perversity,
    sub: FilteredComplex | None = None,
) -> dict[int, tuple[int, int]]:
    """Rank test that intersection cochains restrict onto those of a full
    subcomplex; the residual complex when none is given.

    Returns, per degree, the rank of the restricted intersection lattice
    next to the lattice rank downstairs.  The map is onto exactly when the
    two agree everywhere (extension by zero provides the section, so rank
    equality is the whole content).
    """
    require_full(K)
    if sub is None:
        sub = residual_complex(K)
    N = BlownUpIntersectionComplex(K, pbar)
    if sub.is_empty:
        return {k: (0, 0) for k in range(N.ambient.top_degree() + 1)}
    Ns = BlownUpIntersectionComplex(sub, pbar.induced(K, sub))
    out = {}
    top = max(N.ambient.top_degree(), Ns.ambient.top_degree(), -1)
    for k in range(top + 1):
        R = restriction_matrix(N.ambient, Ns.ambient, k)
        image = mat_mul(R, N.lattice_in_ambient(k))
        out[k] = (rank(image), Ns.lattice_rank(k))
    return out


def relative_blown_up_cohomology(
    K: FilteredComplex, pbar: Perversity, ring: RingSpec = INTEGERS
) -> dict[int, HomologyResult]:
    """Cohomology of the blown-up intersection cochains vanishing on the
    residual subcomplex."""
    require_full(K)
    return RelativeBlownUpComplex(
        K, residual_complex(K), pbar
    ).cohomology_all(ring)


def relative_decomposition_sides(
    K: FilteredComplex, pbar: Perversity, ring: RingSpec = INTEGERS
) -> tuple[dict[int, HomologyResult], dict[int, HomologyResult]]:
    """Both sides of the relative decomposition in one call.

    Left: the complex against its residual.  Right: the direct sum over
    clots of the clot join against the join's own residual.  The theorem
    under test says the two agree in rank and torsion in every degree.
    """
    require_full(K)
    total = relative_blown_up_cohomology(K, pbar, ring)
    pieces: dict[int, HomologyResult] = {}
    for beta in clots(K):
        J = clot_join(K, beta)
        part = RelativeBlownUpComplex(
            J, residual_complex(J), pbar.induced(K, J)
        ).cohomology_all(ring)
        for k, g in part.items():
            pieces[k] = pieces.get(k, ZERO_GROUP).direct_sum(g)
    degrees = set(total) | set(pieces)
    lhs = {k: total.get(k, ZERO_GROUP) for k in degrees}
    rhs = {k: pieces.get(k, ZERO_GROUP) for k in degrees}
    return lhs, rhs


