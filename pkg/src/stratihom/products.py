"""Cup products and the blow-up of plain cochains.

Two cochain algebras live over a filtered complex.  Ordinary simplicial
cochains carry the front-face/back-face product once the vertices are
ordered; the filtration order (level first, then label) makes every simplex
list its level parts consecutively, which is what the comparison with the
blown-up side needs.  Blown-up cochains carry the tensor product of the
factor products, the cone apex acting as the greatest vertex of its factor.

The blow-up map pulls a face indicator back along the projection that
forgets the cone coordinates: it cones the parts of the face below its top
level and spreads over the degree-zero faces of the remaining factors.  Its
image lies in the zero-perversity lattice, and on every decomposed simplex
it is a degree-preserving isomorphism onto that lattice carrying one
product to the other; both facts are checked by determinant and by
exhaustive multiplication.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Sequence

from .blowup_cochains import (
    BlownUpIntersectionComplex,
    ClassLabel,
    ConeFace,
    GlobalBlownUpComplex,
    LocalElement,
    class_local_element,
    cone_face_dim,
    decomposed_simplex_complex,
    element_class,
)
from .core_complex import (
    FilteredComplex,
    Simplex,
    VertexOrder,
    as_simplex,
    order_vertices,
    require_full,
)
from .exact_algebra import (
    ChainComplexData,
    Matrix,
    determinant,
    mat_mul,
    solve_exact,
    zeros,
)
from .intersection_chains import zero_perversity


# -- ordered simplicial cochains --------------------------------------------


class OrderedCochainComplex:
    """Simplicial cochains of a filtered complex, in a vertex order.

    The basis is one indicator per simplex, graded by dimension.  All signs
    are taken in the order listing of the simplex, so the coboundary and
    the front/back product of the order fit together.
    """

    def __init__(self, K: FilteredComplex, order: VertexOrder | None = None):
        self.K = K
        self.order = order if order is not None else order_vertices(K)
        self._cob: dict[int, Matrix] = {}
        self._index: dict[int, dict[Simplex, int]] = {}
        self._complex: ChainComplexData | None = None

    def top_degree(self) -> int:
        d = self.K.dim()
        return d.finite_value() if d.is_finite else -1

    def basis(self, k: int) -> tuple[Simplex, ...]:
        return self.K.simplices_of_dim(k)

    def dim(self, k: int) -> int:
        return len(self.basis(k))

    def index(self, k: int, s: Simplex) -> int:
        table = self._index.get(k)
        if table is None:
            table = {f: i for i, f in enumerate(self.basis(k))}
            self._index[k] = table
        return table[s]

    def front_face(self, s: Simplex, p: int) -> Simplex:
        """The span of the first p+1 vertices in the order listing."""
        listed = self.order.sort(s)
        return tuple(sorted(listed[: p + 1]))

    def back_face(self, s: Simplex, q: int) -> Simplex:
        """The span of the last q+1 vertices in the order listing."""
        listed = self.order.sort(s)
        return tuple(sorted(listed[len(listed) - q - 1 :]))

    def coboundary_matrix(self, k: int) -> Matrix:
        cached = self._cob.get(k)
        if cached is not None:
            return cached
        rows = self.basis(k + 1)
        m = zeros(len(rows), self.dim(k))
        for i, t in enumerate(rows):
            listed = self.order.sort(t)
            for pos, v in enumerate(listed):
                f = tuple(sorted(u for u in t if u != v))
                m[i][self.index(k, f)] = -1 if pos % 2 else 1
        self._cob[k] = m
        return m

    def as_complex(self) -> ChainComplexData:
        if self._complex is None:
            top = self.top_degree()
            dims = {k: self.dim(k) for k in range(top + 1)}
            diffs = {
                k: self.coboundary_matrix(k) for k in range(top)
            }
            self._complex = ChainComplexData(dims, diffs, down=False)
        return self._complex

    def basis_cup(self, f: Simplex, g: Simplex) -> Simplex | None:
        """The front/back product of two indicators: nonzero exactly when
        the last ordered vertex of the first face is the first of the
        second and the union spans a simplex; the coefficient is one."""
        lf = self.order.sort(f)
        lg = self.order.sort(g)
        if lf[-1] != lg[0]:
            return None
        union = tuple(sorted(set(f) | set(g)))
        if union not in self.K:
            return None
        return union

    def cup(
        self, ka: int, va: Sequence[int], kb: int, vb: Sequence[int]
    ) -> list[int]:
        """Product of two cochains given as coordinate vectors."""
        out = [0] * self.dim(ka + kb)
        basis_a = self.basis(ka)
        basis_b = self.basis(kb)
        for i, ca in enumerate(va):
            if not ca:
                continue
            for j, cb in enumerate(vb):
                if not cb:
                    continue
                union = self.basis_cup(basis_a[i], basis_b[j])
                if union is not None:
                    out[self.index(ka + kb, union)] += ca * cb
        return out

    def unit(self) -> list[int]:
        """The sum of the vertex indicators, the two-sided unit."""
        return [1] * self.dim(0)


# -- the blown-up product ----------------------------------------------------


def cone_face_cup(x: ConeFace, y: ConeFace) -> ConeFace | None:
    """Product of two faces of a cone factor.

    The apex is the greatest vertex of the factor, so a coned face only
    multiplies the bare apex from the right; two plain faces multiply when
    the first ends where the second begins.  The result inherits the coning
    of the right factor.
    """
    (f, e), (g, e2) = x, y
    if e == 1:
        if not g and e2 == 1:
            return (f, 1)
        return None
    if not g or f[-1] != g[0]:
        return None
    return (tuple(sorted(set(f) | set(g))), e2)


def local_element_cup(
    x: LocalElement, y: LocalElement
) -> tuple[int, LocalElement] | None:
    """Factorwise product of two local basis elements, with the sign of
    moving each right-hand factor past the later left-hand factors."""
    if len(x) != len(y):
        raise ValueError("elements live over different decompositions")
    factors: list[ConeFace] = []
    for xf, yf in zip(x, y):
        z = cone_face_cup(xf, yf)
        if z is None:
            return None
        factors.append(z)
    xdims = [cone_face_dim(f, e) for f, e in x]
    exponent = 0
    for i, (g, e2) in enumerate(y):
        if cone_face_dim(g, e2) % 2:
            exponent += sum(xdims[i + 1 :])
    sign = -1 if exponent % 2 else 1
    return sign, tuple(factors)


def class_cup(
    K: FilteredComplex, a: ClassLabel, b: ClassLabel
) -> tuple[int, ClassLabel] | None:
    """Product of two compatibility classes.

    Zero unless the carriers span a simplex of the complex; otherwise the
    factorwise product of the class elements, which comes out the same over
    every regular simplex containing both carriers.
    """
    union = tuple(sorted(set(a[0]) | set(b[0])))
    if union not in K:
        return None
    got = local_element_cup(
        class_local_element(K, a), class_local_element(K, b)
    )
    if got is None:
        return None
    sign, elem = got
    return sign, element_class(elem)


def global_cup_vector(
    G: GlobalBlownUpComplex,
    ka: int,
    va: Sequence[int],
    kb: int,
    vb: Sequence[int],
) -> list[int]:
    """Product of two global blown-up cochains in class coordinates."""
    out = [0] * G.dim(ka + kb)
    la = G.labels(ka)
    lb = G.labels(kb)
    for i, ca in enumerate(va):
        if not ca:
            continue
        for j, cb in enumerate(vb):
            if not cb:
                continue
            got = class_cup(G.K, la[i], lb[j])
            if got is None:
                continue
            sign, lab = got
            out[G.label_index(ka + kb, lab)] += sign * ca * cb
    return out


def blown_up_unit(G: GlobalBlownUpComplex) -> list[int]:
    """The degree-zero cochain with every class coefficient one.  Over each
    regular simplex it restricts to the tensor product of the factor units,
    so it is a two-sided unit and a cocycle."""
    return [1] * G.dim(0)


# -- the blow-up of a face indicator ------------------------------------------


def simplicial_cochain_basis(parts: Sequence[tuple]) -> list[Simplex]:
    """All nonempty faces of the closed simplex with the given parts,
    ordered by (dimension, vertex tuple)."""
    allv = tuple(sorted(v for p in parts for v in p))
    out = []
    for r in range(1, len(allv) + 1):
        out.extend(itertools.combinations(allv, r))
    return sorted(out, key=lambda s: (len(s), s))


def pi_star_local(
    parts: Sequence[tuple], face: Simplex
) -> list[tuple[int, LocalElement]]:
    """Pullback of the indicator cochain of a face along the blow-up
    projection of a closed regular simplex.

    With k the top level the face meets, the pullback cones the face parts
    below k, leaves the part at k unconed, and spreads over every choice of
    degree-zero face (a vertex or an apex) in the factors above k.

    With the apex listed as the greatest vertex of each factor, the only
    shuffle of the factor chains that projects to a nondegenerate simplex
    is the inversion-free one, so every coefficient is plus one; any other
    apex convention would put a Koszul sign here.
    """
    parts = [tuple(sorted(p)) for p in parts]
    n = len(parts) - 1
    level_of = {}
    for i, p in enumerate(parts):
        for v in p:
            level_of[v] = i
    fparts: list[tuple] = [() for _ in range(n + 1)]
    for v in face:
        fparts[level_of[v]] = tuple(sorted(fparts[level_of[v]] + (v,)))
    k = max(i for i in range(n + 1) if fparts[i])

    head: list[ConeFace] = []
    for j in range(k):
        head.append((fparts[j], 1))
    head.append((fparts[k], 0))

    tail_choices: list[list[ConeFace]] = []
    for j in range(k + 1, n + 1):
        opts: list[ConeFace] = []
        if j < n:
            opts.append(((), 1))
        opts.extend(((v,), 0) for v in parts[j])
        tail_choices.append(opts)

    out = []
    for tail in itertools.product(*tail_choices):
        out.append((1, tuple(head) + tail))
    return out


def pi_star_global_vector(
    K: FilteredComplex, G: GlobalBlownUpComplex, face: Simplex
) -> tuple[int, list[int]]:
    """Pullback of a face indicator over the whole complex, in class
    coordinates.

    The head is the coned face itself; the tail choices run over the
    complex, a joinable vertex of the right level or the bare apex, and
    only completions reaching a regular simplex contribute.  Restricted to
    any regular simplex this reproduces the local pullback.
    """
    require_full(K)
    f = as_simplex(face)
    n = K.n
    k = K.level(f)
    degree = len(f) - 1
    vec = [0] * G.dim(degree)
    head_eps = [1] * n
    if k < n:
        head_eps[k] = 0

    by_level: dict[int, list[int]] = {}
    for v in K.vertices():
        by_level.setdefault(K.vertex_level(v), []).append(v)

    def extend(level: int, carrier: Simplex, eps: tuple[int, ...]) -> None:
        if level == n:
            for v in by_level.get(n, []):
                if v in carrier:
                    continue
                cand = tuple(sorted(carrier + (v,)))
                if cand in K:
                    vec[G.label_index(degree, (cand, eps))] += 1
            return
        extend(level + 1, carrier, eps + (1,))
        for v in by_level.get(level, []):
            if v in carrier:
                continue
            cand = tuple(sorted(carrier + (v,)))
            if cand in K:
                extend(level + 1, cand, eps + (0,))

    if k == n:
        vec[G.label_index(degree, (f, tuple(head_eps)))] += 1
    else:
        extend(k + 1, f, tuple(head_eps[: k + 1]))
    return degree, vec


def pi_star_matrices(
    K: FilteredComplex, target: BlownUpIntersectionComplex
) -> dict[int, Matrix]:
    """Per degree, the pullbacks of the plain cochain basis written in the
    coordinates of the target's intersection lattice; the exact solve
    certifies that every image lies in the lattice."""
    require_full(K)
    G = target.ambient
    top = K.dim().finite_value()
    out: dict[int, Matrix] = {}
    for k in range(top + 1):
        faces = K.simplices_of_dim(k)
        columns = []
        for f in faces:
            deg, vec = pi_star_global_vector(K, G, f)
            if deg != k:
                raise AssertionError("pullback changed the degree")
            columns.append(vec)
        ambient = [
            [columns[j][r] for j in range(len(faces))]
            for r in range(G.dim(k))
        ]
        lat = target.lattice_in_ambient(k)
        cols_lat = len(lat[0]) if lat else 0
        if cols_lat == 0:
            if any(x for row in ambient for x in row):
                raise AssertionError(
                    "pullback misses the intersection lattice in degree "
                    f"{k}"
                )
            out[k] = zeros(0, len(faces))
        else:
            out[k] = solve_exact(lat, ambient)
    return out


def pi_star_cochain_map_check(
    K: FilteredComplex, target: BlownUpIntersectionComplex
) -> bool:
    """Exact matrix identity: the pullback intertwines the ordered
    coboundary with the lattice coboundary in every degree."""
    N = OrderedCochainComplex(K)
    mats = pi_star_matrices(K, target)
    lattice = target.as_complex()
    top = K.dim().finite_value()
    for k in range(top):
        left = mat_mul(mats[k + 1], N.coboundary_matrix(k))
        right = mat_mul(lattice.differential(k), mats[k])
        if left != right:
            return False
    return True


# -- exhaustive verification on decomposed simplices ---------------------------


@dataclass(frozen=True)
class BlowUpMapReport:
    """Verdicts for one decomposed simplex: per-degree squareness and
    determinant of the blow-up map in lattice coordinates, the cochain-map
    identity, and preservation of the product on all basis pairs."""

    parts: tuple
    degrees: tuple[tuple[int, int, int, int], ...]  # (k, faces, lattice, det)
    cochain_map: bool
    cup_preserved: bool

    @property
    def bijective(self) -> bool:
        return all(f == r and abs(d) == 1 for _, f, r, d in self.degrees)

    @property
    def ok(self) -> bool:
        return self.bijective and self.cochain_map and self.cup_preserved


def enumerate_decompositions(
    max_vertices: int, max_n: int
) -> list[tuple[tuple, ...]]:
    """Every level-part layout with at most the given number of vertices,
    virtual dimension at most max_n, and a nonempty regular part.  Vertices
    are numbered consecutively through the parts."""
    out = []
    for n in range(max_n + 1):
        for total in range(1, max_vertices + 1):
            for cuts in itertools.product(range(total + 1), repeat=n):
                sizes = list(cuts) + [total - sum(cuts)]
                if sizes[-1] < 1:
                    continue
                parts = []
                v = 0
                for size in sizes:
                    parts.append(tuple(range(v, v + size)))
                    v += size
                out.append(tuple(parts))
    return out


def verify_blow_up_map(parts: Sequence[tuple]) -> BlowUpMapReport:
    """Run every local check on one decomposed simplex: bijectivity onto
    the zero-perversity lattice degree by degree, the cochain-map identity,
    and multiplicativity on all pairs of face indicators."""
    Delta = decomposed_simplex_complex(parts)
    target = BlownUpIntersectionComplex(Delta, zero_perversity())
    G = target.ambient
    mats = pi_star_matrices(Delta, target)

    degrees = []
    for k, m in sorted(mats.items()):
        faces = len(Delta.simplices_of_dim(k))
        rows = len(m)
        det = determinant(m) if rows == faces and rows > 0 else 0
        if rows == 0 and faces == 0:
            det = 1
        degrees.append((k, faces, rows, det))

    commutes = pi_star_cochain_map_check(Delta, target)

    N = OrderedCochainComplex(Delta)
    top = Delta.dim().finite_value()
    pulled = {
        f: pi_star_global_vector(Delta, G, f)[1] for f in Delta.simplices
    }
    cup_ok = True
    for ka in range(top + 1):
        for kb in range(top + 1):
            for fa in N.basis(ka):
                va = pulled[fa]
                for fb in N.basis(kb):
                    rhs = global_cup_vector(G, ka, va, kb, pulled[fb])
                    union = N.basis_cup(fa, fb)
                    lhs = (
                        pulled[union]
                        if union is not None
                        else [0] * G.dim(ka + kb)
                    )
                    if lhs != rhs:
                        cup_ok = False
    return BlowUpMapReport(
        parts=tuple(tuple(p) for p in parts),
        degrees=tuple(degrees),
        cochain_map=commutes,
        cup_preserved=cup_ok,
    )
