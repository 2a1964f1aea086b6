"""Filtered simplicial complexes and their combinatorial constructions.

A simplex is a strictly increasing tuple of integer vertex ids.  A filtered
complex is a finite simplicial complex together with a chain of subcomplexes
K_0 <= K_1 <= ... <= K_n; it is stored through the filtration index
f(sigma) = min{ i : sigma in K_i }, and K_i is recovered as
{ sigma : f(sigma) <= i }.  The formal (virtual) dimension n is part of the
data and may exceed the geometric dimension.

This module knows nothing about chains or cochains; it provides the
combinatorics everything else is built on: fullness and its vertex test,
barycentric subdivision, strata, complexity, clots, residual complexes,
links, joins, canonical decompositions and filtration-compatible vertex
orders.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .extint import NEG_INF, ExtInt

Simplex = tuple[int, ...]


class StructuralError(ValueError):
    """The input violates the filtered-complex format (face closure,
    monotonicity, level range, or simplex well-formedness)."""


class FullnessError(ValueError):
    """An operation that requires a full filtered complex got a non-full one."""


def as_simplex(vertices: Iterable[int]) -> Simplex:
    """Normalize an iterable of vertex ids to a simplex tuple."""
    try:
        s = tuple(sorted(int(v) for v in vertices))
    except (TypeError, ValueError) as exc:
        raise StructuralError(f"bad vertex list {vertices!r}") from exc
    if not s:
        raise StructuralError("a simplex needs at least one vertex")
    for a, b in zip(s, s[1:]):
        if a == b:
            raise StructuralError(f"repeated vertex in simplex {s}")
    if s[0] < 0:
        raise StructuralError(f"negative vertex id in simplex {s}")
    return s


def simplex_dim(s: Simplex) -> int:
    return len(s) - 1


def faces(s: Simplex) -> list[Simplex]:
    """All nonempty faces of ``s``, including ``s`` itself."""
    out = []
    for r in range(1, len(s) + 1):
        out.extend(itertools.combinations(s, r))
    return out


def proper_faces(s: Simplex) -> list[Simplex]:
    out = []
    for r in range(1, len(s)):
        out.extend(itertools.combinations(s, r))
    return out


def boundary_faces(s: Simplex) -> list[tuple[int, Simplex]]:
    """Signed codimension-one faces: (sign, face) with sign (-1)**i for the
    face dropping the vertex in position i of the increasing order."""
    if len(s) == 1:
        return []
    out = []
    sign = 1
    for i in range(len(s)):
        out.append((sign, s[:i] + s[i + 1 :]))
        sign = -sign
    return out


def facet_closure(facets: Iterable[Iterable[int]]) -> set[Simplex]:
    """Face closure of a family of simplices."""
    closed: set[Simplex] = set()
    for raw in facets:
        top = as_simplex(raw)
        for f in faces(top):
            closed.add(f)
    return closed


def join_simplices(a: Simplex, b: Simplex) -> Simplex:
    """Vertex-disjoint union of two simplices, as a simplex."""
    if set(a) & set(b):
        raise StructuralError(f"join of non-disjoint simplices {a}, {b}")
    return tuple(sorted(a + b))


@dataclass(frozen=True)
class Stratum:
    """A connected component of the level-i part of the filtration.

    Two simplices of filtration index i belong to the same stratum when they
    are linked by a chain of face relations staying at index i.  ``codim``
    is the virtual codimension n - i; the stratum is regular iff codim == 0.
    """

    level: int
    index: int
    codim: int
    simplices: frozenset
    regular: bool

    @property
    def key(self) -> tuple[int, int]:
        return (self.level, self.index)

    def min_simplex(self) -> Simplex:
        return min(self.simplices)

    def __repr__(self) -> str:
        kind = "regular" if self.regular else "singular"
        return (
            f"Stratum(level={self.level}, index={self.index}, "
            f"codim={self.codim}, size={len(self.simplices)}, {kind})"
        )


class FilteredComplex:
    """A finite simplicial complex with a filtration by subcomplexes.

    Instances are immutable; derived data (strata, fullness, vertex levels)
    is computed lazily and cached.
    """

    __slots__ = (
        "_f",
        "_n",
        "_sorted",
        "_by_dim",
        "_vlevel",
        "_strata",
        "_stratum_of",
        "_full",
    )

    def __init__(self, filtration: Mapping[Iterable[int], int], n: int):
        n = int(n)
        if n < 0:
            raise StructuralError(f"virtual dimension must be >= 0, got {n}")
        f: dict[Simplex, int] = {}
        for raw, lev in filtration.items():
            s = as_simplex(raw)
            lev = int(lev)
            if not 0 <= lev <= n:
                raise StructuralError(
                    f"filtration index {lev} of {s} outside 0..{n}"
                )
            f[s] = lev
        for s, lev in f.items():
            if len(s) == 1:
                continue
            for i in range(len(s)):
                t = s[:i] + s[i + 1 :]
                if t not in f:
                    raise StructuralError(f"missing face {t} of {s}")
                if f[t] > lev:
                    raise StructuralError(
                        f"filtration not monotone: f{t}={f[t]} > f{s}={lev}"
                    )
        self._f = f
        self._n = n
        self._sorted = tuple(sorted(f, key=lambda s: (len(s), s)))
        self._by_dim: dict[int, tuple[Simplex, ...]] | None = None
        self._vlevel: dict[int, int] | None = None
        self._strata: tuple[Stratum, ...] | None = None
        self._stratum_of: dict[Simplex, Stratum] | None = None
        self._full: bool | None = None

    # -- basic queries ---------------------------------------------------

    @property
    def n(self) -> int:
        """Virtual dimension of the filtration."""
        return self._n

    @property
    def simplices(self) -> tuple[Simplex, ...]:
        """All simplices, sorted by (dimension, vertex tuple)."""
        return self._sorted

    def __len__(self) -> int:
        return len(self._f)

    def __contains__(self, s: object) -> bool:
        return s in self._f

    def __iter__(self) -> Iterator[Simplex]:
        return iter(self._sorted)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, FilteredComplex):
            return NotImplemented
        return self._n == other._n and self._f == other._f

    def __repr__(self) -> str:
        return f"FilteredComplex(n={self._n}, simplices={len(self._f)})"

    @property
    def is_empty(self) -> bool:
        return not self._f

    def level(self, s: Iterable[int]) -> int:
        """Filtration index f(sigma)."""
        key = s if isinstance(s, tuple) else as_simplex(s)
        try:
            return self._f[key]
        except KeyError:
            raise KeyError(f"{key} is not a simplex of the complex") from None

    def vertex_level(self, v: int) -> int:
        if self._vlevel is None:
            self._vlevel = {
                s[0]: lev for s, lev in self._f.items() if len(s) == 1
            }
        return self._vlevel[v]

    def vertices(self) -> tuple[int, ...]:
        return tuple(s[0] for s in self._sorted if len(s) == 1)

    def dim(self) -> ExtInt:
        """Geometric dimension; -inf for the empty complex."""
        if not self._f:
            return NEG_INF
        return ExtInt(len(self._sorted[-1]) - 1)

    def simplices_of_dim(self, k: int) -> tuple[Simplex, ...]:
        if self._by_dim is None:
            by_dim: dict[int, list[Simplex]] = {}
            for s in self._sorted:
                by_dim.setdefault(len(s) - 1, []).append(s)
            self._by_dim = {d: tuple(v) for d, v in by_dim.items()}
        return self._by_dim.get(k, ())

    def filtration(self) -> dict[Simplex, int]:
        """A copy of the filtration index function."""
        return dict(self._f)

    # -- subcomplexes ----------------------------------------------------

    def sublevel(self, i: int) -> frozenset:
        """The subcomplex K_i as a set of simplices."""
        return frozenset(s for s, lev in self._f.items() if lev <= i)

    def restrict(self, subset: Iterable[Iterable[int]]) -> "FilteredComplex":
        """Subcomplex on the given simplices, with the induced filtration.

        The subset must be face closed; the virtual dimension is kept.
        """
        keep = {as_simplex(s) for s in subset}
        filt = {}
        for s in keep:
            if s not in self._f:
                raise StructuralError(f"{s} is not a simplex of the complex")
            filt[s] = self._f[s]
        return FilteredComplex(filt, self._n)

    def skeleton(self, k: int) -> "FilteredComplex":
        """The k-skeleton with the induced filtration (same virtual n)."""
        return self.restrict(s for s in self._sorted if len(s) - 1 <= k)

    @classmethod
    def trivial(
        cls, facets: Iterable[Iterable[int]], n: int | None = None
    ) -> "FilteredComplex":
        """Complex with the trivial filtration: K_{n-1} empty, K_n = K."""
        closed = facet_closure(facets)
        if not closed:
            return cls({}, 0 if n is None else n)
        if n is None:
            n = max(len(s) for s in closed) - 1
        return cls({s: n for s in closed}, n)

    # -- strata ----------------------------------------------------------

    def strata(self) -> tuple[Stratum, ...]:
        """All strata, sorted by (level, least simplex of the component)."""
        if self._strata is None:
            self._compute_strata()
        return self._strata  # type: ignore[return-value]

    def stratum_of(self, s: Iterable[int]) -> Stratum:
        if self._stratum_of is None:
            self._compute_strata()
        key = s if isinstance(s, tuple) else as_simplex(s)
        return self._stratum_of[key]  # type: ignore[index]

    def singular_strata(self) -> tuple[Stratum, ...]:
        return tuple(S for S in self.strata() if not S.regular)

    def _compute_strata(self) -> None:
        parent: dict[Simplex, Simplex] = {s: s for s in self._f}

        def find(x: Simplex) -> Simplex:
            root = x
            while parent[root] != root:
                root = parent[root]
            while parent[x] != root:
                parent[x], x = root, parent[x]
            return root

        for s, lev in self._f.items():
            if len(s) == 1:
                continue
            for i in range(len(s)):
                t = s[:i] + s[i + 1 :]
                if self._f[t] == lev:
                    ra, rb = find(s), find(t)
                    if ra != rb:
                        parent[ra] = rb
        components: dict[Simplex, list[Simplex]] = {}
        for s in self._f:
            components.setdefault(find(s), []).append(s)
        keyed = sorted(
            (self._f[root], min(members), members)
            for root, members in components.items()
        )
        strata: list[Stratum] = []
        index_at_level: dict[int, int] = {}
        lookup: dict[Simplex, Stratum] = {}
        for level, _, members in keyed:
            idx = index_at_level.get(level, 0)
            index_at_level[level] = idx + 1
            stratum = Stratum(
                level=level,
                index=idx,
                codim=self._n - level,
                simplices=frozenset(members),
                regular=(level == self._n),
            )
            strata.append(stratum)
            for m in members:
                lookup[m] = stratum
        self._strata = tuple(strata)
        self._stratum_of = lookup


# -- fullness and canonical decompositions -------------------------------


def is_full(K: FilteredComplex) -> bool:
    """Vertex test for fullness.

    K is full iff for every simplex and every level l, the vertices of the
    simplex lying in K_l either are absent or span a face that already
    belongs to K_l.  The test only needs to fire at the distinct vertex
    levels of each simplex.
    """
    if K._full is None:
        K._full = _fullness_scan(K)
    return K._full


def _fullness_scan(K: FilteredComplex) -> bool:
    for s in K.simplices:
        if len(s) == 1:
            continue
        vertex_levels = sorted({K.vertex_level(v) for v in s})
        for l in vertex_levels:
            w = tuple(v for v in s if K.vertex_level(v) <= l)
            if K.level(w) > l:
                return False
    return True


def require_full(K: FilteredComplex) -> None:
    if not is_full(K):
        raise FullnessError(
            "operation requires a full filtered complex; "
            "barycentric subdivision always produces one"
        )


def decompose(K: FilteredComplex, s: Iterable[int]) -> tuple[Simplex, ...]:
    """Canonical decomposition of a simplex of a full complex.

    Returns n+1 parts; part l collects the vertices of filtration index
    exactly l.  The join of parts 0..l is the intersection of the simplex
    with K_l.
    """
    require_full(K)
    key = s if isinstance(s, tuple) else as_simplex(s)
    if key not in K:
        raise KeyError(f"{key} is not a simplex of the complex")
    parts: list[list[int]] = [[] for _ in range(K.n + 1)]
    for v in key:
        parts[K.vertex_level(v)].append(v)
    return tuple(tuple(p) for p in parts)


def is_regular_simplex(K: FilteredComplex, s: Iterable[int]) -> bool:
    """True when the simplex meets a regular stratum (its top part is
    nonempty), i.e. its filtration index is n on the nose."""
    key = s if isinstance(s, tuple) else as_simplex(s)
    return K.level(key) == K.n and any(
        K.vertex_level(v) == K.n for v in key
    )


def meeting_strata(
    K: FilteredComplex, s: Iterable[int]
) -> list[tuple[int, Stratum]]:
    """The strata met by a simplex of a full complex, as (level, stratum).

    For each level l with a nonempty decomposition part, the stratum is the
    one containing the front face spanned by the vertices of index <= l.
    """
    parts = decompose(K, s)
    key = s if isinstance(s, tuple) else as_simplex(s)
    out = []
    prefix: list[int] = []
    for l, part in enumerate(parts):
        if not part:
            continue
        prefix.extend(part)
        front = tuple(sorted(prefix))
        out.append((l, K.stratum_of(front)))
    assert front == key
    return out


def perverse_degree_at_level(
    K: FilteredComplex, s: Iterable[int], l: int
) -> ExtInt:
    """Dimension of the intersection of the simplex with K_l.

    Computed from the canonical decomposition: the number of vertices of
    index <= l, minus one; -inf when there are none.
    """
    require_full(K)
    key = s if isinstance(s, tuple) else as_simplex(s)
    count = sum(1 for v in key if K.vertex_level(v) <= l)
    if count == 0:
        return NEG_INF
    return ExtInt(count - 1)


# -- barycentric subdivision ---------------------------------------------


def barycenter_table(K: FilteredComplex) -> tuple[Simplex, ...]:
    """Parent simplex of each barycenter vertex of the subdivision.

    Barycenter ids are positions in the lexicographic order of the parent
    simplices, which makes the subdivision reproducible.
    """
    return tuple(sorted(K.simplices))


def barycentric_subdivide(K: FilteredComplex) -> FilteredComplex:
    """First barycentric subdivision, filtered by the subdivided K_i.

    Vertices are the barycenters of the simplices of K; simplices are the
    chains of the strict face order; the filtration index of a chain is the
    index of its top simplex.  The result is always full.
    """
    parents = barycenter_table(K)
    vid = {s: i for i, s in enumerate(parents)}
    filt: dict[Simplex, int] = {}
    chains_at: dict[Simplex, list[tuple[int, ...]]] = {}
    for s in K.simplices:  # sorted by dimension, so faces come first
        mine: list[tuple[int, ...]] = [(vid[s],)]
        for t in proper_faces(s):
            for ch in chains_at[t]:
                mine.append(ch + (vid[s],))
        chains_at[s] = mine
        lev = K.level(s)
        for ch in mine:
            filt[tuple(sorted(ch))] = lev
    return FilteredComplex(filt, K.n)


# -- complexity, clots, residual complex ----------------------------------


def complexity(K: FilteredComplex) -> tuple[ExtInt, ExtInt]:
    """The pair (a, b): a is the largest k with K_{n-k} nonempty and b the
    geometric dimension of that lowest nonempty subcomplex.  The empty
    complex has complexity (-inf, -inf).  Compared lexicographically."""
    if K.is_empty:
        return (NEG_INF, NEG_INF)
    lowest = min(K.vertex_level(v) for v in K.vertices())
    a = K.n - lowest
    b = max(len(s) for s in K.simplices if K.level(s) <= lowest) - 1
    return (ExtInt(a), ExtInt(b))


def clots(K: FilteredComplex) -> tuple[Simplex, ...]:
    """The b-dimensional simplices of the lowest nonempty subcomplex."""
    if K.is_empty:
        raise ValueError("the empty complex has no clots")
    a, b = complexity(K)
    lowest = K.n - a.finite_value()
    bb = b.finite_value()
    return tuple(
        s
        for s in K.simplices
        if K.level(s) <= lowest and len(s) - 1 == bb
    )


def residual_complex(K: FilteredComplex) -> FilteredComplex:
    """Simplices whose intersection with the lowest nonempty subcomplex has
    dimension strictly below b, with the induced filtration.

    Removing the open stars of the clots strictly decreases complexity.
    """
    if K.is_empty:
        raise ValueError("the empty complex has no residual complex")
    a, b = complexity(K)
    lowest = K.n - a.finite_value()
    bb = b.finite_value()
    keep = []
    for s in K.simplices:
        low_vertices = tuple(
            v for v in s if K.vertex_level(v) <= lowest
        )
        best = -1
        for r in range(len(low_vertices), 0, -1):
            if r - 1 <= best:
                break
            for c in itertools.combinations(low_vertices, r):
                if K.level(c) <= lowest:
                    best = r - 1
                    break
        if best < bb:
            keep.append(s)
    return K.restrict(keep)


# -- links, stars, joins ---------------------------------------------------


def link(K: FilteredComplex, beta: Iterable[int]) -> FilteredComplex:
    """The link of a simplex, with the induced filtration."""
    b = as_simplex(beta)
    if b not in K:
        raise KeyError(f"{b} is not a simplex of the complex")
    bset = set(b)
    members = []
    for s in K.simplices:
        if bset & set(s):
            continue
        if tuple(sorted(b + s)) in K:
            members.append(s)
    return K.restrict(members)


def closed_star(K: FilteredComplex, beta: Iterable[int]) -> FilteredComplex:
    """The closed star of a simplex: all simplices joinable to it, with
    their faces.  With the induced filtration this is the join of the
    simplex with its link."""
    b = as_simplex(beta)
    if b not in K:
        raise KeyError(f"{b} is not a simplex of the complex")
    bset = set(b)
    members = set()
    for s in K.simplices:
        if tuple(sorted(bset | set(s))) in K:
            members.add(s)
    return K.restrict(members)


def join_complex(
    beta: Iterable[int],
    L: FilteredComplex,
    clot_level: int,
    n: int | None = None,
) -> FilteredComplex:
    """The join of a simplex with a filtered complex.

    The simplex sits at ``clot_level`` and a joined simplex beta'*sigma
    inherits the index of its link part: levels at or below clot_level are
    the faces of beta alone, levels above are the join of beta with the
    corresponding sublevel of L.  All levels of L must exceed clot_level.
    """
    b = as_simplex(beta)
    if n is None:
        if L.is_empty:
            raise ValueError("virtual dimension needed when the link is empty")
        n = L.n
    elif not L.is_empty and n != L.n:
        raise StructuralError("virtual dimension disagrees with the link")
    if not 0 <= clot_level <= n:
        raise StructuralError(f"clot level {clot_level} outside 0..{n}")
    if set(b) & set(L.vertices()):
        raise StructuralError("join requires disjoint vertex sets")
    if not L.is_empty:
        lowest = min(L.vertex_level(v) for v in L.vertices())
        if lowest <= clot_level:
            raise StructuralError(
                "link levels must lie strictly above the clot level"
            )
    filt: dict[Simplex, int] = {}
    beta_faces = faces(b)
    for a in beta_faces:
        filt[a] = clot_level
    for s in L.simplices:
        lev = L.level(s)
        filt[s] = lev
        for a in beta_faces:
            filt[tuple(sorted(a + s))] = lev
    return FilteredComplex(filt, n)


def clot_join(K: FilteredComplex, beta: Iterable[int]) -> FilteredComplex:
    """The join of a clot with its link, as a subcomplex of K.

    For a full complex this equals the closed star of the clot.
    """
    b = as_simplex(beta)
    if b not in clots(K):
        raise ValueError(f"{b} is not a clot of the complex")
    return closed_star(K, b)


# -- vertex orders ---------------------------------------------------------


class VertexOrder:
    """A linear order on the vertices, compatible with the filtration:
    if v <= w then every K_i containing w contains v."""

    __slots__ = ("_order", "_pos")

    def __init__(self, order: Sequence[int]):
        self._order = tuple(order)
        self._pos = {v: i for i, v in enumerate(self._order)}
        if len(self._pos) != len(self._order):
            raise ValueError("vertex order has repeats")

    @property
    def order(self) -> tuple[int, ...]:
        return self._order

    def position(self, v: int) -> int:
        return self._pos[v]

    def sort(self, vertices: Iterable[int]) -> tuple[int, ...]:
        return tuple(sorted(vertices, key=self._pos.__getitem__))

    def greatest(self, vertices: Iterable[int]) -> int:
        return max(vertices, key=self._pos.__getitem__)

    def __repr__(self) -> str:
        return f"VertexOrder({list(self._order)!r})"


def order_vertices(K: FilteredComplex) -> VertexOrder:
    """The canonical filtration-compatible order: by level, then by id."""
    return VertexOrder(
        sorted(K.vertices(), key=lambda v: (K.vertex_level(v), v))
    )


def satisfies_order_condition(K: FilteredComplex, order: VertexOrder) -> bool:
    """Check compatibility of an order with the filtration."""
    seq = order.order
    if set(seq) != set(K.vertices()):
        return False
    return all(
        K.vertex_level(a) <= K.vertex_level(b) for a, b in zip(seq, seq[1:])
    )


# -- boundary matrices ------------------------------------------------------


def boundary_matrix(
    simplices_k: Sequence[Simplex], simplices_km1: Sequence[Simplex]
) -> list[list[int]]:
    """Matrix of the simplicial boundary from the span of ``simplices_k``
    to the span of ``simplices_km1`` (rows), with the usual alternating
    signs on increasing vertex tuples."""
    index = {s: i for i, s in enumerate(simplices_km1)}
    rows = [[0] * len(simplices_k) for _ in simplices_km1]
    for j, s in enumerate(simplices_k):
        for sign, t in boundary_faces(s):
            i = index.get(t)
            if i is None:
                raise KeyError(f"boundary face {t} missing from codomain")
            rows[i][j] = sign
    return rows
