"""Independent reference implementations used to validate the package.

Everything in this file is written from the definitions, in the most
straightforward way available, and shares no code with the package: dense
Fraction elimination for ranks, determinantal divisors or textbook
elementary reduction for Smith normal form, the per-stratum allowability
inequality spelled out literally, and a union-find count of blown-up
compatibility classes.  Slow on purpose; only ever run on small inputs.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from math import gcd


# -- dense rational linear algebra --------------------------------------------


def frac_rank(rows) -> int:
    """Rank over the rationals by plain Gaussian elimination."""
    m = [[Fraction(x) for x in row] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        pivot = next(
            (r for r in range(rank, len(m)) if m[r][col] != 0), None
        )
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = 1 / m[rank][col]
        m[rank] = [x * inv for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col] != 0:
                factor = m[r][col]
                m[r] = [a - factor * b for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


def mod_p_rank(rows, p: int) -> int:
    m = [[x % p for x in row] for row in rows]
    rank = 0
    cols = len(m[0]) if m else 0
    for col in range(cols):
        pivot = next(
            (r for r in range(rank, len(m)) if m[r][col] % p), None
        )
        if pivot is None:
            continue
        m[rank], m[pivot] = m[pivot], m[rank]
        inv = pow(m[rank][col], p - 2, p)
        m[rank] = [x * inv % p for x in m[rank]]
        for r in range(len(m)):
            if r != rank and m[r][col]:
                factor = m[r][col]
                m[r] = [(a - factor * b) % p for a, b in zip(m[r], m[rank])]
        rank += 1
    return rank


# -- Smith normal form, two unrelated ways -------------------------------------


def snf_by_minors(rows) -> list[int]:
    """Diagonal of the Smith form from determinantal divisors.

    The k-th divisor d_k is the gcd of all k-by-k minors; the invariant
    factors are the successive quotients.  Exponential, so callers keep
    the matrices tiny, but there is no reduction step to get wrong.
    """
    nrows = len(rows)
    ncols = len(rows[0]) if rows else 0
    out = []
    previous = 1
    for k in range(1, min(nrows, ncols) + 1):
        divisor = 0
        for rset in combinations(range(nrows), k):
            for cset in combinations(range(ncols), k):
                divisor = gcd(divisor, _det([
                    [rows[r][c] for c in cset] for r in rset
                ]))
        if divisor == 0:
            break
        out.append(divisor // previous)
        previous = divisor
    return out


def _det(m) -> int:
    if len(m) == 1:
        return m[0][0]
    total = 0
    for j, head in enumerate(m[0]):
        if head:
            minor = [row[:j] + row[j + 1:] for row in m[1:]]
            total += (-1) ** j * head * _det(minor)
    return total


def snf_by_reduction(rows) -> list[int]:
    """Diagonal of the Smith form by elementary row/column operations,
    the way it is done on paper: move a smallest nonzero entry to the
    corner, clear its row and column, fix divisibility, recurse."""
    m = [list(row) for row in rows]
    out = []
    top = 0
    while True:
        entries = [
            (abs(m[r][c]), r, c)
            for r in range(top, len(m))
            for c in range(top, len(m[0]) if m else 0)
            if m[r][c]
        ]
        if not entries:
            break
        _, pr, pc = min(entries)
        m[top], m[pr] = m[pr], m[top]
        for row in m:
            row[top], row[pc] = row[pc], row[top]
        dirty = False
        for r in range(top + 1, len(m)):
            q = m[r][top] // m[top][top]
            if q:
                m[r] = [a - q * b for a, b in zip(m[r], m[top])]
            dirty = dirty or m[r][top] != 0
        for c in range(top + 1, len(m[0])):
            q = m[top][c] // m[top][top]
            if q:
                for row in m:
                    row[c] -= q * row[top]
            dirty = dirty or m[top][c] != 0
        if dirty:
            continue
        pivot = m[top][top]
        bad = next(
            (
                (r, c)
                for r in range(top + 1, len(m))
                for c in range(top + 1, len(m[0]))
                if m[r][c] % pivot
            ),
            None,
        )
        if bad is not None:
            m[top] = [a + b for a, b in zip(m[top], m[bad[0]])]
            continue
        out.append(abs(pivot))
        top += 1
    return out


def kernel_basis(rows) -> list[list[int]]:
    """A lattice basis of the integer kernel.

    Runs integer row reduction on [M^T | I]: rows of the identity tag
    each row of M^T with the combination that produced it, and the tags
    of the zero rows form a basis of the kernel.  The reduction uses only
    invertible integer row operations, so the result is a genuine basis.
    """
    ncols = len(rows[0]) if rows else 0
    work = [
        [rows[r][c] for r in range(len(rows))]
        + [1 if i == c else 0 for i in range(ncols)]
        for c in range(ncols)
    ]
    width = len(rows)
    pivot_row = 0
    for col in range(width):
        while True:
            live = [
                r for r in range(pivot_row, len(work)) if work[r][col]
            ]
            if not live:
                break
            best = min(live, key=lambda r: abs(work[r][col]))
            work[pivot_row], work[best] = work[best], work[pivot_row]
            done = True
            for r in range(pivot_row + 1, len(work)):
                q = work[r][col] // work[pivot_row][col]
                if q:
                    work[r] = [
                        a - q * b for a, b in zip(work[r], work[pivot_row])
                    ]
                if work[r][col]:
                    done = False
            if done:
                break
        if any(work[r][col] for r in range(pivot_row, len(work))):
            pivot_row += 1
    return [
        row[width:]
        for row in work
        if not any(row[:width])
    ]


# -- simplicial homology from scratch ------------------------------------------


def closure(facets) -> list[tuple[int, ...]]:
    out = set()
    for facet in facets:
        vs = tuple(sorted(facet))
        for k in range(1, len(vs) + 1):
            out.update(combinations(vs, k))
    return sorted(out, key=lambda s: (len(s), s))


def boundary_matrix_for(k_simplices, faces) -> list[list[int]]:
    index = {s: i for i, s in enumerate(faces)}
    matrix = [[0] * len(k_simplices) for _ in faces]
    for j, s in enumerate(k_simplices):
        for i in range(len(s)):
            face = s[:i] + s[i + 1:]
            matrix[index[face]][j] += (-1) ** i
    return matrix


def homology_of_matrices(dims: dict, diffs: dict, p: int | None = None):
    """Rank and torsion of H_k for a chain complex given by matrices.

    ``diffs[k]`` takes degree k to degree k-1.  Over a prime p only ranks
    make sense and torsion comes back empty.
    """
    out = {}
    for k, dim in dims.items():
        below = diffs.get(k, [[0] * dim for _ in range(0)])
        above = diffs.get(k + 1)
        if p is None:
            rank_below = frac_rank(below) if below else 0
            rank_above = frac_rank(above) if above else 0
            torsion = tuple(
                d for d in (snf_by_reduction(above) if above else [])
                if d > 1
            )
        else:
            rank_below = mod_p_rank(below, p) if below else 0
            rank_above = mod_p_rank(above, p) if above else 0
            torsion = ()
        out[k] = (dim - rank_below - rank_above, torsion)
    return out


def simplicial_homology(facets, p: int | None = None):
    simplices = closure(facets)
    by_dim: dict[int, list] = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(s)
    top = max(by_dim)
    dims = {k: len(by_dim.get(k, [])) for k in range(top + 1)}
    diffs = {
        k: boundary_matrix_for(by_dim[k], by_dim[k - 1])
        for k in range(1, top + 1)
        if by_dim.get(k)
    }
    return homology_of_matrices(dims, diffs, p)


# -- intersection homology from the stratum inequality --------------------------


def vertex_levels(K) -> dict[int, int]:
    return {s[0]: K.level(s) for s in K.simplices if len(s) == 1}


def stratum_data(K) -> list[tuple[int, frozenset, int]]:
    """Strata as (level, vertex set, codim) computed by a fresh component
    search: level-i simplices are adjacent when one is a face of the
    other.  The vertex set keeps only vertices whose own level is i: a
    simplex can reach down into deeper levels, but those vertices belong
    to the deeper strata."""
    levels = vertex_levels(K)
    by_level: dict[int, list] = {}
    for s in K.simplices:
        by_level.setdefault(K.level(s), []).append(s)
    out = []
    for level, members in sorted(by_level.items()):
        remaining = set(members)
        while remaining:
            seed = remaining.pop()
            component = {seed}
            frontier = [seed]
            while frontier:
                s = frontier.pop()
                for t in list(remaining):
                    if set(s) <= set(t) or set(t) <= set(s):
                        remaining.discard(t)
                        component.add(t)
                        frontier.append(t)
            vertices = frozenset(
                v
                for s in component
                for v in s
                if levels[v] == level
            )
            out.append((level, vertices, K.n - level))
    return out


def is_allowable(s, strata, levels, values) -> bool:
    """The perversity inequality checked stratum by stratum.

    dim(s cap K_level) <= dim s - codim + value for every singular stratum
    the simplex meets.  Meeting is read off from vertex membership; the
    measured intersection is with the closed sublevel set, which for these
    complexes is the span of the vertices of index at most the stratum's
    level.  A missed stratum passes vacuously.
    """
    dim_s = len(s) - 1
    for level, vertices, codim in strata:
        if codim == 0:
            continue
        if not any(levels[v] == level and v in vertices for v in s):
            continue
        front = sum(1 for v in s if levels[v] <= level)
        bound = dim_s - codim + values[vertices]
        if front - 1 > bound:
            return False
    return True


def intersection_homology_ranks(
    K, values: dict[frozenset, object], p: int | None = None
):
    """Intersection homology by the book: allowable simplices span A_k,
    the chains with allowable boundary are the integer kernel of the
    boundary composed with projection off A_{k-1}, and the homology of
    the resulting complex is computed by elimination.

    ``values`` maps each singular stratum's vertex set to its perversity
    value.  Returns {degree: (rank, torsion)}.
    """
    simplices = sorted(K.simplices, key=lambda s: (len(s), s))
    by_dim: dict[int, list] = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(s)
    top = max(by_dim)

    strata = stratum_data(K)
    levels = vertex_levels(K)
    allowed = {
        k: [
            s for s in by_dim.get(k, [])
            if is_allowable(s, strata, levels, values)
        ]
        for k in range(top + 1)
    }

    # Basis of {x in ZA_k : boundary(x) in ZA_{k-1}} for each degree.
    lattice: dict[int, list[list[int]]] = {}
    for k in range(top + 1):
        cols = allowed[k]
        if not cols:
            lattice[k] = []
            continue
        if k == 0:
            lattice[k] = [
                [1 if i == j else 0 for j in range(len(cols))]
                for i in range(len(cols))
            ]
            continue
        banned = [
            s for s in by_dim.get(k - 1, [])
            if not is_allowable(s, strata, levels, values)
        ]
        if banned:
            bad_part = boundary_matrix_for(cols, by_dim[k - 1])
            keep = {
                i for i, s in enumerate(by_dim[k - 1]) if s in set(banned)
            }
            bad_rows = [
                row for i, row in enumerate(bad_part) if i in keep
            ]
            lattice[k] = kernel_basis(bad_rows)
        else:
            lattice[k] = [
                [1 if i == j else 0 for j in range(len(cols))]
                for i in range(len(cols))
            ]

    # Express the boundary of each lattice generator in the lattice basis
    # one degree down, by rational solving (the solution is integral since
    # the lower lattice is saturated in its ambient chain group).
    dims = {k: len(lattice[k]) for k in range(top + 1)}
    diffs = {}
    for k in range(1, top + 1):
        if not lattice[k] or not allowed[k]:
            continue
        full = boundary_matrix_for(allowed[k], by_dim[k - 1])
        images = []
        for gen in lattice[k]:
            img = [
                sum(row[j] * gen[j] for j in range(len(gen)))
                for row in full
            ]
            images.append(img)
        target_in_chains = []
        for gen in lattice[k - 1]:
            vec = [0] * len(by_dim[k - 1])
            for j, coeff in enumerate(gen):
                s = allowed[k - 1][j]
                vec[by_dim[k - 1].index(s)] = coeff
            target_in_chains.append(vec)
        diffs[k] = _solve_columns(target_in_chains, images)
    return homology_of_matrices(dims, diffs, p)


def _solve_columns(basis_rows, images) -> list[list[int]]:
    """Write each image vector as an integer combination of the basis
    rows; returns the coefficient matrix with one column per image."""
    if not basis_rows:
        assert all(not any(img) for img in images)
        return []
    width = len(basis_rows[0])
    out = [[0] * len(images) for _ in basis_rows]
    for col, img in enumerate(images):
        work = [
            [Fraction(basis_rows[r][c]) for r in range(len(basis_rows))]
            + [Fraction(img[c])]
            for c in range(width)
        ]
        pivots = []
        rank = 0
        for j in range(len(basis_rows)):
            pivot = next(
                (r for r in range(rank, len(work)) if work[r][j] != 0),
                None,
            )
            if pivot is None:
                continue
            work[rank], work[pivot] = work[pivot], work[rank]
            inv = 1 / work[rank][j]
            work[rank] = [x * inv for x in work[rank]]
            for r in range(len(work)):
                if r != rank and work[r][j] != 0:
                    f = work[r][j]
                    work[r] = [a - f * b for a, b in zip(work[r], work[rank])]
            pivots.append(j)
            rank += 1
        for r in range(rank, len(work)):
            assert work[r][-1] == 0, "image outside the lattice"
        for r, j in enumerate(pivots):
            value = work[r][-1]
            assert value.denominator == 1, "non-integral coefficient"
            out[j][col] = int(value)
    return out


# -- blown-up class count by union-find -----------------------------------------


class UnionFind:
    def __init__(self):
        self.parent = {}

    def find(self, x):
        root = x
        while self.parent.setdefault(root, root) != root:
            root = self.parent[root]
        while self.parent[x] != root:
            self.parent[x], x = root, self.parent[x]
        return root

    def union(self, a, b):
        self.parent[self.find(a)] = self.find(b)


def local_elements(parts):
    """Tensor basis of the blown-up cochains of one decomposed simplex.

    Cone factors contribute pairs (face, apex flag) where the face may be
    empty only under the flag; the last factor contributes its nonempty
    faces.  Yields (faces, flags, degree).
    """
    n = len(parts) - 1
    factor_choices = []
    for i in range(n):
        part = tuple(parts[i])
        choices = [((), 1)]
        for r in range(1, len(part) + 1):
            for face in combinations(part, r):
                choices.append((face, 0))
                choices.append((face, 1))
        factor_choices.append(choices)
    last = tuple(parts[n])
    last_choices = [
        face
        for r in range(1, len(last) + 1)
        for face in combinations(last, r)
    ]
    out = []

    def expand(i, faces, flags, degree):
        if i == n:
            for face in last_choices:
                out.append(
                    (faces + (face,), flags, degree + len(face) - 1)
                )
            return
        for face, flag in factor_choices[i]:
            expand(
                i + 1,
                faces + (face,),
                flags + (flag,),
                degree + len(face) - 1 + flag,
            )

    expand(0, (), (), 0)
    return out


def blown_up_class_counts(K) -> dict[int, int]:
    """Number of compatibility classes per degree, counted by gluing
    local tensor basis elements along inclusions of regular simplices.

    A local element restricts to the same-named element of any regular
    face that still contains all its face vertices, so two elements are
    identified exactly when connected by such hops.  The count of
    union-find components per degree is then compared against the
    package's class basis.
    """
    levels = vertex_levels(K)
    regular = [s for s in K.simplices if K.level(s) == K.n]

    def split(s):
        parts = tuple(
            tuple(v for v in s if levels[v] == i) for i in range(K.n + 1)
        )
        return parts

    uf = UnionFind()
    degree_of = {}
    for s in regular:
        for faces, flags, degree in local_elements(split(s)):
            node = (s, faces, flags)
            degree_of[node] = degree
            uf.find(node)
            support = tuple(sorted(v for face in faces for v in face))
            for t in regular:
                if t == s or not set(support) <= set(t):
                    continue
                if set(t) <= set(s):
                    uf.union(node, (t, faces, flags))
    counts: dict[int, int] = {}
    seen = set()
    for node, degree in degree_of.items():
        root = uf.find(node)
        if root not in seen:
            seen.add(root)
            counts[degree] = counts.get(degree, 0) + 1
    return counts
