"""Exact linear algebra over the integers and prime fields.

Everything here is fraction-free: Smith normal form with transforms,
saturated integer kernels, echelonized column bases with exact coordinate
solving, and homology of a pair of consecutive integer matrices reported as
free rank plus invariant factors.  Matrices are dense lists of lists of
Python ints, which is plenty at the scales this package targets; the one
concession to size is a sparse unit-pivot sweep in front of the dense Smith
core.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

Matrix = list[list[int]]


def zeros(rows: int, cols: int) -> Matrix:
    return [[0] * cols for _ in range(rows)]


def identity(size: int) -> Matrix:
    m = zeros(size, size)
    for i in range(size):
        m[i][i] = 1
    return m


def mat_copy(m: Sequence[Sequence[int]]) -> Matrix:
    return [list(row) for row in m]


def mat_shape(m: Sequence[Sequence[int]]) -> tuple[int, int]:
    return (len(m), len(m[0]) if m else 0)


def mat_mul(a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]) -> Matrix:
    if not a:
        # A zero-row matrix is compatible with any left factor shape and
        # yields a zero-row product.
        return []
    ra, ca = mat_shape(a)
    rb, cb = mat_shape(b)
    if ca != rb:
        raise ValueError(f"shape mismatch {ra}x{ca} times {rb}x{cb}")
    # Boundary and lattice matrices are mostly zeros, so iterate over the
    # nonzero entries only.
    bnz = [[(j, y) for j, y in enumerate(brow) if y] for brow in b]
    out = zeros(ra, cb)
    for i in range(ra):
        row = a[i]
        orow = out[i]
        for k in range(ca):
            x = row[k]
            if not x:
                continue
            for j, y in bnz[k]:
                orow[j] += x * y
    return out


def mat_transpose(m: Sequence[Sequence[int]]) -> Matrix:
    if not m or not m[0]:
        rows, cols = mat_shape(m)
        return zeros(cols, rows)
    return [list(col) for col in zip(*m)]


def mat_vec(m: Sequence[Sequence[int]], v: Sequence[int]) -> list[int]:
    return [sum(row[k] * v[k] for k in range(len(v))) for row in m]


def is_zero_matrix(m: Sequence[Sequence[int]]) -> bool:
    return all(x == 0 for row in m for x in row)


# -- Smith normal form ------------------------------------------------------


@dataclass
class SmithForm:
    """S = U @ A @ V with U, V unimodular and S diagonal, the diagonal
    entries dividing in sequence."""

    S: Matrix
    U: Matrix
    V: Matrix
    invariants: list[int] = field(init=False)

    def __post_init__(self) -> None:
        r, c = mat_shape(self.S)
        self.invariants = [
            self.S[i][i] for i in range(min(r, c)) if self.S[i][i] != 0
        ]


def smith_normal_form(a: Sequence[Sequence[int]]) -> SmithForm:
    """Dense Smith normal form with both transforms."""
    s = mat_copy(a)
    rows, cols = mat_shape(s)
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        s[i], s[j] = s[j], s[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for row in s:
            row[i], row[j] = row[j], row[i]
        for row in v:
            row[i], row[j] = row[j], row[i]

    def add_row(src, dst, c):
        srow, drow = s[src], s[dst]
        for k in range(cols):
            drow[k] += c * srow[k]
        srow, drow = u[src], u[dst]
        for k in range(rows):
            drow[k] += c * srow[k]

    def add_col(src, dst, c):
        for row in s:
            row[dst] += c * row[src]
        for row in v:
            row[dst] += c * row[src]

    t = 0
    limit = min(rows, cols)
    while t < limit:
        # find a nonzero pivot of least magnitude in the trailing block
        pivot = None
        best = None
        for i in range(t, rows):
            row = s[i]
            for j in range(t, cols):
                x = row[j]
                if x != 0 and (best is None or abs(x) < best):
                    best = abs(x)
                    pivot = (i, j)
                    if best == 1:
                        break
            if best == 1:
                break
        if pivot is None:
            break
        pi, pj = pivot
        if pi != t:
            swap_rows(pi, t)
        if pj != t:
            swap_cols(pj, t)
        while True:
            p = s[t][t]
            dirty = False
            for i in range(t + 1, rows):
                if s[i][t]:
                    q = s[i][t] // p
                    if q:
                        add_row(t, i, -q)
                    if s[i][t]:
                        swap_rows(i, t)
                        dirty = True
                        p = s[t][t]
            for j in range(t + 1, cols):
                if s[t][j]:
                    q = s[t][j] // p
                    if q:
                        add_col(t, j, -q)
                    if s[t][j]:
                        swap_cols(j, t)
                        dirty = True
                        p = s[t][t]
            if not dirty:
                break
        # force divisibility of the rest of the block by the pivot
        p = s[t][t]
        offender = None
        for i in range(t + 1, rows):
            row = s[i]
            for j in range(t + 1, cols):
                if row[j] % p:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            add_row(offender, t, 1)
            continue
        if p < 0:
            for k in range(cols):
                s[t][k] = -s[t][k]
            for k in range(rows):
                u[t][k] = -u[t][k]
        t += 1
    return SmithForm(S=s, U=u, V=v)


def snf_diagonal(a: Sequence[Sequence[int]]) -> list[int]:
    """Invariant factors of an integer matrix, without transforms.

    A sparse sweep strips rows and columns hit by a unit pivot; whatever is
    left goes through the dense routine.  The units it removes are genuine
    invariant factors equal to 1, so they can be concatenated up front.
    """
    rows: dict[int, dict[int, int]] = {}
    for i, row in enumerate(a):
        entries = {j: x for j, x in enumerate(row) if x}
        if entries:
            rows[i] = entries
    col_of: dict[int, set[int]] = {}
    for i, entries in rows.items():
        for j in entries:
            col_of.setdefault(j, set()).add(i)

    units = 0
    while True:
        best = None
        best_cost = None
        for i, entries in rows.items():
            ri = len(entries)
            for j, x in entries.items():
                if abs(x) != 1:
                    continue
                cost = (ri - 1) * (len(col_of[j]) - 1)
                if best_cost is None or cost < best_cost:
                    best_cost = cost
                    best = (i, j)
                    if cost == 0:
                        break
            if best_cost == 0:
                break
        if best is None:
            break
        pi, pj = best
        pval = rows[pi][pj]
        prow = rows.pop(pi)
        for j in prow:
            col_of[j].discard(pi)
            if not col_of[j]:
                del col_of[j]
        targets = list(col_of.get(pj, ()))
        for i in targets:
            entries = rows[i]
            c = entries[pj] * pval  # pval in {1,-1}: divide by multiplying
            for j, x in prow.items():
                cur = entries.get(j, 0) - c * x
                if cur:
                    if j not in entries:
                        col_of.setdefault(j, set()).add(i)
                    entries[j] = cur
                elif j in entries:
                    del entries[j]
                    col_of[j].discard(i)
                    if not col_of[j]:
                        del col_of[j]
            if not entries:
                del rows[i]
        units += 1

    if not rows:
        return [1] * units
    live_rows = sorted(rows)
    live_cols = sorted({j for entries in rows.values() for j in entries})
    cpos = {j: k for k, j in enumerate(live_cols)}
    core = zeros(len(live_rows), len(live_cols))
    for k, i in enumerate(live_rows):
        for j, x in rows[i].items():
            core[k][cpos[j]] = x
    rest = smith_normal_form(core).invariants
    return [1] * units + rest


def rank(a: Sequence[Sequence[int]]) -> int:
    return len(snf_diagonal(a))


# -- kernels, images, solving ------------------------------------------------


def integer_kernel_basis(a: Sequence[Sequence[int]]) -> Matrix:
    """Columns forming a basis of the integer kernel of A.

    Column-reduces A while carrying the column transform; the transform
    columns over the zero columns of the reduction are the kernel.  The
    result is a saturated lattice: any integer vector in the rational
    kernel is an integer combination of these columns.
    """
    rows, cols = mat_shape(a)
    if cols == 0:
        return []
    work = mat_copy(a)
    v = identity(cols)

    def col(m: Matrix, j: int) -> list[int]:
        return [m[i][j] for i in range(len(m))]

    pivot_row = 0
    j0 = 0
    while pivot_row < rows and j0 < cols:
        # find the column minimizing |entry| in this row among j >= j0
        candidates = [
            (abs(work[pivot_row][j]), j)
            for j in range(j0, cols)
            if work[pivot_row][j] != 0
        ]
        if not candidates:
            pivot_row += 1
            continue
        while True:
            candidates.sort()
            _, pj = candidates[0]
            p = work[pivot_row][pj]
            done = True
            nxt = []
            for mag, j in candidates:
                if j == pj:
                    continue
                q = work[pivot_row][j] // p
                if q:
                    for i in range(rows):
                        work[i][j] -= q * work[i][pj]
                    for i in range(cols):
                        v[i][j] -= q * v[i][pj]
                r = work[pivot_row][j]
                if r:
                    done = False
                    nxt.append((abs(r), j))
            if done:
                break
            candidates = nxt + [(abs(p), pj)]
        if pj != j0:
            for i in range(rows):
                work[i][pj], work[i][j0] = work[i][j0], work[i][pj]
            for i in range(cols):
                v[i][pj], v[i][j0] = v[i][j0], v[i][pj]
        j0 += 1
        pivot_row += 1
    kernel_cols = [
        j for j in range(cols) if all(work[i][j] == 0 for i in range(rows))
    ]
    return [[v[i][j] for j in kernel_cols] for i in range(cols)]


def _solve_via_smith(
    a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]
) -> Matrix:
    """Integer solving through the Smith form: with S = U A V the system
    becomes S y = U b, solvable integrally iff each invariant divides its
    coordinate and the coordinates past the rank vanish."""
    rows, cols = mat_shape(a)
    _, bcols = mat_shape(b)
    form = smith_normal_form(a)
    ub = mat_mul(form.U, b)
    r = len(form.invariants)
    y = zeros(cols, bcols)
    for j in range(bcols):
        for i in range(rows):
            val = ub[i][j]
            if i < r:
                if val % form.invariants[i]:
                    raise ValueError("no integer solution")
                y[i][j] = val // form.invariants[i]
            elif val:
                raise ValueError("inconsistent system")
    return mat_mul(form.V, y)


def solve_exact(
    a: Sequence[Sequence[int]], b: Sequence[Sequence[int]]
) -> Matrix:
    """Solve A X = B exactly over the rationals, requiring an integer
    solution to exist columnwise; raises ValueError otherwise.

    Gauss-Jordan on sparse rows of Fractions.  The lattice bases this gets
    called with are near-echelon already, so fill-in stays small and the
    cost tracks the number of nonzero entries rather than the dense shape.
    When the columns are dependent a fractional pivot solution does not
    rule out an integer one elsewhere in the affine space, so that case
    falls back to the Smith form.
    """
    rows, cols = mat_shape(a)
    brows, bcols = mat_shape(b)
    if brows != rows:
        raise ValueError("right-hand side has the wrong number of rows")
    aug: list[dict[int, Fraction]] = []
    for i in range(rows):
        d: dict[int, Fraction] = {}
        arow = a[i]
        for j in range(cols):
            x = arow[j]
            if x:
                d[j] = Fraction(x)
        brow = b[i]
        for j in range(bcols):
            y = brow[j]
            if y:
                d[cols + j] = Fraction(y)
        aug.append(d)
    pivots: list[tuple[int, int]] = []
    pivot_rows: set[int] = set()
    for c in range(cols):
        sel = None
        for i in range(rows):
            if i not in pivot_rows and aug[i].get(c):
                sel = i
                break
        if sel is None:
            continue
        prow = aug[sel]
        pv = prow[c]
        if pv != 1:
            for j in list(prow):
                prow[j] /= pv
        items = list(prow.items())
        for i in range(rows):
            if i == sel:
                continue
            row = aug[i]
            f = row.get(c)
            if not f:
                continue
            for j, y in items:
                val = row.get(j, 0) - f * y
                if val:
                    row[j] = val
                else:
                    row.pop(j, None)
        pivots.append((sel, c))
        pivot_rows.add(sel)
    # After full elimination a non-pivot row is supported on the right-hand
    # block only; any residue there means the system has no solution.
    for i in range(rows):
        if i not in pivot_rows and aug[i]:
            raise ValueError("inconsistent system")
    out = zeros(cols, bcols)
    for sel, c in pivots:
        orow = out[c]
        for j, y in aug[sel].items():
            if j >= cols:
                if y.denominator != 1:
                    if len(pivots) < cols:
                        return _solve_via_smith(a, b)
                    raise ValueError("no integer solution")
                orow[j - cols] = int(y)
    return out


def determinant(a: Sequence[Sequence[int]]) -> int:
    """Bareiss fraction-free determinant of a square integer matrix."""
    n = len(a)
    if any(len(row) != n for row in a):
        raise ValueError("determinant of a non-square matrix")
    if n == 0:
        return 1
    m = mat_copy(a)
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
            m[i][k] = 0
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


class ColumnBasis:
    """An echelonized integer column span with exact membership testing.

    Construction from generators drops dependent columns; ``coordinates``
    inverts the basis on a member vector by back-substitution over the
    rationals and certifies integrality.
    """

    __slots__ = ("cols", "_echelon", "_pivots")

    def __init__(self, cols: Matrix):
        self.cols = cols
        self._echelon: Matrix | None = None
        self._pivots: list[int] | None = None

    @classmethod
    def from_generators(cls, gens: Matrix) -> "ColumnBasis":
        rows, cols = mat_shape(gens)
        keep: list[int] = []
        basis: Matrix = [[] for _ in range(rows)]
        r = 0
        for j in range(cols):
            trial = [
                basis[i] + [gens[i][j]] for i in range(rows)
            ]
            if rank(trial) > r:
                basis = trial
                keep.append(j)
                r += 1
        return cls([[gens[i][j] for j in keep] for i in range(rows)])

    @property
    def dim(self) -> int:
        _, c = mat_shape(self.cols)
        return c

    @property
    def ambient(self) -> int:
        r, _ = mat_shape(self.cols)
        return r

    def coordinates(self, vectors: Matrix) -> Matrix:
        """Solve basis @ X = vectors; raises ValueError outside the span
        or outside the integer lattice the columns generate."""
        return solve_exact(self.cols, vectors)

    def contains(self, vector: Sequence[int]) -> bool:
        try:
            self.coordinates([[x] for x in vector])
            return True
        except ValueError:
            return False


# -- homology ----------------------------------------------------------------


@dataclass(frozen=True)
class RingSpec:
    """Coefficient choice: the integers, or the prime field F_p."""

    p: int | None = None

    def __post_init__(self) -> None:
        if self.p is not None:
            if self.p < 2 or any(
                self.p % q == 0 for q in range(2, int(self.p**0.5) + 1)
            ):
                raise ValueError(f"{self.p} is not prime")

    @property
    def is_field(self) -> bool:
        return self.p is not None

    def __str__(self) -> str:
        return "Z" if self.p is None else f"F{self.p}"


INTEGERS = RingSpec(None)


@dataclass(frozen=True)
class HomologyResult:
    """One homology group: free rank and invariant factors > 1.

    Over a field the torsion list is always empty and ``rank`` is the
    dimension.
    """

    rank: int
    torsion: tuple[int, ...] = ()

    def __post_init__(self) -> None:
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(
                    f"torsion coefficients {self.torsion} not in divisor order"
                )
        if any(t < 2 for t in self.torsion):
            raise ValueError("torsion coefficients must exceed 1")

    @property
    def is_zero(self) -> bool:
        return self.rank == 0 and not self.torsion

    def direct_sum(self, other: "HomologyResult") -> "HomologyResult":
        """Direct sum, renormalizing the invariant factors through the
        primary decomposition."""
        return from_primary(
            self.rank + other.rank,
            primary_parts(self.torsion) + primary_parts(other.torsion),
        )

    def __str__(self) -> str:
        parts = []
        if self.rank == 1:
            parts.append("Z")
        elif self.rank > 1:
            parts.append(f"Z^{self.rank}")
        parts.extend(f"Z/{t}" for t in self.torsion)
        return " + ".join(parts) if parts else "0"


ZERO_GROUP = HomologyResult(0, ())


def primary_parts(torsion: Iterable[int]) -> list[tuple[int, int]]:
    """Prime-power decomposition of a list of cyclic orders."""
    out = []
    for t in torsion:
        m = t
        d = 2
        while d * d <= m:
            if m % d == 0:
                e = 0
                while m % d == 0:
                    m //= d
                    e += 1
                out.append((d, d**e))
            d += 1
        if m > 1:
            out.append((m, m))
    return out


def from_primary(
    rank_: int, parts: Iterable[tuple[int, int]]
) -> HomologyResult:
    """Recombine prime-power cyclic parts into divisor-ordered invariants."""
    by_prime: dict[int, list[int]] = {}
    for p, q in parts:
        by_prime.setdefault(p, []).append(q)
    for p in by_prime:
        by_prime[p].sort(reverse=True)
    width = max((len(v) for v in by_prime.values()), default=0)
    invs = []
    for i in range(width):
        x = 1
        for p, powers in by_prime.items():
            if i < len(powers):
                x *= powers[i]
        invs.append(x)
    invs.reverse()
    return HomologyResult(rank_, tuple(invs))


def homology_of_pair(
    d_in: Sequence[Sequence[int]],
    d_out: Sequence[Sequence[int]],
    ring: RingSpec = INTEGERS,
    ambient: int | None = None,
) -> HomologyResult:
    """Homology at the middle of  source --d_in--> middle --d_out--> target.

    ``d_in`` has the middle dimension as row count and ``d_out`` as column
    count; pass ``ambient`` explicitly when both matrices are empty.

    Over the integers the free rank is dim - rank(d_in) - rank(d_out) and
    the torsion is the set of invariant factors of d_in exceeding one: the
    middle modulo the image splits as the homology plus a free complement
    because the kernel of d_out is saturated, so both computations read off
    the Smith form of d_in alone.  Over F_p the ranks are taken mod p.
    """
    n_in = len(d_in)
    n_out = len(d_out[0]) if d_out and d_out[0] else 0
    if d_in and d_out and d_out[0] and n_in != n_out:
        raise ValueError(
            f"middle dimension mismatch: {n_in} rows in vs {n_out} cols out"
        )
    middle = n_in if d_in else (n_out if d_out and d_out[0] else ambient)
    if middle is None:
        raise ValueError("ambient dimension undetermined; pass it explicitly")

    if ring.is_field:
        p = ring.p
        rin = _rank_mod_p(d_in, p)
        rout = _rank_mod_p(d_out, p)
        return HomologyResult(middle - rout - rin, ())

    invs = snf_diagonal(d_in) if (d_in and d_in[0]) else []
    r_out = rank(d_out) if (d_out and d_out[0]) else 0
    free = middle - len(invs) - r_out
    if free < 0:
        raise ValueError("matrices do not compose to zero")
    return HomologyResult(free, tuple(x for x in invs if x > 1))


def homology_of_pair_via_kernel(
    d_in: Sequence[Sequence[int]],
    d_out: Sequence[Sequence[int]],
    ambient: int | None = None,
) -> HomologyResult:
    """Integer homology through an explicit saturated kernel basis.

    Independent of :func:`homology_of_pair`: computes the kernel of d_out,
    rewrites the image of d_in in kernel coordinates by exact solving, and
    reads the quotient off that presentation.  Slower, kept as a second
    route for cross-checking.
    """
    middle = len(d_in) if d_in else (
        len(d_out[0]) if d_out and d_out[0] else ambient
    )
    if middle is None:
        raise ValueError("ambient dimension undetermined; pass it explicitly")
    kernel = integer_kernel_basis(d_out) if (d_out and d_out[0]) else identity(
        middle
    )
    _, kdim = mat_shape(kernel)
    if kdim == 0:
        return ZERO_GROUP
    if not d_in or not d_in[0]:
        return HomologyResult(kdim, ())
    coords = solve_exact(kernel, mat_copy(d_in))
    invs = snf_diagonal(coords)
    tor = tuple(x for x in invs if x > 1)
    return HomologyResult(kdim - len(invs), tor)


def _rank_mod_p(a: Sequence[Sequence[int]], p: int) -> int:
    if not a or not a[0]:
        return 0
    m = [[x % p for x in row] for row in a]
    rows, cols = mat_shape(m)
    r = 0
    for c in range(cols):
        sel = next((i for i in range(r, rows) if m[i][c]), None)
        if sel is None:
            continue
        m[r], m[sel] = m[sel], m[r]
        inv = pow(m[r][c], p - 2, p)
        m[r] = [(x * inv) % p for x in m[r]]
        for i in range(rows):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], m[r])]
        r += 1
        if r == rows:
            break
    return r


# -- chain complexes and subquotients -----------------------------------------


class ChainComplexData:
    """A bounded complex of free abelian groups given by differentials.

    ``differentials[k]`` maps degree k to degree k-1 (or k+1; the class is
    direction-agnostic, homology is taken at each degree with the two
    adjacent maps).  ``dims[k]`` is the rank in degree k.
    """

    __slots__ = ("dims", "differentials", "down")

    def __init__(
        self,
        dims: dict[int, int],
        differentials: dict[int, Matrix],
        down: bool = True,
    ):
        self.dims = dict(dims)
        self.differentials = {k: mat_copy(m) for k, m in differentials.items()}
        self.down = down
        for k, m in self.differentials.items():
            src = self.dims.get(k, 0)
            dst_deg = k - 1 if down else k + 1
            dst = self.dims.get(dst_deg, 0)
            r, c = mat_shape(m)
            if src and c != src:
                raise ValueError(f"differential at {k}: {c} cols != dim {src}")
            if m and r != dst:
                raise ValueError(f"differential at {k}: {r} rows != dim {dst}")

    def degrees(self) -> list[int]:
        return sorted(self.dims)

    def differential(self, k: int) -> Matrix:
        m = self.differentials.get(k)
        if m is not None:
            return m
        src = self.dims.get(k, 0)
        dst_deg = k - 1 if self.down else k + 1
        dst = self.dims.get(dst_deg, 0)
        return zeros(dst, src)

    def check_squares_to_zero(self) -> bool:
        for k in self.dims:
            nxt = k - 1 if self.down else k + 1
            a = self.differential(k)
            b = self.differential(nxt)
            if a and a[0] and b and b[0]:
                if not is_zero_matrix(mat_mul(b, a)):
                    return False
        return True

    def homology(self, k: int, ring: RingSpec = INTEGERS) -> HomologyResult:
        if self.dims.get(k, 0) == 0:
            return ZERO_GROUP
        incoming_deg = k + 1 if self.down else k - 1
        d_in = self.differential(incoming_deg)
        d_out = self.differential(k)
        return homology_of_pair(d_in, d_out, ring, ambient=self.dims[k])

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * d for k, d in self.dims.items())


class SubcomplexBasis:
    """A degreewise sub-lattice of a chain complex, closed under the
    differential, presented by saturated column bases.

    The induced differential is computed by exact coordinate solving, so
    requesting it certifies closure.
    """

    __slots__ = ("parent", "bases")

    def __init__(self, parent: ChainComplexData, bases: dict[int, Matrix]):
        self.parent = parent
        self.bases = {}
        for k, cols in bases.items():
            r, _ = mat_shape(cols)
            if cols and r != parent.dims.get(k, 0):
                raise ValueError(f"degree {k}: ambient dimension mismatch")
            self.bases[k] = mat_copy(cols)

    def dims(self) -> dict[int, int]:
        return {k: mat_shape(b)[1] for k, b in self.bases.items()}

    def as_complex(self) -> ChainComplexData:
        dims = self.dims()
        diffs: dict[int, Matrix] = {}
        down = self.parent.down
        for k, cols in self.bases.items():
            if not cols or not cols[0]:
                continue
            dst_deg = k - 1 if down else k + 1
            target = self.bases.get(dst_deg, [])
            image = mat_mul(self.parent.differential(k), cols)
            if is_zero_matrix(image):
                diffs[k] = zeros(dims.get(dst_deg, 0), mat_shape(cols)[1])
                continue
            if not target or not target[0]:
                raise ValueError(
                    f"sub-lattice not closed: degree {k} image escapes"
                )
            diffs[k] = solve_exact(target, image)
        return ChainComplexData(dims, diffs, down)


class SubquotientComplex:
    """The quotient of a chain complex by a differential-closed sub-lattice.

    The presentation avoids computing any unimodular inverse: with R the
    sub-lattice basis in ambient coordinates, the integer kernel Y of R^T
    gives a projection x -> Y^T x whose kernel is exactly the saturation of
    the span of R.  Lifts are solved exactly against Y^T, and the induced
    differential is Y^T D L for any lift L of the identity.

    That makes the quotient the free part of ambient/R; when R is saturated
    (all the uses in this package) it is the quotient itself.
    """

    __slots__ = ("parent", "sub", "projections", "dims", "_diffs")

    def __init__(self, parent: ChainComplexData, sub: dict[int, Matrix]):
        self.parent = parent
        self.sub = {k: mat_copy(m) for k, m in sub.items()}
        self.projections: dict[int, Matrix] = {}
        self.dims: dict[int, int] = {}
        for k, amb in parent.dims.items():
            r = self.sub.get(k, [])
            if not r or not r[0]:
                proj = identity(amb)
            else:
                y = integer_kernel_basis(mat_transpose(r))
                proj = mat_transpose(y)
            self.projections[k] = proj
            self.dims[k] = len(proj)
        self._diffs: dict[int, Matrix] | None = None

    def project(self, k: int, vectors: Matrix) -> Matrix:
        return mat_mul(self.projections[k], vectors)

    def lift(self, k: int, vectors: Matrix) -> Matrix:
        """A preimage under the projection (one of many)."""
        return solve_exact(self.projections[k], vectors)

    def as_complex(self) -> ChainComplexData:
        if self._diffs is None:
            diffs: dict[int, Matrix] = {}
            down = self.parent.down
            for k, amb in self.parent.dims.items():
                if self.dims.get(k, 0) == 0 or amb == 0:
                    continue
                dst_deg = k - 1 if down else k + 1
                if self.dims.get(dst_deg, 0) == 0:
                    continue
                lifted = self.lift(k, identity(self.dims[k]))
                pushed = mat_mul(self.parent.differential(k), lifted)
                diffs[k] = mat_mul(self.projections[dst_deg], pushed)
            self._diffs = diffs
        return ChainComplexData(self.dims, self._diffs, self.parent.down)


def connecting_rank_data(
    sub: ChainComplexData,
    total: ChainComplexData,
    inclusion: dict[int, Matrix],
) -> dict[int, tuple[int, int]]:
    """Ranks of the maps induced on homology by a degreewise inclusion.

    Returns per degree (rank of H_k(sub) -> H_k(total), free rank of
    H_k(sub)); useful for long-exact-sequence accounting without computing
    connecting maps directly.
    """
    out = {}
    for k in sorted(set(sub.dims) | set(total.dims)):
        hs = sub.homology(k)
        if hs.rank == 0:
            out[k] = (0, 0)
            continue
        inc = inclusion.get(k)
        if inc is None:
            raise ValueError(f"missing inclusion matrix in degree {k}")
        incoming = k + 1 if sub.down else k - 1
        cyc_s = _cycle_basis(sub, k)
        img_t = total.differential(incoming)
        # rank of induced map: rank of [inc*cycles | boundaries] minus
        # rank of boundaries
        pushed = mat_mul(inc, cyc_s)
        if img_t and img_t[0]:
            stacked = [
                pushed[i] + img_t[i] for i in range(len(pushed))
            ]
            r_b = rank(img_t)
        else:
            stacked = pushed
            r_b = 0
        out[k] = (rank(stacked) - r_b, hs.rank)
    return out


def _cycle_basis(cx: ChainComplexData, k: int) -> Matrix:
    d_out = cx.differential(k)
    if d_out and d_out[0]:
        return integer_kernel_basis(d_out)
    return identity(cx.dims.get(k, 0))
