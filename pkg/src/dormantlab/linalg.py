"""Dense exact linear algebra: generic matrices plus F_p kernels.

Matrix is generic over any commutative coefficient type with operator
syntax (FieldElement, Poly, RationalFunction).  The F_p-specific routines
(nullspace, rank, characteristic polynomial, eigenvalue scan) work on raw
int grids for speed and accept Matrix-of-FieldElement at the boundary.
"""

from __future__ import annotations

from .errors import InputError, NotSplit
from .field import FieldElement, inv_mod
from .poly import Poly


class Matrix:
    """Immutable rectangular grid; ring operations on compatible shapes only."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, entries):
        entries = tuple(tuple(row) for row in entries)
        if not entries or not entries[0]:
            raise InputError("matrix must be nonempty")
        width = len(entries[0])
        if any(len(row) != width for row in entries):
            raise InputError("ragged rows")
        object.__setattr__(self, "entries", entries)
        object.__setattr__(self, "rows", len(entries))
        object.__setattr__(self, "cols", width)

    def __setattr__(self, *_):
        raise AttributeError("Matrix is immutable")

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def __eq__(self, other):
        return isinstance(other, Matrix) and self.entries == other.entries

    def __hash__(self):
        return hash(self.entries)

    def __add__(self, other):
        if self.rows != other.rows or self.cols != other.cols:
            raise InputError("shape mismatch in addition")
        return Matrix(
            [[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)]
        )

    def __neg__(self):
        return Matrix([[-a for a in row] for row in self.entries])

    def __sub__(self, other):
        return self + (-other)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise InputError("shape mismatch in product")
        ot = list(zip(*other.entries))
        out = []
        for row in self.entries:
            out.append([_dot(row, col) for col in ot])
        return Matrix(out)

    def scale(self, c):
        return Matrix([[c * a for a in row] for row in self.entries])

    def transpose(self):
        return Matrix(list(zip(*self.entries)))

    def map(self, f):
        return Matrix([[f(a) for a in row] for row in self.entries])

    def column(self, j):
        return [row[j] for row in self.entries]

    def is_zero(self):
        return all(not a for row in self.entries for a in row)

    def __repr__(self):
        return "Matrix(" + ", ".join(repr(list(r)) for r in self.entries) + ")"


def _dot(row, col):
    it = iter(zip(row, col))
    a, b = next(it)
    acc = a * b
    for a, b in it:
        acc = acc + a * b
    return acc


# ---------------------------------------------------------------------------
# F_p kernels on raw int grids


def _as_int_grid(m) -> tuple[list[list[int]], int]:
    if isinstance(m, tuple):
        return m
    if isinstance(m, Matrix):
        first = m.entries[0][0]
        if not isinstance(first, FieldElement):
            raise InputError("expected a matrix of field elements")
        p = first.p
        return [[a.value for a in row] for row in m.entries], p
    raise InputError(f"cannot interpret {type(m).__name__} as an F_p matrix")


def rref_int(rows: list[list[int]], p: int) -> tuple[list[list[int]], list[int]]:
    """Row-reduce in place; returns (reduced rows, pivot column indices)."""
    rows = [r[:] for r in rows]
    pivots: list[int] = []
    r = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if rows[i][c] % p), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = inv_mod(rows[r][c], p)
        rows[r] = [x * inv % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                f = rows[i][c] % p
                rows[i] = [(x - f * y) % p for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows, pivots


def rank_int(rows: list[list[int]], p: int) -> int:
    if not rows:
        return 0
    return len(rref_int(rows, p)[1])


def nullspace_int(rows: list[list[int]], ncols: int, p: int) -> list[list[int]]:
    """Basis of the right kernel, one vector per free column."""
    if not rows:
        return [[1 if i == j else 0 for i in range(ncols)] for j in range(ncols)]
    red, pivots = rref_int(rows, p)
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for r, pc in enumerate(pivots):
            v[pc] = (-red[r][fc]) % p
        basis.append(v)
    return basis


def nullspace(m: Matrix) -> list[list[FieldElement]]:
    """Kernel basis of a FieldElement matrix; empty list for full column rank."""
    grid, p = _as_int_grid(m)
    vecs = nullspace_int(grid, len(grid[0]), p)
    return [[FieldElement(x, p) for x in v] for v in vecs]


def charpoly_int(grid: list[list[int]], p: int) -> Poly:
    """Characteristic polynomial det(tI - A) via Hessenberg reduction."""
    n = len(grid)
    if any(len(r) != n for r in grid):
        raise InputError("characteristic polynomial needs a square matrix")
    h = [[x % p for x in row] for row in grid]
    for c in range(n - 2):
        piv = next((r for r in range(c + 1, n) if h[r][c]), None)
        if piv is None:
            continue
        if piv != c + 1:
            h[c + 1], h[piv] = h[piv], h[c + 1]
            for r in range(n):
                h[r][c + 1], h[r][piv] = h[r][piv], h[r][c + 1]
        inv = inv_mod(h[c + 1][c], p)
        for r in range(c + 2, n):
            if h[r][c]:
                f = h[r][c] * inv % p
                h[r] = [(x - f * y) % p for x, y in zip(h[r], h[c + 1])]
                for k in range(n):
                    h[k][c + 1] = (h[k][c + 1] + f * h[k][r]) % p
    # charpoly recurrence on the Hessenberg form
    polys = [Poly.one(p)]
    for m in range(1, n + 1):
        t_minus = Poly((-h[m - 1][m - 1] % p, 1), p)
        acc = t_minus * polys[m - 1]
        prod = 1
        for i in range(m - 1, 0, -1):
            prod = prod * h[i][i - 1] % p
            acc = acc - polys[i - 1] * (h[i - 1][m - 1] * prod % p)
        polys.append(acc)
    return polys[n]


def roots_in_field(f: Poly) -> list[int] | None:
    """Roots in F_p with multiplicity via brute scan; None if f does not split."""
    p = f.p
    if f.is_zero():
        raise InputError("zero polynomial has every element as a root")
    rem = f
    roots: list[int] = []
    for a in range(p):
        if rem.degree == 0:
            break
        while rem(a) == 0:
            rem = rem // Poly((-a % p, 1), p)
            roots.append(a)
            if rem.degree == 0:
                break
    if rem.degree > 0:
        return None
    return sorted(roots)


def eigenvalues_in_field(m: Matrix) -> list[FieldElement]:
    """Eigenvalue multiset when the characteristic polynomial splits over F_p."""
    grid, p = _as_int_grid(m)
    chi = charpoly_int(grid, p)
    roots = roots_in_field(chi)
    if roots is None:
        raise NotSplit(f"characteristic polynomial {chi!r} does not split over F_{p}")
    return [FieldElement(r, p) for r in roots]


def solve_field_like(a: list[list], b: list):
    """Solve A x = b by Gaussian elimination over a field-like coefficient type.

    Used with RationalFunction entries; raises InputError on a singular system.
    """
    n = len(a)
    m = len(a[0])
    aug = [list(row) + [bi] for row, bi in zip(a, b)]
    r = 0
    piv_cols = []
    for c in range(m):
        piv = next((i for i in range(r, n) if aug[i][c]), None)
        if piv is None:
            continue
        aug[r], aug[piv] = aug[piv], aug[r]
        inv = aug[r][c]
        aug[r] = [x / inv for x in aug[r]]
        for i in range(n):
            if i != r and aug[i][c]:
                f = aug[i][c]
                aug[i] = [x - f * y for x, y in zip(aug[i], aug[r])]
        piv_cols.append(c)
        r += 1
    if len(piv_cols) != m or any(aug[i][m] for i in range(r, n)):
        raise InputError("singular or inconsistent linear system")
    x = [None] * m
    for i, c in enumerate(piv_cols):
        x[c] = aug[i][m]
    return x
