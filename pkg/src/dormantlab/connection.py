"""First-order operators nabla = theta + A(x) on the 3-pointed line.

Everything is expressed in the single global frame theta = x(x-1) d/dx,
which trivializes the log tangent sheaf away from infinity, so companion
matrices stay polynomial and there is exactly one chart to worry about.
A may have poles only along {0, 1} (powers of x(x-1) in denominators).
"""

from __future__ import annotations

import functools

from .errors import InputError, NonLogPthPower
from .field import check_odd_prime
from .linalg import Matrix, nullspace_int
from .poly import Poly, RationalFunction


def _xx1(p: int) -> Poly:
    return Poly((0, -1, 1), p)  # x(x-1)


def _check_log_pole(den: Poly) -> bool:
    """True iff den is x^a (x-1)^b up to the (monic) normalization."""
    p = den.p
    for root in (0, 1):
        lin = Poly((-root % p, 1), p)
        while den.degree > 0 and den(root) == 0:
            den = den // lin
    return den.degree == 0


@functools.lru_cache(maxsize=None)
def theta_p_iterate(p: int) -> Poly:
    """h with theta^[p] = h d/dx, i.e. the p-fold theta-iterate of x."""
    h = Poly.x(p)
    for _ in range(p):
        h = h.theta()
    return h


@functools.lru_cache(maxsize=None)
def _pth_power_ratio(p: int) -> Poly:
    """g = h / (x(x-1)), so that nabla_{theta^[p]} = g * nabla_theta."""
    h = theta_p_iterate(p)
    g, rem = divmod(h, _xx1(p))
    if rem:
        raise NonLogPthPower(f"theta^[p] not divisible by x(x-1) at p={p}")
    return g


class PCurvature:
    """The O-linear obstruction psi = nabla^p - nabla_{theta^[p]}."""

    __slots__ = ("psi",)

    def __init__(self, psi: Matrix):
        object.__setattr__(self, "psi", psi)

    def __setattr__(self, *_):
        raise AttributeError("PCurvature is immutable")

    def is_zero(self) -> bool:
        return self.psi.is_zero()


class LogConnection:
    """Rank-n connection nabla(v) = theta(v) + A v with log poles at {0, 1}."""

    __slots__ = ("p", "rank", "matrix")

    def __init__(self, matrix: Matrix, p: int):
        check_odd_prime(p)
        if matrix.rows != matrix.cols:
            raise InputError("connection matrix must be square")
        matrix = matrix.map(RationalFunction.of)
        for row in matrix.entries:
            for entry in row:
                if not _check_log_pole(entry.den):
                    raise InputError(f"pole outside {{0,1}} in entry {entry!r}")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "rank", matrix.rows)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, *_):
        raise AttributeError("LogConnection is immutable")

    @classmethod
    def from_polys(cls, rows, p: int) -> "LogConnection":
        return cls(Matrix(rows).map(lambda f: RationalFunction.of(f if isinstance(f, (Poly, RationalFunction)) else Poly.const(f, p))), p)

    def apply(self, v) -> list[RationalFunction]:
        """nabla(v) = x(x-1) v' + A v for a length-n vector."""
        if len(v) != self.rank:
            raise InputError(f"vector length {len(v)} != rank {self.rank}")
        v = [RationalFunction.of(e if isinstance(e, (Poly, RationalFunction)) else Poly.const(e, self.p)) for e in v]
        out = []
        for row in self.matrix.entries:
            acc = RationalFunction.zero(self.p)
            for a, x in zip(row, v):
                if a and x:
                    acc = acc + a * x
            out.append(acc)
        return [e.theta() + a for e, a in zip(v, out)]

    def p_curvature(self) -> PCurvature:
        """Literal p-fold application to the coordinate basis vectors."""
        g = RationalFunction.of(_pth_power_ratio(self.p))
        zero = RationalFunction.zero(self.p)
        one = RationalFunction.of(Poly.one(self.p))
        cols = []
        for j in range(self.rank):
            w = [one if i == j else zero for i in range(self.rank)]
            first = None
            for step in range(self.p):
                w = self.apply(w)
                if step == 0:
                    first = w
            cols.append([wi - g * fi for wi, fi in zip(w, first)])
        return PCurvature(Matrix(list(zip(*cols))))

    def is_dormant(self) -> bool:
        return self.p_curvature().is_zero()

    def solution_space(self, degree_bound: int) -> list[list[Poly]]:
        """Basis of polynomial-vector solutions of nabla(v)=0 with deg <= bound."""
        if degree_bound < 0:
            raise InputError("degree bound must be >= 0")
        p, n = self.p, self.rank
        images = []  # nabla(x^d e_i) for each unknown, as RF vectors
        for i in range(n):
            for d in range(degree_bound + 1):
                mono = [Poly.zero(p)] * n
                mono[i] = Poly((0,) * d + (1,), p)
                images.append(self.apply(mono))
        # clear denominators entrywise with one common multiplier
        common = Poly.one(p)
        for img in images:
            for e in img:
                if not (e.den % common).is_zero() or e.den.degree > common.degree:
                    g = common.gcd(e.den)
                    common = common * (e.den // g)
        cleared = [
            [e.num * (common // e.den) for e in img]
            for img in images
        ]
        max_deg = max((q.degree for img in cleared for q in img), default=-1)
        rows = []
        for entry in range(n):
            for k in range(max_deg + 1):
                rows.append(
                    [img[entry].coeffs[k] if k <= img[entry].degree else 0 for img in cleared]
                )
        basis = nullspace_int(rows, len(images), p) if rows else nullspace_int([], len(images), p)
        out = []
        for vec in basis:
            sol = []
            for i in range(n):
                coeffs = vec[i * (degree_bound + 1): (i + 1) * (degree_bound + 1)]
                sol.append(Poly(coeffs, p))
            out.append(sol)
        return out


def direct_sum(a: LogConnection, b: LogConnection) -> LogConnection:
    if a.p != b.p:
        raise InputError("mixed primes in direct sum")
    p = a.p
    zero = RationalFunction.zero(p)
    n, m = a.rank, b.rank
    rows = []
    for i in range(n):
        rows.append(list(a.matrix.entries[i]) + [zero] * m)
    for i in range(m):
        rows.append([zero] * n + list(b.matrix.entries[i]))
    return LogConnection(Matrix(rows), p)
