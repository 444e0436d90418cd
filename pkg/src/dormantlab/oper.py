"""Companion-form opers, their scalar operators, and sheaf profiling.

A companion oper of order n is the data (f_2, ..., f_n) with deg f_j <= j,
standing for the connection theta + A where A has first row (0, f_2, ..., f_n),
subdiagonal -1 and zeros elsewhere.  Its horizontal sections correspond to
solutions of the monic scalar operator

    D = theta^n + f_2 theta^(n-2) + ... + f_n.

Everything downstream of the degree computations (exponents, kernel and
image profiles on the Frobenius twist, self-duality, symmetric powers,
even extensions) lives here.
"""

from __future__ import annotations

from dataclasses import dataclass

from .connection import LogConnection, direct_sum
from .errors import (
    DegreeBoundViolated,
    IncompatibleOddPart,
    InputError,
    MalformedBlocks,
    NotDormant,
    NotSplit,
    ProfileInconsistent,
)
from .field import FieldElement, check_odd_prime, inv_mod
from .linalg import Matrix, nullspace_int, rank_int, roots_in_field, solve_field_like
from .poly import Poly, RationalFunction

POINTS = (0, 1, "inf")


# ---------------------------------------------------------------------------
# scalar differential operators in the theta frame


class ScalarOperator:
    """Monic operator sum_k c_k theta^k with rational-function coefficients."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs, p: int):
        coeffs = [RationalFunction.of(c if isinstance(c, (Poly, RationalFunction)) else Poly.const(c, p)) for c in coeffs]
        if not coeffs or coeffs[-1] != 1:
            raise InputError("scalar operator must be monic")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "coeffs", tuple(coeffs))

    def __setattr__(self, *_):
        raise AttributeError("ScalarOperator is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __eq__(self, other):
        return (
            isinstance(other, ScalarOperator)
            and self.p == other.p
            and self.coeffs == other.coeffs
        )

    def apply(self, y):
        """D(y) for a polynomial or rational function y."""
        if isinstance(y, int):
            y = Poly.const(y, self.p)
        y = RationalFunction.of(y)
        acc = RationalFunction.zero(self.p)
        power = y
        for k, c in enumerate(self.coeffs):
            if k:
                power = power.theta()
            if c:
                acc = acc + c * power
        return acc

    def apply_poly(self, y: Poly) -> Poly:
        """Fast path when every coefficient is polynomial."""
        acc = Poly.zero(self.p)
        power = y
        for k, c in enumerate(self.coeffs):
            if k:
                power = power.theta()
            if c:
                acc = acc + c.num * power
        return acc

    def polynomial_coeffs(self) -> list[Poly]:
        out = []
        for c in self.coeffs:
            if not c.is_polynomial():
                raise InputError("operator has non-polynomial coefficients")
            out.append(c.num)
        return out

    # -- indicial polynomials -----------------------------------------------

    def indicial(self, point) -> Poly:
        """Indicial polynomial (variable s) at 0, 1 or "inf".

        Tracks D(z^s) = sum_k P_k(s) z^(s+k) in the local coordinate z and
        returns the coefficient of the lowest power.  At infinity the shifts
        from the coefficients run negative, which is where the extra degree
        of the theta frame shows up.
        """
        if point not in POINTS:
            raise InputError(f"point must be one of {POINTS}")
        p = self.p
        cs = self.polynomial_coeffs()
        n = self.order

        def deriv_step(terms):
            out: dict[int, Poly] = {}
            for k, P in terms.items():
                sk = Poly((k % p, 1), p) * P  # (s + k) P
                if point == 0:
                    _acc(out, k + 1, sk)
                    _acc(out, k, -sk)
                elif point == 1:
                    _acc(out, k + 1, sk)
                    _acc(out, k, sk)
                else:
                    _acc(out, k - 1, -sk)
                    _acc(out, k, sk)
            return {k: v for k, v in out.items() if v}

        # theta^j acting on z^s, for j = 0..n
        iterates = [{0: Poly.one(p)}]
        for _ in range(n):
            iterates.append(deriv_step(iterates[-1]))

        total: dict[int, Poly] = {}
        for j, c in enumerate(cs):
            if c.is_zero():
                continue
            local = _local_coeffs(c, point)
            for shift, a in local:
                for k, P in iterates[j].items():
                    _acc(total, k + shift, P * a)
        total = {k: v for k, v in total.items() if v}
        if not total:
            raise InputError("zero operator has no indicial polynomial")
        return total[min(total)]

    # -- formal adjoint -----------------------------------------------------

    def adjoint(self):
        """Formal adjoint sum_k (-theta)^k . c_k as a raw coefficient list."""
        p = self.p
        acc = [RationalFunction.zero(p)] * (self.order + 1)
        for k, c in enumerate(self.coeffs):
            term = [c]
            for _ in range(k):
                new = [RationalFunction.zero(p)] * (len(term) + 1)
                for j, e in enumerate(term):
                    new[j + 1] = new[j + 1] - e
                    new[j] = new[j] - e.theta()
                term = new
            for j, e in enumerate(term):
                acc[j] = acc[j] + e
        return acc

    def is_self_dual(self) -> bool:
        """True iff the formal adjoint equals -D (odd order) or D (even)."""
        sign = -1 if self.order % 2 else 1
        return all(a == sign * c for a, c in zip(self.adjoint(), self.coeffs))


def _acc(d: dict, k: int, v: Poly):
    cur = d.get(k)
    d[k] = v if cur is None else cur + v


def _local_coeffs(c: Poly, point) -> list[tuple[int, int]]:
    """(shift, scalar) pairs for c expanded in the local coordinate at point."""
    if point == 0:
        coeffs = c.coeffs
        return [(i, a) for i, a in enumerate(coeffs) if a]
    if point == 1:
        coeffs = c.compose_affine(1, 1).coeffs  # c(t + 1)
        return [(i, a) for i, a in enumerate(coeffs) if a]
    return [(-i, a) for i, a in enumerate(c.coeffs) if a]  # c(1/u)


# ---------------------------------------------------------------------------
# companion opers


@dataclass(frozen=True)
class ExponentProfile:
    point: object
    exponents: tuple[int, ...]  # sorted residues in [0, p)


class CompanionOper:
    """Order-n oper in companion normal form, potentials f_2..f_n."""

    __slots__ = ("p", "order", "potentials")

    def __init__(self, potentials, p: int):
        check_odd_prime(p)
        pots = []
        for j, f in enumerate(potentials, start=2):
            f = f if isinstance(f, Poly) else Poly(f, p)
            if f.degree > j:
                raise DegreeBoundViolated(f"deg f_{j} = {f.degree} exceeds bound {j}")
            pots.append(f)
        if not pots:
            raise InputError("companion oper needs order >= 2")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "order", len(pots) + 1)
        object.__setattr__(self, "potentials", tuple(pots))

    def __setattr__(self, *_):
        raise AttributeError("CompanionOper is immutable")

    def __eq__(self, other):
        return (
            isinstance(other, CompanionOper)
            and self.p == other.p
            and self.potentials == other.potentials
        )

    def __hash__(self):
        return hash((self.p, self.potentials))

    def __repr__(self):
        return f"CompanionOper(order={self.order}, p={self.p})"

    def connection(self) -> LogConnection:
        """The Eq-shaped matrix: first row (0, f_2..f_n), subdiagonal -1."""
        p, n = self.p, self.order
        zero = Poly.zero(p)
        rows = [[zero] + list(self.potentials)]
        for i in range(1, n):
            row = [zero] * n
            row[i - 1] = Poly.const(-1, p)
            rows.append(row)
        return LogConnection.from_polys(rows, p)

    def scalar_operator(self) -> ScalarOperator:
        """Eliminate the system: D = theta^n + f_2 theta^(n-2) + ... + f_n."""
        n = self.order
        coeffs = [Poly.zero(self.p)] * (n + 1)
        coeffs[n] = Poly.one(self.p)
        for j, f in enumerate(self.potentials, start=2):
            coeffs[n - j] = f
        return ScalarOperator(coeffs, self.p)

    def exponents(self, point) -> ExponentProfile:
        """Indicial roots at the point, normalized to residues in [0, p).

        At infinity the theta frame carries an extra twist of (n-1)/2, which
        is subtracted so that the profile is centred the same way at all
        three points.
        """
        ind = self.scalar_operator().indicial(point)
        roots = roots_in_field(ind)
        if roots is None or len(roots) != self.order:
            raise NotSplit(f"indicial polynomial at {point} does not split: {ind!r}")
        if point == "inf":
            shift = (self.order - 1) * inv_mod(2, self.p) % self.p
            roots = sorted((r - shift) % self.p for r in roots)
        return ExponentProfile(point, tuple(roots))

    def is_dormant(self) -> bool:
        return self.connection().is_dormant()

    def is_self_dual(self) -> bool:
        return self.scalar_operator().is_self_dual()


def is_orthogonal_compatible(conn, gram) -> bool:
    """Literal check transpose(A) J + J A = 0.

    For a CompanionOper with None gram this falls back to formal
    self-duality of the scalar operator, which is the frame-independent
    form of the same condition (no constant Gram exists in the companion
    frame once the potentials vary).
    """
    if isinstance(conn, CompanionOper):
        if gram is None:
            return conn.is_self_dual()
        conn = conn.connection()
    a = conn.matrix
    j = gram.matrix if isinstance(gram, OrthogonalForm) else gram
    jr = j.map(lambda e: RationalFunction.of(Poly.const(e.value if isinstance(e, FieldElement) else e, conn.p)))
    return (a.transpose() @ jr + jr @ a).is_zero()


class OrthogonalForm:
    """Constant symmetric nondegenerate Gram matrix over F_p."""

    __slots__ = ("p", "matrix")

    def __init__(self, matrix: Matrix, p: int):
        ents = matrix.map(lambda e: FieldElement(e.value if isinstance(e, FieldElement) else e, p))
        if ents.rows != ents.cols:
            raise InputError("gram must be square")
        if ents != ents.transpose():
            raise InputError("gram must be symmetric")
        grid = [[e.value for e in row] for row in ents.entries]
        if rank_int(grid, p) != ents.rows:
            raise InputError("gram must be nondegenerate")
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "matrix", ents)

    def __setattr__(self, *_):
        raise AttributeError("OrthogonalForm is immutable")


def sign_antidiagonal_gram(n: int, p: int) -> OrthogonalForm:
    """J with J[i, n+1-i] = (-1)^(i-1), the filtration-adapted reference pairing."""
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][n - 1 - i] = (-1) ** i % p
    return OrthogonalForm(Matrix(rows), p)


def antidiagonal_gram_for(conn: LogConnection) -> OrthogonalForm:
    """Solve for an antidiagonal constant Gram flat for the connection.

    Propagates j_(n-1-a) A[a][b] = -j_(n-1-b) A[b][a] from j_0 = 1 and
    verifies every condition; raises InputError when no such Gram exists.
    """
    a = conn.matrix
    n, p = conn.rank, conn.p
    j: list = [None] * n  # j[i] = J[i][n-1-i]
    j[0] = RationalFunction.of(Poly.one(p))
    changed = True
    while changed:
        changed = False
        for i in range(n):
            for c in range(n):
                # flatness: j_i A[n-1-i][c] + j_(n-1-c) A[n-1-c][i] = 0
                a1, a2 = a[n - 1 - i, c], a[n - 1 - c, i]
                if a1 and j[i] is not None and j[n - 1 - c] is None:
                    if not a2:
                        raise InputError("no antidiagonal gram: asymmetric support")
                    j[n - 1 - c] = -j[i] * a1 / a2
                    changed = True
    if any(v is None for v in j):
        raise InputError("no antidiagonal gram: connection support too sparse")
    rows = [[0] * n for _ in range(n)]
    for i, v in enumerate(j):
        if not v.is_polynomial() or v.num.degree > 0:
            raise InputError("antidiagonal gram is not constant")
        rows[i][n - 1 - i] = v.num.coeffs[0] if v.num.coeffs else 0
    form = OrthogonalForm(Matrix(rows), p)
    if not is_orthogonal_compatible(conn, form):
        raise InputError("no flat antidiagonal gram for this connection")
    return form


# ---------------------------------------------------------------------------
# symmetric powers and companion conversion


def symmetric_power(base: CompanionOper, m: int):
    """m-th symmetric power of a rank-2 companion oper, in the monomial basis.

    Returns (LogConnection, OrthogonalForm or None); the form is present for
    even m, where the induced pairing is symmetric.
    """
    if base.order != 2:
        raise InputError("symmetric power needs a rank-2 base")
    if m < 1:
        raise InputError("power must be >= 1")
    p = base.p
    f = base.potentials[0]
    zero = Poly.zero(p)
    n = m + 1
    rows = [[zero] * n for _ in range(n)]
    # nabla(w_a) = -(m-a) w_(a+1) + a f w_(a-1) on monomials w_a = e1^(m-a) e2^a
    for a in range(n):
        if a + 1 < n:
            rows[a + 1][a] = Poly.const(-(m - a), p)
        if a - 1 >= 0:
            rows[a - 1][a] = Poly.const(a, p) * f
    conn = LogConnection.from_polys(rows, p)
    gram = antidiagonal_gram_for(conn) if m % 2 == 0 else None
    return conn, gram


def scalar_from_connection(conn: LogConnection) -> ScalarOperator:
    """Cyclic-vector elimination against the last coordinate functional."""
    p, n = conn.p, conn.rank
    zero = RationalFunction.zero(p)
    one = RationalFunction.of(Poly.one(p))
    r = [zero] * n
    r[n - 1] = one
    rows = [list(r)]
    a = conn.matrix
    for _ in range(n):
        nxt = [e.theta() for e in rows[-1]]
        for c in range(n):
            acc = nxt[c]
            for k in range(n):
                if rows[-1][k] and a[k, c]:
                    acc = acc - rows[-1][k] * a[k, c]
            nxt[c] = acc
        rows.append(nxt)
    # solve r_n = - sum_j c_j r_(n-j)
    system = [[rows[n - j][i] for j in range(1, n + 1)] for i in range(n)]
    rhs = [-rows[n][i] for i in range(n)]
    sol = solve_field_like(system, rhs)
    coeffs = [RationalFunction.zero(p)] * (n + 1)
    coeffs[n] = one
    for j in range(1, n + 1):
        coeffs[n - j] = sol[j - 1]
    return ScalarOperator(coeffs, p)


def to_companion(conn: LogConnection) -> CompanionOper:
    """Companion normal form of an oper-shaped connection via its scalar operator."""
    op = scalar_from_connection(conn)
    n = conn.rank
    if op.coeffs[n - 1]:
        raise InputError("connection is not special: nonzero subleading coefficient")
    pots = []
    for j in range(2, n + 1):
        c = op.coeffs[n - j]
        if not c.is_polynomial():
            raise InputError("scalar coefficients are not polynomial")
        if c.num.degree > j:
            raise InputError(f"coefficient degree {c.num.degree} exceeds oper bound {j}")
        pots.append(c.num)
    return CompanionOper(pots, conn.p)


# ---------------------------------------------------------------------------
# even extensions


class EvenOper:
    """Rank-2l connection (odd oper + line) + nu in the upper-right block."""

    __slots__ = ("odd", "nu", "connection", "gram")

    def __init__(self, odd: CompanionOper, nu: Poly, connection: LogConnection, gram: OrthogonalForm):
        object.__setattr__(self, "odd", odd)
        object.__setattr__(self, "nu", nu)
        object.__setattr__(self, "connection", connection)
        object.__setattr__(self, "gram", gram)

    def __setattr__(self, *_):
        raise AttributeError("EvenOper is immutable")

    @property
    def rank(self) -> int:
        return self.odd.order + 1


def extend_to_even(odd: CompanionOper, nu) -> EvenOper:
    p = odd.p
    n = odd.order
    if n % 2 == 0:
        raise InputError("odd part must have odd order")
    ell = (n + 1) // 2
    nu = nu if isinstance(nu, Poly) else Poly(nu, p)
    if nu.degree > ell:
        raise DegreeBoundViolated(f"deg nu = {nu.degree} exceeds bound {ell}")
    if not odd.is_self_dual():
        raise IncompatibleOddPart("odd part is not self-dual")
    zero = Poly.zero(p)
    inner = odd.connection().matrix
    rows = []
    for i in range(n):
        rows.append([e for e in inner.entries[i]] + [RationalFunction.of(nu if i == 0 else zero)])
    rows.append([RationalFunction.zero(p)] * (n + 1))
    conn = LogConnection(Matrix(rows), p)
    # orthogonal direct sum of the reference odd pairing and the rank-1 pairing
    jrows = [[0] * (n + 1) for _ in range(n + 1)]
    for i in range(n):
        jrows[i][n - 1 - i] = (-1) ** i % p
    jrows[n][n] = 1
    gram = OrthogonalForm(Matrix(jrows), p)
    return EvenOper(odd, nu, conn, gram)


def split_even(even) -> tuple[CompanionOper, Poly]:
    """Inverse of extend_to_even; accepts an EvenOper or its raw connection."""
    conn = even.connection if isinstance(even, EvenOper) else even
    p = conn.p
    n = conn.rank - 1
    a = conn.matrix
    if any(a[n, j] for j in range(n + 1)):
        raise MalformedBlocks("last row must vanish")
    if any(a[i, n] for i in range(1, n)):
        raise MalformedBlocks("nu must sit in the top corner of the last column")
    pots = []
    for i in range(n):
        for j in range(n):
            e = a[i, j]
            if i == 0:
                if j == 0 and e:
                    raise MalformedBlocks("companion corner must vanish")
                continue
            expected_neg_one = j == i - 1
            if expected_neg_one:
                if e != -1:
                    raise MalformedBlocks("companion subdiagonal must be -1")
            elif e:
                raise MalformedBlocks("off-pattern entry in companion block")
    for j in range(1, n):
        e = a[0, j]
        if not e.is_polynomial():
            raise MalformedBlocks("non-polynomial potential")
        pots.append(e.num)
    nu_e = a[0, n]
    if not nu_e.is_polynomial():
        raise MalformedBlocks("non-polynomial nu")
    return CompanionOper(pots, p), nu_e.num


# ---------------------------------------------------------------------------
# sheaf profiles on the Frobenius twist


@dataclass(frozen=True)
class SheafProfile:
    rank: int
    degree: int
    splitting: tuple[int, ...]  # ascending

    def h0(self) -> int:
        return sum(max(0, w + 1) for w in self.splitting)


def _operator_matrix(op: ScalarOperator, max_deg: int) -> list[list[int]]:
    """Columns D(x^d) for d = 0..max_deg, as coefficient rows over F_p."""
    p = op.p
    cs = op.polynomial_coeffs()
    n = op.order
    cols = []
    out_deg = 0
    for d in range(max_deg + 1):
        power = Poly((0,) * d + (1,), p) if d else Poly.one(p)
        acc = Poly.zero(p)
        for k, c in enumerate(cs):
            if k:
                power = power.theta()
            if c:
                acc = acc + c * power
        cols.append(acc)
        out_deg = max(out_deg, acc.degree)
    rows = []
    for k in range(out_deg + 1):
        rows.append([c.coeffs[k] if k <= c.degree else 0 for c in cols])
    return rows


def _reconstruct(counts: list[int], stable_rank: int, label: str) -> SheafProfile:
    """Splitting type from h(m) = sum_i max(0, w_i + m + 1), m = 0..M."""
    m_top = len(counts) - 1
    degree = counts[-1] - stable_rank * (m_top + 1)
    deltas = [counts[m] - counts[m - 1] for m in range(1, len(counts))]
    mult: dict[int, int] = {}
    for m in range(2, len(counts)):
        k = deltas[m - 1] - deltas[m - 2]
        if k < 0:
            raise ProfileInconsistent(f"{label}: section counts are not concave")
        if k:
            mult[-m] = k
    k1 = deltas[0]
    d1 = degree - sum(w * c for w, c in mult.items())
    if counts[0] != d1 + k1:
        raise ProfileInconsistent(f"{label}: twist-0 section count inconsistent")
    if k1:
        if d1 == -k1:
            mult[-1] = mult.get(-1, 0) + k1
        elif k1 == 1:
            mult[d1] = mult.get(d1, 0) + 1
        elif d1 == 0:
            mult[0] = mult.get(0, 0) + k1
        else:
            raise ProfileInconsistent(f"{label}: ambiguous nonnegative part")
    splitting = tuple(sorted(w for w, c in mult.items() for _ in range(c)))
    if len(splitting) != stable_rank or sum(splitting) != degree:
        raise ProfileInconsistent(f"{label}: splitting does not match rank/degree")
    return SheafProfile(stable_rank, degree, splitting)


def _sweep(dim_at, max_m: int = 10) -> tuple[list[int], int]:
    """Evaluate dim_at(m) until three consecutive equal increments."""
    counts = [dim_at(0)]
    deltas: list[int] = []
    for m in range(1, max_m + 1):
        counts.append(dim_at(m))
        deltas.append(counts[-1] - counts[-2])
        if len(deltas) >= 3 and deltas[-1] == deltas[-2] == deltas[-3]:
            return counts, deltas[-1]
    raise ProfileInconsistent("section counts did not stabilize")


def kernel_sheaf_profile(oper: CompanionOper, require_dormant: bool = True) -> SheafProfile:
    """Profile of the scalar-solution kernel sheaf on the Frobenius twist."""
    if require_dormant and not oper.is_dormant():
        raise NotDormant("kernel profile requested for a non-dormant oper")
    p, n = oper.p, oper.order
    offset = (n - 1) // 2
    op = oper.scalar_operator()

    def dim_at(m: int) -> int:
        max_deg = p * m - offset
        if max_deg < 0:
            return 0
        rows = _operator_matrix(op, max_deg)
        return max_deg + 1 - rank_int(rows, p)

    counts, stable = _sweep(dim_at)
    if stable != n:
        raise ProfileInconsistent(f"kernel rank stabilized at {stable}, expected {n}")
    return _reconstruct(counts, n, "kernel")


def image_profile(oper: CompanionOper, require_dormant: bool = True) -> tuple[SheafProfile, int]:
    """Profile of the image sheaf Im(D) inside the l-th twist, plus its h^0."""
    n = oper.order
    if n % 2 == 0 or n < 3:
        raise InputError("image profile needs an odd order >= 3")
    if require_dormant and not oper.is_dormant():
        raise NotDormant("image profile requested for a non-dormant oper")
    p = oper.p
    offset = (n - 1) // 2
    op = oper.scalar_operator()

    def dim_at(m: int) -> int:
        max_deg = p * m - offset
        if max_deg < 0:
            return 0
        rows = _operator_matrix(op, max_deg)
        return rank_int(rows, p)

    counts, stable = _sweep(dim_at)
    profile = _reconstruct(counts, stable, "image")
    return profile, profile.h0()


def unramifiedness_certificate(oper: CompanionOper) -> bool:
    """H^0 of the image sheaf vanishes, the concrete unramifiedness criterion."""
    _, h0 = image_profile(oper)
    return h0 == 0


__all__ = [
    "CompanionOper",
    "EvenOper",
    "ExponentProfile",
    "OrthogonalForm",
    "ScalarOperator",
    "SheafProfile",
    "antidiagonal_gram_for",
    "direct_sum",
    "extend_to_even",
    "image_profile",
    "is_orthogonal_compatible",
    "kernel_sheaf_profile",
    "scalar_from_connection",
    "sign_antidiagonal_gram",
    "split_even",
    "symmetric_power",
    "to_companion",
    "unramifiedness_certificate",
]
