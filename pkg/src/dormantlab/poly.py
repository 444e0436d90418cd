"""Univariate polynomials and reduced rational functions over F_p.

Coefficients are stored ascending (coeffs[i] multiplies x^i) with no
trailing zeros, so equality is structural.  The zero polynomial has the
empty coefficient tuple and degree -1 (the distinguished sentinel).

The raw list helpers at the top operate on plain lists of ints; the class
layer builds on them and is what the rest of the package imports.
"""

from __future__ import annotations

from .field import inv_mod

# ---------------------------------------------------------------------------
# raw coefficient-list kernels (ascending order, ints mod p)


def _trim(c: list[int], p: int) -> list[int]:
    c = [x % p for x in c]
    while c and c[-1] == 0:
        c.pop()
    return c


def _add(a, b, p):
    n = max(len(a), len(b))
    out = [0] * n
    for i, x in enumerate(a):
        out[i] = x
    for i, x in enumerate(b):
        out[i] = (out[i] + x) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def _mul(a, b, p):
    if not a or not b:
        return []
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] = (out[i + j] + x * y) % p
    while out and out[-1] == 0:
        out.pop()
    return out


def _scale(a, c, p):
    c %= p
    if c == 0:
        return []
    return _trim([c * x for x in a], p)


def _divmod(a, b, p):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    q = [0] * max(0, len(a) - len(b) + 1)
    inv = inv_mod(b[-1], p)
    while len(a) >= len(b) and a:
        c = a[-1] * inv % p
        k = len(a) - len(b)
        q[k] = c
        for i, y in enumerate(b):
            a[i + k] = (a[i + k] - c * y) % p
        while a and a[-1] == 0:
            a.pop()
    while q and q[-1] == 0:
        q.pop()
    return q, a


def _gcd(a, b, p):
    a, b = list(a), list(b)
    while b:
        a, b = b, _divmod(a, b, p)[1]
    if a:
        inv = inv_mod(a[-1], p)
        a = [x * inv % p for x in a]
    return a


def _theta(a, p):
    """x(x-1) * d/dx applied to a raw coefficient list."""
    d = [(i * c) % p for i, c in enumerate(a)][1:]
    # x^2*d - x*d
    out = [0] * (len(d) + 2)
    for i, c in enumerate(d):
        out[i + 2] = c
        out[i + 1] = (out[i + 1] - c) % p
    while out and out[-1] == 0:
        out.pop()
    return out


# ---------------------------------------------------------------------------


class Poly:
    """Dense polynomial over F_p in canonical (trailing-zero-free) form."""

    __slots__ = ("p", "coeffs")

    def __init__(self, coeffs, p: int, *, _raw=False):
        object.__setattr__(self, "p", p)
        c = list(coeffs) if _raw else _trim(list(coeffs), p)
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, *_):
        raise AttributeError("Poly is immutable")

    # -- constructors -------------------------------------------------------

    @classmethod
    def zero(cls, p):
        return cls((), p, _raw=True)

    @classmethod
    def one(cls, p):
        return cls((1,), p, _raw=True)

    @classmethod
    def x(cls, p):
        return cls((0, 1), p, _raw=True)

    @classmethod
    def const(cls, c, p):
        return cls((c,), p)

    # -- basic queries ------------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree, with -1 as the sentinel for the zero polynomial."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_one(self) -> bool:
        return self.coeffs == (1,)

    def leading(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.p == other.p and self.coeffs == other.coeffs
        if isinstance(other, int):
            return self.coeffs == (() if other % self.p == 0 else (other % self.p,))
        return NotImplemented

    def __hash__(self):
        return hash((self.coeffs, self.p))

    # -- arithmetic ---------------------------------------------------------

    def _lift(self, other):
        if isinstance(other, Poly):
            if other.p != self.p:
                raise ValueError("mixed moduli")
            return other
        if isinstance(other, int):
            return Poly.const(other, self.p)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Poly(_add(list(self.coeffs), list(o.coeffs), self.p), self.p, _raw=True)

    __radd__ = __add__

    def __neg__(self):
        return Poly(_scale(list(self.coeffs), -1, self.p), self.p, _raw=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return Poly(_mul(list(self.coeffs), list(o.coeffs), self.p), self.p, _raw=True)

    __rmul__ = __mul__

    def __divmod__(self, other):
        o = self._lift(other)
        q, r = _divmod(list(self.coeffs), list(o.coeffs), self.p)
        return Poly(q, self.p, _raw=True), Poly(r, self.p, _raw=True)

    def __floordiv__(self, other):
        return divmod(self, other)[0]

    def __mod__(self, other):
        return divmod(self, other)[1]

    def gcd(self, other: "Poly") -> "Poly":
        return Poly(_gcd(list(self.coeffs), list(other.coeffs), self.p), self.p, _raw=True)

    def monic(self) -> "Poly":
        if not self.coeffs:
            return self
        return self * inv_mod(self.coeffs[-1], self.p)

    def derivative(self) -> "Poly":
        return Poly([(i * c) % self.p for i, c in enumerate(self.coeffs)][1:], self.p)

    def theta(self) -> "Poly":
        """Apply the log vector field x(x-1) d/dx."""
        return Poly(_theta(list(self.coeffs), self.p), self.p, _raw=True)

    def __call__(self, x: int) -> int:
        acc = 0
        for c in reversed(self.coeffs):
            acc = (acc * x + c) % self.p
        return acc

    def compose_affine(self, a: int, b: int) -> "Poly":
        """f(a*x + b), by Horner over F_p[x]."""
        arg = Poly((b, a), self.p)
        acc = Poly.zero(self.p)
        for c in reversed(self.coeffs):
            acc = acc * arg + c
        return acc

    def shift(self, k: int) -> "Poly":
        """Multiply by x^k."""
        if not self.coeffs:
            return self
        return Poly((0,) * k + self.coeffs, self.p, _raw=True)

    def __repr__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for i, c in enumerate(self.coeffs):
            if c:
                terms.append(f"{c}" if i == 0 else (f"x^{i}" if c == 1 else f"{c}*x^{i}"))
        return " + ".join(terms)


class RationalFunction:
    """Reduced fraction of polynomials; denominator monic and coprime to numerator."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None, *, _reduced=False):
        p = num.p
        if den is None:
            den = Poly.one(p)
        if den.is_zero():
            raise ZeroDivisionError("zero denominator")
        if not _reduced and not den.is_one():
            g = num.gcd(den)
            if g.degree > 0:
                num, den = num // g, den // g
            lead = den.leading()
            if lead != 1:
                inv = inv_mod(lead, p)
                num, den = num * inv, den * inv
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *_):
        raise AttributeError("RationalFunction is immutable")

    @property
    def p(self):
        return self.num.p

    @classmethod
    def zero(cls, p):
        return cls(Poly.zero(p), _reduced=True)

    @classmethod
    def of(cls, f) -> "RationalFunction":
        if isinstance(f, RationalFunction):
            return f
        if isinstance(f, Poly):
            return cls(f, _reduced=True)
        raise TypeError(f"cannot coerce {f!r}")

    def is_zero(self):
        return self.num.is_zero()

    def is_polynomial(self):
        return self.den.is_one()

    def __bool__(self):
        return bool(self.num)

    def __eq__(self, other):
        if isinstance(other, (Poly, int)):
            return self.den.is_one() and self.num == other
        if isinstance(other, RationalFunction):
            return self.num == other.num and self.den == other.den
        return NotImplemented

    def __hash__(self):
        return hash((self.num, self.den))

    def _lift(self, other):
        if isinstance(other, RationalFunction):
            return other
        if isinstance(other, Poly):
            return RationalFunction(other, _reduced=True)
        if isinstance(other, int):
            return RationalFunction(Poly.const(other, self.p), _reduced=True)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return RationalFunction(self.num + o.num, _reduced=True)
        return RationalFunction(self.num * o.den + o.num * self.den, self.den * o.den)

    __radd__ = __add__

    def __neg__(self):
        return RationalFunction(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if self.den.is_one() and o.den.is_one():
            return RationalFunction(self.num * o.num, _reduced=True)
        return RationalFunction(self.num * o.num, self.den * o.den)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        if o.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * o.den, self.den * o.num)

    def __rtruediv__(self, other):
        o = self._lift(other)
        return o / self

    def derivative(self) -> "RationalFunction":
        if self.den.is_one():
            return RationalFunction(self.num.derivative(), _reduced=True)
        n, d = self.num, self.den
        return RationalFunction(n.derivative() * d - n * d.derivative(), d * d)

    def theta(self) -> "RationalFunction":
        """x(x-1) d/dx of the fraction."""
        p = self.p
        xx1 = Poly((0, p - 1, 1), p, _raw=True)
        return RationalFunction(xx1, _reduced=True) * self.derivative()

    def __repr__(self):
        if self.den.is_one():
            return repr(self.num)
        return f"({self.num!r})/({self.den!r})"
