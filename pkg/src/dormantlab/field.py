"""Exact arithmetic in the prime field F_p.

Elements are immutable wrappers around a residue in [0, p).  The hot loops
elsewhere in the package work on raw ints mod p; this class is the public
face used by the matrix layer and by anything that wants operator syntax.
"""

from __future__ import annotations

# Machine-word bound documented in the design notes: every acceptance run
# uses p far below this, and staying under it keeps residue products inside
# hardware integers on every platform Python targets.
MAX_PRIME = 2**31


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid far beyond the supported prime bound."""
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def check_odd_prime(p: int) -> int:
    from .errors import InputError

    if not isinstance(p, int) or p < 3 or p >= MAX_PRIME or not is_prime(p):
        raise InputError(f"p must be an odd prime below 2^31, got {p!r}")
    return p


def inv_mod(a: int, p: int) -> int:
    a %= p
    if a == 0:
        raise ZeroDivisionError(f"no inverse of 0 in F_{p}")
    return pow(a, p - 2, p)


def sqrt_table(p: int) -> dict[int, int]:
    """Map of squares to a distinguished square root in F_p."""
    table: dict[int, int] = {}
    for x in range((p + 1) // 2 + 1):
        table.setdefault(x * x % p, x)
    return table


class FieldElement:
    """A residue in F_p with operator syntax; immutable and hashable."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int):
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "value", value % p)

    def __setattr__(self, *_):
        raise AttributeError("FieldElement is immutable")

    def _coerce(self, other) -> "FieldElement":
        if isinstance(other, FieldElement):
            if other.p != self.p:
                raise ValueError(f"mixed moduli {self.p} and {other.p}")
            return other
        if isinstance(other, int):
            return FieldElement(other, self.p)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else FieldElement(self.value + o.value, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else FieldElement(self.value - o.value, self.p)

    def __rsub__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else FieldElement(o.value - self.value, self.p)

    def __mul__(self, other):
        o = self._coerce(other)
        return o if o is NotImplemented else FieldElement(self.value * o.value, self.p)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return FieldElement(self.value * inv_mod(o.value, self.p), self.p)

    def __neg__(self):
        return FieldElement(-self.value, self.p)

    def inverse(self) -> "FieldElement":
        return FieldElement(inv_mod(self.value, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self):
        return hash((self.value, self.p))

    def __bool__(self):
        return self.value != 0

    def __repr__(self):
        return f"{self.value} (mod {self.p})"
