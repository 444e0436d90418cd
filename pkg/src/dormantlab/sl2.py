"""Enumeration of dormant rank-2 opers on the 3-pointed line.

A rank-2 companion oper is a single potential f = c0 + c1 x + c2 x^2; the
whole moduli space at a given prime is the cube F_p^3, which we scan with a
raw coefficient-list p-curvature test.  Each dormant oper gets a triple of
radii (one per marked point), and the tallies of sorted triples form the
N-table that seeds the fusion ring.
"""

from __future__ import annotations

from dataclasses import dataclass

from .connection import theta_p_iterate
from .errors import InputError, UnexpectedExponents
from .field import check_odd_prime, sqrt_table
from .oper import CompanionOper
from .poly import Poly, _add, _divmod, _mul, _scale, _theta


def _raw_is_dormant(f: list[int], p: int) -> bool:
    """p-curvature test for theta^2 + f on raw coefficient lists.

    Iterates v -> (theta v1 + f v2, theta v2 - v1) p times from each basis
    vector and compares against g times the first iterate, where
    theta^[p] = g * x(x-1) d/dx.
    """
    g = _divmod(list(theta_p_iterate(p).coeffs), [0, -1, 1], p)[0]
    for start in (([1], []), ([], [1])):
        v1, v2 = start
        first = None
        for step in range(p):
            v1, v2 = (
                _add(_theta(v1, p), _mul(f, v2, p), p),
                _add(_theta(v2, p), _scale(v1, -1, p), p),
            )
            if step == 0:
                first = (v1, v2)
        for w, fst in zip((v1, v2), first):
            if _add(w, _scale(_mul(g, fst, p), -1, p), p):
                return False
    return True


def radii_of(oper: CompanionOper) -> tuple[int, int, int]:
    """Radii (at 0, 1, infinity) of a dormant rank-2 oper.

    The squared exponent difference at the three points is -4 f(0),
    -4 f(1) and 1 - 4 c2; the radius is the difference folded into
    [0, (p-1)/2].  Non-square differences cannot occur for dormant opers
    and are reported as UnexpectedExponents.
    """
    if oper.order != 2:
        raise InputError("radii are defined for rank-2 opers")
    p = oper.p
    f = oper.potentials[0]
    c2 = f.coeffs[2] if f.degree >= 2 else 0
    diffs = (-4 * f(0) % p, -4 * f(1) % p, (1 - 4 * c2) % p)
    roots = sqrt_table(p)
    out = []
    for point, d in zip((0, 1, "inf"), diffs):
        r = roots.get(d)
        if r is None:
            raise UnexpectedExponents(
                f"squared exponent difference {d} at {point} is not a square mod {p}"
            )
        out.append(min(r, p - r))
    return tuple(out)


@dataclass(frozen=True)
class NTable:
    """Structure constants N(a, b, c), stored once per sorted triple.

    N is symmetric in its three arguments, so `counts` keys sorted triples
    and `n` accepts any ordering.  `total` sums over all ordered triples,
    which is the number of enumerated opers when the table comes from a
    dormant-oper sweep.
    """

    p: int
    labels: tuple[int, ...]
    counts: dict  # sorted triple -> N value

    def n(self, triple) -> int:
        key = tuple(sorted(triple))
        if len(key) != 3 or any(t not in self.labels for t in key):
            raise InputError(f"triple {triple} uses labels outside {self.labels}")
        return self.counts.get(key, 0)

    def total(self) -> int:
        return sum(c * _arrangements(key) for key, c in self.counts.items())


def enumerate_dormant_sl2(p: int) -> list[tuple[CompanionOper, tuple[int, int, int]]]:
    """All dormant rank-2 opers at p, with their radii, in coefficient order."""
    check_odd_prime(p)
    out = []
    for c0 in range(p):
        for c1 in range(p):
            for c2 in range(p):
                f = [c0, c1, c2]
                while f and f[-1] == 0:
                    f.pop()
                if _raw_is_dormant(f, p):
                    oper = CompanionOper([Poly(f, p)], p)
                    out.append((oper, radii_of(oper)))
    return out


def _arrangements(key) -> int:
    """Number of distinct orderings of a sorted triple."""
    from itertools import permutations

    return len(set(permutations(key)))


def ntable(p: int, enumeration=None) -> NTable:
    """Tally the enumeration into an N-table over the occurring labels.

    Each oper contributes to the ordered triple of its radii; permutation
    symmetry of the ordered tally is validated before collapsing to one
    entry per sorted triple.
    """
    from itertools import permutations

    if enumeration is None:
        enumeration = enumerate_dormant_sl2(p)
    ordered: dict = {}
    labels: set[int] = set()
    for _, radii in enumeration:
        ordered[radii] = ordered.get(radii, 0) + 1
        labels.update(radii)
    counts: dict = {}
    for key in sorted({tuple(sorted(k)) for k in ordered}):
        vals = {ordered.get(perm, 0) for perm in set(permutations(key))}
        if len(vals) != 1:
            raise InputError(f"radii tally not permutation symmetric at {key}")
        counts[key] = vals.pop()
    return NTable(p=p, labels=tuple(sorted(labels)), counts=counts)


__all__ = ["NTable", "enumerate_dormant_sl2", "ntable", "radii_of"]
