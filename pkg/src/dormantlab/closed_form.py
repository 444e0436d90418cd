"""Closed-form degree counts used as independent oracles.

Both formulas are trigonometric / root-of-unity sums whose values are small
integers; they are evaluated in double precision with compensated summation
and rounded under a residual guard.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass

from .errors import ComplexityRefusal, InputError, NotNearInteger
from .field import check_odd_prime

RESIDUAL_TOL = 1e-6
DEFAULT_TERM_BUDGET = 10**8


@dataclass(frozen=True)
class ClosedFormResult:
    value: int
    residual: float
    terms: int


def _rounded(raw: complex, terms: int, what: str) -> ClosedFormResult:
    value = int(round(raw.real if isinstance(raw, complex) else raw))
    residual = abs(raw - value)
    if residual >= RESIDUAL_TOL:
        raise NotNearInteger(f"{what} = {raw} is {residual:.3g} from an integer")
    return ClosedFormResult(value=value, residual=residual, terms=terms)


def _kahan(terms) -> float:
    total, carry = 0.0, 0.0
    for t in terms:
        y = t - carry
        s = total + y
        carry = (s - total) - y
        total = s
    return total


def verlinde_sl2(p: int, g: int, r: int) -> ClosedFormResult:
    """(p^(g-1)/2^(2g-1+r)) sum_j (1 - (-1)^j cos(j pi/p))^r / sin(j pi/p)^(2(g-1+r))."""
    check_odd_prime(p)
    if 2 * g - 2 + r <= 0:
        raise InputError(f"(g, r) = ({g}, {r}) is not a hyperbolic type")
    prefactor = p ** (g - 1) / 2 ** (2 * g - 1 + r)

    def term(j: int) -> float:
        angle = j * math.pi / p
        num = (1.0 - (-1.0) ** j * math.cos(angle)) ** r
        return num / math.sin(angle) ** (2 * (g - 1 + r))

    raw = prefactor * _kahan(term(j) for j in range(1, p))
    return _rounded(raw, p - 1, f"verlinde_sl2({p}, {g}, {r})")


def joshi_sln(p: int, n: int, g: int, budget: int = DEFAULT_TERM_BUDGET) -> ClosedFormResult:
    """p^((n-1)(g-1)-1) sum over distinct p-th root n-tuples, via unordered tuples.

    The summand is symmetric in the tuple, so the ordered sum equals n!
    times the sum over combinations; the n! in the denominator cancels.
    """
    check_odd_prime(p)
    if g < 2:
        raise InputError("genus must be >= 2")
    if 2 * n >= p:
        raise InputError(f"need 2n < p, got n = {n}, p = {p}")
    count = math.comb(p, n) * math.factorial(n)
    if count > budget:
        raise ComplexityRefusal(f"{count} summands exceed budget {budget}")
    roots = [complex(math.cos(2 * math.pi * k / p), math.sin(2 * math.pi * k / p)) for k in range(p)]
    e = (n - 1) * (g - 1)
    total = 0.0 + 0.0j
    terms = 0
    for combo in itertools.combinations(range(p), n):
        zs = [roots[k] for k in combo]
        prod = 1.0 + 0.0j
        for z in zs:
            prod *= z
        denom = 1.0 + 0.0j
        for i in range(n):
            for j in range(n):
                if i != j:
                    denom *= zs[i] - zs[j]
        total += prod**e / denom ** (g - 1)
        terms += 1
    raw = p ** (e - 1) * total
    if abs(raw.imag) >= RESIDUAL_TOL:
        raise NotNearInteger(f"joshi_sln({p}, {n}, {g}) has imaginary part {raw.imag:.3g}")
    return _rounded(raw, terms, f"joshi_sln({p}, {n}, {g})")


__all__ = ["ClosedFormResult", "joshi_sln", "verlinde_sl2", "RESIDUAL_TOL"]
