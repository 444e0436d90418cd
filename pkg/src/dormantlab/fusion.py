"""Pseudo-fusion-ring engine over an N-table of structure constants.

The ring is the unitization of the free abelian group on the labels, with
lambda * mu = sum_gamma N(lambda, mu, gamma) gamma.  Characters come from a
simultaneous eigenvector extraction on the regular representation; the
degree formula sums chi(Cas)^(g-1) prod chi(rho_i) over characters and
rounds under a residual guard.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    CasimirSingular,
    InputError,
    NonSemisimple,
    NotAssociative,
    NotCommutative,
    NotNearInteger,
)
from .sl2 import NTable

CHAR_TOL = 1e-9
INT_TOL = 1e-6
MAX_RETRIES = 8


@dataclass(frozen=True)
class FusionRing:
    labels: tuple
    table: NTable

    @property
    def dim(self) -> int:
        """Dimension of the unitization."""
        return len(self.labels) + 1

    def product(self, a, b) -> dict:
        """a * b as a coefficient vector over labels (no unit component)."""
        return {c: self.table.n((a, b, c)) for c in self.labels}

    def mult_matrix(self, label) -> np.ndarray:
        """Regular-representation matrix on the basis (unit, labels...)."""
        d = self.dim
        m = np.zeros((d, d))
        idx = {lab: i + 1 for i, lab in enumerate(self.labels)}
        m[idx[label], 0] = 1.0  # label * unit = label
        for b in self.labels:
            for c, n in self.product(label, b).items():
                m[idx[c], idx[b]] = float(n)
        return m


def build_ring(table: NTable) -> FusionRing:
    """Validate the fusion axioms and wrap the table as a ring."""
    labels = tuple(table.labels)
    for key, n in table.counts.items():
        if n < 0:
            raise InputError(f"negative structure constant at {key}")
    # symmetry in the first two arguments is commutativity of the product;
    # sorted-key storage makes it automatic, so check the access path
    for a in labels:
        for b in labels:
            for c in labels:
                if table.n((a, b, c)) != table.n((b, a, c)):
                    raise NotCommutative(f"N not symmetric at {(a, b, c)}")
    ring = FusionRing(labels, table)
    for a in labels:
        for b in labels:
            ab = ring.product(a, b)
            for c in labels:
                left = {}
                for m, k in ab.items():
                    if k:
                        for g, n in ring.product(m, c).items():
                            left[g] = left.get(g, 0) + k * n
                bc = ring.product(b, c)
                right = {}
                for m, k in bc.items():
                    if k:
                        for g, n in ring.product(a, m).items():
                            right[g] = right.get(g, 0) + k * n
                for g in labels:
                    if left.get(g, 0) != right.get(g, 0):
                        raise NotAssociative(
                            f"associativity fails at ({a}, {b}, {c}): "
                            f"coefficient of {g} is {left.get(g, 0)} vs {right.get(g, 0)}"
                        )
    return ring


@dataclass(frozen=True)
class CharacterSet:
    """Complex characters of the unitization, unit value first."""

    basis: tuple  # ("unit",) + labels
    values: tuple  # one tuple of complex values per character
    tol: float

    def __len__(self):
        return len(self.values)

    def of(self, char_index: int, label) -> complex:
        return self.values[char_index][self.basis.index(label)]


def characters(ring: FusionRing, seed: int = 0) -> CharacterSet:
    """Extract all characters via a random combination of multiplication maps."""
    d = ring.dim
    basis = ("unit",) + ring.labels
    mats = [np.eye(d)] + [ring.mult_matrix(lab) for lab in ring.labels]
    rng = np.random.default_rng(seed)
    for _ in range(MAX_RETRIES):
        coeffs = rng.standard_normal(d)
        t = sum(c * m for c, m in zip(coeffs, mats))
        _, vecs = np.linalg.eig(t)
        out = []
        scale = max(1.0, max(np.abs(np.linalg.eigvals(m)).max() for m in mats))
        ok = True
        for j in range(d):
            v = vecs[:, j]
            pivot = int(np.argmax(np.abs(v)))
            vals = tuple(complex((m @ v)[pivot] / v[pivot]) for m in mats)
            # multiplicativity is the real test of a simple eigenvector
            for a in range(1, d):
                for b in range(a, d):
                    lhs = vals[a] * vals[b]
                    rhs = sum(
                        ring.table.n((basis[a], basis[b], basis[c])) * vals[c]
                        for c in range(1, d)
                    )
                    if abs(lhs - rhs) > CHAR_TOL * scale * scale:
                        ok = False
                        break
                if not ok:
                    break
            if not ok:
                break
            out.append(vals)
        if ok and len(out) == d:
            out.sort(key=lambda vs: tuple((round(z.real, 6), round(z.imag, 6)) for z in vs))
            return CharacterSet(basis=basis, values=tuple(out), tol=CHAR_TOL * scale * scale)
    raise NonSemisimple("regular representation not diagonalizable within tolerance")


@dataclass(frozen=True)
class CasimirElement:
    coefficients: dict  # label -> int

    def is_zero(self) -> bool:
        return not any(self.coefficients.values())


def casimir(ring: FusionRing) -> CasimirElement:
    """Cas = sum over labels of lambda * lambda (unit excluded from the sum)."""
    coeffs = {c: 0 for c in ring.labels}
    for lam in ring.labels:
        for c, n in ring.product(lam, lam).items():
            coeffs[c] += n
    return CasimirElement(coefficients=coeffs)


def _casimir_values(ring: FusionRing, chars: CharacterSet) -> list[complex]:
    cas = casimir(ring)
    out = []
    for vals in chars.values:
        out.append(
            sum(
                n * vals[chars.basis.index(lab)]
                for lab, n in cas.coefficients.items()
            )
        )
    return out


def degree(ring: FusionRing, g: int, r: int, rho, chars: CharacterSet | None = None) -> int:
    """Verlinde-type degree: round of sum_chi chi(Cas)^(g-1) prod_i chi(rho_i).

    Characters with chi(Cas) = 0 contribute nothing for g >= 1; for g = 0
    they are excluded from the sum (the inverse power is undefined there),
    and the call fails with CasimirSingular only when no character remains.
    """
    rho = tuple(rho)
    if 2 * g - 2 + r <= 0:
        raise InputError(f"(g, r) = ({g}, {r}) is not a hyperbolic type")
    if len(rho) != r:
        raise InputError(f"rho has length {len(rho)}, expected {r}")
    for lab in rho:
        if lab not in ring.labels:
            raise InputError(f"label {lab!r} not in ring")
    if chars is None:
        chars = characters(ring)
    cas_vals = _casimir_values(ring, chars)
    sing_tol = max(chars.tol, 1e-9)
    total = 0.0 + 0.0j
    used = 0
    for vals, cas in zip(chars.values, cas_vals):
        if abs(cas) <= sing_tol:
            continue  # vanishing term for g >= 1; excluded for g = 0
        term = cas ** (g - 1)
        for lab in rho:
            term *= vals[chars.basis.index(lab)]
        total += term
        used += 1
    if g == 0 and used == 0:
        raise CasimirSingular("every character kills the Casimir element")
    value = int(round(total.real))
    residual = abs(total - value)
    if residual >= INT_TOL:
        raise NotNearInteger(f"degree sum {total} is {residual:.3g} from an integer")
    if value < 0:
        raise NotNearInteger(f"degree rounded to a negative integer {value}")
    return value


__all__ = [
    "CasimirElement",
    "CharacterSet",
    "FusionRing",
    "build_ring",
    "casimir",
    "characters",
    "degree",
]
