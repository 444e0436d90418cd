import itertools

import pytest

from dormantlab.errors import (
    InputError,
    NotAssociative,
    NotNearInteger,
)
from dormantlab.fusion import build_ring, casimir, characters, degree
from dormantlab.sl2 import NTable


def null_ring():
    table = NTable(p=5, labels=(1,), counts={(1, 1, 1): 0})
    return build_ring(table)


def test_build_ring_p5(ring_cache):
    table, ring, _ = ring_cache(5)
    assert ring.dim == 3
    assert ring.product(1, 1) == {1: 1, 2: 0}
    assert ring.product(1, 2) == {1: 0, 2: 1}
    assert ring.product(2, 2) == {1: 1, 2: 1}


def test_null_product_ring_valid():
    ring = null_ring()
    assert ring.dim == 2
    assert ring.product(1, 1) == {1: 0}


def test_corrupted_table_not_associative(ring_cache):
    table, _, _ = ring_cache(5)
    counts = dict(table.counts)
    counts[(1, 1, 1)] = counts.get((1, 1, 1), 0) + 1  # bump one entry
    bad = NTable(p=5, labels=table.labels, counts=counts)
    with pytest.raises(NotAssociative) as err:
        build_ring(bad)
    assert "associativity fails at" in str(err.value)


def test_negative_entry_rejected(ring_cache):
    table, _, _ = ring_cache(5)
    counts = dict(table.counts)
    counts[(1, 1, 1)] = -1
    with pytest.raises(InputError):
        build_ring(NTable(p=5, labels=table.labels, counts=counts))


def test_characters_count_and_unit(ring_cache):
    table, ring, chars = ring_cache(5)
    assert len(chars) == len(table.labels) + 1
    for j in range(len(chars)):
        assert abs(chars.of(j, "unit") - 1) < 1e-8


def test_characters_multiplicative(ring_cache):
    table, ring, chars = ring_cache(7)
    for j in range(len(chars)):
        for a in table.labels:
            for b in table.labels:
                lhs = chars.of(j, a) * chars.of(j, b)
                rhs = sum(table.n((a, b, c)) * chars.of(j, c) for c in table.labels)
                assert abs(lhs - rhs) < 1e-7


def test_characters_reproducible(ring_cache):
    _, ring, _ = ring_cache(5)
    assert characters(ring, seed=3).values == characters(ring, seed=3).values


def test_null_ring_characters():
    ring = null_ring()
    chars = characters(ring)
    assert len(chars) == 2
    for j in range(2):
        assert abs(chars.of(j, 1)) < 1e-8
        assert abs(chars.of(j, "unit") - 1) < 1e-8


def test_casimir_values(ring_cache):
    table, ring, chars = ring_cache(5)
    cas = casimir(ring)
    assert cas.coefficients == {1: 2, 2: 1}
    # chi(Cas) = sum over labels of chi(lambda)^2
    for j, vals in enumerate(chars.values):
        direct = sum(chars.of(j, lab) ** 2 for lab in table.labels)
        via_cas = sum(n * chars.of(j, lab) for lab, n in cas.coefficients.items())
        assert abs(direct - via_cas) < 1e-8


def test_casimir_null_ring():
    assert casimir(null_ring()).is_zero()


def test_degree_recovers_structure_constants(ring_cache):
    table, ring, chars = ring_cache(5)
    for triple in itertools.product(table.labels, repeat=3):
        assert degree(ring, 0, 3, triple, chars) == table.n(triple)


def test_degree_rho_permutation_invariant(ring_cache):
    table, ring, chars = ring_cache(7)
    rho = (1, 2, 3, 3)
    values = {degree(ring, 0, 4, perm, chars) for perm in itertools.permutations(rho)}
    assert len(values) == 1


def test_degree_genus1_pairing(ring_cache):
    table, ring, chars = ring_cache(7)
    for lam in table.labels:
        expected = sum(table.n((lam, g, g)) for g in table.labels)
        assert degree(ring, 1, 1, (lam,), chars) == expected


def test_degree_input_validation(ring_cache):
    _, ring, chars = ring_cache(5)
    with pytest.raises(InputError):
        degree(ring, 0, 2, (1, 1), chars)  # 2g - 2 + r = 0
    with pytest.raises(InputError):
        degree(ring, 0, 3, (1, 1), chars)  # wrong rho length
    with pytest.raises(InputError):
        degree(ring, 0, 3, (1, 1, 9), chars)  # unknown label


def test_degree_residual_guard(ring_cache):
    # a table that is associative but numerically inconsistent is hard to
    # fabricate; instead check the guard trips on a doctored character set
    from dormantlab.fusion import CharacterSet

    _, ring, _ = ring_cache(5)
    fake = CharacterSet(
        basis=("unit", 1, 2), values=((1 + 0j, 0.7 + 0j, 0.1 + 0j),), tol=1e-9
    )
    with pytest.raises(NotNearInteger):
        degree(ring, 1, 1, (1,), fake)
