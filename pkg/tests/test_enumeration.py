import pytest

from dormantlab.errors import InputError
from dormantlab.oper import CompanionOper
from dormantlab.poly import Poly
from dormantlab.sl2 import NTable, enumerate_dormant_sl2, ntable, radii_of

P5_COUNTS = {(1, 1, 1): 1, (1, 2, 2): 1, (2, 2, 2): 1}
P7_COUNTS = {
    (1, 1, 1): 1,
    (1, 2, 2): 1,
    (1, 3, 3): 1,
    (2, 2, 3): 1,
    (2, 3, 3): 1,
    (3, 3, 3): 1,
}


def test_p5_enumeration_frozen(enum_cache):
    enumeration, table = enum_cache(5)
    pots = sorted(tuple(o.potentials[0].coeffs) for o, _ in enumeration)
    assert pots == [(1,), (1, 0, 3), (4,), (4, 2, 3), (4, 4, 3)]
    assert table.counts == P5_COUNTS
    assert table.labels == (1, 2)
    assert table.total() == 5


def test_p7_enumeration_frozen(enum_cache):
    _, table = enum_cache(7)
    assert table.counts == P7_COUNTS
    assert table.total() == 14


@pytest.mark.parametrize("p", [5, 7, 11])
def test_n_entries_zero_or_one(enum_cache, p):
    _, table = enum_cache(p)
    assert set(table.counts.values()) <= {0, 1}


def test_labels_canonical(enum_cache):
    for p in (5, 7, 13):
        _, table = enum_cache(p)
        assert all(0 <= lab <= (p - 1) // 2 for lab in table.labels)


def test_ntable_lookup_symmetric(enum_cache):
    _, table = enum_cache(7)
    assert table.n((2, 3, 2)) == table.n((2, 2, 3)) == table.n((3, 2, 2))
    with pytest.raises(InputError):
        table.n((1, 2))
    with pytest.raises(InputError):
        table.n((0, 1, 1))  # 0 does not occur at p=7


def test_radii_requires_rank2():
    oper = CompanionOper([Poly([1], 5), Poly([0], 5)], 5)
    with pytest.raises(InputError):
        radii_of(oper)


def test_radii_coordinate_swap(enum_cache):
    # x -> 1 - x swaps the marked points 0 and 1 and fixes infinity;
    # on the potential it acts by f(x) -> f(1 - x)
    enumeration, _ = enum_cache(5)
    for oper, radii in enumeration:
        f = oper.potentials[0]
        swapped = CompanionOper([f.compose_affine(-1, 1)], 5)
        assert radii_of(swapped) == (radii[1], radii[0], radii[2])


def test_enumeration_matches_direct_p_curvature(enum_cache):
    # the raw-list fast path agrees with the literal matrix p-curvature
    enumeration, _ = enum_cache(5)
    dormant = {tuple(o.potentials[0].coeffs) for o, _ in enumeration}
    for c0 in range(5):
        for c2 in range(5):
            oper = CompanionOper([Poly([c0, 0, c2], 5)], 5)
            key = tuple(oper.potentials[0].coeffs)
            assert (key in dormant) == oper.is_dormant()


def test_ntable_construction_validates():
    with pytest.raises(InputError):
        NTable(p=5, labels=(1,), counts={}).n((1, 1))
