"""Shared fixtures: expensive enumerations and witnesses are session-cached."""

from __future__ import annotations

import pytest

from dormantlab.fusion import build_ring, characters
from dormantlab.oper import CompanionOper, symmetric_power, to_companion
from dormantlab.sl2 import enumerate_dormant_sl2, ntable


@pytest.fixture(scope="session")
def enum_cache():
    """p -> (enumeration list, NTable) for the primes the suite sweeps."""
    cache = {}

    def get(p):
        if p not in cache:
            enumeration = enumerate_dormant_sl2(p)
            cache[p] = (enumeration, ntable(p, enumeration))
        return cache[p]

    return get


@pytest.fixture(scope="session")
def ring_cache(enum_cache):
    """p -> (NTable, FusionRing, CharacterSet)."""
    cache = {}

    def get(p):
        if p not in cache:
            _, table = enum_cache(p)
            ring = build_ring(table)
            cache[p] = (table, ring, characters(ring))
        return cache[p]

    return get


@pytest.fixture(scope="session")
def dormant_bases_17(enum_cache):
    enumeration, _ = enum_cache(17)
    return [oper for oper, _ in enumeration]


@pytest.fixture(scope="session")
def sym6_witnesses(dormant_bases_17):
    """Three order-7 witnesses from distinct dormant rank-2 bases at p=17."""
    out = []
    for base in dormant_bases_17[:3]:
        conn, _ = symmetric_power(base, 6)
        out.append(to_companion(conn))
    return out


@pytest.fixture(scope="session")
def client():
    import warnings

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        from fastapi.testclient import TestClient

    from dormantlab.service.app import app

    return TestClient(app, raise_server_exceptions=False)
