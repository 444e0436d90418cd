"""Trivalent graphs with legs and the edge-labeling factorization sum.

A graph of type (g, r) stands for a totally degenerate curve: every vertex
is trivalent, internal edges are unordered pairs of half-edges (loops and
multi-edges allowed), and r ordered legs carry the external labels.  The
degree of the graph against an N-table is the sum over all internal edge
labelings of the product over vertices of N on the incident label triple.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from .errors import ComplexityRefusal, InputError, TypeMismatch
from .sl2 import NTable

DEFAULT_BUDGET = 10**8
BUDGET_ENV = "DORMANT_OPER_BUDGET"


def _budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if raw is None:
        return DEFAULT_BUDGET
    try:
        return int(raw)
    except ValueError:
        raise InputError(f"{BUDGET_ENV} must be an integer, got {raw!r}")


@dataclass(frozen=True)
class DegenerationGraph:
    """Half-edge incidence model of a trivalent graph with legs.

    `vertices[i]` is the tuple of half-edge ids at vertex i (always 3 of
    them); `edges` pairs up internal half-edges; `legs` lists the external
    half-edges in marked-point order.
    """

    vertices: tuple  # tuple of 3-tuples of half-edge ids
    edges: tuple  # tuple of 2-tuples of half-edge ids
    legs: tuple  # tuple of half-edge ids

    def __post_init__(self):
        seen: list = []
        for v in self.vertices:
            if len(v) != 3:
                raise InputError("every vertex must be trivalent")
            seen.extend(v)
        if len(seen) != len(set(seen)):
            raise InputError("half-edge ids must be distinct")
        paired = [h for e in self.edges for h in e]
        if sorted(paired + list(self.legs)) != sorted(seen):
            raise InputError("edges + legs must partition the half-edges")
        if len(set(paired)) != len(paired):
            raise InputError("a half-edge may appear in only one edge")

    @property
    def r(self) -> int:
        return len(self.legs)

    @property
    def genus(self) -> int:
        """First Betti number of the connected graph: E - V + 1."""
        return len(self.edges) - len(self.vertices) + 1

    def type_matches(self, g: int, r: int) -> bool:
        return self.genus == g and self.r == r


def canonical_graphs(g: int, r: int) -> list[DegenerationGraph]:
    """Hand-built graphs for each small type, two witnesses when they exist."""
    if 2 * g - 2 + r <= 0:
        raise InputError(f"(g, r) = ({g}, {r}) is not a hyperbolic type")
    key = (g, r)
    if key == (0, 3):
        return [DegenerationGraph(vertices=((0, 1, 2),), edges=(), legs=(0, 1, 2))]
    if key == (1, 1):
        return [DegenerationGraph(vertices=((0, 1, 2),), edges=((0, 1),), legs=(2,))]
    if key == (0, 4):
        # two ways to split the four legs across the bridge
        a = DegenerationGraph(
            vertices=((0, 1, 2), (3, 4, 5)), edges=((2, 3),), legs=(0, 1, 4, 5)
        )
        b = DegenerationGraph(
            vertices=((0, 1, 2), (3, 4, 5)), edges=((2, 3),), legs=(0, 4, 1, 5)
        )
        return [a, b]
    if key == (2, 0):
        theta = DegenerationGraph(
            vertices=((0, 1, 2), (3, 4, 5)), edges=((0, 3), (1, 4), (2, 5)), legs=()
        )
        dumbbell = DegenerationGraph(
            vertices=((0, 1, 2), (3, 4, 5)), edges=((0, 1), (2, 3), (4, 5)), legs=()
        )
        return [theta, dumbbell]
    if key == (1, 2):
        # loop + bridge + two-leg vertex, and the double-edge chain
        a = DegenerationGraph(
            vertices=((0, 1, 2), (3, 4, 5)), edges=((0, 1), (2, 3)), legs=(4, 5)
        )
        b = DegenerationGraph(
            vertices=((0, 1, 2), (3, 4, 5)), edges=((0, 3), (1, 4)), legs=(2, 5)
        )
        return [a, b]
    raise InputError(f"no canonical graph family stored for type ({g}, {r})")


def graph_degree(graph: DegenerationGraph, table: NTable, rho) -> int:
    """Factorization sum over internal edge labelings."""
    rho = tuple(rho)
    if len(rho) != graph.r:
        raise TypeMismatch(f"rho has length {len(rho)}, graph has {graph.r} legs")
    for lab in rho:
        if lab not in table.labels:
            raise TypeMismatch(f"label {lab!r} not in table")
    labels = table.labels
    n_edges = len(graph.edges)
    count = len(labels) ** n_edges if n_edges else 1
    budget = _budget()
    if count > budget:
        raise ComplexityRefusal(f"{count} edge labelings exceed budget {budget}")
    leg_label = dict(zip(graph.legs, rho))
    total = 0
    for assignment in itertools.product(labels, repeat=n_edges):
        half_label = dict(leg_label)
        for (h1, h2), lab in zip(graph.edges, assignment):
            half_label[h1] = lab
            half_label[h2] = lab
        prod = 1
        for v in graph.vertices:
            prod *= table.n(tuple(half_label[h] for h in v))
            if not prod:
                break
        total += prod
    return total


__all__ = ["DegenerationGraph", "canonical_graphs", "graph_degree", "DEFAULT_BUDGET", "BUDGET_ENV"]
