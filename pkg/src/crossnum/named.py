"""Constructors for the small named graphs used as fixtures."""

from __future__ import annotations

from itertools import combinations

from .graph import Graph

__all__ = [
    "NAMED_GRAPHS",
    "complete",
    "complete_bipartite",
    "coxeter",
    "cube",
    "desargues",
    "heawood",
    "lcf",
    "mcgee",
    "mobius_kantor",
    "pappus",
    "petersen",
    "prism",
]


def complete(n: int) -> Graph:
    return Graph(n, combinations(range(n), 2))


def complete_bipartite(a: int, b: int) -> Graph:
    return Graph(a + b, ((i, a + j) for i in range(a) for j in range(b)))


def lcf(shifts: list[int], repeats: int) -> Graph:
    """Hamiltonian cubic graph from LCF notation ``[shifts]^repeats``."""
    n = len(shifts) * repeats
    edges = {tuple(sorted((i, (i + 1) % n))) for i in range(n)}
    for i in range(n):
        j = (i + shifts[i % len(shifts)]) % n
        edges.add(tuple(sorted((i, j))))
    return Graph(n, edges)


def prism() -> Graph:
    """Triangular prism: triangles ``{0,1,2}`` and ``{3,4,5}``, rungs ``i -- i+3``."""
    return Graph(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])


def cube() -> Graph:
    return Graph(8, [(a, b) for a in range(8) for b in range(a + 1, 8) if bin(a ^ b).count("1") == 1])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    return Graph(10, outer + inner + spokes)


def heawood() -> Graph:
    return lcf([5, -5], 7)


def mobius_kantor() -> Graph:
    return lcf([5, -5], 8)


def pappus() -> Graph:
    return lcf([5, 7, -7, 7, -7, -5], 3)


def desargues() -> Graph:
    return lcf([5, -5, 9, -9], 5)


def mcgee() -> Graph:
    return lcf([12, 7, -7], 8)


def coxeter() -> Graph:
    # three 7-cycles with steps 1, 2, 3 plus a centre joined to one vertex of each
    edges = []
    for i in range(7):
        edges.append((i, (i + 1) % 7))
        edges.append((7 + i, 7 + (i + 2) % 7))
        edges.append((14 + i, 14 + (i + 3) % 7))
        edges += [(21 + i, i), (21 + i, 7 + i), (21 + i, 14 + i)]
    return Graph(28, edges)


NAMED_GRAPHS = {
    "K4": lambda: complete(4),
    "K3,3": lambda: complete_bipartite(3, 3),
    "K5": lambda: complete(5),
    "K6": lambda: complete(6),
    "prism": prism,
    "cube": cube,
    "petersen": petersen,
    "heawood": heawood,
    "mobius-kantor": mobius_kantor,
    "pappus": pappus,
    "desargues": desargues,
    "mcgee": mcgee,
    "coxeter": coxeter,
}
