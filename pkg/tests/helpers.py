"""Brute-force oracles and random-instance generators shared by the tests.

Everything here is deliberately independent of the library's fast paths:
chordality is decided by scanning for induced cycles, independence numbers
by full subset enumeration, and random chordal graphs are built directly
by simplicial-vertex addition.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations

from chordalbounds import EventSystem, Graph, build_graph
from chordalbounds.values import RATIONAL, REAL


def bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _connected_subset(g: Graph, subset) -> bool:
    subset = list(subset)
    smask = 0
    for v in subset:
        smask |= 1 << v
    seen = 1 << subset[0]
    frontier = seen
    while frontier:
        reached = 0
        for v in bits(frontier):
            reached |= g.adj[v]
        frontier = reached & smask & ~seen
        seen |= frontier
    return seen == smask


def brute_force_is_chordal(g: Graph) -> bool:
    """Search every vertex subset for an induced cycle of length >= 4."""
    n = g.vertex_count
    for size in range(4, n + 1):
        for sub in combinations(range(n), size):
            smask = 0
            for v in sub:
                smask |= 1 << v
            if any((g.adj[v] & smask).bit_count() != 2 for v in sub):
                continue
            if _connected_subset(g, sub):
                return False
    return True


def brute_force_alpha(g: Graph) -> int:
    """Maximum independent set size by full subset enumeration."""
    edge_masks = [(1 << u) | (1 << v) for u, v in g.edges]
    best = 0
    for mask in range(1 << g.vertex_count):
        if all(mask & em != em for em in edge_masks):
            best = max(best, mask.bit_count())
    return best


def random_graph(rng, n: int, density: float = 0.5) -> Graph:
    edges = [e for e in combinations(range(n), 2) if rng.random() < density]
    return build_graph(n, edges)


def random_chordal_graph(rng, n: int) -> Graph:
    """Chordal by construction: every vertex joins a clique of the graph
    built so far (possibly the empty clique, keeping disconnected graphs
    in the mix)."""
    edges = []
    adj = [set() for _ in range(n)]
    for v in range(1, n):
        if rng.random() < 0.15:
            continue
        u = rng.randrange(v)
        clique = [u]
        candidates = sorted(adj[u])
        rng.shuffle(candidates)
        for w in candidates:
            if all(w in adj[x] for x in clique) and rng.random() < 0.7:
                clique.append(w)
        chosen = [w for w in clique if rng.random() < 0.9] or [u]
        for w in chosen:
            edges.append((w, v))
            adj[w].add(v)
            adj[v].add(w)
    return build_graph(n, edges)


def random_real_system(rng, n_events: int, max_outcomes: int = 64) -> EventSystem:
    m = rng.randint(1, max_outcomes)
    raw = [0.0 if rng.random() < 0.1 else rng.random() for _ in range(m)]
    if not any(raw):
        raw[0] = 1.0
    total = sum(raw)
    weights = [x / total for x in raw]
    events = [rng.getrandbits(m) for _ in range(n_events)]
    return EventSystem(REAL, weights, events)


def random_rational_system(rng, n_events: int, max_outcomes: int = 12) -> EventSystem:
    m = rng.randint(1, max_outcomes)
    raw = [rng.randint(0, 6) for _ in range(m)]
    if not any(raw):
        raw[0] = 1
    total = sum(raw)
    weights = [Fraction(x, total) for x in raw]
    events = [rng.getrandbits(m) for _ in range(n_events)]
    return EventSystem(RATIONAL, weights, events)
