"""Choosing the graph that optimizes a bound.

A minimum spanning tree of the pairwise-intersection weights maximizes the
tree lower bound with the fixed (n - 1) denominator, and a minimum-length
Hamiltonian path maximizes the path bound.  The exhaustive tree oracle
explores the true tree objective, including each candidate tree's own
independence number, at tiny n.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product

from .errors import DomainError, ResourceLimitError
from .events import EventSystem, intersection_prob
from .graphs import Graph, build_graph, independence_number

__all__ = [
    "WeightMatrix",
    "HELD_KARP_MAX_VERTICES",
    "EXHAUSTIVE_TREE_MAX_VERTICES",
    "pairwise_weights",
    "best_tree",
    "tree_weight",
    "best_path",
    "path_weight",
    "exhaustive_tree_oracle",
]

HELD_KARP_MAX_VERTICES = 15
EXHAUSTIVE_TREE_MAX_VERTICES = 7


@dataclass(frozen=True)
class WeightMatrix:
    """Symmetric pairwise intersection probabilities; the diagonal is unused."""

    n: int
    w: tuple[tuple[float, ...], ...]

    def weight(self, u: int, v: int) -> float:
        return self.w[u][v]


def pairwise_weights(sys: EventSystem) -> WeightMatrix:
    """Matrix of two-event intersection probabilities (real backend only)."""
    if sys.backend.name != "real":
        raise DomainError("pairwise weights require the real backend")
    n = sys.event_count
    rows = []
    for u in range(n):
        row = []
        for v in range(n):
            row.append(0.0 if u == v else intersection_prob(sys, (u, v)))
        rows.append(tuple(row))
    return WeightMatrix(n, tuple(rows))


class _UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        return True


def best_tree(wm: WeightMatrix, objective: str = "minimize-weight") -> Graph:
    """Kruskal spanning tree of the complete weighted graph.

    "minimize-weight" maximizes the fixed-denominator tree lower bound;
    "maximize-weight" minimizes the tree upper bound.  Ties break on
    lexicographic edge order, so the result is deterministic.
    """
    if objective not in ("minimize-weight", "maximize-weight"):
        raise DomainError(f"unknown objective {objective!r}")
    n = wm.n
    sign = 1.0 if objective == "minimize-weight" else -1.0
    edges = sorted(
        ((u, v) for u in range(n) for v in range(u + 1, n)),
        key=lambda e: (sign * wm.weight(*e), e),
    )
    uf = _UnionFind(n)
    chosen = []
    for u, v in edges:
        if uf.union(u, v):
            chosen.append((u, v))
            if len(chosen) == n - 1:
                break
    return build_graph(n, chosen)


def tree_weight(wm: WeightMatrix, tree: Graph) -> float:
    return sum(wm.weight(u, v) for u, v in tree.edges)


def path_weight(wm: WeightMatrix, order) -> float:
    order = tuple(order)
    return sum(wm.weight(a, b) for a, b in zip(order, order[1:]))


def _normalize_direction(order: tuple[int, ...]) -> tuple[int, ...]:
    reverse = order[::-1]
    return order if order <= reverse else reverse


def _held_karp_path(wm: WeightMatrix) -> tuple[int, ...]:
    n = wm.n
    if n == 1:
        return (0,)
    # cost[mask][v]: minimum weight of a path visiting exactly `mask`,
    # starting at v (v must be in mask).
    size = 1 << n
    cost = [[0.0] * n for _ in range(size)]
    for mask in range(1, size):
        if mask & (mask - 1) == 0:
            continue
        rest_bits = mask
        while rest_bits:
            low = rest_bits & -rest_bits
            v = low.bit_length() - 1
            rest_bits ^= low
            others = mask ^ (1 << v)
            best = None
            ob = others
            while ob:
                lw = ob & -ob
                w = lw.bit_length() - 1
                ob ^= lw
                candidate = wm.weight(v, w) + cost[others][w]
                if best is None or candidate < best:
                    best = candidate
            cost[mask][v] = best
    full = size - 1
    # Ties are resolved lexicographically; the slack absorbs float noise
    # from differing addition orders between equal-weight paths.
    slack = 1e-12
    optimum = min(cost[full][v] for v in range(n))
    start = min(v for v in range(n) if cost[full][v] <= optimum + slack)
    order = [start]
    mask = full
    current = start
    while mask != (1 << current):
        others = mask ^ (1 << current)
        target = cost[mask][current]
        best_next = None
        ob = others
        while ob:
            lw = ob & -ob
            w = lw.bit_length() - 1
            ob ^= lw
            if wm.weight(current, w) + cost[others][w] <= target + slack:
                best_next = w
                break
        order.append(best_next)
        mask = others
        current = best_next
    return _normalize_direction(tuple(order))


def _nearest_neighbor(wm: WeightMatrix, start: int) -> tuple[int, ...]:
    n = wm.n
    order = [start]
    remaining = set(range(n)) - {start}
    while remaining:
        here = order[-1]
        order.append(min(remaining, key=lambda v: (wm.weight(here, v), v)))
        remaining.discard(order[-1])
    return tuple(order)


def _two_opt(wm: WeightMatrix, order: tuple[int, ...]) -> tuple[int, ...]:
    n = len(order)
    path = list(order)
    improved = True
    while improved:
        improved = False
        for i in range(n - 1):
            for j in range(i + 1, n):
                delta = 0.0
                if i > 0:
                    delta += wm.weight(path[i - 1], path[j]) - wm.weight(path[i - 1], path[i])
                if j < n - 1:
                    delta += wm.weight(path[i], path[j + 1]) - wm.weight(path[j], path[j + 1])
                if delta < -1e-12:
                    path[i : j + 1] = reversed(path[i : j + 1])
                    improved = True
    return tuple(path)


def best_path(wm: WeightMatrix, mode: str = "exact") -> tuple[int, ...]:
    """Minimum-total-weight visiting order of all events.

    Exact mode runs subset dynamic programming (n <= 15) and returns the
    lexicographically least optimal order.  Heuristic mode runs nearest
    neighbor from every start plus 2-opt and carries no optimality
    guarantee.
    """
    if mode not in ("exact", "heuristic"):
        raise DomainError(f"unknown mode {mode!r}")
    n = wm.n
    if n == 0:
        raise DomainError("weight matrix is empty")
    if mode == "exact":
        if n > HELD_KARP_MAX_VERTICES:
            raise ResourceLimitError(
                f"exact path search caps at {HELD_KARP_MAX_VERTICES} vertices, got {n}"
            )
        return _held_karp_path(wm)
    best = None
    for start in range(n):
        candidate = _normalize_direction(_two_opt(wm, _nearest_neighbor(wm, start)))
        key = (path_weight(wm, candidate), candidate)
        if best is None or key < best:
            best = key
    return best[1]


def _prufer_edges(seq: tuple[int, ...], n: int) -> tuple[tuple[int, int], ...]:
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    edges = []
    for v in seq:
        for leaf in range(n):
            if degree[leaf] == 1:
                edges.append((min(leaf, v), max(leaf, v)))
                degree[leaf] -= 1
                degree[v] -= 1
                break
    last = [v for v in range(n) if degree[v] == 1]
    edges.append((last[0], last[1]))
    return tuple(sorted(edges))


def _all_tree_edge_sets(n: int):
    if n == 1:
        yield ()
        return
    if n == 2:
        yield ((0, 1),)
        return
    for seq in product(range(n), repeat=n - 2):
        yield _prufer_edges(seq, n)


def exhaustive_tree_oracle(sys: EventSystem, criterion: str) -> Graph:
    """Search every labeled tree for the best bound (n <= 7).

    "max-lower-bound" maximizes the tree lower bound including each tree's
    own independence number; "min-upper-bound" minimizes the tree bracket.
    Ties break on lexicographic edge order.
    """
    if criterion not in ("max-lower-bound", "min-upper-bound"):
        raise DomainError(f"unknown criterion {criterion!r}")
    n = sys.event_count
    if n > EXHAUSTIVE_TREE_MAX_VERTICES:
        raise ResourceLimitError(
            f"exhaustive tree search caps at {EXHAUSTIVE_TREE_MAX_VERTICES} vertices, got {n}"
        )
    wm = pairwise_weights(sys)
    singles = sum(intersection_prob(sys, (v,)) for v in range(n))
    best_key = None
    best_edges = None
    for edges in _all_tree_edge_sets(n):
        bracket = singles - sum(wm.weight(u, v) for u, v in edges)
        if criterion == "max-lower-bound":
            tree = build_graph(n, edges)
            value = bracket / independence_number(tree)
            key = (-value, edges)
        else:
            key = (bracket, edges)
        if best_key is None or key < best_key:
            best_key = key
            best_edges = edges
    return build_graph(n, best_edges)
