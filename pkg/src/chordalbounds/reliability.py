"""Two-terminal reliability of directed networks with independent arc
failures.

Source-to-terminal reliability is the probability that some directed path
of operating arcs joins the source to the terminal.  Events are built from
simple-path enumeration, one event per path, and all probability work is
delegated to the event-system machinery, so the same code runs with
numeric arc reliabilities and with a shared symbolic parameter p.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bounds import classical_bonferroni, hunter_lower_tree, kwerel_lower
from .errors import DomainError
from .events import EventSystem, bernoulli_product, union_prob_exact
from .graphs import path_graph
from .poly import P, Polynomial
from .values import POLYNOMIAL, REAL

__all__ = [
    "Network",
    "build_network",
    "bridge_network",
    "BRIDGE_PATH_ORDER",
    "enumerate_st_paths",
    "path_event_system",
    "exact_reliability",
    "bound_polynomials",
    "DEFAULT_BOUND_KINDS",
    "sweep",
]

SYMBOLIC = "symbolic"

DEFAULT_BOUND_KINDS = ("hunter-lower", "kwerel-lower", "bonferroni-lower")


@dataclass(frozen=True)
class Network:
    """Directed network with dense 0-based arc ids (displayed 1-based).

    `arc_reliability` is either the string "symbolic" (every arc shares the
    parameter p) or a tuple with one probability per arc.
    """

    node_count: int
    arcs: tuple[tuple[int, int], ...]
    source: int
    terminal: int
    arc_reliability: object = SYMBOLIC

    @property
    def symbolic(self) -> bool:
        return self.arc_reliability == SYMBOLIC


def build_network(node_count, arcs, source, terminal, reliability=SYMBOLIC) -> Network:
    """Validate a network description.

    `reliability` may be "symbolic", a single number applied to every arc,
    or a sequence with one value per arc.
    """
    arcs = tuple((int(t), int(h)) for t, h in arcs)
    if not 0 <= source < node_count or not 0 <= terminal < node_count:
        raise DomainError("source or terminal out of range")
    if source == terminal:
        raise DomainError("source and terminal must differ")
    seen = set()
    for tail, head in arcs:
        if not (0 <= tail < node_count and 0 <= head < node_count):
            raise DomainError(f"arc ({tail}, {head}) has an endpoint out of range")
        if tail == head:
            raise DomainError(f"arc ({tail}, {head}) is a self-loop")
        if (tail, head) in seen:
            raise DomainError(f"duplicate arc ({tail}, {head})")
        seen.add((tail, head))
    if reliability != SYMBOLIC:
        if isinstance(reliability, (int, float)):
            reliability = (float(reliability),) * len(arcs)
        else:
            reliability = tuple(float(p) for p in reliability)
        if len(reliability) != len(arcs):
            raise DomainError("need one reliability value per arc")
        for p in reliability:
            if not 0.0 <= p <= 1.0:
                raise DomainError(f"arc reliability {p} outside [0, 1]")
    return Network(node_count, arcs, source, terminal, reliability)


def bridge_network(reliability=SYMBOLIC) -> Network:
    """The built-in 4-node bridge demo network.

    Nodes: source 0, upper node 1, lower node 2, terminal 3.  Arcs (shown
    1-based in reports): 1: 0->1, 2: 0->2, 3: 1->2, 4: 2->1, 5: 1->3,
    6: 2->3.
    """
    return build_network(
        4,
        [(0, 1), (0, 2), (1, 2), (2, 1), (1, 3), (2, 3)],
        source=0,
        terminal=3,
        reliability=reliability,
    )


# Path-event order used by the bridge demo reports: arcs {1,5}, {1,3,6},
# {2,4,5}, {2,6} in 1-based arc labels.
BRIDGE_PATH_ORDER = (
    frozenset({0, 4}),
    frozenset({0, 2, 5}),
    frozenset({1, 3, 4}),
    frozenset({1, 5}),
)


def enumerate_st_paths(net: Network) -> tuple[frozenset[int], ...]:
    """All simple directed source-to-terminal paths as arc-id sets,
    canonically ordered by length, then lexicographic arc ids."""
    outgoing: list[list[int]] = [[] for _ in range(net.node_count)]
    for arc_id, (tail, _head) in enumerate(net.arcs):
        outgoing[tail].append(arc_id)
    found: list[frozenset[int]] = []

    def walk(node: int, visited: int, used: tuple[int, ...]):
        if node == net.terminal:
            found.append(frozenset(used))
            return
        for arc_id in outgoing[node]:
            head = net.arcs[arc_id][1]
            if (visited >> head) & 1:
                continue
            walk(head, visited | (1 << head), used + (arc_id,))

    walk(net.source, 1 << net.source, ())
    found.sort(key=lambda s: (len(s), sorted(s)))
    return tuple(found)


def path_event_system(net: Network, paths=None) -> EventSystem:
    """Bernoulli product system over arc states, one event per path.

    Pass `paths` to fix the event order explicitly; by default the
    canonical enumeration order is used.
    """
    if paths is None:
        paths = enumerate_st_paths(net)
    paths = tuple(frozenset(p) for p in paths)
    if not paths:
        raise DomainError("network has no source-to-terminal path")
    if net.symbolic:
        probs = [P] * len(net.arcs)
        backend = POLYNOMIAL
    else:
        probs = list(net.arc_reliability)
        backend = REAL
    return bernoulli_product(probs, paths, backend=backend)


def exact_reliability(net: Network, paths=None):
    """Exact source-to-terminal reliability by outcome enumeration.

    Returns a Polynomial for symbolic networks, a float otherwise; a
    network with no path has reliability zero.
    """
    if paths is None:
        paths = enumerate_st_paths(net)
    if not paths:
        return POLYNOMIAL.zero if net.symbolic else 0.0
    return union_prob_exact(path_event_system(net, paths))


def bound_polynomials(net: Network, paths=None) -> dict[str, Polynomial]:
    """Exact reliability and the lower bounds as polynomials in p.

    Keys: "exact", "hunter-lower" (path graph over the event order),
    "kwerel-lower", and "bonferroni-lower" (depth 1).  Requires a symbolic
    network.
    """
    if not net.symbolic:
        raise DomainError("polynomial bounds require a symbolic network")
    if paths is None:
        paths = enumerate_st_paths(net)
    paths = tuple(paths)
    if not paths:
        zero = Polynomial()
        return {
            "exact": zero,
            "hunter-lower": zero,
            "kwerel-lower": zero,
            "bonferroni-lower": zero,
        }
    sys = path_event_system(net, paths)
    return {
        "exact": union_prob_exact(sys),
        "hunter-lower": hunter_lower_tree(sys, path_graph(len(paths))).value,
        "kwerel-lower": kwerel_lower(sys).value,
        "bonferroni-lower": classical_bonferroni(sys, 1, "lower").value,
    }


def sweep(net: Network, p_values, kinds=None):
    """Evaluate the exact reliability and the requested bounds on a grid.

    Returns (header, rows); each row holds exact Fractions, evaluated from
    the exact polynomials at the given p.  p values may be Fractions, ints
    or floats (floats are read via their shortest decimal literal).
    """
    if kinds is None:
        kinds = DEFAULT_BOUND_KINDS
    kinds = tuple(kinds)
    polys = bound_polynomials(net)
    for kind in kinds:
        if kind not in polys or kind == "exact":
            raise DomainError(f"unknown bound kind {kind!r}")
    header = ["p", "exact", *kinds]
    rows = []
    for p in p_values:
        if isinstance(p, float):
            p = Fraction(str(p))
        else:
            p = Fraction(p)
        if not 0 <= p <= 1:
            raise DomainError(f"p value {p} outside [0, 1]")
        row = [p, polys["exact"](p)]
        row.extend(polys[kind](p) for kind in kinds)
        rows.append(tuple(row))
    return header, rows
