"""Finite probability spaces carrying one event per graph vertex.

An EventSystem is a weighted outcome space plus a bitmask per event.  All
probability queries reduce to summing outcome weights under a mask, which
keeps the same code path exact for rational and polynomial weights.
"""

from __future__ import annotations

from .errors import DomainError, ResourceLimitError
from .graphs import Graph, connected_components
from .values import Backend, REAL

__all__ = [
    "EventSystem",
    "MAX_PRODUCT_COORDS",
    "from_outcomes",
    "bernoulli_product",
    "intersection_prob",
    "union_prob_exact",
    "atom_prob",
    "alpha_prime",
]

# Hard cap for the product-space constructor: the outcome space is 2**m.
MAX_PRODUCT_COORDS = 24


class EventSystem:
    """Outcome weights plus per-event outcome masks over one backend.

    Instances are immutable once built; `mass` memoizes mask sums so that
    repeated bound evaluations over the same system stay cheap.
    """

    __slots__ = ("backend", "weights", "events", "_mass_cache")

    def __init__(self, backend: Backend, weights, events):
        weights = tuple(weights)
        events = tuple(events)
        if not weights:
            raise DomainError("an event system needs at least one outcome")
        if not events:
            raise DomainError("an event system needs at least one event")
        full = (1 << len(weights)) - 1
        for mask in events:
            if mask & ~full:
                raise DomainError("event refers to outcomes outside the space")
        total = backend.zero
        for w in weights:
            total = total + w
        if not backend.sum_is_one(total):
            raise DomainError(f"outcome weights must sum to one, got {total}")
        if backend.ordered:
            for w in weights:
                if w < backend.zero:
                    raise DomainError(f"negative outcome weight {w}")
        self.backend = backend
        self.weights = weights
        self.events = events
        self._mass_cache: dict[int, object] = {}

    @property
    def outcome_count(self) -> int:
        return len(self.weights)

    @property
    def event_count(self) -> int:
        return len(self.events)

    @property
    def full_mask(self) -> int:
        return (1 << len(self.weights)) - 1

    def mass(self, mask: int):
        """Total weight of the outcomes selected by `mask`."""
        cached = self._mass_cache.get(mask)
        if cached is not None:
            return cached
        total = self.backend.zero
        m = mask
        while m:
            low = m & -m
            total = total + self.weights[low.bit_length() - 1]
            m ^= low
        self._mass_cache[mask] = total
        return total


def from_outcomes(weights, events, backend: Backend = REAL) -> EventSystem:
    """Build a system from explicit outcome weights and events given as
    iterables of outcome ids."""
    weights = tuple(weights)
    masks = []
    for event in events:
        mask = 0
        for o in event:
            if not 0 <= o < len(weights):
                raise DomainError(f"outcome id {o} out of range")
            mask |= 1 << o
        masks.append(mask)
    return EventSystem(backend, weights, masks)


def bernoulli_product(probs, event_defs, backend: Backend = REAL) -> EventSystem:
    """Product space of independent on/off coordinates.

    `probs[i]` is the probability that coordinate i is on; event j occurs
    when every coordinate in `event_defs[j]` is on.  Outcome s has bit i
    set iff coordinate i is on.
    """
    probs = tuple(probs)
    m = len(probs)
    if m > MAX_PRODUCT_COORDS:
        raise ResourceLimitError(
            f"product space over {m} coordinates exceeds the cap of {MAX_PRODUCT_COORDS}"
        )
    if backend.ordered:
        for p in probs:
            if p < backend.zero or p > backend.one:
                raise DomainError(f"coordinate probability {p} outside [0, 1]")
    weights = [backend.one]
    for p in probs:
        off = backend.one - p
        weights = [w * off for w in weights] + [w * p for w in weights]
    masks = []
    for required in event_defs:
        required = set(required)
        for c in required:
            if not 0 <= c < m:
                raise DomainError(f"coordinate id {c} out of range")
        indicator = 1
        for i in range(m):
            if i in required:
                indicator <<= 1 << i
            else:
                indicator |= indicator << (1 << i)
        masks.append(indicator)
    return EventSystem(backend, weights, masks)


def _combined_mask(sys: EventSystem, index_set) -> int:
    indices = set(index_set)
    if not indices:
        raise DomainError("index set must be non-empty")
    mask = sys.full_mask
    for i in indices:
        if not 0 <= i < sys.event_count:
            raise DomainError(f"event index {i} out of range")
        mask &= sys.events[i]
    return mask


def intersection_prob(sys: EventSystem, index_set):
    """Exact probability that every event in `index_set` occurs."""
    return sys.mass(_combined_mask(sys, index_set))


def union_prob_exact(sys: EventSystem):
    """Exact probability of the union, by direct outcome summation.

    This is the independent oracle every bound is compared against; it
    never goes through inclusion-exclusion.
    """
    union = 0
    for mask in sys.events:
        union |= mask
    return sys.mass(union)


def atom_prob(sys: EventSystem, signature):
    """Probability that exactly the events in `signature` occur."""
    inter = _combined_mask(sys, signature)
    others = 0
    sig = set(signature)
    for i, mask in enumerate(sys.events):
        if i not in sig:
            others |= mask
    return sys.mass(inter & ~others & sys.full_mask)


def alpha_prime(sys: EventSystem, g: Graph) -> int:
    """Sharpened denominator for the lower bounds.

    Maximum number of connected components of the induced subgraph g[J]
    over all non-empty J whose atom has non-empty support.  Support means
    outcomes with exactly non-zero weight, so the backend must allow a
    decidable zero test on an ordered domain.
    """
    if not sys.backend.ordered:
        raise DomainError(
            "sharpened denominator needs a backend with decidable support emptiness"
        )
    if sys.event_count != g.vertex_count:
        raise DomainError(
            f"system has {sys.event_count} events but graph has {g.vertex_count} vertices"
        )
    signatures = set()
    for o in range(sys.outcome_count):
        if sys.backend.is_zero(sys.weights[o]):
            continue
        sig = 0
        for i, mask in enumerate(sys.events):
            if (mask >> o) & 1:
                sig |= 1 << i
        if sig:
            signatures.add(sig)
    best = 1
    for sig in signatures:
        vertices = [v for v in range(g.vertex_count) if (sig >> v) & 1]
        best = max(best, connected_components(g, within=vertices))
    return best
