"""Deterministic pseudo-randomness for reproducible graph generation.

A splitmix64 stream is the only randomness source in the package: 64-bit
state advanced by the golden-gamma constant, output finalized by two
xor-shift multiplications. Identical seeds give identical graphs on every
platform, so fuzz corpora and sampled test instances are replayable bytes.
"""

from __future__ import annotations

from .graphs import Graph

_MASK = (1 << 64) - 1


class SplitMix64:
    """splitmix64 generator; uniform floats use the top 53 bits."""

    def __init__(self, seed: int):
        self.state = seed & _MASK

    def next_u64(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK
        z = self.state
        z = (z ^ z >> 30) * 0xBF58476D1CE4E5B9 & _MASK
        z = (z ^ z >> 27) * 0x94D049BB133111EB & _MASK
        return z ^ z >> 31

    def next_float(self) -> float:
        return (self.next_u64() >> 11) * 2.0 ** -53

    def next_below(self, bound: int) -> int:
        return self.next_u64() % bound

    def shuffle(self, items: list) -> None:
        for i in range(len(items) - 1, 0, -1):
            j = self.next_below(i + 1)
            items[i], items[j] = items[j], items[i]


def gnp(n: int, p: float, seed: int) -> Graph:
    """Erdos-Renyi sample; pair (i, j), i < j, drawn in lexicographic order."""
    rng = SplitMix64(seed)
    edges = []
    for i in range(n):
        for j in range(i + 1, n):
            if rng.next_float() < p:
                edges.append((i, j))
    return Graph.from_edges(n, edges)


def random_connected(n: int, seed: int, extra_edge_factor: float = 1.0) -> Graph:
    """Random connected graph: a random spanning tree plus extra random edges.

    The tree hangs each vertex off a uniformly chosen earlier one; the extra
    edge count is binomial-ish with mean extra_edge_factor * n.
    """
    rng = SplitMix64(seed)
    edges = {(rng.next_below(i), i) for i in range(1, n)}
    extras = int(extra_edge_factor * n)
    for _ in range(extras):
        u = rng.next_below(n)
        v = rng.next_below(n)
        if u != v:
            edges.add((min(u, v), max(u, v)))
    return Graph.from_edges(n, sorted(edges))
