"""Reproducible test-instance builders that satisfy the neighborhood-union
bound by construction.

The planted families realize each branch of the constructive casework:
two large cliques wired to a low-degree pivot in the exact patterns the
split-remainder cases expect, and dense remainders behind small seeds for
the connected-remainder cases. Sampled builders (Erdos-Renyi based) verify
the bound by rejection; planted ones meet it exactly and deterministically.
"""

from __future__ import annotations

from .conditions import condition_report
from .graphs import Graph, is_connected
from .rng import SplitMix64, gnp

__all__ = [
    "dense_conditioned",
    "split_deg2_straddle",
    "split_deg2_adjacent",
    "split_straddle",
    "split_two_anchors",
    "split_clique_hub",
    "split_relay",
    "tri_hub",
    "tri_wide",
    "tri_bridge",
    "bottleneck",
    "connected_lone",
    "connected_branch",
    "shared_neighbor",
    "link_path",
]


def _clique(members) -> list[tuple[int, int]]:
    members = list(members)
    return [(a, b) for i, a in enumerate(members) for b in members[i + 1:]]


def _meets_bound(g: Graph) -> bool:
    rep = condition_report(g)
    return rep.nc is not None and 2 * rep.nc >= g.n - 1


def _require_odd(n: int, floor: int) -> None:
    if n < floor or n % 2 == 0:
        raise ValueError(f"instance needs odd n >= {floor}")


def dense_conditioned(n: int, seed: int, p: float = 0.7) -> Graph:
    """Dense sample conditioned on connectivity and the neighborhood bound."""
    for attempt in range(64):
        g = gnp(n, p, seed + attempt * 0x9E37)
        if is_connected(g) and _meets_bound(g):
            return g
    raise RuntimeError(f"no dense instance found near seed {seed}")


def _two_cliques(n: int, head: int, s1: int):
    c1 = list(range(head, head + s1))
    c2 = list(range(head + s1, n))
    return c1, c2, _clique(c1) + _clique(c2)


def split_deg2_straddle(n: int, reroute: bool = False) -> Graph:
    """Degree-2 pivot, one neighbor meeting both remainder cliques.

    reroute picks the second neighbor's contact off the anchor so the
    construction must detour through a clique partner.
    """
    _require_odd(n, 11)
    c1, c2, edges = _two_cliques(n, 3, (n - 3) // 2)
    edges += [(0, 1), (0, 2)]
    edges += [(1, w) for w in c1 + c2]
    edges.append((2, c1[1] if reroute else c1[0]))
    return Graph.from_edges(n, edges)


def split_deg2_adjacent(n: int) -> Graph:
    """Degree-2 pivot with adjacent neighbors, each confined to one clique."""
    _require_odd(n, 11)
    c1, c2, edges = _two_cliques(n, 3, (n - 3) // 2)
    edges += [(0, 1), (0, 2), (1, 2)]
    edges += [(1, c1[0]), (1, c1[1]), (2, c2[0])]
    return Graph.from_edges(n, edges)


def split_straddle(n: int) -> Graph:
    """Degree-3 pivot whose first neighbor spans both remainder cliques."""
    _require_odd(n, 13)
    c1, c2, edges = _two_cliques(n, 4, (n - 3) // 2)
    edges += [(0, 1), (0, 2), (0, 3), (2, 3)]
    edges += [(1, w) for w in c1 + c2]
    edges += [(2, c1[0]), (3, c2[0])]
    return Graph.from_edges(n, edges)


def split_two_anchors(n: int) -> Graph:
    """Degree-3 pivot with rich one-sided contacts into both cliques."""
    _require_odd(n, 13)
    c1, c2, edges = _two_cliques(n, 4, (n - 3) // 2)
    edges += [(0, 1), (0, 2), (0, 3), (1, 3), (2, 3)]
    edges += [(1, w) for w in c1]
    edges += [(2, w) for w in c2]
    return Graph.from_edges(n, edges)


def split_clique_hub(n: int) -> Graph:
    """All pivot neighbors have single contacts; the neighborhood is a clique."""
    _require_odd(n, 13)
    c1, c2, edges = _two_cliques(n, 4, (n - 3) // 2)
    edges += _clique([0, 1, 2, 3])
    edges += [(1, c1[0]), (2, c2[0])]
    return Graph.from_edges(n, edges)


def split_relay(n: int) -> Graph:
    """Degree-4 pivot, one rich side and one single contact."""
    _require_odd(n, 15)
    c1, c2, edges = _two_cliques(n, 5, (n - 5) // 2)
    edges += _clique([0, 1, 2, 3, 4])
    edges += [(1, w) for w in c1]
    edges.append((2, c2[0]))
    return Graph.from_edges(n, edges)


def tri_hub(n: int) -> Graph:
    """Degree 3, adjacent contact pair, third neighbor touching the frame."""
    _require_odd(n, 13)
    c1, c2, edges = _two_cliques(n, 4, (n - 3) // 2)
    edges += [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]
    edges += [(1, c1[0]), (1, c1[1]), (2, c2[0])]
    return Graph.from_edges(n, edges)


def tri_wide(n: int) -> Graph:
    """Degree 3, nonadjacent contacts, third neighbor holding two rich contacts."""
    _require_odd(n, 13)
    c1, c2, edges = _two_cliques(n, 4, (n - 5) // 2)
    edges += [(0, 1), (0, 2), (0, 3), (2, 3)]
    edges += [(1, w) for w in c1]
    edges += [(2, c2[0]), (3, c1[0]), (3, c1[1])]
    return Graph.from_edges(n, edges)


def tri_bridge(n: int) -> Graph:
    """Degree 3, nonadjacent contacts, third neighbor bridging to the far clique."""
    _require_odd(n, 13)
    c1, c2, edges = _two_cliques(n, 4, (n - 5) // 2)
    edges += [(0, 1), (0, 2), (0, 3), (2, 3), (1, 3)]
    edges += [(1, w) for w in c1]
    edges += [(2, c2[0]), (3, c2[1])]
    return Graph.from_edges(n, edges)


def bottleneck(n: int, contacts, second_bridge: bool = False) -> Graph:
    """Connected remainder whose seed removal splits it at one cut vertex.

    Vertex 4 joins two cliques: adjacent to all of the first and to
    ``contacts`` vertices of the second ("all" for every one). The pivot's
    neighborhood is a 4-clique with one bridge into the first clique (two
    bridges when second_bridge is set).
    """
    _require_odd(n, 17)
    size = (n - 5) // 2
    c1 = list(range(5, 5 + size))
    c2 = list(range(5 + size, n))
    edges = _clique([0, 1, 2, 3]) + _clique(c1) + _clique(c2)
    edges.append((1, c1[0]))
    if second_bridge:
        edges.append((1, c1[1]))
    edges += [(4, w) for w in c1]
    picked = c2 if contacts == "all" else c2[:contacts]
    edges += [(4, w) for w in picked]
    return Graph.from_edges(n, edges)


def _dense_tail(n: int, head: int, p: float, rng: SplitMix64) -> list[tuple[int, int]]:
    edges = []
    for i in range(head, n):
        for j in range(i + 1, n):
            if rng.next_float() < p:
                edges.append((i, j))
    return edges


def _rejection(build, seed: int) -> Graph:
    for attempt in range(64):
        g = build(SplitMix64(seed + attempt * 0x51ED))
        if is_connected(g) and _meets_bound(g):
            return g
    raise RuntimeError(f"no valid instance found near seed {seed}")


def connected_lone(n: int, seed: int) -> Graph:
    """Clique neighborhood around the pivot, one bridge into a dense remainder."""

    def build(rng: SplitMix64) -> Graph:
        edges = _clique([0, 1, 2, 3]) + [(1, 4)]
        edges += _dense_tail(n, 4, 0.75, rng)
        return Graph.from_edges(n, edges)

    return _rejection(build, seed)


def connected_branch(n: int, seed: int) -> Graph:
    """Clique neighborhood, two bridges from one neighbor into a dense remainder."""

    def build(rng: SplitMix64) -> Graph:
        edges = _clique([0, 1, 2, 3]) + [(1, 4), (1, 5)]
        edges += _dense_tail(n, 4, 0.75, rng)
        return Graph.from_edges(n, edges)

    return _rejection(build, seed)


def shared_neighbor(n: int, seed: int) -> Graph:
    """Degree-2 pivot with nonadjacent neighbors sharing the whole remainder."""

    def build(rng: SplitMix64) -> Graph:
        edges = [(0, 1), (0, 2)]
        edges += [(1, w) for w in range(3, n)]
        edges += [(2, w) for w in range(3, n)]
        edges += _dense_tail(n, 3, 0.7, rng)
        return Graph.from_edges(n, edges)

    return _rejection(build, seed)


def link_path(n: int, seed: int, hops: int = 2) -> Graph:
    """Degree-2 pivot with nonadjacent neighbors on disjoint remainder parts.

    hops=2 lets the parts touch directly; hops=3 routes them through a
    middle band, so the connector path has one interior vertex.
    """
    if hops not in (2, 3):
        raise ValueError("hops must be 2 or 3")

    def build(rng: SplitMix64) -> Graph:
        w = list(range(3, n))
        if hops == 2:
            half = len(w) // 2
            parts = [w[:half], w[half:]]
            touching = {(0, 1)}
        else:
            third = len(w) // 3
            parts = [w[:third], w[third:2 * third], w[2 * third:]]
            touching = {(0, 1), (1, 2)}
        part_of = {}
        for k, part in enumerate(parts):
            for v in part:
                part_of[v] = k
        p = 0.75 if hops == 2 else 0.9
        edges = [(0, 1), (0, 2)]
        edges += [(1, v) for v in parts[0]]
        edges += [(2, v) for v in parts[-1]]
        for i in range(3, n):
            for j in range(i + 1, n):
                ki, kj = part_of[i], part_of[j]
                if ki == kj or (min(ki, kj), max(ki, kj)) in touching:
                    if rng.next_float() < p:
                        edges.append((i, j))
        return Graph.from_edges(n, edges)

    return _rejection(build, seed)
