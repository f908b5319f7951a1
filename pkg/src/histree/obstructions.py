"""Certified no-HIST structures: recognizers and generators.

A graph provably has no spanning tree free of degree-2 vertices when it has
a degree-2 cut vertex, a pendant vertex hanging off a degree-2 vertex, or a
triangle of degree-at-most-3 vertices whose removal splits the graph in two.
Three dense exceptional families built from cliques realize these patterns
at the neighborhood-union boundary; they are matched structurally, not by
general isomorphism, so every hit carries a certifying witness.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .graphs import (
    Graph,
    bits,
    components,
    cut_vertices,
    is_connected,
    mask_of,
)

H1, H2, H3 = "H1", "H2", "H3"
FAMILY_KINDS = (H1, H2, H3)


@dataclass(frozen=True)
class ObstructionReport:
    kind: str  # None, CutVertexDeg2, PendantAtDeg2, TriangleSplit, H1, H2, H3
    witness: tuple[int, ...]

    def to_json_dict(self) -> dict:
        return {"kind": self.kind, "witness": list(self.witness)}


NO_OBSTRUCTION = ObstructionReport("None", ())


def detect_cut_vertex_deg2(g: Graph) -> int | None:
    """Smallest articulation point of degree 2, if any."""
    if g.n < 2 or not is_connected(g):
        raise DomainError("detector requires a connected graph on >= 2 vertices")
    for v in cut_vertices(g):
        if g.degree(v) == 2:
            return v
    return None


def detect_pendant_at_deg2(g: Graph) -> tuple[int, int] | None:
    """Least (pendant, neighbor) pair where the neighbor has degree 2."""
    if not is_connected(g):
        raise DomainError("detector requires a connected graph")
    for v in range(g.n):
        if g.degree(v) == 1:
            w = g.nbr[v].bit_length() - 1
            if g.degree(w) == 2:
                return v, w
    return None


def _low_degree_triangles(g: Graph, max_deg: int = 3):
    """Triangles whose three vertices all have degree <= max_deg, lex order."""
    low = mask_of(v for v in range(g.n) if g.degree(v) <= max_deg)
    for a in bits(low):
        higher = g.nbr[a] & low & ~((1 << (a + 1)) - 1)
        for b in bits(higher):
            common = g.nbr[a] & g.nbr[b] & low & ~((1 << (b + 1)) - 1)
            for c in bits(common):
                yield a, b, c


def detect_triangle_split(g: Graph) -> tuple[int, int, int] | None:
    """First triangle of degree-<=3 vertices whose removal leaves exactly two
    components."""
    if not is_connected(g):
        raise DomainError("detector requires a connected graph")
    rest = g.vertex_mask()
    for a, b, c in _low_degree_triangles(g):
        outside = rest & ~mask_of((a, b, c))
        if outside and len(components(g, bits(outside))) == 2:
            return a, b, c
    return None


def _is_clique(g: Graph, members: tuple[int, ...]) -> bool:
    m = mask_of(members)
    return all((g.nbr[v] & m).bit_count() == len(members) - 1 for v in members)


def _match_h1(g: Graph) -> ObstructionReport | None:
    n = g.n
    if n < 5 or n % 2 == 0:
        return None
    half = (n - 1) // 2
    if g.m != half * (half - 1) + 2:
        return None
    for v in range(n):
        if g.degree(v) != 2:
            continue
        rest = tuple(w for w in range(n) if w != v)
        comps = components(g, rest)
        if len(comps) != 2:
            continue
        a, b = comps
        if len(a) != half or len(b) != half:
            continue
        if not (_is_clique(g, a) and _is_clique(g, b)):
            continue
        n1, n2 = g.neighbors(v)
        if (n1 in a) == (n2 in a):
            continue
        return ObstructionReport(H1, (v,))
    return None


def _match_h23(g: Graph) -> ObstructionReport | None:
    n = g.n
    if n < 9 or n % 2 == 0:
        return None
    block = (n - 3) // 2
    base_m = 3 + block * (block - 1) + 2
    if g.m == base_m:
        kind, bridge_total = H2, 2
    elif g.m == base_m + 1:
        kind, bridge_total = H3, 3
    else:
        return None
    for tri in _low_degree_triangles(g):
        tri_mask = mask_of(tri)
        degs = sorted(g.degree(v) for v in tri)
        if kind == H2 and degs != [2, 3, 3]:
            continue
        if kind == H3 and degs != [3, 3, 3]:
            continue
        outside = g.vertex_mask() & ~tri_mask
        comps = components(g, bits(outside))
        if len(comps) != 2 or any(len(c) != block for c in comps):
            continue
        if not all(_is_clique(g, c) for c in comps):
            continue
        masks = [mask_of(c) for c in comps]
        # Bridges from the triangle into each block; H2 wants one per block,
        # H3 wants a 1/2 split (the two endpoints on one side may coincide).
        per_block = [0, 0]
        anchors: list[int] = []
        ok = True
        for v in tri:
            out = g.nbr[v] & ~tri_mask
            if out.bit_count() > 1:
                ok = False
                break
            if out:
                side = 0 if out & masks[0] else 1
                per_block[side] += 1
                anchors.append(out.bit_length() - 1)
        if not ok or sum(per_block) != bridge_total:
            continue
        if kind == H2 and per_block != [1, 1]:
            continue
        if kind == H3 and sorted(per_block) != [1, 2]:
            continue
        return ObstructionReport(kind, tri + tuple(sorted(set(anchors))))
    return None


def match_family(g: Graph) -> ObstructionReport:
    """Exact family match first, then the generic certificates, first hit wins."""
    if not is_connected(g):
        raise DomainError("match_family requires a connected graph")
    hit = _match_h1(g)
    if hit is None:
        hit = _match_h23(g)
    if hit is not None:
        return hit
    if g.n >= 2:
        v = detect_cut_vertex_deg2(g)
        if v is not None:
            return ObstructionReport("CutVertexDeg2", (v,))
    pend = detect_pendant_at_deg2(g)
    if pend is not None:
        return ObstructionReport("PendantAtDeg2", pend)
    tri = detect_triangle_split(g)
    if tri is not None:
        return ObstructionReport("TriangleSplit", tri)
    return NO_OBSTRUCTION


def generate_H(which: str, n: int, coincide: bool = False) -> Graph:
    """Canonical member of family H1/H2/H3 on vertices 0..n-1.

    Labeling: H1 puts the degree-2 cut vertex at 0 with the two cliques on
    1..(n-1)/2 and (n+1)/2..n-1. H2/H3 put the triangle on {0,1,2} followed
    by the two cliques; bridge anchors are the first clique vertices, and
    the extra H3 bridge lands on the second clique's first (coincide) or
    second vertex.
    """
    if n < 5 or n % 2 == 0:
        raise DomainError("family members need odd n >= 5")
    if which == H1:
        half = (n - 1) // 2
        a = list(range(1, 1 + half))
        b = list(range(1 + half, n))
        edges = [(u, v) for blk in (a, b) for i, u in enumerate(blk) for v in blk[i + 1:]]
        edges += [(0, a[0]), (0, b[0])]
        return Graph.from_edges(n, edges)
    if which not in (H2, H3):
        raise DomainError(f"unknown family {which!r}")
    if n < 9:
        raise DomainError("H2/H3 need odd n >= 9")
    block = (n - 3) // 2
    g1 = list(range(3, 3 + block))
    g2 = list(range(3 + block, n))
    edges = [(0, 1), (0, 2), (1, 2)]
    edges += [(u, v) for blk in (g1, g2) for i, u in enumerate(blk) for v in blk[i + 1:]]
    edges += [(0, g1[0]), (1, g2[0])]
    if which == H3:
        edges.append((2, g2[0] if coincide else g2[1]))
    return Graph.from_edges(n, edges)
