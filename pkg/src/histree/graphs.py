"""Immutable simple-graph representation and elementary structural queries.

Vertices are dense 0-based integers. Adjacency is kept as one bitmask per
vertex, which makes set algebra over vertex groups (components, cuts,
neighborhood unions) cheap for the graph orders this package targets.
All functions are pure; Graph instances are safe to share across threads.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .errors import DomainError

VertexSet = frozenset  # vertex groups in public signatures; bitmasks internally


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def bits(mask: int) -> Iterator[int]:
    """Iterate the set bits of a mask in ascending order."""
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    ``nbr[v]`` is the neighbor set of v as a bitmask. Instances are only
    created through the constructors below, which enforce simplicity and
    symmetry.
    """

    n: int
    nbr: tuple[int, ...]

    @staticmethod
    def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        if n < 0:
            raise DomainError("vertex count must be nonnegative")
        adj = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"vertex id out of range 0..{n - 1}: ({u}, {v})")
            if u == v:
                raise DomainError(f"self-loop at vertex {u}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return Graph(n, tuple(adj))

    @property
    def m(self) -> int:
        return sum(a.bit_count() for a in self.nbr) // 2

    def degree(self, v: int) -> int:
        return self.nbr[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.nbr[u] >> v & 1)

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(bits(self.nbr[v]))

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographically sorted."""
        out = []
        for u in range(self.n):
            rest = self.nbr[u] >> (u + 1) << (u + 1)
            for v in bits(rest):
                out.append((u, v))
        return out

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def min_degree(self) -> int:
        return min((a.bit_count() for a in self.nbr), default=0)

    def is_complete(self) -> bool:
        return self.m == self.n * (self.n - 1) // 2

    def subgraph(self, vertices: Iterable[int]) -> tuple["Graph", list[int]]:
        """Induced subgraph plus the list mapping new ids back to old ones."""
        keep = sorted(set(vertices))
        index = {v: i for i, v in enumerate(keep)}
        edges = [
            (index[u], index[v])
            for u in keep
            for v in bits(self.nbr[u])
            if v in index and u < v
        ]
        return Graph.from_edges(len(keep), edges), keep


def _component_masks(g: Graph, restrict: int) -> list[int]:
    """Connected components of the subgraph induced on the mask ``restrict``."""
    comps = []
    todo = restrict
    while todo:
        seed = todo & -todo
        comp = seed
        frontier = seed
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= g.nbr[v]
            frontier = grow & restrict & ~comp
            comp |= frontier
        comps.append(comp)
        todo &= ~comp
    return comps


def components(g: Graph, restrict: Iterable[int] | None = None) -> list[tuple[int, ...]]:
    """Partition of ``restrict`` (default all vertices) into connected pieces.

    Each piece is ascending; the list is ordered by smallest member.
    """
    if restrict is None:
        restrict_mask = g.vertex_mask()
    else:
        restrict_mask = mask_of(restrict)
        if restrict_mask & ~g.vertex_mask():
            raise DomainError("restrict contains out-of-range vertices")
    return [tuple(bits(c)) for c in _component_masks(g, restrict_mask)]


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return False
    return len(_component_masks(g, g.vertex_mask())) == 1


@dataclass(frozen=True)
class EdgeCut:
    """Edges crossing from ``side`` to its complement, each listed once."""

    side: tuple[int, ...]
    boundary: tuple[tuple[int, int], ...]


def edge_cut(g: Graph, side: Iterable[int]) -> EdgeCut:
    """Boundary edges of a proper nonempty vertex side, (inside, outside) pairs."""
    side_mask = mask_of(side)
    if side_mask == 0 or side_mask & ~g.vertex_mask() or side_mask == g.vertex_mask():
        raise DomainError("side must be a proper nonempty subset of the vertices")
    boundary = []
    for u in bits(side_mask):
        for v in bits(g.nbr[u] & ~side_mask):
            boundary.append((u, v))
    boundary.sort()
    return EdgeCut(tuple(bits(side_mask)), tuple(boundary))


def cut_vertices(g: Graph) -> tuple[int, ...]:
    """Articulation points of a connected graph, ascending."""
    if not is_connected(g):
        raise DomainError("cut_vertices requires a connected graph")
    n = g.n
    disc = [-1] * n
    low = [0] * n
    parent = [-1] * n
    result = set()
    timer = 0
    # Iterative DFS: recursion depth would track the longest path.
    stack = [(0, iter(g.neighbors(0)))]
    disc[0] = low[0] = timer
    timer += 1
    root_children = 0
    while stack:
        v, it = stack[-1]
        advanced = False
        for w in it:
            if disc[w] == -1:
                parent[w] = v
                disc[w] = low[w] = timer
                timer += 1
                if v == 0:
                    root_children += 1
                stack.append((w, iter(g.neighbors(w))))
                advanced = True
                break
            elif w != parent[v]:
                low[v] = min(low[v], disc[w])
        if not advanced:
            stack.pop()
            if stack:
                p = stack[-1][0]
                low[p] = min(low[p], low[v])
                if p != 0 and low[v] >= disc[p]:
                    result.add(p)
    if root_children > 1:
        result.add(0)
    return tuple(sorted(result))


def find_induced_p3(g: Graph, x_set: Iterable[int], z: int) -> tuple[int, int]:
    """Least (x, y) with zx and xy edges, zy a non-edge, both inside x_set.

    Exists whenever the induced subgraph on x_set is connected and z has at
    least one but not all of x_set as neighbors.
    """
    x_mask = mask_of(x_set)
    if x_mask >> z & 1:
        raise DomainError("z must lie outside x_set")
    if len(_component_masks(g, x_mask)) != 1:
        raise DomainError("induced subgraph on x_set must be connected")
    reach = g.nbr[z] & x_mask
    if reach == 0:
        raise DomainError("z has no neighbor in x_set")
    if reach == x_mask:
        raise DomainError("z is adjacent to all of x_set")
    for x in bits(reach):
        candidates = g.nbr[x] & x_mask & ~g.nbr[z]
        if candidates:
            return x, (candidates & -candidates).bit_length() - 1
    raise DomainError("no induced two-edge path found")  # unreachable when connected


def find_xy_path(
    g: Graph,
    x_set: Iterable[int],
    y_set: Iterable[int],
    within: Iterable[int] | None = None,
) -> list[int]:
    """Shortest path from x_set to y_set whose interior avoids both sets.

    Ties break by breadth-first order seeded from the sources in ascending
    order. ``within`` optionally confines the whole path to a vertex subset.
    """
    allowed = g.vertex_mask() if within is None else mask_of(within)
    x_mask = mask_of(x_set) & allowed
    y_mask = mask_of(y_set) & allowed
    if not x_mask or not y_mask:
        raise DomainError("x_set and y_set must be nonempty (within the allowed set)")
    common = x_mask & y_mask
    if common:
        return [(common & -common).bit_length() - 1]
    prev: dict[int, int] = {}
    queue = deque()
    for x in bits(x_mask):
        prev[x] = -1
        queue.append(x)
    interior_ok = allowed & ~x_mask & ~y_mask
    while queue:
        v = queue.popleft()
        hit = g.nbr[v] & y_mask
        if hit:
            path = [(hit & -hit).bit_length() - 1]
            while v != -1:
                path.append(v)
                v = prev[v]
            path.reverse()
            return path
        for w in bits(g.nbr[v] & interior_ok):
            if w not in prev:
                prev[w] = v
                queue.append(w)
    raise DomainError("no path between x_set and y_set within the allowed set")


def min_degree_connectivity_guard(g: Graph) -> bool:
    """Cheap sufficient check for connectivity: twice the minimum degree
    exceeds n - 2."""
    return 2 * g.min_degree() > g.n - 2


# Named graphs used throughout the test suite and docs.

def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def cycle_graph(n: int) -> Graph:
    edges = [(i, i + 1) for i in range(n - 1)] + [(0, n - 1)]
    return Graph.from_edges(n, edges)


def complete_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def star_graph(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, outer + spokes + inner)
