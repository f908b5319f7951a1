"""Spanning-tree verification, quasi-tree algebra, exact search and the
brute-force enumeration oracle.

A HIST is a spanning tree with no vertex of degree exactly 2; a HIT is any
subtree with that property, and a 1-/2-quasi-HIT relaxes it at one or two
"center" vertices. Partial trees built around a center extend to full HISTs
by gluing verified HISTs of disjoint attachments onto the centers, which is
how the constructive machine assembles its output.

Two independent decision procedures are provided: a branch-and-bound over
edge inclusion/exclusion with degree-state propagation, and an exhaustive
spanning-tree enumerator (deletion vs. contraction with connectivity
shortcuts). The test suite holds them to identical verdicts.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .graphs import Graph, bits, is_connected, mask_of

DEFAULT_BUDGET = 2_000_000  # search-tree nodes
DEFAULT_CAP = 1_000_000  # enumerated spanning trees

FOUND = "Found"
NO_HIST = "NoHist"
BUDGET_EXCEEDED = "BudgetExceeded"
CAP_EXCEEDED = "CapExceeded"

HIT = "HIT"
QUASI1 = "Quasi1"
QUASI2 = "Quasi2"
NEITHER = "Neither"


@dataclass(frozen=True)
class SpanningTree:
    host_n: int
    edges: tuple[tuple[int, int], ...]

    @staticmethod
    def of(host_n: int, edges) -> "SpanningTree":
        norm = tuple(sorted((u, v) if u < v else (v, u) for u, v in edges))
        return SpanningTree(host_n, norm)

    def degrees(self) -> list[int]:
        deg = [0] * self.host_n
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def to_json_dict(self) -> dict:
        return {"n": self.host_n, "edges": [list(e) for e in self.edges]}


def spanning_tree_failures(g: Graph, t: SpanningTree) -> list[str]:
    """Distinct reasons t fails to be a spanning tree of g; empty means valid."""
    reasons = []
    if t.host_n != g.n:
        reasons.append(f"host vertex count {t.host_n} != graph order {g.n}")
        return reasons
    if len(t.edges) != max(g.n - 1, 0):
        reasons.append(f"edge count {len(t.edges)} != {g.n - 1}")
    foreign = [e for e in t.edges if not (0 <= e[0] < g.n and 0 <= e[1] < g.n)
               or not g.has_edge(*e)]
    if foreign:
        reasons.append(f"edge not in graph: {foreign[0]}")
        return reasons
    if len(set(t.edges)) != len(t.edges):
        reasons.append("duplicate edge")
        return reasons
    parent = list(range(g.n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    cyclic = False
    for u, v in t.edges:
        ru, rv = find(u), find(v)
        if ru == rv:
            cyclic = True
        else:
            parent[ru] = rv
    if cyclic:
        reasons.append("cycle")
    if len({find(v) for v in range(g.n)}) > 1:
        reasons.append("disconnected")
    return reasons


def hist_failures(g: Graph, t: SpanningTree) -> list[str]:
    reasons = spanning_tree_failures(g, t)
    deg2 = [v for v, d in enumerate(t.degrees()) if d == 2]
    if deg2:
        reasons.append("degree-2 vertices: " + ",".join(map(str, deg2)))
    return reasons


def verify_hist(g: Graph, t: SpanningTree) -> bool:
    """True iff t is a spanning tree of g with no vertex of degree 2."""
    return not hist_failures(g, t)


@dataclass(frozen=True)
class QuasiClass:
    klass: str
    deg2_vertices: tuple[int, ...]


def _tree_support(edges, vertices=None) -> tuple[set, dict]:
    support = set(vertices or ())
    deg: dict[int, int] = {v: 0 for v in support}
    seen = set()
    for u, v in edges:
        e = (u, v) if u < v else (v, u)
        if u == v or e in seen:
            raise DomainError(f"not a tree: bad edge ({u}, {v})")
        seen.add(e)
        support.add(u)
        support.add(v)
        deg[u] = deg.get(u, 0) + 1
        deg[v] = deg.get(v, 0) + 1
    return support, deg


def classify_quasi(edges, vertices=None) -> QuasiClass:
    """Classify a subtree by its number of degree-2 vertices.

    ``vertices`` matters only for the edgeless single-vertex tree.
    """
    support, deg = _tree_support(edges, vertices)
    if not support:
        raise DomainError("empty vertex set is not a tree")
    if len(list(edges)) != len(support) - 1:
        raise DomainError("not a tree: edge count != vertex count - 1")
    if len(support) > 1:
        adj: dict[int, list[int]] = {v: [] for v in support}
        for u, v in edges:
            adj[u].append(v)
            adj[v].append(u)
        seen = {next(iter(support))}
        stack = [next(iter(support))]
        while stack:
            for w in adj[stack.pop()]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        if len(seen) != len(support):
            raise DomainError("not a tree: disconnected edge set")
    deg2 = tuple(sorted(v for v, d in deg.items() if d == 2))
    klass = {0: HIT, 1: QUASI1, 2: QUASI2}.get(len(deg2), NEITHER)
    return QuasiClass(klass, deg2)


def _check_attachment(g: Graph, label: str, verts: set, edges) -> None:
    """An attachment must be a HIST of the induced subgraph on its vertices."""
    for u, v in edges:
        if u not in verts or v not in verts:
            raise DomainError(f"{label}: edge ({u}, {v}) leaves the vertex set")
        if not g.has_edge(u, v):
            raise DomainError(f"{label}: edge ({u}, {v}) not in the host graph")
    q = classify_quasi(edges, verts)
    if q.klass != HIT:
        raise DomainError(f"{label}: attachment tree has degree-2 vertices {q.deg2_vertices}")


def extend_quasi1(g: Graph, t_edges, s_vertices, s_edges) -> tuple[tuple[int, int], ...]:
    """Glue a HIST of g[S] onto the center of a 1-quasi-HIT; result is a HIT.

    S must meet the subtree exactly in its center, and must have at least two
    vertices so the center's degree actually rises above 2.
    """
    t_edges = tuple(t_edges)
    q = classify_quasi(t_edges)
    if q.klass != QUASI1:
        raise DomainError(f"subtree is {q.klass}, expected {QUASI1}")
    v = q.deg2_vertices[0]
    s = set(s_vertices)
    a, _ = _tree_support(t_edges)
    if s & a != {v}:
        raise DomainError(f"attachment overlap {sorted(s & a)} != center {{{v}}}")
    if len(s) < 2:
        raise DomainError("attachment must extend the center (need |S| >= 2)")
    _check_attachment(g, "attachment", s, s_edges)
    combined = t_edges + tuple(tuple(e) for e in s_edges)
    out = classify_quasi(combined)
    if out.klass != HIT:
        raise DomainError(f"combined tree is {out.klass}, expected {HIT}")
    return tuple(sorted((min(e), max(e)) for e in combined))


def extend_quasi2(g: Graph, t_edges, s_vertices, s_edges, u_vertices, u_edges):
    """Glue HISTs of g[S] and g[U] onto the two centers of a 2-quasi-HIT."""
    t_edges = tuple(t_edges)
    q = classify_quasi(t_edges)
    if q.klass != QUASI2:
        raise DomainError(f"subtree is {q.klass}, expected {QUASI2}")
    centers = set(q.deg2_vertices)
    s, u = set(s_vertices), set(u_vertices)
    a, _ = _tree_support(t_edges)
    if s & u:
        raise DomainError(f"attachments overlap: {sorted(s & u)}")
    s_hit = s & a
    u_hit = u & a
    if len(s_hit) != 1 or not s_hit <= centers:
        raise DomainError(f"first attachment must meet the subtree in one center, got {sorted(s_hit)}")
    if len(u_hit) != 1 or not u_hit <= centers or u_hit == s_hit:
        raise DomainError(f"second attachment must meet the other center, got {sorted(u_hit)}")
    if len(s) < 2 or len(u) < 2:
        raise DomainError("attachments must extend their centers (need size >= 2)")
    _check_attachment(g, "first attachment", s, s_edges)
    _check_attachment(g, "second attachment", u, u_edges)
    combined = t_edges + tuple(tuple(e) for e in s_edges) + tuple(tuple(e) for e in u_edges)
    out = classify_quasi(combined)
    if out.klass != HIT:
        raise DomainError(f"combined tree is {out.klass}, expected {HIT}")
    return tuple(sorted((min(e), max(e)) for e in combined))


@dataclass(frozen=True)
class SearchResult:
    status: str  # Found | NoHist | BudgetExceeded
    tree: SpanningTree | None
    nodes: int


class _Budget(Exception):
    pass


def exact_search(g: Graph, budget: int = DEFAULT_BUDGET) -> SearchResult:
    """Decide HIST existence by branching on edges, high-degree endpoints first.

    A vertex whose included degree is pinned at exactly 2 kills its branch, as
    does disconnecting the graph of included-plus-undecided edges. NoHist is
    only reported after an exhaustive run, so the verdict cannot flip under a
    larger budget.
    """
    if not is_connected(g):
        raise DomainError("exact_search requires a connected graph")
    n = g.n
    if n == 1:
        return SearchResult(FOUND, SpanningTree.of(1, ()), 0)

    deg_g = [g.degree(v) for v in range(n)]
    edges = sorted(
        g.edges(),
        key=lambda e: (-max(deg_g[e[0]], deg_g[e[1]]), -min(deg_g[e[0]], deg_g[e[1]]), e),
    )
    m = len(edges)
    inc = [[] for _ in range(n)]
    for i, (u, v) in enumerate(edges):
        inc[u].append(i)
        inc[v].append(i)

    UND, IN, OUT = 0, 1, 2
    state = [UND] * m
    deg = [0] * n
    avail = deg_g[:]
    alive = list(g.nbr)  # adjacency over included + undecided edges
    parent = list(range(n))
    rank = [0] * n
    included = 0
    full = (1 << n) - 1

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    trail: list[tuple] = []

    def set_state(i, val):
        nonlocal included
        u, v = edges[i]
        state[i] = val
        avail[u] -= 1
        avail[v] -= 1
        if val == IN:
            deg[u] += 1
            deg[v] += 1
            included += 1
            ru, rv = find(u), find(v)
            if rank[ru] < rank[rv]:
                ru, rv = rv, ru
            parent[rv] = ru
            grew = 0
            if rank[ru] == rank[rv]:
                rank[ru] += 1
                grew = 1
            trail.append((i, val, rv, ru, grew))
        else:
            alive[u] &= ~(1 << v)
            alive[v] &= ~(1 << u)
            trail.append((i, val, -1, -1, 0))

    def undo_to(mark):
        nonlocal included
        while len(trail) > mark:
            i, val, rv, ru, grew = trail.pop()
            u, v = edges[i]
            state[i] = UND
            avail[u] += 1
            avail[v] += 1
            if val == IN:
                deg[u] -= 1
                deg[v] -= 1
                included -= 1
                parent[rv] = rv
                rank[ru] -= grew
            else:
                alive[u] |= 1 << v
                alive[v] |= 1 << u

    def propagate(queue) -> bool:
        """Apply forced decisions until fixpoint; False on a dead end."""
        while queue:
            v = queue.pop()
            d, a = deg[v], avail[v]
            if d + a == 0 or (d == 2 and a == 0):
                return False
            if (d == 2 or d == 0) and a == 1:
                for i in inc[v]:
                    if state[i] == UND:
                        u, w = edges[i]
                        if find(u) == find(w):
                            return False
                        set_state(i, IN)
                        queue.append(u)
                        queue.append(w)
                        break
        # connectivity over included + undecided edges
        seen = 1
        frontier = 1
        while frontier:
            grow = 0
            for v in bits(frontier):
                grow |= alive[v]
            frontier = grow & ~seen
            seen |= frontier
        return seen == full

    def first_undecided():
        for i in range(m):
            if state[i] == UND:
                return i
        return -1

    nodes = 0
    result_tree = None
    # Choice stack: (edge index, alternatives left, trail mark before the try).
    choices: list[list] = []
    pending = list(range(n))
    try:
        while True:
            nodes += 1
            if nodes > budget:
                raise _Budget
            ok = propagate(pending)
            if ok and included == n - 1:
                if all(d != 2 for d in deg):
                    result_tree = SpanningTree.of(
                        n, [edges[i] for i in range(m) if state[i] == IN]
                    )
                    break
                ok = False
            if ok:
                i = first_undecided()
                if i == -1:
                    ok = False  # all decided but not a spanning tree
            if ok:
                u, v = edges[i]
                mark = len(trail)
                if find(u) == find(v):
                    # would close a cycle: exclusion is forced, no choice point
                    choices.append([i, [], mark])
                    set_state(i, OUT)
                else:
                    choices.append([i, [OUT], mark])
                    set_state(i, IN)
                pending = [u, v]
                continue
            # backtrack
            while choices:
                i, alts, mark = choices[-1]
                undo_to(mark)
                if alts:
                    set_state(i, alts.pop())
                    u, v = edges[i]
                    pending = [u, v]
                    break
                choices.pop()
            else:
                return SearchResult(NO_HIST, None, nodes)
    except _Budget:
        return SearchResult(BUDGET_EXCEEDED, None, nodes)

    assert result_tree is not None and verify_hist(g, result_tree)
    return SearchResult(FOUND, result_tree, nodes)


@dataclass(frozen=True)
class OracleResult:
    status: str  # HistExists | CapExceeded
    tree_count: int
    hist_count: int

    @property
    def hist_exists(self) -> bool:
        return self.status != CAP_EXCEEDED and self.hist_count > 0

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "tree_count": self.tree_count,
            "hist_count": self.hist_count,
        }


class _Cap(Exception):
    pass


def oracle_enumerate(g: Graph, cap: int = DEFAULT_CAP) -> OracleResult:
    """Count every spanning tree and every HIST among them.

    Edges are processed in lexicographic order; at each undecided edge the
    recursion contracts it (include) and, when the remainder stays connected,
    deletes it (exclude). Each surviving leaf is exactly one spanning tree.
    Intended for small graphs; an explicit cap aborts rather than truncates.
    """
    if not is_connected(g):
        raise DomainError("oracle_enumerate requires a connected graph")
    n = g.n
    if n == 1:
        return OracleResult("HistExists", 1, 1)
    edges = g.edges()
    m = len(edges)

    # sufadj[i][v]: neighbors of v via edges[i:].
    sufadj = [[0] * n for _ in range(m + 1)]
    for i in range(m - 1, -1, -1):
        row = sufadj[i]
        nxt = sufadj[i + 1]
        for v in range(n):
            row[v] = nxt[v]
        u, v = edges[i]
        row[u] |= 1 << v
        row[v] |= 1 << u

    parent = list(range(n))
    size = [1] * n
    comp_mask = [1 << v for v in range(n)]
    deg = [0] * n
    full = (1 << n) - 1
    counts = [0, 0, 0]  # total, hist, ndeg2

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def suffix_connected(j):
        reach = comp_mask[find(0)]
        frontier = reach
        srow = sufadj[j]
        while frontier:
            if reach == full:
                return True
            nxt = 0
            for v in bits(frontier):
                nxt |= srow[v]
            nxt &= ~reach
            add = 0
            for w in bits(nxt):
                if not (add >> w) & 1:
                    add |= comp_mask[find(w)]
            add &= ~reach
            frontier = add
            reach |= add
        return reach == full

    def rec(i, ncomp):
        if ncomp == 1:
            counts[0] += 1
            if counts[0] > cap:
                raise _Cap
            if counts[2] == 0:
                counts[1] += 1
            return
        while i < m:
            u, v = edges[i]
            if find(u) != find(v):
                break
            i += 1
        else:
            return
        u, v = edges[i]
        # contract
        ru, rv = find(u), find(v)
        if size[ru] < size[rv]:
            ru, rv = rv, ru
        parent[rv] = ru
        size[ru] += size[rv]
        saved_mask = comp_mask[ru]
        comp_mask[ru] |= comp_mask[rv]
        for x in (u, v):
            deg[x] += 1
            if deg[x] == 2:
                counts[2] += 1
            elif deg[x] == 3:
                counts[2] -= 1
        rec(i + 1, ncomp - 1)
        for x in (u, v):
            if deg[x] == 2:
                counts[2] -= 1
            elif deg[x] == 3:
                counts[2] += 1
            deg[x] -= 1
        comp_mask[ru] = saved_mask
        size[ru] -= size[rv]
        parent[rv] = rv
        # delete
        if suffix_connected(i + 1):
            rec(i + 1, ncomp)

    try:
        rec(0, n)
    except _Cap:
        return OracleResult(CAP_EXCEEDED, counts[0], counts[1])
    return OracleResult("HistExists", counts[0], counts[1])


def dense_hist(g: Graph) -> SpanningTree | None:
    """Greedy star-expansion heuristic for dense graphs; verified or absent.

    Seeds at a maximum-degree vertex, repeatedly hangs the batch of unreached
    neighbors off the tree vertex with the most of them, then repairs
    degree-2 vertices by re-hanging children or pulling a neighbor's subtree.
    """
    if not is_connected(g):
        raise DomainError("dense_hist requires a connected graph")
    n = g.n
    if n == 1:
        return SpanningTree.of(1, ())
    if n == 2:
        return SpanningTree.of(2, [(0, 1)])

    deg_order = sorted(range(n), key=lambda v: (-g.degree(v), v))
    for root in deg_order[:3]:
        tree = _grow_and_repair(g, root)
        if tree is not None and verify_hist(g, tree):
            return tree
    return None


def _grow_and_repair(g: Graph, root: int) -> SpanningTree | None:
    n = g.n
    reached = 1 << root | g.nbr[root]
    tadj = [0] * n
    tadj[root] = g.nbr[root]
    for v in bits(g.nbr[root]):
        tadj[v] = 1 << root
    full = (1 << n) - 1
    while reached != full:
        best_v = -1
        best_c = -1
        for v in bits(reached):
            c = (g.nbr[v] & ~reached).bit_count()
            if c > best_c:
                best_c, best_v = c, v
        if best_c <= 0:
            return None  # disconnected remainder; cannot happen on connected input
        new = g.nbr[best_v] & ~reached
        tadj[best_v] |= new
        for w in bits(new):
            tadj[w] |= 1 << best_v
        reached |= new

    # Repair: move edges away from degree-2 vertices without creating new ones.
    for _ in range(2 * n):
        bad = [v for v in range(n) if tadj[v].bit_count() == 2]
        if not bad:
            break
        fixed_any = False
        for v in bad:
            if tadj[v].bit_count() != 2:
                continue
            if _rehang_child(g, tadj, v) or _pull_neighbor(g, tadj, v):
                fixed_any = True
        if not fixed_any:
            return None
    edges = [(u, v) for u in range(n) for v in bits(tadj[u]) if u < v]
    return SpanningTree.of(n, edges)


def _subtree_mask(tadj, start: int, blocked: int) -> int:
    seen = 1 << start
    frontier = seen
    while frontier:
        grow = 0
        for v in bits(frontier):
            grow |= tadj[v]
        frontier = grow & ~seen & ~(1 << blocked)
        seen |= frontier
    return seen


def _rehang_child(g, tadj, v: int) -> bool:
    """Detach one tree edge at v and re-anchor it on a vertex that tolerates it."""
    for c in bits(tadj[v]):
        below = _subtree_mask(tadj, c, v)
        # any graph neighbor of c outside c's own subtree, not v, degree-safe
        for w in bits(g.nbr[c] & ~below):
            if w == v:
                continue
            dw = tadj[w].bit_count()
            if dw == 1:
                continue  # would only shift the defect
            tadj[v] &= ~(1 << c)
            tadj[c] &= ~(1 << v)
            tadj[w] |= 1 << c
            tadj[c] |= 1 << w
            return True
    return False


def _pull_neighbor(g, tadj, v: int) -> bool:
    """Give v a third child by stealing an adjacent subtree whose parent spares it."""
    for w in bits(g.nbr[v] & ~tadj[v]):
        # v must stay outside the piece of the tree that moves with w
        for p in bits(tadj[w]):
            sub = _subtree_mask(tadj, w, p)
            if (sub >> v) & 1:
                continue
            dp = tadj[p].bit_count()
            if dp == 3:
                continue  # parent would drop to 2
            tadj[p] &= ~(1 << w)
            tadj[w] &= ~(1 << p)
            tadj[v] |= 1 << w
            tadj[w] |= 1 << v
            return True
    return False
