"""Exhaustive non-isomorphic generation of small connected graphs.

Graphs on k+1 vertices are built by attaching one new vertex to every
nonempty neighbor subset of every connected graph on k vertices; since each
connected graph has a vertex whose removal keeps it connected, this reaches
everything. Duplicates are rejected through a canonical form: the
lexicographically smallest adjacency bitstring over all labelings compatible
with an iterated degree-refinement coloring.
"""

from __future__ import annotations

from .graphs import Graph, bits


def _refine_colors(n: int, nbr: tuple[int, ...]) -> list[int]:
    color = [nbr[v].bit_count() for v in range(n)]
    for _ in range(n):
        sig = [
            (color[v], tuple(sorted(color[w] for w in bits(nbr[v]))))
            for v in range(n)
        ]
        ranking = {s: i for i, s in enumerate(sorted(set(sig)))}
        new = [ranking[s] for s in sig]
        if new == color:
            break
        color = new
    return color


def _twin_classes(n: int, nbr: tuple[int, ...]) -> list[int]:
    """Partition id per vertex; twins (swappable by automorphism) share one."""
    twin = list(range(n))
    for v in range(n):
        for w in range(v + 1, n):
            if twin[w] != w:
                continue
            both = 1 << v | 1 << w
            if nbr[v] & ~both == nbr[w] & ~both and bool(nbr[v] >> w & 1) == bool(
                nbr[w] >> v & 1
            ):
                twin[w] = twin[v]
    return twin


def canonical_form(g: Graph) -> bytes:
    """Label-independent certificate; equal iff the graphs are isomorphic."""
    n = g.n
    if n == 0:
        return b""
    if n == 1:
        return bytes([1])
    color = _refine_colors(n, g.nbr)
    target = sorted(color)
    twin = _twin_classes(n, g.nbr)

    best: list[int] | None = None
    placed = [0] * n
    used = [False] * n
    perm = [0] * n

    def dfs(k: int, tied: bool):
        nonlocal best
        seen_twins = set()
        for v in range(n):
            if used[v] or color[v] != target[k]:
                continue
            if twin[v] in seen_twins:
                continue  # an unused twin already tried this slot
            seen_twins.add(twin[v])
            row = 0
            nv = g.nbr[v]
            for j in range(k):
                row = row << 1 | (nv >> perm[j] & 1)
            child_tied = tied
            if tied and best is not None:
                if row > best[k]:
                    continue
                child_tied = row == best[k]
            used[v] = True
            perm[k] = v
            placed[k] = row
            if k + 1 == n:
                if best is None or placed < best:
                    best = placed[:]
            else:
                dfs(k + 1, child_tied)
            used[v] = False

    # Seed with one greedy labeling, then search with pruning against it.
    order = sorted(range(n), key=lambda v: color[v])
    for k, v in enumerate(order):
        perm[k] = v
        row = 0
        for j in range(k):
            row = row << 1 | (g.nbr[v] >> perm[j] & 1)
        placed[k] = row
    best = placed[:]
    dfs(0, True)

    out = bytearray([min(n, 255)])
    for row in best:
        out.extend(row.to_bytes((n + 7) // 8, "big"))
    return bytes(out)


def connected_atlas(n_max: int):
    """Yield every connected graph on 1..n_max vertices, one per iso class.

    Within each order, graphs come in a deterministic (canonical-form) order.
    """
    if n_max < 1:
        return
    level = {canonical_form(Graph(1, (0,))): Graph(1, (0,))}
    yield Graph(1, (0,))
    for n in range(2, n_max + 1):
        nxt: dict[bytes, Graph] = {}
        for g in level.values():
            base = list(g.nbr) + [0]
            for subset in range(1, 1 << (n - 1)):
                nbr = base[:]
                nbr[n - 1] = subset
                for w in bits(subset):
                    nbr[w] = nbr[w] | 1 << (n - 1)
                h = Graph(n, tuple(nbr))
                c = canonical_form(h)
                if c not in nxt:
                    nxt[c] = h
        level = dict(sorted(nxt.items()))
        yield from level.values()


def count_connected(n_max: int) -> dict[int, int]:
    counts: dict[int, int] = {}
    for g in connected_atlas(n_max):
        counts[g.n] = counts.get(g.n, 0) + 1
    return counts
