"""Degree and neighborhood-union parameters with their sufficiency thresholds.

Three quantities drive every decision in this package: the minimum degree,
the minimum degree sum over nonadjacent pairs, and the minimum size of a
united neighborhood over nonadjacent pairs. On complete graphs the latter
two minimize over an empty pair set and are reported as infinite.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import DomainError
from .graphs import Graph, bits, is_connected

INF = None  # sentinel for minima over an empty pair set; "inf" in JSON


@dataclass(frozen=True)
class ConditionReport:
    n: int
    m: int
    delta: int
    sigma: int | None
    nc: int | None
    meets_thm12: bool
    meets_thm13: bool
    meets_thm15: bool
    complete: bool

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "m": self.m,
            "delta": self.delta,
            "sigma": "inf" if self.sigma is None else self.sigma,
            "nc": "inf" if self.nc is None else self.nc,
            "meets_thm12": self.meets_thm12,
            "meets_thm13": self.meets_thm13,
            "meets_thm15": self.meets_thm15,
            "complete": self.complete,
        }


def _pair_minima(g: Graph) -> tuple[int | None, int | None]:
    """(sigma, nc) minimized over unordered nonadjacent distinct pairs."""
    sigma = nc = None
    deg = [a.bit_count() for a in g.nbr]
    for u in range(g.n):
        non_nbrs = ~g.nbr[u] & ((g.vertex_mask() >> (u + 1)) << (u + 1))
        for v in bits(non_nbrs):
            s = deg[u] + deg[v]
            if sigma is None or s < sigma:
                sigma = s
            c = (g.nbr[u] | g.nbr[v]).bit_count()
            if nc is None or c < nc:
                nc = c
    return sigma, nc


def condition_report(g: Graph) -> ConditionReport:
    """Exact parameter values and integer-arithmetic threshold flags."""
    if g.n < 1 or not is_connected(g):
        raise DomainError("condition_report requires a connected graph with n >= 1")
    n = g.n
    delta = g.min_degree()
    sigma, nc = _pair_minima(g)
    complete = sigma is None
    meets_thm12 = delta * delta >= 16 * n
    meets_thm13 = n >= 8 and (complete or sigma >= n - 1)
    meets_thm15 = n >= 270 and (complete or 2 * nc >= n - 1)
    return ConditionReport(
        n=n,
        m=g.m,
        delta=delta,
        sigma=sigma,
        nc=nc,
        meets_thm12=meets_thm12,
        meets_thm13=meets_thm13,
        meets_thm15=meets_thm15,
        complete=complete,
    )


def nc_pair_witness(g: Graph) -> tuple[int, int, int]:
    """Lexicographically least nonadjacent pair attaining the neighborhood-union
    minimum, with its value."""
    if g.is_complete():
        raise DomainError("complete graph has no nonadjacent pair")
    best = None
    witness = None
    for u in range(g.n):
        non_nbrs = ~g.nbr[u] & ((g.vertex_mask() >> (u + 1)) << (u + 1))
        for v in bits(non_nbrs):
            c = (g.nbr[u] | g.nbr[v]).bit_count()
            if best is None or c < best:
                best = c
                witness = (u, v)
    return witness[0], witness[1], best


def implication_check(g: Graph) -> bool:
    """True iff a degree-sum of at least n-1 forces the neighborhood-union
    bound of (n-1)/2; exists purely as a tested invariant surface."""
    if not is_connected(g):
        raise DomainError("implication_check requires a connected graph")
    rep = condition_report(g)
    if rep.sigma is None or rep.sigma < g.n - 1:
        return True
    return rep.nc is None or 2 * rep.nc >= g.n - 1
