"""Full decision pipeline combining obstructions, construction and search."""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .casework import ConstructionTrace, construct_hist
from .conditions import ConditionReport, condition_report
from .errors import DomainError
from .graphs import Graph, is_connected
from .obstructions import NO_OBSTRUCTION, ObstructionReport, match_family
from .trees import DEFAULT_BUDGET, SpanningTree, dense_hist, exact_search, verify_hist

HIST = "Hist"
NO_HIST = "NoHist"
UNKNOWN = "Unknown"

METHODS = ("auto", "constructive", "exact", "greedy")


@dataclass
class SolveResult:
    status: str  # Hist | NoHist | Unknown
    method: str  # constructive | exact | greedy | oracle | obstruction
    tree: SpanningTree | None
    trace: ConstructionTrace | None
    report: ConditionReport
    obstruction: ObstructionReport
    stats: dict = field(default_factory=dict)
    reason: str = ""

    def to_json_dict(self) -> dict:
        return {
            "status": self.status,
            "method": self.method,
            "tree": None if self.tree is None else self.tree.to_json_dict(),
            "trace": None if self.trace is None else self.trace.to_json_list(),
            "report": self.report.to_json_dict(),
            "obstruction": self.obstruction.to_json_dict(),
            "stats": dict(self.stats),
            "reason": self.reason,
        }


def solve(
    g: Graph,
    method: str = "auto",
    budget: int = DEFAULT_BUDGET,
    seed: int = 0,
    timing: bool = False,
) -> SolveResult:
    """Decide HIST existence for a connected graph.

    auto = obstruction certificates, then the constructive machine, then the
    greedy heuristic, then exhaustive search under the node budget. A Hist
    status is always backed by an in-process verification of the tree;
    Unknown only appears when the budget ran out. ``timing`` opts into wall
    clock stats (off by default so equal inputs give identical bytes).
    """
    if method not in METHODS:
        raise DomainError(f"unknown method {method!r}")
    if not is_connected(g):
        raise DomainError("solve requires a connected graph")
    t0 = time.monotonic()
    report = condition_report(g)
    obstruction = match_family(g)
    nodes = 0
    status, how, tree, trace, reason = UNKNOWN, method, None, None, ""

    if method in ("auto", "constructive"):
        if obstruction.kind != "None":
            status, how = NO_HIST, "obstruction"
            reason = f"certified {obstruction.kind}"
        else:
            res = construct_hist(g)
            if res.status == "hist":
                status, how, tree, trace = HIST, "constructive", res.tree, res.trace
            elif res.status == "nohist":
                if res.obstruction.kind != "None":
                    status, how = NO_HIST, "obstruction"
                    obstruction = res.obstruction
                    reason = res.reason
                else:
                    # tiny complete graph refusals are re-proved by search
                    sr = exact_search(g, budget)
                    nodes += sr.nodes
                    status, how, reason = NO_HIST, "exact", res.reason
            else:
                reason = res.reason
                if method == "constructive":
                    status, how = UNKNOWN, "constructive"

    if method in ("auto", "greedy") and status == UNKNOWN and how != "constructive":
        t = dense_hist(g)
        if t is not None and verify_hist(g, t):
            status, how, tree = HIST, "greedy", t
        elif method == "greedy":
            status, how = UNKNOWN, "greedy"
            reason = "greedy heuristic found no tree"

    if (method == "exact" or (method == "auto" and status == UNKNOWN)):
        sr = exact_search(g, budget)
        nodes += sr.nodes
        how = "exact"
        if sr.status == "Found":
            status, tree, reason = HIST, sr.tree, ""
        elif sr.status == "NoHist":
            status, reason = NO_HIST, "exhaustive search"
        else:
            status, reason = UNKNOWN, "search budget exhausted"

    if status == HIST:
        assert tree is not None and verify_hist(g, tree)
    elapsed_ms = int((time.monotonic() - t0) * 1000) if timing else 0
    return SolveResult(
        status=status,
        method=how,
        tree=tree,
        trace=trace,
        report=report,
        obstruction=obstruction,
        stats={"nodes_explored": nodes, "elapsed_ms": elapsed_ms},
        reason=reason,
    )
