"""Minimum cycle weight by a bottom-up sweep of a tree decomposition.

Each bag carries a sparse map of local distances: weights of the best known
walks between pairs of its nodes, built from the maps of its two children
plus the edges folded at the bag. When the sweep reaches the root bag of a
node x it closes all pairs through x and reads the diagonal entry (x, x),
the weight of the best closed walk through x seen so far.

The resulting value c is exact whenever c >= 0 (and c is +inf exactly when
the graph is acyclic). A negative c certifies a negative cycle but may
undershoot the true minimum: closing through x can splice walks that share
edges, so c only satisfies c <= c* and |c| <= |c*| * m * 2**height. Sign
questions are therefore answered exactly, which is all the decision
procedures built on top of this need.
"""
from __future__ import annotations

from dataclasses import dataclass

from .graph import INF, WeightedDigraph
from .treedec import TreeDecomposition, build_decomposition, edge_fold_table


@dataclass
class MinCycleResult:
    value: object  # int, or INF when the graph has no cycle
    height: int
    peak_maps: int  # most maps simultaneously retained during the sweep
    exact: bool  # True iff value >= 0 or value is INF

    @property
    def negative(self) -> bool:
        return self.value is not INF and self.value < 0

    def blowup_bound(self, m: int) -> int:
        """|value| <= |true minimum| * this factor (1 when exact)."""
        return 1 if self.exact else max(1, m) * 2**self.height


def min_cycle(
    g: WeightedDigraph,
    t: TreeDecomposition | None = None,
    weights: list | None = None,
    heuristic: str = "min-degree",
) -> MinCycleResult:
    """Minimum cycle weight of g (see module docstring for the guarantee).

    ``weights`` optionally replaces edge weights by index, so one
    decomposition can be reused across many reweighted sweeps.
    """
    if t is None:
        t = build_decomposition(g, heuristic)
    wt = weights if weights is not None else [e.wt for e in g.edges]
    fold = edge_fold_table(g, t)
    maps: dict[int, dict] = {}
    live = peak = 0
    best = INF
    for b in t.postorder():
        bag = t.bags[b]
        cur: dict[tuple[int, int], int] = {}
        for ch in t.children[b]:
            child = maps.pop(ch)
            live -= 1
            for k, w in child.items():
                if k[0] in bag and k[1] in bag and (k not in cur or w < cur[k]):
                    cur[k] = w
        for u, v, ei in fold[b]:
            w = wt[ei]
            k = (u, v)
            if k not in cur or w < cur[k]:
                cur[k] = w
        x = t.single_rooted(b)
        if x is not None:
            into = [(k[0], w) for k, w in cur.items() if k[1] == x]
            out = [(k[1], w) for k, w in cur.items() if k[0] == x]
            for u, wu in into:
                for v, wv in out:
                    k = (u, v)
                    w = wu + wv
                    if k not in cur or w < cur[k]:
                        cur[k] = w
            d = cur.get((x, x))
            if d is not None and d < best:
                best = d
        maps[b] = cur
        live += 1
        if live > peak:
            peak = live
    exact = best is INF or best >= 0
    return MinCycleResult(best, t.height, peak, exact)


def has_negative_cycle(
    g: WeightedDigraph,
    t: TreeDecomposition | None = None,
    weights: list | None = None,
) -> bool:
    """Exact: the sweep's sign is always right."""
    return min_cycle(g, t, weights).negative
