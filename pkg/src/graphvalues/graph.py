"""Weighted directed graphs: construction, file formats, SCCs, value propagation.

Every graph carries two integer weights per edge: the primary weight ``wt``
(arbitrary sign) and a secondary weight ``wtp`` that must be strictly
positive (it is the denominator weight of ratio objectives; plain mean
problems simply leave it at 1).

Node ids are dense ints ``0..n-1``. Original input names are kept in
``labels`` so command-line output can echo them back.
"""
from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from typing import Iterable, Sequence

INF = float("inf")


class ParseError(ValueError):
    """Malformed graph input. Carries the 1-based input line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        super().__init__(f"line {line}: {message}" if line is not None else message)


class InvariantError(RuntimeError):
    """An internal contract was violated; indicates a bug, not bad input."""


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    wt: int
    wtp: int = 1


class WeightedDigraph:
    """A directed graph with integer edge weights, immutable by convention.

    At most one edge per (src, dst) pair; self-loops are allowed; nodes
    without outgoing edges are allowed.
    """

    __slots__ = ("n", "edges", "labels", "out", "inc", "edge_index")

    def __init__(self, n: int, edges: Sequence[Edge], labels: Sequence[str] | None = None):
        if labels is None:
            labels = [str(i) for i in range(n)]
        if len(labels) != n:
            raise ValueError(f"{len(labels)} labels for {n} nodes")
        seen: set[tuple[int, int]] = set()
        for e in edges:
            if not (0 <= e.src < n and 0 <= e.dst < n):
                raise ValueError(f"edge ({e.src},{e.dst}) out of range for n={n}")
            if e.wtp < 1:
                raise ValueError(f"edge ({e.src},{e.dst}) has non-positive wtp={e.wtp}")
            if (e.src, e.dst) in seen:
                raise ValueError(f"duplicate edge ({e.src},{e.dst})")
            seen.add((e.src, e.dst))
        self.n = n
        self.edges = list(edges)
        self.labels = list(labels)
        self.out: list[list[int]] = [[] for _ in range(n)]
        self.inc: list[list[int]] = [[] for _ in range(n)]
        self.edge_index: dict[tuple[int, int], int] = {}
        for i, e in enumerate(self.edges):
            self.out[e.src].append(i)
            self.inc[e.dst].append(i)
            self.edge_index[(e.src, e.dst)] = i

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_edges(
        cls,
        n: int,
        raw: Iterable[tuple],
        labels: Sequence[str] | None = None,
    ) -> "WeightedDigraph":
        """Build from (src, dst, wt[, wtp]) tuples.

        Duplicate (src, dst) pairs keep the smallest (wt, wtp) entry and emit
        a warning; edge order otherwise follows first appearance.
        """
        best: dict[tuple[int, int], tuple[int, int]] = {}
        order: list[tuple[int, int]] = []
        dups = 0
        for t in raw:
            if len(t) == 3:
                u, v, w = t
                wp = 1
            else:
                u, v, w, wp = t
            key = (u, v)
            if key in best:
                dups += 1
                if (w, wp) < best[key]:
                    best[key] = (w, wp)
            else:
                best[key] = (w, wp)
                order.append(key)
        if dups:
            warnings.warn(f"{dups} duplicate edge(s) dropped, keeping minimum weight", stacklevel=2)
        edges = [Edge(u, v, *best[(u, v)]) for (u, v) in order]
        return cls(n, edges, labels)

    def negated(self) -> "WeightedDigraph":
        """Copy with every primary weight negated (wtp and labels kept)."""
        return WeightedDigraph(
            self.n, [Edge(e.src, e.dst, -e.wt, e.wtp) for e in self.edges], self.labels
        )

    def with_unit_wtp(self) -> "WeightedDigraph":
        """Copy with every secondary weight forced to 1."""
        return WeightedDigraph(
            self.n, [Edge(e.src, e.dst, e.wt, 1) for e in self.edges], self.labels
        )

    # -- simple accessors -----------------------------------------------------

    @property
    def m(self) -> int:
        return len(self.edges)

    def max_abs_weight(self) -> int:
        """W = max |wt| over edges (0 for an edgeless graph)."""
        return max((abs(e.wt) for e in self.edges), default=0)

    def max_wtp(self) -> int:
        """T = max wtp over edges (1 for an edgeless graph)."""
        return max((e.wtp for e in self.edges), default=1)

    def label_id(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no node labelled {label!r}") from None

    def __repr__(self) -> str:
        return f"WeightedDigraph(n={self.n}, m={self.m})"


def induced_subgraph(g: WeightedDigraph, nodes: Sequence[int]) -> tuple[WeightedDigraph, list[int]]:
    """Subgraph on ``nodes`` with dense relabeling; returns (sub, old_ids).

    old_ids[i] is the original id of the subgraph's node i.
    """
    old_ids = list(nodes)
    new_id = {u: i for i, u in enumerate(old_ids)}
    edges = [
        Edge(new_id[e.src], new_id[e.dst], e.wt, e.wtp)
        for e in g.edges
        if e.src in new_id and e.dst in new_id
    ]
    labels = [g.labels[u] for u in old_ids]
    return WeightedDigraph(len(old_ids), edges, labels), old_ids


# -- strongly connected components ---------------------------------------------


@dataclass
class SccPartition:
    """Tarjan output: components listed in reverse topological order
    (every component precedes the components that can reach it)."""

    comp_of: list[int]
    components: list[list[int]]
    condensation: set[tuple[int, int]] = field(default_factory=set)

    def __len__(self) -> int:
        return len(self.components)


def tarjan_scc(g: WeightedDigraph) -> SccPartition:
    """Iterative Tarjan; safe for deep graphs (no recursion)."""
    n = g.n
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comp_of = [-1] * n
    components: list[list[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        # Each frame is [node, iterator position into g.out[node]].
        work = [(root, 0)]
        while work:
            v, pi = work.pop()
            if pi == 0:
                index[v] = low[v] = counter
                counter += 1
                stack.append(v)
                on_stack[v] = True
            recurse = False
            out = g.out[v]
            while pi < len(out):
                w = g.edges[out[pi]].dst
                pi += 1
                if index[w] == -1:
                    work.append((v, pi))
                    work.append((w, 0))
                    recurse = True
                    break
                if on_stack[w]:
                    if index[w] < low[v]:
                        low[v] = index[w]
            if recurse:
                continue
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp_of[w] = len(components)
                    comp.append(w)
                    if w == v:
                        break
                components.append(comp)
            if work:
                parent = work[-1][0]
                if low[v] < low[parent]:
                    low[parent] = low[v]

    condensation = set()
    for e in g.edges:
        a, b = comp_of[e.src], comp_of[e.dst]
        if a != b:
            condensation.add((a, b))
    return SccPartition(comp_of, components, condensation)


def component_has_cycle(g: WeightedDigraph, scc: SccPartition, comp_id: int) -> bool:
    """A component contains a cycle iff it has >= 2 nodes or a self-loop."""
    comp = scc.components[comp_id]
    if len(comp) > 1:
        return True
    u = comp[0]
    return (u, u) in g.edge_index


def propagate_component_values(
    g: WeightedDigraph, scc: SccPartition, per_component: Sequence
) -> list:
    """Per-node value: min of per_component over all components reachable
    from the node's own component. Values may be numbers or INF.

    One pass in reverse topological order (Tarjan emission order): every
    condensation successor is finalized before its predecessors.
    """
    if len(per_component) != len(scc.components):
        raise ValueError("one value per component required")
    best = list(per_component)
    succs: list[list[int]] = [[] for _ in scc.components]
    for (a, b) in scc.condensation:
        succs[a].append(b)
    for i in range(len(scc.components)):
        for j in succs[i]:
            if best[j] < best[i]:
                best[i] = best[j]
    return [best[scc.comp_of[u]] for u in range(g.n)]


# -- file formats ---------------------------------------------------------------

_DOT_EDGE = re.compile(
    r"^\s*([A-Za-z_][A-Za-z_0-9]*|\d+)\s*->\s*([A-Za-z_][A-Za-z_0-9]*|\d+)"
    r"\s*\[\s*label\s*=\s*\"?(-?\d+)\"?\s*\]\s*$"
)


def _parse_int(tok: str, what: str, ln: int) -> int:
    try:
        return int(tok)
    except ValueError:
        raise ParseError(f"bad {what} {tok!r}", ln) from None


def parse_graph(text: str, fmt: str = "dimacs") -> WeightedDigraph:
    """Parse one of the three supported formats.

    dimacs   -- 'p mrc <n> <m>' header, 'a <src> <dst> <wt> [<wtp>]' 1-based,
                'c ...' comment lines.
    edgelist -- '<src> <dst> <wt> [<wtp>]' per line, 0-based, '#' comments.
    dot      -- tiny digraph subset: 'a -> b [label="w"];' statements.
    """
    if fmt == "dimacs":
        return _parse_dimacs(text)
    if fmt == "edgelist":
        return _parse_edgelist(text)
    if fmt == "dot":
        return _parse_dot(text)
    raise ValueError(f"unknown graph format {fmt!r}")


def _parse_dimacs(text: str) -> WeightedDigraph:
    n = m = None
    raw: list[tuple[int, int, int, int]] = []
    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("c"):
            continue
        parts = line.split()
        if parts[0] == "p":
            if n is not None:
                raise ParseError("second problem line", ln)
            if len(parts) != 4 or parts[1] != "mrc":
                raise ParseError("problem line must be 'p mrc <n> <m>'", ln)
            n = _parse_int(parts[2], "node count", ln)
            m = _parse_int(parts[3], "edge count", ln)
            if n < 0 or m < 0:
                raise ParseError("negative size in problem line", ln)
        elif parts[0] == "a":
            if n is None:
                raise ParseError("edge line before problem line", ln)
            if len(parts) not in (4, 5):
                raise ParseError("edge line must be 'a <src> <dst> <wt> [<wtp>]'", ln)
            u = _parse_int(parts[1], "source id", ln)
            v = _parse_int(parts[2], "target id", ln)
            w = _parse_int(parts[3], "weight", ln)
            wp = _parse_int(parts[4], "secondary weight", ln) if len(parts) == 5 else 1
            if not (1 <= u <= n and 1 <= v <= n):
                raise ParseError(f"node id out of range 1..{n}", ln)
            if wp < 1:
                raise ParseError(f"secondary weight must be >= 1, got {wp}", ln)
            raw.append((u - 1, v - 1, w, wp))
        else:
            raise ParseError(f"unknown line type {parts[0]!r}", ln)
    if n is None:
        raise ParseError("missing 'p mrc' problem line")
    if len(raw) != m:
        raise ParseError(f"problem line declares {m} edges, found {len(raw)}")
    labels = [str(i + 1) for i in range(n)]
    return WeightedDigraph.from_edges(n, raw, labels)


def _parse_edgelist(text: str) -> WeightedDigraph:
    ids: dict[str, int] = {}
    labels: list[str] = []
    raw: list[tuple[int, int, int, int]] = []

    def intern(tok: str, ln: int) -> int:
        _parse_int(tok, "node id", ln)
        if int(tok) < 0:
            raise ParseError(f"negative node id {tok}", ln)
        if tok not in ids:
            ids[tok] = len(labels)
            labels.append(tok)
        return ids[tok]

    for ln, line in enumerate(text.splitlines(), start=1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if len(parts) not in (3, 4):
            raise ParseError("edge line must be '<src> <dst> <wt> [<wtp>]'", ln)
        u = intern(parts[0], ln)
        v = intern(parts[1], ln)
        w = _parse_int(parts[2], "weight", ln)
        wp = _parse_int(parts[3], "secondary weight", ln) if len(parts) == 4 else 1
        if wp < 1:
            raise ParseError(f"secondary weight must be >= 1, got {wp}", ln)
        raw.append((u, v, w, wp))
    return WeightedDigraph.from_edges(len(labels), raw, labels)


def _parse_dot(text: str) -> WeightedDigraph:
    body = text.strip()
    mo = re.match(r"^\s*digraph\s*([A-Za-z_0-9]*)\s*\{(.*)\}\s*$", body, re.S)
    if not mo:
        raise ParseError("expected 'digraph [name] { ... }'")
    ids: dict[str, int] = {}
    labels: list[str] = []
    raw: list[tuple[int, int, int, int]] = []
    # Track line numbers by position of each statement in the braced body.
    head_lines = text[: text.index("{")].count("\n")
    pos = 0
    body_text = mo.group(2)
    for stmt in body_text.split(";"):
        start = pos
        pos += len(stmt) + 1
        if not stmt.strip():
            continue
        ln = head_lines + 1 + body_text[:start].count("\n")
        m2 = _DOT_EDGE.match(stmt)
        if not m2:
            raise ParseError(f"cannot parse edge statement {stmt.strip()!r}", ln)
        names = (m2.group(1), m2.group(2))
        for name in names:
            if name not in ids:
                ids[name] = len(labels)
                labels.append(name)
        raw.append((ids[names[0]], ids[names[1]], int(m2.group(3)), 1))
    return WeightedDigraph.from_edges(len(labels), raw, labels)


def to_dimacs(g: WeightedDigraph) -> str:
    lines = [f"p mrc {g.n} {g.m}"]
    for e in g.edges:
        lines.append(f"a {e.src + 1} {e.dst + 1} {e.wt} {e.wtp}")
    return "\n".join(lines) + "\n"


def to_edgelist(g: WeightedDigraph) -> str:
    lines = [f"{e.src} {e.dst} {e.wt} {e.wtp}" for e in g.edges]
    return "\n".join(lines) + ("\n" if lines else "")


def load_graph(path: str) -> WeightedDigraph:
    """Read a graph file, picking the format from its first non-blank line."""
    with open(path, "r", encoding="utf-8") as fh:
        text = fh.read()
    return parse_any(text)


def parse_any(text: str) -> WeightedDigraph:
    for line in text.splitlines():
        s = line.strip()
        if not s:
            continue
        if s.startswith("digraph"):
            return parse_graph(text, "dot")
        if s[0] in "pc":
            return parse_graph(text, "dimacs")
        if s.startswith("#") or s[0].isdigit() or s[0] == "-":
            return parse_graph(text, "edgelist")
        break
    return parse_graph(text, "dimacs")
