"""Tree decompositions: greedy construction, validation, balancing.

A decomposition here is a rooted binary tree of bags satisfying the usual
three conditions (every node covered, every edge inside some bag, the bags
holding any fixed node form a connected subtree). After normalization each
bag is additionally the *root bag* of at most one node, where the root bag
of ``u`` is the smallest-level bag containing ``u``; the per-node traversal
algorithms in this package rely on that.

Construction is greedy elimination (min-degree by default) on the undirected
skeleton, followed by rebalancing to height O(log n). Balancing works by
divide and conquer over heavy paths: each produced bag is the union of at
most three original bags, so the width grows by at most a factor of three.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass

from .graph import InvariantError, WeightedDigraph

# Recorded height constant: after balancing (including the one-root-per-bag
# chains) the tree height is asserted to be <= HEIGHT_FACTOR * ceil(log2 B) +
# HEIGHT_FACTOR where B is the number of bags. Checked by the test suite.
HEIGHT_FACTOR = 6


@dataclass
class Violation:
    condition: str  # coverage | edge-coverage | connectedness | binary | root-bags
    detail: str


class TreeDecomposition:
    """Rooted tree of bags. Structure is validated on construction; the
    decomposition conditions themselves are checked by :func:`validate`."""

    __slots__ = (
        "bags",
        "parent",
        "children",
        "root",
        "n_nodes",
        "level",
        "bfs_order",
        "root_bag_of",
        "rooted",
        "_postorder",
    )

    def __init__(self, bags, parent, n_nodes: int):
        if len(bags) != len(parent) or not bags:
            raise ValueError("need one parent entry per bag and at least one bag")
        self.bags = [frozenset(b) for b in bags]
        self.parent = list(parent)
        self.n_nodes = n_nodes
        roots = [i for i, p in enumerate(self.parent) if p is None]
        if len(roots) != 1:
            raise ValueError(f"expected exactly one root bag, found {len(roots)}")
        self.root = roots[0]
        nb = len(self.bags)
        self.children = [[] for _ in range(nb)]
        for i, p in enumerate(self.parent):
            if p is not None:
                self.children[p].append(i)
        # BFS from the root assigns levels and detects stray components.
        self.level = [-1] * nb
        order = [self.root]
        self.level[self.root] = 0
        for b in order:
            for c in self.children[b]:
                self.level[c] = self.level[b] + 1
                order.append(c)
        if len(order) != nb:
            raise ValueError("parent pointers do not form a single tree")
        self.bfs_order = order
        # Root bag of a node: the first bag containing it in BFS order, which
        # for a valid decomposition is the unique smallest-level such bag.
        self.root_bag_of = [-1] * n_nodes
        self.rooted = [[] for _ in range(nb)]
        for b in order:
            for u in self.bags[b]:
                if 0 <= u < n_nodes and self.root_bag_of[u] == -1:
                    self.root_bag_of[u] = b
                    self.rooted[b].append(u)
        self._postorder = None

    @property
    def width(self) -> int:
        return max(len(b) for b in self.bags) - 1

    @property
    def height(self) -> int:
        return max(self.level)

    def postorder(self) -> list[int]:
        """Children before parents; computed once and cached."""
        if self._postorder is None:
            self._postorder = list(reversed(self.bfs_order))
        return self._postorder

    def single_rooted(self, b: int):
        """The unique node rooted at bag b, or None. Raises if not normalized."""
        r = self.rooted[b]
        if len(r) > 1:
            raise InvariantError(f"bag {b} is the root bag of {len(r)} nodes")
        return r[0] if r else None

    def __repr__(self) -> str:
        return (
            f"TreeDecomposition(bags={len(self.bags)}, width={self.width}, "
            f"height={self.height})"
        )


# -- validation ------------------------------------------------------------------


def validate(t: TreeDecomposition, g: WeightedDigraph, normalized: bool = True):
    """Check the decomposition conditions; returns None or the first Violation."""
    n = g.n
    node_bags: list[list[int]] = [[] for _ in range(n)]
    for b, bag in enumerate(t.bags):
        for u in bag:
            if not (0 <= u < n):
                return Violation("coverage", f"bag {b} contains unknown node {u}")
            node_bags[u].append(b)
    for u in range(n):
        if not node_bags[u]:
            return Violation("coverage", f"node {u} appears in no bag")
    for e in g.edges:
        a, b = e.src, e.dst
        small, other = (a, b) if len(node_bags[a]) <= len(node_bags[b]) else (b, a)
        if not any(other in t.bags[bid] for bid in node_bags[small]):
            return Violation("edge-coverage", f"edge ({a},{b}) not inside any bag")
    links = [0] * n
    for b, bag in enumerate(t.bags):
        p = t.parent[b]
        if p is None:
            continue
        pbag = t.bags[p]
        for u in bag:
            if u in pbag:
                links[u] += 1
    for u in range(n):
        if len(node_bags[u]) - links[u] != 1:
            return Violation("connectedness", f"bags containing node {u} are disconnected")
    if normalized:
        for b in range(len(t.bags)):
            if len(t.children[b]) > 2:
                return Violation("binary", f"bag {b} has {len(t.children[b])} children")
        for b in range(len(t.bags)):
            if len(t.rooted[b]) > 1:
                return Violation(
                    "root-bags", f"bag {b} is the root bag of nodes {sorted(t.rooted[b])}"
                )
    return None


# -- construction ------------------------------------------------------------------


def _skeleton(g: WeightedDigraph) -> list[set[int]]:
    adj: list[set[int]] = [set() for _ in range(g.n)]
    for e in g.edges:
        if e.src != e.dst:
            adj[e.src].add(e.dst)
            adj[e.dst].add(e.src)
    return adj


def _eliminate(g: WeightedDigraph, heuristic: str):
    """Greedy elimination; returns (bags, parent) of the raw (unbalanced) tree."""
    n = g.n
    adj = _skeleton(g)

    if heuristic == "min-degree":

        def key(u: int) -> int:
            return len(adj[u])

    elif heuristic == "min-fill":

        def key(u: int) -> int:
            nb = adj[u]
            return sum(len(nb - adj[v]) - (v in nb) for v in nb) // 2

    else:
        raise ValueError(f"unknown elimination heuristic {heuristic!r}")

    heap = [(key(u), u) for u in range(n)]
    heapq.heapify(heap)
    eliminated = [False] * n
    elim_pos: list[int] = [-1] * n
    bags: list[frozenset[int]] = []
    neighbors_at_elim: list[set[int]] = []
    order: list[int] = []
    while heap:
        k, u = heapq.heappop(heap)
        if eliminated[u]:
            continue
        cur = key(u)
        if k != cur:
            heapq.heappush(heap, (cur, u))
            continue
        nb = set(adj[u])
        elim_pos[u] = len(order)
        order.append(u)
        bags.append(frozenset(nb | {u}))
        neighbors_at_elim.append(nb)
        eliminated[u] = True
        for v in nb:
            adj[v].discard(u)
        nbl = sorted(nb)
        for i, a in enumerate(nbl):
            for b in nbl[i + 1 :]:
                if b not in adj[a]:
                    adj[a].add(b)
                    adj[b].add(a)
        for v in nb:
            heapq.heappush(heap, (key(v), v))

    parent: list[int | None] = [None] * len(bags)
    for i, nb in enumerate(neighbors_at_elim):
        if nb:
            parent[i] = min(elim_pos[v] for v in nb)
    # A disconnected skeleton yields several roots; stitch them under the
    # first one (their bags share no nodes, so all conditions survive).
    roots = [i for i, p in enumerate(parent) if p is None]
    for r in roots[1:]:
        parent[r] = roots[0]
    return bags, parent


def build_decomposition(
    g: WeightedDigraph, heuristic: str = "min-degree", balance: bool = True
) -> TreeDecomposition:
    """Greedy elimination decomposition, balanced and normalized by default."""
    if g.n == 0:
        return TreeDecomposition([frozenset()], [None], 0)
    bags, parent = _eliminate(g, heuristic)
    raw = TreeDecomposition(bags, parent, g.n)
    if not balance:
        return raw
    return balance_and_binarize(raw)


# -- balancing ------------------------------------------------------------------


def balance_and_binarize(t: TreeDecomposition) -> TreeDecomposition:
    """Rebuild ``t`` with height O(log n) and width <= 3*(width+1) - 1.

    Divide and conquer on heavy paths. For the subtree hanging below a bag r:
    walk the heavy path r = b_0 .. b_t (always descending into the largest
    child), then split the path segment [i..j] at a weighted median m into a
    new bag B(b_i) | B(b_m) | B(b_j) whose two children handle [i..m-1] and
    [m..j]. A one-bag segment keeps its original content and gathers the
    subtrees hanging off it through a binary comb of copies of itself; each
    hanging subtree restarts the recursion at its attachment bag and holds at
    most half of the current subtree's bags, which bounds the height.

    Afterwards every bag that is the root bag of k > 1 nodes is expanded into
    a chain of k nested bags so each bag roots at most one node.
    """
    old_bags = t.bags
    size = [1] * len(old_bags)
    for b in t.postorder():
        p = t.parent[b]
        if p is not None:
            size[p] += size[b]

    new_bags: list[frozenset[int]] = []
    new_parent: list[int | None] = []

    def emit(content: frozenset, parent: int | None) -> int:
        new_bags.append(content)
        new_parent.append(parent)
        return len(new_bags) - 1

    # Work items: ("rec", old_bag, parent_new) starts a heavy-path instance;
    # ("seg", path, hang, weight_prefix, i, j, parent_new) splits a segment;
    # ("comb", content, subtrees, parent_new) binarizes a hanging-subtree list.
    work: list[tuple] = [("rec", t.root, None)]
    while work:
        item = work.pop()
        kind = item[0]
        if kind == "rec":
            _, b, parent_new = item
            path = [b]
            while t.children[path[-1]]:
                path.append(max(t.children[path[-1]], key=lambda c: (size[c], -c)))
            hang = []
            for l, pb in enumerate(path):
                nxt = path[l + 1] if l + 1 < len(path) else None
                hang.append([c for c in t.children[pb] if c != nxt])
            pre = [0]
            for l, pb in enumerate(path):
                pre.append(pre[-1] + 1 + sum(size[c] for c in hang[l]))
            work.append(("seg", path, hang, pre, 0, len(path) - 1, parent_new))
        elif kind == "seg":
            _, path, hang, pre, i, j, parent_new = item
            if i == j:
                nid = emit(old_bags[path[i]], parent_new)
                subs = hang[i]
                if len(subs) <= 2:
                    for s in subs:
                        work.append(("rec", s, nid))
                else:
                    work.append(("comb", old_bags[path[i]], subs, nid))
            else:
                # Weighted median split: both halves as close as possible.
                best_m, best_cost = i + 1, None
                for m in range(i + 1, j + 1):
                    left = pre[m] - pre[i]
                    right = pre[j + 1] - pre[m]
                    cost = left if left > right else right
                    if best_cost is None or cost < best_cost:
                        best_m, best_cost = m, cost
                m = best_m
                content = old_bags[path[i]] | old_bags[path[m]] | old_bags[path[j]]
                nid = emit(content, parent_new)
                work.append(("seg", path, hang, pre, i, m - 1, nid))
                work.append(("seg", path, hang, pre, m, j, nid))
        else:  # comb
            _, content, subs, parent_new = item
            if len(subs) <= 2:
                for s in subs:
                    work.append(("rec", s, parent_new))
                continue
            total = sum(size[s] for s in subs)
            acc, cut = 0, 1
            for idx, s in enumerate(subs):
                acc += size[s]
                if acc * 2 >= total:
                    cut = min(max(idx + 1, 1), len(subs) - 1)
                    break
            for half in (subs[:cut], subs[cut:]):
                if len(half) == 1:
                    work.append(("rec", half[0], parent_new))
                else:
                    hid = emit(content, parent_new)
                    work.append(("comb", content, half, hid))

    balanced = TreeDecomposition(new_bags, new_parent, t.n_nodes)
    return _split_multi_rooted(balanced)


def _split_multi_rooted(t: TreeDecomposition) -> TreeDecomposition:
    """Expand every bag rooting k > 1 nodes into a chain of k nested bags."""
    if all(len(r) <= 1 for r in t.rooted):
        return t
    new_bags: list[frozenset[int]] = []
    new_parent: list[int | None] = []
    bottom_id: dict[int, int] = {}
    for b in t.bfs_order:
        p = t.parent[b]
        pnew = bottom_id[p] if p is not None else None
        xs = sorted(t.rooted[b])
        if len(xs) <= 1:
            new_bags.append(t.bags[b])
            new_parent.append(pnew)
            bottom_id[b] = len(new_bags) - 1
            continue
        content = t.bags[b] - frozenset(xs[1:])
        new_bags.append(content)
        new_parent.append(pnew)
        cur = len(new_bags) - 1
        for x in xs[1:]:
            content = content | {x}
            new_bags.append(content)
            new_parent.append(cur)
            cur = len(new_bags) - 1
        bottom_id[b] = cur
    return TreeDecomposition(new_bags, new_parent, t.n_nodes)


# -- helpers used by the traversal algorithms ---------------------------------------


def fold_bag_of_edge(t: TreeDecomposition, u: int, v: int) -> int:
    """The bag where an edge's weight enters the bottom-up traversals.

    This is the root bag of the deeper-rooted endpoint; it always contains
    both endpoints of a covered edge.
    """
    bu, bv = t.root_bag_of[u], t.root_bag_of[v]
    b = bu if t.level[bu] >= t.level[bv] else bv
    if u not in t.bags[b] or v not in t.bags[b]:
        raise InvariantError(f"edge ({u},{v}) not covered by fold bag {b}")
    return b


def edge_fold_table(g: WeightedDigraph, t: TreeDecomposition) -> list[list[tuple[int, int, int]]]:
    """Per-bag list of (u, v, edge_index) folded at that bag."""
    table: list[list[tuple[int, int, int]]] = [[] for _ in t.bags]
    for i, e in enumerate(g.edges):
        table[fold_bag_of_edge(t, e.src, e.dst)].append((e.src, e.dst, i))
    return table


def decomposition_to_text(t: TreeDecomposition) -> str:
    lines = []
    for b in range(len(t.bags)):
        p = t.parent[b]
        ptxt = "-" if p is None else str(p)
        nodes = " ".join(str(u) for u in sorted(t.bags[b]))
        lines.append(f"b {b} {ptxt} {nodes}".rstrip())
    return "\n".join(lines) + "\n"
