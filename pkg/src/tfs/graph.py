"""Simple undirected graphs over dense vertex indices, plus tree utilities.

Graphs are immutable. Every edit operation (subdivision, contraction, trim)
returns a new :class:`Graph` whose vertices are again ``0..n-1``.
"""

from __future__ import annotations

import io
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

from .errors import (
    DuplicateEdge,
    EdgeNotPresent,
    IndexOutOfRange,
    NotATree,
    NotTrimContractible,
    ParseError,
    SelfLoop,
)

Edge = tuple[int, int]


def _norm(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True)
class Graph:
    """Undirected simple graph on vertices ``0..n-1``.

    Build instances with :func:`build_graph`; the constructor does not
    validate its arguments.
    """

    n: int
    edges: tuple[Edge, ...]
    adj: tuple[tuple[int, ...], ...] = field(repr=False, compare=False)

    @property
    def m(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    @cached_property
    def degrees(self) -> tuple[int, ...]:
        return tuple(len(a) for a in self.adj)

    @cached_property
    def nbr_masks(self) -> tuple[int, ...]:
        """Neighborhood of each vertex as an int bitmask."""
        masks = []
        for nbrs in self.adj:
            mask = 0
            for w in nbrs:
                mask |= 1 << w
            masks.append(mask)
        return tuple(masks)

    @cached_property
    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return _norm(u, v) in self.edge_set

    def vertices(self) -> range:
        return range(self.n)


def build_graph(order: int, edges: Iterable[Sequence[int]]) -> Graph:
    """Validate ``edges`` and return the graph of the given order."""
    if order < 0:
        raise IndexOutOfRange(f"negative order {order}")
    seen: set[Edge] = set()
    nbrs: list[list[int]] = [[] for _ in range(order)]
    for pair in edges:
        u, v = int(pair[0]), int(pair[1])
        if not (0 <= u < order and 0 <= v < order):
            raise IndexOutOfRange(f"edge ({u}, {v}) outside 0..{order - 1}")
        if u == v:
            raise SelfLoop(f"self-loop at {u}")
        e = _norm(u, v)
        if e in seen:
            raise DuplicateEdge(f"duplicate edge {e}")
        seen.add(e)
        nbrs[u].append(v)
        nbrs[v].append(u)
    return Graph(
        n=order,
        edges=tuple(sorted(seen)),
        adj=tuple(tuple(sorted(a)) for a in nbrs),
    )


def path_graph(n: int) -> Graph:
    return build_graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    """K_{1,leaves} with the center at index 0."""
    return build_graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def complete_graph(n: int) -> Graph:
    return build_graph(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def cycle_graph(n: int) -> Graph:
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def double_star(r: int, s: int) -> Graph:
    """S(r, s): centers 0 and 1, with r and s leaf neighbors respectively."""
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(r)]
    edges += [(1, 2 + r + i) for i in range(s)]
    return build_graph(r + s + 2, edges)


def spider(legs: Sequence[int]) -> Graph:
    """Spider with body 0 and one leg per entry of ``legs`` (leg lengths in edges)."""
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return build_graph(nxt, edges)


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Return the graph with vertex ``v`` renamed to ``perm[v]``."""
    return build_graph(g.n, [(perm[u], perm[v]) for u, v in g.edges])


# ---------------------------------------------------------------------------
# statistics


@dataclass(frozen=True)
class GraphStats:
    max_degree: int
    min_degree: int
    leaf_count: int
    leaves: frozenset[int]
    supports: frozenset[int]
    strong_supports: frozenset[int]
    diameter: int | None


def bfs_distances(g: Graph, source: int) -> list[int]:
    """Edge-count distances from ``source``; ``-1`` marks unreachable vertices."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in g.adj[v]:
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        return True
    return min(bfs_distances(g, 0)) >= 0


def leaf_neighbors(g: Graph, v: int) -> list[int]:
    return [w for w in g.adj[v] if len(g.adj[w]) == 1]


def stats(g: Graph) -> GraphStats:
    degs = g.degrees
    leaves = frozenset(v for v in g.vertices() if degs[v] == 1)
    supports = set()
    strong = set()
    for v in g.vertices():
        k = sum(1 for w in g.adj[v] if w in leaves)
        if k >= 1:
            supports.add(v)
        if k >= 2:
            strong.add(v)
    diameter: int | None = 0
    for s in g.vertices():
        dist = bfs_distances(g, s)
        if min(dist) < 0:
            diameter = None
            break
        diameter = max(diameter, max(dist))
    return GraphStats(
        max_degree=max(degs, default=0),
        min_degree=min(degs, default=0),
        leaf_count=len(leaves),
        leaves=leaves,
        supports=frozenset(supports),
        strong_supports=frozenset(strong),
        diameter=diameter,
    )


def is_tree(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n - 1 and is_connected(g)


def is_path(g: Graph) -> bool:
    return is_tree(g) and max(g.degrees, default=0) <= 2


def _require_tree(g: Graph) -> None:
    if not is_tree(g):
        raise NotATree(f"graph with n={g.n}, m={g.m} is not a tree")


# ---------------------------------------------------------------------------
# edits


def subdivide_edge(g: Graph, e: Sequence[int], t: int) -> Graph:
    """Replace edge ``e`` by a path through ``t`` new vertices ``n..n+t-1``."""
    u, v = int(e[0]), int(e[1])
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise EdgeNotPresent(f"({u}, {v}) is not an edge")
    if t < 0:
        raise ValueError("t must be non-negative")
    edges = [x for x in g.edges if x != _norm(u, v)]
    chain = [u, *range(g.n, g.n + t), v]
    edges += list(zip(chain, chain[1:]))
    return build_graph(g.n + t, edges)


def delete_vertices(g: Graph, removed: Iterable[int]) -> Graph:
    """Induced subgraph on the remaining vertices, order-preservingly re-indexed."""
    gone = set(removed)
    keep = [v for v in g.vertices() if v not in gone]
    index = {v: i for i, v in enumerate(keep)}
    return build_graph(
        len(keep),
        [(index[u], index[v]) for u, v in g.edges if u in index and v in index],
    )


def is_trim_contractible(g: Graph, u: int, v: int) -> bool:
    du, dv = g.degree(u), g.degree(v)
    return (du == 2 and dv <= 2) or (dv == 2 and du <= 2)


def contract_edge(g: Graph, u: int, v: int) -> Graph:
    """Merge ``u`` and ``v``; the merged vertex keeps the lower index."""
    keep, drop = min(u, v), max(u, v)
    edges = set()
    for a, b in g.edges:
        if {a, b} == {u, v}:
            continue
        a = keep if a == drop else a
        b = keep if b == drop else b
        if a != b:
            edges.add(_norm(a, b))

    def shift(x: int) -> int:
        return x - 1 if x > drop else x

    return build_graph(g.n - 1, [(shift(a), shift(b)) for a, b in edges])


def contract_trim_edge(g: Graph, e: Sequence[int]) -> Graph:
    """Contract ``e`` when one end has degree 2 and the other degree at most 2."""
    u, v = int(e[0]), int(e[1])
    if not (0 <= u < g.n and 0 <= v < g.n) or not g.has_edge(u, v):
        raise EdgeNotPresent(f"({u}, {v}) is not an edge")
    if not is_trim_contractible(g, u, v):
        raise NotTrimContractible(
            f"edge ({u}, {v}) has degrees {g.degree(u)}, {g.degree(v)}"
        )
    return contract_edge(g, u, v)


def trim_by_contraction(t: Graph, order: Sequence[int] | None = None) -> Graph:
    """Trim by repeated single-edge contraction.

    This is the literal definition and costs O(n^2); :func:`trim` is the fast
    path. ``order`` optionally supplies a priority for choosing among
    contractible edges: at each step the contractible edge with the smallest
    ``order[i % len(order)]`` key (``i`` its position in ``edges``) is taken.
    """
    _require_tree(t)
    g = t
    while True:
        cands = [i for i, (u, v) in enumerate(g.edges) if is_trim_contractible(g, u, v)]
        if not cands:
            return g
        if order:
            i = min(cands, key=lambda c: (order[c % len(order)], c))
        else:
            i = cands[0]
        g = contract_edge(g, *g.edges[i])


def trim(t: Graph) -> Graph:
    """Trimmed tree, computed in one pass over the degree-2 threads.

    Vertices of degree other than 2 are kept. A thread of degree-2 vertices
    between two branch vertices (degree >= 3) keeps exactly one internal
    vertex; a thread ending in a leaf collapses to a pendant edge. Paths
    become P_2.
    """
    _require_tree(t)
    if t.n == 1:
        return t
    degs = t.degrees
    if max(degs) <= 2:
        return path_graph(2)
    anchors = [v for v in t.vertices() if degs[v] != 2]
    keep = set(anchors)
    new_edges: list[Edge] = []
    for a in anchors:
        for first in t.adj[a]:
            prev, cur = a, first
            internal = []
            while degs[cur] == 2:
                internal.append(cur)
                prev, cur = cur, t.adj[cur][0] if t.adj[cur][0] != prev else t.adj[cur][1]
            b = cur
            if (a, first) > (b, internal[-1] if internal else a):
                continue  # each thread is handled from its lexicographically smaller end
            if internal and degs[a] >= 3 and degs[b] >= 3:
                mid = min(internal)
                keep.add(mid)
                new_edges += [(a, mid), (mid, b)]
            else:
                new_edges.append((a, b))
    ordered = sorted(keep)
    index = {v: i for i, v in enumerate(ordered)}
    return build_graph(len(ordered), [(index[u], index[v]) for u, v in new_edges])


# ---------------------------------------------------------------------------
# canonical codes


def tree_centers(t: Graph) -> list[int]:
    """The one or two central vertices, found by repeatedly stripping leaves."""
    _require_tree(t)
    if t.n <= 2:
        return list(range(t.n))
    deg = list(t.degrees)
    layer = [v for v in t.vertices() if deg[v] == 1]
    remaining = t.n
    while remaining > 2:
        remaining -= len(layer)
        nxt = []
        for v in layer:
            for w in t.adj[v]:
                deg[w] -= 1
                if deg[w] == 1:
                    nxt.append(w)
        layer = nxt
    return sorted(layer)


def _rooted_code(t: Graph, root: int) -> tuple[str, list[int]]:
    """AHU code of ``t`` rooted at ``root`` and the matching vertex order.

    The order lists vertices in a preorder that visits children sorted by
    their own codes, so two trees with equal codes map onto each other
    position by position.
    """
    parent = [-1] * t.n
    order = [root]
    parent[root] = root
    for v in order:
        for w in t.adj[v]:
            if parent[w] < 0:
                parent[w] = v
                order.append(w)
    code: list[str] = [""] * t.n
    kids: list[list[int]] = [[] for _ in range(t.n)]
    for v in reversed(order):
        kids[v].sort(key=lambda c: code[c])
        code[v] = "(" + "".join(code[c] for c in kids[v]) + ")"
        if v != root:
            kids[parent[v]].append(v)
    pre: list[int] = []
    stack = [root]
    while stack:
        v = stack.pop()
        pre.append(v)
        stack.extend(reversed(kids[v]))
    return code[root], pre


def canonical_form(t: Graph) -> tuple[str, list[int]]:
    """Canonical code and a canonical vertex ordering of a tree."""
    _require_tree(t)
    best = min((_rooted_code(t, c) for c in tree_centers(t)), key=lambda r: r[0])
    return best


def canonical_code(t: Graph) -> str:
    """Label-invariant code; equal for two trees iff they are isomorphic."""
    return canonical_form(t)[0]


def tree_isomorphism(a: Graph, b: Graph) -> dict[int, int] | None:
    """A vertex map from tree ``a`` onto tree ``b``, or None if not isomorphic."""
    if a.n != b.n:
        return None
    code_a, order_a = canonical_form(a)
    code_b, order_b = canonical_form(b)
    if code_a != code_b:
        return None
    return dict(zip(order_a, order_b))


# ---------------------------------------------------------------------------
# text formats


def to_edge_list(g: Graph) -> str:
    """One edge-list record: ``n m`` followed by ``m`` lines ``u v``."""
    out = io.StringIO()
    out.write(f"{g.n} {g.m}\n")
    for u, v in g.edges:
        out.write(f"{u} {v}\n")
    return out.getvalue()


def write_edge_lists(graphs: Iterable[Graph]) -> str:
    return "\n".join(to_edge_list(g) for g in graphs)


def parse_edge_lists(text: str) -> list[Graph]:
    """Parse blank-line separated edge-list records."""
    graphs = []
    lines = [ln.strip() for ln in text.splitlines()]
    i = 0
    while i < len(lines):
        if not lines[i]:
            i += 1
            continue
        try:
            n, m = (int(x) for x in lines[i].split())
        except ValueError as exc:
            raise ParseError(f"line {i + 1}: expected 'n m', got {lines[i]!r}") from exc
        edges = []
        for j in range(m):
            k = i + 1 + j
            if k >= len(lines) or not lines[k]:
                raise ParseError(f"record at line {i + 1}: expected {m} edges, got {j}")
            parts = lines[k].split()
            if len(parts) != 2:
                raise ParseError(f"line {k + 1}: expected 'u v', got {lines[k]!r}")
            try:
                edges.append((int(parts[0]), int(parts[1])))
            except ValueError as exc:
                raise ParseError(f"line {k + 1}: non-integer vertex") from exc
        i += 1 + m
        if i < len(lines) and lines[i]:
            raise ParseError(f"line {i + 1}: extra line after record of {m} edges")
        try:
            graphs.append(build_graph(n, edges))
        except ValueError as exc:
            raise ParseError(str(exc)) from exc
    return graphs


def to_dot(g: Graph, name: str = "G", highlight: Iterable[int] = ()) -> str:
    marked = set(highlight)
    lines = [f"graph {name} {{"]
    for v in g.vertices():
        style = " [style=filled, fillcolor=black, fontcolor=white]" if v in marked else ""
        lines.append(f"  {v}{style};")
    for u, v in g.edges:
        lines.append(f"  {u} -- {v};")
    lines.append("}")
    return "\n".join(lines) + "\n"
