"""Exact forcing number and total forcing number by cardinality-ascending search.

Candidate sets of size k = lower bound, lower bound + 1, ... are tried in
lexicographic order, so the first hit is a minimum and ties are broken
deterministically.

For total forcing, every strong support vertex and all but one leaf neighbor
of it lie in every total forcing set, and leaves sharing a support are
interchangeable. Those vertices are fixed up front and only completions are
searched.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable

from .errors import Disconnected, NotATree, TooLarge
from .forcing import (
    ClosureResult,
    VertexSet,
    closure,
    closure_mask,
    is_total_forcing_set,
    mask_isolate_free,
)
from .graph import Graph, is_connected, is_tree, leaf_neighbors, stats

FORCING_BOUND = 24
TOTAL_FORCING_BOUND = 20
EXHAUSTIVE_BOUND = 12


@dataclass(frozen=True)
class SolveResult:
    value: int
    witness: VertexSet
    certificate: ClosureResult
    exhausted: tuple[VertexSet, ...] | None = None

    def to_json(self) -> dict:
        out = {
            "value": self.value,
            "witness": sorted(self.witness),
            "steps": [list(s) for s in self.certificate.sequence],
        }
        if self.exhausted is not None:
            out["exhausted"] = [sorted(s) for s in self.exhausted]
        return out


def _check(g: Graph, bound: int) -> None:
    if g.n > bound:
        raise TooLarge(f"order {g.n} exceeds search bound {bound}")
    if g.n < 2:
        raise ValueError("graph must have order at least 2")
    if not is_connected(g):
        raise Disconnected("graph is not connected")


def _mask(vertices) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


def _from_mask(mask: int) -> VertexSet:
    return frozenset(i for i in range(mask.bit_length()) if mask >> i & 1)


def _search(
    g: Graph,
    accept: Callable[[int], bool],
    fixed: int = 0,
    pool: list[int] | None = None,
    start: int = 1,
) -> int:
    """Smallest accepted mask of the form ``fixed | subset(pool)``."""
    if pool is None:
        pool = list(g.vertices())
    base = bin(fixed).count("1")
    for k in range(max(start, base), base + len(pool) + 1):
        for combo in combinations(pool, k - base):
            mask = fixed
            for v in combo:
                mask |= 1 << v
            if accept(mask):
                return mask
    raise AssertionError("no accepted set; the full vertex set should always qualify")


def forcing_number(g: Graph, bound: int = FORCING_BOUND) -> SolveResult:
    """F(G): size of a smallest forcing set."""
    _check(g, bound)
    nbr, full = g.nbr_masks, (1 << g.n) - 1
    mask = _search(g, lambda m: closure_mask(nbr, m) == full)
    witness = _from_mask(mask)
    return SolveResult(len(witness), witness, closure(g, witness))


def mandatory_tf_vertices(g: Graph) -> tuple[set[int], set[int]]:
    """Vertices every total forcing set may be assumed to contain.

    Returns ``(fixed, optional)``: ``fixed`` holds each strong support vertex
    and all its leaf neighbors but the lowest-indexed one; ``optional`` holds
    those lowest-indexed leaves. By leaf symmetry a minimum set can always
    be chosen to contain ``fixed``.
    """
    fixed: set[int] = set()
    optional: set[int] = set()
    for v in stats(g).strong_supports:
        leaves = sorted(leaf_neighbors(g, v))
        fixed.add(v)
        fixed.update(leaves[1:])
        optional.add(leaves[0])
    return fixed, optional


def total_forcing_number(
    g: Graph,
    bound: int = TOTAL_FORCING_BOUND,
    leaf_lower_bound: bool = True,
    prune: bool = True,
) -> SolveResult:
    """F_t(G): size of a smallest total forcing set.

    ``leaf_lower_bound`` starts trees at k = number of leaves. It relies on
    the leaf lower bound being true, so the verification sweeps turn it
    off. ``prune=False`` disables the strong-support reduction too, giving
    a plain exhaustive search.
    """
    _check(g, bound)
    nbr, full = g.nbr_masks, (1 << g.n) - 1

    def accept(m: int) -> bool:
        return mask_isolate_free(nbr, m) and closure_mask(nbr, m) == full

    start = 2
    if leaf_lower_bound and is_tree(g):
        start = max(start, stats(g).leaf_count)
    if prune:
        fixed, _ = mandatory_tf_vertices(g)
        pool = [v for v in g.vertices() if v not in fixed]
        mask = _search(g, accept, _mask(fixed), pool, start)
    else:
        mask = _search(g, accept, start=start)
    witness = _from_mask(mask)
    return SolveResult(len(witness), witness, closure(g, witness))


def all_minimum_tf_sets(g: Graph, bound: int = EXHAUSTIVE_BOUND) -> list[VertexSet]:
    """Every minimum total forcing set, by plain enumeration (no pruning)."""
    _check(g, bound)
    nbr, full = g.nbr_masks, (1 << g.n) - 1
    for k in range(2, g.n + 1):
        found = []
        for combo in combinations(range(g.n), k):
            m = _mask(combo)
            if mask_isolate_free(nbr, m) and closure_mask(nbr, m) == full:
                found.append(frozenset(combo))
        if found:
            return found
    return []


def total_forcing_number_exhaustive(g: Graph, bound: int = EXHAUSTIVE_BOUND) -> SolveResult:
    """F_t via :func:`all_minimum_tf_sets`, with the exhausted list filled in."""
    sets = all_minimum_tf_sets(g, bound)
    witness = min(sets, key=sorted)
    assert is_total_forcing_set(g, witness)
    return SolveResult(len(witness), witness, closure(g, witness), tuple(sets))


def tree_forcing_oracle(t: Graph) -> int:
    """Minimum number of vertex-disjoint paths covering a tree.

    Greedy from the leaves up: a vertex joins up to two child paths that
    still end at their child. Used to cross-check :func:`forcing_number`
    on trees.
    """
    if not is_tree(t):
        raise NotATree("path cover oracle needs a tree")
    parent = [-1] * t.n
    order = [0]
    seen = [False] * t.n
    seen[0] = True
    for v in order:
        for w in t.adj[v]:
            if not seen[w]:
                seen[w] = True
                parent[w] = v
                order.append(w)
    open_end = [True] * t.n  # path through v can still be extended to its parent
    joined = [0] * t.n
    used_edges = 0
    for v in reversed(order):
        if v == 0:
            continue
        p = parent[v]
        if open_end[v] and joined[p] < 2:
            joined[p] += 1
            used_edges += 1
            if joined[p] == 2:
                open_end[p] = False
    return t.n - used_edges
