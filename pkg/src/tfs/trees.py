"""Enumeration of free trees, and the Pruefer-sequence oracle that checks it.

Free trees are built around their centroid. A tree with one centroid is a
root whose branches all have fewer than n/2 vertices; a tree with two
centroids (n even) is two rooted trees of n/2 vertices joined at their
roots. Rooted trees are canonical multisets of smaller rooted trees, so each
free tree comes out exactly once without any isomorphism test.
"""

from __future__ import annotations

import heapq
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .errors import ParseError, TooLarge
from .graph import Graph, build_graph

MAX_FREE_ORDER = 18
MAX_PRUFER_ORDER = 9

# A rooted tree is identified by (size, index into rooted_trees(size)).
Key = tuple[int, int]


@lru_cache(maxsize=None)
def rooted_trees(size: int) -> tuple[tuple[Key, ...], ...]:
    """All rooted trees on ``size`` vertices, each as its nonincreasing tuple of child keys."""
    if size == 1:
        return ((),)
    return tuple(_forests(size - 1, (size - 1, len(rooted_trees(size - 1)) - 1)))


def _forests(total: int, cap: Key) -> Iterator[tuple[Key, ...]]:
    """Multisets of rooted trees with ``total`` vertices, every key <= ``cap``."""
    if total == 0:
        yield ()
        return
    for size in range(min(total, cap[0]), 0, -1):
        top = cap[1] if size == cap[0] else len(rooted_trees(size)) - 1
        for idx in range(top, -1, -1):
            for rest in _forests(total - size, (size, idx)):
                yield ((size, idx), *rest)


def _append_rooted(key: Key, parent: int, out: list[int]) -> None:
    me = len(out)
    out.append(parent)
    for child in rooted_trees(key[0])[key[1]]:
        _append_rooted(child, me, out)


def _free_parent_arrays(n: int) -> Iterator[list[int]]:
    if n == 1:
        yield [-1]
        return
    half_cap = (n - 1) // 2
    for forest in _forests(n - 1, (half_cap, len(rooted_trees(half_cap)) - 1) if half_cap else (0, 0)):
        out = [-1]
        for child in forest:
            _append_rooted(child, 0, out)
        yield out
    if n % 2 == 0:
        h = n // 2
        count = len(rooted_trees(h))
        for i in range(count):
            for j in range(i, count):
                out: list[int] = []
                _append_rooted((h, i), -1, out)
                _append_rooted((h, j), 0, out)
                yield out


def free_trees(n: int, shard: tuple[int, int] = (0, 1), max_order: int = MAX_FREE_ORDER) -> Iterator[Graph]:
    """Every free tree of order ``n`` exactly once, in a fixed order.

    ``shard=(i, s)`` keeps the trees whose stream position is ``i`` mod ``s``.
    """
    if n < 1:
        raise ValueError("order must be at least 1")
    if n > max_order:
        raise TooLarge(f"order {n} exceeds enumeration bound {max_order}")
    index, count = shard
    if not 0 <= index < count:
        raise ValueError(f"bad shard {index}/{count}")
    for pos, parents in enumerate(_free_parent_arrays(n)):
        if pos % count == index:
            yield from_parent_array(parents)


def trees_up_to(max_n: int, min_n: int = 1) -> Iterator[Graph]:
    for n in range(min_n, max_n + 1):
        yield from free_trees(n)


def prufer_decode(seq: Sequence[int], n: int) -> Graph:
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return build_graph(n, edges)


def labeled_trees_prufer(n: int, degree_sorted: bool = False) -> Iterator[Graph]:
    """All n^(n-2) labeled trees on ``0..n-1``.

    With ``degree_sorted`` only sequences whose label multiplicities are
    nonincreasing are decoded, i.e. trees where deg(0) >= deg(1) >= ...
    Every isomorphism class still appears, at a fraction of the cost.
    """
    if n < 2:
        raise ValueError("Pruefer decoding needs n >= 2")
    if n > MAX_PRUFER_ORDER:
        raise TooLarge(f"order {n} exceeds Pruefer bound {MAX_PRUFER_ORDER}")
    if not degree_sorted:
        for seq in product(range(n), repeat=n - 2):
            yield prufer_decode(seq, n)
        return
    for counts in _nonincreasing_counts(n - 2, n, n - 2):
        for seq in _arrangements(list(counts) + [0] * (n - len(counts)), n - 2):
            yield prufer_decode(seq, n)


def _nonincreasing_counts(total: int, slots: int, cap: int) -> Iterator[tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    if slots == 0:
        return
    for c in range(min(total, cap), 0, -1):
        for rest in _nonincreasing_counts(total - c, slots - 1, c):
            yield (c, *rest)


def _arrangements(counts: list[int], length: int) -> Iterator[tuple[int, ...]]:
    """Distinct sequences using label ``i`` exactly ``counts[i]`` times."""
    if length == 0:
        yield ()
        return
    for v, c in enumerate(counts):
        if c:
            counts[v] -= 1
            for rest in _arrangements(counts, length - 1):
                yield (v, *rest)
            counts[v] += 1


# ---------------------------------------------------------------------------
# parent arrays


def from_parent_array(parents: Sequence[int]) -> Graph:
    roots = [v for v, p in enumerate(parents) if p == -1]
    if len(roots) != 1:
        raise ParseError(f"parent array needs exactly one root, found {len(roots)}")
    try:
        return build_graph(len(parents), [(v, p) for v, p in enumerate(parents) if p != -1])
    except ValueError as exc:
        raise ParseError(str(exc)) from exc


def to_parent_array(t: Graph, root: int = 0) -> list[int]:
    parents = [-2] * t.n
    parents[root] = -1
    stack = [root]
    while stack:
        v = stack.pop()
        for w in t.adj[v]:
            if parents[w] == -2:
                parents[w] = v
                stack.append(w)
    return parents


def format_parent_array(parents: Sequence[int]) -> str:
    return " ".join(str(p) for p in parents)


def parse_parent_arrays(text: str) -> list[Graph]:
    out = []
    for lineno, line in enumerate(text.splitlines(), 1):
        if not line.strip():
            continue
        try:
            parents = [int(x) for x in line.split()]
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
        out.append(from_parent_array(parents))
    return out
