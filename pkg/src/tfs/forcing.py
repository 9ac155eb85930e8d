"""The forcing (zero forcing) color-change process and total forcing predicates.

A colored vertex with exactly one non-colored neighbor forces that neighbor
to become colored. A set is forcing when repeating this colors the whole
graph, and total forcing when it is forcing and induces no isolated vertex.

Vertex sets are plain ``frozenset`` objects; the solvers use int bitmasks
internally through :func:`closure_mask`.
"""

from __future__ import annotations

import heapq
import json
import random
from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, build_graph

VertexSet = frozenset[int]
Step = tuple[int, int]


@dataclass(frozen=True)
class ClosureResult:
    """Final colored set and the ordered list of ``(forcer, forced)`` steps."""

    final_colored: VertexSet
    sequence: tuple[Step, ...]
    is_complete: bool


def _as_set(g: Graph, s: Iterable[int]) -> VertexSet:
    out = frozenset(int(v) for v in s)
    for v in out:
        if not 0 <= v < g.n:
            raise ValueError(f"vertex {v} outside 0..{g.n - 1}")
    return out


def closure(g: Graph, s: Iterable[int], rng: random.Random | None = None) -> ClosureResult:
    """Run the forcing process from ``s`` to its fixpoint.

    Among eligible forcers the lowest index acts first, so the certificate is
    reproducible. Passing ``rng`` picks a random eligible forcer instead; the
    final colored set does not depend on the choice.
    """
    colored = [False] * g.n
    for v in _as_set(g, s):
        colored[v] = True
    uncolored_nbrs = [sum(1 for w in g.adj[v] if not colored[w]) for v in g.vertices()]
    ready = [v for v in g.vertices() if colored[v] and uncolored_nbrs[v] == 1]
    heapq.heapify(ready)
    steps: list[Step] = []
    while ready:
        if rng is None:
            v = heapq.heappop(ready)
        else:
            v = ready.pop(rng.randrange(len(ready)))
        if uncolored_nbrs[v] != 1:
            continue  # stale entry
        w = next(x for x in g.adj[v] if not colored[x])
        colored[w] = True
        steps.append((v, w))
        for x in g.adj[w]:
            uncolored_nbrs[x] -= 1
            if colored[x] and uncolored_nbrs[x] == 1:
                _push(ready, x, rng)
        if uncolored_nbrs[w] == 1:
            _push(ready, w, rng)
    final = frozenset(v for v in g.vertices() if colored[v])
    return ClosureResult(final, tuple(steps), len(final) == g.n)


def _push(ready: list[int], v: int, rng: random.Random | None) -> None:
    if rng is None:
        heapq.heappush(ready, v)
    else:
        ready.append(v)


def closure_mask(nbr_masks: Sequence[int], mask: int) -> int:
    """Bitmask closure: colored set reached from ``mask``.

    Same fixpoint as :func:`closure`, without the certificate; this is the
    solvers' inner loop.
    """
    n = len(nbr_masks)
    changed = True
    while changed:
        changed = False
        for v in range(n):
            if mask >> v & 1:
                rest = nbr_masks[v] & ~mask
                if rest and not rest & (rest - 1):
                    mask |= rest
                    changed = True
    return mask


def mask_isolate_free(nbr_masks: Sequence[int], mask: int) -> bool:
    if not mask:
        return False
    m = mask
    while m:
        low = m & -m
        if not nbr_masks[low.bit_length() - 1] & mask:
            return False
        m ^= low
    return True


def is_forcing_set(g: Graph, s: Iterable[int]) -> bool:
    return closure(g, s).is_complete


def induces_isolate_free(g: Graph, s: Iterable[int]) -> bool:
    """True iff every vertex of ``s`` has a neighbor in ``s``."""
    members = _as_set(g, s)
    return all(any(w in members for w in g.adj[v]) for v in members)


def is_total_forcing_set(g: Graph, s: Iterable[int]) -> bool:
    """Forcing and isolate-free. The empty set never qualifies on a non-empty graph."""
    members = _as_set(g, s)
    if not members:
        return g.n == 0
    return induces_isolate_free(g, members) and is_forcing_set(g, members)


def validate_certificate(g: Graph, s: Iterable[int], seq: Iterable[Sequence[int]]) -> bool:
    """Replay ``seq`` from ``s``; every step must obey the forcing rule and
    the replay must end with every vertex colored."""
    try:
        colored = set(_as_set(g, s))
    except ValueError:
        return False
    for step in seq:
        v, w = int(step[0]), int(step[1])
        if not (0 <= v < g.n and 0 <= w < g.n) or v not in colored:
            return False
        uncolored = [x for x in g.adj[v] if x not in colored]
        if uncolored != [w]:
            return False
        colored.add(w)
    return len(colored) == g.n


def certificate_to_json(g: Graph, s: Iterable[int], seq: Iterable[Sequence[int]]) -> dict:
    return {
        "graph": {"n": g.n, "edges": [list(e) for e in g.edges]},
        "initial": sorted(s),
        "steps": [[int(a), int(b)] for a, b in seq],
    }


def certificate_from_json(data: dict | str) -> tuple[Graph, VertexSet, list[Step]]:
    if isinstance(data, str):
        data = json.loads(data)
    g = build_graph(data["graph"]["n"], data["graph"]["edges"])
    return g, frozenset(data["initial"]), [(a, b) for a, b in data["steps"]]
