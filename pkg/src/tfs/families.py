"""Extremal tree families: star-partition trees, operation-built trees, spiders.

* ``T_delta``: trees whose vertices split into stars, one ``K_{1,delta}`` and
  the rest ``K_{1,delta-1}``, with independent centers that are strong
  support vertices of degree ``delta``.
* ``F``: trees grown from ``P_2`` by the five extension operations O1..O5.
* ``H``: paths, and trees whose trim is a star with at least three leaves.

Each family has a generator, a recognizer returning a replayable
certificate, and JSON (de)serialization for the certificates.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import count
from typing import Iterator, Sequence

from .errors import InvalidParameters, InvalidPartition, NotATree, PreconditionViolated
from .forcing import VertexSet
from .graph import (
    Graph,
    build_graph,
    canonical_code,
    delete_vertices,
    is_path,
    is_tree,
    leaf_neighbors,
    path_graph,
    stats,
    trim,
    tree_isomorphism,
)

OPS = ("O1", "O2", "O3", "O4", "O5")
# vertices added by each operation
OP_GROWTH = {"O1": 1, "O2": 1, "O3": 2, "O4": 3, "O5": 6}


def _require_tree(t: Graph, min_order: int = 1) -> None:
    if not is_tree(t):
        raise NotATree(f"graph with n={t.n}, m={t.m} is not a tree")
    if t.n < min_order:
        raise ValueError(f"tree must have order at least {min_order}")


def _leaf_count(t: Graph, v: int) -> int:
    return len(leaf_neighbors(t, v))


# ---------------------------------------------------------------------------
# operations O1..O5


@dataclass(frozen=True)
class OpStep:
    """One extension step. ``link`` is unused by O1, whose edge is in ``params``."""

    op: str
    link: int | None = None
    params: tuple[int, ...] = ()

    def to_json(self) -> dict:
        return {"op": self.op, "link": self.link, "params": list(self.params)}

    @classmethod
    def from_json(cls, data: dict) -> "OpStep":
        return cls(data["op"], data.get("link"), tuple(data.get("params", ())))


def check_operation(t: Graph, step: OpStep) -> None:
    """Raise :class:`PreconditionViolated` unless ``step`` applies to ``t``."""
    op = step.op
    if op not in OPS:
        raise PreconditionViolated(str(op), "unknown operation")
    if op == "O1":
        if len(step.params) != 2:
            raise PreconditionViolated(op, "needs the edge (u, v) as params")
        u, v = step.params
        if not (0 <= u < t.n and 0 <= v < t.n) or not t.has_edge(u, v):
            raise PreconditionViolated(op, f"({u}, {v}) is not an edge")
        if t.degree(u) > 2 and t.degree(v) > 2:
            raise PreconditionViolated(op, "both ends have degree above 2")
        return
    v = step.link
    if v is None or not 0 <= v < t.n:
        raise PreconditionViolated(op, f"link vertex {v} not in tree")
    if op == "O2":
        if _leaf_count(t, v) < 2:
            raise PreconditionViolated(op, f"{v} is not a strong support vertex")
    elif op == "O3":
        if t.degree(v) != 1:
            raise PreconditionViolated(op, f"{v} is not a leaf")
        if _leaf_count(t, t.adj[v][0]) < 2:
            raise PreconditionViolated(op, f"neighbor of {v} is not a strong support vertex")
    elif t.degree(v) < 2:
        raise PreconditionViolated(op, f"{v} has degree below 2")


def apply_operation(t: Graph, step: OpStep) -> Graph:
    """Extend ``t`` by one operation; new vertices get indices ``n, n+1, ...``."""
    check_operation(t, step)
    n, edges = t.n, list(t.edges)
    if step.op == "O1":
        u, v = step.params
        edges.remove((min(u, v), max(u, v)))
        edges += [(u, n), (n, v)]
        return build_graph(n + 1, edges)
    v = step.link
    if step.op == "O2":
        edges.append((v, n))
    elif step.op == "O3":
        edges += [(v, n), (v, n + 1)]
    elif step.op == "O4":
        x, y, z = n, n + 1, n + 2
        edges += [(x, y), (y, z), (v, y)]
    else:
        # K_{1,3} centered at v3 with leaves u1, u3, v4; u1v3 subdivided into
        # u1 v1 v2 v3, and v1 joined to the link vertex
        u1, v1, v2, v3, u3, v4 = range(n, n + 6)
        edges += [(u1, v1), (v1, v2), (v2, v3), (v3, u3), (v3, v4), (v, v1)]
    return build_graph(n + OP_GROWTH[step.op], edges)


def replay(steps: Sequence[OpStep], start: Graph | None = None) -> Graph:
    t = start if start is not None else path_graph(2)
    for step in steps:
        t = apply_operation(t, step)
    return t


# ---------------------------------------------------------------------------
# recognizing F


def _inverse_steps(t: Graph) -> Iterator[tuple[Graph, OpStep]]:
    """Every ``(smaller, step)`` with ``apply_operation(smaller, step)`` isomorphic to ``t``.

    Order follows the reductions used when building F: undo subdivisions,
    then extra leaves, then the O4, O3 and O5 gadgets.
    """
    deg = t.degrees
    leaf = [d == 1 for d in deg]
    nleaves = [sum(leaf[w] for w in t.adj[v]) for v in t.vertices()]

    # O1: a degree-2 vertex w between u and v, one of which has degree <= 2
    for w in t.vertices():
        if deg[w] == 2:
            u, v = t.adj[w]
            if deg[u] <= 2 or deg[v] <= 2:
                smaller = _contract_out(t, w, u, v)
                su, sv = _shift(u, w), _shift(v, w)
                yield smaller, OpStep("O1", None, (min(su, sv), max(su, sv)))
    # O2: a leaf whose support keeps at least two other leaves
    done: set[int] = set()
    for x in t.vertices():
        if leaf[x] and t.n > 2:
            v = t.adj[x][0]
            if nleaves[v] >= 3 and v not in done:
                done.add(v)
                yield delete_vertices(t, [x]), OpStep("O2", _shift(v, x))
    # O4: y with exactly two leaf neighbors and one more neighbor v of degree >= 3
    for y in t.vertices():
        if deg[y] == 3 and nleaves[y] == 2:
            (v,) = [w for w in t.adj[y] if not leaf[w]]
            if deg[v] >= 3:
                gone = [y, *(w for w in t.adj[y] if leaf[w])]
                yield delete_vertices(t, gone), OpStep("O4", _shift_many(v, gone))
    # O3: v with two leaf neighbors whose other neighbor w already has a leaf
    for v in t.vertices():
        if deg[v] == 3 and nleaves[v] == 2:
            (w,) = [x for x in t.adj[v] if not leaf[x]]
            if nleaves[w] >= 1:
                gone = [x for x in t.adj[v] if leaf[x]]
                yield delete_vertices(t, gone), OpStep("O3", _shift_many(v, gone))
    # O5: v1 (degree 3) adjacent to a leaf u1, a degree-2 vertex v2 and the link;
    # v2 leads to v3 of degree 3 carrying two leaves
    for v1 in t.vertices():
        if deg[v1] != 3 or nleaves[v1] < 1:
            continue
        for v2 in t.adj[v1]:
            if deg[v2] != 2:
                continue
            v3 = t.adj[v2][0] if t.adj[v2][1] == v1 else t.adj[v2][1]
            if deg[v3] != 3 or nleaves[v3] != 2:
                continue
            u1s = [x for x in t.adj[v1] if leaf[x]]
            for u1 in u1s:
                rest = [x for x in t.adj[v1] if x not in (u1, v2)]
                if len(rest) != 1 or deg[rest[0]] < 3:
                    continue
                link = rest[0]
                gone = [u1, v1, v2, v3, *(x for x in t.adj[v3] if leaf[x])]
                yield delete_vertices(t, gone), OpStep("O5", _shift_many(link, gone))


def _shift(v: int, removed: int) -> int:
    return v - 1 if v > removed else v


def _shift_many(v: int, removed: Sequence[int]) -> int:
    return v - sum(1 for r in removed if r < v)


def _contract_out(t: Graph, w: int, u: int, v: int) -> Graph:
    """Remove degree-2 vertex ``w`` and join its neighbors ``u`` and ``v``."""
    edges = [e for e in t.edges if w not in e] + [(u, v)]
    edges = [(_shift(a, w), _shift(b, w)) for a, b in edges]
    return build_graph(t.n - 1, edges)


def _map_step(step: OpStep, iso: dict[int, int]) -> OpStep:
    if step.op == "O1":
        a, b = iso[step.params[0]], iso[step.params[1]]
        return OpStep("O1", None, (min(a, b), max(a, b)))
    return OpStep(step.op, iso[step.link])


def recognize_F(t: Graph, memo: dict[str, list[OpStep] | None] | None = None) -> list[OpStep] | None:
    """Operation sequence building a tree isomorphic to ``t`` from P_2, or None.

    Exhaustive backtracking over inverse operations, memoized on canonical
    codes. ``memo`` may be shared between calls; its entries are label-free.
    """
    _require_tree(t, 2)
    if memo is None:
        memo = {}
    return _recognize_F(t, memo)


def _recognize_F(t: Graph, memo: dict[str, list[OpStep] | None]) -> list[OpStep] | None:
    key = canonical_code(t)
    if key in memo:
        return memo[key]
    result = None
    if t.n == 2:
        result = []
    else:
        for smaller, step in _inverse_steps(t):
            sub = _recognize_F(smaller, memo)
            if sub is None:
                continue
            built = replay(sub)
            iso = tree_isomorphism(smaller, built)
            assert iso is not None
            result = [*sub, _map_step(step, iso)]
            break
    memo[key] = result
    return result


def validate_F_certificate(t: Graph, steps: Sequence[OpStep]) -> bool:
    try:
        built = replay(steps)
    except PreconditionViolated:
        return False
    return tree_isomorphism(built, t) is not None


def random_F_member(num_steps: int, rng) -> tuple[Graph, list[OpStep]]:
    """Grow a member of F by ``num_steps`` random valid operations."""
    t = path_graph(2)
    steps: list[OpStep] = []
    for _ in range(num_steps):
        options = [OpStep("O1", None, e) for e in t.edges]
        options += [OpStep(op, v) for op in OPS[1:] for v in t.vertices()]
        valid = []
        for s in options:
            try:
                check_operation(t, s)
            except PreconditionViolated:
                continue
            valid.append(s)
        step = rng.choice(valid)
        t = apply_operation(t, step)
        steps.append(step)
    return t, steps


# ---------------------------------------------------------------------------
# T_delta


@dataclass(frozen=True)
class StarPartition:
    """Star blocks of a T_delta tree; ``blocks[0]`` is the ``K_{1,delta}`` block."""

    delta: int
    centers: tuple[int, ...]
    blocks: tuple[frozenset[int], ...]

    @property
    def k(self) -> int:
        return len(self.centers)

    def to_json(self) -> dict:
        return {
            "delta": self.delta,
            "centers": list(self.centers),
            "blocks": [sorted(b) for b in self.blocks],
        }

    @classmethod
    def from_json(cls, data: dict) -> "StarPartition":
        return cls(
            data["delta"],
            tuple(data["centers"]),
            tuple(frozenset(b) for b in data["blocks"]),
        )


def validate_star_partition(t: Graph, p: StarPartition) -> bool:
    """Check every defining condition of a T_delta star partition."""
    if not is_tree(t) or p.k == 0 or len(p.blocks) != p.k:
        return False
    delta = p.delta
    if delta < 2 or max(t.degrees) != delta:
        return False
    covered = [b for block in p.blocks for b in block]
    if sorted(covered) != list(range(t.n)):
        return False
    centers = set(p.centers)
    for i, (c, block) in enumerate(zip(p.centers, p.blocks)):
        size = delta if i == 0 else delta - 1
        others = block - {c}
        if c not in block or len(others) != size:
            return False
        # induced star: the center sees all others, others see nothing else in the block
        if any(not t.has_edge(c, x) for x in others):
            return False
        if any(t.has_edge(x, y) for x in others for y in others if x < y):
            return False
        if t.degree(c) != delta or _leaf_count(t, c) < 2:
            return False
        if any(w in centers for w in t.adj[c]):
            return False
    return True


def recognize_T_delta(t: Graph) -> StarPartition | None:
    """Star partition certifying membership in T_delta, or None.

    The centers can only be the strong support vertices, so those are fixed
    first and the remaining vertices are assigned to neighboring centers by
    backtracking.
    """
    _require_tree(t, 3)
    delta = max(t.degrees)
    centers = sorted(stats(t).strong_supports)
    k = len(centers)
    if k == 0 or t.n != k * delta + 1:
        return None
    center_set = set(centers)
    if any(t.degree(c) != delta for c in centers):
        return None
    if any(w in center_set for c in centers for w in t.adj[c]):
        return None
    others = [v for v in t.vertices() if v not in center_set]
    choices = [[w for w in t.adj[v] if w in center_set] for v in others]
    if any(not c for c in choices):
        return None
    # vertices with a single candidate center go first
    order = sorted(range(len(others)), key=lambda i: (len(choices[i]), others[i]))
    load = {c: 0 for c in centers}
    assign: dict[int, int] = {}

    def full_block() -> list[int]:
        return [c for c in centers if load[c] == delta]

    def fits(c: int) -> bool:
        if load[c] + 1 < delta:
            return True
        # only one center may reach delta members
        return load[c] + 1 == delta and not full_block()

    def solve(pos: int) -> bool:
        if pos == len(order):
            return len(full_block()) == 1 and all(
                load[c] in (delta - 1, delta) for c in centers
            )
        i = order[pos]
        for c in choices[i]:
            if fits(c):
                load[c] += 1
                assign[others[i]] = c
                if solve(pos + 1):
                    return True
                load[c] -= 1
                del assign[others[i]]
        return False

    if not solve(0):
        return None
    first = full_block()[0]
    ordered = [first] + [c for c in centers if c != first]
    blocks = tuple(
        frozenset([c, *(v for v, a in assign.items() if a == c)]) for c in ordered
    )
    p = StarPartition(delta, tuple(ordered), blocks)
    assert validate_star_partition(t, p)
    return p


def t_delta_plans(delta: int, k: int) -> Iterator[tuple[tuple[int, int], ...]]:
    """Attachment plans for a T_delta tree with ``k`` blocks, in a fixed order.

    A plan lists, for blocks 2..k, the ``(block, slot)`` of the non-center
    vertex that block's center is joined to. Slots within a block are used
    in increasing order, which skips plans that only permute a block's
    interchangeable leaves. Every center keeps at least two leaf neighbors
    and no vertex exceeds degree ``delta``.
    """
    if delta < 2 or k < 1:
        return
    slots = [delta] + [delta - 1] * (k - 1)
    attached = [[0] * s for s in slots]

    def ok_block(b: int) -> bool:
        return sum(1 for a in attached[b] if a == 0) >= 2

    def rec(i: int, plan: list[tuple[int, int]]) -> Iterator[tuple[tuple[int, int], ...]]:
        if i == k:
            yield tuple(plan)
            return
        for b in range(i):
            for s in range(slots[b]):
                if s > 0 and attached[b][s - 1] == 0:
                    break
                if attached[b][s] + 1 > delta - 1:
                    continue
                attached[b][s] += 1
                if ok_block(b):
                    plan.append((b, s))
                    yield from rec(i + 1, plan)
                    plan.pop()
                attached[b][s] -= 1

    yield from rec(1, [])


def _build_t_delta(delta: int, k: int, plan: Sequence[tuple[int, int]]) -> tuple[Graph, StarPartition]:
    centers, blocks, slot_vertex = [], [], []
    edges = []
    nxt = 0
    for i in range(k):
        size = delta if i == 0 else delta - 1
        c = nxt
        members = list(range(nxt + 1, nxt + 1 + size))
        nxt += 1 + size
        edges += [(c, x) for x in members]
        centers.append(c)
        blocks.append(frozenset([c, *members]))
        slot_vertex.append(members)
    for i, (b, s) in enumerate(plan, start=1):
        edges.append((centers[i], slot_vertex[b][s]))
    t = build_graph(nxt, edges)
    return t, StarPartition(delta, tuple(centers), tuple(blocks))


def generate_T_delta(delta: int, k: int, plan: int = 0) -> tuple[Graph, StarPartition]:
    """The ``plan``-th member of T_delta with ``k`` star blocks, with its partition."""
    if delta < 2 or k < 1:
        raise InvalidParameters(f"need delta >= 2 and k >= 1, got delta={delta}, k={k}")
    if plan < 0:
        raise InvalidParameters("plan index must be non-negative")
    for i, p in zip(count(), t_delta_plans(delta, k)):
        if i == plan:
            t, part = _build_t_delta(delta, k, p)
            assert validate_star_partition(t, part)
            return t, part
    raise InvalidParameters(f"no attachment plan #{plan} for delta={delta}, k={k}")


def prescribed_min_tf_set(t: Graph, p: StarPartition) -> VertexSet:
    """All vertices except the lowest-indexed leaf neighbor of each center."""
    if not validate_star_partition(t, p):
        raise InvalidPartition("star partition does not validate for this tree")
    dropped = {min(leaf_neighbors(t, c)) for c in p.centers}
    return frozenset(v for v in t.vertices() if v not in dropped)


# ---------------------------------------------------------------------------
# H and the gap construction


def recognize_H(t: Graph) -> str | None:
    """``"path"``, ``"star-trim"`` (trim is a star with >= 3 leaves), or None."""
    _require_tree(t, 2)
    if is_path(t):
        return "path"
    r = trim(t)
    if sum(1 for d in r.degrees if d != 1) == 1 and r.n >= 4:
        return "star-trim"
    return None


def gap_tree(k: int) -> Graph:
    """Path on ``k`` spine vertices ``0..k-1``, each given two pendant leaves."""
    if k < 1:
        raise InvalidParameters("gap tree needs k >= 1")
    edges = [(i, i + 1) for i in range(k - 1)]
    for i in range(k):
        edges += [(i, k + 2 * i), (i, k + 2 * i + 1)]
    return build_graph(3 * k, edges)


@dataclass(frozen=True)
class FamilyCertificate:
    family: str
    evidence: object = field(default=None)

    def to_json(self) -> dict:
        if self.family == "Tdelta":
            ev = self.evidence.to_json()
        elif self.family == "F":
            ev = [s.to_json() for s in self.evidence]
        else:
            ev = self.evidence
        return {"family": self.family, "evidence": ev}

    @classmethod
    def from_json(cls, data: dict) -> "FamilyCertificate":
        fam, ev = data["family"], data["evidence"]
        if fam == "Tdelta":
            return cls(fam, StarPartition.from_json(ev))
        if fam == "F":
            return cls(fam, [OpStep.from_json(s) for s in ev])
        return cls(fam, ev)

    def validate(self, t: Graph) -> bool:
        if self.family == "Tdelta":
            return validate_star_partition(t, self.evidence)
        if self.family == "F":
            return validate_F_certificate(t, self.evidence)
        if self.family == "H":
            return self.evidence is not None and recognize_H(t) == self.evidence
        return False
