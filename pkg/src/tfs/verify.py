"""Exhaustive sweeps that check the tree bounds on every small tree.

Each sweep walks all free trees in an order range, computes the relevant
invariants with the exact solvers, and records for every claim whether the
bound held, how many trees attained equality, and every counterexample.
"""

from __future__ import annotations

import hashlib
import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from typing import Callable, Iterable

from . import families, solvers
from .errors import TooLarge
from .graph import Graph, canonical_code, stats, subdivide_edge, trim, trim_by_contraction
from .trees import MAX_FREE_ORDER, free_trees, to_parent_array

SCHEMA_VERSION = 1

CLAIMS = ("thm0", "thm1", "thm2", "thm3", "lem-subdiv", "lem-trim", "obs2", "gap")
MIN_ORDER = {"thm0": 3, "thm1": 3, "obs2": 2, "gap": 1}
SUBDIVISIONS_PER_TREE = 3


@dataclass
class SweepConfig:
    max_order: int
    threads: int = 1
    min_order: int | None = None
    forcing_bound: int = solvers.FORCING_BOUND
    total_forcing_bound: int = solvers.TOTAL_FORCING_BOUND
    exhaustive_bound: int = solvers.EXHAUSTIVE_BOUND
    seed_salt: str = "tfs"
    broken_solver: bool = False  # harness self-test: deliberately wrong F_t


@dataclass
class ClaimTally:
    claim_id: str
    holds: bool = True
    equality_cases: int = 0
    checked: int = 0
    counterexamples: list[dict] = field(default_factory=list)

    def record(self, ok: bool, equality: bool = False, example: dict | None = None) -> None:
        self.checked += 1
        if equality:
            self.equality_cases += 1
        if not ok:
            self.holds = False
            self.counterexamples.append(example or {})

    def merge(self, other: "ClaimTally") -> None:
        self.holds = self.holds and other.holds
        self.equality_cases += other.equality_cases
        self.checked += other.checked
        self.counterexamples.extend(other.counterexamples)


@dataclass
class SweepReport:
    claim: str
    order_range: tuple[int, int]
    trees_checked: int
    claims: list[ClaimTally]
    config: dict
    elapsed: float | None = None

    @property
    def holds(self) -> bool:
        return all(c.holds for c in self.claims)

    def to_json(self, include_elapsed: bool = False) -> dict:
        out = {
            "schema_version": SCHEMA_VERSION,
            "claim": self.claim,
            "order_range": list(self.order_range),
            "trees_checked": self.trees_checked,
            "holds": self.holds,
            "claims": [
                {
                    "claim_id": c.claim_id,
                    "holds": c.holds,
                    "checked": c.checked,
                    "equality_cases": c.equality_cases,
                    "counterexamples": c.counterexamples,
                }
                for c in self.claims
            ],
            "config": self.config,
        }
        if include_elapsed and self.elapsed is not None:
            out["elapsed_seconds"] = round(self.elapsed, 3)
        return out

    def summary(self) -> str:
        lines = [
            f"{self.claim}: orders {self.order_range[0]}..{self.order_range[1]}, "
            f"{self.trees_checked} instances"
        ]
        for c in self.claims:
            status = "HOLDS" if c.holds else "FAILS"
            lines.append(
                f"  {c.claim_id:<22} {status}  equality={c.equality_cases}"
                f"  counterexamples={len(c.counterexamples)}"
            )
        if self.elapsed is not None:
            lines.append(f"  elapsed {self.elapsed:.2f}s")
        return "\n".join(lines)


# ---------------------------------------------------------------------------
# per-tree checks


class _Context:
    """Solver handles shared by all checks inside one worker."""

    def __init__(self, cfg: SweepConfig):
        self.cfg = cfg
        self.f_memo: dict = {}

    def ft(self, g: Graph) -> solvers.SolveResult:
        res = solvers.total_forcing_number(
            g, bound=self.cfg.total_forcing_bound, leaf_lower_bound=False
        )
        if self.cfg.broken_solver:
            everything = frozenset(g.vertices())
            return solvers.SolveResult(g.n, everything, res.certificate)
        return res

    def f(self, g: Graph) -> solvers.SolveResult:
        return solvers.forcing_number(g, bound=self.cfg.forcing_bound)


def _example(g: Graph, **context) -> dict:
    return {"tree": to_parent_array(g), "edges": [list(e) for e in g.edges], **context}


def _witness(res: solvers.SolveResult) -> dict:
    return {"value": res.value, "witness": sorted(res.witness)}


def _check_thm0(g: Graph, ctx: _Context, tally: dict[str, ClaimTally]) -> None:
    ft = ctx.ft(g)
    delta = max(g.degrees)
    lhs, rhs = ft.value * (delta + 1), delta * g.n
    equality = lhs == rhs
    star = g.n == delta + 1
    ok = lhs <= rhs and equality == star
    tally["thm0"].record(ok, equality, None if ok else _example(g, Ft=_witness(ft), delta=delta, is_star=star))


def _check_thm1(g: Graph, ctx: _Context, tally: dict[str, ClaimTally]) -> None:
    ft = ctx.ft(g)
    delta = max(g.degrees)
    lhs, rhs = ft.value * delta, (delta - 1) * g.n + 1
    equality = lhs == rhs
    part = families.recognize_T_delta(g)
    ok = lhs <= rhs and equality == (part is not None)
    example = None
    if not ok:
        example = _example(
            g, Ft=_witness(ft), delta=delta, partition=part.to_json() if part else None
        )
    tally["thm1"].record(ok, equality, example)


def _check_thm2(g: Graph, ctx: _Context, tally: dict[str, ClaimTally]) -> None:
    ft = ctx.ft(g)
    n1 = stats(g).leaf_count
    steps = families.recognize_F(g, ctx.f_memo)
    equality = ft.value == n1
    ok = ft.value >= n1 and equality == (steps is not None)
    if ok and steps is not None:
        ok = families.validate_F_certificate(g, steps)
    example = None
    if not ok:
        example = _example(
            g, Ft=_witness(ft), leaves=n1,
            operations=None if steps is None else [s.to_json() for s in steps],
        )
    tally["thm2"].record(ok, equality, example)


def _check_thm3(g: Graph, ctx: _Context, tally: dict[str, ClaimTally]) -> None:
    ft, f = ctx.ft(g), ctx.f(g)
    n1 = stats(g).leaf_count
    tag = families.recognize_H(g)
    equality = ft.value == f.value + 1
    ok = ft.value >= f.value + 1 and equality == (tag is not None)
    context = dict(Ft=_witness(ft), F=_witness(f), leaves=n1, h_tag=tag)
    tally["thm3"].record(ok, equality, None if ok else _example(g, **context))
    ok = f.value <= n1 - 1
    tally["forcing-leaf-bound"].record(ok, f.value == n1 - 1, None if ok else _example(g, **context))
    oracle = solvers.tree_forcing_oracle(g)
    ok = oracle == f.value
    tally["forcing-path-cover"].record(ok, False, None if ok else _example(g, F=_witness(f), oracle=oracle))


def _seeded_rng(g: Graph, salt: str) -> random.Random:
    digest = hashlib.sha256(f"{salt}:{canonical_code(g)}".encode()).hexdigest()
    return random.Random(int(digest[:16], 16))


def seeded_subdivisions(g: Graph, salt: str, count: int = SUBDIVISIONS_PER_TREE) -> list[tuple[tuple[int, int], int]]:
    """``count`` (edge, times) pairs; each edge has an end of degree <= 2."""
    rng = _seeded_rng(g, salt)
    valid = [e for e in g.edges if min(g.degree(e[0]), g.degree(e[1])) <= 2]
    if not valid:
        return []
    return [(rng.choice(valid), rng.randint(1, 3)) for _ in range(count)]


def _check_lem_subdiv(g: Graph, ctx: _Context, tally: dict[str, ClaimTally]) -> None:
    ft, f = ctx.ft(g), ctx.f(g)
    for edge, times in seeded_subdivisions(g, ctx.cfg.seed_salt):
        h = subdivide_edge(g, edge, times)
        ft2, f2 = ctx.ft(h), ctx.f(h)
        context = dict(edge=list(edge), times=times)
        ok = ft2.value == ft.value
        tally["lem-subdiv-Ft"].record(ok, False, None if ok else _example(g, Ft=_witness(ft), Ft_subdivided=_witness(ft2), **context))
        ok = f2.value == f.value
        tally["lem-subdiv-F"].record(ok, False, None if ok else _example(g, F=_witness(f), F_subdivided=_witness(f2), **context))


def _check_lem_trim(g: Graph, ctx: _Context, tally: dict[str, ClaimTally]) -> None:
    r = trim(g)
    ft, f = ctx.ft(g), ctx.f(g)
    ftr, fr = ctx.ft(r), ctx.f(r)
    ok = ft.value == ftr.value
    tally["lem-trim-Ft"].record(ok, False, None if ok else _example(g, Ft=_witness(ft), Ft_trim=_witness(ftr)))
    ok = f.value == fr.value
    tally["lem-trim-F"].record(ok, False, None if ok else _example(g, F=_witness(f), F_trim=_witness(fr)))
    n1, n1r = stats(g).leaf_count, stats(r).leaf_count
    ok = n1 == n1r
    tally["lem-trim-leaves"].record(ok, False, None if ok else _example(g, leaves=n1, trim_leaves=n1r))
    slow = trim_by_contraction(g)
    ok = canonical_code(slow) == canonical_code(r)
    tally["trim-definition"].record(ok, False, None if ok else _example(g, trim=[list(e) for e in r.edges]))


def _check_obs2(g: Graph, ctx: _Context, tally: dict[str, ClaimTally]) -> None:
    st = stats(g)
    sets = solvers.all_minimum_tf_sets(g, bound=ctx.cfg.exhaustive_bound)
    for s in sets:
        ok = True
        for v in st.strong_supports:
            leaves = [w for w in g.adj[v] if w in st.leaves]
            if v not in s or sum(1 for w in leaves if w not in s) > 1:
                ok = False
        tally["obs2"].record(ok, False, None if ok else _example(g, tf_set=sorted(s)))


CHECKS: dict[str, tuple[tuple[str, ...], Callable]] = {
    "thm0": (("thm0",), _check_thm0),
    "thm1": (("thm1",), _check_thm1),
    "thm2": (("thm2",), _check_thm2),
    "thm3": (("thm3", "forcing-leaf-bound", "forcing-path-cover"), _check_thm3),
    "lem-subdiv": (("lem-subdiv-Ft", "lem-subdiv-F"), _check_lem_subdiv),
    "lem-trim": (("lem-trim-Ft", "lem-trim-F", "lem-trim-leaves", "trim-definition"), _check_lem_trim),
    "obs2": (("obs2",), _check_obs2),
}


def _check_gap(k: int, ctx: _Context, tally: dict[str, ClaimTally]) -> None:
    g = families.gap_tree(k)
    ft, f = ctx.ft(g), ctx.f(g)
    ok = ft.value == 2 * k and f.value == k
    tally["gap"].record(ok, ok, None if ok else _example(g, k=k, Ft=_witness(ft), F=_witness(f)))


# ---------------------------------------------------------------------------
# drivers


def order_range(claim: str, cfg: SweepConfig) -> tuple[int, int]:
    lo = cfg.min_order if cfg.min_order is not None else MIN_ORDER.get(claim, 2)
    return lo, cfg.max_order


def _validate(claim: str, cfg: SweepConfig) -> None:
    if claim not in CLAIMS:
        raise ValueError(f"unknown claim {claim!r}; choose from {', '.join(CLAIMS)}")
    lo, hi = order_range(claim, cfg)
    if claim == "gap":
        if 3 * hi > cfg.total_forcing_bound:
            raise TooLarge(f"gap tree with k={hi} has order {3 * hi} > {cfg.total_forcing_bound}")
        return
    if hi > MAX_FREE_ORDER:
        raise TooLarge(f"max order {hi} exceeds enumeration bound {MAX_FREE_ORDER}")
    bound = cfg.total_forcing_bound
    if claim == "obs2":
        bound = cfg.exhaustive_bound
    elif claim == "lem-subdiv":
        bound = cfg.total_forcing_bound - 3  # subdivisions add up to 3 vertices
    if hi > bound:
        raise TooLarge(f"max order {hi} exceeds solver bound {bound} for {claim}")


def _run_shard(claim: str, cfg: SweepConfig, shard: tuple[int, int]) -> tuple[int, dict[str, ClaimTally]]:
    ctx = _Context(cfg)
    lo, hi = order_range(claim, cfg)
    if claim == "gap":
        ids, check = ("gap",), _check_gap
        items: Iterable = (k for k in range(max(lo, 1), hi + 1) if (k - 1) % shard[1] == shard[0])
    else:
        ids, check = CHECKS[claim]
        items = (g for n in range(lo, hi + 1) for g in free_trees(n, shard=shard))
    tally = {i: ClaimTally(i) for i in ids}
    checked = 0
    for item in items:
        check(item, ctx, tally)
        checked += 1
    return checked, tally


def run_sweep(claim: str, cfg: SweepConfig) -> SweepReport:
    import time

    _validate(claim, cfg)
    started = time.perf_counter()
    threads = max(1, cfg.threads)
    shards = [(i, threads) for i in range(threads)]
    if threads == 1:
        results = [_run_shard(claim, cfg, shards[0])]
    else:
        with ProcessPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(_run_shard, [claim] * threads, [cfg] * threads, shards))
    total = 0
    merged: dict[str, ClaimTally] = {}
    for checked, tally in results:
        total += checked
        for key, t in tally.items():
            if key in merged:
                merged[key].merge(t)
            else:
                merged[key] = t
    for t in merged.values():
        t.counterexamples.sort(key=lambda ex: (len(ex.get("tree", [])), ex.get("tree", []), json.dumps(ex, sort_keys=True)))
    config = asdict(cfg)
    config["threads"] = threads
    if claim == "lem-subdiv":
        config["subdivisions_per_tree"] = SUBDIVISIONS_PER_TREE
    return SweepReport(
        claim=claim,
        order_range=order_range(claim, cfg),
        trees_checked=total,
        claims=list(merged.values()),
        config=config,
        elapsed=time.perf_counter() - started,
    )


def load_config(path: str) -> dict[str, str]:
    """Read ``key=value`` lines; ``#`` starts a comment."""
    out = {}
    with open(path) as fh:
        for lineno, raw in enumerate(fh, 1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            if "=" not in line:
                raise ValueError(f"{path}:{lineno}: expected key=value")
            key, value = line.split("=", 1)
            out[key.strip().replace("-", "_")] = value.strip()
    return out
