import json

import pytest

from tfs.errors import TooLarge
from tfs.graph import build_graph, canonical_code, path_graph, star_graph
from tfs.verify import (
    CLAIMS,
    ClaimTally,
    SweepConfig,
    load_config,
    run_sweep,
    seeded_subdivisions,
)


def _claims_view(report):
    data = report.to_json()
    data.pop("config")
    return data


@pytest.mark.parametrize("claim", CLAIMS)
def test_every_claim_holds_on_small_orders(claim):
    report = run_sweep(claim, SweepConfig(max_order=4 if claim == "gap" else 8))
    assert report.holds, report.summary()
    assert report.trees_checked > 0
    assert all(c.checked > 0 for c in report.claims)


def test_thm1_counts_and_equality_cases():
    report = run_sweep("thm1", SweepConfig(max_order=8))
    # 1+2+3+6+11+23 trees of order 3..8
    assert report.trees_checked == 46
    # K_{1,2}..K_{1,7} and the order-7 member with two stars
    assert report.claims[0].equality_cases == 7


def test_thm0_equality_only_on_stars():
    report = run_sweep("thm0", SweepConfig(max_order=9))
    assert report.claims[0].equality_cases == 7


def test_gap_range():
    report = run_sweep("gap", SweepConfig(max_order=5))
    assert report.order_range == (1, 5)
    assert report.claims[0].equality_cases == 5
    with pytest.raises(TooLarge):
        run_sweep("gap", SweepConfig(max_order=7))


def test_json_is_deterministic_single_thread():
    a = json.dumps(run_sweep("thm3", SweepConfig(max_order=8)).to_json(), sort_keys=True)
    b = json.dumps(run_sweep("thm3", SweepConfig(max_order=8)).to_json(), sort_keys=True)
    assert a == b
    assert "elapsed_seconds" not in a
    assert "elapsed_seconds" in run_sweep("thm0", SweepConfig(max_order=5)).to_json(include_elapsed=True)


def test_threads_give_same_claims():
    one = run_sweep("thm2", SweepConfig(max_order=9))
    three = run_sweep("thm2", SweepConfig(max_order=9, threads=3))
    assert _claims_view(one) == _claims_view(three)
    assert three.config["threads"] == 3


def test_broken_solver_is_caught_and_sorted():
    cfg = SweepConfig(max_order=7, broken_solver=True)
    report = run_sweep("thm1", cfg)
    assert not report.holds
    examples = report.claims[0].counterexamples
    assert examples
    assert [len(e["tree"]) for e in examples] == sorted(len(e["tree"]) for e in examples)
    multi = run_sweep("thm1", SweepConfig(max_order=7, broken_solver=True, threads=2))
    assert _claims_view(multi) == _claims_view(report)


def test_bounds_rejected():
    with pytest.raises(TooLarge):
        run_sweep("thm1", SweepConfig(max_order=21))
    with pytest.raises(TooLarge):
        run_sweep("obs2", SweepConfig(max_order=13))
    with pytest.raises(TooLarge):
        run_sweep("lem-subdiv", SweepConfig(max_order=18))
    with pytest.raises(ValueError):
        run_sweep("thm9", SweepConfig(max_order=5))


def test_seeded_subdivisions_are_label_free():
    a = seeded_subdivisions(path_graph(6), "x")
    assert a == seeded_subdivisions(path_graph(6), "x")
    assert len(a) == 3
    assert all(1 <= times <= 3 for _, times in a)
    relabeled = build_graph(6, [(3, 0), (0, 5), (5, 1), (1, 4), (4, 2)])
    assert canonical_code(relabeled) == canonical_code(path_graph(6))
    assert len(seeded_subdivisions(star_graph(3), "x")) == 3


def test_tally_merge():
    a, b = ClaimTally("x"), ClaimTally("x")
    a.record(True, True)
    b.record(False, example={"tree": [-1]})
    a.merge(b)
    assert (a.holds, a.checked, a.equality_cases, len(a.counterexamples)) == (False, 2, 1, 1)


def test_load_config(tmp_path):
    p = tmp_path / "sweep.cfg"
    p.write_text("# bounds\nmax-order = 9\nthreads=2  # two workers\n\n")
    assert load_config(str(p)) == {"max_order": "9", "threads": "2"}
    p.write_text("max_order 9\n")
    with pytest.raises(ValueError):
        load_config(str(p))
