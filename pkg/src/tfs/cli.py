"""``tfs`` command line interface.

Exit codes: 0 success, 1 a verified claim failed, 2 unreadable input,
3 instance above a search bound, 4 invalid generator parameters,
5 valid tree that is not a family member, 6 input is not a tree.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import fields

from . import families, solvers, verify
from .errors import (
    Disconnected,
    InvalidParameters,
    NotATree,
    ParseError,
    TooLarge,
)
from .forcing import certificate_from_json, certificate_to_json, validate_certificate
from .graph import Graph, build_graph, is_tree, parse_edge_lists, path_graph, spider, to_dot, to_edge_list
from .trees import format_parent_array, free_trees, to_parent_array

EXIT_CLAIM_FAILED = 1
EXIT_PARSE = 2
EXIT_TOO_LARGE = 3
EXIT_INVALID_PARAMS = 4
EXIT_NOT_MEMBER = 5
EXIT_NOT_TREE = 6


class CliError(Exception):
    def __init__(self, message: str, code: int):
        super().__init__(message)
        self.code = code


def _read_graphs(path: str) -> list[Graph]:
    try:
        text = sys.stdin.read() if path == "-" else open(path).read()
    except OSError as exc:
        raise CliError(f"cannot read {path}: {exc}", EXIT_PARSE) from exc
    try:
        graphs = parse_edge_lists(text)
    except ParseError as exc:
        raise CliError(f"{path}: {exc}", EXIT_PARSE) from exc
    if not graphs:
        raise CliError(f"{path}: no graph records", EXIT_PARSE)
    return graphs


def _emit(obj: dict) -> None:
    sys.stdout.write(json.dumps(obj, sort_keys=True) + "\n")


def _graph_json(g: Graph) -> dict:
    return {"n": g.n, "edges": [list(e) for e in g.edges]}


# ---------------------------------------------------------------------------
# solve


def cmd_solve(args: argparse.Namespace) -> int:
    want_f = args.f or not args.ft
    want_ft = args.ft or not args.f
    for g in _read_graphs(args.file):
        out: dict = {"schema_version": verify.SCHEMA_VERSION, "graph": _graph_json(g), "certificates": {}}
        try:
            if want_f:
                res = solvers.forcing_number(g, bound=args.forcing_bound)
                out["F"] = res.value
                out["witnessF"] = sorted(res.witness)
                out["certificates"]["F"] = certificate_to_json(g, res.witness, res.certificate.sequence)
            if want_ft:
                res = solvers.total_forcing_number(g, bound=args.total_forcing_bound)
                out["Ft"] = res.value
                out["witnessFt"] = sorted(res.witness)
                out["certificates"]["Ft"] = certificate_to_json(g, res.witness, res.certificate.sequence)
        except TooLarge as exc:
            raise CliError(str(exc), EXIT_TOO_LARGE) from exc
        except (Disconnected, ValueError) as exc:
            raise CliError(str(exc), EXIT_PARSE) from exc
        if args.dot:
            with open(args.dot, "w") as fh:
                fh.write(to_dot(g, highlight=out.get("witnessFt", out.get("witnessF", []))))
        _emit(out)
    return 0


# ---------------------------------------------------------------------------
# verify


def _sweep_config(args: argparse.Namespace) -> verify.SweepConfig:
    settings: dict = {}
    if args.config:
        try:
            settings.update(verify.load_config(args.config))
        except (OSError, ValueError) as exc:
            raise CliError(f"config: {exc}", EXIT_PARSE) from exc
    for name in ("max_order", "threads", "min_order", "seed_salt"):
        value = getattr(args, name)
        if value is not None:
            settings[name] = value
    if args.broken_solver:
        settings["broken_solver"] = True
    known = {f.name: f for f in fields(verify.SweepConfig)}
    kwargs = {}
    for key, value in settings.items():
        if key not in known:
            raise CliError(f"unknown config key {key!r}", EXIT_PARSE)
        if key == "seed_salt":
            kwargs[key] = str(value)
        elif key == "broken_solver":
            kwargs[key] = value if isinstance(value, bool) else str(value).lower() in ("1", "true", "yes")
        else:
            try:
                kwargs[key] = int(value)
            except ValueError as exc:
                raise CliError(f"config {key}: expected an integer", EXIT_PARSE) from exc
    if "max_order" not in kwargs:
        raise CliError("--max-order is required (flag or config file)", EXIT_PARSE)
    return verify.SweepConfig(**kwargs)


def cmd_verify(args: argparse.Namespace) -> int:
    cfg = _sweep_config(args)
    try:
        report = verify.run_sweep(args.claim, cfg)
    except TooLarge as exc:
        raise CliError(str(exc), EXIT_TOO_LARGE) from exc
    data = report.to_json(include_elapsed=args.timing)
    text = json.dumps(data, sort_keys=True, indent=2) + "\n"
    if args.report:
        with open(args.report, "w") as fh:
            fh.write(text)
    sys.stdout.write(text)
    print(report.summary(), file=sys.stderr)
    if report.holds:
        return 0
    os.makedirs(args.out, exist_ok=True)
    for tally in report.claims:
        for i, example in enumerate(tally.counterexamples):
            path = os.path.join(args.out, f"{args.claim}-{tally.claim_id}-{i:04d}.json")
            with open(path, "w") as fh:
                json.dump({"claim_id": tally.claim_id, **example}, fh, sort_keys=True, indent=2)
    print(f"counterexamples written to {args.out}", file=sys.stderr)
    return EXIT_CLAIM_FAILED


# ---------------------------------------------------------------------------
# generate / recognize


def _generate(args: argparse.Namespace) -> tuple[Graph, dict]:
    fam = args.family
    if fam == "Tdelta":
        t, part = families.generate_T_delta(args.delta, args.k, args.plan)
        return t, families.FamilyCertificate("Tdelta", part).to_json()
    if fam == "gap":
        k = args.k
        t = families.gap_tree(k)
        dropped = {k + 2 * i for i in range(k)}
        return t, {
            "family": "gap",
            "evidence": {
                "k": k,
                "Ft": 2 * k,
                "F": k,
                "witnessFt": [v for v in t.vertices() if v not in dropped],
                "witnessF": sorted(dropped),
            },
        }
    if fam == "H":
        if args.legs:
            try:
                legs = [int(x) for x in args.legs.split(",")]
            except ValueError as exc:
                raise InvalidParameters("--legs takes comma-separated integers") from exc
            if len(legs) < 3 or min(legs) < 1:
                raise InvalidParameters("a spider needs at least 3 legs of length >= 1")
            t = spider(legs)
        else:
            if args.path < 2:
                raise InvalidParameters("--path needs at least 2 vertices")
            t = path_graph(args.path)
        return t, families.FamilyCertificate("H", families.recognize_H(t)).to_json()
    if fam == "F":
        if args.steps < 0:
            raise InvalidParameters("--steps must be non-negative")
        t, steps = families.random_F_member(args.steps, random.Random(args.seed))
        return t, families.FamilyCertificate("F", steps).to_json()
    raise InvalidParameters(f"unknown family {fam!r}")


def cmd_generate(args: argparse.Namespace) -> int:
    try:
        t, cert = _generate(args)
    except InvalidParameters as exc:
        raise CliError(str(exc), EXIT_INVALID_PARAMS) from exc
    if args.out:
        with open(args.out + ".txt", "w") as fh:
            fh.write(to_edge_list(t))
        with open(args.out + ".cert.json", "w") as fh:
            json.dump(cert, fh, sort_keys=True, indent=2)
    if args.dot:
        with open(args.dot, "w") as fh:
            fh.write(to_dot(t))
    _emit({
        "schema_version": verify.SCHEMA_VERSION,
        "graph": _graph_json(t),
        "parent_array": to_parent_array(t),
        "certificate": cert,
    })
    return 0


def cmd_recognize(args: argparse.Namespace) -> int:
    g = _read_graphs(args.file)[0]
    if not is_tree(g):
        raise CliError("input is not a tree", EXIT_NOT_TREE)
    fam = args.family
    if fam in ("Tdelta", "H") and g.n < (3 if fam == "Tdelta" else 2):
        evidence = None
    elif fam == "F" and g.n < 2:
        evidence = None
    elif fam == "Tdelta":
        evidence = families.recognize_T_delta(g)
    elif fam == "F":
        evidence = families.recognize_F(g)
    else:
        evidence = families.recognize_H(g)
    if evidence is None:
        print("not a member", file=sys.stderr)
        return EXIT_NOT_MEMBER
    cert = families.FamilyCertificate(fam, evidence).to_json()
    _emit({"schema_version": verify.SCHEMA_VERSION, "member": True, "certificate": cert})
    return 0


def cmd_check(args: argparse.Namespace) -> int:
    """Validate a forcing certificate, or a family certificate against a graph file."""
    try:
        with open(args.cert) as fh:
            data = json.load(fh)
    except (OSError, ValueError) as exc:
        raise CliError(f"cannot read certificate: {exc}", EXIT_PARSE) from exc
    try:
        if "family" in data:
            if not args.graph:
                raise CliError("family certificates need the graph file", EXIT_PARSE)
            g = _read_graphs(args.graph)[0]
            ok = families.FamilyCertificate.from_json(data).validate(g)
        else:
            g, initial, steps = certificate_from_json(data)
            ok = validate_certificate(g, initial, steps)
    except (KeyError, TypeError, ValueError) as exc:
        raise CliError(f"malformed certificate: {exc}", EXIT_PARSE) from exc
    _emit({"valid": ok})
    return 0 if ok else EXIT_CLAIM_FAILED


def cmd_enum(args: argparse.Namespace) -> int:
    shard = (0, 1)
    if args.shard:
        try:
            i, s = (int(x) for x in args.shard.split("/"))
        except ValueError as exc:
            raise CliError("--shard expects i/s", EXIT_PARSE) from exc
        if not 0 <= i < s:
            raise CliError("--shard needs 0 <= i < s", EXIT_PARSE)
        shard = (i, s)
    try:
        trees = free_trees(args.n, shard=shard)
        for t in trees:
            if args.format == "edges":
                sys.stdout.write(to_edge_list(t) + "\n")
            else:
                sys.stdout.write(format_parent_array(to_parent_array(t)) + "\n")
    except TooLarge as exc:
        raise CliError(str(exc), EXIT_TOO_LARGE) from exc
    except ValueError as exc:
        raise CliError(str(exc), EXIT_PARSE) from exc
    return 0


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="tfs", description="Total forcing sets in trees.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="compute F and F_t of edge-list graphs")
    p.add_argument("file", help="edge-list file, '-' for stdin")
    which = p.add_mutually_exclusive_group()
    which.add_argument("--f", action="store_true", help="forcing number only")
    which.add_argument("--ft", action="store_true", help="total forcing number only")
    p.add_argument("--dot", metavar="PATH", help="write DOT with the witness highlighted")
    p.add_argument("--forcing-bound", type=int, default=solvers.FORCING_BOUND)
    p.add_argument("--total-forcing-bound", type=int, default=solvers.TOTAL_FORCING_BOUND)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="sweep all trees and check a claim")
    p.add_argument("claim", choices=verify.CLAIMS)
    p.add_argument("--max-order", type=int)
    p.add_argument("--min-order", type=int)
    p.add_argument("--threads", type=int)
    p.add_argument("--seed-salt")
    p.add_argument("--config", metavar="PATH", help="key=value file; flags override it")
    p.add_argument("--report", metavar="PATH", help="also write the JSON report here")
    p.add_argument("--out", default="counterexamples", help="directory for counterexample files")
    p.add_argument("--timing", action="store_true", help="include elapsed time in the JSON report")
    p.add_argument("--broken-solver", action="store_true", help=argparse.SUPPRESS)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("generate", help="build a family member and its certificate")
    p.add_argument("family", choices=("Tdelta", "F", "H", "gap"))
    p.add_argument("--delta", type=int, default=3)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--plan", type=int, default=0)
    p.add_argument("--steps", type=int, default=3, help="F: number of random operations")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--legs", help="H: comma-separated spider leg lengths")
    p.add_argument("--path", type=int, default=2, help="H: path order when --legs is absent")
    p.add_argument("--out", metavar="PREFIX", help="write PREFIX.txt and PREFIX.cert.json")
    p.add_argument("--dot", metavar="PATH")
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("recognize", help="certify family membership of a tree")
    p.add_argument("family", choices=("Tdelta", "F", "H"))
    p.add_argument("file")
    p.set_defaults(func=cmd_recognize)

    p = sub.add_parser("check", help="validate a certificate file")
    p.add_argument("cert")
    p.add_argument("graph", nargs="?")
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("enum", help="list all free trees of order N")
    p.add_argument("n", type=int)
    p.add_argument("--shard", metavar="i/s")
    p.add_argument("--format", choices=("parent", "edges"), default="parent")
    p.set_defaults(func=cmd_enum)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        print(f"tfs: {exc}", file=sys.stderr)
        return exc.code
    except NotATree as exc:
        print(f"tfs: {exc}", file=sys.stderr)
        return EXIT_NOT_TREE


if __name__ == "__main__":
    sys.exit(main())
