"""Command-line front end.

Exit codes: 0 success, 1 property violation, 2 usage error (bad arguments,
malformed JSON, unknown object key), 3 resource cap or divergence.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import engine
from .disk import DiskError, DiskObject, ObjectCapExceeded, enumerate_objects, fan, loads, parse_labels
from .engine import Divergence, GarsideError, GroupoidElement
from .lattice import hasse_export, interval, tamari, verify_lattice
from .oracle import Caps, oracle_equal
from .presentation import (
    CapExceeded,
    Move,
    atoms,
    characteristic_graph,
    complement,
    classify,
    weight,
    word_arcs,
    word_from_arcs,
    word_from_json,
    word_to_json,
)

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE, EXIT_CAP = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class Config:
    step_cap: int = engine.DEFAULT_STEP_CAP
    node_cap: int = 10_000
    object_cap: int = 100_000
    oracle_max_length: int = 12
    oracle_max_class: int = 50_000
    threads: int = 1
    json: bool = False

    def validate(self) -> None:
        for name in ("step_cap", "node_cap", "object_cap", "oracle_max_length", "oracle_max_class", "threads"):
            if getattr(self, name) < 1:
                raise UsageError(f"{name.replace('_', '-')} must be positive")

    @property
    def caps(self) -> Caps:
        return Caps(self.oracle_max_length, self.oracle_max_class)


# ----------------------------------------------------------------------
# input helpers


def _read_text(spec: str) -> str:
    if spec == "-":
        return sys.stdin.read()
    if os.path.isfile(spec):
        with open(spec, encoding="utf-8") as fh:
            return fh.read()
    return spec


def _object(spec: str) -> DiskObject:
    return loads(_read_text(spec))


def _json_file(spec: str) -> dict:
    try:
        return json.loads(_read_text(spec))
    except json.JSONDecodeError as exc:
        raise UsageError(f"malformed JSON in {spec}: {exc}") from exc


def _int_list(text: str) -> list[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise UsageError(f"expected comma-separated integers, got {text!r}") from exc


def _base(args) -> DiskObject:
    if getattr(args, "object", None):
        return _object(args.object)
    if getattr(args, "labels", None):
        return fan(parse_labels(args.labels))
    raise UsageError("give --object or --labels")


def _emit(cfg: Config, data, lines) -> None:
    if cfg.json:
        print(json.dumps(data, indent=2, sort_keys=True))
    else:
        for line in lines:
            print(line)


def _arcs_text(word) -> str:
    return " ".join(map(str, word_arcs(word))) or "(empty)"


# ----------------------------------------------------------------------
# commands


def cmd_objects(args, cfg):
    lab = parse_labels(args.labels)
    objs = enumerate_objects(lab, cap=cfg.object_cap)
    _emit(cfg, {"labels": list(lab.labels), "m": lab.m, "count": len(objs), "objects": [o.key for o in objs]},
          [o.key for o in objs])
    return EXIT_OK


def cmd_atoms(args, cfg):
    x = _object(args.object)
    rows = [
        {"arc": mv.arc, "chord": list(x.chords[mv.arc]), "target": mv.target.key, "weight": weight(mv)}
        for mv in atoms(x)
    ]
    _emit(cfg, {"object": x.key, "atoms": rows},
          [f"{r['arc']}: {tuple(r['chord'])} -> {r['target']} (weight {r['weight']})" for r in rows])
    return EXIT_OK


def cmd_rotate(args, cfg):
    x = _object(args.object)
    mv = Move(x, args.arc)
    corr = {str(k): v for k, v in sorted(mv.correspondence.items())}
    _emit(cfg, {"source": x.key, "arc": args.arc, "target": mv.target.key, "correspondence": corr},
          [mv.target.key, "correspondence: " + ", ".join(f"{k}->{v}" for k, v in corr.items())])
    return EXIT_OK


def cmd_complement(args, cfg):
    x = _object(args.object)
    arcs = _int_list(args.arcs)
    if len(arcs) != 2:
        raise UsageError("--arcs needs exactly two arc ids")
    a, b = (Move(x, i) for i in arcs)
    tail_ab, tail_ba = complement(a, b)
    kind = classify(x, *arcs)
    _emit(cfg, {"kind": kind, "f_ab": word_arcs(tail_ab), "f_ba": word_arcs(tail_ba)},
          [f"kind: {kind}", f"f(a,b): {_arcs_text(tail_ab)}", f"f(b,a): {_arcs_text(tail_ba)}"])
    return EXIT_OK


def cmd_delta(args, cfg):
    x = _object(args.object)
    word = engine.delta(x)
    target = word[-1].target if word else x
    _emit(cfg, {**word_to_json(x, word), "target": target.key}, [_arcs_text(word), f"target: {target.key}"])
    return EXIT_OK


def cmd_nf(args, cfg):
    source, word = word_from_json(_json_file(args.word))
    factors = engine.greedy_normal_form(word, source)
    out, lines, cur = [], [], source
    for f in factors:
        out.append(word_to_json(cur, f))
        lines.append(_arcs_text(f))
        cur = f[-1].target
    _emit(cfg, out, lines or ["(empty)"])
    return EXIT_OK


def cmd_equal(args, cfg):
    sl, left = word_from_json(_json_file(args.left))
    sr, right = word_from_json(_json_file(args.right))
    if sl != sr:
        raise UsageError("the two words start at different objects")
    result = engine.equal_positive(left, right)
    data = {"equal": result}
    lines = [str(result).lower()]
    code = EXIT_OK
    if args.oracle:
        verdict = oracle_equal(left, right, cfg.caps)
        data["oracle"] = verdict
        lines.append(f"oracle: {verdict}")
        if verdict in ("yes", "no") and (verdict == "yes") != result:
            code = EXIT_VIOLATION
    _emit(cfg, data, lines)
    return code


def _element_from_json(data: dict) -> GroupoidElement:
    if "letters" in data:
        source = loads(data["source"])
        letters = [(int(s), int(a)) for s, a in data["letters"]]
        return engine.element_from_signed(source, letters)
    if "apex" in data:
        apex = loads(data["apex"])
        return GroupoidElement(apex, word_from_arcs(apex, data.get("denominator", [])),
                               word_from_arcs(apex, data.get("numerator", [])))
    raise UsageError("fraction JSON needs 'apex' with 'denominator'/'numerator', or 'source' with 'letters'")


def cmd_word_problem(args, cfg):
    g = _element_from_json(_json_file(args.fraction))
    reduced = g.simplify()
    ident = g.is_identity()
    data = {
        "identity": ident,
        "reduced": {"apex": reduced.apex.key, "denominator": word_arcs(reduced.denominator),
                    "numerator": word_arcs(reduced.numerator)},
    }
    _emit(cfg, data, [f"identity: {str(ident).lower()}",
                      f"denominator: {_arcs_text(reduced.denominator)}",
                      f"numerator: {_arcs_text(reduced.numerator)}"])
    return EXIT_OK


def cmd_cube_check(args, cfg):
    if args.object:
        objs = [_object(args.object)]
    elif args.labels:
        objs = enumerate_objects(parse_labels(args.labels), cap=cfg.object_cap)
    else:
        raise UsageError("give --object or --labels")
    with ThreadPoolExecutor(max_workers=cfg.threads) as pool:
        reports = list(pool.map(lambda x: engine.cube_check(x, cfg.caps), objs))
    rows = [{"object": r.obj.key, "checked": r.checked, "failures": r.failures, "inconclusive": r.inconclusive}
            for r in reports]
    failures = sum(len(r.failures) for r in reports)
    unknown = sum(len(r.inconclusive) for r in reports)
    checked = sum(r.checked for r in reports)
    _emit(cfg, {"objects": rows, "checked": checked, "failures": failures, "inconclusive": unknown},
          [f"{len(objs)} objects, {checked} triples, {failures} failures, {unknown} inconclusive"])
    if failures:
        return EXIT_VIOLATION
    return EXIT_CAP if unknown else EXIT_OK


def cmd_interval(args, cfg):
    x = _base(args)
    lat = interval(x, node_cap=cfg.node_cap)
    report = verify_lattice(lat) if args.verify else None
    if args.dot:
        hasse_export(lat, "dot", args.dot)
    if args.json_out:
        hasse_export(lat, "json", args.json_out)
    data = {"base": x.key, "size": len(lat), "covers": len(lat.covers)}
    lines = [f"base: {x.key}", f"size: {len(lat)}", f"covers: {len(lat.covers)}"]
    if report is not None:
        data["lattice"] = report.ok
        lines.append(report.summary())
    _emit(cfg, data, lines)
    return EXIT_OK if report is None or report.ok else EXIT_VIOLATION


def cmd_tamari(args, cfg):
    lab = parse_labels(args.labels)
    base = None if args.base == "fan" else _object(args.base)
    order = tamari(lab, base)
    if args.dot:
        hasse_export(order, "dot", args.dot)
    if args.json_out:
        hasse_export(order, "json", args.json_out)
    from .oracle import classical_tamari
    from .lattice import is_order_isomorphic

    classical = is_order_isomorphic(order, classical_tamari(lab.n))
    _emit(cfg, {"base": order.base.key, "size": len(order), "covers": len(order.covers), "classical": classical},
          [f"base: {order.base.key}", f"size: {len(order)}", f"covers: {len(order.covers)}",
           f"isomorphic to classical Tamari: {str(classical).lower()}"])
    return EXIT_OK


def cmd_chargraph(args, cfg):
    x = _object(args.object)
    graph = characteristic_graph(x, _int_list(args.arcs), node_cap=cfg.node_cap)
    if args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(graph.to_dot())
    _emit(cfg, graph.to_json(), [f"rank: {graph.rank}", f"nodes: {graph.node_count}", f"edges: {len(graph.edges)}"])
    return EXIT_OK


def cmd_weight(args, cfg):
    x = _object(args.object)
    w = weight(Move(x, args.arc))
    _emit(cfg, {"weight": w}, [str(w)])
    return EXIT_OK


# ----------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", default=None, help="machine-readable output")
    common.add_argument("--config", help="JSON file with defaults for any option")
    common.add_argument("--step-cap", type=int, help="reversing step cap")
    common.add_argument("--node-cap", type=int, help="node cap for intervals and characteristic graphs")
    common.add_argument("--object-cap", type=int, help="cap on enumerated objects")
    common.add_argument("--oracle-max-length", type=int, help="oracle word length cap")
    common.add_argument("--oracle-max-class", type=int, help="oracle class size cap")
    common.add_argument("--threads", type=int, help="worker threads for cube checks")

    parser = argparse.ArgumentParser(prog="diskgarside", description="Labelled-disk Garside groupoid toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(func=func)
        return p

    p = add("objects", cmd_objects, "list all objects of a labelling")
    p.add_argument("--labels", required=True)
    p = add("atoms", cmd_atoms, "list the elementary moves at an object")
    p.add_argument("--object", required=True)
    p = add("rotate", cmd_rotate, "apply one elementary move")
    p.add_argument("--object", required=True)
    p.add_argument("--arc", type=int, required=True)
    p = add("complement", cmd_complement, "elementary relation for two atoms")
    p.add_argument("--object", required=True)
    p.add_argument("--arcs", required=True)
    p = add("delta", cmd_delta, "Garside element at an object")
    p.add_argument("--object", required=True)
    p = add("nf", cmd_nf, "greedy normal form of a positive word")
    p.add_argument("--word", required=True)
    p = add("equal", cmd_equal, "decide equivalence of two positive words")
    p.add_argument("--left", required=True)
    p.add_argument("--right", required=True)
    p.add_argument("--oracle", action="store_true", help="also ask the congruence-closure oracle")
    p = add("word-problem", cmd_word_problem, "decide whether a groupoid element is an identity")
    p.add_argument("--fraction", required=True)
    p = add("cube-check", cmd_cube_check, "check the cube condition with the oracle")
    p.add_argument("--labels")
    p.add_argument("--object")
    p = add("interval", cmd_interval, "lattice of simple elements at an object")
    p.add_argument("--object")
    p.add_argument("--labels")
    p.add_argument("--dot")
    p.add_argument("--json-out")
    p.add_argument("--verify", action="store_true", help="check the lattice property")
    p = add("tamari", cmd_tamari, "Tamari order on triangulations")
    p.add_argument("--labels", required=True)
    p.add_argument("--base", default="fan")
    p.add_argument("--dot")
    p.add_argument("--json-out")
    p = add("chargraph", cmd_chargraph, "characteristic graph spanned by atoms")
    p.add_argument("--object", required=True)
    p.add_argument("--arcs", required=True)
    p.add_argument("--dot")
    p = add("weight", cmd_weight, "weight of an elementary move")
    p.add_argument("--object", required=True)
    p.add_argument("--arc", type=int, required=True)
    return parser


def _config(args) -> Config:
    values = {}
    if args.config:
        try:
            with open(args.config, encoding="utf-8") as fh:
                loaded = json.load(fh)
        except (OSError, json.JSONDecodeError) as exc:
            raise UsageError(f"cannot read config {args.config}: {exc}") from exc
        known = set(Config.__dataclass_fields__)
        for key, value in loaded.items():
            name = key.replace("-", "_")
            if name not in known:
                raise UsageError(f"unknown config key {key!r}")
            values[name] = value
    for name in Config.__dataclass_fields__:
        flag = getattr(args, name, None)
        if flag is not None:
            values[name] = flag
    cfg = Config(**values)
    cfg.validate()
    return cfg


def run(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config(args)
        engine.set_step_cap(cfg.step_cap)
        return args.func(args, cfg)
    except (UsageError, DiskError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (Divergence, CapExceeded, ObjectCapExceeded) as exc:
        print(f"cap exceeded: {exc}", file=sys.stderr)
        return EXIT_CAP
    except GarsideError as exc:
        print(f"property violation: {exc}", file=sys.stderr)
        return EXIT_VIOLATION
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main() -> None:
    sys.exit(run())
