"""Command-line workbench: invariants, verification suites, families, search.

All output is JSONL with a single header record carrying the version, seed
and config hash; timestamps appear only in the header so reruns are
byte-comparable below it.  Exit codes: 0 = all hard assertions passed,
1 = an assertion failed, 2 = usage or parse error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import sys
import time

from . import __version__, gauss
from .corpus import corpus
from .diagram import Diagram, MalformedDiagram, NotRealizable, parse_dt, parse_pd
from .finitetype import (delta_v2_witness, group_checks, move_invariance_report,
                         verify_type)
from .invariants import (BRACKET_CROSSING_LIMIT, conway, jones, vassiliev_report)
from .moves import replay
from .search import bfs_path, delta_unknot, replay_path
from .templates import builtin_templates, realize_by_lower, replay_tangle_script


def _parse_code(code: str) -> Diagram:
    code = code.strip()
    if not code:
        return Diagram.unknot()
    if "X" in code or "x" in code:
        return parse_pd(code)
    return parse_dt(code)


def _emit(out, record: dict) -> None:
    out.write(json.dumps(record, sort_keys=True) + "\n")


def _header(out, seed=None, config_text: str | None = None) -> None:
    rec = {"record": "header", "version": __version__,
           "timestamp": int(time.time())}
    if seed is not None:
        rec["seed"] = seed
    if config_text is not None:
        rec["config_hash"] = hashlib.sha256(config_text.encode()).hexdigest()[:16]
    _emit(out, rec)


class Cache:
    """Append-only JSONL cache keyed by canonical key, checksummed per record."""

    def __init__(self, path: str | None):
        self.path = path
        self.data: dict[str, dict] = {}
        self._fh = None
        if path:
            try:
                with open(path) as fh:
                    for line in fh:
                        try:
                            rec = json.loads(line)
                            payload = rec["payload"]
                            digest = hashlib.sha256(
                                json.dumps(payload, sort_keys=True).encode()).hexdigest()
                            if digest == rec["sha"]:
                                self.data[rec["key"]] = payload
                        except (KeyError, ValueError):
                            continue
            except FileNotFoundError:
                pass
            self._fh = open(path, "a")

    def get(self, key: str):
        return self.data.get(key)

    def put(self, key: str, payload: dict) -> None:
        if key in self.data:
            return
        self.data[key] = payload
        if self._fh:
            digest = hashlib.sha256(
                json.dumps(payload, sort_keys=True).encode()).hexdigest()
            self._fh.write(json.dumps(
                {"key": key, "payload": payload, "sha": digest}, sort_keys=True) + "\n")
            self._fh.flush()


def _knot_payload(d: Diagram) -> dict:
    rep = vassiliev_report(d)
    payload = {"v2": rep["v2"], "v3": rep["v3"], "crosschecks": rep["crosschecks"],
               "conway": conway(d).to_pairs()}
    if d.n_crossings <= BRACKET_CROSSING_LIMIT:
        payload["jones"] = jones(d).to_pairs()
    else:
        payload["jones"] = None
    return payload


def cmd_invariants(args, out) -> int:
    cache = Cache(args.cache)
    _header(out)
    if args.input == "-":
        lines = sys.stdin.read().splitlines()
    else:
        try:
            with open(args.input) as fh:
                lines = fh.read().splitlines()
        except OSError as exc:
            print(f"cannot read {args.input}: {exc}", file=sys.stderr)
            return 2
    successes = 0
    for lineno, line in enumerate(lines, 1):
        if not line.strip() or line.startswith("#"):
            continue
        name, _, code = line.partition("\t")
        if not _:
            name, _, code = line.partition(" ")
        name = name.strip()
        try:
            d = _parse_code(code)
            key = d.canonical_key
            payload = cache.get(key)
            if payload is None:
                payload = _knot_payload(d)
                cache.put(key, payload)
            _emit(out, {"record": "knot", "name": name, "key": key, **payload})
            successes += 1
        except (MalformedDiagram, NotRealizable, ValueError) as exc:
            _emit(out, {"record": "error", "name": name, "line": lineno,
                        "error": str(exc)})
    return 0 if successes else 2


def _suite_verify_type(spec: dict, out) -> bool:
    bases = corpus(max_crossings=spec.get("max_crossings", 7), include_unknot=True)
    records = verify_type(spec["phi"], tuple(spec["orders"]), spec["trials"],
                          spec["seed"], bases)
    ok = True
    for rec in records:
        _emit(out, {"record": "trial", "suite": "verify_type",
                    "phi": spec["phi"], **rec.to_json(), "pass": rec.ok})
        ok = ok and rec.ok
    return ok


def _suite_move_invariance(spec: dict, out) -> bool:
    bases = corpus(max_crossings=spec.get("max_crossings", 7), include_unknot=True)
    names = sorted(bases)
    total = spec.get("moves", 100)
    per = max(1, spec.get("chain", 5))
    seed = spec["seed"]
    done = 0
    ok = True
    idx = 0
    while done < total:
        name = names[idx % len(names)]
        idx += 1
        rep = move_invariance_report(bases[name], spec.get("l", 3),
                                 min(per, total - done), seed + idx)
        done += len([s for s in rep["steps"] if "delta" in s])
        ok = ok and rep["pass"]
        _emit(out, {"record": "move-invariance", "base": name, "l": rep["l"],
                    "deltas": rep["v2_deltas_seen"], "pass": rep["pass"]})
        if len([s for s in rep["steps"] if "delta" in s]) == 0:
            done += 1  # avoid stalling on site exhaustion
    witness = delta_v2_witness(bases, seed=spec.get("witness_seed", 7))
    _emit(out, {"record": "order3-witness", "found": witness is not None,
                **({"witness": witness} if witness else {})})
    return ok and witness is not None


def _suite_group(spec: dict, out) -> bool:
    bases = corpus(max_crossings=spec.get("max_crossings", 7), include_unknot=True)
    rep = group_checks(bases, pairs=spec.get("pairs", 50), seed=spec["seed"])
    _emit(out, {"record": "group_checks", "pass": rep["pass"],
                "v2_inverse_pairs": len(rep["inverses"]["v2_level"]),
                "v2v3_inverse_pairs": len(rep["inverses"]["v2v3_level"])})
    return rep["pass"]


def _suite_searches(spec: dict, out) -> bool:
    bases = corpus(max_crossings=spec.get("max_crossings", 7), include_unknot=True)
    budget = spec.get("budget", 4000)
    trefoil = bases["3_1"]
    res = bfs_path(trefoil, Diagram.unknot(), {"B2"}, budget)
    ok = res.found and res.moves_used == 1
    _emit(out, {"record": "search", "case": "trefoil-unknot-B2",
                **res.to_json(), "pass": ok})
    hits = 0
    total = 0
    for name, d in sorted(bases.items()):
        if d.n_crossings > 7:
            continue
        total += 1
        r = delta_unknot(d, budget)
        hits += r.found
        _emit(out, {"record": "search", "case": f"delta-unknot:{name}",
                    "found": r.found, "moves_used": r.moves_used,
                    "expansions": r.expansions, "note": r.note})
    rate = hits / total if total else 1.0
    need = spec.get("require_rate", 0.8)
    _emit(out, {"record": "search-summary", "delta_unknot_rate": rate,
                "required": need, "pass": rate >= need and ok})
    return ok and rate >= need


def _suite_certificates(spec: dict, out) -> bool:
    templates = builtin_templates()
    ok = True
    for k, tpl in sorted(templates.items()):
        certs = tpl.brunnian_certificates()
        good = tpl.verify_certificates(certs)
        _emit(out, {"record": "certificate", "template": tpl.name, "k": k,
                    "brunnian": good})
        ok = ok and good
    script = realize_by_lower(templates[3], 2, spec.get("budget", 50_000))
    good = script is not None and replay_tangle_script(templates[3], script)
    _emit(out, {"record": "certificate", "template": "triangle-flip-by-order-2",
                "found": script is not None, "replays": good})
    return ok and good


_SUITES = {
    "verify_type": _suite_verify_type,
    "move_invariance_report": _suite_move_invariance,
    "group_checks": _suite_group,
    "searches": _suite_searches,
    "certificates": _suite_certificates,
}


def cmd_verify(args, out) -> int:
    try:
        with open(args.config) as fh:
            config_text = fh.read()
        config = json.loads(config_text)
    except OSError as exc:
        print(f"cannot read config: {exc}", file=sys.stderr)
        return 2
    except ValueError as exc:
        print(f"config is not valid JSON: {exc}", file=sys.stderr)
        return 2
    suites = config.get("suites")
    if not isinstance(suites, list):
        print("config must contain a list under 'suites'", file=sys.stderr)
        return 2
    _header(out, seed=config.get("seed"), config_text=config_text)
    all_ok = True
    for spec in suites:
        kind = spec.get("suite")
        if kind not in _SUITES:
            print(f"unknown suite {kind!r}", file=sys.stderr)
            return 2
        if "seed" not in spec:
            spec = {**spec, "seed": config.get("seed", 0)}
        ok = _SUITES[kind](spec, out)
        _emit(out, {"record": "suite-result", "suite": kind, "pass": ok})
        all_ok = all_ok and ok
    _emit(out, {"record": "verdict", "pass": all_ok})
    return 0 if all_ok else 1


def cmd_family(args, out) -> int:
    from .finitetype import random_family
    import random as _random

    try:
        base = _parse_code(args.base)
        orders = tuple(int(x) for x in args.orders.split(",")) if args.orders else ()
    except (MalformedDiagram, NotRealizable, ValueError) as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return 2
    _header(out, seed=args.seed)
    if not orders:
        _emit(out, {"record": "family-member", "subset": [],
                    "v2": gauss.v2(base), "v3": gauss.v3(base),
                    "key": base.canonical_key})
        _emit(out, {"record": "family-sums", "v2_sum": gauss.v2(base),
                    "v3_sum": gauss.v3(base)})
        return 0
    rng = _random.Random(args.seed)
    fam = None
    for _ in range(50):
        fam = random_family(base, orders, rng)
        if fam is not None:
            break
    if fam is None:
        print("site exhaustion: no family of that type found", file=sys.stderr)
        return 1
    from .templates import family as expand

    s2 = s3 = 0
    for subset, diagram in sorted(expand(fam).items(), key=lambda kv: sorted(kv[0])):
        a, b = gauss.v2(diagram), gauss.v3(diagram)
        sign = (-1) ** len(subset)
        s2 += sign * a
        s3 += sign * b
        _emit(out, {"record": "family-member", "subset": sorted(subset),
                    "v2": a, "v3": b, "key": diagram.canonical_key})
    _emit(out, {"record": "family-sums", "orders": list(orders),
                "v2_sum": s2, "v3_sum": s3})
    return 0


def cmd_search(args, out) -> int:
    try:
        d1 = _parse_code(getattr(args, "from"))
    except (MalformedDiagram, NotRealizable, ValueError) as exc:
        print(f"bad diagram: {exc}", file=sys.stderr)
        return 2
    _header(out, seed=None)
    if args.delta_unknot:
        res = delta_unknot(d1, args.budget)
        _emit(out, {"record": "search", "case": "delta-unknot", **res.to_json()})
        return 0 if res.found else 1
    try:
        d2 = _parse_code(args.to if args.to is not None else "")
        kinds = set(args.movekinds.split(",")) if args.movekinds else {"B2"}
    except (MalformedDiagram, NotRealizable, ValueError) as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return 2
    res = bfs_path(d1, d2, kinds, args.budget)
    _emit(out, {"record": "search", "case": "bfs", **res.to_json()})
    return 0 if res.found else 1


def cmd_path_replay(args, out) -> int:
    try:
        d = _parse_code(args.diagram)
        with open(args.script) as fh:
            script = [tuple(e) for e in json.load(fh)]
    except (OSError, ValueError, MalformedDiagram, NotRealizable) as exc:
        print(f"bad input: {exc}", file=sys.stderr)
        return 2
    _header(out)
    try:
        target = args.target
        if target is None:
            final = replay(d, script)
            final = Diagram(final.crossings, final.free_loops, check=False)
            _emit(out, {"record": "replay", "ok": True,
                        "final_key": final.canonical_key})
            return 0
        ok = replay_path(d, script, target)
        _emit(out, {"record": "replay", "ok": ok, "target": target})
        return 0 if ok else 1
    except (MalformedDiagram, ValueError) as exc:
        _emit(out, {"record": "replay", "ok": False, "error": str(exc)})
        return 1


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="knotmoves",
        description="Knot diagrams, local-move search, and finite-type checks")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="invariants for a name<TAB>code corpus file")
    p.add_argument("input", help="corpus file path, or - for stdin")
    p.add_argument("--cache", default=None, help="append-only JSONL cache file")

    p = sub.add_parser("verify", help="run verification suites from a JSON config")
    p.add_argument("--config", required=True)

    p = sub.add_parser("family", help="expand a random singular family over a base knot")
    p.add_argument("--base", default="", help="DT or PD code (empty = unknot)")
    p.add_argument("--orders", default="", help="comma-separated chord orders, e.g. 2,2,2")
    p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("search", help="bounded move search between diagrams")
    p.add_argument("--from", required=True)
    p.add_argument("--to", default=None)
    p.add_argument("--movekinds", default="B2")
    p.add_argument("--budget", type=int, default=4000)
    p.add_argument("--delta-unknot", action="store_true")

    p = sub.add_parser("path-replay", help="replay a move script and check the result")
    p.add_argument("--diagram", required=True)
    p.add_argument("--script", required=True)
    p.add_argument("--target", default=None, help="expected canonical key")

    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return 2 if exc.code else 0
    out = sys.stdout
    handlers = {"invariants": cmd_invariants, "verify": cmd_verify,
                "family": cmd_family, "search": cmd_search,
                "path-replay": cmd_path_replay}
    return handlers[args.command](args, out)


if __name__ == "__main__":
    sys.exit(main())
