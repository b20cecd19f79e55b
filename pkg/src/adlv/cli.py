"""Command line entry point: ``adlv <command> [flags]``.

Every invocation prints exactly one JSON document on stdout.  Exit codes:
0 success, 1 a verification sweep reported FAIL, 2 a domain error (including
an empty variety), 3 a malformed query, 4 an internal consistency failure.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
from typing import Sequence

from . import chains as ch
from .affine import affine
from .catalog import datum_from_json, resolve
from .errors import DomainError, InternalConsistencyError, SchemaError
from .harness import PROFILES, reports_json, summary_tsv, verify, verify_all
from .invariants import hn_irreducible, invariants_of, nonempty_report
from .levi import choose_J, ibar
from .pi0 import pi0
from .serialize import SCHEMA_VERSION, dumps, elem_json, frac_list, parse_elem, parse_vector

log = logging.getLogger("adlv")

COMMANDS = ["pi0", "nonempty", "invariants", "choose-levi", "ibar", "theta", "chain", "straight",
            "reduce", "verify", "verify-all"]
QUERY_FIELDS = {"datum", "command", "lambda", "b", "J", "mu", "mu2", "x", "lemma", "type",
                "bound", "height", "seed", "profile", "out"}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise SchemaError(message, {"field": "argv"})


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="adlv", description="Components of closed affine Deligne-Lusztig varieties.")
    p.add_argument("command", nargs="?", choices=COMMANDS)
    p.add_argument("--query", help="JSON query document (replaces the other flags)")
    p.add_argument("--datum", default=None, help="catalog name, Cartan type, or path to a datum JSON file")
    p.add_argument("--lambda", dest="lam", help="dominant coweight, e.g. [1,1]")
    p.add_argument("--b", help='element "t[..];s1 s2", a Weyl word, or JSON {"mu":..,"w":..}')
    p.add_argument("--J", help="subset of simple roots, e.g. [0,1]")
    p.add_argument("--mu", help="first coweight for theta/chain")
    p.add_argument("--mu2", help="second coweight for theta/chain")
    p.add_argument("--x", help="element for reduce")
    p.add_argument("--lemma", help="lemma id for verify")
    p.add_argument("--type", dest="dtype", help="datum for verify (catalog name or Cartan type)")
    p.add_argument("--bound", type=int)
    p.add_argument("--height", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--profile", choices=sorted(PROFILES), default="quick")
    p.add_argument("--timing", action="store_true", help="include wall times in reports")
    p.add_argument("--out", help="also write the result to this path")
    p.add_argument("-v", "--verbose", action="store_true")
    return p


def _load_datum(spec: str | dict | None):
    if spec is None:
        raise SchemaError("--datum is required", {"field": "datum"})
    if isinstance(spec, dict):
        return datum_from_json(spec)
    if os.path.exists(spec):
        try:
            with open(spec) as fh:
                doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SchemaError(f"datum file is not JSON: {exc}", {"field": "datum"}) from exc
        return datum_from_json(doc)
    return resolve(spec)


def _query_to_args(args: argparse.Namespace) -> argparse.Namespace:
    try:
        with open(args.query) as fh:
            doc = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise SchemaError(f"cannot read query: {exc}", {"field": "query"}) from exc
    if not isinstance(doc, dict):
        raise SchemaError("query must be a JSON object", {"field": "query"})
    extra = set(doc) - QUERY_FIELDS
    if extra:
        raise SchemaError(f"unknown query fields {sorted(extra)}", {"field": sorted(extra)[0]})
    if doc.get("command") not in COMMANDS:
        raise SchemaError("query.command missing or unknown", {"field": "command"})
    ns = vars(args).copy()
    ns["command"] = doc["command"]
    ns["datum"] = doc.get("datum", ns["datum"])
    for src, dst in (("lambda", "lam"), ("b", "b"), ("J", "J"), ("mu", "mu"), ("mu2", "mu2"), ("x", "x"),
                     ("lemma", "lemma"), ("type", "dtype"), ("bound", "bound"), ("height", "height"),
                     ("seed", "seed"), ("profile", "profile"), ("out", "out")):
        if src in doc:
            val = doc[src]
            ns[dst] = json.dumps(val) if isinstance(val, list) and src in ("lambda", "J", "mu", "mu2") else val
    return argparse.Namespace(**ns)


def _need(args, attr, field):
    val = getattr(args, attr)
    if val is None:
        raise SchemaError(f"--{field} is required for {args.command}", {"field": field})
    return val


def _J(D, args):
    raw = _need(args, "J", "J")
    try:
        val = json.loads(raw) if isinstance(raw, str) else raw
    except json.JSONDecodeError as exc:
        raise SchemaError("J: not a JSON list", {"field": "J"}) from exc
    if not isinstance(val, list) or not all(isinstance(v, int) and 0 <= v < D.n for v in val):
        raise SchemaError(f"J: expected a list of indices in [0, {D.n - 1}]", {"field": "J"})
    return frozenset(val)


def run_command(args) -> tuple[dict, int]:
    cmd = args.command
    if cmd == "verify":
        lemma = _need(args, "lemma", "lemma")
        cfg = {"seed": args.seed}
        if args.dtype or args.datum:
            cfg["data"] = [args.dtype or args.datum]
        for key in ("bound", "height"):
            if getattr(args, key) is not None:
                cfg[key] = getattr(args, key)
        rep = verify(lemma, cfg)
        return {"report": rep.to_json(args.timing)}, int(rep.status == "FAIL")
    if cmd == "verify-all":
        reps = verify_all(args.profile, seed=args.seed)
        doc = json.loads(reports_json(reps, args.timing))
        doc["profile"] = args.profile
        doc["summary_tsv"] = summary_tsv(reps, args.timing)
        return doc, int(any(r.status == "FAIL" for r in reps))

    D = _load_datum(args.datum)
    A = affine(D)
    doc: dict = {"datum": D.describe()}
    if cmd in ("pi0", "nonempty", "invariants", "choose-levi", "ibar"):
        b = parse_elem(D, _need(args, "b", "b"))
        doc["b"] = elem_json(b)
    if cmd in ("pi0", "nonempty", "choose-levi", "ibar", "theta", "chain", "straight"):
        lam = parse_vector(_need(args, "lam", "lambda"), D.n, "lambda")
        if not D.is_dominant(lam):
            raise DomainError("lambda must be dominant", {"lambda": list(lam)})
        doc["lambda"] = list(lam)

    if cmd == "invariants":
        inv = invariants_of(D, b)
        doc.update({"kappa": list(inv.kappa), "nu": frac_list(inv.nu)})
        return doc, 0
    if cmd == "nonempty":
        rep = nonempty_report(D, lam, b)
        doc.update({"nonempty": rep["nonempty"], "kappa_match": rep["kappa_match"],
                    "coefficients": frac_list(rep["coefficients"]), "criterion": rep["criterion"]})
        if rep["nonempty"]:
            doc["hn_irreducible"] = hn_irreducible(D, lam, b)
            return doc, 0
        return doc, 2
    if cmd == "pi0":
        doc.update(pi0(D, lam, b, seed=args.seed).to_json())
        return doc, 0
    if cmd == "choose-levi":
        doc["levi"] = choose_J(D, lam, b, seed=args.seed).to_json()
        return doc, 0
    if cmd == "ibar":
        J = _J(D, args)
        doc.update({"J": sorted(J), "ibar": [list(m) for m in ibar(D, lam, J, b)]})
        return doc, 0
    if cmd == "theta":
        mu = parse_vector(_need(args, "mu", "mu"), D.n, "mu")
        mu2 = parse_vector(_need(args, "mu2", "mu2"), D.n, "mu2")
        th, xi, xi1 = ch.theta_sets(D, mu, mu2, lam)
        doc.update({"mu": list(mu), "mu2": list(mu2), "theta": th, "xi": xi, "xi1": xi1})
        return doc, 0
    if cmd == "chain":
        mu = parse_vector(_need(args, "mu", "mu"), D.n, "mu")
        mu2 = parse_vector(_need(args, "mu2", "mu2"), D.n, "mu2")
        if args.J is not None:
            J = _J(D, args)
            b = parse_elem(D, _need(args, "b", "b"))
            ib = ibar(D, lam, J, b)
            steps = ch.convv_chain(D, lam, J, mu, mu2, ib)
            doc.update({"J": sorted(J), "b": elem_json(b), "steps": [s.to_json(D, J) for s in steps]})
        else:
            steps, _ = ch.conv_chain(D, mu, mu2, lam)
            doc["steps"] = [s.to_json(D) for s in steps]
        doc.update({"mu": list(mu), "mu2": list(mu2)})
        return doc, 0
    if cmd == "straight":
        doc["classes"] = [{"representative": elem_json(x), "kappa": list(k), "nu": frac_list(nu)}
                          for x, k, nu in A.straight_classes_below(lam)]
        return doc, 0
    if cmd == "reduce":
        x = parse_elem(D, _need(args, "x", "x"))
        y, trace = A.reduce_to_min(x)
        doc.update({"x": elem_json(x), "length": A.length(x), "minimal": elem_json(y),
                    "minimal_length": A.length(y), "trace": [str(t) for t in trace]})
        return doc, 0
    raise SchemaError(f"unknown command {cmd!r}", {"field": "command"})


def _emit(doc: dict, out: str | None, command: str | None) -> str:
    doc = dict(doc, schema_version=SCHEMA_VERSION)
    text = dumps(doc)
    if out:
        with open(out, "w") as fh:
            if command == "chain" and out.endswith(".jsonl"):
                for step in doc.get("steps", []):
                    fh.write(json.dumps(step, sort_keys=True) + "\n")
            elif command == "verify-all" and out.endswith(".tsv"):
                fh.write(doc.get("summary_tsv", ""))
            else:
                fh.write(text + "\n")
    return text


def main(argv: Sequence[str] | None = None) -> int:
    logging.basicConfig(stream=sys.stderr, level=logging.WARNING, format="%(levelname)s %(message)s")
    command = None
    out = None
    try:
        args = build_parser().parse_args(argv)
        if args.verbose:
            log.setLevel(logging.INFO)
        if args.query:
            args = _query_to_args(args)
        command, out = args.command, args.out
        if command is None:
            raise SchemaError("a command is required", {"field": "command", "choices": COMMANDS})
        doc, code = run_command(args)
        doc["command"] = command
    except SchemaError as exc:
        doc, code = {"error": {"kind": "schema", "message": str(exc), "payload": exc.payload}}, 3
    except DomainError as exc:
        doc, code = {"error": {"kind": "domain", "message": str(exc), "payload": exc.payload}}, 2
    except InternalConsistencyError as exc:
        doc, code = {"error": {"kind": "internal", "message": str(exc), "payload": exc.payload}}, 4
    print(_emit(doc, out, command))
    return code


if __name__ == "__main__":
    sys.exit(main())
