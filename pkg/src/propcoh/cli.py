"""Command-line entry point.

Exit codes: 0 success, 1 an ``inconsistent`` verdict or a violated ledger,
2 usage or input errors, 3 an internal invariant failure.
"""

from __future__ import annotations

import argparse
import json
import os
import sys

from .budget import BudgetExceeded, default_budget
from .cohomology import UNAVAILABLE, presentation_h1_h2_bounds, tower_colimit_estimate
from .exact import LedgerError, ledger_check, load_ledger
from .fp_linalg import complex_cohomology, is_prime
from .pquotient import TrivialWordError, compute_tower, residual_p_witness
from .presentations import BUILTINS, PresentationError, builtin_example, load_presentation
from .raag import GraphError, clique_count, load_graph, parse_raag_word, salvetti_cochain_complex
from .scenarios import Scenario, ScenarioError, default_suite, load_scenario, run_scenario, scenario_to_dict


def _prime(text: str) -> int:
    try:
        p = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if not is_prime(p):
        raise argparse.ArgumentTypeError(f"{p} is not prime")
    return p


def _positive(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if k < 1:
        raise argparse.ArgumentTypeError("must be at least 1")
    return k


def _nonneg(text: str) -> int:
    try:
        k = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer") from None
    if k < 0:
        raise argparse.ArgumentTypeError("must be nonnegative")
    return k


def _write_json(path: str | None, payload: dict) -> None:
    if not path:
        return
    text = json.dumps(dict(payload, format=1), sort_keys=True, indent=2) + "\n"
    if path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w") as fh:
        fh.write(text)


def cmd_raag_cohomology(args) -> int:
    g = load_graph(args.graph)
    cx = salvetti_cochain_complex(g, args.prime, args.max_degree)
    dims = complex_cohomology(cx, range(args.max_degree + 1))
    print(f"graph: {g.n} vertices, {len(g.edges)} edges; p = {args.prime}")
    rows = []
    for n in range(args.max_degree + 1):
        cl = clique_count(g, n)
        print(f"H^{n} = {dims[n]}   (cliques of size {n}: {cl})")
        rows.append({"degree": n, "dim": dims[n], "cliques": cl})
    _write_json(args.json, {"command": "raag-cohomology", "p": args.prime, "graph": g.to_dict(), "degrees": rows})
    return 0 if all(r["dim"] == r["cliques"] for r in rows) else 3


def cmd_pquotient(args) -> int:
    pres = load_presentation(args.presentation)
    t = compute_tower(pres, args.prime, args.class_, default_budget())
    print(f"p = {args.prime}, {pres.ngens} generators, {len(pres.relators)} relators")
    for c, (n, r) in enumerate(zip(t.orders(), t.layer_ranks()), start=1):
        print(f"class {c}: order {args.prime}^{n}, layer rank {r}")
    if t.truncated:
        print(f"truncated: {t.reason}")
    if args.dump:
        with open(args.dump, "w") as fh:
            fh.write(t.dumps() + "\n")
    _write_json(args.json, {
        "command": "pquotient", "p": args.prime, "order_exponents": t.orders(),
        "layer_ranks": t.layer_ranks(), "truncated": t.truncated,
    })
    return 0


def cmd_witness(args) -> int:
    g = load_graph(args.graph)
    w = parse_raag_word(g, args.word)
    wit = residual_p_witness(g, w, args.prime, args.max_class, default_budget())
    if wit is None:
        print(f"not found up to class {args.max_class} (a budget limit, not a disproof)")
    else:
        print(f"witness at class {wit.level}: exponent vector {list(wit.vector)}")
    _write_json(args.json, {
        "command": "witness", "p": args.prime, "word": args.word,
        "level": wit.level if wit else None, "vector": list(wit.vector) if wit else None,
    })
    return 0


def cmd_tower_cohomology(args) -> int:
    pres = load_presentation(args.presentation)
    t = compute_tower(pres, args.prime, args.class_, default_budget())
    tc = tower_colimit_estimate(t, args.degree)
    h1, h2_upper = presentation_h1_h2_bounds(pres, args.prime)
    print(f"p = {args.prime}, degree {args.degree}")
    for c in range(1, t.nlevels + 1):
        print(f"class {c}: dim H^{args.degree} = {tc.level_dims[c - 1]}, "
              f"image in top = {tc.inflation_image_dims[c - 1]}")
    state = "stable" if tc.stable else "not stable"
    print(f"colimit estimate: {tc.estimate} ({state}{', truncated' if tc.truncated else ''})")
    print(f"presentation: h1 = {h1}, h2 upper bound = {h2_upper if h2_upper is not UNAVAILABLE else 'unavailable'}")
    _write_json(args.json, {"command": "tower-cohomology", **tc.to_dict()})
    return 0


def cmd_ledger(args) -> int:
    l = load_ledger(args.file)
    v = ledger_check(l)
    print(v.label + (f" at {v.failing_node}: {v.reason}" if not v.satisfiable else ""))
    for node, b in sorted(v.lower_bounds.items()):
        print(f"  {node} >= {b}")
    _write_json(args.json, {"command": "ledger", **v.to_dict()})
    return 0 if v.satisfiable else 1


def _print_report(rep) -> None:
    d = rep.to_dict()
    print(f"scenario {d['scenario']} ({d['kind']}): {d['verdict']}")
    for p, sec in d["primes"].items():
        tower = sec["tower"]
        print(f"  p = {p}: tower order exponents {tower['order_exponents']}"
              + (" (truncated)" if tower["truncated"] else ""))
        for n, deg in sorted(sec["degrees"].items(), key=lambda kv: int(kv[0])):
            disc = deg["discrete"]
            shown = disc["value"] if disc["value"] is not None else f">= {disc['lower']}"
            tc = deg["tower"]
            est = "-" if tc is None else f"{tc['estimate']}{'' if tc['stable'] else '?'}"
            print(f"    H^{n}: discrete {shown} [{disc['provenance']}], tower {est}: {deg['comparison']}")
        for led in sec.get("ledgers", []):
            print(f"    ledger {led['kind']}: {led['verdict']}")
    for f in d["flags"]:
        print(f"  note: {f}")
    for f in d["internal_failures"]:
        print(f"  FAILURE: {f}")


def cmd_verify(args) -> int:
    rep = run_scenario(load_scenario(args.scenario))
    _print_report(rep)
    if args.json:
        _write_json(args.json, rep.to_dict())
    return rep.exit_code


def cmd_builtin(args) -> int:
    b = builtin_example(args.name)
    if args.show:
        pres = b.presentation
        print(f"{b.name}: {b.description}")
        print("generators: " + ", ".join(pres.generators))
        for r in pres.relators:
            print("relator: " + pres.format(r))
        return 0
    kind = "amalgam_classC" if b.amalgam_of else "builtin"
    s = Scenario(b.name, kind, tuple(args.prime or [2, 3]), maxclass=args.class_, maxdeg=args.max_degree,
                 builtin=b.name)
    rep = run_scenario(s)
    _print_report(rep)
    _write_json(args.json, rep.to_dict())
    return rep.exit_code


def cmd_suite(args) -> int:
    os.makedirs(args.out, exist_ok=True)
    worst = 0
    for s in default_suite():
        rep = run_scenario(s)
        with open(os.path.join(args.out, f"{s.name}.json"), "w") as fh:
            fh.write(rep.dumps() + "\n")
        if args.write_scenarios:
            with open(os.path.join(args.write_scenarios, f"{s.name}.json"), "w") as fh:
                fh.write(json.dumps(scenario_to_dict(s), sort_keys=True, indent=2) + "\n")
        print(f"{s.name}: {rep.verdict}")
        if rep.failures:
            worst = 3
    return worst


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="propcoh",
        description="Mod-p cohomology of discrete groups against their lower exponent-p central quotient towers.",
    )
    sub = ap.add_subparsers(dest="command", required=True)

    s = sub.add_parser("raag-cohomology", help="Salvetti cohomology of a right-angled Artin group")
    s.add_argument("--graph", required=True, help="graph JSON file")
    s.add_argument("--prime", required=True, type=_prime)
    s.add_argument("--max-degree", required=True, type=_nonneg)
    s.set_defaults(func=cmd_raag_cohomology)

    s = sub.add_parser("pquotient", help="lower exponent-p central quotient tower")
    s.add_argument("--presentation", required=True, help="presentation JSON file")
    s.add_argument("--prime", required=True, type=_prime)
    s.add_argument("--class", dest="class_", required=True, type=_positive)
    s.add_argument("--dump", help="write the tower as JSON to this file")
    s.set_defaults(func=cmd_pquotient)

    s = sub.add_parser("witness", help="find a p-quotient in which a RAAG element survives")
    s.add_argument("--graph", required=True)
    s.add_argument("--word", required=True, help='e.g. "a^-1 b^-1 a b"')
    s.add_argument("--prime", required=True, type=_prime)
    s.add_argument("--max-class", required=True, type=_positive)
    s.set_defaults(func=cmd_witness)

    s = sub.add_parser("tower-cohomology", help="per-level cohomology, inflation images and colimit estimate")
    s.add_argument("--presentation", required=True)
    s.add_argument("--prime", required=True, type=_prime)
    s.add_argument("--class", dest="class_", required=True, type=_positive)
    s.add_argument("--degree", required=True, type=_nonneg)
    s.set_defaults(func=cmd_tower_cohomology)

    s = sub.add_parser("ledger", help="check an exactness ledger")
    s.add_argument("--file", required=True)
    s.set_defaults(func=cmd_ledger)

    s = sub.add_parser("verify", help="run a scenario file")
    s.add_argument("--scenario", required=True)
    s.set_defaults(func=cmd_verify)

    s = sub.add_parser("builtin", help="run (or --show) a built-in example")
    s.add_argument("--name", required=True, choices=sorted(BUILTINS))
    s.add_argument("--prime", type=_prime, action="append")
    s.add_argument("--class", dest="class_", type=_positive, default=3)
    s.add_argument("--max-degree", type=_nonneg, default=2)
    s.add_argument("--show", action="store_true", help="print the presentation and exit")
    s.set_defaults(func=cmd_builtin)

    s = sub.add_parser("suite", help="run the bundled scenario suite, one JSON report per scenario")
    s.add_argument("--out", required=True, help="directory for the reports")
    s.add_argument("--write-scenarios", help="also write the scenario inputs to this directory")
    s.set_defaults(func=cmd_suite)

    for p in sub.choices.values():
        p.add_argument("--json", metavar="OUT", help="write a machine-readable report ('-' for stdout)")
    return ap


def main(argv=None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        return args.func(args)
    except TrivialWordError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (PresentationError, GraphError, ScenarioError, LedgerError, json.JSONDecodeError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except BudgetExceeded as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
