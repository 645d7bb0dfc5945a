"""Command line front end.

Exit codes: 0 success, 1 usage error, 2 mathematical degeneracy (singular or
otherwise special input), 3 internal invariant failure.
"""
from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Any, Sequence

SCHEMA = "quartic-conics/1"

EXIT_OK, EXIT_USAGE, EXIT_DEGENERATE, EXIT_INTERNAL = 0, 1, 2, 3


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # argparse would exit with 2
        raise UsageError(message)


def emit(doc: dict[str, Any]) -> str:
    return json.dumps(doc, sort_keys=True, indent=2)


def parse(text: str) -> dict[str, Any]:
    doc = json.loads(text)
    if doc.get("schema") != SCHEMA:
        raise ValueError(f"unknown schema {doc.get('schema')!r}")
    return doc


def _point(text: str | None):
    from .geometry import SurfaceParams

    if text is None:
        raise UsageError("--point is required")
    try:
        return SurfaceParams.parse(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(str(exc)) from exc


def _require_smooth(p) -> None:
    from .geometry import DegenerateError, singular_test

    v = singular_test(p)
    if not v.smooth:
        raise DegenerateError("singular member: " + ", ".join(f"{h}=0" for h in v.vanishing))


# --------------------------------------------------------------------------
# subcommands; each returns (exit code, document, text lines)
# --------------------------------------------------------------------------


def cmd_singular(args) -> tuple[int, dict, list[str]]:
    from .geometry import singular_test

    p = _point(args.point)
    v = singular_test(p)
    doc = {
        "point": list(p.coords),
        "smooth": v.smooth,
        "vanishing": list(v.vanishing),
        "values": {k: str(x) for k, x in v.values.items()},
    }
    text = [f"point {p}: " + ("smooth" if v.smooth else "singular: " + ", ".join(f"{h}=0" for h in v.vanishing))]
    return (EXIT_OK if v.smooth else EXIT_DEGENERATE), doc, text


def _conic_entry(rec, verified: bool) -> dict:
    from .conics import normalize_vector
    from .poly import restrict_to_plane

    plane = normalize_vector(rec.plane)
    restricted = restrict_to_plane(rec.quad, plane)
    monos = sorted(restricted.terms)
    coeffs = normalize_vector([restricted.terms[m] for m in monos])
    return {
        "node": rec.node,
        "gamma": rec.gamma,
        "branch": rec.branch,
        "plane": [str(c) for c in plane],
        "plane_numeric": [[complex(c.to_complex()).real, complex(c.to_complex()).imag] for c in plane],
        "conic_monomials": [list(m) for m in monos],
        "conic": [str(c) for c in coeffs],
        "verified": verified,
    }


def cmd_conics(args) -> tuple[int, dict, list[str]]:
    from .conics import all_conics, conics_for_node, verify_conic

    p = _point(args.point)
    _require_smooth(p)
    records = conics_for_node(p, args.node) if args.node else all_conics(p)
    entries = [_conic_entry(r, verify_conic(p, r)) for r in records]
    entries.sort(key=lambda e: (e["node"], -e["branch"], e["plane"]))
    ok = all(e["verified"] for e in entries)
    doc = {
        "point": list(p.coords),
        "node": args.node,
        "count": len(entries),
        "distinct_planes": len({(e["node"], tuple(e["plane"])) for e in entries}),
        "all_verified": ok,
        "conics": entries,
    }
    text = [f"point {p}: {len(entries)} conics on {doc['distinct_planes']} planes, all verified: {ok}"]
    for e in entries:
        text.append(f"  q{e['node']} {'+' if e['branch'] > 0 else '-'} gamma={e['gamma']:2d} "
                    f"plane=[{', '.join(f'{x:.6g}{y:+.6g}j' for x, y in e['plane_numeric'])}]")
    return (EXIT_OK if ok else EXIT_INTERNAL), doc, text


def cmd_galois(args) -> tuple[int, dict, list[str]]:
    from .galois import galois_group, render_class

    p = _point(args.point)
    _require_smooth(p)
    rep = galois_group(p)
    doc = {
        "point": list(p.coords),
        "classes": [{"expr": render_class(e), "value": str(v), "squarefree": str(c.value)}
                    for e, v, c in zip(rep.exprs, rep.values, rep.classes)],
        "rank": rep.rank,
        "group": rep.statement,
    }
    text = [f"point {p}: {rep.statement}"]
    text += [f"  {c['expr']:>22s}  squarefree part {c['squarefree']}" for c in doc["classes"]]
    return EXIT_OK, doc, text


def cmd_groups(args) -> tuple[int, dict, list[str]]:
    from .groups import PHI_GENERATORS, action_on_hyperplanes, action_on_nodes, omega_report

    rep = omega_report()
    doc = {
        "gamma_order": rep.gamma_order,
        "omega_order": rep.order,
        "gamma_normal": rep.gamma_normal,
        "quotient_order": rep.quotient_order,
        "trivial_centre": rep.trivial_centre,
        "actions": [
            {"phi": k, "hyperplanes": action_on_hyperplanes(g).cycle_string(), "nodes": action_on_nodes(g).cycle_string()}
            for k, g in enumerate(PHI_GENERATORS, start=1)
        ],
    }
    text = [
        f"|Gamma| = {rep.gamma_order}, |Omega| = {rep.order}, Gamma normal: {rep.gamma_normal}, "
        f"|Omega/Gamma| = {rep.quotient_order}, trivial centre: {rep.trivial_centre}"
    ]
    for a in doc["actions"]:
        text.append(f"  phi{a['phi']}: hyperplanes {a['hyperplanes']}  nodes {a['nodes']}")
    ok = rep.order == 11520 and rep.gamma_order == 16 and rep.gamma_normal
    return (EXIT_OK if ok else EXIT_INTERNAL), doc, text


def cmd_monodromy(args) -> tuple[int, dict, list[str]]:
    from . import monodromy as M

    doc: dict[str, Any] = {}
    text: list[str] = []
    ok = True
    plane = M.plane_monodromy_group()
    conic = M.conic_monodromy_group()
    doc["plane_group_order"] = plane.order
    doc["conic_group_order"] = conic.order
    text.append(f"plane group order {plane.order} on {plane.degree} labels; conic group order {conic.order} on {conic.degree} labels")
    ok &= plane.order == 512 and conic.order == 1024
    if args.verify_tables:
        bad = M.compare_derived(M.derive_table())
        doc["derived_mismatches"] = [list(b) for b in bad]
        text.append(f"derived table vs stored: {150 - len(bad)}/150 entries agree")
        ok &= not bad
    if args.point:
        p = _point(args.point)
        _require_smooth(p)
        col = M.stored_tables()[0].column(1)
        tracks = []
        for target in M.SIGMA_Q1:
            r = M.numeric_track_planes(p, target, args.steps)
            tracks.append({"target": target, "tracked": r.entry, "table": str(col[target]), "steps": r.steps})
        r = M.numeric_track_conics(p, M.DELTA_NAME, args.steps)
        tracks.append({"target": M.DELTA_NAME, "tracked": r.entry, "table": "-1", "steps": r.steps})
        doc["point"] = list(p.coords)
        doc["tracking"] = tracks
        for t in tracks:
            agree = t["tracked"] == t["table"]
            ok &= agree
            text.append(f"  loop {t['target']:>5s}: tracked {t['tracked'] or 'id':>10s}  table {t['table'] or 'id':>10s}  "
                        f"(finest {t['steps']} steps/segment) {'ok' if agree else 'MISMATCH'}")
    return (EXIT_OK if ok else EXIT_INTERNAL), doc, text


COMMANDS = {
    "singular": cmd_singular,
    "conics": cmd_conics,
    "galois": cmd_galois,
    "groups": cmd_groups,
    "monodromy": cmd_monodromy,
}


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="quartic-conics", description=__doc__.splitlines()[0])
    parser.add_argument("--format", choices=("text", "structured"), default="text")
    parser.add_argument("--seed", type=int, default=0, help="echoed in structured output")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    for name in ("singular", "conics", "galois"):
        sp = sub.add_parser(name)
        sp.add_argument("--point", required=True)
        if name == "conics":
            sp.add_argument("--node", type=int, choices=range(1, 11), metavar="1..10")
    sub.add_parser("groups")
    sp = sub.add_parser("monodromy")
    sp.add_argument("--point", help="also track the q1 loops numerically at this point")
    sp.add_argument("--steps", type=int, default=512)
    sp.add_argument("--verify-tables", action="store_true")
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    from .geometry import DegenerateError

    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command is None:
            raise UsageError("a subcommand is required")
        started = time.perf_counter()
        code, doc, text = COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DegenerateError as exc:
        print(f"degenerate input: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE
    except ArithmeticError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    if args.format == "structured":
        out = {"schema": SCHEMA, "command": args.command, "seed": args.seed, "exit_code": code,
               "elapsed_s": round(time.perf_counter() - started, 3), "result": doc}
        print(emit(out))
    else:
        print("\n".join(text))
    return code


if __name__ == "__main__":
    sys.exit(main())
