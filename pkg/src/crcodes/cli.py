"""Command-line front end.

Subcommands: eigenvalues, construct, verify, search, table1.  All numeric
output is exact integers; JSON key order is fixed so identical flags and
seed give byte-identical output.  Exit codes: 0 verified or SAT, 1
refuted or UNSAT, 2 budget exceeded, 64 usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from math import gcd
from pathlib import Path

import numpy as np

from . import bip, constructions as con, files, verify as vf
from .graphs import GraphSpec, parse_graph_spec, theta_ladder
from .orbits import GroupAction, orbit_system, quotient_matrix, singer_action
from .search import search_parameter_point
from .verify import VerificationError

EXIT_OK = 0
EXIT_REFUTED = 1
EXIT_BUDGET = 2
EXIT_USAGE = 64


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _json(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


# ----------------------------------------------------------------------
# eigenvalues
# ----------------------------------------------------------------------

def cmd_eigenvalues(args) -> int:
    spec = parse_graph_spec(args.graph)
    ladder = theta_ladder(spec)
    if args.format == "csv":
        lines = ["i,theta"] + [f"{i},{t}" for i, t in enumerate(ladder)]
        _emit("\n".join(lines) + "\n", args.out)
    else:
        _emit(_json({"graph": str(spec),
                     "valency": ladder[0],
                     "eigenvalues": ladder}), args.out)
    return EXIT_OK


# ----------------------------------------------------------------------
# construct
# ----------------------------------------------------------------------

def _design_from_flag(value: str, spec: GraphSpec | None):
    if value.startswith("@"):
        return files.read_design(value[1:])
    if value == "spread":
        if spec is None:
            raise ValueError("avoid needs --graph to infer the spread ambient")
        return con.desarguesian_2spread(spec.q, spec.n)
    if value == "sqs":
        if spec is None:
            raise ValueError("avoid needs --graph to infer the block length")
        m = spec.n.bit_length() - 1
        if 2 ** m != spec.n:
            raise ValueError(f"sqs needs n a power of two, got n={spec.n}")
        return con.extended_hamming_sqs(m)
    raise ValueError(f"unknown design {value!r}; use spread, sqs or @file")


def cmd_construct(args) -> int:
    kind = args.kind
    if kind == "spread":
        design = con.desarguesian_spread(args.q, args.n, args.d)
        _emit(files.design_to_text(design), args.out)
        return EXIT_OK
    if kind == "sqs":
        design = con.extended_hamming_sqs(args.m)
        _emit(files.design_to_text(design), args.out)
        return EXIT_OK
    spec = parse_graph_spec(args.graph, allow_unbalanced=True)
    if kind == "avoid":
        design = _design_from_flag(args.design, spec)
        code = con.avoid_code(spec, design)
    elif kind == "symplectic":
        code = con.symplectic_code(spec.n, spec.q)
    elif kind == "hyperplane":
        code = con.hyperplane_code(spec)
    elif kind == "hyperplane-point":
        code = con.hyperplane_point_code(spec)
    else:
        raise ValueError(f"unknown construction kind {kind!r}")
    _emit(files.code_to_text(code), args.out)
    return EXIT_OK


# ----------------------------------------------------------------------
# verify
# ----------------------------------------------------------------------

def cmd_verify(args) -> int:
    spec = parse_graph_spec(args.graph, allow_unbalanced=True)
    code = files.read_code(args.code)
    if code.spec != spec:
        raise ValueError(f"code file is for {code.spec}, not {spec}")
    report = vf.verify_report(spec, code)
    _emit(_json(report), args.out)
    return EXIT_OK if report["completely_regular"] else EXIT_REFUTED


# ----------------------------------------------------------------------
# search
# ----------------------------------------------------------------------

def _parse_group(spec: GraphSpec, text: str):
    if text == "identity":
        perm = np.arange(spec.vertex_count, dtype=np.int64)
        return GroupAction(spec, [perm], description="identity"), None
    if text.startswith("singer:"):
        e = int(text.split(":", 1)[1])
        return singer_action(spec, e), e
    raise ValueError(f"unknown group spec {text!r}; use singer:<e> or identity")


def _gamma_list(spec: GraphSpec, theta_value: int, only=None):
    m = spec.valency
    s = m - theta_value
    out = []
    for g1 in range(1, s // 2 + 1):
        rep = vf.size_and_integrality_report(spec, s - g1, g1)
        if rep["feasible"]:
            out.append(g1)
    if only is not None:
        out = [g for g in out if g in only]
    return out


def _point_worker(payload):
    """Solve one parameter point in a worker process."""
    (graph, group, beta0, gamma1, mode, max_nodes, max_seconds, seed,
     probes) = payload
    spec = parse_graph_spec(graph)
    action, exponent = _parse_group(spec, group)
    osys = orbit_system(action)
    B = quotient_matrix(spec, osys)
    return search_parameter_point(
        spec, osys, beta0, gamma1, B=B, mode=mode, max_nodes=max_nodes,
        max_seconds=max_seconds, seed=seed, probes=probes,
        singer_exponent=exponent, label=f"search-{group}-g{gamma1}")


def _run_points(spec, args, points, osys, B, exponent):
    if args.jobs > 1 and len(points) > 1:
        from concurrent.futures import ProcessPoolExecutor
        payloads = [(args.graph, args.group, b0, g1, args.mode,
                     args.max_nodes, args.max_seconds, args.seed,
                     not args.no_probes) for b0, g1 in points]
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            return list(pool.map(_point_worker, payloads))
    return [search_parameter_point(
        spec, osys, b0, g1, B=B, mode=args.mode,
        max_nodes=args.max_nodes, max_seconds=args.max_seconds,
        seed=args.seed, probes=not args.no_probes,
        singer_exponent=exponent, label=f"search-{args.group}-g{g1}")
        for b0, g1 in points]


def cmd_search(args) -> int:
    spec = parse_graph_spec(args.graph)
    action, exponent = _parse_group(spec, args.group)
    osys = orbit_system(action)
    B = quotient_matrix(spec, osys)
    m = spec.valency
    ladder = theta_ladder(spec)

    if args.gamma1 is not None and args.beta0 is not None:
        points = [(args.beta0, args.gamma1)]
    elif args.theta is not None:
        if args.theta not in ladder[1:]:
            raise ValueError(
                f"theta {args.theta} is not a nontrivial eigenvalue of {spec}")
        gammas = _gamma_list(spec, args.theta,
                             only=[args.gamma1] if args.gamma1 is not None else None)
        if args.gamma1 is not None and not gammas:
            raise ValueError(
                f"gamma1 = {args.gamma1} fails the integrality screen")
        points = [(m - args.theta - g1, g1) for g1 in gammas]
    else:
        raise ValueError("search needs --theta (sweep) or --beta0 with --gamma1")

    if args.format in ("opb", "lp"):
        outdir = Path(args.out) if args.out else None
        chunks = []
        for beta0, gamma1 in points:
            inst = bip.build_instance(spec, osys, beta0, gamma1, B=B)
            text = bip.export_opb(inst) if args.format == "opb" else bip.export_lp(inst)
            if outdir:
                outdir.mkdir(parents=True, exist_ok=True)
                (outdir / f"g{gamma1}.{args.format}").write_text(text, encoding="utf-8")
            else:
                chunks.append(text)
        if not outdir:
            sys.stdout.write("\n".join(chunks))
        return EXIT_OK

    outdir = Path(args.out) if args.out else None
    if outdir:
        outdir.mkdir(parents=True, exist_ok=True)
    verdicts = []
    worst = EXIT_OK
    outcomes = _run_points(spec, args, points, osys, B, exponent)
    for (beta0, gamma1), outcome in zip(points, outcomes):
        verdict = {
            "graph": str(spec),
            "group": args.group,
            "beta0": beta0,
            "gamma1": gamma1,
            "status": outcome.status,
            "stage": outcome.stage,
        }
        if args.mode == "count":
            verdict["count"] = outcome.count
        if outcome.status == bip.SAT:
            if outcome.code is not None:
                report = vf.verify_report(spec, outcome.code)
                verdict["lift_verified"] = report["completely_regular"]
                verdict["code_size"] = report["code_size"]
                if not report["completely_regular"]:
                    raise VerificationError(
                        f"lifted solution for gamma1={gamma1} failed "
                        "full-graph verification; solver is inconsistent")
                if outdir:
                    fname = outdir / f"g{gamma1}.code"
                    files.write_code(fname, outcome.code)
                    verdict["code_file"] = fname.name
        elif outcome.status == bip.UNSAT:
            verdict["note"] = ("no G-invariant code; not a nonexistence proof "
                               "for codes without this symmetry")
            worst = max(worst, EXIT_REFUTED)
        else:
            worst = max(worst, EXIT_BUDGET)
        verdicts.append(verdict)
        print(f"gamma1={gamma1}: {outcome.status} ({outcome.stage})",
              file=sys.stderr)
    if args.format == "csv":
        lines = ["gamma1,beta0,status,stage,code_size"]
        for v in verdicts:
            lines.append(f"{v['gamma1']},{v['beta0']},{v['status']},"
                         f"{v['stage']},{v.get('code_size', '')}")
        payload = "\n".join(lines) + "\n"
        name = "verdicts.csv"
    else:
        payload = _json({"graph": str(spec), "group": args.group,
                         "mode": args.mode, "verdicts": verdicts})
        name = "verdicts.json"
    if outdir:
        (outdir / name).write_text(payload, encoding="utf-8")
    else:
        sys.stdout.write(payload)
    return worst


# ----------------------------------------------------------------------
# table1
# ----------------------------------------------------------------------

def _known_rho1_codes(spec: GraphSpec):
    """Construct and verify the classical rho=1 codes of J_2(6,3)."""
    out = []
    codes = [
        con.hyperplane_code(spec),
        con.hyperplane_point_code(spec),
        con.symplectic_code(spec.n, spec.q),
        con.avoid_code(spec, con.desarguesian_2spread(spec.q, spec.n),
                       label="spread-avoid").complement("spread-line"),
    ]
    for code in codes:
        rep = vf.verify_report(spec, code)
        if rep["completely_regular"] and rep["rho"] == 1:
            out.append({"label": code.label,
                        "size": rep["code_size"],
                        "beta0": rep["beta"][0],
                        "gamma1": rep["gamma"][0],
                        "eigenvalue": rep["eigenvalues"][1],
                        "strength": rep["strength"]})
    return out


def cmd_table1(args) -> int:
    spec = parse_graph_spec(args.graph)
    ladder = theta_ladder(spec)
    m = spec.valency
    known = _known_rho1_codes(spec) if (spec.q, spec.n, spec.k) == (2, 6, 3) else []
    cached = {}
    if args.results:
        vfile = Path(args.results) / "verdicts.json"
        if vfile.exists():
            data = json.loads(vfile.read_text(encoding="utf-8"))
            for v in data.get("verdicts", []):
                if v.get("graph") == str(spec):
                    cached[(v["beta0"], v["gamma1"])] = v["status"]
    rows = []
    for i in range(1, spec.k + 1):
        th = ladder[i]
        s = m - th
        feas = _gamma_list(spec, th)
        mod = gcd(*feas) if len(feas) > 1 else (feas[0] if feas else 0)
        existing = []
        for entry in known:
            pair = {entry["gamma1"], entry["beta0"]}
            if entry["eigenvalue"] == th:
                g1 = entry["gamma1"] if entry["gamma1"] in feas else entry["beta0"]
                existing.append({"gamma1": g1, "label": entry["label"],
                                 "size": entry["size"]})
        sat = sorted({g1 for (b0, g1), st in cached.items()
                      if st == "SAT" and b0 + g1 == s})
        unsat = sorted({g1 for (b0, g1), st in cached.items()
                        if st == "UNSAT" and b0 + g1 == s})
        open_cases = [g for g in feas
                      if g not in sat and g not in unsat
                      and all(e["gamma1"] != g for e in existing)]
        row = {
            "eigenvalue": th,
            "strength": i - 1,
            "integer_condition": f"gamma1 mod {mod} = 0" if mod else "none",
            "feasible_gamma1": feas,
            "verified_constructions": existing,
            "search_sat": sat,
            "search_no_invariant_code": unsat,
            "open": open_cases,
        }
        if (spec.q, spec.n, spec.k, th) == (2, 6, 3, -7):
            row["note"] = ("codes of both feasible sizes exist in the "
                           "literature; their designs are not constructed here")
        rows.append(row)
    if args.format == "json":
        _emit(_json({"graph": str(spec), "rows": rows}), args.out)
        return EXIT_OK
    lines = [f"Completely regular codes in {spec} with covering radius 1",
             ""]
    for row in rows:
        lines.append(f"eigenvalue {row['eigenvalue']}  "
                     f"(strength {row['strength']}, {row['integer_condition']})")
        built = ", ".join(f"{e['gamma1']} [{e['label']}, size {e['size']}]"
                          for e in row["verified_constructions"]) or "-"
        lines.append(f"  verified constructions: {built}")
        if row["search_sat"]:
            lines.append(f"  search SAT: {', '.join(map(str, row['search_sat']))}")
        if row["search_no_invariant_code"]:
            lines.append("  no G-invariant code: "
                         f"{', '.join(map(str, row['search_no_invariant_code']))}")
        lines.append(f"  open: {', '.join(map(str, row['open'])) or '-'}")
        if "note" in row:
            lines.append(f"  note: {row['note']}")
        lines.append("")
    _emit("\n".join(lines), args.out)
    return EXIT_OK


# ----------------------------------------------------------------------
# entry point
# ----------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="crcodes",
        description="Completely regular codes in Johnson and Grassmann graphs")
    sub = p.add_subparsers(dest="command", required=True)

    pe = sub.add_parser("eigenvalues", help="eigenvalue ladder of a graph")
    pe.add_argument("--graph", required=True, help="j:<n>,<k> or jq:<q>,<n>,<k>")
    pe.add_argument("--format", choices=["json", "csv"], default="json")
    pe.add_argument("--out")
    pe.set_defaults(func=cmd_eigenvalues)

    pc = sub.add_parser("construct", help="build designs and codes")
    pc.add_argument("--kind", required=True,
                    choices=["spread", "sqs", "avoid", "symplectic",
                             "hyperplane", "hyperplane-point"])
    pc.add_argument("--graph", help="target graph for code constructions")
    pc.add_argument("--q", type=int, help="spread field size")
    pc.add_argument("--n", type=int, help="spread ambient dimension")
    pc.add_argument("--d", type=int, default=2, help="spread block dimension")
    pc.add_argument("--m", type=int, help="sqs: block length is 2^m")
    pc.add_argument("--design", default="spread",
                    help="avoid: spread, sqs, or @designfile")
    pc.add_argument("--out")
    pc.set_defaults(func=cmd_construct)

    pv = sub.add_parser("verify", help="verify complete regularity of a code file")
    pv.add_argument("--graph", required=True)
    pv.add_argument("--code", required=True)
    pv.add_argument("--out")
    pv.set_defaults(func=cmd_verify)

    ps = sub.add_parser("search", help="orbit-collapsed feasibility search")
    ps.add_argument("--graph", required=True)
    ps.add_argument("--group", required=True, help="singer:<e> or identity")
    ps.add_argument("--theta", type=int, help="eigenvalue row to sweep")
    ps.add_argument("--gamma1", type=int)
    ps.add_argument("--beta0", type=int)
    ps.add_argument("--mode", choices=["first", "all", "count"], default="first")
    ps.add_argument("--max-nodes", type=int)
    ps.add_argument("--max-seconds", type=float)
    ps.add_argument("--seed", type=int)
    ps.add_argument("--jobs", type=int, default=1,
                    help="parameter points solved in parallel")
    ps.add_argument("--no-probes", action="store_true",
                    help="pure depth-first search only")
    ps.add_argument("--format", choices=["json", "csv", "opb", "lp"],
                    default="json")
    ps.add_argument("--out", help="directory for verdicts and code files")
    ps.set_defaults(func=cmd_search)

    pt = sub.add_parser("table1", help="parameter table for rho=1 codes")
    pt.add_argument("--graph", default="jq:2,6,3")
    pt.add_argument("--results", help="directory with cached search verdicts")
    pt.add_argument("--format", choices=["text", "json"], default="text")
    pt.add_argument("--out")
    pt.set_defaults(func=cmd_table1)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else 0
    try:
        return args.func(args)
    except (ValueError, OSError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
