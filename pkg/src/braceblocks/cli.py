"""Command line interface.

Subcommands: block (build and verify a brace block), yb (build and
verify Yang-Baxter maps), graph (normalising graph of a pointed
carrier), catalog (list or describe builtin entries), verify (group
laws of a carrier). block and yb take a family argument: heisenberg,
power, trivial, or the name of a builtin catalog entry. Reports are
emitted as text or JSON and always echo the effective configuration,
the scan mode and the seed.

Exit codes: 0 all checks passed, 1 a verification failed, 2 bad input,
3 resource bound exceeded (or unexpected internal failure).
"""

from __future__ import annotations

import argparse
import json
import re
import sys
import time
from typing import Optional, Tuple

import numpy as np

from . import __version__
from ._scan import parse_mode
from .bilinear import trivial_bilinear
from .catalog import (
    BUILTIN_CATALOG,
    CATALOG_INFO,
    CatalogEntry,
    build_entry,
    class_two_power_block,
    heisenberg_block,
    semidirect_c9_c3,
    trivial_block,
)
from .errors import BoundExceededError, BraceBlockError, InputError
from .groups import (
    CayleyTableGroup,
    FiniteGroup,
    HeisenbergGroup,
    SymmetricGroup,
    UnitriangularGroup,
    cyclic_group,
    group_from_json,
)
from .normgraph import ENUMERATION_BOUND, enumerate_regular_subgroups, normalising_graph
from .operations import DotProvenance, GroupOperation, verify_group
from .quotients import QuotientEndo
from .yang_baxter import (
    deformation_pair_solutions,
    inverse_pair,
    single_deformation_solutions,
    solutions_from_brace,
    verify_yang_baxter,
)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2
EXIT_BOUND = 3


def parse_group_spec(spec: str, modulus: Optional[int]) -> FiniteGroup:
    """heisenberg, ut3/ut4 (with --modulus), c<n>, s<n>, c9xc3, cayley:PATH."""
    if spec == "heisenberg":
        return HeisenbergGroup(modulus or 3)
    m = re.fullmatch(r"ut(\d+)", spec)
    if m:
        return UnitriangularGroup(int(m.group(1)), modulus or 3)
    m = re.fullmatch(r"c(\d+)", spec)
    if m:
        return cyclic_group(int(m.group(1)))
    m = re.fullmatch(r"s(\d+)", spec)
    if m:
        return SymmetricGroup(int(m.group(1)))
    if spec == "c9xc3":
        return semidirect_c9_c3()
    if spec.startswith("cayley:"):
        path = spec.split(":", 1)[1]
        try:
            with open(path) as fh:
                data = json.load(fh)
        except OSError as ex:
            raise InputError(f"cannot read {path}: {ex}") from ex
        except json.JSONDecodeError as ex:
            raise InputError(f"{path} is not valid JSON: {ex}") from ex
        if "backend" in data:
            return group_from_json(data)
        if "table" in data:
            return CayleyTableGroup(
                np.asarray(data["table"], dtype=np.int32),
                elements=[tuple(t) if isinstance(t, list) else t for t in data["elements"]]
                if "elements" in data
                else None,
                label=data.get("label"),
            )
        raise InputError(f"{path} has neither 'backend' nor 'table'")
    raise InputError(f"unknown group spec {spec!r}")


def _entry_for(args) -> CatalogEntry:
    powers = None
    if args.powers:
        powers = [int(x) for x in args.powers.split(",")]
    family = getattr(args, "family", None)
    if family:
        if family == "heisenberg":
            return heisenberg_block(args.modulus or 3, xs=powers)
        if family == "power":
            if not args.group:
                raise InputError("family 'power' needs --group SPEC")
            return class_two_power_block(
                parse_group_spec(args.group, args.modulus), ns=powers
            )
        if family == "trivial":
            if not args.group:
                raise InputError("family 'trivial' needs --group SPEC")
            return trivial_block(parse_group_spec(args.group, args.modulus))
        if family in BUILTIN_CATALOG:
            return build_entry(family)
        raise InputError(
            f"unknown family {family!r}; choose heisenberg, power, trivial "
            "or a catalog entry name"
        )
    if args.catalog:
        return build_entry(args.catalog)
    if not args.group:
        raise InputError("need a family argument, --catalog NAME or --group SPEC")
    G = parse_group_spec(args.group, args.modulus)
    if isinstance(G, HeisenbergGroup):
        return heisenberg_block(G.modulus, xs=powers)
    return class_two_power_block(G, ns=powers)


def _apply_corruption(entry: CatalogEntry, corrupt: str) -> None:
    """Overwrite one table cell to demonstrate the failure path end to
    end. Accepts an operation index (a default cell is bumped) or an
    explicit g,h,v triple aimed at the first deformed operation."""
    try:
        parts = [int(x) for x in corrupt.split(",")]
    except ValueError as ex:
        raise InputError(f"--corrupt wants IDX or g,h,v, got {corrupt!r}") from ex
    ops = entry.operations
    if len(parts) == 1:
        idx = parts[0]
        if not 0 <= idx < len(ops):
            raise InputError(f"--corrupt index must lie in 0..{len(ops) - 1}")
        op = ops[idx]
        n = op.base.order
        if n < 2:
            raise InputError("carrier too small to corrupt")
        table = op.table().copy()
        # cell (0, 1) sits in the identity row, so the mutation is
        # always caught by the identity check
        g, h = 0, 1
        v = int((table[g, h] + 1) % n)
    elif len(parts) == 3:
        g, h, v = parts
        if len(ops) < 2:
            raise InputError("nothing to corrupt: the entry has no deformed operation")
        idx = 1
        op = ops[idx]
        n = op.base.order
        if not (0 <= g < n and 0 <= h < n and 0 <= v < n):
            raise InputError(f"--corrupt indices must lie in 0..{n - 1}")
        table = op.table().copy()
        if table[g, h] == v:
            raise InputError(
                f"--corrupt {corrupt} is a no-op: cell ({g},{h}) already holds {v}"
            )
    else:
        raise InputError(f"--corrupt wants IDX or g,h,v, got {corrupt!r}")
    table[g, h] = v
    ops[idx] = GroupOperation(
        op.base, None, op.provenance, label=op.label + "+corrupt", table=table
    )


def cmd_block(args) -> Tuple[bool, dict]:
    entry = _entry_for(args)
    if args.corrupt:
        _apply_corruption(entry, args.corrupt)
    report = entry.verify(mode=args.mode, seed=args.seed, count=args.count)
    return report.ok, {"entry": entry.describe(), "block": report.to_json()}


def cmd_yb(args) -> Tuple[bool, dict]:
    entry = _entry_for(args)
    if not entry.steps:
        raise InputError("the entry has no deformation step to build maps from")
    step = args.step if args.step is not None else 1
    which = args.which or "corollary"
    phi_step = args.phi_step or 0
    if not 1 <= step <= len(entry.steps):
        raise InputError(f"--step must lie in 1..{len(entry.steps)}")
    psi, alpha = entry.steps[step - 1]
    if which == "generic":
        if step >= len(entry.operations):
            raise InputError("the entry has no operation for that step")
        r, rp = solutions_from_brace(
            entry.operations[0], entry.operations[step], mode=args.mode
        )
        maps = {"r": r, "r_prime": rp}
    elif which == "theorem":
        if phi_step:
            if not 1 <= phi_step <= len(entry.steps):
                raise InputError(f"--phi-step must lie in 0..{len(entry.steps)}")
            phi, beta = entry.steps[phi_step - 1]
        else:
            phi = QuotientEndo.zero(entry.pair)
            beta = trivial_bilinear(entry.pair)
        r, rp = deformation_pair_solutions(entry.pair, psi, alpha, phi, beta)
        maps = {"r": r, "r_prime": rp}
    else:
        maps = single_deformation_solutions(entry.pair, psi, alpha)
    selected = [w.strip() for w in args.maps.split(",")] if args.maps else None
    kept = {}
    ok = True
    for name, ymap in maps.items():
        if selected and name not in selected:
            continue
        rep = verify_yang_baxter(ymap, mode=args.mode, seed=args.seed, count=args.count)
        ok = ok and rep.ok
        kept[name] = (ymap, rep)
    if not kept:
        raise InputError(f"--maps selected none of {sorted(maps)}")
    reports = {}
    for name, (ymap, rep) in kept.items():
        reports[name] = rep.to_json()
        if args.certificate:
            reports[name]["map"] = ymap.to_json()
    results = {
        "entry": entry.describe(),
        "step": step,
        "which": which,
        "maps": reports,
    }
    if args.certificate:
        inverse_checks = {}
        for a, b in (("r", "r_prime"), ("r_tilde", "r_tilde_prime")):
            if a in kept and b in kept:
                inverse_checks[f"{a}|{b}"] = inverse_pair(kept[a][0], kept[b][0])
        if inverse_checks:
            results["inverse_pairs"] = inverse_checks
            ok = ok and all(inverse_checks.values())
    return ok, results


def cmd_graph(args) -> Tuple[bool, dict]:
    n = args.points
    bound = ENUMERATION_BOUND
    warning = None
    if args.force and n > bound:
        bound = n
        warning = (
            f"enumeration bound lifted to {n}; the search space grows "
            "superexponentially, expect a long run"
        )
        print(f"warning: {warning}", file=sys.stderr)
    if args.count_only:
        subs = enumerate_regular_subgroups(n, bound=bound)
        data = {"points": n, "vertex_count": len(subs)}
    else:
        graph = normalising_graph(n, bound=bound)
        data = graph.to_json(include_tables=args.tables)
        if args.classes:
            data["classes"] = graph.conjugacy_classes()
        if args.export == "dot":
            data["dot"] = graph.to_dot()
    if warning:
        data["warning"] = warning
    return True, data


def cmd_catalog(args) -> Tuple[bool, dict]:
    if args.name:
        entry = build_entry(args.name)
        return True, {
            "entry": entry.describe(),
            "info": CATALOG_INFO.get(args.name, ""),
        }
    return True, {
        "entries": [
            {"name": name, "info": CATALOG_INFO.get(name, "")}
            for name in sorted(BUILTIN_CATALOG)
        ]
    }


def cmd_verify(args) -> Tuple[bool, dict]:
    if not args.group:
        raise InputError("need --group SPEC")
    if args.group.startswith("cayley:"):
        # load without construction-time validation so failures show up
        # in the report (and exit code 1) instead of as input errors
        path = args.group.split(":", 1)[1]
        try:
            with open(path) as fh:
                data = json.load(fh)
        except OSError as ex:
            raise InputError(f"cannot read {path}: {ex}") from ex
        except json.JSONDecodeError as ex:
            raise InputError(f"{path} is not valid JSON: {ex}") from ex
        table = np.asarray(data.get("table"), dtype=np.int32)
        if table.ndim != 2 or table.shape[0] != table.shape[1]:
            raise InputError("table must be square")
        G = CayleyTableGroup(table, validate=False, label=data.get("label"))
    else:
        G = parse_group_spec(args.group, args.modulus)
    op = GroupOperation(G, G.mul_indices, DotProvenance(), "dot")
    report = verify_group(op, mode=args.mode, seed=args.seed, count=args.count)
    return report.ok, {"group": G.label, "order": G.order, "report": report.to_json()}


def _render_text(command: str, ok: bool, results: dict) -> str:
    lines = [f"braceblocks {command}"]

    def walk(obj, indent):
        pad = "  " * indent
        if isinstance(obj, dict):
            for k, v in obj.items():
                if isinstance(v, (dict, list)) and v and not _short(v):
                    lines.append(f"{pad}{k}:")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}{k}: {_fmt(v)}")
        elif isinstance(obj, list):
            for v in obj:
                if isinstance(v, (dict, list)) and v and not _short(v):
                    lines.append(f"{pad}-")
                    walk(v, indent + 1)
                else:
                    lines.append(f"{pad}- {_fmt(v)}")

    def _short(v):
        return isinstance(v, list) and len(v) <= 8 and all(
            not isinstance(x, (dict, list)) for x in v
        )

    def _fmt(v):
        return json.dumps(v) if isinstance(v, (list, dict)) else str(v)

    walk(results, 1)
    lines.append(f"RESULT {'ok' if ok else 'FAILED'}")
    return "\n".join(lines)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="braceblocks",
        description="build and verify brace blocks, Yang-Baxter maps and "
        "normalising graphs on finite groups",
    )
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, group_source=True):
        p.add_argument("--mode", default=None,
                       help="auto | exhaustive | sampled[:seed[:count]]")
        p.add_argument("--seed", type=int, default=None)
        p.add_argument("--count", type=int, default=None)
        p.add_argument("--export", choices=["text", "json", "dot"], default=None)
        p.add_argument("--output", default=None, help="write the report to a file")
        p.add_argument("--config", default=None,
                       help="JSON file with defaults; explicit flags win")
        if group_source:
            p.add_argument("--catalog", default=None, help="builtin entry name")
            p.add_argument("--group", default=None,
                           help="heisenberg | ut<m> | c<n> | s<n> | c9xc3 | cayley:PATH")
            p.add_argument("--modulus", type=int, default=None)
            p.add_argument("--powers", default=None,
                           help="comma separated deformation indices")

    family_help = "heisenberg | power | trivial | a catalog entry name"

    p_block = sub.add_parser("block", help="build a brace block and verify it")
    p_block.add_argument("family", nargs="?", default=None, help=family_help)
    common(p_block)
    p_block.add_argument("--corrupt", default=None, metavar="IDX|g,h,v",
                         help="overwrite one table cell to exercise the failure path")

    p_yb = sub.add_parser("yb", help="build Yang-Baxter maps and verify them")
    p_yb.add_argument("family", nargs="?", default=None, help=family_help)
    common(p_yb)
    p_yb.add_argument("--step", type=int, default=None,
                      help="which deformation step to use (1-based, default 1)")
    p_yb.add_argument("--which", choices=["corollary", "theorem", "generic"],
                      default=None,
                      help="closed forms for one deformation (the default), for "
                      "a pair of deformations, or the generic brace construction")
    p_yb.add_argument("--phi-step", dest="phi_step", type=int, default=None,
                      help="second deformation step for --which theorem "
                      "(0 = trivial data)")
    p_yb.add_argument("--maps", default=None,
                      help="comma separated subset of r,r_prime,r_tilde,r_tilde_prime")
    p_yb.add_argument("--certificate", action="store_true",
                      help="include the map tables and inverse-pair checks")

    p_graph = sub.add_parser("graph", help="normalising graph of a pointed carrier")
    common(p_graph, group_source=False)
    p_graph.add_argument("--order", "--points", dest="points", type=int,
                         required=True, help="carrier size")
    p_graph.add_argument("--count-only", action="store_true",
                         help="only count the regular subgroups")
    p_graph.add_argument("--classes", action="store_true",
                         help="group vertices into relabeling classes")
    p_graph.add_argument("--tables", action="store_true",
                         help="include the vertex tables in the report")
    p_graph.add_argument("--force", action="store_true",
                         help="lift the enumeration bound for larger carriers")

    p_cat = sub.add_parser("catalog", help="list or describe builtin entries")
    common(p_cat, group_source=False)
    p_cat.add_argument("--name", default=None)

    p_ver = sub.add_parser("verify", help="verify the group laws of a carrier")
    common(p_ver)

    return parser


_CONFIG_KEYS = (
    "mode", "seed", "count", "export", "output", "family", "catalog",
    "group", "modulus", "powers", "step", "which", "phi_step", "maps",
    "certificate", "points", "name", "corrupt", "force",
)


def _merge_config(args: argparse.Namespace) -> dict:
    """Fill unset args from the --config JSON file; flags win."""
    effective = {}
    if args.config:
        try:
            with open(args.config) as fh:
                loaded = json.load(fh)
        except OSError as ex:
            raise InputError(f"cannot read config {args.config}: {ex}") from ex
        except json.JSONDecodeError as ex:
            raise InputError(f"config {args.config} is not valid JSON: {ex}") from ex
        if not isinstance(loaded, dict):
            raise InputError("config file must hold a JSON object")
        for key, value in loaded.items():
            attr = key.replace("-", "_")
            if attr not in _CONFIG_KEYS:
                raise InputError(f"unknown config key {key!r}")
            if getattr(args, attr, None) in (None, False):
                setattr(args, attr, value)
    for key in _CONFIG_KEYS:
        if hasattr(args, key):
            effective[key] = getattr(args, key)
    return effective


def main(argv: Optional[list] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    started = time.time()
    report = {
        "tool": "braceblocks",
        "version": __version__,
        "command": args.command,
    }
    try:
        report["config"] = _merge_config(args)
        if args.mode is None:
            args.mode = "auto"
        parse_mode(args.mode)
        handler = {
            "block": cmd_block,
            "yb": cmd_yb,
            "graph": cmd_graph,
            "catalog": cmd_catalog,
            "verify": cmd_verify,
        }[args.command]
        ok, results = handler(args)
    except BoundExceededError as ex:
        report["error"] = {"code": ex.code, "message": str(ex)}
        report["wall_time_s"] = round(time.time() - started, 3)
        _emit(args, report, json_only=True)
        return EXIT_BOUND
    except BraceBlockError as ex:
        report["error"] = {"code": ex.code, "message": str(ex)}
        report["wall_time_s"] = round(time.time() - started, 3)
        _emit(args, report, json_only=True)
        return EXIT_INPUT
    except ValueError as ex:
        report["error"] = {"code": "bad-value", "message": str(ex)}
        report["wall_time_s"] = round(time.time() - started, 3)
        _emit(args, report, json_only=True)
        return EXIT_INPUT
    except Exception as ex:  # pragma: no cover - defensive
        report["error"] = {"code": "internal", "message": f"{type(ex).__name__}: {ex}"}
        report["wall_time_s"] = round(time.time() - started, 3)
        _emit(args, report, json_only=True)
        return EXIT_BOUND
    report["ok"] = ok
    report["results"] = results
    report["wall_time_s"] = round(time.time() - started, 3)
    _emit(args, report)
    return EXIT_OK if ok else EXIT_FAILED


def _emit(args, report: dict, json_only: bool = False) -> None:
    export = getattr(args, "export", None) or "text"
    if export == "dot" and not json_only:
        text = report.get("results", {}).get("dot") or json.dumps(report, indent=2)
    elif export == "json" or json_only:
        text = json.dumps(report, indent=2)
    else:
        text = _render_text(
            report["command"], report.get("ok", False), report.get("results", {})
        )
    output = getattr(args, "output", None)
    if output:
        with open(output, "w") as fh:
            fh.write(text + "\n")
    else:
        print(text)


if __name__ == "__main__":
    sys.exit(main())
