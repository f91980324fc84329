"""Command-line entry point: ``ramsey-forge {hairy,objective,search,perturb,bounds}``.

Graph arguments accept a graph6 string, ``@path`` (graph6 or ``u v`` edge
list), or a built-in name: ``K<n>``, ``C<n>``, ``P<n>``, ``E<n>`` (empty),
``petersen``, ``turan:n:r`` and ``hairy:BASE:i,j,k``.

Exit codes: 0 success, 2 parse error, 3 invalid argument, 4 size violation,
5 budget cap.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import re
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .chromatic import (
    ChromaticError,
    count_proper_colourings,
    critical_edges,
    nearly_proper_bound,
    nearly_proper_count,
    tomescu_bound,
)
from .graph import (
    Graph,
    Graph6Error,
    GraphError,
    HairySpec,
    complete_graph,
    component_count,
    cycle_graph,
    empty_graph,
    is_connected,
    make_hairy,
    parse_edge_list,
    parse_graph6,
    path_graph,
    petersen_graph,
    turan_graph,
    write_graph6,
)
from .objective import SizeError, m_objective, make_context, ratio_str
from .perturbation import DEFAULT_GRID, PerturbationError, sweep
from .search import DEFAULT_MAX_N, BudgetError, exhaustive_minimize, local_search

SCHEMA = "ramsey-forge/1"

EXIT_PARSE = 2
EXIT_INVALID = 3
EXIT_SIZE = 4
EXIT_BUDGET = 5

log = logging.getLogger("ramsey_forge")


class CliError(Exception):
    def __init__(self, message: str, code: int) -> None:
        super().__init__(message)
        self.code = code


# -- graph arguments -----------------------------------------------------------------

_FAMILY = re.compile(r"^([KCPE])(\d+)$")


def resolve_graph(text: str) -> Graph:
    """Turn a command-line graph argument into a :class:`Graph`."""
    text = text.strip()
    try:
        if text.startswith("@"):
            content = Path(text[1:]).read_text()
            lines = [ln for ln in content.splitlines() if ln.strip() and not ln.startswith("#")]
            if lines and re.match(r"^\s*\d+\s+\d+\s*$", lines[0]):
                return parse_edge_list(content)
            return parse_graph6(lines[0] if lines else "")
        if text.startswith("hairy:"):
            base, _, idx = text[len("hairy:"):].rpartition(":")
            attach = tuple(int(i) for i in idx.split(",") if i.strip())
            try:
                return make_hairy(HairySpec(resolve_graph(base), attach))
            except GraphError as exc:
                raise CliError(str(exc), EXIT_INVALID) from exc
        if text.startswith("turan:"):
            _, n, r = text.split(":")
            try:
                return turan_graph(int(n), int(r))
            except GraphError as exc:
                raise CliError(str(exc), EXIT_INVALID) from exc
        if text.lower() == "petersen":
            return petersen_graph()
        m = _FAMILY.match(text)
        if m:
            kind, n = m.group(1), int(m.group(2))
            return {"K": complete_graph, "C": cycle_graph, "P": path_graph, "E": empty_graph}[kind](n)
        return parse_graph6(text)
    except CliError:
        raise
    except (Graph6Error, GraphError, ValueError, OSError) as exc:
        raise CliError(f"cannot parse graph {text!r}: {exc}", EXIT_PARSE) from exc


def parse_grid(text: str) -> list[Fraction]:
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(f"cannot parse grid {text!r}: {exc}", EXIT_PARSE) from exc


# -- config -----------------------------------------------------------------------------

DEFAULTS = {
    "seed": 0,
    "mode": "exhaustive",
    "restarts": 16,
    "max_steps": 1000,
    "max_n_override": None,
    "grid": None,
    "out": None,
    "minimizers_out": None,
}


def resolve_config(args: argparse.Namespace) -> dict:
    """Defaults, then the JSON config file, then explicitly given flags."""
    cfg = dict(DEFAULTS)
    cfg["jobs"] = int(os.environ.get("RAMSEY_FORGE_JOBS", "1"))
    if args.config:
        try:
            cfg.update(json.loads(Path(args.config).read_text()))
        except (OSError, json.JSONDecodeError) as exc:
            raise CliError(f"cannot read config {args.config}: {exc}", EXIT_PARSE) from exc
    for key, value in vars(args).items():
        if key in ("config", "func", "command") or value is None:
            continue
        cfg[key] = value
    return cfg


def _emit(payload: dict, cfg: dict) -> None:
    # worker count never changes results, so it stays out of the echo
    echo = {k: v for k, v in cfg.items() if k != "jobs"}
    doc = {"schema": SCHEMA, "config": echo, "metadata": {"version": __version__}}
    doc.update(payload)
    print(json.dumps(doc, indent=2, sort_keys=True))


def _require(cfg: dict, *keys: str) -> None:
    missing = [k for k in keys if cfg.get(k) is None]
    if missing:
        raise CliError(f"missing required option(s): {', '.join('--' + k.replace('_', '-') for k in missing)}", EXIT_INVALID)


# -- commands ---------------------------------------------------------------------------

def cmd_hairy(cfg: dict) -> int:
    _require(cfg, "base")
    base = resolve_graph(cfg["base"])
    attach_text = cfg.get("attach") or ""
    try:
        attach = tuple(int(i) for i in str(attach_text).split(",") if i.strip())
    except ValueError as exc:
        raise CliError(f"cannot parse attachment list {attach_text!r}", EXIT_PARSE) from exc
    try:
        h = make_hairy(HairySpec(base, attach))
    except GraphError as exc:
        raise CliError(str(exc), EXIT_INVALID) from exc
    prof = critical_edges(h)
    g6 = write_graph6(h)
    if cfg.get("out"):
        Path(cfg["out"]).write_text(g6 + "\n")
    print(f"v={h.n} e={h.num_edges} chi={prof.chi} k={component_count(h)} crit={prof.crit}")
    if not cfg.get("out"):
        print(g6)
    return 0


def _context(cfg: dict):
    _require(cfg, "h1", "h2")
    h1, h2 = resolve_graph(cfg["h1"]), resolve_graph(cfg["h2"])
    try:
        return make_context(h1, h2)
    except GraphError as exc:
        raise CliError(str(exc), EXIT_INVALID) from exc


def cmd_objective(cfg: dict) -> int:
    ctx = _context(cfg)
    _require(cfg, "g")
    g = resolve_graph(cfg["g"])
    value = m_objective(ctx, g)
    _emit({"objective": value.to_json(), "context": ctx.summary(), "value": ratio_str(value.value)}, cfg)
    return 0


def cmd_search(cfg: dict) -> int:
    ctx = _context(cfg)
    _require(cfg, "n")
    n, jobs = int(cfg["n"]), int(cfg["jobs"])
    if cfg["mode"] == "exhaustive":
        max_n = cfg["max_n_override"] if cfg["max_n_override"] is not None else DEFAULT_MAX_N
        report = exhaustive_minimize(ctx, n, jobs=jobs, max_n=int(max_n))
    elif cfg["mode"] == "local":
        report = local_search(
            ctx, n, seed=int(cfg["seed"]), restarts=int(cfg["restarts"]),
            max_steps=int(cfg["max_steps"]), jobs=jobs,
        )
    else:
        raise CliError(f"unknown mode {cfg['mode']!r}", EXIT_INVALID)
    if cfg.get("minimizers_out"):
        Path(cfg["minimizers_out"]).write_text("".join(s + "\n" for s in report.minimizer_graph6()))
    _emit({"report": report.to_json(), "context": ctx.summary()}, cfg)
    return 0


def cmd_perturb(cfg: dict) -> int:
    ctx = _context(cfg)
    _require(cfg, "n")
    grid = parse_grid(cfg["grid"]) if cfg.get("grid") else list(DEFAULT_GRID)
    report = sweep(ctx, int(cfg["n"]), grid, jobs=int(cfg["jobs"]))
    if cfg.get("out"):
        Path(cfg["out"]).write_text(report.to_csv())
    _emit({"report": report.to_json(), "context": ctx.summary()}, cfg)
    return 0


def cmd_bounds(cfg: dict) -> int:
    _require(cfg, "h")
    h = resolve_graph(cfg["h"])
    prof = critical_edges(h)
    chi = prof.chi
    warnings: list[str] = []
    out: dict = {
        "v": h.n, "e": h.num_edges, "chi": chi, "k": component_count(h), "crit": prof.crit,
        "connected": is_connected(h),
        "proper_colourings": str(count_proper_colourings(h, chi)),
        "tomescu_bound": str(tomescu_bound(chi, h.n)),
    }
    # the bound holds for connected graphs with chi != 3; odd cycles exceed it at chi == 3
    out["tomescu_exceeded"] = count_proper_colourings(h, chi) > tomescu_bound(chi, h.n)
    out["tomescu_applies"] = chi != 3 and is_connected(h)
    if chi >= 2:
        out["nearly_proper_count"] = str(nearly_proper_count(h))
    if chi >= 3:
        out["nearly_proper_bound"] = str(nearly_proper_bound(h))
        out["nearly_proper_branch"] = "chi4" if chi == 4 else "general"
    else:
        warnings.append(f"chi={chi} < 3: nearly proper bound omitted")
    for w in warnings:
        log.warning(w)
    _emit({"bounds": out, "warnings": warnings}, cfg)
    return 0


# -- parser -----------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="ramsey-forge", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=__version__)
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--config", help="JSON file of option values; flags override it")
        sp.add_argument("--jobs", type=int, help="worker processes (default $RAMSEY_FORGE_JOBS or 1)")
        sp.add_argument("--seed", type=int)

    sp = sub.add_parser("hairy", help="add pendant edges to a base graph")
    sp.add_argument("--base")
    sp.add_argument("--attach", help="comma-separated base vertex indices")
    sp.add_argument("--out", help="write graph6 here")
    common(sp)
    sp.set_defaults(func=cmd_hairy)

    sp = sub.add_parser("objective", help="evaluate the weighted objective at a graph")
    for flag in ("--h1", "--h2", "--g"):
        sp.add_argument(flag)
    common(sp)
    sp.set_defaults(func=cmd_objective)

    sp = sub.add_parser("search", help="minimise the objective over n-vertex graphs")
    sp.add_argument("--h1")
    sp.add_argument("--h2")
    sp.add_argument("--n", type=int)
    sp.add_argument("--mode", choices=("exhaustive", "local"))
    sp.add_argument("--restarts", type=int)
    sp.add_argument("--max-steps", type=int)
    sp.add_argument("--max-n-override", type=int, help="raise the exhaustive cap (at most 8)")
    sp.add_argument("--minimizers-out", help="write minimizers as graph6, one per line")
    common(sp)
    sp.set_defaults(func=cmd_search)

    sp = sub.add_parser("perturb", help="sweep the thinned Turán construction over eps")
    sp.add_argument("--h1")
    sp.add_argument("--h2")
    sp.add_argument("--n", type=int)
    sp.add_argument("--grid", help="comma-separated eps values, e.g. 0,1/100,1/50")
    sp.add_argument("--out", help="CSV file for the sweep")
    common(sp)
    sp.set_defaults(func=cmd_perturb)

    sp = sub.add_parser("bounds", help="colouring counts against their bounds")
    sp.add_argument("--h")
    common(sp)
    sp.set_defaults(func=cmd_bounds)
    return p


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr, format="%(levelname)s: %(message)s")
    args = build_parser().parse_args(argv)
    try:
        cfg = resolve_config(args)
        return args.func(cfg)
    except CliError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.code
    except BudgetError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except SizeError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_SIZE
    except (PerturbationError, ChromaticError, GraphError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
