"""Command-line entry point: ``unihyper <command> [flags]``.

Every command prints a report (``key = value`` lines, or one JSON object with
``--json``) and, with ``--out PREFIX``, writes ``PREFIX.report`` plus the
command's main artifact. Outputs depend only on inputs, flags and seed.

Exit codes: 0 success, 1 verification failed (witness reported), 2 budget
exhausted, 3 usage or parse error.
"""

from __future__ import annotations

import argparse
import json
import statistics
import sys
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Any, Sequence

import numpy as np

from . import budgets as _budgets
from .constructions import (AAParams, ExpanderSpec, LayeredHypergraph, alon_asodi_graph, build_universal,
                            clique_bound, estimate_triangles, exact_triangles, expected_cliques,
                            pair_density, pair_probability)
from .core import (FamilyParams, Hypergraph, as_graph, matching_plus_path, path_graph,
                   perfect_matching_pattern)
from .decomposition import p3_hitting_decomposition, two_cover_decompose, verify_krl
from .errors import BudgetExceeded, GenerationFailure, OpenCase, SearchExhausted
from .hitting import expand, hit_matching_path, hit_perfect_matching
from .io import (ParseError, format_decomp, format_hit, format_hypergraph, format_p3, format_report,
                 format_verify_report, parse_decomp, parse_hit, parse_hypergraph, parse_p3, parse_report)
from .verify import scaling_fit, verify_universal

EXIT_OK, EXIT_FAILED, EXIT_BUDGET, EXIT_USAGE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    command: str
    seed: int = 0
    inputs: tuple[str, ...] = ()
    out: str | None = None
    as_json: bool = False
    budgets: _budgets.Budgets = field(default_factory=_budgets.default_budgets)
    time_limit: float | None = None
    params: dict[str, Any] = field(default_factory=dict)

    def __post_init__(self) -> None:
        bad = [k for k, v in vars(self.budgets).items() if v <= 0]
        if bad:
            raise UsageError(f"budgets must be positive: {', '.join(bad)}")
        if self.time_limit is not None and self.time_limit <= 0:
            raise UsageError("--time-limit must be positive")


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------

def parse_family(s: str) -> FamilyParams:
    """``r=2,n=8,delta=2`` -> FamilyParams."""
    vals = {}
    for part in s.split(","):
        if "=" not in part:
            raise UsageError(f"bad family spec {s!r}; expected r=..,n=..,delta=..")
        k, v = part.split("=", 1)
        try:
            vals[k.strip()] = int(v)
        except ValueError:
            raise UsageError(f"bad family spec {s!r}: {v.strip()!r} is not an integer") from None
    try:
        return FamilyParams(vals["r"], vals["n"], vals["delta"])
    except KeyError as ex:
        raise UsageError(f"family spec missing {ex.args[0]!r}") from None


def _int_list(s: str) -> list[int]:
    try:
        return [int(x) for x in s.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"expected comma separated integers, got {s!r}") from None


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as ex:
        raise UsageError(f"cannot read {path}: {ex.strerror}") from None


def _surrogate(name: str) -> str | ExpanderSpec:
    # "rr:m,d" asks for a spectrally checked random d-regular graph on m vertices
    if name.startswith("rr:"):
        m, d = _int_list(name[3:])
        return ExpanderSpec(m, d, lambda_bound=2 * (d - 1) ** 0.5 + 0.5)
    return name


def _emit(cfg: RunConfig, report: dict[str, Any], artifacts: dict[str, str] | None = None,
          report_text: str | None = None) -> None:
    text = report_text if report_text is not None else format_report(report)
    if cfg.out:
        base = Path(cfg.out)
        base.parent.mkdir(parents=True, exist_ok=True)
        for suffix, body in (artifacts or {}).items():
            Path(str(base) + suffix).write_text(body)
        Path(str(base) + ".report").write_text(text)
    if cfg.as_json:
        sys.stdout.write(json.dumps(report, sort_keys=True) + "\n")
    else:
        sys.stdout.write(text)


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------

def cmd_construct(cfg: RunConfig) -> int:
    a = cfg.params
    p = FamilyParams(a["r"], a["n"], a["delta"])
    h, rep = build_universal(p, a["strategy"], _surrogate(a["surrogate"]), cfg.seed, a.get("r_prime"))
    report = rep.as_dict()
    artifacts = {}
    if isinstance(h, LayeredHypergraph):
        count = rep.edges
        if count is not None and count <= cfg.budgets.rsets:
            artifacts[".hg"] = format_hypergraph(h.materialize(cfg.budgets.rsets))
        report["hypergraph_written"] = ".hg" in artifacts
    else:
        artifacts[".hg"] = format_hypergraph(h)
        report["hypergraph_written"] = True
    _emit(cfg, report, artifacts)
    return EXIT_OK


def cmd_verify(cfg: RunConfig) -> int:
    a = cfg.params
    p = parse_family(a["family"])
    host = parse_hypergraph(_read(a["host"]), a["host"])
    rep = verify_universal(host, p, a["mode"], cfg.seed, a["samples"], cfg.budgets.search_nodes,
                           regular=a["regular"], linear=a["linear"], max_failures=a["max_failures"],
                           enum_budget=cfg.budgets.candidate_subsets, time_limit=cfg.time_limit)
    summary = {"family": f"r={p.r},n={p.n},delta={p.delta}", "host": Path(a["host"]).name,
               "host_vertices": host.n, "host_edges": host.m, **rep.summary()}
    text = format_verify_report(summary, rep.failures)
    if cfg.as_json:
        summary = dict(summary, witnesses=[format_hypergraph(w) for w in rep.failures])
    _emit(cfg, summary, report_text=text)
    return EXIT_FAILED if rep.failures or rep.invalid else EXIT_OK


def cmd_decompose(cfg: RunConfig) -> int:
    a = cfg.params
    src = a["input"]
    h = parse_hypergraph(_read(src), src)
    if a["kind"] == "two-cover":
        f = as_graph(h)
        delta = a["delta"] if a["delta"] is not None else f.max_degree
        cert = two_cover_decompose(f, delta, cfg.seed, cfg.budgets.local_search_steps)
        if a["homs"]:
            cert = cert.with_homs(cfg.budgets.search_nodes)
        ok = verify_krl(cert, f)
        report = {"kind": "krl", "n": f.n, "edges": f.m, "delta": delta, "k": cert.k,
                  "multiplicity": cert.multiplicity, "path_power": cert.path_power, "valid": bool(ok),
                  "method": cert.meta.get("method", "")}
        if not ok:
            report["violation"] = ok.violation
        _emit(cfg, report, {".cert": format_decomp(cert, f)})
        return EXIT_OK if ok else EXIT_FAILED
    dec = p3_hitting_decomposition(h, cfg.seed, cfg.budgets.local_search_steps)
    bad = dec.violations(h)
    report = {"kind": "p3", "n": h.n, "edges": h.m, "hitting_edges": dec.hitting_graph.m,
              "matching": len(dec.matching), "deleted": len(dec.deleted_set), "valid": not bad,
              "method": dec.meta.get("method", "")}
    if bad:
        report["violation"] = bad[0]
    _emit(cfg, report, {".cert": format_p3(dec, h)})
    return EXIT_FAILED if bad else EXIT_OK


def cmd_hit(cfg: RunConfig) -> int:
    a = cfg.params
    h = parse_hypergraph(_read(a["input"]), a["input"])
    if a["pattern"] == "matching":
        g, cert = hit_perfect_matching(h, a["r_prime"])
    else:
        g, cert = hit_matching_path(h)
    bad = cert.violations(g, h)
    report = {"pattern": a["pattern"], "n": h.n, "edges": h.m, "hit_edges": g.m,
              "hit_max_degree": g.max_degree, "valid": not bad}
    _emit(cfg, report, {".hg": format_hypergraph(g), ".cert": format_hit(g, h, cert, a["pattern"])})
    return EXIT_FAILED if bad else EXIT_OK


def _pattern(name: str, r: int, s: int) -> Hypergraph:
    if name == "matching":
        return perfect_matching_pattern(r, s)
    if name == "matching_path":
        return matching_plus_path(r)
    if name == "p3":
        return path_graph(3)
    if name.startswith("file:"):
        return parse_hypergraph(_read(name[5:]), name[5:])
    raise UsageError(f"unknown pattern {name!r}")


def cmd_expand(cfg: RunConfig) -> int:
    a = cfg.params
    g = parse_hypergraph(_read(a["input"]), a["input"])
    s = g.uniformity or g.rank
    f = _pattern(a["pattern"], a["r"], s)
    h = expand(g, f, a["r"], cfg.budgets.rsets)
    report = {"pattern": a["pattern"], "r": a["r"], "base_vertices": g.n, "base_edges": g.m,
              "vertices": h.n, "edges": h.m}
    _emit(cfg, report, {".hg": format_hypergraph(h)})
    return EXIT_OK


def cmd_scaling(cfg: RunConfig) -> int:
    a = cfg.params
    r, delta = a["r"], a["delta"]
    points = []
    rows = ["n,vertices,edges"]
    for n in _int_list(a["ns"]):
        _, rep = build_universal(FamilyParams(r, n, delta), a["strategy"], _surrogate(a["surrogate"]), cfg.seed,
                                 a.get("r_prime"))
        if rep.edges is None:
            raise UsageError(f"edge count unavailable for n={n}")
        points.append((n, rep.edges))
        rows.append(f"{n},{rep.vertices},{rep.edges}")
    target = r - r / delta if a["strategy"] != "delta2_product" else 1.5
    fit = scaling_fit(points, target)
    report = {"strategy": a["strategy"], "r": r, "delta": delta, **fit.summary()}
    _emit(cfg, report, {".csv": "\n".join(rows) + "\n"})
    return EXIT_OK


def cmd_aa(cfg: RunConfig) -> int:
    a = cfg.params
    m, r, seeds = a["m"], a["r"], a["seeds"]
    base = AAParams(m, cfg.seed)
    bound = clique_bound(m, r)
    counts, worst_z = [], 0.0
    for s in range(seeds):
        g = alon_asodi_graph(AAParams(m, cfg.seed + s))
        rng = np.random.default_rng(cfg.seed + s)
        for i in range(1, len(g.sizes)):
            for j in range(1, i + 1):
                dens, se, _ = pair_density(g, i, j, a["pair_samples"], rng)
                if se > 0:
                    worst_z = max(worst_z, abs(dens - pair_probability(i, j)) / se)
        if r == 3:
            if a["exact"]:
                counts.append(float(exact_triangles(g)))
            else:
                counts.append(estimate_triangles(g, a["samples"], cfg.seed + s).estimate)
    report: dict[str, Any] = {"m": m, "r": r, "seeds": seeds, "k": base.k, "vertices": sum(base.layer_sizes),
                              "layer_sizes": list(base.layer_sizes), "bound": bound,
                              "expected": expected_cliques(base, r), "max_pair_z": round(worst_z, 4)}
    if counts:
        report["mean_count"] = statistics.fmean(counts)
        report["count_method"] = "exact" if a["exact"] else "stratified estimate"
    report["within_bound"] = report.get("mean_count", report["expected"]) <= bound
    _emit(cfg, report)
    return EXIT_OK if report["within_bound"] else EXIT_FAILED


def cmd_check(cfg: RunConfig) -> int:
    path = cfg.params["input"]
    text = _read(path)
    kind = parse_report(text, path).get("kind") if " = " in text.split("\n", 1)[0] else None
    if kind == "krl":
        cert, host = parse_decomp(text, path)
        res = verify_krl(cert, host)
        report = {"kind": kind, "valid": bool(res), "violation": res.violation or ""}
    elif kind == "p3":
        dec, h = parse_p3(text, path)
        bad = dec.violations(h)
        report = {"kind": kind, "valid": not bad, "violation": bad[0] if bad else ""}
    elif kind == "hit":
        g, h, cert = parse_hit(text, path)
        bad = cert.violations(g, h)
        report = {"kind": kind, "valid": not bad, "violation": bad[0] if bad else ""}
    else:
        h = parse_hypergraph(text, path)
        report = {"kind": "hypergraph", "valid": True, "vertices": h.n, "edges": h.m,
                  "uniformity": h.uniformity or 0, "max_degree": h.max_degree, "linear": h.is_linear()}
    _emit(cfg, report)
    return EXIT_OK if report["valid"] else EXIT_FAILED


COMMANDS = {"construct": cmd_construct, "verify": cmd_verify, "decompose": cmd_decompose, "hit": cmd_hit,
            "expand": cmd_expand, "scaling": cmd_scaling, "aa": cmd_aa, "check": cmd_check}


# ---------------------------------------------------------------------------
# argument parsing
# ---------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        self.print_usage(sys.stderr)
        sys.stderr.write(f"{self.prog}: error: {message}\n")
        raise SystemExit(EXIT_USAGE)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--out", help="output prefix; writes PREFIX.report and the command's artifacts")
    common.add_argument("--json", action="store_true", dest="as_json", help="print the report as JSON")
    b = common.add_argument_group("budgets (defaults scale with UNIHYPER_BUDGET_SCALE)")
    b.add_argument("--budget-vertices", type=int)
    b.add_argument("--budget-rsets", type=int, help="r-set scans and edge count cap")
    b.add_argument("--budget-subsets", type=int, help="family members enumerated")
    b.add_argument("--budget-nodes", type=int, help="backtracking nodes per search")
    b.add_argument("--budget-steps", type=int, help="local search moves")
    b.add_argument("--time-limit", type=float, help="wall-clock seconds for verification runs")

    ap = _Parser(prog="unihyper", description="Sparse universal hypergraphs: build, decompose, verify.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    c = sub.add_parser("construct", parents=[common], help="build a universal hypergraph")
    c.add_argument("--strategy", required=True, choices=["even_r_matching", "divisor_composition", "odd_r_path",
                                                          "delta2_product", "delta2_layered"])
    c.add_argument("--r", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--delta", type=int, default=2)
    c.add_argument("--surrogate", default="k3", help="k2, k3, k4, c5, petersen or rr:m,d")
    c.add_argument("--r-prime", type=int)

    v = sub.add_parser("verify", parents=[common], help="check universality of a host over a family")
    v.add_argument("--family", required=True, help="r=..,n=..,delta=..")
    v.add_argument("--host", required=True)
    v.add_argument("--mode", choices=["exhaustive", "sampled"], default="sampled")
    v.add_argument("--samples", type=int, default=100)
    v.add_argument("--regular", action="store_true")
    v.add_argument("--linear", action="store_true")
    v.add_argument("--max-failures", type=int, help="stop after this many witnesses")

    d = sub.add_parser("decompose", parents=[common], help="two-cover or P_3 hitting decomposition")
    d.add_argument("kind", choices=["two-cover", "p3"])
    d.add_argument("--in", dest="input", required=True)
    d.add_argument("--delta", type=int, help="degree bound for two-cover (default: max degree)")
    d.add_argument("--homs", action="store_true", help="attach path-power maps to a two-cover")

    h = sub.add_parser("hit", parents=[common], help="hitting graph with placement certificate")
    h.add_argument("--in", dest="input", required=True)
    h.add_argument("--pattern", choices=["matching", "matching_path"], default="matching")
    h.add_argument("--r-prime", type=int, default=2)

    e = sub.add_parser("expand", parents=[common], help="r-sets containing a copy of a pattern")
    e.add_argument("--in", dest="input", required=True)
    e.add_argument("--pattern", default="matching", help="matching, matching_path, p3 or file:PATH")
    e.add_argument("--r", type=int, required=True)

    s = sub.add_parser("scaling", parents=[common], help="fit log(edges) against log(n)")
    s.add_argument("--strategy", default="even_r_matching")
    s.add_argument("--r", type=int, required=True)
    s.add_argument("--delta", type=int, default=2)
    s.add_argument("--ns", required=True, help="comma separated n values")
    s.add_argument("--surrogate", default="k3")
    s.add_argument("--r-prime", type=int)

    a = sub.add_parser("aa", parents=[common], help="clique counts in the layered random graph")
    a.add_argument("--m", type=int, required=True)
    a.add_argument("--r", type=int, default=3)
    a.add_argument("--seeds", type=int, default=20)
    a.add_argument("--samples", type=int, default=20000, help="triples per stratum")
    a.add_argument("--pair-samples", type=int, default=20000)
    a.add_argument("--exact", action="store_true", help="exact triangle counts (small m only)")

    k = sub.add_parser("check", parents=[common], help="validate a hypergraph or certificate file")
    k.add_argument("--in", dest="input", required=True)
    return ap


def config_from_args(ns: argparse.Namespace) -> RunConfig:
    base = _budgets.default_budgets()
    over = {"vertices": ns.budget_vertices, "rsets": ns.budget_rsets, "candidate_subsets": ns.budget_subsets,
            "search_nodes": ns.budget_nodes, "local_search_steps": ns.budget_steps}
    budgets = replace(base, **{k: v for k, v in over.items() if v is not None})
    skip = {"command", "seed", "out", "as_json", "time_limit"} | {f"budget_{x}" for x in
                                                                     ("vertices", "rsets", "subsets", "nodes", "steps")}
    params = {k: v for k, v in vars(ns).items() if k not in skip}
    inputs = tuple(str(params[k]) for k in ("input", "host") if params.get(k))
    return RunConfig(ns.command, ns.seed, inputs, ns.out, ns.as_json, budgets, ns.time_limit, params)


def main(argv: Sequence[str] | None = None) -> int:
    ns = build_parser().parse_args(argv)
    saved = _budgets.DEFAULT
    try:
        cfg = config_from_args(ns)
        _budgets.DEFAULT = cfg.budgets
        return COMMANDS[cfg.command](cfg)
    except (BudgetExceeded, SearchExhausted, GenerationFailure) as ex:
        sys.stderr.write(f"unihyper {ns.command}: {ex}\n")
        return EXIT_BUDGET
    except (ParseError, UsageError, OpenCase, ValueError) as ex:
        sys.stderr.write(f"unihyper {ns.command}: {ex}\n")
        return EXIT_USAGE
    finally:
        _budgets.DEFAULT = saved


if __name__ == "__main__":
    raise SystemExit(main())
