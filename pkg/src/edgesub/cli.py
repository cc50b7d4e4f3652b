"""Command-line front end: count, decide, coeff, tutte, tutte-map and verify.

Results go to stdout as JSON (or a flat key/value table); diagnostics go to
stderr.  Exit codes: 0 success, 1 a verify check failed, 2 unreadable or
malformed input, 3 a capacity guard tripped, 4 usage error.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import asdict, dataclass, fields, replace
from fractions import Fraction
from typing import Optional

from .coefficients import (HARDNESS_CAVEAT, classify_minor_closed, coefficient_table,
                           torus_top_coefficient_mod)
from .counting import (DEFAULT_SAMPLE_BUDGET, DEFAULT_SUBSET_BUDGET, CountQuery,
                       count_exact_bruteforce, count_exact_via_basis, count_exact_via_subs,
                       decide_with_branch, fptras_estimate)
from .errors import CapacityError, EdgeSubError, MetadataError, ParseError, UsageError
from .fractures import DEFAULT_FRACTURE_BUDGET, bottom_fracture
from .graphs import Graph, generate_family, parse_edge_list, parse_family
from .properties import DEFAULT_PHI_K_CAP, get_property, load_properties
from .tutte import (RationalPoint, classification_grid, classification_svg, classify_point,
                    tutte_k, tutte_k_bruteforce, tutte_k_delcon)
from .verify import SUITES, run_suite

__all__ = ["RunConfig", "load_config", "main", "EXIT_CODES", "CONFIG_ENV"]

CONFIG_ENV = "EDGESUB_CONFIG"

EXIT_CODES = {"ok": 0, "check-failed": 1, "parse": 2, "capacity": 3, "usage": 4}

COUNT_CITATIONS = {
    "brute": ["#EdgeSub definition"],
    "via-subs": ["Eq. (2)"],
    "via-basis": ["Eq. (1)", "Eq. (2)"],
}

SUITE_CITATIONS = {
    "fixed-points": "Obs. 4.2",
    "basis-identity": "Lemma 3.1 / Cor. 3.2",
    "triangularity": "Lemma 3.4",
    "tensor": "Lemma 3.3",
    "extraction": "Lemma 3.5",
    "inclusion-exclusion": "Lemma 3.6",
    "residues": "Lemma 4.5",
    "classifier": "Thm 1.1",
    "exact-counting": "Eq. (2)",
    "decision": "Thm 1.6",
    "tutte-identities": "Lemma 7.2 / Prop. 7.3",
    "special-points": "Sec. 7.1",
    "point-grid": "Thm 1.9 / Thm 1.10",
}

INTERPRETATIONS = {
    (Fraction(2), Fraction(1)): "k-forests",
    (Fraction(1), Fraction(1)): "spanning forests with k edges",
    (Fraction(2), Fraction(2)): "k-edge subsets",
    (Fraction(2), Fraction(0)): "k-edge subsets weighted by (-1)^(cycle rank)",
    (Fraction(0), Fraction(2)): "k-edge subsets weighted by (-1)^(k(A)-k(E))",
}

EXACT_LABELS = {"#P-hard-but-FPT": "FPT, #P-hard"}


@dataclass(frozen=True)
class RunConfig:
    """Budgets, seed, output format and the custom property file."""

    fracture_budget: int = DEFAULT_FRACTURE_BUDGET
    subset_budget: int = DEFAULT_SUBSET_BUDGET
    sample_budget: int = DEFAULT_SAMPLE_BUDGET
    phi_k_cap: int = DEFAULT_PHI_K_CAP
    seed: int = 0
    format: str = "json"
    properties_path: Optional[str] = None

    def __post_init__(self):
        for name in ("fracture_budget", "subset_budget", "sample_budget", "phi_k_cap"):
            if not isinstance(getattr(self, name), int) or getattr(self, name) <= 0:
                raise UsageError(f"{name} must be a positive integer")
        if not isinstance(self.seed, int) or not 0 <= self.seed < 2 ** 64:
            raise UsageError("seed must be an integer in [0, 2^64)")
        if self.format not in ("json", "table"):
            raise UsageError("format must be 'json' or 'table'")

    def digest(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True).encode()
        return hashlib.sha256(blob).hexdigest()[:16]


def load_config(path: Optional[str]) -> RunConfig:
    """RunConfig from a JSON object whose keys are RunConfig field names."""
    if not path:
        return RunConfig()
    try:
        with open(path) as fh:
            data = json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read config {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise ParseError(f"config {path}: line {exc.lineno}: {exc.msg}") from None
    if not isinstance(data, dict):
        raise ParseError(f"config {path}: expected a JSON object")
    known = {f.name for f in fields(RunConfig)}
    unknown = set(data) - known
    if unknown:
        raise UsageError(f"config {path}: unknown keys {sorted(unknown)}")
    return RunConfig(**data)


# --------------------------------------------------------------- helpers

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_CODES["usage"], f"{self.prog}: error: {message}\n")


def _read_graph(path: str) -> Graph:
    try:
        with open(path) as fh:
            text = fh.read()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_edge_list(text)
    except ParseError as exc:
        raise ParseError(f"{path}: {exc}") from None


def _rational(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"bad rational {text!r}; use p/q or an integer") from None


def _fraction_str(v: Fraction) -> str:
    return f"{v.numerator}/{v.denominator}"


def _properties(cfg: RunConfig) -> Optional[dict]:
    if not cfg.properties_path:
        return None
    try:
        return load_properties(cfg.properties_path)
    except OSError as exc:
        raise UsageError(f"cannot read properties {cfg.properties_path}: {exc.strerror}") from None
    except (json.JSONDecodeError, KeyError, TypeError) as exc:
        raise ParseError(f"properties {cfg.properties_path}: {exc}") from None


def _envelope(cfg: RunConfig, started: float, **body) -> dict:
    out = dict(body)
    out.setdefault("seed", cfg.seed)
    out["elapsed_ms"] = round((time.perf_counter() - started) * 1000, 3)
    out["config_hash"] = cfg.digest()
    return out


def _flatten(prefix: str, value, out: list) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, out)
    elif isinstance(value, list) and value and isinstance(value[0], dict):
        for i, v in enumerate(value):
            _flatten(f"{prefix}[{i}]", v, out)
    else:
        out.append((prefix, value if not isinstance(value, list) else ", ".join(map(str, value))))


def _emit(result: dict, cfg: RunConfig) -> None:
    if cfg.format == "json":
        print(json.dumps(result))
        return
    rows: list = []
    _flatten("", result, rows)
    width = max((len(k) for k, _ in rows), default=0)
    for k, v in rows:
        print(f"{k.ljust(width)}  {v}")


# -------------------------------------------------------------- commands

def cmd_count(args, cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    phi = get_property(args.property, _properties(cfg))
    g = _read_graph(args.graph)
    q = CountQuery(phi, args.k, g, args.mode)
    query = {"property": phi.name, "k": args.k, "graph": args.graph,
             "vertices": g.n, "edges": len(g.edges)}
    if args.mode == "fptras":
        est = fptras_estimate(q, args.eps, args.delta, cfg.seed, cfg.sample_budget)
        cites = {"exact": ["Algorithm 1", "#EdgeSub definition"],
                 "sampling": ["Algorithm 1", "Lemma 6.6"],
                 "treewidth": ["Lemma 6.10"]}[est.path]
        result = _envelope(cfg, t0, query=query, mode=args.mode,
                           estimate=_fraction_str(est.estimate),
                           estimate_rounded=round(float(est.estimate), 3),
                           samples=est.samples, path=est.path, eps=args.eps,
                           delta=args.delta, citations=cites)
    else:
        if args.mode == "brute":
            value = count_exact_bruteforce(q, cfg.subset_budget)
        elif args.mode == "via-subs":
            value = count_exact_via_subs(q, cfg.phi_k_cap)
        else:
            value = count_exact_via_basis(q, cfg.phi_k_cap)
        result = _envelope(cfg, t0, query=query, mode=args.mode, value=value, samples=0,
                           citations=COUNT_CITATIONS[args.mode])
    _emit(result, cfg)
    return 0


def cmd_decide(args, cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    phi = get_property(args.property, _properties(cfg))
    g = _read_graph(args.graph)
    ans, branch = decide_with_branch(phi, args.k, g, cfg.phi_k_cap)
    cites = ["Thm 1.6"] + {"matching": ["Lemma 6.4"], "star": ["Lemma 6.7"],
                           "search": []}[branch]
    result = _envelope(cfg, t0, query={"property": phi.name, "k": args.k, "graph": args.graph},
                       mode="decide", value=ans, branch=branch, citations=cites)
    _emit(result, cfg)
    return 0


def cmd_coeff(args, cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    phi = get_property(args.property, _properties(cfg))
    spec = parse_family(args.family)
    query = {"property": phi.name, "family": args.family}
    if args.mod is not None:
        if spec.tag != "torus" or spec.params != (args.mod,):
            raise UsageError("--mod p needs the family torus:p")
        r = torus_top_coefficient_mod(phi, args.mod)
        result = _envelope(cfg, t0, query=query, mod=args.mod, residue=r,
                           verdict="#W[1]-hard criterion met" if r else
                           "hardness criterion inconclusive",
                           caveat=HARDNESS_CAVEAT,
                           citations=["Thm 1.7", "Lemma 4.5", "Obs. 4.2"])
    else:
        h = generate_family(spec)
        tab = coefficient_table(phi, h, cfg.fracture_budget)
        entries = [{"fracture": r.to_json(), "blocks": r.block_count(), "coefficient": a}
                   for r, a in tab.values.items()]
        body = dict(query=query, base=h.to_json(), fractures=len(entries),
                    top=tab.top(), bottom=tab.values[bottom_fracture(h)],
                    nonzero=len(tab.nonzero()), entries=entries,
                    citations=["Cor. 3.2"])
        if phi.forbidden_minors is not None:
            body["classification"] = classify_minor_closed(phi.forbidden_minors).to_json()
            body["citations"] = ["Cor. 3.2", "Thm 1.1"]
        result = _envelope(cfg, t0, **body)
    _emit(result, cfg)
    return 0


def _classification(p: RationalPoint) -> dict:
    exact, approx = classify_point(p)
    label = EXACT_LABELS.get(exact.tag, exact.tag)
    return {
        "exact": f"{label} ({exact.detail})" if exact.detail else label,
        "exact_tag": exact.tag,
        "approx": approx.tag,
        "approx_detail": approx.detail,
        "citations": [exact.citation, approx.citation],
    }


def cmd_tutte(args, cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    p = RationalPoint(_rational(args.x), _rational(args.y))
    query = {"graph": args.graph, "k": args.k, "x": _fraction_str(p.x), "y": _fraction_str(p.y)}
    body = {"query": query, "mode": args.mode, "citations": ["Sec. 7 (T^k definition)"]}
    if args.classify:
        body["classification"] = _classification(p)
    if args.classify and not os.path.exists(args.graph):
        body.update(value=None, note="graph file not found; classification only")
        _emit(_envelope(cfg, t0, **body), cfg)
        return 0
    g = _read_graph(args.graph)
    if args.k < 0:
        raise UsageError("k must be nonnegative")
    if args.mode == "brute":
        tv = tutte_k_bruteforce(g, args.k, p, cfg.subset_budget)
    elif args.mode == "delcon":
        tv = tutte_k_delcon(g, args.k, p)
        body["citations"].append("Lemma 7.2")
    else:
        tv = tutte_k(g, args.k, p)
    body.update(value=tv.as_string(), provenance=tv.provenance)
    if (p.x, p.y) in INTERPRETATIONS:
        body["interpretation"] = INTERPRETATIONS[(p.x, p.y)]
    _emit(_envelope(cfg, t0, **body), cfg)
    return 0


def cmd_tutte_map(args, cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    if args.svg:
        with open(args.svg, "w") as fh:
            fh.write(classification_svg(args.lo, args.hi))
    steps = [Fraction(args.lo) + Fraction(i, 2) for i in range(2 * (args.hi - args.lo) + 1)]
    grid = classification_grid(steps, steps)
    _emit(_envelope(cfg, t0, points=grid, svg=args.svg, citations=["Thm 1.9", "Thm 1.10"]), cfg)
    return 0


def cmd_verify(args, cfg: RunConfig) -> int:
    t0 = time.perf_counter()
    names = list(SUITES) if args.suite == "all" else [args.suite]
    checks = []
    for name in names:
        for c in run_suite(name, ell=args.ell, seed=cfg.seed, instances=args.instances):
            checks.append({"suite": name, "citation": SUITE_CITATIONS[name],
                           "check": c.name, "passed": c.passed, "detail": c.detail})
    ok = all(c["passed"] for c in checks)
    if cfg.format == "json":
        print(json.dumps(_envelope(cfg, t0, suite=args.suite, passed=ok, checks=checks)))
    else:
        for c in checks:
            mark = "PASS" if c["passed"] else "FAIL"
            print(f"{mark}  [{c['citation']}] {c['check']}: {c['detail']}")
        print(f"{'PASS' if ok else 'FAIL'}  {args.suite}: "
              f"{sum(c['passed'] for c in checks)}/{len(checks)} checks")
    return 0 if ok else EXIT_CODES["check-failed"]


# ---------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help=f"JSON RunConfig file (default: ${CONFIG_ENV})")
    common.add_argument("--seed", type=int, help="RNG seed (64-bit)")
    common.add_argument("--format", choices=("json", "table"))
    common.add_argument("--budget-fractures", type=int, dest="fracture_budget")
    common.add_argument("--budget-subsets", type=int, dest="subset_budget")
    common.add_argument("--budget-samples", type=int, dest="sample_budget")
    common.add_argument("--properties", dest="properties_path",
                        help="JSON file of custom minor-free properties")

    parser = _Parser(prog="edgesub", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("count", parents=[common], help="count k-edge subsets satisfying a property")
    p.add_argument("property")
    p.add_argument("k", type=int)
    p.add_argument("graph", help="edge-list file")
    p.add_argument("--mode", choices=("brute", "via-subs", "via-basis", "fptras"), default="brute")
    p.add_argument("--eps", type=float, default=0.2)
    p.add_argument("--delta", type=float, default=0.1)
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("decide", parents=[common], help="does some k-edge subset satisfy it")
    p.add_argument("property")
    p.add_argument("k", type=int)
    p.add_argument("graph")
    p.set_defaults(func=cmd_decide)

    p = sub.add_parser("coeff", parents=[common], help="coefficient table or torus residue")
    p.add_argument("property")
    p.add_argument("family", help="e.g. k3, c4, k1,3, torus:5")
    p.add_argument("--mod", type=int, help="prime l; reduces the top coefficient of torus:l")
    p.set_defaults(func=cmd_coeff)

    p = sub.add_parser("tutte", parents=[common], help="evaluate T^k at a rational point")
    p.add_argument("graph")
    p.add_argument("k", type=int)
    p.add_argument("x")
    p.add_argument("y")
    p.add_argument("--mode", choices=("auto", "brute", "delcon"), default="auto")
    p.add_argument("--classify", action="store_true")
    p.set_defaults(func=cmd_tutte)

    p = sub.add_parser("tutte-map", parents=[common], help="classification over a rational grid")
    p.add_argument("--lo", type=int, default=-2)
    p.add_argument("--hi", type=int, default=3)
    p.add_argument("--svg", help="also write an SVG of the regions to this path")
    p.set_defaults(func=cmd_tutte_map)

    p = sub.add_parser("verify", parents=[common], help="run a self-check suite")
    p.add_argument("suite", choices=list(SUITES) + ["all"])
    p.add_argument("--ell", type=int)
    p.add_argument("--instances", type=int)
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config or os.environ.get(CONFIG_ENV))
        overrides = {f.name: getattr(args, f.name) for f in fields(RunConfig)
                     if getattr(args, f.name, None) is not None}
        cfg = replace(cfg, **overrides)
        return args.func(args, cfg)
    except ParseError as exc:
        print(f"edgesub: parse error: {exc}", file=sys.stderr)
        return EXIT_CODES["parse"]
    except CapacityError as exc:
        print(f"edgesub: capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CODES["capacity"]
    except (UsageError, MetadataError) as exc:
        print(f"edgesub: usage error: {exc}", file=sys.stderr)
        return EXIT_CODES["usage"]
    except EdgeSubError as exc:
        print(f"edgesub: error: {exc}", file=sys.stderr)
        return EXIT_CODES["usage"]


if __name__ == "__main__":
    sys.exit(main())
