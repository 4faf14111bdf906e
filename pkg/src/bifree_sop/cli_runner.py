"""Command-line entry point.

Subcommands:

``verify``      run identity suites on seeded random cumulant data
``transform``   print the transform series of a pair given as JSON
``partitions``  list NC(n) or BNC(n, m) with Kreweras complements

Exit codes: 0 success, 1 an identity failed, 2 bad configuration or input,
3 input outside a transform's domain.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from . import bnc_lattice as bnc
from . import nc_lattice as ncl
from .bifree_product import (
    ProductContext,
    verify_decomposition,
    verify_lemma_phiL,
    verify_lemma_phiR,
    verify_lemma_Psi_solved,
    verify_lemma_psiL,
    verify_lemma_psiR,
    verify_main_K_expression,
    verify_sop_multiplicativity,
)
from .checks import Check, compare
from .conditional_formulas import (
    verify_conditional_s_reduction,
    verify_opposite_order_reduction,
    verify_same_order_reduction,
)
from .errors import ConfigError, DomainError, SizeError
from .jsonio import (
    bnc_partition_from_json,
    pair_spec_from_json,
    partition_from_json,
    rational_to_str,
    series_to_json,
)
from .mult_functions import (
    verify_inverse_product,
    verify_pinched_composition,
    verify_star_commutative,
    verify_unpinched_composition,
)
from .nc_lattice import DEFAULT_CAP
from .power_series import Series1, Series2
from .rng import SplitMix64, random_pair_spec
from .transforms import (
    bifree_cumulants_to_moments,
    bifree_moments_to_cumulants,
    free_cumulants_to_moments,
    free_moments_to_cumulants,
    opposite_partial_s,
    partial_s,
    s_transform,
    series_C,
    series_H,
    series_K,
    verify_chi_into_moment,
    verify_moment_cumulant_identity,
    verify_partial_s_forms,
    verify_rescale_invariance,
    verify_s_routes,
    verify_sop_forms,
    verify_swap_symmetry,
)

EXIT_OK, EXIT_FAIL, EXIT_CONFIG, EXIT_DOMAIN = 0, 1, 2, 3


@dataclass
class Trial:
    ctx: ProductContext
    lam: Fraction
    mu: Fraction


@dataclass
class RunConfig:
    command: str
    orders: tuple[int, ...] = (3, 3)
    seed: int = 1
    trials: int = 1
    suites: list[str] = field(default_factory=list)
    fmt: str = "json"
    input: str | None = None
    output: str | None = None
    cap: int = DEFAULT_CAP
    query: str | None = None
    timings: bool = False


# ---- suites ---------------------------------------------------------------

def _round_trips(t: Trial) -> list[Check]:
    out = []
    for k, p in enumerate((t.ctx.raw1, t.ctx.raw2), 1):
        back = bifree_moments_to_cumulants(bifree_cumulants_to_moments(p))
        out.append(compare(f"bifree_round_trip[{k}]", series_C(back), series_C(p)))
        kappa = list(p.kappa_a)
        again = free_moments_to_cumulants(free_cumulants_to_moments(kappa))
        out.append(compare(f"free_round_trip[{k}]", Series1([0] + again), Series1([0] + kappa)))
        out.append(verify_moment_cumulant_identity(p))
    return out


def _s_routes(t: Trial) -> list[Check]:
    return [f(p, side) for p in (t.ctx.raw1, t.ctx.raw2) for side in ("a", "b")
            for f in (verify_s_routes, verify_chi_into_moment)]


def _convolutions(t: Trial) -> list[Check]:
    f1, f2, g1, g2 = t.ctx.mult_fns()
    return [f(x, y) for x, y in ((f1, f2), (g1, g2))
            for f in (verify_pinched_composition, verify_inverse_product,
                      verify_unpinched_composition, verify_star_commutative)]


def _partial_s(t: Trial) -> list[Check]:
    return [c for p in (t.ctx.raw1, t.ctx.raw2) for c in (verify_partial_s_forms(p), verify_swap_symmetry(p))]


def _sop_forms(t: Trial) -> list[Check]:
    return [c for p in (t.ctx.raw1, t.ctx.raw2)
            for c in (verify_sop_forms(p), verify_rescale_invariance(p, t.lam, t.mu))]


def _lemmas(t: Trial) -> list[Check]:
    return [f(t.ctx) for f in (verify_lemma_phiL, verify_lemma_phiR, verify_lemma_psiL,
                                verify_lemma_psiR, verify_lemma_Psi_solved)]


def _conditional(t: Trial) -> list[Check]:
    p1, p2 = t.ctx.raw1, t.ctx.raw2
    return [verify_same_order_reduction(p1, p2), verify_opposite_order_reduction(p1, p2),
            verify_conditional_s_reduction(p1, "a"), verify_conditional_s_reduction(p1, "b")]


SUITES: dict[str, Callable[[Trial], list[Check]]] = {
    "moments": _round_trips,
    "s_routes": _s_routes,
    "convolutions": _convolutions,
    "partial_s": _partial_s,
    "sop_forms": _sop_forms,
    "decomposition": lambda t: [verify_decomposition(t.ctx)],
    "lemmas": _lemmas,
    "kexpr": lambda t: [verify_main_K_expression(t.ctx)],
    "sop": lambda t: [verify_sop_multiplicativity(t.ctx)],
    "conditional": _conditional,
}


def required_size(suite: str, orders: tuple[int, int]) -> int:
    """Largest lattice a suite enumerates at the given orders."""
    n, m = orders
    # the bottom-class series walk BNC(2n+1, 2m) for z^{n+1} w^m
    return 2 * n + 2 * m - 1 if suite == "lemmas" else n + m


def draw_trial(rng: SplitMix64, orders: tuple[int, int]) -> Trial:
    p1 = random_pair_spec(rng, orders)
    p2 = random_pair_spec(rng, orders)
    lam, mu = rng.rational(nonzero=True), rng.rational(nonzero=True)
    return Trial(ProductContext(p1, p2), lam, mu)


# ---- output helpers -------------------------------------------------------

def _emit(cfg: RunConfig, text: str) -> None:
    if cfg.output:
        with open(cfg.output, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(obj) -> str:
    return json.dumps(obj, indent=2) + "\n"


def _csv_text(header: list[str], rows: list[list]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    return buf.getvalue()


# ---- commands -------------------------------------------------------------

def cmd_verify(cfg: RunConfig) -> int:
    if len(cfg.orders) != 2:
        raise ConfigError("verify needs --orders N,M")
    orders = (cfg.orders[0], cfg.orders[1])
    suites = cfg.suites or list(SUITES)
    for s in suites:
        if s not in SUITES:
            raise ConfigError(f"unknown suite {s!r}; choose from {', '.join(SUITES)}")
        if required_size(s, orders) > cfg.cap:
            raise ConfigError(f"suite {s!r} at orders {orders} needs lattices of size "
                              f"{required_size(s, orders)} > cap {cfg.cap}")
    rng = SplitMix64(cfg.seed)
    results = []
    for trial in range(1, cfg.trials + 1):
        t = draw_trial(rng, orders)
        for s in suites:
            start = time.perf_counter()
            checks = SUITES[s](t)
            elapsed = time.perf_counter() - start
            for c in checks:
                row = {"suite": s, "trial": trial, **c.to_json()}
                if cfg.timings:
                    row["elapsed_s"] = round(elapsed, 6)
                results.append(row)
    all_hold = all(r["holds"] for r in results)
    if cfg.fmt == "csv":
        rows = []
        for r in results:
            ff = r["first_failure"]
            cell = ";".join(map(str, ff["cell"])) if ff else ""
            lhs = f"{ff['lhs']['num']}/{ff['lhs']['den']}" if ff else ""
            rhs = f"{ff['rhs']['num']}/{ff['rhs']['den']}" if ff else ""
            row = [r["trial"], r["suite"], r["name"], "x".join(map(str, r["orders"])),
                   str(r["holds"]).lower(), cell, lhs, rhs]
            if cfg.timings:
                row.append(r["elapsed_s"])
            rows.append(row)
        header = ["trial", "suite", "name", "orders", "holds", "cell", "lhs", "rhs"]
        _emit(cfg, _csv_text(header + (["elapsed_s"] if cfg.timings else []), rows))
    else:
        _emit(cfg, _json_text({"command": "verify", "orders": list(orders), "seed": cfg.seed,
                               "trials": cfg.trials, "suites": suites, "results": results,
                               "all_hold": all_hold}))
    return EXIT_OK if all_hold else EXIT_FAIL


def cmd_transform(cfg: RunConfig) -> int:
    if not cfg.input:
        raise ConfigError("transform needs --input PATH")
    try:
        with open(cfg.input, encoding="utf-8") as fh:
            raw = json.load(fh)
    except OSError as exc:
        raise ConfigError(f"cannot read {cfg.input}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed JSON in {cfg.input}: {exc}") from exc
    try:
        p = pair_spec_from_json(raw)
    except (ValueError, KeyError, TypeError, ZeroDivisionError) as exc:
        raise ConfigError(f"invalid pair spec: {exc}") from exc
    if sum(p.orders) > cfg.cap:
        raise ConfigError(f"orders {p.orders} need NC({sum(p.orders)}) > cap {cfg.cap}")
    series: dict[str, Series1 | Series2] = {
        "S_a": s_transform(p, "a"),
        "S_b": s_transform(p, "b"),
        "S_ab": partial_s(p),
        "S_op": opposite_partial_s(p),
        "K": series_K(p),
        "H": series_H(p, cfg.cap),
        "C": series_C(p),
    }
    if cfg.fmt == "csv":
        rows = []
        for name, s in series.items():
            if isinstance(s, Series1):
                rows += [[name, i, "", rational_to_str(c)] for i, c in enumerate(s.coeffs)]
            else:
                rows += [[name, i, j, rational_to_str(c)] for (i, j), c in s.cells()]
        _emit(cfg, _csv_text(["series", "i", "j", "value"], rows))
    else:
        _emit(cfg, _json_text({"command": "transform", "orders": list(p.orders),
                               "series": {k: series_to_json(v) for k, v in series.items()}}))
    return EXIT_OK


def cmd_partitions(cfg: RunConfig) -> int:
    if len(cfg.orders) == 1:
        n = cfg.orders[0]
        if n > cfg.cap:
            raise ConfigError(f"NC({n}) exceeds cap {cfg.cap}")
        if cfg.query:
            p = _parse_query(lambda obj: partition_from_json(obj, n), cfg.query)
            if not p.is_noncrossing():
                raise ConfigError(f"query {p} is not non-crossing")
            out = {"kind": "NC", "n": n, "query": p.to_json(), "kreweras": ncl.kreweras_nc(p).to_json()}
            rows = [[p.to_json(), out["kreweras"], ""]]
        else:
            parts = ncl.enumerate_nc(n, cfg.cap)
            rows = [[p.to_json(), ncl.kreweras_nc(p).to_json(), ""] for p in parts]
            out = {"kind": "NC", "n": n, "count": len(parts), "catalan": ncl.catalan(n),
                   "rows": [{"blocks": b, "kreweras": k} for b, k, _ in rows]}
    elif len(cfg.orders) == 2:
        n, m = cfg.orders
        if n + m > cfg.cap:
            raise ConfigError(f"BNC({n},{m}) exceeds cap {cfg.cap}")
        if n + m < 1:
            raise ConfigError("need n + m >= 1")

        def row(p: bnc.BNCPartition) -> list:
            cls = bnc.classify_LR(p) if n >= 1 and m >= 1 else ""
            return [p.to_json(), bnc.kreweras_bnc(p).to_json(), cls]

        if cfg.query:
            p = _parse_query(lambda obj: bnc_partition_from_json(obj, n, m), cfg.query)
            rows = [row(p)]
            out = {"kind": "BNC", "orders": [n, m], "query": rows[0][0], "kreweras": rows[0][1],
                   "class": rows[0][2]}
        else:
            parts = bnc.enumerate_bnc(n, m, cfg.cap)
            rows = [row(p) for p in parts]
            out = {"kind": "BNC", "orders": [n, m], "count": len(parts), "catalan": ncl.catalan(n + m),
                   "rows": [{"blocks": b, "kreweras": k, "class": c} for b, k, c in rows]}
    else:
        raise ConfigError("partitions needs --orders N or --orders N,M")
    if cfg.fmt == "csv":
        compact = lambda x: json.dumps(x, separators=(",", ":"))
        _emit(cfg, _csv_text(["blocks", "kreweras", "class"],
                             [[compact(b), compact(k), c] for b, k, c in rows]))
    else:
        _emit(cfg, _json_text(out))
    return EXIT_OK


def _parse_query(parse, text: str):
    try:
        return parse(json.loads(text))
    except json.JSONDecodeError as exc:
        raise ConfigError(f"malformed --query JSON: {exc}") from exc
    except (ValueError, KeyError, TypeError) as exc:
        raise ConfigError(f"invalid --query partition: {exc}") from exc


COMMANDS = {"verify": cmd_verify, "transform": cmd_transform, "partitions": cmd_partitions}


# ---- argument parsing -----------------------------------------------------

def _parse_orders(text: str) -> tuple[int, ...]:
    try:
        values = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"orders must be integers like 3,3: {text!r}")
    if not 1 <= len(values) <= 2 or any(v < 0 for v in values):
        raise argparse.ArgumentTypeError(f"orders must be N or N,M with nonnegative entries: {text!r}")
    return values


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bifree-sop", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", dest="fmt", choices=("json", "csv"), default="json")
    common.add_argument("--output", help="write to this file instead of stdout")
    common.add_argument("--cap", type=int, default=DEFAULT_CAP, help="largest lattice size to enumerate")

    v = sub.add_parser("verify", parents=[common], help="run identity suites on random data")
    v.add_argument("--orders", type=_parse_orders, default=(3, 3), help="truncation orders N,M")
    v.add_argument("--seed", type=int, default=1)
    v.add_argument("--trials", type=int, default=1)
    v.add_argument("--suite", default="", help=f"comma list from: {', '.join(SUITES)}")
    v.add_argument("--timings", action="store_true", help="include elapsed times (not reproducible)")

    t = sub.add_parser("transform", parents=[common], help="transform series of a pair spec")
    t.add_argument("--input", required=True, help="pair spec JSON file")

    p = sub.add_parser("partitions", parents=[common], help="list NC(n) or BNC(n, m)")
    p.add_argument("--orders", type=_parse_orders, required=True, help="n for NC(n), or n,m for BNC(n,m)")
    p.add_argument("--query", help="a single partition as JSON; report only its complement")
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    cfg = RunConfig(command=args.command, fmt=args.fmt, output=args.output, cap=args.cap)
    if cfg.cap < 1:
        raise ConfigError("--cap must be positive")
    if args.command == "verify":
        cfg.orders, cfg.seed, cfg.trials, cfg.timings = args.orders, args.seed, args.trials, args.timings
        cfg.suites = [s.strip() for s in args.suite.split(",") if s.strip()]
        if cfg.trials < 1:
            raise ConfigError("--trials must be at least 1")
        if len(cfg.orders) != 2 or min(cfg.orders) < 1:
            raise ConfigError("verify needs --orders N,M with N, M >= 1")
    elif args.command == "transform":
        cfg.input = args.input
    else:
        cfg.orders, cfg.query = args.orders, args.query
    return cfg


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_CONFIG if exc.code else EXIT_OK
    try:
        cfg = config_from_args(args)
        return COMMANDS[cfg.command](cfg)
    except (ConfigError, SizeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DomainError as exc:
        print(f"domain error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
