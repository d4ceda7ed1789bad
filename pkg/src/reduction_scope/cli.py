"""Command-line front end.

Exit codes: 0 success, 1 usage error, 2 config error, 3 excluded prime,
4 internal consistency violation. Failures print one line to stderr:
``error kind=<kind> reason=<text>``.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import artifacts, elliptic, ffpoly, polygons
from .classify import classify_abelian_from_slopes
from .config import FieldDescriptor, RunConfig, field_from_dict, load_config, load_yaml, parse_int_list
from .density import DensityReport, GroupClassTable, gtr_density, ordinary_density, scan_prime, scan_rows
from .errors import ConfigError, ExcludedPrimeError, ReductionScopeError
from .fermat import FermatSpec, classify_fermat, fermat_densities
from .numberfield import classify_split, splitting_pattern
from .repro import EXAMPLES, run_example

EXIT_USAGE = 1


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.exit(EXIT_USAGE, f"error kind=usage reason={message}\n")


def _emit(args, payload: dict, text: str) -> None:
    if args.json:
        print(json.dumps(payload, sort_keys=True))
    else:
        print(text)


def _field(args, cfg: RunConfig) -> FieldDescriptor:
    if args.poly:
        return field_from_dict({"label": args.label, "poly": args.poly, "k0_poly": args.k0_poly}, cfg.groups)
    if args.field_file:
        return field_from_dict(load_yaml(args.field_file), cfg.groups)
    if args.field:
        return cfg.get_field(args.field)
    raise ConfigError("give --field, --field-file or --poly")


def _curve(spec: str, cfg: RunConfig) -> elliptic.EllipticCurveQ:
    if "," in spec:
        try:
            return elliptic.EllipticCurveQ.from_ainvs(parse_int_list(spec, "curve"))
        except ReductionScopeError as e:
            raise ConfigError(str(e)) from None
    return cfg.get_curve(spec)


def _curve_json(E: elliptic.EllipticCurveQ) -> dict:
    return {"label": E.label, "ainvs": list(E.ainvs)}


# ---------------------------------------------------------------------------
# subcommands


def cmd_split(args, cfg):
    desc = _field(args, cfg)
    K = desc.field
    pattern = splitting_pattern(K, args.prime)
    sc = classify_split(pattern, K.degree)
    factors = []
    if not pattern.ramified:
        f = ffpoly.PolyModP(args.prime, K.defining_poly)
        factors = [(str(g), m) for g, m in ffpoly.factor_mod_p(f, seed=cfg.seed)]
    payload = {
        "field": desc.label,
        "p": args.prime,
        "degrees": list(pattern.degrees),
        "ramified": pattern.ramified,
        "split_class": sc.value,
        "factors": [{"factor": g, "multiplicity": m} for g, m in factors],
    }
    degs = "-".join(map(str, pattern.degrees)) or "ramified"
    _emit(args, payload, f"p={args.prime} degrees={degs} class={sc.value}")


def cmd_cm_classify(args, cfg):
    desc = _field(args, cfg)
    row = scan_prime(desc.field, args.prime, desc.k0, desc.other_rule)
    if row.excluded:
        raise ExcludedPrimeError(f"p={args.prime} is ramified in {desc.label}")
    payload = {
        "field": desc.label,
        "p": row.p,
        "degrees": list(row.degrees),
        "split_class": row.split_class.value,
        "inert_count": row.inert_count,
        "reduction_type": row.reduction.value,
    }
    _emit(args, payload, f"p={row.p} class={row.split_class.value} reduction={row.reduction.value}")


def cmd_scan(args, cfg):
    desc = _field(args, cfg)
    bound = args.bound or cfg.bound
    workers = args.workers or cfg.workers
    if bound < 2:
        raise ConfigError("bound must be >= 2")
    if args.no_cache:
        rows = scan_rows(desc.field, 2, bound, desc.k0, desc.other_rule, workers)
    else:
        rows = artifacts.cached_scan_rows(desc.field, bound, desc.k0, desc.other_rule, workers)
    report = DensityReport.from_rows(rows, bound, desc.label)
    out = Path(args.out or cfg.output_dir)
    out.mkdir(parents=True, exist_ok=True)
    csv_path, json_path = out / f"{desc.label}_scan.csv", out / f"{desc.label}_summary.json"
    artifacts.write_scan_csv(rows, csv_path)
    artifacts.write_summary(report, json_path)
    summary = report.to_summary()
    summary["csv"], summary["summary_json"] = str(csv_path), str(json_path)
    parts = " ".join(f"{k}={v['exact']}" for k, v in summary["split_fractions"].items())
    _emit(args, summary, f"{desc.label} bound={bound} primes={report.total} {parts}")


def cmd_density(args, cfg):
    if args.group_file:
        try:
            table = GroupClassTable.from_dict(load_yaml(args.group_file))
        except (KeyError, TypeError, ValueError) as e:
            raise ConfigError(f"bad group table: {e}") from None
    elif args.group:
        table = cfg.get_group(args.group)
    else:
        raise ConfigError("give --group or --group-file")
    hw, ordinary = gtr_density(table), ordinary_density(table)
    payload = {"group": table.name, "order": table.order, "hw": str(hw), "ord": str(ordinary)}
    _emit(args, payload, f"hw={hw} ord={ordinary}")


def cmd_ec_ap(args, cfg):
    E = _curve(args.curve, cfg)
    a = elliptic.ap(E, args.prime)
    payload = {"curve": _curve_json(E), "p": args.prime, "ap": a, "supersingular": a == 0}
    _emit(args, payload, str(a))


def cmd_ss_search(args, cfg):
    E = _curve(args.curve, cfg)
    res = elliptic.supersingular_search(E, args.bound, args.workers or cfg.workers)
    payload = {"curve": _curve_json(E), "bound": args.bound, "primes": list(res.primes), "bad_primes": list(res.bad_primes)}
    _emit(args, payload, " ".join(map(str, res.primes)))


def cmd_ss_common(args, cfg):
    if len(args.curve) != 2:
        raise ConfigError("ss-common needs exactly two --curve options")
    E1, E2 = (_curve(c, cfg) for c in args.curve)
    res = elliptic.common_supersingular(E1, E2, args.bound, args.workers or cfg.workers)
    payload = {
        "curves": [_curve_json(E1), _curve_json(E2)],
        "bound": args.bound,
        "primes": list(res.primes),
        "bad_primes": list(res.bad_primes),
    }
    _emit(args, payload, " ".join(map(str, res.primes)))


def cmd_product(args, cfg):
    if len(args.curve) != 2:
        raise ConfigError("product needs exactly two --curve options")
    E1, E2 = (_curve(c, cfg) for c in args.curve)
    verdict = elliptic.classify_product_surface(E1, E2, args.prime)
    payload = {"curves": [_curve_json(E1), _curve_json(E2)], "p": args.prime, "reduction_type": verdict.value}
    _emit(args, payload, verdict.value)


def _frac(x):
    return None if x is None else str(x)


def cmd_fermat(args, cfg):
    spec = FermatSpec(args.n, args.m)
    if args.densities:
        d = fermat_densities(spec)
        payload = {"n": args.n, "m": args.m, "ord": _frac(d.ord), "hw": str(d.hw), "nonhw": str(d.nonhw)}
        _emit(args, payload, f"{_frac(d.ord) or '?'}, {d.hw}, {d.nonhw}")
        return
    if args.prime is None:
        raise ConfigError("give --prime or --densities")
    ordinary, verdict = classify_fermat(spec, args.prime)
    payload = {"n": args.n, "m": args.m, "p": args.prime, "ordinary": ordinary, "reduction_type": verdict.value}
    shown = "unknown" if ordinary is None else str(ordinary).lower()
    _emit(args, payload, f"reduction={verdict.value} ordinary={shown}")


def _parse_valuations(text: str) -> list:
    out = []
    for tok in text.replace(" ", "").split(","):
        if tok in ("inf", "oo", "infinity"):
            out.append(polygons.INF)
        else:
            try:
                out.append(Fraction(tok))
            except ValueError:
                raise ConfigError(f"bad valuation {tok!r}") from None
    return list(enumerate(out))


def cmd_polygon(args, cfg):
    payload: dict = {}
    newton = hodge = None
    if args.valuations:
        newton = polygons.newton_polygon(_parse_valuations(args.valuations))
    elif args.coeffs:
        if args.prime is None:
            raise ConfigError("--coeffs needs --prime")
        newton = polygons.newton_polygon_of(parse_int_list(args.coeffs, "coeffs"), args.prime)
    if args.hodge:
        hodge = polygons.hodge_polygon(parse_int_list(args.hodge, "hodge"))
    if newton is None and hodge is None:
        raise ConfigError("give --valuations, --coeffs or --hodge")
    lines = []
    for name, poly in (("newton", newton), ("hodge", hodge)):
        if poly is not None:
            payload[name] = [[str(s), m] for s, m in poly.segments]
            lines.append(f"{name}: {poly}")
    if newton is not None and hodge is not None:
        above, same = polygons.lies_above(newton, hodge)
        payload["lies_above"], payload["same_endpoints"] = above, same
        lines.append(f"above={str(above).lower()} same_endpoints={str(same).lower()}")
    if newton is not None and args.abelian_dim:
        verdict = classify_abelian_from_slopes(newton, args.abelian_dim)
        payload["reduction_type"] = verdict.value
        lines.append(f"reduction={verdict.value}")
    _emit(args, payload, "\n".join(lines))


def cmd_repro(args, cfg):
    names = list(EXAMPLES) if args.name == "all" else [args.name]
    if any(n not in EXAMPLES for n in names):
        raise ConfigError(f"unknown example {args.name!r}; choose from {', '.join(EXAMPLES)} or all")
    results = [run_example(n, workers=args.workers or cfg.workers, bound=args.bound) for n in names]
    if args.json:
        print(json.dumps([r.to_dict() for r in results], sort_keys=True))
    else:
        for r in results:
            for c in r.checks:
                print(f"{'PASS' if c.passed else 'FAIL'} {r.name}: {c.name} ({c.detail})")
            print(f"{'PASS' if r.passed else 'FAIL'} {r.name} [{r.elapsed:.1f}s]")
    return 0 if all(r.passed for r in results) else 4


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="reduction-scope", description=__doc__.splitlines()[0])
    parser.add_argument("--config", help="YAML run configuration")
    parser.add_argument("--json", action="store_true", help="emit JSON instead of text")
    parser.add_argument("--workers", type=int, default=None)
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def field_args(p):
        p.add_argument("--field", help="built-in or configured field label")
        p.add_argument("--field-file", help="YAML field description")
        p.add_argument("--poly", help="defining polynomial, constant term first: '1,0,1'")
        p.add_argument("--k0-poly", help="totally real subfield polynomial")
        p.add_argument("--label")

    p = sub.add_parser("split", help="splitting pattern of a prime")
    field_args(p)
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(fn=cmd_split)

    p = sub.add_parser("cm-classify", help="reduction type of a CM abelian variety at a prime")
    field_args(p)
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(fn=cmd_cm_classify)

    p = sub.add_parser("scan", help="scan primes, write CSV and summary JSON")
    field_args(p)
    p.add_argument("--bound", type=int)
    p.add_argument("--out", help="output directory")
    p.add_argument("--no-cache", action="store_true")
    p.set_defaults(fn=cmd_scan)

    p = sub.add_parser("density", help="exact densities from a group class table")
    p.add_argument("--group")
    p.add_argument("--group-file")
    p.set_defaults(fn=cmd_density)

    p = sub.add_parser("ec-ap", help="trace of Frobenius a_p")
    p.add_argument("--curve", required=True, help="label or 'a1,a2,a3,a4,a6'")
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(fn=cmd_ec_ap)

    p = sub.add_parser("ss-search", help="supersingular primes of a curve")
    p.add_argument("--curve", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(fn=cmd_ss_search)

    p = sub.add_parser("ss-common", help="common supersingular primes of two curves")
    p.add_argument("--curve", action="append", required=True)
    p.add_argument("--bound", type=int, required=True)
    p.set_defaults(fn=cmd_ss_common)

    p = sub.add_parser("product", help="reduction type of a product of two elliptic curves")
    p.add_argument("--curve", action="append", required=True)
    p.add_argument("--prime", type=int, required=True)
    p.set_defaults(fn=cmd_product)

    p = sub.add_parser("fermat", help="Fermat hypersurface verdicts and densities")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--prime", type=int)
    p.add_argument("--densities", action="store_true")
    p.set_defaults(fn=cmd_fermat)

    p = sub.add_parser("polygon", help="Newton/Hodge polygons and the Mazur comparison")
    p.add_argument("--valuations", help="comma list, 'inf' for a zero coefficient")
    p.add_argument("--coeffs", help="integer coefficients, constant term first")
    p.add_argument("--prime", type=int)
    p.add_argument("--hodge", help="Hodge numbers h^0,h^1,...")
    p.add_argument("--abelian-dim", type=int, help="classify as H^1 of an abelian variety of this dimension")
    p.set_defaults(fn=cmd_polygon)

    p = sub.add_parser("repro", help="re-run a worked example")
    p.add_argument("name", help=f"one of {', '.join(EXAMPLES)}, or all")
    p.add_argument("--bound", type=int)
    p.set_defaults(fn=cmd_repro)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        cfg = load_config(args.config)
        if args.workers is not None and args.workers < 1:
            raise ConfigError("workers must be >= 1")
        return args.fn(args, cfg) or 0
    except ReductionScopeError as e:
        print(f"error kind={e.kind} reason={str(e).splitlines()[0] if str(e) else type(e).__name__}", file=sys.stderr)
        return e.exit_code


if __name__ == "__main__":
    sys.exit(main())
