"""Command-line front end.

Selectors are ``name`` or ``name:key=value,...``; unimodular parameters
(``omega``, ``angle``) are given in turns, so ``omega=0.5`` means -1.
"""
from __future__ import annotations

import argparse
import datetime as _dt
import json
import math
import os
import sys

import numpy as np

from . import suite as _suite
from ._serial import jsonable
from .domains import Domain, sample, samples_to_csv
from .errors import LempertError, NumericalFailure
from .geodesics import (
    BallAxis,
    BallFamily,
    BidiscGraph,
    BlaschkeMultiplier,
    ConstantMultiplier,
    Diagonal,
    Flat,
    IdentityMultiplier,
    Royal,
)
from .inverses import (
    BallRefined,
    BallSimple,
    BidiscAffine,
    BidiscFamily,
    BidiscProjection,
    ConstantH,
    CoordinateH,
    ProductH,
    PsiOmega,
    RoyalMinusPsi,
    RoyalPhi,
)
from .lempertize import LempertCandidate, build_inverse, combine, field_from_inverse
from .metrics import caratheodory_star, lempert_star
from .verify import (
    BallVertical,
    LinearG2,
    RoyalApproach,
    aggregate_report,
    boundary_probe,
    duality_residual,
    fiber_affinity,
    inverse_agreement,
    kernel_constancy,
    left_inverse_residual,
    range_supremum,
    uniqueness_audit,
)

SCHEMA = 1
OUTPUT_DIR_ENV = "LEMPERTKIT_OUTPUT_DIR"
EXIT_PASS, EXIT_FAIL, EXIT_USAGE, EXIT_NUMERIC = 0, 1, 2, 3


class SelectorError(ValueError):
    pass


# -- selector parsing ---------------------------------------------------------------------------

def parse_selector(text: str):
    """``"family:t=0.5,h=const:0.3"`` -> ``("family", {"t": "0.5", "h": "const:0.3"})``."""
    name, _, rest = text.strip().partition(":")
    params = {}
    if rest:
        # split on commas that start a new key=value pair
        parts = []
        for chunk in rest.split(","):
            if "=" in chunk.split(":", 1)[0] or not parts:
                parts.append(chunk)
            else:
                parts[-1] += "," + chunk
        for part in parts:
            key, eq, value = part.partition("=")
            if not eq or not key:
                raise SelectorError(f"malformed parameter {part!r} in selector {text!r}")
            params[key.strip()] = value.strip()
    return name.strip().lower(), params


def _num(params, key, default=None):
    if key not in params:
        if default is None:
            raise SelectorError(f"missing parameter {key!r}")
        return default
    try:
        return float(params.pop(key))
    except ValueError as exc:
        raise SelectorError(f"parameter {key!r} is not a number") from exc


def _turns(params, key, default=0.0):
    return complex(np.exp(2j * np.pi * _num(params, key, default)))


def _done(params, name):
    if params:
        raise SelectorError(f"unknown parameter(s) {sorted(params)} for {name!r}")


def _complex(params, key):
    return complex(_num(params, key, 0.0), _num(params, key + "_im", 0.0))


def parse_geodesic(text: str):
    name, p = parse_selector(text)
    if name == "diagonal":
        g = Diagonal()
    elif name == "graph":
        if "const" in p:
            psi = ConstantMultiplier(_num(p, "const"))
        elif "blaschke" in p:
            psi = BlaschkeMultiplier(_complex(p, "blaschke"))
        else:
            psi = IdentityMultiplier()
        g = BidiscGraph(psi)
    elif name == "royal":
        g = Royal()
    elif name == "flat":
        g = Flat(_complex(p, "beta"))
    elif name in ("ball-family", "ballfamily"):
        g = BallFamily(_num(p, "t", 1.0))
    elif name in ("ball-axis", "ballaxis"):
        g = BallAxis()
    else:
        raise SelectorError(f"unknown geodesic {name!r}")
    _done(p, name)
    return g


def parse_h(text: str):
    name, _, arg = text.partition(":")
    name = name.strip().lower()
    try:
        if name == "const":
            return ConstantH(float(arg or 0))
        if name == "coord":
            return CoordinateH(int(arg or 1))
        if name == "product":
            return ProductH()
    except ValueError as exc:
        raise SelectorError(f"bad h specification {text!r}") from exc
    raise SelectorError(f"unknown h {text!r}; use const:<c>, coord:<1|2> or product")


def parse_inverse(text: str):
    name, p = parse_selector(text)
    if name == "phi":
        G = RoyalPhi()
    elif name == "psi":
        G = PsiOmega(_num(p, "r", 1.0) * _turns(p, "omega"))
    elif name in ("royal-minus-psi", "minus-psi"):
        G = RoyalMinusPsi(_turns(p, "omega"))
    elif name == "projection":
        G = BidiscProjection(int(_num(p, "axis", 1.0)))
    elif name == "affine":
        G = BidiscAffine(_num(p, "t", 0.5))
    elif name == "family":
        h = parse_h(p.pop("h", "const:0"))
        G = BidiscFamily(_num(p, "t", 0.5), h)
    elif name in ("ball-simple", "ballsimple"):
        G = BallSimple()
    elif name in ("ball-refined", "ballrefined"):
        G = BallRefined()
    else:
        raise SelectorError(f"unknown inverse {name!r}")
    _done(p, name)
    return G


def parse_path(text: str):
    name, p = parse_selector(text)
    if name == "royal":
        path = RoyalApproach(_turns(p, "angle"))
    elif name in ("linear-g2", "linear"):
        path = LinearG2(_num(p, "c", 0.5))
    elif name in ("ball-vertical", "vertical"):
        path = BallVertical(_complex(p, "a"))
    else:
        raise SelectorError(f"unknown path {name!r}")
    _done(p, name)
    return path


def parse_domain(text: str) -> Domain:
    try:
        return Domain(text.strip().lower())
    except ValueError as exc:
        raise SelectorError(f"unknown domain {text!r}") from exc


def parse_point(d: Domain, text: str):
    """``"re1,im1,re2,im2"`` (or ``"re,im"`` on the disc)."""
    try:
        vals = [float(x) for x in text.split(",")]
    except ValueError as exc:
        raise SelectorError(f"bad point {text!r}") from exc
    if len(vals) != 2 * d.dim:
        raise SelectorError(f"{d.value} points need {2 * d.dim} real numbers")
    z = np.array(vals[0::2]) + 1j * np.array(vals[1::2])
    return z[0] if d.dim == 1 else z


# -- commands ---------------------------------------------------------------------------------

def cmd_verify(args):
    f, G = parse_geodesic(args.geodesic), parse_inverse(args.inverse)
    reports = []
    for check in args.check:
        if check == "residual":
            reports.append(left_inverse_residual(f, G, args.grid, args.fit, args.tolerance))
        elif check == "fiber":
            reports.append(fiber_affinity(f, G, tolerance=args.tolerance or 1e-9))
        elif check == "range":
            reports.append(range_supremum(G, f.codomain, args.samples, args.seed))
    return reports


def _reference_for(f, v):
    """The closed-form Lempert inverse expected from a diagonal field, if known."""
    if isinstance(f, Diagonal):
        return BidiscAffine(float(np.clip(np.real(v(0.0)[0]), 0, 1)))
    return None


def cmd_lempertize(args):
    f = parse_geodesic(args.geodesic)
    v = field_from_inverse(parse_inverse(args.from_inverse), f)
    if args.combine_with:
        v = combine(v, field_from_inverse(parse_inverse(args.combine_with), f), args.t)
    c = LempertCandidate(f, v)
    H = build_inverse(c)
    reports = [kernel_constancy(v, args.grid)] if v.normalized else []
    z = sample(f.codomain, args.samples, args.seed)
    reports.append(uniqueness_audit([c], z))
    reports.append(duality_residual(f, v, H, args.samples, args.seed))
    ref = parse_inverse(args.compare) if args.compare else _reference_for(f, v)
    if ref is not None:
        reports.append(inverse_agreement(H, ref, args.samples, args.seed, args.tolerance or 1e-8))
    return reports


def cmd_probe(args):
    return [boundary_probe(parse_inverse(args.inverse), parse_path(args.path), args.len,
                           args.expected, args.tolerance or 1e-6)]


def cmd_distance(args):
    d = parse_domain(args.domain)
    w, z = parse_point(d, args.w), parse_point(d, args.z)
    c, l = caratheodory_star(d, w, z), lempert_star(d, w, z)
    metrics = {"caratheodory_star": c.value_star, "lempert_star": l.value_star,
               "gap": abs(c.value_star - l.value_star), "witness_recheck": l.recheck(w, z)}
    rep = aggregate_report("distance", {"domain": d, "w": w, "z": z,
                                        "caratheodory": {"method": c.method, "witness": c.witness},
                                        "lempert": {"method": l.method, "witness": l.witness}},
                           metrics, {"gap": ("<", 1e-8), "witness_recheck": ("<", 1e-9)})
    return [rep]


def cmd_sample(args):
    d = parse_domain(args.domain)
    pts = sample(d, args.n, args.seed)
    rep = aggregate_report("sample", {"domain": d, "n": args.n},
                           {"n_points": len(pts)}, {})
    rep.seed = args.seed
    rep.samples = pts
    rep.domain = d
    return [rep]


def cmd_suite(args):
    results = _suite.run_suite(args.seed, args.only, args.jobs)
    for r in results:
        print(r.line(), file=sys.stderr)
    return results


COMMANDS = {"verify": cmd_verify, "lempertize": cmd_lempertize, "probe": cmd_probe,
            "distance": cmd_distance, "sample": cmd_sample, "suite": cmd_suite}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lempertkit", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, samples=1000):
        p.add_argument("--seed", type=int, default=42)
        p.add_argument("--grid", type=int, default=64)
        p.add_argument("--samples", type=int, default=samples)
        p.add_argument("--tolerance", type=float, default=None)
        p.add_argument("--output", "-o", default=None, help="report path (default: stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        return p

    p = common(sub.add_parser("verify", help="left-inverse, fiber and range checks"), 100_000)
    p.add_argument("--geodesic", required=True)
    p.add_argument("--inverse", required=True)
    p.add_argument("--fit", action="store_true", help="fit a disc automorphism before comparing")
    p.add_argument("--check", action="append", choices=("residual", "fiber", "range"))

    p = common(sub.add_parser("lempertize", help="build the inverse defined by a covector field"))
    p.add_argument("--geodesic", required=True)
    p.add_argument("--from-inverse", required=True)
    p.add_argument("--combine-with", default=None, help="second inverse; the field is (1-t) v0 + t v1")
    p.add_argument("--t", type=float, default=0.5)
    p.add_argument("--compare", default=None, help="reference inverse for the agreement check")

    p = common(sub.add_parser("probe", help="boundary values along a path"))
    p.add_argument("--inverse", required=True)
    p.add_argument("--path", required=True)
    p.add_argument("--len", type=int, default=12)
    p.add_argument("--expected", type=float, default=None)

    p = common(sub.add_parser("distance", help="Caratheodory and Lempert distances"))
    p.add_argument("--domain", required=True)
    p.add_argument("--w", required=True, help="re1,im1,re2,im2")
    p.add_argument("--z", required=True, help="re1,im1,re2,im2")

    p = common(sub.add_parser("sample", help="seeded domain samples"))
    p.add_argument("--domain", required=True)
    p.add_argument("--n", type=int, default=1000)

    p = common(sub.add_parser("suite", help="run the acceptance suite"))
    p.add_argument("--only", default=None, help="criterion keys or tags, comma separated")
    p.add_argument("--jobs", type=int, default=1)
    return parser


def _finite(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return None
    if isinstance(obj, dict):
        return {k: _finite(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [_finite(v) for v in obj]
    return obj


def render(args, results, timestamp=None) -> str:
    config = {k: v for k, v in vars(args).items() if k not in ("output", "format")}
    if args.command == "suite":
        reports = [r.to_dict() for c in results for r in c.reports]
        extra = {"criteria": [{"key": c.key, "title": c.title, "pass": c.passed, "error": c.error}
                              for c in results]}
        passed = all(c.passed for c in results)
    else:
        reports = [r.to_dict() for r in results]
        extra = {}
        passed = all(r.passed for r in results)
    doc = {"schema": SCHEMA, "command": args.command, "config": jsonable(config),
           "reports": reports, **extra, "pass": passed,
           "timestamp": timestamp or _dt.datetime.now(_dt.timezone.utc).isoformat()}
    return json.dumps(_finite(jsonable(doc)), indent=2) + "\n"


def render_csv(args, results) -> str:
    if args.command == "sample":
        rep = results[0]
        return samples_to_csv(rep.domain, rep.samples)
    reports = [r for c in results for r in c.reports] if args.command == "suite" else results
    for r in reports:
        if r.per_point:
            return r.per_point_csv()
    rows = ["check_name,metric,value"]
    rows += [f"{r.check_name},{k},{v!r}" for r in reports for k, v in r.metrics.items()]
    return "\n".join(rows) + "\n"


def _resolve_output(path):
    if path is None or os.path.isabs(path):
        return path
    base = os.environ.get(OUTPUT_DIR_ENV)
    return os.path.join(base, path) if base else path


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify" and args.check is None:
        args.check = ["residual"]
    try:
        results = COMMANDS[args.command](args)
    except NumericalFailure as exc:
        print(f"numerical failure: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (SelectorError, LempertError, ValueError) as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    text = render(args, results) if args.format == "json" else render_csv(args, results)
    out = _resolve_output(args.output)
    if out is None:
        sys.stdout.write(text)
    else:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args.command == "suite" and any(c.error for c in results):
        return EXIT_NUMERIC
    return EXIT_PASS if all(c.passed for c in results) else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
