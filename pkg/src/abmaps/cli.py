"""Command-line interface: ``abmaps <command> ...``.

Exit codes: 0 success, 2 a precondition or input problem, 3 a search budget ran out.
"""
from __future__ import annotations

import argparse
import csv
import json
import math
import os
import sys
from fractions import Fraction
from pathlib import Path

from . import __version__
from .asym import BoundCurveRow, region
from .delsarte import theta_s_distance_graph, verify_dual, verify_primal
from .errors import CertificateError, DomainError, PreconditionError
from .exact import SpectrumPoly, fmt_rat, int_ratio_check, parse_rat
from .graphs import (HOMOMORPHIC, STRONG, HammingGraphSpec, find_homomorphism,
                     independence_number, odd_girth, parse_spec, turan_lower_bound,
                     closed_walk_count)
from .maps import (MapTable, count_violating_pairs, distance_profile, linear_map,
                   majority_map, repetition_map, separation_map, verify_map)
from .product_lp import (BiSpectrumPoly, DomainSets, compose_lemma1_certificate,
                         theta_s_product, verify_bi_dual, verify_bi_primal)
from .projective import (VARIANTS, ProjectiveConfig, check_ab_condition, fano_config,
                         find_bad_hyperplane, generator_from_config, hyperplane_stats)

EXIT_OK, EXIT_PRECONDITION, EXIT_UNDECIDED = 0, 2, 3


class UsageError(Exception):
    pass


def _dec(q) -> str:
    return format(float(q), ".17g")


def _emit(obj, out) -> None:
    out.write(json.dumps(obj, sort_keys=True, indent=2) + "\n")


def _rats(seq) -> list[str]:
    return [fmt_rat(v) for v in seq]


# ---- theta ----

def _theta_payload(res, graph: str) -> dict:
    return {
        "kind": "theta",
        "graph": graph,
        "n": res.n,
        "edge_distances": list(res.edge_distances),
        "value": fmt_rat(res.value),
        "decimal": _dec(res.value),
        "primal_values": _rats(res.primal_values),
        "primal_spectrum": _rats(res.primal.coeffs),
        "dual_spectrum": _rats(res.dual.coeffs),
    }


def cmd_theta(args, out) -> int:
    spec = HammingGraphSpec(args.n, args.d, args.complement)
    res = theta_s_distance_graph(spec.n, spec.edge_distances())
    payload = _theta_payload(res, str(spec))
    if args.dump:
        Path(args.dump).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    _emit(payload, out)
    return EXIT_OK


def _ab(args, k: int, n: int) -> tuple[int, int]:
    if args.alpha is not None:
        a = int_ratio_check(parse_rat(args.alpha), k, "alpha*k")
    elif args.a is not None:
        a = args.a
    else:
        raise UsageError("give --a or --alpha")
    if args.beta is not None:
        b = int_ratio_check(parse_rat(args.beta), n, "beta*n")
    elif args.b is not None:
        b = args.b
    else:
        raise UsageError("give --b or --beta")
    return a, b


def cmd_theta_product(args, out) -> int:
    a, b = _ab(args, args.k, args.n)
    res = theta_s_product(args.k, a, args.n, b, args.kind)
    payload = {
        "kind": "theta-product",
        "graph": str(res.domain.graph()),
        "k": args.k, "a": a, "n": args.n, "b": b, "product_kind": args.kind,
        "value": fmt_rat(res.value),
        "decimal": _dec(res.value),
        "primal_values": [_rats(r) for r in res.primal_values],
        "dual_spectrum": [_rats(r) for r in res.dual.coeffs],
    }
    if args.dump:
        Path(args.dump).write_text(json.dumps(payload, sort_keys=True, indent=2) + "\n")
    _emit(payload, out)
    return EXIT_OK


# ---- graph searches ----

def cmd_alpha(args, out) -> int:
    spec = parse_spec(args.graph)
    res = independence_number(spec, args.budget)
    _emit({
        "graph": str(spec),
        "alpha": res.size,
        "exact": res.exact,
        "witness": list(res.witness),
        "nodes": res.nodes,
        "turan_lower_bound": fmt_rat(turan_lower_bound(spec)),
    }, out)
    return EXIT_OK if res.exact else EXIT_UNDECIDED


def _girth_str(g) -> str:
    return "inf" if g == math.inf else str(g)


def cmd_hom_search(args, out) -> int:
    src = HammingGraphSpec(args.k, args.a, True)
    dst = HammingGraphSpec(args.n, args.b, True)
    res = find_homomorphism(src, dst, args.budget)
    payload = {
        "source": str(src),
        "target": str(dst),
        "status": res.status,
        "nodes": res.nodes,
        "odd_girth_source": _girth_str(odd_girth(src)),
        "odd_girth_target": _girth_str(odd_girth(dst)),
    }
    if res.map is not None:
        payload["map"] = json.loads(res.map.to_json())
        if args.out:
            res.map.save(args.out)
    _emit(payload, out)
    return EXIT_UNDECIDED if res.status == "UNDECIDED" else EXIT_OK


def cmd_odd_cycle(args, out) -> int:
    spec = parse_spec(args.graph)
    out.write(f"{_girth_str(odd_girth(spec))}\n")
    return EXIT_OK


def cmd_walks(args, out) -> int:
    out.write(f"{fmt_rat(closed_walk_count(args.n, args.d, args.m))}\n")
    return EXIT_OK


# ---- region ----

def _cell(v) -> str:
    return "" if v is None else _dec(v)


def cmd_region(args, out) -> int:
    rows = region(args.rho, args.beta_step)
    if args.meta:
        out.write(f"# abmaps {__version__} rho={args.rho} beta_step={args.beta_step}\n")
    w = csv.writer(out, lineterminator="\n")
    cols = BoundCurveRow.columns()
    w.writerow(cols)
    for row in rows:
        w.writerow([_cell(getattr(row, c)) for c in cols])
    return EXIT_OK


# ---- maps ----

def _bits_list(text: str) -> list[str]:
    return [t.strip() for t in text.split(",") if t.strip()]


def _generator(text: str):
    rows = _bits_list(text)
    if not rows or len({len(r) for r in rows}) != 1:
        raise UsageError("generator rows must be comma-separated bit strings of equal length")
    return [[int(c) for c in r] for r in rows]


def cmd_map_new(args, out) -> int:
    if args.construction == "repetition":
        f = repetition_map(args.k, args.rho)
    elif args.construction == "majority":
        f = majority_map(args.k)
    elif args.construction == "linear":
        f = linear_map(_generator(args.generator))
    else:
        centers = _bits_list(args.centers) if args.centers else None
        f = separation_map(args.k, args.n, args.radius, _bits_list(args.codebook), args.b, centers)
    text = f.to_json()
    if args.out:
        f.save(args.out)
    out.write(text + "\n")
    return EXIT_OK


def cmd_map_verify(args, out) -> int:
    f = MapTable.load(args.file)
    a, b = _ab(args, f.k, f.n)
    out.write("OK\n" if verify_map(f, a, b) else "FAIL\n")
    return EXIT_OK


def cmd_map_profile(args, out) -> int:
    f = MapTable.load(args.file)
    prof = distance_profile(f)
    _emit({"k": f.k, "n": f.n, "profile": [_girth_str(v) for v in prof.profile]}, out)
    return EXIT_OK


def cmd_map_violations(args, out) -> int:
    f = MapTable.load(args.file)
    a, b = _ab(args, f.k, f.n)
    subset = None
    if args.subset:
        subset = [int(s, 0) for s in _bits_list(args.subset)]
    out.write(f"{count_violating_pairs(f, a, b, subset)}\n")
    return EXIT_OK


# ---- projective ----

def _config(args) -> ProjectiveConfig:
    if getattr(args, "fano", False):
        return fano_config()
    if not args.file:
        raise UsageError("give --file or --fano")
    return ProjectiveConfig.load(args.file)


def cmd_projective_stats(args, out) -> int:
    cfg = _config(args)
    w = csv.writer(out, lineterminator="\n")
    w.writerow(["hyperplane", "Z_u", "Z_v"])
    for st in hyperplane_stats(cfg):
        w.writerow([st.hyperplane, st.Z_u, st.Z_v])
    return EXIT_OK


def _stats_dict(st):
    return None if st is None else {"hyperplane": st.hyperplane, "Z_u": st.Z_u, "Z_v": st.Z_v}


def cmd_projective_check(args, out) -> int:
    cfg = _config(args)
    a, b = _ab(args, cfg.k, cfg.n)
    res = check_ab_condition(cfg, a, b, args.variant)
    payload = {"ok": res.ok, "reason": res.reason, "witness": _stats_dict(res.witness)}
    if args.bad_hyperplane:
        payload["bad_hyperplane"] = _stats_dict(find_bad_hyperplane(cfg, a, b))
    out.write(("OK" if res.ok else "FAIL") + "\n")
    _emit(payload, out)
    return EXIT_OK


def cmd_projective_fano(args, out) -> int:
    cfg = fano_config()
    G = generator_from_config(cfg)
    if args.out:
        Path(args.out).write_text(cfg.to_json() + "\n")
    _emit({"config": json.loads(cfg.to_json()),
           "generator": ["".join(str(int(v)) for v in row) for row in G]}, out)
    return EXIT_OK


# ---- certificates ----

def _load_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, ValueError) as exc:
        raise DomainError(f"cannot read certificate {path}: {exc}") from exc


def cmd_lp_certify(args, out) -> int:
    if args.strong_product:
        G, H = (parse_spec(s) for s in args.strong_product)
        if not (isinstance(G, HammingGraphSpec) and isinstance(H, HammingGraphSpec)):
            raise UsageError("--strong-product takes two Hamming graph specs")
        cert = compose_lemma1_certificate(G, H, args.psd_method)
        _emit({
            "G": str(G), "H": str(H),
            "theta_G_complement": fmt_rat(cert.theta_G_complement),
            "theta_H": fmt_rat(cert.theta_H),
            "c1": fmt_rat(cert.c1), "c2": fmt_rat(cert.c2),
            "bound": fmt_rat(cert.bound), "decimal": _dec(cert.bound),
            "psd_method": cert.psd_method,
            "psd_min": fmt_rat(min(cert.psd_transcript)),
        }, out)
        return EXIT_OK
    if not args.file:
        raise UsageError("give a certificate file or --strong-product G H")
    data = _load_json(args.file)
    try:
        kind = data["kind"]
        claimed = parse_rat(data["value"])
        if kind == "theta":
            n, E = int(data["n"]), [int(e) for e in data["edge_distances"]]
            value = verify_primal(n, E, [parse_rat(v) for v in data["primal_values"]])
            bound = verify_dual(n, E, SpectrumPoly(n, tuple(parse_rat(v) for v in data["dual_spectrum"])))
        elif kind == "theta-product":
            dom = DomainSets(int(data["k"]), int(data["a"]), int(data["n"]), int(data["b"]),
                             data["product_kind"])
            value = verify_bi_primal(dom, [[parse_rat(v) for v in r] for r in data["primal_values"]])
            dual = BiSpectrumPoly(dom.k, dom.n, tuple(tuple(parse_rat(v) for v in r)
                                                      for r in data["dual_spectrum"]))
            bound = verify_bi_dual(dom, dual)
        else:
            raise DomainError(f"unknown certificate kind {kind!r}")
    except (KeyError, TypeError) as exc:
        raise DomainError(f"malformed certificate: missing or bad field {exc}") from exc
    if not value == bound == claimed:
        raise CertificateError(f"claimed {fmt_rat(claimed)}, primal {fmt_rat(value)}, dual {fmt_rat(bound)}")
    out.write(f"OK {fmt_rat(value)}\n")
    return EXIT_OK


# ---- parser ----

def _add_ab(p, integer_help: str = "") -> None:
    p.add_argument("--a", type=int, help="input distance a = alpha*k" + integer_help)
    p.add_argument("--b", type=int, help="output distance b = beta*n")
    p.add_argument("--alpha", help="alpha as a rational, e.g. 2/3")
    p.add_argument("--beta", help="beta as a rational, e.g. 3/4")


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="abmaps", description=__doc__.splitlines()[0])
    p.add_argument("--version", action="version", version=f"abmaps {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("theta", help="exact theta_S of H(n,d) or its complement")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--complement", action="store_true")
    s.add_argument("--dump", help="write the certificate JSON here")
    s.set_defaults(func=cmd_theta)

    s = sub.add_parser("theta-product", help="bivariate LP for Hc(k,a) ltimes Hc(n,b) or Hc(k,a) boxtimes H(n,b)")
    s.add_argument("--k", type=int, required=True)
    s.add_argument("--n", type=int, required=True)
    _add_ab(s)
    s.add_argument("--kind", choices=[HOMOMORPHIC, STRONG], default=HOMOMORPHIC)
    s.add_argument("--dump", help="write the certificate JSON here")
    s.set_defaults(func=cmd_theta_product)

    s = sub.add_parser("alpha", help="exact independence number")
    s.add_argument("--graph", required=True, help="e.g. 'H(4,3)' or 'Hc(3,2) ltimes Hc(4,3)'")
    s.add_argument("--budget", type=int, default=10_000_000)
    s.set_defaults(func=cmd_alpha)

    s = sub.add_parser("hom-search", help="search a homomorphism Hc(k,a) -> Hc(n,b)")
    for name in ("k", "a", "n", "b"):
        s.add_argument(name, type=int)
    s.add_argument("--budget", type=int, default=10_000_000)
    s.add_argument("--out", help="save a found map as JSON")
    s.set_defaults(func=cmd_hom_search)

    s = sub.add_parser("odd-cycle", help="odd girth of a graph")
    s.add_argument("--graph", required=True)
    s.set_defaults(func=cmd_odd_cycle)

    s = sub.add_parser("walks", help="closed walks of length m at a vertex of Hc(n,d)")
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--d", type=int, required=True)
    s.add_argument("--m", type=int, required=True)
    s.set_defaults(func=cmd_walks)

    s = sub.add_parser("region", help="CSV of region bound curves")
    s.add_argument("--rho", required=True, help="n/k, e.g. 3 or 1/3")
    s.add_argument("--beta-step", type=float, default=0.01)
    s.add_argument("--meta", action="store_true", help="prefix a version comment line")
    s.set_defaults(func=cmd_region)

    m = sub.add_parser("map", help="build and inspect explicit maps").add_subparsers(dest="map_cmd", required=True)
    s = m.add_parser("new")
    s.add_argument("construction", choices=["repetition", "majority", "separation", "linear"])
    s.add_argument("--k", type=int)
    s.add_argument("--n", type=int)
    s.add_argument("--rho", type=int, default=1)
    s.add_argument("--radius", type=int, help="cover radius (separation)")
    s.add_argument("--b", type=int, help="required codebook separation (separation)")
    s.add_argument("--codebook", help="comma-separated bit strings")
    s.add_argument("--centers", help="comma-separated cover centres (default: greedy)")
    s.add_argument("--generator", help="comma-separated generator rows, e.g. 1001,0101,0011")
    s.add_argument("--out")
    s.set_defaults(func=cmd_map_new)
    s = m.add_parser("verify")
    s.add_argument("--file", required=True)
    _add_ab(s)
    s.set_defaults(func=cmd_map_verify)
    s = m.add_parser("profile")
    s.add_argument("--file", required=True)
    s.set_defaults(func=cmd_map_profile)
    s = m.add_parser("violations")
    s.add_argument("--file", required=True)
    _add_ab(s)
    s.add_argument("--subset", help="comma-separated inputs as integers (0b... allowed)")
    s.set_defaults(func=cmd_map_violations)

    pr = sub.add_parser("projective", help="point configurations in P^(m-1)(F_2)").add_subparsers(
        dest="proj_cmd", required=True)
    for name, func in (("stats", cmd_projective_stats), ("check", cmd_projective_check)):
        s = pr.add_parser(name)
        s.add_argument("--file")
        s.add_argument("--fano", action="store_true", help="use the built-in Fano configuration")
        if name == "check":
            _add_ab(s)
            s.add_argument("--variant", choices=VARIANTS, default="map")
            s.add_argument("--bad-hyperplane", action="store_true")
        s.set_defaults(func=func)
    s = pr.add_parser("fano")
    s.add_argument("--out")
    s.set_defaults(func=cmd_projective_fano)

    s = sub.add_parser("lp-certify", help="re-verify a dumped certificate, or compose a product one")
    s.add_argument("file", nargs="?")
    s.add_argument("--strong-product", nargs=2, metavar=("G", "H"))
    s.add_argument("--psd-method", choices=["ldl", "characters"])
    s.set_defaults(func=cmd_lp_certify)
    return p


def run(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args, out)
    except (DomainError, PreconditionError, CertificateError, UsageError, OSError) as exc:
        print(f"abmaps {args.command}: error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION


def main(argv=None) -> None:
    try:
        code = run(argv)
        sys.stdout.flush()
    except BrokenPipeError:
        # reader went away (e.g. piped into head)
        os.dup2(os.open(os.devnull, os.O_WRONLY), sys.stdout.fileno())
        code = EXIT_OK
    sys.exit(code)


if __name__ == "__main__":
    main()
