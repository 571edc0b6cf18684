"""Command-line front end.

Every subcommand prints one JSON report (sorted keys) on stdout.  Exit
codes: 0 success, 2 unreadable or malformed input, 3 a precondition of
the requested operation fails, 4 anything else.
"""

import argparse
import json
import sys
import time
from fractions import Fraction
from pathlib import Path

from . import __version__
from .alexander import alexander_polynomial, elementary_ideal_gcd, torres_check
from .errors import InputError, InvalidConfig, PreconditionError
from .family import FamilyConfig, Regime, build_family, choose_prime, classify
from .groups import mu_table, pi2_mod_pi3
from .link import InfectionSite, linking_matrix, parse_pd, to_pd
from .satellite import infect, pattern, validate_site, verify_homology_invariance
from .signature import (SeifertMatrix, arf, builtin, lt_signature, parse_omega, rho_integral,
                        rho_zp, signature_profile)

EXIT_OK, EXIT_PARSE, EXIT_PRECONDITION, EXIT_INTERNAL = 0, 2, 3, 4


class UnreadableInput(InputError):
    pass


def _read(path):
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UnreadableInput(f"cannot read {path}: {exc.strerror or exc}") from None


def _load_link(path):
    return parse_pd(_read(path))


def _write(path, text):
    try:
        Path(path).write_text(text)
    except OSError as exc:
        raise UnreadableInput(f"cannot write {path}: {exc.strerror or exc}") from None


# ----------------------------------------------------------------------
# subcommands

def cmd_invariants(args):
    d = _load_link(args.path)
    delta = alexander_polynomial(d)
    L = linking_matrix(d)
    out = {
        "components": d.m,
        "crossings": d.crossing_count,
        "alexander_polynomial": delta.to_text(),
        "alexander_at_one": delta.augmentation(),
        "linking_matrix": L.tolist(),
        "elementary_ideals_gcd": {str(k): elementary_ideal_gcd(d, k).to_text()
                                  for k in range(args.ideals + 1)},
    }
    if d.m >= 2:
        out["pi2_mod_pi3"] = str(pi2_mod_pi3(L))
        out["milnor"] = {"".join(map(str, k)): v.to_json()
                         for k, v in sorted(mu_table(d).items())}
    if d.m == 2:
        out["torres"] = torres_check(d)
    return out


def cmd_classify(args):
    return classify(_load_link(args.path)).to_json()


def cmd_family(args):
    d = _load_link(args.path)
    verdict = classify(d)
    route = args.route
    if route is None:
        if verdict.regime == Regime.NILPOTENT_ROUTE:
            route = "nilpotent"
        elif verdict.regime == Regime.BLANCHFIELD_ROUTE:
            route = "blanchfield"
        else:
            raise InvalidConfig(f"link is in regime {verdict.regime}; no family route applies")
    p = args.p if args.p is not None else (choose_prime(verdict) if route == "nilpotent" else 2)
    N = args.N if args.N is not None else max(1, len(d.sites))
    cfg = FamilyConfig(args.R, p, N, args.count, args.pattern)
    cert = build_family(cfg, route)
    if args.out:
        _write(args.out, cert.dumps() + "\n")
    return {"classification": verdict.to_json(), "certificate": cert.to_json(),
            "certificate_file": args.out}


def _parse_site(text):
    vals = [int(v) for v in text.replace("[", "").replace("]", "").split(",") if v.strip()]
    if not vals or any(v == 0 for v in vals):
        raise InvalidConfig(f"bad site {text!r}; give signed edge labels such as -7,9")
    return InfectionSite(tuple((abs(v), 1 if v > 0 else -1) for v in vals))


def cmd_infect(args):
    d = _load_link(args.path)
    if args.site:
        site = _parse_site(args.site)
    elif d.sites:
        site = d.sites[0]
    else:
        raise InvalidConfig("no site given and none recorded in the file")
    validate_site(d, site)
    J = pattern(args.pattern)
    out_d = infect(d, site, J)
    text = to_pd(out_d)
    out = {"site": site.text(), "pattern": args.pattern,
           "null_homologous": site.null_homologous(d),
           "crossings_before": d.crossing_count, "crossings_after": out_d.crossing_count}
    if args.out:
        _write(args.out, text)
        out["output_file"] = args.out
    else:
        out["pd"] = text
    if args.verify:
        out["verification"] = verify_homology_invariance(d, site, J).to_json()
    return out


def cmd_signature(args):
    if args.builtin:
        V = builtin(args.builtin)
        source = args.builtin
    elif args.matrix:
        V = SeifertMatrix.parse(_read(args.matrix))
        source = args.matrix
    else:
        raise InvalidConfig("give a matrix file or --builtin NAME")
    prof = signature_profile(V, args.convention)
    out = {
        "source": source,
        "convention": args.convention,
        "alexander_polynomial": V.alexander().to_text(),
        "arf": arf(V),
        "jumps": [j.label() for j in prof.jumps] +
                 [j.label(mirror=True) for j in reversed(prof.jumps)],
        "arcs": [[a, b, v] for a, b, v in prof.arcs()],
    }
    if args.omega:
        out["signature"] = {args.omega: lt_signature(V, parse_omega(args.omega), args.convention)}
    if args.rho is not None:
        out["rho_zp"] = rho_zp(V, args.rho, args.convention, profile=prof).to_json()
    if args.rho_integral:
        out["rho_integral"] = rho_integral(V, args.convention, profile=prof).to_json()
    if args.plot:
        _write(args.plot, prof.to_svg())
        out["plot"] = args.plot
    if args.csv:
        _write(args.csv, prof.to_csv())
        out["csv"] = args.csv
    return out


# ----------------------------------------------------------------------
# parser

def _rational(text):
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def build_parser():
    ap = argparse.ArgumentParser(prog="concordia", description=__doc__.splitlines()[0])
    ap.add_argument("--version", action="version", version=f"concordia {__version__}")
    ap.add_argument("--timing", action="store_true", help="include wall-clock time in the report")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("invariants", help="Alexander data, linking, nilpotent quotient, Milnor invariants")
    p.add_argument("path")
    p.add_argument("--ideals", type=int, default=1, help="highest elementary ideal index (default 1)")
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("classify", help="regime of a link")
    p.add_argument("path")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("family", help="build and certify a family of patterns")
    p.add_argument("path")
    p.add_argument("--R", type=_rational, required=True, help="bound on the 3-manifold term")
    p.add_argument("--p", type=int, help="prime (nilpotent route); default from the quotient")
    p.add_argument("--N", type=int, help="number of satellite curves (default: sites in the file)")
    p.add_argument("--count", type=int, default=3)
    p.add_argument("--route", choices=["nilpotent", "blanchfield"])
    p.add_argument("--pattern", default="trefoil_rh", help="builtin Seifert matrix of the pattern")
    p.add_argument("--out", help="write the certificate JSON here")
    p.set_defaults(func=cmd_family)

    p = sub.add_parser("infect", help="tie a knot into a link along a site")
    p.add_argument("path")
    p.add_argument("--site", help="signed edges in arc order, e.g. -7,9 (default: first Site in file)")
    p.add_argument("--pattern", default="trefoil")
    p.add_argument("--verify", action="store_true")
    p.add_argument("--out", help="write the infected diagram here")
    p.set_defaults(func=cmd_infect)

    p = sub.add_parser("signature", help="Levine-Tristram signature profile and averages")
    p.add_argument("matrix", nargs="?", help="file holding a Seifert matrix")
    p.add_argument("--builtin")
    p.add_argument("--convention", choices=["paper", "classical"], default="paper")
    p.add_argument("--omega", help="evaluate at a point: 1/3 (turn) or cos:3/4")
    p.add_argument("--rho", type=int, metavar="P")
    p.add_argument("--rho-integral", action="store_true")
    p.add_argument("--plot", metavar="OUT_SVG")
    p.add_argument("--csv", metavar="OUT_CSV")
    p.set_defaults(func=cmd_signature)
    return ap


def _error(command, exc, code):
    report = {"command": command, "error": {"type": type(exc).__name__, "message": str(exc)},
              "exit_code": code}
    line = getattr(exc, "line", None)
    if line is not None:
        report["error"]["line"] = line
        report["error"]["column"] = exc.column
    print(json.dumps(report, sort_keys=True, indent=2))
    print(f"concordia: {type(exc).__name__}: {exc}", file=sys.stderr)
    return code


def main(argv=None):
    args = build_parser().parse_args(argv)
    start = time.perf_counter()
    try:
        results = args.func(args)
    except InputError as exc:
        return _error(args.command, exc, EXIT_PARSE)
    except PreconditionError as exc:
        return _error(args.command, exc, EXIT_PRECONDITION)
    except Exception as exc:  # noqa: BLE001 - reported as an internal error
        return _error(args.command, exc, EXIT_INTERNAL)
    report = {"command": args.command, "input": getattr(args, "path", None) or
              getattr(args, "builtin", None) or getattr(args, "matrix", None),
              "results": results, "version": __version__}
    if args.timing:
        report["timing_seconds"] = round(time.perf_counter() - start, 6)
    print(json.dumps(report, sort_keys=True, indent=2))
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
