"""Command-line interface.

    biquadfl <command> [--config FILE] [--out FILE] [--seed N]
                       [--precision N] [--depth N] [--level N]

Commands (all consume the same configuration shape, see config.py):

  inv          invariant polynomial of the configured pair
  rss-check    regular-semisimplicity verdict (exit 0 iff regular)
  match        synthesize the matched split-side quadruple
  orbital12    plain double-coset count for the configured pair
  orbital03    weighted coset sum on the matched split-side pair
  intersect    deformation-length intersection number (division configs)
  verify-bfl   value comparison at s = 0 (matrix configs)
  verify-abfl  derivative comparison at s = 0 (division configs)
  identities   randomized structural-identity suite (needs no config)

Every command writes one JSON report -- to stdout, or to --out FILE -- and
exits 0 when every verdict in the report passes, 1 when the computation
succeeded but some verdict failed, 2 on configuration errors, 3 on domain
errors (inputs outside the supported mathematics), 4 on compute errors
(depth/precision exhaustion and friends).  Reports are deterministic for a
fixed (config, seed) apart from the elapsed_s timing field; the flag
BIQUADFL_PRECISION in the environment supplies a default --precision.
"""

import argparse
import json
import os
import sys
import time

from fractions import Fraction

from . import fl
from .config import RunConfig
from .errors import (ComputeError, ConfigError, DepthCapReached,
                     DomainError)
from .integrate import (EtaChar, HeckeFunction, IntersectionResult,
                        LaurentQS, StratumReport, check_functional_equation,
                        intersection_number, orbital_03, orbital_12)
from .invariant import invariant_polynomial, is_regular_semisimple
from .localfield import QSqrt, Scalar


# ---------------------------------------------------------------------------
# Report plumbing
# ---------------------------------------------------------------------------

def _jsonify(obj):
    """Exact objects -> JSON-safe structures (rationals become strings)."""
    if isinstance(obj, bool) or obj is None or isinstance(obj, (int, str)):
        return obj
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, float):  # suite timings only
        return obj
    if isinstance(obj, Scalar):
        return obj.literal()
    if isinstance(obj, (QSqrt, LaurentQS, IntersectionResult, StratumReport,
                        HeckeFunction)):
        return obj.to_json()
    if isinstance(obj, dict):
        return {str(k): _jsonify(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonify(v) for v in obj]
    return repr(obj)


def _pretty_invariant(rep):
    """Render Inv(T) as a plain string when every coefficient lies in the
    base field; None otherwise."""
    lits = []
    for z in rep.inv[:-1]:
        if not z[1].is_zero():
            return None
        lits.append(z[0])
    h = rep.h
    out = ["T" if h == 1 else "T^%d" % h]
    for k in range(h - 1, -1, -1):
        c = lits[k]
        if c.is_zero():
            continue
        lit = c.literal()
        sign, body = (" - ", lit[1:]) if lit.startswith("-") else (" + ", lit)
        mon = "" if k == 0 else ("T" if k == 1 else "T^%d" % k)
        if mon:
            if body == "1":
                body = mon
            elif any(ch in body for ch in "+-/("):
                body = "(%s)*%s" % (body, mon)
            else:
                body = "%s*%s" % (body, mon)
        out.append(sign + body)
    return "".join(out)


# ---------------------------------------------------------------------------
# Commands
# ---------------------------------------------------------------------------

def _cmd_inv(cfg, args):
    rep = invariant_polynomial(cfg.context())
    is_regular_semisimple(rep)
    return {"invariant": rep.to_json(), "pretty": _pretty_invariant(rep),
            "ok": True}


def _cmd_rss_check(cfg, args):
    rep = invariant_polynomial(cfg.context())
    rss = is_regular_semisimple(rep)
    return {"invariant": rep.to_json(), "rss": bool(rss), "ok": bool(rss)}


def _cmd_match(cfg, args):
    quad = fl.build_matching_pair(cfg.context())
    return {"quadruple": quad.to_json(), "ok": True}


def _cmd_orbital12(cfg, args):
    value = orbital_12(cfg.context(), cfg.hecke())
    return {"f": cfg.hecke().to_json(), "value": str(value), "ok": True}


def _cmd_orbital03(cfg, args):
    quad = fl.build_matching_pair(cfg.context())
    f = cfg.hecke()
    fe = check_functional_equation(quad.ctx03, f, quad.eta)
    P = fe["poly"]
    return {"f": f.to_json(), "orbital": P.to_json(),
            "value_at_0": str(P.value_at_0()),
            "deriv_over_log_q": str(P.deriv_over_log_q()),
            "deriv_over_log_q2": str(P.deriv_over_log_q2()),
            "functional_equation": {"m0": fe["m0"], "eps": fe["eps"],
                                    "ok": fe["ok"]},
            "eta_ramified": quad.eta.ramified,
            "ok": fe["ok"]}


def _cmd_intersect(cfg, args):
    ctx_div = cfg.context()
    if ctx_div.B.kind != "division":
        raise DomainError("intersect needs a division-algebra configuration")
    ctx_mat = fl.integral_matrix_pair(ctx_div.diagram)
    res = intersection_number(ctx_div, ctx_mat, m=cfg.options["level"],
                              depth_cap=cfg.options["depth"])
    return {"intersection": res.to_json(), "ok": True}


def _cmd_verify_bfl(cfg, args):
    quad = fl.build_matching_pair(cfg.context())
    rep = fl.verify_bfl(quad, f=cfg.f)
    rep["quadruple"] = quad.to_json()
    return rep


def _cmd_verify_abfl(cfg, args):
    quad = fl.build_matching_pair(cfg.context())
    rep = fl.verify_abfl(quad, depth_cap=cfg.options["depth"])
    rep["quadruple"] = quad.to_json()
    rep["orbital"] = rep["orbital"].to_json()
    rep["intersection_detail"] = rep["intersection_detail"].to_json()
    return rep


def _cmd_identities(args):
    seed = args.seed if args.seed is not None else 0
    suite = fl.verify_identity_suite(seed=seed, count=args.count)
    return {"suite": suite, "options": {"seed": seed, "count": args.count},
            "ok": suite["ok"]}


_CONFIG_COMMANDS = {
    "inv": _cmd_inv,
    "rss-check": _cmd_rss_check,
    "match": _cmd_match,
    "orbital12": _cmd_orbital12,
    "orbital03": _cmd_orbital03,
    "intersect": _cmd_intersect,
    "verify-bfl": _cmd_verify_bfl,
    "verify-abfl": _cmd_verify_abfl,
}

_HELP = {
    "inv": "invariant polynomial of the configured pair",
    "rss-check": "regular-semisimplicity check (exit 0 iff regular)",
    "match": "synthesize the matched split-side quadruple",
    "orbital12": "double-coset count for the configured pair",
    "orbital03": "weighted coset sum on the matched split-side pair",
    "intersect": "intersection number for a division configuration",
    "verify-bfl": "compare count and weighted sum at s = 0",
    "verify-abfl": "compare derivative at s = 0 and intersection number",
    "identities": "randomized structural-identity suite",
}


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="biquadfl",
        description="exact invariant / orbital / intersection calculator")
    sub = parser.add_subparsers(dest="command", required=True)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", metavar="FILE",
                        help="write the JSON report to FILE instead of "
                             "stdout")
    common.add_argument("--seed", type=int, default=None,
                        help="seed for randomized suites")
    common.add_argument("--precision", type=int, default=None,
                        help="display/certificate precision override")
    common.add_argument("--depth", type=int, default=None,
                        help="depth cap for the stratified integrator")
    common.add_argument("--level", type=int, default=None,
                        help="congruence level m for intersect")
    for name in _CONFIG_COMMANDS:
        sp = sub.add_parser(name, parents=[common], help=_HELP[name])
        sp.add_argument("--config", required=True, metavar="FILE",
                        help="JSON run configuration")
    sp = sub.add_parser("identities", parents=[common],
                        help=_HELP["identities"])
    sp.add_argument("--count", type=int, default=200,
                    help="number of sampled configurations (default 200)")
    return parser


def _effective_precision(args):
    if args.precision is not None:
        return args.precision
    env = os.environ.get("BIQUADFL_PRECISION")
    if env is None:
        return None
    try:
        return int(env)
    except ValueError:
        raise ConfigError("BIQUADFL_PRECISION must be an integer, got %r"
                          % env)


def run_command(argv=None):
    """Parse argv, run one command, write its JSON report.  Returns the
    exit code (0 pass, 1 verdict failed, 2/3/4 config/domain/compute)."""
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:  # --help or argparse usage error
        return int(e.code or 0)
    t0 = time.monotonic()
    report = {"command": args.command}
    try:
        if args.command == "identities":
            report.update(_cmd_identities(args))
        else:
            cfg = RunConfig.load(args.config, seed=args.seed,
                                 depth=args.depth, level=args.level,
                                 precision=_effective_precision(args))
            report["config"] = cfg.to_json()
            report.update(_CONFIG_COMMANDS[args.command](cfg, args))
        code = 0 if report.get("ok", True) else 1
    except DepthCapReached as e:
        report.update({"error": "ComputeError", "kind": type(e).__name__,
                       "message": str(e), "ok": False})
        if getattr(e, "partial_value", None) is not None:
            report["partial_value"] = e.partial_value.to_json()
        if getattr(e, "report", None) is not None:
            report["strata"] = e.report.to_json()
        code = 4
    except ConfigError as e:
        report.update({"error": "ConfigError", "kind": type(e).__name__,
                       "message": str(e), "ok": False})
        code = 2
    except DomainError as e:
        report.update({"error": "DomainError", "kind": type(e).__name__,
                       "message": str(e), "ok": False})
        code = 3
    except ComputeError as e:
        report.update({"error": "ComputeError", "kind": type(e).__name__,
                       "message": str(e), "ok": False})
        partial = getattr(e, "partial", None)
        if partial is not None:
            report["partial"] = _jsonify(partial)
        code = 4
    report["elapsed_s"] = round(time.monotonic() - t0, 3)
    text = json.dumps(_jsonify(report), sort_keys=True, indent=2) + "\n"
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return code


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
