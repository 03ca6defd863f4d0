"""Command line harness.

Subcommands: groebner, invariants, exterior, verify {A|B|C}, suite,
oracle.  Each consumes a scenario file, writes a certificate next to the
input (or to --out), prints one line per verdict, and exits with:
0 all pass, 1 identity-check failure, 2 input error, 3 hypothesis
violation, 4 resource limit.
"""

import argparse
import json
import sys

from .errors import HypothesisViolation, InputError, ResourceLimitError
from .harness import (EXIT_CHECK_FAILED, EXIT_HYPOTHESIS, EXIT_INPUT,
                      EXIT_PASS, EXIT_RESOURCE, run_scenario)
from .ring import Ring
from .scenario import Scenario

_KIND_FOR_COMMAND = {
    "groebner": ("groebner",),
    "invariants": ("invariant",),
    "exterior": ("exterior-lemma", "exterior-corollary"),
    "oracle": ("oracle",),
}


def _parse_ring(text):
    parts = text.split(":")
    if len(parts) not in (2, 3):
        raise InputError("--ring expects p:r[:order]")
    try:
        p, r = int(parts[0]), int(parts[1])
    except ValueError:
        raise InputError("--ring expects integer p:r")
    order = parts[2] if len(parts) == 3 else "grevlex"
    return Ring(p, r, order)


def _apply_limits(scenario, text):
    if not text:
        return
    for item in text.split(","):
        if "=" not in item:
            raise InputError("--limits expects key=value pairs, e.g. degree=40")
        key, _, value = item.partition("=")
        key = key.strip()
        if key == "degree":
            scenario.limits.degree = int(value)
        elif key == "gb":
            scenario.limits.gb = int(value)
        elif key == "seconds":
            scenario.limits.seconds = float(value)
        else:
            raise InputError(f"unknown limit {key!r}")


def _emit(cert, scenario_path, out, as_json):
    target = out
    if target is None and scenario_path is not None:
        target = scenario_path + ".cert.json"
    if target is not None:
        cert.save(target)
    if as_json:
        sys.stdout.write(cert.canonical_text())
    else:
        for name in sorted(cert.verdicts):
            status = "PASS" if cert.verdicts[name] else "FAIL"
            print(f"{status} {name}")
        if not cert.verdicts:
            print("ok (no verdicts; data-only certificate)")
        if target is not None:
            print(f"certificate: {target}")
    return EXIT_PASS if cert.passed else EXIT_CHECK_FAILED


def _run_file(path, allowed_kinds, out, as_json, limits=None):
    scn = Scenario.load(path)
    if allowed_kinds and scn.kind not in allowed_kinds:
        raise InputError(
            f"scenario kind {scn.kind!r} not valid here (expected {allowed_kinds})")
    _apply_limits(scn, limits)
    cert = run_scenario(scn)
    return _emit(cert, path, out, as_json)


def main(argv=None):
    parser = argparse.ArgumentParser(
        prog="extquot",
        description="exterior-quotient certificates over F_p[x1..xr]")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true",
                        help="print the certificate as canonical JSON")
    common.add_argument("--out", help="certificate output path")
    common.add_argument("--limits",
                        help="ceiling overrides, e.g. degree=40,gb=500,seconds=60")
    sub = parser.add_subparsers(dest="command", required=True)

    for name in ("groebner", "invariants", "exterior", "oracle"):
        sp = sub.add_parser(name, parents=[common])
        sp.add_argument("scenario")

    spv = sub.add_parser("verify", parents=[common])
    spv.add_argument("which", choices=["A", "B", "C"])
    spv.add_argument("scenario")

    sps = sub.add_parser("suite", parents=[common])
    sps.add_argument("--kind", default="exterior-corollary",
                     choices=["exterior-corollary", "theorem-A", "cor53", "groebner"])
    sps.add_argument("--count", type=int, default=10)
    sps.add_argument("--seed", type=int, default=0)
    sps.add_argument("--ring", default="5:2:grevlex", help="p:r[:order]")

    args = parser.parse_args(argv)
    try:
        if args.command == "suite":
            ring = _parse_ring(args.ring)
            scn = Scenario("random-suite", ring,
                           {"suite": args.kind, "count": args.count},
                           seed=args.seed)
            _apply_limits(scn, args.limits)
            cert = run_scenario(scn)
            code = _emit(cert, None, args.out, args.json)
            if not args.json:
                print(json.dumps(cert.data["summary"]))
            return code
        if args.command == "verify":
            kind = {"A": "theorem-A", "B": "theorem-B", "C": "theorem-C"}[args.which]
            return _run_file(args.scenario, (kind,), args.out, args.json,
                             args.limits)
        return _run_file(args.scenario, _KIND_FOR_COMMAND[args.command],
                         args.out, args.json, args.limits)
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except HypothesisViolation as exc:
        print(f"{exc}", file=sys.stderr)
        return EXIT_HYPOTHESIS
    except ResourceLimitError as exc:
        print(f"resource limit: {exc}", file=sys.stderr)
        return EXIT_RESOURCE


if __name__ == "__main__":
    sys.exit(main())
