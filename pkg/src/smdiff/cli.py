"""Command line surface: verification runs and ad hoc inspection.

Exit codes for `smdiff verify`: 0 when every selected check passes, 1 when
any check fails, 2 when any check is indeterminate (and none failed), 64 for
usage errors such as unknown check ids.  `smdiff inspect` exits 65 on invalid
discriminants.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys

from .config import Config
from .discriminants import class_profile, factor_discriminant, reduced_forms, scan
from .errors import InvalidDiscriminant, UnsupportedTarget
from .jfun import (
    all_singular_moduli,
    class_polynomial,
    dominant_singular_modulus,
)
from .verifier import CHECKS, run_all

EXIT_PASS = 0
EXIT_FAIL = 1
EXIT_INDETERMINATE = 2
EXIT_USAGE = 64
EXIT_BAD_DISCRIMINANT = 65

_FILTER_TOKEN = re.compile(
    r"^(h|ambiguous_count|two_elementary|almost_two_elementary|conductor|"
    r"fundamental|abs_delta|delta|and|or|not|True|False|\d+|[-+*/%()<>=! ])+$"
)


def _compile_filter(expr: str):
    """Compile a restricted boolean expression over class profile fields."""
    if not _FILTER_TOKEN.match(expr):
        raise ValueError(f"disallowed token in filter expression: {expr!r}")
    code = compile(expr, "<filter>", "eval")

    def predicate(profile):
        names = {
            "h": profile.h,
            "ambiguous_count": profile.ambiguous_count,
            "two_elementary": profile.two_elementary,
            "almost_two_elementary": profile.almost_two_elementary,
            "conductor": profile.delta.conductor,
            "fundamental": profile.delta.fundamental,
            "abs_delta": profile.delta.abs_value,
            "delta": profile.delta.value,
        }
        return bool(eval(code, {"__builtins__": {}}, names))

    return predicate


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="smdiff")
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run verification checks")
    verify.add_argument("--all", action="store_true", help="run every check")
    verify.add_argument(
        "--check", action="append", default=[], metavar="ID",
        help="check id to run (repeatable); see --list",
    )
    verify.add_argument("--list", action="store_true", help="list check ids and exit")
    verify.add_argument("--precision-bits", type=int, default=None)
    verify.add_argument("--precision-cap", type=int, default=None)
    verify.add_argument("--jobs", type=int, default=None)
    verify.add_argument("--report", metavar="PATH", default=None)
    verify.add_argument("--cache-dir", metavar="DIR", default=None)

    inspect = sub.add_parser("inspect", help="print exact or certified data")
    isub = inspect.add_subparsers(dest="subcommand", required=True)

    forms = isub.add_parser("forms", help="reduced forms of a discriminant")
    forms.add_argument("delta", type=int)

    classpoly = isub.add_parser("classpoly", help="class polynomial")
    classpoly.add_argument("delta", type=int)
    classpoly.add_argument("--precision-bits", type=int, default=None)

    ev = isub.add_parser("eval", help="certified singular modulus values")
    ev.add_argument("delta", type=int)
    group = ev.add_mutually_exclusive_group()
    group.add_argument("--all", action="store_true", help="all moduli (default)")
    group.add_argument("--dominant", action="store_true", help="dominant modulus only")
    ev.add_argument("--precision-bits", type=int, default=None)

    sc = isub.add_parser("scan", help="stream discriminants matching a filter")
    sc.add_argument("--max-abs", type=int, required=True)
    sc.add_argument("--filter", default="True", metavar="EXPR")
    sc.add_argument("--jobs", type=int, default=None)

    return parser


def _make_config(args) -> Config:
    kwargs = {}
    if getattr(args, "precision_bits", None) is not None:
        kwargs["precision_bits"] = args.precision_bits
    if getattr(args, "precision_cap", None) is not None:
        kwargs["precision_cap"] = args.precision_cap
    if getattr(args, "jobs", None) is not None:
        kwargs["jobs"] = args.jobs
    if getattr(args, "report", None) is not None:
        kwargs["report_path"] = args.report
    cache_dir = getattr(args, "cache_dir", None)
    if cache_dir is not None:
        kwargs["cache_dir"] = cache_dir
        os.environ["SMDIFF_CACHE_DIR"] = cache_dir
    return Config(**kwargs)


def _cmd_verify(args) -> int:
    if args.list:
        for cid in CHECKS:
            print(cid)
        return EXIT_PASS
    if not args.all and not args.check:
        print("verify: select checks with --all or --check ID", file=sys.stderr)
        return EXIT_USAGE
    unknown = [cid for cid in args.check if cid not in CHECKS]
    if unknown:
        print(f"verify: unknown check id(s): {', '.join(unknown)}", file=sys.stderr)
        return EXIT_USAGE
    config = _make_config(args)
    reports = run_all(config, None if args.all else args.check)

    for report in reports:
        line = f"[{report.status.upper():>5}] {report.check_id}"
        line += f"  candidates={report.candidate_count}"
        line += f"  elapsed={report.elapsed_ms}ms"
        print(line)

    if config.report_path:
        payload = {
            "version": 1,
            "checks": [r.to_json_dict() for r in reports],
            "config": config.to_json_dict(),
        }
        with open(config.report_path, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")

    statuses = {r.status for r in reports}
    if "fail" in statuses:
        return EXIT_FAIL
    if "indeterminate" in statuses:
        return EXIT_INDETERMINATE
    return EXIT_PASS


def _format_value(value) -> str:
    re_mid, re_rad = value.re_mid, value.re_rad
    im_mid, im_rad = value.im_mid, value.im_rad
    out = f"{float(re_mid):.15g} (+- {float(re_rad):.3g})"
    if im_mid != 0 or im_rad != 0:
        out += f" + [{float(im_mid):.15g} (+- {float(im_rad):.3g})]*i"
    return out


def _cmd_inspect(args) -> int:
    try:
        if args.subcommand == "forms":
            for form in reduced_forms(args.delta):
                marks = []
                if form.principal:
                    marks.append("principal")
                if form.ambiguous:
                    marks.append("ambiguous")
                suffix = f"  [{', '.join(marks)}]" if marks else ""
                print(f"({form.a}, {form.b}, {form.c}){suffix}")
        elif args.subcommand == "classpoly":
            config = _make_config(args)
            print(class_polynomial(args.delta, config.precision_bits))
        elif args.subcommand == "eval":
            config = _make_config(args)
            if args.dominant:
                values = [dominant_singular_modulus(args.delta, config.precision_bits)]
            else:
                values = all_singular_moduli(args.delta, config.precision_bits)
            for v in values:
                tags = []
                if v.dominant:
                    tags.append("dominant")
                if v.real_class:
                    tags.append("real")
                tag = f"  [{', '.join(tags)}]" if tags else ""
                print(f"{v.form.as_tuple()}: {_format_value(v.value)}{tag}")
        elif args.subcommand == "scan":
            try:
                predicate = _compile_filter(args.filter)
            except ValueError as exc:
                print(f"scan: {exc}", file=sys.stderr)
                return EXIT_USAGE
            jobs = args.jobs if args.jobs else 1
            profile_pred = lambda p: predicate(p)
            for d in scan(args.max_abs, profile_pred, jobs=jobs):
                print(d.value)
    except InvalidDiscriminant as exc:
        print(f"inspect: {exc}", file=sys.stderr)
        return EXIT_BAD_DISCRIMINANT
    except UnsupportedTarget as exc:
        print(f"inspect: {exc}", file=sys.stderr)
        return EXIT_USAGE
    return EXIT_PASS


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    if args.command == "verify":
        return _cmd_verify(args)
    return _cmd_inspect(args)


if __name__ == "__main__":
    sys.exit(main())
