"""Command-line interface: ``brunnian <subcommand> ...``.

Exit codes: 0 success, 1 usage error, 2 domain error, 3 verification
inconclusive (some check returned Unknown).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction
from pathlib import Path

from .errors import BrunnianError, DomainError, ParseError

EXIT_OK, EXIT_USAGE, EXIT_DOMAIN, EXIT_UNKNOWN = 0, 1, 2, 3


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(f"{self.format_usage()}{self.prog}: error: {message}")


# ---------------------------------------------------------------- helpers


def _csv(rows, header):
    out = io.StringIO()
    w = csv.writer(out, lineterminator="\n")
    w.writerow(header)
    for r in rows:
        w.writerow([r[h] for h in header])
    return out.getvalue()


def _json(obj):
    return json.dumps(obj, indent=2, sort_keys=False) + "\n"


def _table(rows, header):
    cells = [[str(r[h]) for h in header] for r in rows]
    widths = [max(len(h), *(len(c[i]) for c in cells)) if cells else len(h)
              for i, h in enumerate(header)]
    lines = ["  ".join(h.rjust(w) for h, w in zip(header, widths))]
    lines += ["  ".join(c.rjust(w) for c, w in zip(row, widths)) for row in cells]
    return "\n".join(lines) + "\n"


def _emit(fmt, rows, header):
    if fmt == "csv":
        return _csv(rows, header)
    if fmt == "json":
        return _json(rows)
    return _table(rows, header)


def _family(args_family, args_rest):
    from .families import parse_family

    if ":" in args_family:
        if args_rest:
            raise ParseError("give either FAMILY:ARGS or FAMILY ARGS, not both")
        return parse_family(args_family)
    return parse_family(f"{args_family}:{' '.join(args_rest)}")


def _slug(spec):
    return spec.label().replace("(", "_").replace(")", "").replace(",", "_")


# ---------------------------------------------------------------- subcommands


def _cmd_lob(args):
    from .lobachevsky import lobachevsky_pi

    text = args.angle.strip()
    try:
        frac = Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise ParseError(f"angle must be P/Q (meaning P*pi/Q), got {text!r}") from None
    val = lobachevsky_pi(frac.numerator, frac.denominator)
    row = {"p": frac.numerator, "q": frac.denominator,
           "value": f"{val.value:.15f}", "error_bound": f"{val.abs_error_bound:.1e}"}
    if args.format == "text":
        return f"Lambda({frac.numerator}*pi/{frac.denominator}) = {row['value']}" \
               f"  (error <= {row['error_bound']})\n"
    return _emit(args.format, [row], list(row))


def _cmd_vol(args):
    from .polyhedra import (REFERENCE, antiprism_volume, brunnian_upper_bound,
                            ln_complement_volume)

    lo = args.n
    hi = args.to if args.to is not None else lo
    if hi < lo:
        raise DomainError("--to must be >= --n")
    index = "m" if args.family == "antiprism" else "n"
    func = {"antiprism": antiprism_volume, "Ln": ln_complement_volume,
            "beta": brunnian_upper_bound}[args.family]
    rows = []
    for k in range(lo, hi + 1):
        value, err = func(k, with_error=True)
        row = {index: k, "volume": f"{value:.10f}", "error_bound": f"{err:.1e}"}
        if args.check:
            key = f"vol_A{k}" if args.family == "antiprism" else ("vol_L2" if k == 2 else None)
            ref = REFERENCE.get(key) if key else None
            row["reference"] = "" if ref is None else f"{ref:.6f}"
            row["abs_deviation"] = "" if ref is None else f"{abs(value - ref):.2e}"
        rows.append(row)
    return _emit(args.format, rows, list(rows[0]))


def _cmd_skel(args):
    from .polyhedra import antiprism_skeleton, pn_skeleton

    sk = antiprism_skeleton(args.size) if args.kind == "antiprism" else pn_skeleton(args.size)
    sk.check()
    census = sk.face_census()
    summary = {"kind": args.kind, "size": args.size, "V": sk.V, "E": sk.E, "F": sk.F,
               "euler": sk.euler_characteristic(),
               "census": {str(k): v for k, v in census.items()}}
    if args.format == "json":
        summary["faces"] = [list(f) for f in sk.faces]
        summary["labels"] = {str(v): t for v, t in sorted(sk.labels.items())}
        return _json(summary)
    if args.format == "csv":
        rows = [{"face_size": k, "count": v} for k, v in census.items()]
        return _csv(rows, ["face_size", "count"])
    head = (f"{args.kind} {args.size}: V={sk.V} E={sk.E} F={sk.F} "
            f"Euler={sk.euler_characteristic()}\n")
    head += "faces: " + ", ".join(f"{v} x {k}-gon" for k, v in census.items()) + "\n"
    return head + sk.to_adjacency_text()


def _diagram_payload(spec, d):
    from .diagram import gauss_code

    return {"family": spec.label(), "components": d.component_count(),
            "crossings": [list(x) for x in d.crossings], "signs": list(d.signs),
            "free_circles": d.free_circles, "gauss": gauss_code(d)}


def _cmd_gen(args):
    from .diagram import gauss_text, pd_text
    from .families import build, family_program

    spec = _family(args.family, args.args)
    if args.code == "program":
        return family_program(spec)
    d = build(spec)
    if args.format == "json":
        return _json(_diagram_payload(spec, d))
    if args.format == "csv":
        rows = [{"crossing": i + 1, "a": a, "b": b, "c": c, "d": e, "sign": s}
                for i, ((a, b, c, e), s) in enumerate(zip(d.crossings, d.signs))]
        return _csv(rows, ["crossing", "a", "b", "c", "d", "sign"])
    return gauss_text(d) if args.code == "gauss" else pd_text(d)


def _report_payload(report):
    payload = report.as_dict()
    for entry, verdict in zip(payload["sublinks"], report.sublinks):
        entry["certificate"] = [m.to_json() for m in verdict.certificate]
    return payload


def _cmd_verify(args):
    from .invariants import verify_brunnian

    spec = _family(args.family, args.args)
    if spec.family != "Br":
        raise DomainError("verify takes a Br spec")
    report = verify_brunnian(spec, max_steps=args.budget)
    if args.format == "json":
        out = _json(_report_payload(report))
    elif args.format == "csv":
        rows = [dict(zip(("key", "value"), line.split("=", 1)))
                for line in report.to_kv().splitlines()]
        out = _csv(rows, ["key", "value"])
    else:
        out = report.to_text()
    return out, (EXIT_OK if report.certified else EXIT_UNKNOWN)


def _census_payload(spec, census):
    return {"family": spec.label(), "regions": census.as_rows(),
            "sizes": census.sizes(),
            "traversals_per_component": {str(k): v for k, v in sorted(census.per_component.items())},
            "all_regions_at_least_6": census.all_regions_at_least(6)}


def _cmd_census(args):
    from .families import build
    from .invariants import twist_region_census

    spec = _family(args.family, args.args)
    census = twist_region_census(build(spec))
    if args.format == "json":
        return _json(_census_payload(spec, census))
    rows = [{"region": r["region"], "size": r["size"],
             "components": " ".join(map(str, r["components"]))} for r in census.as_rows()]
    if args.format == "csv":
        return _csv(rows, ["region", "size", "components"])
    out = f"{spec.label()}: {len(rows)} twist regions\n" + _table(rows, ["region", "size", "components"])
    per = ", ".join(f"{k}: {v}" for k, v in sorted(census.per_component.items()))
    out += f"traversals per component: {per}\n"
    out += f"every region has >= 6 crossings: {'yes' if census.all_regions_at_least(6) else 'no'}\n"
    return out


def _cmd_export(args):
    from .diagram import gauss_text, pd_text
    from .families import build, family_program
    from .invariants import twist_region_census, verify_brunnian

    spec = _family(args.family, args.args)
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    stem = _slug(spec)
    d = build(spec)
    files = {
        f"{stem}.pd": pd_text(d),
        f"{stem}.gauss": gauss_text(d),
        f"{stem}.slices": family_program(spec),
        f"{stem}.census.json": _json(_census_payload(spec, twist_region_census(d))),
    }
    code = EXIT_OK
    if args.verify:
        if spec.family != "Br":
            raise DomainError("--verify needs a Br spec")
        report = verify_brunnian(spec, max_steps=args.budget)
        files[f"{stem}.verify.json"] = _json(_report_payload(report))
        code = EXIT_OK if report.certified else EXIT_UNKNOWN
    for name, body in files.items():
        (out_dir / name).write_text(body)
    listing = "".join(f"{out_dir / name}\n" for name in files)
    return listing, code


# ---------------------------------------------------------------- parser


def build_parser():
    p = _Parser(prog="brunnian", description="Brunnian link families: volumes, diagrams, certificates.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def fmt(sp):
        sp.add_argument("--format", choices=("text", "csv", "json"), default="text")

    def family_args(sp):
        sp.add_argument("family", help="Ln, Lpn or Br (or FAMILY:ARGS)")
        sp.add_argument("args", nargs="*", help="n, or k1,k2,... for Br")

    sp = sub.add_parser("lob", help="Lobachevsky function at P*pi/Q")
    sp.add_argument("angle", help="P/Q, meaning P*pi/Q")
    fmt(sp)

    sp = sub.add_parser("vol", help="volume tables")
    sp.add_argument("--family", choices=("antiprism", "Ln", "beta"), required=True)
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--to", type=int)
    sp.add_argument("--check", action="store_true", help="add reference values and deviations")
    fmt(sp)

    sp = sub.add_parser("skel", help="polyhedral skeletons")
    sp.add_argument("kind", choices=("antiprism", "Pn"))
    sp.add_argument("size", type=int)
    fmt(sp)

    sp = sub.add_parser("gen", help="PD or Gauss code of a family member")
    family_args(sp)
    sp.add_argument("--code", choices=("pd", "gauss", "program"), default="pd")
    fmt(sp)

    sp = sub.add_parser("verify", help="certify Br(k1,...,kn) is Brunnian")
    family_args(sp)
    sp.add_argument("--budget", type=int, help="simplifier step budget (default: $BRUNNIAN_BUDGET or 10000)")
    fmt(sp)

    sp = sub.add_parser("census", help="twist-region census")
    family_args(sp)
    fmt(sp)

    sp = sub.add_parser("export", help="write codes and reports to files")
    family_args(sp)
    sp.add_argument("--out", required=True, help="output directory")
    sp.add_argument("--verify", action="store_true", help="also write the verification report")
    sp.add_argument("--budget", type=int)
    return p


_COMMANDS = {"lob": _cmd_lob, "vol": _cmd_vol, "skel": _cmd_skel, "gen": _cmd_gen,
             "verify": _cmd_verify, "census": _cmd_census, "export": _cmd_export}


def run(argv=None, stdout=None, stderr=None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        stderr.write(str(exc) + "\n")
        return EXIT_USAGE
    except SystemExit as exc:  # --help
        return EXIT_OK if not exc.code else EXIT_USAGE
    if getattr(args, "budget", None) is not None and args.budget < 1:
        stderr.write("brunnian: error: --budget must be positive\n")
        return EXIT_USAGE
    try:
        result = _COMMANDS[args.command](args)
    except (BrunnianError, ValueError) as exc:
        stderr.write(f"brunnian: error: {exc}\n")
        return EXIT_DOMAIN
    out, code = result if isinstance(result, tuple) else (result, EXIT_OK)
    stdout.write(out)
    return code


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
