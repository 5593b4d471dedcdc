"""Command-line front end.

Exit codes: 0 success, 1 a requested check failed or a certificate is
unproved, 2 usage or input error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import catalog, certify, tables
from .classify import classify
from .errors import CriterionInapplicable, ModquotError
from .groups import BlockPartition, parse_group
from .picard import FullDivisorClass
from .profile import ProfileDivisorClass
from .pullback import ForgetfulMap, pullback_aggregate, pullback_oracle
from .rational import format_offset, format_rational

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _int_list(text: str) -> list[int]:
    try:
        out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not out:
        raise argparse.ArgumentTypeError("empty list")
    return out


def _entries(specs) -> dict[int, str]:
    out = {}
    for spec in specs or []:
        k, sep, choice = spec.partition("=")
        if not sep or not k.strip().isdigit():
            raise UsageError(f"--entry expects k=T|F:m|Ftilde:m|W, got {spec!r}")
        out[int(k)] = choice.strip()
    return out


def _emit(args, payload: dict, text_lines: list[str]):
    if args.json:
        print(json.dumps(payload, indent=2, sort_keys=True))
    else:
        print("\n".join(text_lines))


# commands

def cmd_classify(args) -> int:
    group = parse_group(args.group, args.points)
    v = classify(args.genus, args.points, group)
    payload = {"g": args.genus, "n": args.points, "group": str(group), **v.to_json()}
    lines = [f"M_{{{args.genus},{args.points}}} / {group}: {v}"]
    lines += [f"  - {step}" for step in v.justification]
    lines += [f"  note: {note}" for note in v.notes]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_fm(args) -> int:
    choices = _entries(args.entry)
    try:
        if choices:
            f = certify.f_general(args.genus, args.blocks, certify.block_entries(args.genus, args.blocks, choices))
        else:
            f = certify.f_closed(args.genus, args.blocks)
    except CriterionInapplicable as exc:
        payload = {"g": args.genus, "blocks": args.blocks, "applicable": False, "reason": str(exc)}
        _emit(args, payload, [f"criterion does not apply: {exc}"])
        return EXIT_FAIL
    entries = certify.block_entries(args.genus, args.blocks, choices)
    mu = certify.multipliers(args.genus, args.blocks, entries)
    ok = f <= tables.THRESHOLD
    payload = {
        "g": args.genus,
        "blocks": args.blocks,
        "entries": [e.name if e.name == "W" else choices.get(k + 1) for k, e in enumerate(entries)],
        "f": format_rational(f),
        "f_display": format_offset(f),
        "epsilon": format_rational(mu.epsilon),
        "eta": format_rational(mu.eta),
        "slope": format_rational(mu.slope.slope),
        "pass": ok,
    }
    lines = [
        f"f = {format_offset(f)}  ({float(f):.6f})",
        f"epsilon = {mu.epsilon}, eta = {mu.eta}, s(g) = {mu.slope.slope} ({mu.slope.provenance})",
        "PASS" if ok else "FAIL",
    ]
    _emit(args, payload, lines)
    return EXIT_OK if ok else EXIT_FAIL


def cmd_certificate(args) -> int:
    inp = certify.CertificateInput(args.genus, tuple(args.blocks), _entries(args.entry))
    try:
        cert = certify.build_certificate(inp)
    except CriterionInapplicable as exc:
        payload = {"input": inp.to_json(), "applicable": False, "reason": str(exc)}
        _emit(args, payload, [f"criterion does not apply: {exc}"])
        return EXIT_FAIL
    data = cert.to_json()
    if args.out:
        Path(args.out).write_text(json.dumps(data, indent=2, sort_keys=True) + "\n", encoding="utf-8")
    unproved = data["status"]["unproved"]
    lines = [
        f"certificate for g={args.genus}, blocks {list(inp.sizes)}, entries {data['input']['entries']}",
        f"  f = {format_offset(cert.f_value)}, epsilon = {cert.epsilon}, eta = {cert.eta}",
        f"  multipliers: D {cert.multiplier_D}, L {cert.multiplier_L}, W {cert.multiplier_W}",
        f"  coordinates proved: {data['status']['proved']}/{data['status']['total']}",
    ]
    if unproved:
        lines.append(f"  unproved: {', '.join(unproved[:10])}{' ...' if len(unproved) > 10 else ''}")
    for a in data["assumptions"]:
        lines.append(f"  assumption {a['id']} ({a['kind']}): {a['text']}")
    lines.append(f"  verdict: {cert.grade}")
    _emit(args, data, lines)
    return EXIT_FAIL if cert.grade == certify.FAIL else EXIT_OK


def cmd_catalog(args) -> int:
    name = args.name
    if name == "slope":
        e = catalog.slope_min(args.genus)
        payload = {
            "name": "slope",
            "g": args.genus,
            "slope": format_rational(e.slope),
            "provenance": e.provenance,
            "candidates": {k: format_rational(v) for k, v in sorted(e.candidates.items())},
            "untracked_bounds": {"delta_i, i>=1": "<= -1"},
            "assumptions": ["slope-tail"] + (["sporadic-tail"] if e.provenance == "Sporadic" else []),
        }
        lines = [f"s({args.genus}) = {e.slope} ({e.provenance})"]
        lines += [f"  {k}: {v}" for k, v in sorted(e.candidates.items())]
    else:
        if name == "W":
            if args.points is None:
                raise UsageError("catalog --name W needs --points")
            e = catalog.weierstrass_normalized(args.genus, args.points)
        elif name == "T":
            e = catalog.catalog_entry("T", args.genus)
        else:
            if args.m is None:
                raise UsageError(f"catalog --name {name} needs --m")
            e = catalog.catalog_entry(name, args.genus, args.m)
        payload = e.to_json()
        lines = [
            f"{e.name} on M_{{{e.space.g},{e.space.n}}}",
            f"  lambda {e.a}, psi 1, delta_irr {-e.b_irr}, delta_(0,2) {-e.b_pair}",
        ]
        lines += [f"  {k}: {v}" for k, v in e.untracked_bounds().items()]
        lines += [f"  assumption {a}" for a in e.assumptions()]
    _emit(args, payload, lines)
    return EXIT_OK


def cmd_pullback(args) -> int:
    try:
        data = json.loads(Path(args.input).read_text(encoding="utf-8"))
    except (OSError, json.JSONDecodeError) as exc:
        raise UsageError(f"cannot read {args.input}: {exc}") from None
    keep = args.keep
    n = args.points if args.points is not None else max(keep)
    g = int(data.get("g", 0))
    fmap = ForgetfulMap((g, n), tuple(keep))
    if "blocks" in data:
        x = ProfileDivisorClass.from_json(data)
        rest = tuple(sorted(set(range(1, n + 1)) - set(fmap.kept)))
        part = BlockPartition((fmap.kept, rest) if rest else (fmap.kept,))
        out = pullback_aggregate(x, fmap, part).to_json()
    else:
        out = pullback_oracle(FullDivisorClass.from_json(data), fmap).to_json()
    lines = [json.dumps(out, sort_keys=True)]
    _emit(args, out, lines)
    return EXIT_OK


def cmd_tables(args) -> int:
    report = tables.reproduce_tables(args.which, args.gmin, args.gmax)
    lines = [report["description"]]
    if args.which == "diff":
        lines.append(f"{'g':>3} {'table':>5} {'closed':>6} {'general':>7}  status")
        for r in report["rows"]:
            line = f"{r['g']:>3} {r['table']:>5} {str(r['closed']):>6} {str(r['general']):>7}  {r['status']}"
            if "exception" in r:
                exc = r["exception"]
                line += f"  [{exc['note']}; expected {exc['expected']}"
                line += "; computed differs]" if exc.get("disagrees") else "]"
            lines.append(line)
    else:
        lines += [f"  g={r['g']:>2}  n_min={r['n_min']}" for r in report["rows"]]
    lines.append("OK" if report["ok"] else "MISMATCH")
    _emit(args, report, lines)
    return EXIT_OK if report["ok"] else EXIT_FAIL


def cmd_selfcheck(args) -> int:
    from .selfcheck import run_selfcheck

    h = run_selfcheck(args.level)
    lines = [r.line() for r in h.results]
    lines.append(f"{len(h.results) - h.failed} passed, {h.failed} failed")
    _emit(args, h.to_json(), lines)
    return EXIT_OK if h.failed == 0 else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="modquot", description="Kodaira-type certificates for M_{g,n}/G.")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        fmt = sp.add_mutually_exclusive_group()
        fmt.add_argument("--json", action="store_true", help="machine-readable output")
        fmt.add_argument("--text", action="store_true", help="human-readable output (default)")
        sp.set_defaults(func=fn)
        return sp

    sp = add("classify", cmd_classify, "classify M_{g,n}/G")
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--points", type=int, required=True)
    sp.add_argument("--group", required=True, help="Sn | An | trivial | prod:n1,n2 | gen:(1 2)(3 4);(...)")

    sp = add("fm", cmd_fm, "evaluate f for a block partition")
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--blocks", type=_int_list, required=True)
    sp.add_argument("--entry", action="append", help="k=T|F:m|Ftilde:m (repeatable)")

    sp = add("certificate", cmd_certificate, "build and grade a full certificate")
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--blocks", type=_int_list, required=True)
    sp.add_argument("--entry", action="append", help="k=T|F:m|Ftilde:m (repeatable)")
    sp.add_argument("--out", help="write the certificate JSON here")

    sp = add("catalog", cmd_catalog, "print a catalog divisor")
    sp.add_argument("--name", choices=["T", "F", "Ftilde", "W", "slope"], required=True)
    sp.add_argument("--genus", type=int, required=True)
    sp.add_argument("--m", type=int)
    sp.add_argument("--points", type=int)

    sp = add("pullback", cmd_pullback, "pull a class back along a forgetful map")
    sp.add_argument("--in", dest="input", required=True, help="class JSON (full or profile form)")
    sp.add_argument("--keep", type=_int_list, required=True)
    sp.add_argument("--points", type=int, help="number of points upstairs (default: max of --keep)")

    sp = add("tables", cmd_tables, "stored tables and the recomputed n_min table")
    sp.add_argument("--which", choices=["mgn", "msn", "diff"], required=True)
    sp.add_argument("--gmin", type=int)
    sp.add_argument("--gmax", type=int)

    sp = add("selfcheck", cmd_selfcheck, "run the built-in checks")
    sp.add_argument("--level", choices=["quick", "full"], default="quick")
    return p


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ModquotError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def main(argv=None):
    sys.exit(run(argv))


if __name__ == "__main__":
    main()
