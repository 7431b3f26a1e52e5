"""Command-line front end: ``realcremona <subcommand>``.

Exit status is 0 when no check fails, 1 when some check fails and 2 on a
usage error (bad arguments or a malformed configuration).
"""
from __future__ import annotations

import argparse
import sys
from typing import Sequence

from . import conjugacy as cj
from .config import ConfigFileError, load_spec, spec_to_dict
from .families import FamilySpec, InvalidFamily, NotSectionSwapping, abel_image, build, element_names, named_element, swaps_sections
from .maps import equal_on_variety
from .picard import classify_dihedral, induced_action, lattice_of, picard_report
from .report import Report, dumps
from .surfaces import UnknownModel, builtin, catalog

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

DEFAULT_SPECS = {
    6: {"family": 6, "n": 2},
    7: {"family": 7, "pairs": [{"re": "1", "im": "1"}]},
    8: {"family": 8, "points": {"real": ["0", "1"], "pairs": [{"re": "2", "im": "1"}]}},
}


class UsageError(Exception):
    pass


def _spec(args) -> FamilySpec:
    from .config import spec_from_dict

    if args.config:
        spec = load_spec(args.config)
        if args.family is not None and spec.family != args.family:
            raise UsageError(f"--family {args.family} disagrees with the config (family {spec.family})")
        return spec
    if args.family is None:
        raise UsageError("give --family or --config")
    return spec_from_dict(DEFAULT_SPECS.get(args.family, {"family": args.family}))


def _emit(obj, as_json: bool, text: str) -> None:
    sys.stdout.write(dumps(obj) if as_json else text + "\n")


def _report_text(rep: Report) -> str:
    lines = [f"{c.status.upper():12s} {c.id}  {c.claim}" for c in rep.checks]
    counts = rep.counts()
    lines.append(f"{rep.suite}: {counts['pass']} pass, {counts['fail']} fail, {counts['inconclusive']} inconclusive")
    return "\n".join(lines)


def cmd_verify(args) -> int:
    from .suites import verify_family

    spec = _spec(args)
    rep = verify_family(spec)
    out = rep.to_json()
    out["config"] = spec_to_dict(spec)
    _emit(out, args.json, _report_text(rep))
    return EXIT_FAIL if rep.failed else EXIT_OK


def cmd_conjugate(args) -> int:
    a, b = load_spec(args.a), load_spec(args.b)
    if a.family != b.family or a.family not in (7, 8):
        raise UsageError("both configs must belong to family 7 or both to family 8")
    if args.family is not None and args.family != a.family:
        raise UsageError(f"--family {args.family} disagrees with the configs")
    try:
        if a.family == 7:
            ok, w = cj.conjugate7(a.config7, b.config7)
            wit = w.to_json() if w else None
        else:
            ok, w = cj.conjugate8(a.config8, b.config8)
            wit = {"moebius": cj.mat_to_json(w)} if w else None
    except cj.ConfigError as exc:
        raise UsageError(str(exc)) from exc
    out = {"conjugate": ok, "witness": wit}
    _emit(out, args.json, f"conjugate: {ok}" + (f"  witness: {wit}" if wit else ""))
    return EXIT_OK


def cmd_abelianize(args) -> int:
    spec = _spec(args)
    if spec.family != 7:
        raise UsageError("abelianization images are computed for family 7")
    inst = build(spec)
    try:
        elt = named_element(inst, args.element)
    except KeyError:
        raise UsageError(f"unknown element {args.element!r}; known: {', '.join(element_names(inst))}")
    img = abel_image(inst, elt, literal=args.literal_remark)
    out = img.to_json()
    out["element"] = args.element
    out["rule"] = "literal" if args.literal_remark else "swap"
    if args.literal_remark:
        other = abel_image(inst, elt)
        out["diverges_from_swap_rule"] = other != img
    support = ", ".join(out["support"]) or "0"
    _emit(out, args.json, f"{args.element}: {support} ({out['rule']} rule)")
    return EXIT_OK


def cmd_picard(args) -> int:
    try:
        m = builtin(args.surface)
    except UnknownModel:
        raise UsageError(f"unknown surface {args.surface!r}")
    if not m.hexagon:
        raise UsageError(f"{m.id} has no hexagon of curves")
    out = picard_report(m)
    gens = {}
    for name, g in sorted(m.generators.items()):
        act = induced_action(g)
        kind, order = classify_dihedral(act)
        gens[name] = {"action": act.to_json(), "type": kind, "order": order}
    out["generators"] = gens
    lines = [f"{m.id}: invariant rank {out['invariant_rank']}", "hexagon: " + " - ".join(lattice_of(m).cycle)]
    lines += [f"{k}: {v['type']} of order {v['order']}" for k, v in gens.items()]
    _emit(out, args.json, "\n".join(lines))
    return EXIT_OK


def cmd_catalog(args) -> int:
    entries = []
    for mid in catalog():
        m = builtin("F2" if mid == "Fn(n)" else mid)
        entries.append({
            "id": mid,
            "description": m.description if mid != "Fn(n)" else "Hirzebruch surfaces F_n (n >= 1), u^n x2 = v^n x1 in P2 x P1",
            "equations": [str(e) for e in m.equations],
            "curves": sorted(m.named_curves),
            "generators": sorted(m.generators),
        })
    lines = [f"{e['id']:14s} {e['description']}" + (f"  curves: {', '.join(e['curves'])}" if e["curves"] else "") for e in entries]
    _emit({"models": entries}, args.json, "\n".join(lines))
    return EXIT_OK


def cmd_report_all(args) -> int:
    from .suites import SUITES, suite_negative_controls

    if args.inject_fault and args.inject_fault not in SUITES:
        raise UsageError(f"unknown suite {args.inject_fault!r}; known: {', '.join(SUITES)}")
    reports = [fn(corrupt=(name == args.inject_fault)) for name, fn in SUITES.items()]
    reports.append(suite_negative_controls())
    failed = any(r.failed for r in reports)
    doc = {"reports": [r.to_json() for r in reports], "failed": failed}
    sys.stdout.write(dumps(doc))
    return EXIT_FAIL if failed else EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="realcremona", description="Exact checks for real Cremona subgroups.")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the verification suite of one family")
    v.add_argument("--family", type=int, choices=range(1, 9))
    v.add_argument("--config")
    v.add_argument("--json", action="store_true")
    v.set_defaults(func=cmd_verify)

    c = sub.add_parser("conjugate", help="decide conjugacy of two configurations")
    c.add_argument("--family", type=int, choices=(7, 8))
    c.add_argument("--a", required=True)
    c.add_argument("--b", required=True)
    c.add_argument("--json", action="store_true")
    c.set_defaults(func=cmd_conjugate)

    a = sub.add_parser("abelianize", help="image of a family-7 element in the sum of copies of Z/2")
    a.add_argument("--config")
    a.add_argument("--family", type=int, choices=(7,))
    a.add_argument("--element", default="phi")
    a.add_argument("--literal-remark", action="store_true", help="use the coset rule instead of the section-swap rule")
    a.add_argument("--json", action="store_true")
    a.set_defaults(func=cmd_abelianize)

    k = sub.add_parser("picard", help="Picard lattice and generator actions of a degree-6 model")
    k.add_argument("--surface", required=True)
    k.add_argument("--json", action="store_true")
    k.set_defaults(func=cmd_picard)

    g = sub.add_parser("catalog", help="list the built-in models")
    g.add_argument("--json", action="store_true")
    g.set_defaults(func=cmd_catalog)

    r = sub.add_parser("report-all", help="run every suite and write one JSON report")
    r.add_argument("--inject-fault", metavar="SUITE", help="run SUITE against its corrupted fixture")
    r.set_defaults(func=cmd_report_all)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (UsageError, ConfigFileError, InvalidFamily, cj.ConfigError) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
