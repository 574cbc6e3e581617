"""
Command-line entry point.

    normtorus tamagawa --group catalog:C2 --H "" --iota g --p 2
    normtorus cohomology --input datum.json --lattice X_aux --degrees=-2..3
    normtorus survey --sweep abelian --order-limit 8
    normtorus catalog

Exit codes: 0 ok, 2 invalid input, 3 resource ceiling, 4 cross-check failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass, field

from .cohomology import DEGREES, tate
from .errors import CrossCheckError, InputError, ResourceLimitError
from .groups import (CATALOG, abelian_catalog_names, build_group, catalog_names,
                     subgroup_closure, two_group_catalog_names)
from .lattice import trivial_lattice
from .localglobal import (LocalFamily, batch_survey, default_family, sha,
                          subgroup_label, summarize, tamagawa)
from .report import invariants_str, render_cohomology, render_report
from .torus import build_lattices, parse_datum

COMMANDS = ("build", "cohomology", "sha", "tamagawa", "survey", "catalog")


@dataclass
class CliConfig:
    command: str
    data: dict = field(default_factory=dict)
    fmt: str = "json"
    degrees: tuple = DEGREES
    family: list = None
    ceiling: int = None
    degenerate: str = "flag"
    max_order: int = 64
    args: argparse.Namespace = None


def _parse_degrees(text):
    text = text.strip()
    try:
        if ".." in text:
            lo, hi = text.split("..")
            out = tuple(range(int(lo), int(hi) + 1))
        else:
            out = tuple(int(t) for t in text.split(",") if t.strip())
    except ValueError as exc:
        raise InputError(f"cannot parse degrees {text!r}") from exc
    bad = [d for d in out if d not in DEGREES]
    if bad or not out:
        raise InputError(f"degrees must lie in {DEGREES[0]}..{DEGREES[-1]}, got {text!r}")
    return out


def _words(text):
    return [w.strip() for w in text.split(",") if w.strip()]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def build_parser():
    ap = _Parser(prog="normtorus",
                 description="Cohomology and Tamagawa numbers of norm-condition tori.")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(p, datum=True):
        p.add_argument("--format", choices=("json", "text"),
                       help="output format (default: text on a terminal, json otherwise)")
        p.add_argument("--ceiling", type=int, help="largest cochain space allowed (columns)")
        p.add_argument("--max-order", type=int, default=64, help="refuse groups larger than this")
        if datum:
            p.add_argument("--input", help="torus datum JSON file, '-' for stdin")
            p.add_argument("--json", dest="inline", help="torus datum as inline JSON")
            p.add_argument("--group", help="group spec, e.g. catalog:D8")
            p.add_argument("--H", action="append",
                           help="comma-separated generator words of a subgroup; repeat for an etale algebra")
            p.add_argument("--iota", help="central element (word or #index)")
            p.add_argument("--p", type=int, help="order of iota (checked)")
            p.add_argument("--multiplier", choices=("shared", "per_factor"))
            p.add_argument("--degenerate", choices=("flag", "error"), default=None,
                           help="what to do when iota lies in H (default: flag)")
            p.add_argument("--family",
                           help="local family: ';'-separated subgroups, each comma-separated words")

    common(sub.add_parser("build", help="character lattices X and X_aux"))
    p = sub.add_parser("cohomology", help="Tate cohomology table")
    common(p)
    p.add_argument("--lattice", choices=("X", "X_aux", "Z"), default="X")
    p.add_argument("--degrees", default=None, help="e.g. -2..3 or 1,2")
    p = sub.add_parser("sha", help="Sha^i relative to the local family")
    common(p)
    p.add_argument("--lattice", choices=("X", "X_aux"), default="X")
    p.add_argument("--degree", type=int, default=2)
    p = sub.add_parser("tamagawa", help="full Tamagawa report")
    common(p)
    p.add_argument("--degrees", default=None, help="degrees for the cohomology table")
    p = sub.add_parser("survey", help="sweep a family of catalog groups")
    common(p, datum=False)
    p.add_argument("--sweep", choices=("abelian", "2group", "catalog"))
    p.add_argument("--groups", nargs="*", default=None, help="explicit catalog names")
    p.add_argument("--order-limit", type=int, default=8, help="largest group order in the sweep")
    p.add_argument("--subgroups", choices=("all", "trivial"), default="all")
    p.add_argument("--include-degenerate", action="store_true")
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--degrees", default="1,2")
    common(sub.add_parser("catalog", help="list group constructors"), datum=False)
    return ap


def _load_json(text, source):
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        err = InputError(f"malformed JSON in {source}: {exc.msg}")
        err.position = {"line": exc.lineno, "column": exc.colno, "offset": exc.pos}
        raise err from exc


def make_config(argv) -> CliConfig:
    ap = build_parser()
    args = ap.parse_args(argv)
    fmt = args.format or ("text" if sys.stdout.isatty() else "json")
    cfg = CliConfig(args.command, fmt=fmt, ceiling=args.ceiling, max_order=args.max_order, args=args)
    if args.command in ("survey", "catalog"):
        if args.command == "survey":
            cfg.degrees = _parse_degrees(args.degrees)
        return cfg
    data = {}
    if args.input:
        if args.input == "-":
            data = _load_json(sys.stdin.read(), "stdin")
        else:
            try:
                with open(args.input, encoding="utf-8") as fh:
                    data = _load_json(fh.read(), args.input)
            except OSError as exc:
                raise InputError(f"cannot read {args.input}: {exc.strerror}") from exc
    if args.inline:
        data = _load_json(args.inline, "--json")
    if not isinstance(data, dict):
        raise InputError("torus datum must be a JSON object")
    if args.group:
        data["group"] = args.group
    if args.H is not None:
        data["subgroups"] = [_words(h) for h in args.H]
    if args.iota is not None:
        data["iota"] = args.iota
    if args.p is not None:
        data["p"] = args.p
    if args.multiplier:
        data["multiplier"] = args.multiplier
    cfg.data = data
    degrees = getattr(args, "degrees", None)
    if degrees is not None:
        cfg.degrees = _parse_degrees(degrees)
    elif "degrees" in data:
        cfg.degrees = _parse_degrees(",".join(str(d) for d in data.pop("degrees")))
    data.pop("degrees", None)
    if args.family is not None:
        cfg.family = [_words(s) for s in args.family.split(";")]
    elif "family" in data:
        cfg.family = data["family"]
    data.pop("family", None)
    cfg.degenerate = args.degenerate or data.pop("degenerate", "flag")
    data.pop("degenerate", None)
    return cfg


def _family(G, spec):
    if spec is None:
        return default_family(G)
    subs = [subgroup_closure(G, [G.parse_element(w) for w in gens]) for gens in spec]
    return LocalFamily(subs)


def _datum(cfg):
    datum = parse_datum(cfg.data, max_order=cfg.max_order)
    if cfg.degenerate == "error" and any(datum.degenerate):
        raise InputError("iota lies in H (degenerate tower) and --degenerate=error was given")
    return datum


def _emit(cfg, payload, text):
    if cfg.fmt == "json":
        return json.dumps(payload, indent=2) + "\n"
    return text


def cmd_catalog(cfg):
    rows = [{"constructor": k, "name": v[0], "description": v[1]} for k, v in CATALOG.items()]
    sweep = catalog_names(16)
    text = "\n".join(f"{r['name']:<10} {r['description']}" for r in rows)
    text += "\n\nsweep catalog (order <= 16): " + " ".join(sweep) + "\n"
    return _emit(cfg, {"constructors": rows, "sweep_catalog": sweep}, text)


def cmd_build(cfg):
    datum = _datum(cfg)
    T = build_lattices(datum)
    payload = {
        "group": datum.group.label,
        "subgroups": [subgroup_label(S) for S in datum.subgroups],
        "iota": datum.group.word(datum.iota.iota),
        "p": datum.iota.p,
        "flags": T.flags,
        "rank_X": T.X.rank,
        "rank_X_aux": T.X_aux.rank,
        "X": T.X.to_dict(),
        "X_aux": T.X_aux.to_dict(),
    }
    text = "".join(f"*** {f} ***\n" for f in T.flags)
    text += f"X     rank {T.X.rank}  basis {', '.join(T.X.basis_labels)}\n"
    text += f"X_aux rank {T.X_aux.rank}  basis {', '.join(T.X_aux.basis_labels)}\n"
    for name, L in (("X", T.X), ("X_aux", T.X_aux)):
        for g in L.group.generators:
            text += f"{name}: {L.group.word(g)} acts by {L.action[g].tolist()}\n"
    return _emit(cfg, payload, text)


def cmd_cohomology(cfg):
    args = cfg.args
    if args.lattice == "Z":
        G = build_group(cfg.data.get("group", ""), max_order=cfg.max_order)
        M, flags = trivial_lattice(G), []
    else:
        datum = _datum(cfg)
        T = build_lattices(datum)
        G, M, flags = datum.group, getattr(T, args.lattice), T.flags
    rows = [{"degree": i, "invariants": list(tate(G, M, i, cfg.ceiling).invariants)}
            for i in cfg.degrees]
    payload = {"group": G.label, "lattice": args.lattice, "rank": M.rank, "flags": flags,
               "cohomology": rows}
    title = "".join(f"*** {f} ***\n" for f in flags)
    title += f"H^i({G.label}, {args.lattice}), rank {M.rank}"
    return _emit(cfg, payload, render_cohomology(rows, title))


def cmd_sha(cfg):
    args = cfg.args
    datum = _datum(cfg)
    G = datum.group
    T = build_lattices(datum)
    fam = _family(G, cfg.family)
    S = sha(G, getattr(T, args.lattice), args.degree, fam, cfg.ceiling)
    payload = {"group": G.label, "lattice": args.lattice, "degree": args.degree,
               "family": [subgroup_label(D) for D in fam.subgroups],
               "family_provenance": fam.provenance, "flags": T.flags,
               "invariants": list(S.invariants), "order": S.order}
    text = "".join(f"*** {f} ***\n" for f in T.flags)
    text += f"Sha^{args.degree}({G.label}, {args.lattice}) = {invariants_str(S.invariants)}" \
            f"  (order {S.order}; family {fam.provenance})\n"
    return _emit(cfg, payload, text)


def cmd_tamagawa(cfg):
    datum = _datum(cfg)
    rep = tamagawa(datum, _family(datum.group, cfg.family), cfg.degrees, cfg.ceiling)
    return _emit(cfg, rep.to_dict(), render_report(rep))


def cmd_survey(cfg):
    args = cfg.args
    if args.groups:
        names = list(args.groups)
    elif args.sweep == "abelian":
        names = abelian_catalog_names(args.order_limit)
    elif args.sweep == "2group":
        names = two_group_catalog_names(args.order_limit)
    elif args.sweep == "catalog":
        names = catalog_names(args.order_limit)
    else:
        names = []
    reports = batch_survey(names, args.subgroups, cfg.degrees, args.include_degenerate,
                           cfg.ceiling, args.workers)
    summary = summarize(reports)
    payload = {"groups": names, "reports": [r.to_dict() for r in reports], "summary": summary}
    lines = [f"{'group':<10} {'H':<14} {'iota':<8} {'num':>4} {'den':>4} {'tau':>6}"]
    for r in reports:
        lines.append(f"{r.group:<10} {','.join(r.subgroups):<14} {r.iota:<8} "
                     f"{r.numerator:>4} {r.denominator:>4} {r.tau:>6}")
    lines.append("")
    for g, s in summary.items():
        lines.append(f"{g}: {s['cases']} cases, numerators {s['numerators']}, "
                     f"denominators {s['denominators']}, tau {s['tau']}")
    return _emit(cfg, payload, "\n".join(lines) + "\n")


HANDLERS = {"build": cmd_build, "cohomology": cmd_cohomology, "sha": cmd_sha,
            "tamagawa": cmd_tamagawa, "survey": cmd_survey, "catalog": cmd_catalog}


def _error(code, exc):
    obj = {"error": {"code": code, "type": type(exc).__name__, "message": str(exc)}}
    pos = getattr(exc, "position", None)
    if pos:
        obj["error"]["position"] = pos
    return json.dumps(obj) + "\n"


def run(argv=None, stdout=None):
    """Run the CLI; return the exit code.  Output goes to ``stdout``."""
    stdout = stdout or sys.stdout
    try:
        cfg = make_config(argv)
        stdout.write(HANDLERS[cfg.command](cfg))
        return 0
    except ResourceLimitError as exc:
        stdout.write(_error(3, exc))
        return 3
    except CrossCheckError as exc:
        stdout.write(_error(4, exc))
        return 4
    except InputError as exc:
        stdout.write(_error(2, exc))
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
