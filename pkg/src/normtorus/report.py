"""Canonical text rendering of reports (stable enough for snapshot tests)."""

from __future__ import annotations

from .localglobal import TamagawaReport

LABEL_WIDTH = 26
CELL_WIDTH = 24
CHECK_LABELS = {"h1_bar_vs_exact_sequence": "H^1 bar vs exact sequence",
                "h1_bar_vs_transfer": "H^1 bar vs transfer"}


def invariants_str(factors) -> str:
    """[2, 4] -> "Z/2 x Z/4"; [] -> "0"."""
    return " x ".join(f"Z/{d}" for d in factors) if factors else "0"


def _line(label, value):
    return f"{label:<{LABEL_WIDTH}}: {value}"


def render_report(r: TamagawaReport) -> str:
    out = []
    for flag in r.flags:
        out.append(f"*** {flag} ***")
    out.append(_line("group", f"{r.group} (order {r.group_order})"))
    out.append(_line("subgroups H", ", ".join(r.subgroups)))
    out.append(_line("iota", f"{r.iota} (p = {r.p})"))
    out.append(_line("extension", ", ".join(r.extension)))
    if len(r.subgroups) > 1:
        out.append(_line("multiplier", r.multiplier))
    out.append(_line("rank X / rank X_aux", f"{r.rank_X} / {r.rank_X_aux}"))
    out.append("")
    out.append(f"{'degree':>6}  {'H^i(G, X)':<{CELL_WIDTH}}  H^i(G, X_aux)")
    out.append(f"{'-' * 6}  {'-' * CELL_WIDTH}  {'-' * CELL_WIDTH}")
    for row in r.cohomology:
        out.append(f"{row['degree']:>6}  {invariants_str(row['X']):<{CELL_WIDTH}}  "
                   f"{invariants_str(row['X_aux']):<{CELL_WIDTH}}".rstrip())
    out.append("")
    out.append(_line("numerator |H^1(G, X)|", r.numerator))
    out.append(_line("Sha^1(G, X)", invariants_str(r.sha1)))
    out.append(_line("Sha^2(G, X)", invariants_str(r.sha2)))
    out.append(_line("denominator |Sha^2(G, X)|", r.denominator))
    out.append(_line("tau", r.tau))
    out.append(_line("aux |H^1| / |Sha^2|", f"{r.aux_numerator} / {r.aux_denominator} = {r.aux_tau}"))
    out.append(_line("local family", f"{r.family_provenance}: {', '.join(r.family)}"))
    for name, status in r.cross_checks.items():
        out.append(_line(CHECK_LABELS.get(name, name), status))
    return "\n".join(out) + "\n"


def render_cohomology(rows, title) -> str:
    """rows: list of {"degree", "invariants"}."""
    out = [title, f"{'degree':>6}  group", f"{'-' * 6}  {'-' * CELL_WIDTH}"]
    for row in rows:
        out.append(f"{row['degree']:>6}  {invariants_str(row['invariants'])}")
    return "\n".join(out) + "\n"


def golden_report(datum, **kwargs) -> str:
    from .localglobal import tamagawa
    return render_report(tamagawa(datum, **kwargs))
