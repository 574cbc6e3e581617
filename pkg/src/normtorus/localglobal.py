"""
Sha of a G-lattice relative to a family of local subgroups, and the
Tamagawa number as |H^1(G, X)| / |Sha^2(G, X)|.

The default local family is every cyclic subgroup up to conjugacy: in
generic position decomposition groups are cyclic and each cyclic subgroup
occurs.  A user-supplied family models an extension with bigger (ramified)
decomposition groups.
"""

from __future__ import annotations

import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, fields
from fractions import Fraction

from .cohomology import DEGREES, CohomologyGroup, h1_cross_check, restriction_map, tate
from .errors import InputError
from .groups import (CentralDatum, Group, Subgroup, build_group, central_elements_of_prime_order,
                     cyclic_subgroup_classes, subgroup_classes, trivial_subgroup)
from .intlinalg import AbelianPresentation, IntMatrix, hom_kernel
from .lattice import GLattice
from .torus import SHARED, TorusDatum, build_lattices, galois_classifier

DEFAULT_CYCLIC = "default_cyclic"
USER_SUPPLIED = "user_supplied"


@dataclass
class LocalFamily:
    subgroups: list
    provenance: str = USER_SUPPLIED

    def __post_init__(self):
        if not self.subgroups:
            raise InputError("a local family needs at least one subgroup")
        G = self.subgroups[0].parent
        if any(S.parent is not G for S in self.subgroups):
            raise InputError("local family mixes subgroups of different groups")


def default_family(G: Group) -> LocalFamily:
    return LocalFamily(cyclic_subgroup_classes(G), DEFAULT_CYCLIC)


def sha(G: Group, M: GLattice, i, family: LocalFamily = None, ceiling=None) -> CohomologyGroup:
    """ker( H^i(G, M) -> prod_D H^i(D, M|_D) ) for D in the family, i in {1, 2}."""
    if i not in (1, 2):
        raise InputError("Sha is computed in degrees 1 and 2")
    family = family or default_family(G)
    src = tate(G, M, i, ceiling)
    if not src.invariants:
        return CohomologyGroup(i, AbelianPresentation(0, ()), [], G, M)
    rows, tgt_inv = [], []
    for D in family.subgroups:
        rmap = restriction_map(G, D, M, i, source=src, ceiling=ceiling)
        rows += rmap.matrix.tolist()
        tgt_inv += list(rmap.target.invariants)
    mat = IntMatrix(rows, len(rows), len(src.invariants))
    ker = hom_kernel(src.invariants, tgt_inv, mat)
    gens = []
    for coeffs in ker.generators:
        u = {}
        for c, g in zip(coeffs, src.generators):
            if c:
                if isinstance(g, dict):
                    for k, v in g.items():
                        u[k] = u.get(k, 0) + c * v
        gens.append({k: v for k, v in u.items() if v})
    return CohomologyGroup(i, AbelianPresentation(0, ker.invariants), gens, G, M)


def subgroup_label(S: Subgroup) -> str:
    G = S.parent
    if S.order == 1:
        return "1"
    if S.order == G.order:
        return "G"
    return "<" + ",".join(G.word(g) for g in S.generating_set()) + ">"


@dataclass
class TamagawaReport:
    """Serializable result.  Field order is the JSON key order."""

    group: str
    group_order: int
    subgroups: list
    iota: str
    p: int
    extension: list
    multiplier: str
    flags: list
    rank_X: int
    rank_X_aux: int
    cohomology: list
    numerator: int
    transfer_witness: dict
    sha1: list
    sha2: list
    denominator: int
    tau: str
    aux_numerator: int
    aux_sha2: list
    aux_denominator: int
    aux_tau: str
    family: list
    family_provenance: str
    cross_checks: dict

    def to_dict(self):
        return asdict(self)

    def to_json(self, indent=2):
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d):
        names = [f.name for f in fields(cls)]
        missing = [n for n in names if n not in d]
        if missing:
            raise InputError(f"report is missing fields {missing}")
        return cls(**{n: d[n] for n in names})

    @property
    def tau_fraction(self):
        return Fraction(self.tau)


def _frac(a, b):
    f = Fraction(a, b)
    return f"{f.numerator}/{f.denominator}"


def tamagawa(datum: TorusDatum, family: LocalFamily = None, degrees=DEGREES,
             ceiling=None) -> TamagawaReport:
    """Build X and X_aux, tabulate their cohomology, cross-check H^1 three
    ways (bar complex, exact sequence, transfer) and assemble the ratio."""
    G = datum.group
    family = family or default_family(G)
    T = build_lattices(datum)
    X, Xa = T.X, T.X_aux
    subs = datum.subgroups
    per_factor = datum.multiplier != SHARED
    H = subs if len(subs) > 1 else subs[0]

    direct, les, via = h1_cross_check(G, H, datum.iota, X, ceiling, per_factor=per_factor)
    checks = {"h1_bar_vs_exact_sequence": "agree",
              "h1_bar_vs_transfer": "agree" if via is not None else "skipped (degenerate)"}

    table = []
    for i in degrees:
        table.append({"degree": i,
                      "X": list(tate(G, X, i, ceiling).invariants),
                      "X_aux": list(tate(G, Xa, i, ceiling).invariants)})

    s1 = sha(G, X, 1, family, ceiling)
    s2 = sha(G, X, 2, family, ceiling)
    num = direct.order
    den = s2.order
    aux_h1 = tate(G, Xa, 1, ceiling)
    aux_s2 = sha(G, Xa, 2, family, ceiling)
    return TamagawaReport(
        group=G.label,
        group_order=G.order,
        subgroups=[subgroup_label(S) for S in subs],
        iota=G.word(datum.iota.iota),
        p=datum.iota.p,
        extension=[galois_classifier(G, S) for S in subs],
        multiplier=datum.multiplier,
        flags=list(T.flags),
        rank_X=X.rank,
        rank_X_aux=Xa.rank,
        cohomology=table,
        numerator=num,
        transfer_witness=via.witness if via is not None else {},
        sha1=list(s1.invariants),
        sha2=list(s2.invariants),
        denominator=den,
        tau=_frac(num, den),
        aux_numerator=aux_h1.order,
        aux_sha2=list(aux_s2.invariants),
        aux_denominator=aux_s2.order,
        aux_tau=_frac(aux_h1.order, aux_s2.order),
        family=[subgroup_label(S) for S in family.subgroups],
        family_provenance=family.provenance,
        cross_checks=checks,
    )


# -- sweeps -------------------------------------------------------------------

def survey_data(G: Group, subgroup_mode="all"):
    """(H, iota) pairs in deterministic order: subgroup classes x central
    elements of prime order."""
    if subgroup_mode == "all":
        subs = subgroup_classes(G)
    elif subgroup_mode == "trivial":
        subs = [trivial_subgroup(G)]
    else:
        raise InputError(f"unknown subgroup mode {subgroup_mode!r}")
    for H in subs:
        for z in central_elements_of_prime_order(G):
            yield H, CentralDatum(z, G.element_order(z))


def _survey_one(args):
    name, subgroup_mode, degrees, include_degenerate, ceiling = args
    G = build_group(name)
    out = []
    for H, iota in survey_data(G, subgroup_mode):
        if iota.iota in H and not include_degenerate:
            continue
        out.append(tamagawa(TorusDatum(G, [H], iota), degrees=degrees, ceiling=ceiling))
    return out


def batch_survey(groups, subgroup_mode="all", degrees=(1, 2), include_degenerate=False,
                 ceiling=None, workers=1):
    """Reports for every catalog group in ``groups`` and every (H, iota).

    Order: groups as given, then subgroup classes, then central elements.
    ``workers > 1`` spreads groups over processes; output order is unchanged.
    """
    tasks = [(g, subgroup_mode, tuple(degrees), include_degenerate, ceiling) for g in groups]
    if not tasks:
        return []
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as ex:
            chunks = list(ex.map(_survey_one, tasks))
    else:
        chunks = [_survey_one(t) for t in tasks]
    return [r for chunk in chunks for r in chunk]


def summarize(reports):
    """Counts of numerators, denominators and tau values per group."""
    out = {}
    for r in reports:
        s = out.setdefault(r.group, {"cases": 0, "numerators": {}, "denominators": {}, "tau": {}})
        s["cases"] += 1
        for key, val in (("numerators", r.numerator), ("denominators", r.denominator),
                         ("tau", r.tau)):
            s[key][str(val)] = s[key].get(str(val), 0) + 1
    return out
