"""
Character lattices of the norm-condition torus and its relatives.

For a subgroup H of G (the field K) and a central iota of prime order p,
H+ = <H, iota> cuts out K+.  The torus {x in K^x : N_{K/K+}(x) in k^x} is the
fibre product of R_{K/k} G_m -> R_{K+/k} G_m <- G_m, so its character lattice
is the pushout

    X = (Z[G/H] (+) Z) / image of Z[G/H+],   gH+ |-> (fibre sum of gH+, -1).

The auxiliary torus (kernel of the norm) has X_aux = Z[G/H] / fibre sums.
An etale algebra is a list of subgroups H_1..H_r, each contributing a block.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError
from .groups import CentralDatum, Group, Subgroup, build_group, is_normal, subgroup_closure
from .intlinalg import IntMatrix
from .lattice import (Cokernel, GLattice, LatticeMap, block_map, cokernel_lattice,
                      fiber_sum_map, permutation_lattice, trivial_lattice)

SHARED = "shared"
PER_FACTOR = "per_factor"


@dataclass
class TorusDatum:
    group: Group
    subgroups: list
    iota: CentralDatum
    multiplier: str = SHARED

    def __post_init__(self):
        if not self.subgroups:
            raise InputError("at least one subgroup is required")
        for S in self.subgroups:
            if S.parent is not self.group:
                raise InputError("subgroup of a different group")
        if self.multiplier not in (SHARED, PER_FACTOR):
            raise InputError(f"unknown multiplier convention {self.multiplier!r}")

    @property
    def hplus(self):
        G = self.group
        return [subgroup_closure(G, tuple(S.generating_set()) + (self.iota.iota,))
                for S in self.subgroups]

    @property
    def degenerate(self):
        """Per-factor flags: iota in H_i."""
        return [self.iota.iota in S for S in self.subgroups]

    @property
    def is_etale(self):
        return len(self.subgroups) > 1


@dataclass
class TorusLattices:
    datum: TorusDatum
    X: GLattice
    X_aux: GLattice
    ambient: GLattice  # (+) Z[G/H_i] (+) Z (one Z per factor for per_factor)
    relations: LatticeMap  # (+) Z[G/H_i+] -> ambient
    quotient: LatticeMap  # ambient -> X
    aux_relations: LatticeMap
    aux_quotient: LatticeMap
    multiplier_map: LatticeMap = None  # Z^(#multipliers) -> X
    flags: list = field(default_factory=list)
    section: IntMatrix = None  # columns lift the basis of X to the ambient lattice

    def rank_formula(self):
        G = self.datum.group
        extra = len(self.datum.subgroups) if self.datum.multiplier == PER_FACTOR else 1
        return (sum(G.order // S.order for S in self.datum.subgroups)
                - sum(G.order // P.order for P in self.datum.hplus) + extra)


def _build(datum: TorusDatum) -> TorusLattices:
    G = datum.group
    subs, hps = datum.subgroups, datum.hplus
    A_parts = [permutation_lattice(G, P) for P in hps]
    B_parts = [permutation_lattice(G, S) for S in subs]
    fibs = [fiber_sum_map(G, S, P, A, B).matrix for S, P, A, B in zip(subs, hps, A_parts, B_parts)]
    r = len(subs)
    nz = r if datum.multiplier == PER_FACTOR else 1
    Zs = [trivial_lattice(G) for _ in range(nz)]
    targets = B_parts + Zs
    blocks = []
    for i in range(r):
        blocks.append([fibs[j] if i == j else None for j in range(r)])
    for z in range(nz):
        row = []
        for j in range(r):
            if datum.multiplier == PER_FACTOR and z != j:
                row.append(None)
            else:
                row.append(IntMatrix([[-1] * A_parts[j].rank], 1, A_parts[j].rank))
        blocks.append(row)
    rel = block_map(blocks, A_parts, targets)
    ck: Cokernel = cokernel_lattice(rel)

    aux_rel = block_map([[fibs[j] if i == j else None for j in range(r)] for i in range(r)],
                        A_parts, B_parts)
    aux: Cokernel = cokernel_lattice(aux_rel)

    amb = rel.target
    nB = sum(B.rank for B in B_parts)
    inc = IntMatrix.zeros(amb.rank, nz)
    for z in range(nz):
        inc.data[nB + z][z] = 1
    Zn = trivial_lattice(G, nz)
    mult = LatticeMap(Zn, ck.lattice, ck.quotient.matrix @ inc)
    flags = ["DEGENERATE: iota in H" + (f"_{i + 1}" if datum.is_etale else "")
             for i, d in enumerate(datum.degenerate) if d]
    return TorusLattices(datum, ck.lattice, aux.lattice, amb, rel, ck.quotient,
                         aux_rel, aux.quotient, mult, flags, ck.section)


def build_character_lattice(G: Group, H: Subgroup, iota: CentralDatum) -> TorusLattices:
    return _build(TorusDatum(G, [H], iota))


def build_etale_lattice(G: Group, subgroups, iota: CentralDatum, multiplier=SHARED) -> TorusLattices:
    if not subgroups:
        raise InputError("empty subgroup list")
    return _build(TorusDatum(G, list(subgroups), iota, multiplier))


def build_lattices(datum: TorusDatum) -> TorusLattices:
    return _build(datum)


def galois_classifier(G: Group, H: Subgroup) -> str:
    return "galois" if is_normal(H) else "non-galois"


def aux_projection(T: TorusLattices, factor) -> LatticeMap:
    """X -> X_aux of one factor, induced by projecting onto that block.

    It kills every relation (fibre sums land in the factor's own relations,
    multipliers are dropped), so it is well defined on X.
    """
    G = T.datum.group
    S = T.datum.subgroups[factor]
    single = build_character_lattice(G, S, CentralDatum(T.datum.iota.iota, T.datum.iota.p))
    B_ranks = [G.order // H.order for H in T.datum.subgroups]
    off = sum(B_ranks[:factor])
    proj = IntMatrix.zeros(B_ranks[factor], T.ambient.rank)
    for i in range(B_ranks[factor]):
        proj.data[i][off + i] = 1
    ambient_to_aux = single.aux_quotient.matrix @ proj
    # descend along ambient -> X via the section of X
    return LatticeMap(T.X, single.X_aux, ambient_to_aux @ T.section)


def parse_datum(obj, max_order=64) -> TorusDatum:
    """Torus datum from JSON-like input:
    {"group": <group spec>, "subgroups": [[gens], ...], "iota": <index or word>, "p": prime}."""
    if not isinstance(obj, dict):
        raise InputError("torus datum must be a JSON object")
    try:
        G = build_group(obj["group"], max_order=max_order)
    except KeyError as exc:
        raise InputError("torus datum needs a 'group'") from exc
    raw = obj.get("subgroups", [[]])
    if raw and not isinstance(raw[0], (list, tuple)):
        raw = [raw]
    subs = [subgroup_closure(G, [G.parse_element(x) for x in gens]) for gens in raw]
    if "iota" not in obj:
        raise InputError("torus datum needs 'iota'")
    iota = CentralDatum.make(G, obj["iota"], obj.get("p"))
    return TorusDatum(G, subs, iota, obj.get("multiplier", SHARED))
