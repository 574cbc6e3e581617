"""
Tate cohomology of G-lattices in degrees -2..3.

Degrees 1..3 use inhomogeneous bar cochains C^n = Map(G^n, M), indexed
lexicographically by (element tuple, basis index).  Because C^n / ker d^n
embeds in the free module C^{n+1}, the torsion of coker(d^{n-1}) is exactly
the torsion of H^n; that cokernel is what gets reduced.  Its torsion
generators are cocycles and coordinates of any cocycle are read off the
same reduction.

Finiteness is certified rather than assumed: with s: C^n -> C^{n-1}
summing out the last argument, s d - d s = (-1)^(n+1) |G| on C^n, which
forces ker d^n (x) Q = im d^{n-1} (x) Q.  The identity is checked on every
basis cochain.

Degrees 0 and -1 are computed directly from invariants / norm kernels,
degree -2 as H_1 of the bar chain complex.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass, field

from .errors import CrossCheckError, ExactnessError, InputError, ResourceLimitError
from .groups import Group, Subgroup, coset_orbits, left_cosets, subgroup_closure
from .intlinalg import (AbelianPresentation, IntMatrix, SparseQuotient, dense_to_sparse,
                        hom_kernel, kernel_basis, snf, solve_integer)
from .lattice import GLattice, permutation_lattice, restrict, trivial_lattice, fiber_sum_map

DEGREES = (-2, -1, 0, 1, 2, 3)
DEFAULT_CEILING = 200_000


def resource_ceiling():
    try:
        return int(os.environ.get("NORMTORUS_MAX_COLUMNS", DEFAULT_CEILING))
    except ValueError:
        return DEFAULT_CEILING


class DegenerateTowerError(InputError):
    """iota lies in H, so K = K+ and the transfer criterion does not apply."""


@dataclass(eq=False)
class CohomologyGroup:
    """A finite abelian group H^i(G, M) with coordinates.

    ``generators`` are representatives: vectors of M for degrees 0 and -1,
    sparse cochains (dict index -> int) for degrees >= 1.  ``coordinates``
    maps a representative to its invariant-factor coordinates.
    """

    degree: int
    presentation: AbelianPresentation
    generators: list = field(default_factory=list)
    group: Group = None
    module: GLattice = None
    certified: bool = True
    witness: dict = None
    _coords: object = field(default=None, repr=False)

    @property
    def invariants(self):
        return self.presentation.torsion

    @property
    def order(self):
        return self.presentation.order

    def coordinates(self, x):
        if self._coords is None:
            raise ValueError("this cohomology group carries no coordinate map")
        return self._coords(x)

    def cocycle_table(self, j):
        """Generator j as {element-word tuple: vector of M} (degrees >= 1)."""
        if self.degree < 1:
            raise ValueError("cocycle tables exist in positive degrees only")
        bar = BarComplex(self.group, self.module)
        table = {}
        for idx, v in self.generators[j].items():
            tup, b = bar.decode(idx, self.degree)
            key = tuple(self.group.word(g) for g in tup)
            table.setdefault(key, [0] * self.module.rank)[b] += v
        return table

    def __str__(self):
        return str(self.presentation)


@dataclass
class CohomologyMap:
    source: CohomologyGroup
    target: CohomologyGroup
    matrix: IntMatrix

    def __call__(self, coords):
        v = self.matrix @ list(coords) if self.matrix.rows else []
        return tuple(x % d for x, d in zip(v, self.target.invariants))


class BarComplex:
    """Inhomogeneous (co)chains of G with values in M."""

    def __init__(self, G: Group, M: GLattice):
        self.G, self.M = G, M
        self.n, self.r = G.order, M.rank
        self.colnz = [[[(a, act.data[a][b]) for a in range(M.rank) if act.data[a][b]]
                       for b in range(M.rank)] for act in M.action]
        self.inv_colnz = [self.colnz[G.inverses[g]] for g in range(G.order)]

    def dim(self, i):
        return self.n ** i * self.r

    def index(self, tup, b):
        k = 0
        for t in tup:
            k = k * self.n + t
        return k * self.r + b

    def decode(self, idx, i):
        idx, b = divmod(idx, self.r)
        tup = []
        for _ in range(i):
            idx, t = divmod(idx, self.n)
            tup.append(t)
        return tuple(reversed(tup)), b

    def basis(self, i):
        for tup in itertools.product(range(self.n), repeat=i):
            for b in range(self.r):
                yield tup, b

    def d_column(self, i, tup, b):
        """d^i applied to the cochain that is e_b at ``tup`` and 0 elsewhere."""
        G, n, r = self.G, self.n, self.r
        out = {}
        base = 0
        for t in tup:
            base = base * n + t
        # g1 . f(g2, ..., g_{i+1})
        for x in range(n):
            row = (x * n ** i + base) * r
            for a, v in self.colnz[x][b]:
                out[row + a] = out.get(row + a, 0) + v
        # (-1)^j f(..., g_j g_{j+1}, ...)
        inv, table = G.inverses, G.table
        for j in range(1, i + 1):
            sign = -1 if j % 2 else 1
            g = tup[j - 1]
            head, tail = tup[:j - 1], tup[j:]
            for x in range(n):
                k = 0
                for t in head + (x, table[inv[x]][g]) + tail:
                    k = k * n + t
                key = k * r + b
                out[key] = out.get(key, 0) + sign
        # (-1)^(i+1) f(g1, ..., g_i)
        sign = 1 if i % 2 else -1
        for x in range(n):
            key = (base * n + x) * r + b
            out[key] = out.get(key, 0) + sign
        return {k: v for k, v in out.items() if v}

    def apply_d(self, i, x):
        out = {}
        for idx, c in x.items():
            tup, b = self.decode(idx, i)
            for k, v in self.d_column(i, tup, b).items():
                out[k] = out.get(k, 0) + c * v
        return {k: v for k, v in out.items() if v}

    def d_matrix(self, i):
        cols = [self.d_column(i, tup, b) for tup, b in self.basis(i)]
        return IntMatrix.from_columns([[c.get(k, 0) for k in range(self.dim(i + 1))] for c in cols],
                                      self.dim(i + 1))

    def boundary2_column(self, g, h, b):
        """d_2(e_b (x) [g|h]) = e_b.g (x) [h] - e_b (x) [gh] + e_b (x) [g], m.g = g^-1 m."""
        r = self.r
        out = {}
        for a, v in self.inv_colnz[g][b]:
            out[h * r + a] = out.get(h * r + a, 0) + v
        k = self.G.table[g][h] * r + b
        out[k] = out.get(k, 0) - 1
        k = g * r + b
        out[k] = out.get(k, 0) + 1
        return {k: v for k, v in out.items() if v}

    def boundary1_matrix(self):
        """d_1: C_1 -> C_0 = M, e_b (x) [g] |-> g^-1 e_b - e_b."""
        r, n = self.r, self.n
        m = IntMatrix.zeros(r, n * r)
        for g in range(n):
            for b in range(r):
                col = g * r + b
                for a, v in self.inv_colnz[g][b]:
                    m.data[a][col] += v
                m.data[b][col] -= 1
        return m

    def certify_finite(self, i):
        """Check s d^i - d^{i-1} s == (-1)^(i+1) |G| on every basis cochain of C^i."""
        n, r = self.n, self.r
        target = (1 if i % 2 else -1) * n
        for tup, b in self.basis(i):
            lhs = {}
            for k, v in self.d_column(i, tup, b).items():
                kk = (k // r // n) * r + k % r
                lhs[kk] = lhs.get(kk, 0) + v
            for k, v in self.d_column(i - 1, tup[:-1], b).items():
                lhs[k] = lhs.get(k, 0) - v
            lhs = {k: v for k, v in lhs.items() if v}
            if lhs != {self.index(tup, b): target}:
                raise ExactnessError(f"homotopy identity fails at {tup}, {b}")
        return True


def _check_ceiling(size, ceiling, what):
    ceiling = resource_ceiling() if ceiling is None else ceiling
    if size > ceiling:
        raise ResourceLimitError(f"{what} needs {size} cochain columns (ceiling {ceiling})")


def tate(G: Group, M: GLattice, i, ceiling=None, certify=True) -> CohomologyGroup:
    """Tate cohomology group of degree i in [-2, 3]."""
    if i not in DEGREES:
        raise InputError(f"degree {i} outside the supported range -2..3")
    if M.group is not G:
        raise InputError("lattice is over a different group")
    cache = M.__dict__.setdefault("_tate_cache", {})
    key = (i, certify)
    if key in cache:
        return cache[key]
    if i >= 1:
        _check_ceiling(G.order ** i * M.rank, ceiling, f"H^{i}")
        H = _positive(G, M, i, certify)
    elif i == 0:
        H = _degree_zero(G, M)
    elif i == -1:
        H = _degree_minus_one(G, M)
    else:
        _check_ceiling(G.order ** 2 * M.rank, ceiling, "H^-2")
        H = _degree_minus_two(G, M)
    if H.presentation.free_rank:
        raise ExactnessError(f"H^{i} came out infinite; the group or lattice data is broken")
    cache[key] = H
    return H


def _positive(G, M, i, certify):
    bar = BarComplex(G, M)
    N = bar.dim(i)
    rels = (bar.d_column(i - 1, tup, b) for tup, b in bar.basis(i - 1))
    sq = SparseQuotient(N, rels)
    if certify and M.rank:
        bar.certify_finite(i)
    gens = sq.torsion_generators()
    if certify:
        for u in gens:
            if bar.apply_d(i, u):
                raise ExactnessError(f"H^{i} generator is not a cocycle")
    return CohomologyGroup(i, AbelianPresentation(0, sq.torsion), gens, G, M, certify,
                           _coords=sq.torsion_coordinates)


def _subquotient(K, relation_vectors, G, M, degree):
    """(Z-span of K's columns) / (given vectors, all inside that span)."""
    k = K.cols
    C = solve_integer(K, IntMatrix.from_columns(relation_vectors, K.rows)) \
        if relation_vectors else IntMatrix.zeros(k, 0)
    sq = SparseQuotient(k, [dense_to_sparse(C.column(j)) for j in range(C.cols)])
    gens = []
    for u in sq.torsion_generators():
        gens.append(K @ [u.get(t, 0) for t in range(k)])

    def coords(x):
        y = solve_integer(K, IntMatrix.from_columns([list(x)], K.rows)).column(0)
        return sq.torsion_coordinates(dense_to_sparse(y))

    return CohomologyGroup(degree, AbelianPresentation(sq.coker_free_rank, sq.torsion), gens,
                           G, M, True, _coords=coords)


def _degree_zero(G, M):
    K = kernel_basis(M.invariants_matrix()) if M.rank else IntMatrix.zeros(0, 0)
    N = M.norm_matrix()
    return _subquotient(K, N.columns(), G, M, 0)


def _degree_minus_one(G, M):
    N = M.norm_matrix()
    K = kernel_basis(N) if M.rank else IntMatrix.zeros(0, 0)
    I = IntMatrix.identity(M.rank)
    vecs = []
    for g in G.generators:
        vecs += (M.action[g] - I).columns()
    return _subquotient(K, vecs, G, M, -1)


def _degree_minus_two(G, M):
    bar = BarComplex(G, M)
    n, r = bar.n, bar.r
    rels = (bar.boundary2_column(g, h, b) for g in range(n) for h in range(n) for b in range(r))
    sq = SparseQuotient(n * r, rels)
    d1_rank = snf(bar.boundary1_matrix(), transforms=False).rank if r else 0
    free = n * r - sq.rank - d1_rank
    return CohomologyGroup(-2, AbelianPresentation(free, sq.torsion), sq.torsion_generators(),
                           G, M, True, _coords=sq.torsion_coordinates)


def restriction_map(G: Group, C: Subgroup, M: GLattice, i, source=None, target=None,
                    ceiling=None) -> CohomologyMap:
    """res: H^i(G, M) -> H^i(C, M|_C) for i in {0, 1, 2}."""
    if i not in (0, 1, 2):
        raise InputError("restriction maps are implemented in degrees 0, 1, 2 only")
    if C.parent is not G:
        raise InputError("subgroup of a different group")
    src = source or tate(G, M, i, ceiling)
    MC = restrict(M, C)
    tgt = target or tate(C.as_group, MC, i, ceiling)
    cols = []
    if i == 0:
        for x in src.generators:
            cols.append(list(tgt.coordinates(x)))
    else:
        pos = {g: k for k, g in enumerate(C.members)}
        nC, r = C.order, M.rank
        barG = BarComplex(G, M)
        for u in src.generators:
            v = {}
            for idx, c in u.items():
                tup, b = barG.decode(idx, i)
                if all(t in pos for t in tup):
                    k = 0
                    for t in tup:
                        k = k * nC + pos[t]
                    key = k * r + b
                    v[key] = v.get(key, 0) + c
            cols.append(list(tgt.coordinates(v)))
    mat = IntMatrix.from_columns(cols, len(tgt.invariants))
    return CohomologyMap(src, tgt, mat)


# -- H^1 of the torus lattice by two further routes ---------------------------

def _as_list(H):
    return list(H) if isinstance(H, (list, tuple)) else [H]


def transfer_counts(G: Group, H: Subgroup, iota, p):
    """For each g: the iota-exponent of Ver_{G->H+}(g) modulo H, mod p.

    Each <g>-orbit on G/H+ with representative r and length f contributes
    the e with r^-1 g^f r in iota^e H; this is the value of the character
    of H+/H = <iota H> on the transfer.
    """
    Hp = subgroup_closure(G, tuple(H.generating_set()) + (iota,))
    exponent = {}
    for e in range(p):
        ie = G.power(iota, e)
        for x in H.members:
            exponent[G.mul(ie, x)] = e
    coset_of, cosets = left_cosets(G, Hp)
    counts = []
    for g in range(G.order):
        total = 0
        for rep, f in coset_orbits(G, Hp, g, coset_of, cosets):
            h = G.mul(G.mul(G.inv(rep), G.power(g, f)), rep)
            total += exponent[h]
        counts.append(total % p)
    return counts


def h1_via_transfer(G: Group, H, iota) -> CohomologyGroup:
    """H^1(G, X) from the transfer criterion.

    A class is a family of characters chi_i of H_i+/H_i ~ Z/p (one per
    non-degenerate factor) with sum_i chi_i(Ver_{G->H_i+}(g)) = 0 for all g.
    In the field case this is Z/p when every transfer count vanishes mod p
    and 0 otherwise.
    """
    subs = _as_list(H)
    p = iota.p
    live = [S for S in subs if iota.iota not in S]
    if len(subs) == 1 and not live:
        raise DegenerateTowerError("iota lies in H; the transfer criterion needs iota not in H")
    rows = [transfer_counts(G, S, iota.iota, p) for S in live]
    # solutions c in F_p^len(live) of sum_i c_i rows[i][g] = 0 for all g
    rank_p = _rank_mod_p([[rows[i][g] for i in range(len(live))] for g in range(G.order)], p) \
        if live else 0
    dim = len(live) - rank_p
    witness = {G.word(g): [rows[i][g] for i in range(len(live))] for g in range(G.order)}
    pres = AbelianPresentation(0, (p,) * dim)
    return CohomologyGroup(1, pres, [], G, None, True, witness=witness)


def _rank_mod_p(rows, p):
    rows = [[x % p for x in r] for r in rows if any(x % p for x in r)]
    rank = 0
    ncols = len(rows[0]) if rows else 0
    for c in range(ncols):
        piv = next((k for k in range(rank, len(rows)) if rows[k][c]), None)
        if piv is None:
            continue
        rows[rank], rows[piv] = rows[piv], rows[rank]
        inv = pow(rows[rank][c], -1, p)
        rows[rank] = [x * inv % p for x in rows[rank]]
        for k in range(len(rows)):
            if k != rank and rows[k][c]:
                f = rows[k][c]
                rows[k] = [(x - f * y) % p for x, y in zip(rows[k], rows[rank])]
        rank += 1
    return rank


def _push_cochain(u, r_src, f_cols, offset, out):
    """Apply a lattice map (given by nonzero column lists) to a cochain."""
    for idx, c in u.items():
        k, b = divmod(idx, r_src)
        for a, v in f_cols[b]:
            key = (k, offset + a)
            out[key] = out.get(key, 0) + c * v


def les_h1(G: Group, H, iota, ceiling=None, certify=True, per_factor=False) -> CohomologyGroup:
    """H^1(G, X) = ker(H^2(G, A) -> H^2(G, B)) for 0 -> A -> B -> X -> 0,
    A = (+) Z[G/H_i+], B = (+) Z[G/H_i] (+) Z (one Z per factor when
    ``per_factor``).  Uses H^1(G, B) = 0.  Each summand's H^2 is computed
    on its own and the pushed-forward cocycles are located in them.
    """
    subs = _as_list(H)
    src_parts = []  # (lattice, H^2)
    tgt_parts = []
    links = []  # (source part, target part, nonzero column lists)
    Z = trivial_lattice(G)
    Hz = tate(G, Z, 2, ceiling, certify)
    shared = None
    for t, S in enumerate(subs):
        Hp = subgroup_closure(G, tuple(S.generating_set()) + (iota.iota,))
        A = permutation_lattice(G, Hp)
        Bt = permutation_lattice(G, S)
        fib = fiber_sum_map(G, S, Hp, A, Bt).matrix
        a_idx = len(src_parts)
        src_parts.append((A, tate(G, A, 2, ceiling, certify)))
        b_idx = len(tgt_parts)
        tgt_parts.append((Bt, tate(G, Bt, 2, ceiling, certify)))
        links.append((a_idx, b_idx, [[(x, fib.data[x][b]) for x in range(Bt.rank) if fib.data[x][b]]
                                     for b in range(A.rank)]))
        if per_factor or shared is None:
            z_idx = len(tgt_parts)
            tgt_parts.append((Z, Hz))
            if not per_factor:
                shared = z_idx
        else:
            z_idx = shared
        links.append((a_idx, z_idx, [[(0, -1)] for _ in range(A.rank)]))
    src_inv, tgt_inv = [], []
    for _, Hs in src_parts:
        src_inv += list(Hs.invariants)
    for _, Ht in tgt_parts:
        tgt_inv += list(Ht.invariants)
    cols = []
    for a_idx, (A, Hs) in enumerate(src_parts):
        for u in Hs.generators:
            pushed = {t: {} for t in range(len(tgt_parts))}
            for s_idx, t_idx, fcols in links:
                if s_idx != a_idx:
                    continue
                tmp = {}
                _push_cochain(u, A.rank, fcols, 0, tmp)
                rt = tgt_parts[t_idx][0].rank
                dst = pushed[t_idx]
                for (k, a), v in tmp.items():
                    key = k * rt + a
                    dst[key] = dst.get(key, 0) + v
            col = []
            for t_idx, (_, Ht) in enumerate(tgt_parts):
                col += list(Ht.coordinates({k: v for k, v in pushed[t_idx].items() if v}))
            cols.append(col)
    mat = IntMatrix.from_columns(cols, len(tgt_inv)) if cols else IntMatrix.zeros(len(tgt_inv), 0)
    ker = hom_kernel(src_inv, tgt_inv, mat)
    return CohomologyGroup(1, AbelianPresentation(0, ker.invariants), [], G, None, certify)


def same_group(a: CohomologyGroup, b: CohomologyGroup) -> bool:
    return a.presentation == b.presentation


def h1_cross_check(G, H, iota, X, ceiling=None, per_factor=False):
    """Compute H^1(G, X) three ways; raise CrossCheckError on disagreement."""
    direct = tate(G, X, 1, ceiling)
    les = les_h1(G, H, iota, ceiling, per_factor=per_factor)
    subs = _as_list(H)
    try:
        if per_factor:
            raise DegenerateTowerError("transfer route is for the shared multiplier")
        via = h1_via_transfer(G, subs if len(subs) > 1 else subs[0], iota)
    except DegenerateTowerError:
        via = None
    if not same_group(direct, les):
        raise CrossCheckError(f"H^1 mismatch: bar {direct} vs exact sequence {les}")
    if via is not None and not same_group(direct, via):
        raise CrossCheckError(f"H^1 mismatch: bar {direct} vs transfer {via}")
    return direct, les, via
