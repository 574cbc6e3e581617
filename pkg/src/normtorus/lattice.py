"""
G-lattices: free Z-modules of finite rank with a G-action, and
G-equivariant maps between them.

An action is stored for every group element, not only for generators.  At
the group sizes handled here that costs nothing and it lets construction
check the homomorphism property on all pairs.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .errors import InputError, TorsionCokernelError
from .groups import Group, Subgroup, left_cosets
from .intlinalg import IntMatrix, snf


def _mat(m):
    return m if isinstance(m, IntMatrix) else IntMatrix(m)


class GLattice:
    """Z^rank with ``action[g]`` an invertible integer matrix for each g."""

    def __init__(self, group: Group, rank, action, basis_labels=None, check=True):
        self.group = group
        self.rank = int(rank)
        self.action = [_mat(a) for a in action]
        if len(self.action) != group.order:
            raise InputError(f"need {group.order} action matrices, got {len(self.action)}")
        for a in self.action:
            if a.shape != (self.rank, self.rank):
                raise InputError(f"action matrix of shape {a.shape}, expected rank {self.rank}")
        self.basis_labels = list(basis_labels) if basis_labels is not None else \
            [f"e{i}" for i in range(self.rank)]
        if len(self.basis_labels) != self.rank:
            raise InputError("one basis label per basis vector required")
        if check:
            self.verify()

    def verify(self):
        G, act = self.group, self.action
        if act[0] != IntMatrix.identity(self.rank):
            raise InputError("identity must act trivially")
        for g in range(G.order):
            for h in range(G.order):
                if act[g] @ act[h] != act[G.mul(g, h)]:
                    raise InputError(
                        f"action is not a homomorphism at ({G.word(g)}, {G.word(h)})")
        # rho(g) rho(g^-1) = 1 now holds, so every matrix is unimodular

    def __repr__(self):
        return f"<GLattice rank {self.rank} over {self.group.label}>"

    def act(self, g, v):
        return self.action[g] @ v

    def norm_matrix(self):
        N = IntMatrix.zeros(self.rank, self.rank)
        for a in self.action:
            N = N + a
        return N

    def invariants_matrix(self):
        """Stack of (rho(g) - 1) over the generators; its kernel is M^G."""
        I = IntMatrix.identity(self.rank)
        blocks = [self.action[g] - I for g in self.group.generators]
        if not blocks:
            return IntMatrix.zeros(0, self.rank)
        M = blocks[0]
        for b in blocks[1:]:
            M = M.vstack(b)
        return M

    def to_dict(self):
        G = self.group
        return {
            "group": G.label,
            "rank": self.rank,
            "basis_labels": list(self.basis_labels),
            "generators": {G.word(g): self.action[g].tolist() for g in G.generators},
        }


@dataclass
class LatticeMap:
    source: GLattice
    target: GLattice
    matrix: IntMatrix
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        self.matrix = _mat(self.matrix) if self.matrix is not None else None
        if self.source.group is not self.target.group:
            raise InputError("lattice map between lattices over different groups")
        if self.matrix.shape != (self.target.rank, self.source.rank):
            if not (self.target.rank == 0 or self.source.rank == 0):
                raise InputError(f"map matrix has shape {self.matrix.shape}")
            self.matrix = IntMatrix.zeros(self.target.rank, self.source.rank)
        if self.check:
            for g in range(self.source.group.order):
                if self.target.action[g] @ self.matrix != self.matrix @ self.source.action[g]:
                    raise InputError(f"map is not equivariant at {self.source.group.word(g)}")

    def __call__(self, v):
        return self.matrix @ v

    def compose(self, other: "LatticeMap") -> "LatticeMap":
        """self o other"""
        return LatticeMap(other.source, self.target, self.matrix @ other.matrix)


def _group_cache(G):
    return G.__dict__.setdefault("_lattice_cache", {})


def trivial_lattice(G: Group, rank=1) -> GLattice:
    cache = _group_cache(G)
    if ("trivial", rank) not in cache:
        cache[("trivial", rank)] = _trivial_lattice(G, rank)
    return cache[("trivial", rank)]


def _trivial_lattice(G, rank):
    I = IntMatrix.identity(rank)
    labels = ["1"] if rank == 1 else [f"1_{i}" for i in range(rank)]
    return GLattice(G, rank, [I] * G.order, labels, check=False)


def zero_lattice(G: Group) -> GLattice:
    return GLattice(G, 0, [IntMatrix.zeros(0, 0)] * G.order, [], check=False)


def permutation_lattice(G: Group, S: Subgroup) -> GLattice:
    """Z[G/S] with basis the left cosets gS (ordered by least element).

    Cached per group, so cohomology computed on it is shared.
    """
    if S.parent is not G:
        raise InputError("subgroup belongs to another group")
    cache = _group_cache(G)
    key = ("perm", S.members)
    if key not in cache:
        cache[key] = _permutation_lattice(G, S)
    return cache[key]


def _permutation_lattice(G, S):
    coset_of, cosets = left_cosets(G, S)
    k = len(cosets)
    action = []
    for g in range(G.order):
        m = [[0] * k for _ in range(k)]
        for c, members in enumerate(cosets):
            m[coset_of[G.mul(g, members[0])]][c] = 1
        action.append(IntMatrix(m, k, k))
    labels = [_coset_label(G, members[0], S) for members in cosets]
    return GLattice(G, k, action, labels, check=False)


def _coset_label(G, rep, S):
    w = G.word(rep)
    tag = "H" if S.order < G.order else "G"
    return f"{tag}" if w == "1" else f"{w}{tag}"


def fiber_sum_map(G: Group, H: Subgroup, Hplus: Subgroup, source=None, target=None) -> LatticeMap:
    """Z[G/H+] -> Z[G/H], gH+ |-> sum of the cosets g'H inside gH+."""
    if not H.issubset(Hplus):
        raise InputError("H is not contained in H+")
    src = source or permutation_lattice(G, Hplus)
    tgt = target or permutation_lattice(G, H)
    coset_H, cosets_H = left_cosets(G, H)
    coset_P, cosets_P = left_cosets(G, Hplus)
    m = [[0] * len(cosets_P) for _ in range(len(cosets_H))]
    for c, members in enumerate(cosets_H):
        m[c][coset_P[members[0]]] = 1
    return LatticeMap(src, tgt, IntMatrix(m, len(cosets_H), len(cosets_P)))


def augmentation_map(M: GLattice, coefficient=1) -> LatticeMap:
    """Permutation-lattice augmentation (sum of coordinates) into trivial Z."""
    Z = trivial_lattice(M.group)
    return LatticeMap(M, Z, IntMatrix([[coefficient] * M.rank], 1, M.rank))


def direct_sum(*lattices: GLattice) -> GLattice:
    if not lattices:
        raise InputError("direct sum of nothing")
    G = lattices[0].group
    if any(L.group is not G for L in lattices):
        raise InputError("direct sum of lattices over different groups")
    n = sum(L.rank for L in lattices)
    action = []
    for g in range(G.order):
        m = IntMatrix.zeros(n, n)
        off = 0
        for L in lattices:
            a = L.action[g]
            for i in range(L.rank):
                m.data[off + i][off:off + L.rank] = a.data[i]
            off += L.rank
        action.append(m)
    labels = []
    for t, L in enumerate(lattices):
        labels += [f"{lab}" if len(lattices) == 1 else f"{lab}@{t}" for lab in L.basis_labels]
    return GLattice(G, n, action, labels, check=False)


def map_into_sum(summands, t) -> LatticeMap:
    """Inclusion of the t-th summand."""
    total = direct_sum(*summands)
    off = sum(L.rank for L in summands[:t])
    m = IntMatrix.zeros(total.rank, summands[t].rank)
    for i in range(summands[t].rank):
        m.data[off + i][i] = 1
    return LatticeMap(summands[t], total, m)


def projection_from_sum(summands, t) -> LatticeMap:
    total = direct_sum(*summands)
    off = sum(L.rank for L in summands[:t])
    m = IntMatrix.zeros(summands[t].rank, total.rank)
    for i in range(summands[t].rank):
        m.data[i][off + i] = 1
    return LatticeMap(total, summands[t], m)


def block_map(blocks, sources, targets) -> LatticeMap:
    """Assemble a map between direct sums from a grid of matrices
    (``blocks[i][j]`` maps source j to target i; ``None`` means zero)."""
    src, tgt = direct_sum(*sources), direct_sum(*targets)
    m = IntMatrix.zeros(tgt.rank, src.rank)
    roff = 0
    for i, T in enumerate(targets):
        coff = 0
        for j, S in enumerate(sources):
            b = blocks[i][j]
            if b is not None:
                b = _mat(b)
                for r in range(T.rank):
                    m.data[roff + r][coff:coff + S.rank] = b.data[r]
            coff += S.rank
        roff += T.rank
    return LatticeMap(src, tgt, m)


@dataclass
class Cokernel:
    lattice: GLattice
    quotient: LatticeMap
    section: IntMatrix  # columns: lifts of the quotient basis


def cokernel_lattice(f: LatticeMap) -> Cokernel:
    """coker(f) as a G-lattice, with the quotient map.

    Raises ``TorsionCokernelError`` unless every nonzero invariant factor
    of ``f.matrix`` is 1.
    """
    T = f.target
    A = f.matrix
    res = snf(A)
    diag = res.invariant_factors()
    if any(d != 1 for d in diag):
        raise TorsionCokernelError(
            f"cokernel has torsion (invariant factors {[d for d in diag if d != 1]})")
    k = res.rank
    m = T.rank
    q = IntMatrix([res.U.data[i] for i in range(k, m)], m - k, m)
    lift = IntMatrix([[res.U_inv.data[i][j] for j in range(k, m)] for i in range(m)], m, m - k)
    action = [q @ T.action[g] @ lift for g in range(T.group.order)]
    labels = [_combination_label(lift.column(j), T.basis_labels) for j in range(m - k)]
    C = GLattice(T.group, m - k, action, labels, check=True)
    return Cokernel(C, LatticeMap(T, C, q), lift)


def _combination_label(col, labels):
    terms = []
    for c, lab in zip(col, labels):
        if c == 0:
            continue
        if c == 1:
            terms.append(f"+{lab}")
        elif c == -1:
            terms.append(f"-{lab}")
        else:
            terms.append(f"{c:+d}{lab}")
    s = "".join(terms)
    return s[1:] if s.startswith("+") else (s or "0")


def restrict(M: GLattice, S: Subgroup) -> GLattice:
    """M viewed as an S-lattice (over ``S.as_group``)."""
    if S.parent is not M.group:
        raise InputError("subgroup of a different group")
    H = S.as_group
    return GLattice(H, M.rank, [M.action[g] for g in S.members], M.basis_labels, check=False)


def random_lattice(G: Group, rng, max_rank=4, summands=2):
    """A random G-lattice: a direct sum of random permutation lattices, twisted
    by a random unimodular change of basis."""
    from .groups import subgroup_classes
    subs = subgroup_classes(G)
    pieces = []
    for _ in range(rng.randint(1, summands)):
        S = rng.choice(subs)
        if S.index <= max_rank:
            pieces.append(permutation_lattice(G, S))
    if not pieces:
        pieces = [trivial_lattice(G)]
    L = direct_sum(*pieces)
    n = L.rank
    P = IntMatrix.identity(n)
    Pi = IntMatrix.identity(n)
    for _ in range(2 * n):
        i, j = rng.randrange(n), rng.randrange(n)
        if i == j:
            continue
        c = rng.choice([-1, 1, 2])
        E = IntMatrix.identity(n)
        E.data[i][j] = c
        Ei = IntMatrix.identity(n)
        Ei.data[i][j] = -c
        P = E @ P
        Pi = Pi @ Ei
    action = [P @ a @ Pi for a in L.action]
    return GLattice(G, n, action, [f"e{i}" for i in range(n)], check=False)
