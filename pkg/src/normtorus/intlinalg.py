"""
Exact integer linear algebra.

Everything here works on Python ints, so entry growth during elimination
never overflows.  Dense matrices are ``IntMatrix`` objects (row-major lists
of lists); large, sparse relation modules go through ``SparseQuotient``,
which eliminates unit pivots first and only hands the small residue to the
dense Smith normal form.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass, field
from math import prod

from .errors import ExactnessError


class IntMatrix:
    """A rows x cols integer matrix.  Keeps its shape even when empty."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data, rows=None, cols=None):
        data = [list(map(int, row)) for row in data]
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(row) != cols for row in data):
            raise ValueError("ragged or mis-sized matrix data")
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def zeros(cls, rows, cols):
        return cls([[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, n):
        return cls([[int(i == j) for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, columns, rows):
        columns = [list(c) for c in columns]
        return cls([[c[i] for c in columns] for i in range(rows)], rows, len(columns))

    @classmethod
    def diagonal(cls, entries, rows=None, cols=None):
        n = len(entries)
        rows = n if rows is None else rows
        cols = n if cols is None else cols
        m = cls.zeros(rows, cols)
        for i, d in enumerate(entries):
            m.data[i][i] = d
        return m

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def entries(self):
        return [x for row in self.data for x in row]

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def column(self, j):
        return [row[j] for row in self.data]

    def columns(self):
        return [self.column(j) for j in range(self.cols)]

    def row(self, i):
        return list(self.data[i])

    @property
    def T(self):
        return IntMatrix([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)],
                         self.cols, self.rows)

    def __matmul__(self, other):
        if isinstance(other, IntMatrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ot = other.T.data
            return IntMatrix([[sum(a * b for a, b in zip(row, col) if a) for col in ot]
                              for row in self.data], self.rows, other.cols)
        vec = list(other)
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return [sum(a * b for a, b in zip(row, vec) if a) for row in self.data]

    def __add__(self, other):
        return IntMatrix([[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
                         self.rows, self.cols)

    def __sub__(self, other):
        return IntMatrix([[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)],
                         self.rows, self.cols)

    def __neg__(self):
        return IntMatrix([[-a for a in r] for r in self.data], self.rows, self.cols)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.shape == other.shape and self.data == other.data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(map(tuple, self.data))))

    def is_zero(self):
        return all(x == 0 for row in self.data for x in row)

    def hstack(self, other):
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return IntMatrix([r + s for r, s in zip(self.data, other.data)], self.rows,
                         self.cols + other.cols)

    def vstack(self, other):
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return IntMatrix(self.data + other.data, self.rows + other.rows, self.cols)

    def submatrix(self, rows, cols):
        rows, cols = list(rows), list(cols)
        return IntMatrix([[self.data[i][j] for j in cols] for i in rows], len(rows), len(cols))

    def copy(self):
        return IntMatrix([list(r) for r in self.data], self.rows, self.cols)

    def tolist(self):
        return [list(r) for r in self.data]

    def __repr__(self):
        return f"IntMatrix({self.data!r}, rows={self.rows}, cols={self.cols})"


def as_matrix(A) -> IntMatrix:
    return A if isinstance(A, IntMatrix) else IntMatrix(A)


def xgcd(a, b):
    """Return (x, y, g) with x*a + y*b == g == gcd(a, b) >= 0."""
    x, next_x = 1, 0
    y, next_y = 0, 1
    g, next_g = a, b
    while next_g:
        q = g // next_g
        x, next_x = next_x, x - q * next_x
        y, next_y = next_y, y - q * next_y
        g, next_g = next_g, g - q * next_g
    if g < 0:
        x, y, g = -x, -y, -g
    return x, y, g


@dataclass
class SNFResult:
    """``U @ A @ V == S``; ``U_inv`` is kept because cokernel bases need it."""

    S: IntMatrix
    U: IntMatrix
    V: IntMatrix
    U_inv: IntMatrix

    @property
    def diagonal(self):
        return [self.S.data[i][i] for i in range(min(self.S.rows, self.S.cols))]

    @property
    def rank(self):
        return sum(1 for d in self.diagonal if d)

    def invariant_factors(self):
        return [d for d in self.diagonal if d]


def snf(A, transforms=True) -> SNFResult:
    """Smith normal form with unimodular transforms.

    Pivot rule: the nonzero entry of least absolute value in the active
    block (ties broken by row, then column).  The result is deterministic
    in ``A``.  With ``transforms=False`` only ``S`` is meaningful.
    """
    A = as_matrix(A)
    m, n = A.rows, A.cols
    D = [list(r) for r in A.data]
    if transforms:
        U = [[int(i == j) for j in range(m)] for i in range(m)]
        Ui = [[int(i == j) for j in range(m)] for i in range(m)]
        V = [[int(i == j) for j in range(n)] for i in range(n)]
    else:
        U = Ui = V = None

    def row_swap(i, k):
        if i == k:
            return
        D[i], D[k] = D[k], D[i]
        if transforms:
            U[i], U[k] = U[k], U[i]
            for r in Ui:
                r[i], r[k] = r[k], r[i]

    def col_swap(j, k):
        if j == k:
            return
        for r in D:
            r[j], r[k] = r[k], r[j]
        if transforms:
            for r in V:
                r[j], r[k] = r[k], r[j]

    def row_addmul(i, k, q):
        # row_i += q * row_k
        Di, Dk = D[i], D[k]
        for j in range(n):
            if Dk[j]:
                Di[j] += q * Dk[j]
        if transforms:
            Uu, Uk = U[i], U[k]
            for j in range(m):
                if Uk[j]:
                    Uu[j] += q * Uk[j]
            for r in Ui:
                if r[i]:
                    r[k] -= q * r[i]

    def col_addmul(j, k, q):
        # col_j += q * col_k
        for r in D:
            if r[k]:
                r[j] += q * r[k]
        if transforms:
            for r in V:
                if r[k]:
                    r[j] += q * r[k]

    def find_pivot(t):
        best = None
        for i in range(t, m):
            row = D[i]
            for j in range(t, n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        return best
        return best

    for t in range(min(m, n)):
        piv = find_pivot(t)
        if piv is None:
            break
        _, i0, j0 = piv
        row_swap(t, i0)
        col_swap(t, j0)
        while True:
            p = D[t][t]
            dirty = False
            for i in range(t + 1, m):
                if D[i][t]:
                    row_addmul(i, t, -(D[i][t] // p))
                    if D[i][t]:
                        dirty = True
            for j in range(t + 1, n):
                if D[t][j]:
                    col_addmul(j, t, -(D[t][j] // p))
                    if D[t][j]:
                        dirty = True
            if dirty:
                # a nonzero remainder smaller than |p| sits in row/col t
                best = (abs(p), t, t)
                for i in range(t + 1, m):
                    x = D[i][t]
                    if x and abs(x) < best[0]:
                        best = (abs(x), i, t)
                for j in range(t + 1, n):
                    x = D[t][j]
                    if x and abs(x) < best[0]:
                        best = (abs(x), t, j)
                row_swap(t, best[1])
                col_swap(t, best[2])
                continue
            bad = None
            for i in range(t + 1, m):
                row = D[i]
                for j in range(t + 1, n):
                    if row[j] % p:
                        bad = i
                        break
                if bad is not None:
                    break
            if bad is None:
                break
            row_addmul(t, bad, 1)
        if D[t][t] < 0:
            D[t] = [-x for x in D[t]]
            if transforms:
                U[t] = [-x for x in U[t]]
                for r in Ui:
                    r[t] = -r[t]

    S = IntMatrix(D, m, n)
    if not transforms:
        return SNFResult(S, None, None, None)
    return SNFResult(S, IntMatrix(U, m, m), IntMatrix(V, n, n), IntMatrix(Ui, m, m))


def is_snf(S) -> bool:
    S = as_matrix(S)
    for i in range(S.rows):
        for j in range(S.cols):
            if i != j and S.data[i][j]:
                return False
    diag = [S.data[i][i] for i in range(min(S.rows, S.cols))]
    if any(d < 0 for d in diag):
        return False
    nonzero = [d for d in diag if d]
    if diag[:len(nonzero)] != nonzero:
        return False
    return all(b % a == 0 for a, b in zip(nonzero, nonzero[1:]))


def hnf(A) -> IntMatrix:
    """Row-style Hermite normal form (upper echelon, positive pivots,
    entries above each pivot reduced into [0, pivot)).  Zero rows dropped."""
    A = as_matrix(A)
    rows = [list(r) for r in A.data]
    n = A.cols
    out = []
    for j in range(n):
        live = [r for r in rows if r[j]]
        rest = [r for r in rows if not r[j]]
        if not live:
            continue
        piv = live[0]
        for r in live[1:]:
            a, b = piv[j], r[j]
            x, y, g = xgcd(a, b)
            ag, bg = a // g, b // g
            piv, r2 = ([x * u + y * v for u, v in zip(piv, r)],
                       [-bg * u + ag * v for u, v in zip(piv, r)])
            rest.append(r2)
        if piv[j] < 0:
            piv = [-u for u in piv]
        for k, prev in enumerate(out):
            q = prev[j] // piv[j]
            if q:
                out[k] = [u - q * v for u, v in zip(prev, piv)]
        out.append(piv)
        rows = [r for r in rest if any(r)]
    return IntMatrix(out, len(out), n)


@dataclass(frozen=True)
class AbelianPresentation:
    """Z^free_rank x Z/t1 x ... x Z/tk with t1 | t2 | ... and every ti > 1."""

    free_rank: int = 0
    torsion: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "torsion", tuple(int(t) for t in self.torsion))
        for a, b in zip(self.torsion, self.torsion[1:]):
            if b % a:
                raise ValueError(f"invariant factors {self.torsion} break divisibility")
        if any(t <= 1 for t in self.torsion):
            raise ValueError("invariant factors must exceed 1")
        if self.free_rank < 0:
            raise ValueError("negative free rank")

    @property
    def order(self):
        """Group order; ``None`` when infinite."""
        return None if self.free_rank else prod(self.torsion)

    def is_trivial(self):
        return self.free_rank == 0 and not self.torsion

    def direct_sum(self, other):
        return presentation_from_factors(self.torsion + other.torsion,
                                         self.free_rank + other.free_rank)

    def __str__(self):
        parts = [f"Z/{t}" for t in self.torsion] + ["Z"] * self.free_rank
        return " x ".join(parts) if parts else "0"


def presentation_from_factors(factors, free_rank=0) -> AbelianPresentation:
    """Normalise an arbitrary list of cyclic orders into invariant factors."""
    factors = [abs(int(f)) for f in factors]
    free_rank += sum(1 for f in factors if f == 0)
    factors = [f for f in factors if f > 1]
    if not factors:
        return AbelianPresentation(free_rank, ())
    res = snf(IntMatrix.diagonal(factors), transforms=False)
    return AbelianPresentation(free_rank, tuple(d for d in res.diagonal if d > 1))


def kernel_basis(A) -> IntMatrix:
    """Saturated Z-basis of {x : A x = 0} as the columns of the result.

    The basis is put in Hermite form (as rows), so it does not depend on
    the elimination path.
    """
    A = as_matrix(A)
    n = A.cols
    res = snf(A)
    k = res.rank
    vecs = [[res.V.data[i][j] for i in range(n)] for j in range(k, n)]
    if not vecs:
        return IntMatrix.zeros(n, 0)
    basis = hnf(IntMatrix(vecs, len(vecs), n))
    return basis.T


def solve_integer(K, B) -> IntMatrix:
    """Exact C with K @ C == B, or raise ExactnessError."""
    K, B = as_matrix(K), as_matrix(B)
    if K.rows != B.rows:
        raise ValueError("row count mismatch")
    res = snf(K)
    diag = res.diagonal
    k = res.rank
    Y = res.U @ B
    Z = IntMatrix.zeros(K.cols, B.cols)
    for c in range(B.cols):
        for i in range(K.rows):
            y = Y.data[i][c]
            if i < k:
                if y % diag[i]:
                    raise ExactnessError(f"column {c} is not in the integer span")
                Z.data[i][c] = y // diag[i]
            elif y:
                raise ExactnessError(f"column {c} is not in the rational span")
    return res.V @ Z


def image_in_kernel_coordinates(B, K) -> IntMatrix:
    """Coordinates C with K @ C == B for columns of B inside span(K)."""
    return solve_integer(K, B)


def quotient_presentation(ambient_rank, sub_basis) -> AbelianPresentation:
    """Z^n modulo the column span of ``sub_basis``."""
    sub = as_matrix(sub_basis) if sub_basis is not None else IntMatrix.zeros(ambient_rank, 0)
    if sub.cols and sub.rows != ambient_rank:
        raise ValueError("sub_basis must have ambient_rank rows")
    if sub.cols == 0:
        return AbelianPresentation(ambient_rank, ())
    res = snf(sub, transforms=False)
    inv = res.invariant_factors()
    return AbelianPresentation(ambient_rank - len(inv), tuple(d for d in inv if d > 1))


def rank(A) -> int:
    return snf(A, transforms=False).rank


class SparseQuotient:
    """Z^n modulo the span of sparse relation vectors.

    Relations are dicts ``{generator: coefficient}``.  Generators that occur
    with coefficient +-1 in some relation are eliminated (Markowitz-style
    choice of the sparsest such pair); the residual dense block goes
    through ``snf``.  Afterwards the object answers coordinate queries for
    arbitrary vectors of Z^n, and hands out torsion generators as sparse
    vectors of Z^n.
    """

    def __init__(self, n, relations):
        self.n = n
        rels = {}
        occ = {}
        for rid, rel in enumerate(relations):
            rel = {g: c for g, c in rel.items() if c}
            if not rel:
                continue
            rels[rid] = rel
            for g in rel:
                occ.setdefault(g, set()).add(rid)
        self._elim = {}
        self._order = []
        self.rank = 0
        self._unit_eliminate(rels, occ)

        alive = [g for g in range(n) if g not in self._elim]
        self._alive = alive
        self._alive_pos = {g: i for i, g in enumerate(alive)}
        # surviving generators outside every relation are free summands
        support = sorted({g for rel in rels.values() for g in rel})
        self._support = support
        self._support_pos = {g: i for i, g in enumerate(support)}
        res_cols = [rels[r] for r in sorted(rels)]
        M = IntMatrix.from_columns([[c.get(g, 0) for g in support] for c in res_cols],
                                   len(support))
        res = snf(M)
        self._res = res
        diag = res.diagonal
        r = res.rank
        self.rank += r
        self._diag = diag
        self.torsion_positions = [i for i in range(r) if diag[i] > 1]
        self.torsion = tuple(diag[i] for i in self.torsion_positions)
        self.free_positions = list(range(r, len(support)))
        self.coker_free_rank = len(alive) - r
        self._resolved = None

    def _unit_eliminate(self, rels, occ):
        heap = [(len(rel), rid) for rid, rel in rels.items()]
        heapq.heapify(heap)
        stamp = {rid: len(rel) for rid, rel in rels.items()}
        while heap:
            ln, rid = heapq.heappop(heap)
            rel = rels.get(rid)
            if rel is None or stamp.get(rid) != ln:
                continue
            best = None
            for g, c in rel.items():
                if c == 1 or c == -1:
                    key = (len(occ[g]), g)
                    if best is None or key < best[0]:
                        best = (key, g, c)
            if best is None:
                continue
            _, p, u = best
            # e_p == -u * (rel - u e_p)
            expr = {g: -u * c for g, c in rel.items() if g != p}
            del rels[rid]
            for g in rel:
                occ[g].discard(rid)
            for qid in sorted(occ[p]):
                q = rels[qid]
                c = q.pop(p)
                f = -c * u
                for g, a in rel.items():
                    if g == p:
                        continue
                    v = q.get(g, 0) + f * a
                    if v:
                        if g not in q:
                            occ[g].add(qid)
                        q[g] = v
                    elif g in q:
                        del q[g]
                        occ[g].discard(qid)
                if q:
                    stamp[qid] = len(q)
                    heapq.heappush(heap, (len(q), qid))
                else:
                    del rels[qid]
            occ[p] = set()
            self._elim[p] = expr
            self._order.append(p)
            self.rank += 1

    def _resolve_all(self):
        if self._resolved is not None:
            return self._resolved
        pos = self._alive_pos
        resolved = {}
        for p in reversed(self._order):
            acc = {}
            for g, c in self._elim[p].items():
                if g in pos:
                    acc[g] = acc.get(g, 0) + c
                else:
                    for h, d in resolved[g].items():
                        acc[h] = acc.get(h, 0) + c * d
            resolved[p] = {g: c for g, c in acc.items() if c}
        self._resolved = resolved
        return resolved

    def residual_vector(self, x):
        """Image of a sparse vector of Z^n on the relation support, plus the
        coefficients on surviving generators outside it."""
        alive = self._alive_pos
        pos = self._support_pos
        resolved = None
        y = [0] * len(self._support)
        outside = {}

        def put(g, c):
            if g in pos:
                y[pos[g]] += c
            else:
                outside[g] = outside.get(g, 0) + c

        for g, c in x.items():
            if not c:
                continue
            if g in alive:
                put(g, c)
            else:
                if resolved is None:
                    resolved = self._resolve_all()
                for h, d in resolved[g].items():
                    put(h, c * d)
        return y, {g: c for g, c in outside.items() if c}

    def coordinates(self, x):
        """(torsion coordinates reduced mod the factors, free coordinates).

        Free coordinates list the residual free positions first, then the
        untouched surviving generators in index order.
        """
        y, outside = self.residual_vector(x)
        z = self._res.U @ y
        tors = tuple(z[i] % self._diag[i] for i in self.torsion_positions)
        free = tuple(z[i] for i in self.free_positions)
        free += tuple(outside.get(g, 0) for g in self._alive if g not in self._support_pos)
        return tors, free

    def torsion_coordinates(self, x):
        y, _ = self.residual_vector(x)
        z = self._res.U @ y
        return tuple(z[i] % self._diag[i] for i in self.torsion_positions)

    def generator(self, position):
        Ui = self._res.U_inv
        return {g: Ui.data[k][position] for k, g in enumerate(self._support)
                if Ui.data[k][position]}

    def torsion_generators(self):
        return [self.generator(i) for i in self.torsion_positions]


def sparse_to_dense(x, n):
    v = [0] * n
    for g, c in x.items():
        v[g] += c
    return v


def dense_to_sparse(v):
    return {i: c for i, c in enumerate(v) if c}


@dataclass
class FiniteHomKernel:
    """Kernel of a homomorphism between finite abelian groups given in
    invariant-factor coordinates.

    ``invariants`` describe the kernel; ``generators`` are its generators
    written in the source's coordinates.
    """

    invariants: tuple
    generators: list = field(default_factory=list)


def hom_kernel(source_factors, target_factors, matrix) -> FiniteHomKernel:
    """Kernel of phi: (+) Z/d_j -> (+) Z/e_k given by an integer matrix
    (rows indexed by target coordinates)."""
    a, b = len(source_factors), len(target_factors)
    if a == 0:
        return FiniteHomKernel((), [])
    M = as_matrix(matrix) if b else IntMatrix.zeros(0, a)
    # {x in Z^a : M x in diag(e) Z^b} = projection of ker [M | diag(e)]
    big = M.hstack(IntMatrix.diagonal(list(target_factors))) if b else M
    K = kernel_basis(big) if b else IntMatrix.identity(a)
    P = K.submatrix(range(a), range(K.cols))
    pres = snf(P)
    r = pres.rank
    diag = pres.diagonal
    L = IntMatrix.from_columns([[pres.U_inv.data[i][j] * diag[j] for i in range(a)]
                                for j in range(r)], a)
    if r != a:
        raise ExactnessError("kernel lattice is not of full rank; source is not finite")
    C = solve_integer(L, IntMatrix.diagonal(list(source_factors)))
    res = snf(C)
    positions = [i for i, d in enumerate(res.diagonal) if d > 1]
    inv = tuple(res.diagonal[i] for i in positions)
    gens = []
    for i in positions:
        col = [res.U_inv.data[k][i] for k in range(a)]
        v = L @ col
        gens.append([x % d for x, d in zip(v, source_factors)])
    return FiniteHomKernel(inv, gens)
