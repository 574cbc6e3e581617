"""
Brute-force oracle, independent of the package's linear algebra.

Coboundary matrices are rebuilt here from the group table and the action
matrices, and every integer question (rank, invariant factors, membership in
a column lattice) is answered by python-flint.
"""

from itertools import product

import flint


def table_of(G, members=None):
    """Multiplication table and inverses on ``members`` (positions)."""
    members = list(range(G.order)) if members is None else list(members)
    pos = {g: k for k, g in enumerate(members)}
    n = len(members)
    tab = [[pos[G.mul(a, b)] for b in members] for a in members]
    ident = pos[0]
    return tab, ident, n


def coboundary(tab, n, action, r, i):
    """Dense matrix of d: C^i -> C^(i+1), C^i = maps G^i -> Z^r, index
    (tuple in base n, big-endian) * r + basis index."""
    rows = n ** (i + 1) * r
    cols = n ** i * r
    M = [[0] * cols for _ in range(rows)]

    def idx(tup, b):
        k = 0
        for t in tup:
            k = k * n + t
        return k * r + b

    for tup in product(range(n), repeat=i + 1):
        g1 = tup[0]
        for a in range(r):
            row = idx(tup, a)
            # g1 . f(g2..)
            for b in range(r):
                c = action[g1][a][b]
                if c:
                    M[row][idx(tup[1:], b)] += c
            for k in range(i):
                merged = tup[:k] + (tab[tup[k]][tup[k + 1]],) + tup[k + 2:]
                M[row][idx(merged, a)] += (-1) ** (k + 1)
            M[row][idx(tup[:-1], a)] += (-1) ** (i + 1)
    return M


def _fm(rows, nrows=None, ncols=None):
    if not rows:
        return flint.fmpz_mat(nrows or 0, ncols or 0)
    return flint.fmpz_mat(rows)


def snf_diagonal(rows):
    A = _fm(rows)
    if A.nrows() == 0 or A.ncols() == 0:
        return []
    S = A.snf()
    return [int(S[k, k]) for k in range(min(S.nrows(), S.ncols())) if S[k, k] != 0]


def in_column_span(B, v):
    """Is v an integer combination of the columns of B?"""
    if not any(v):
        return True
    if not B or not B[0]:
        return False
    aug = [row + [x] for row, x in zip(B, v)]
    d1, d2 = snf_diagonal(B), snf_diagonal(aug)
    if len(d1) != len(d2):
        return False
    p1 = p2 = 1
    for x in d1:
        p1 *= x
    for x in d2:
        p2 *= x
    return p1 == p2


def action_lists(M, members=None):
    members = range(M.group.order) if members is None else members
    return [M.action[g].tolist() for g in members]


def positive_degree_invariants(G, M, i):
    """Torsion invariant factors of H^i(G, M), i >= 1, by dense SNF."""
    tab, _, n = table_of(G)
    act = action_lists(M)
    r = M.rank
    dprev = coboundary(tab, n, act, r, i - 1)
    dcur = coboundary(tab, n, act, r, i)
    # H^i = ker d_i / im d_{i-1}; the group is finite so it is the torsion
    # part of Z^{C^i} / im d_{i-1} restricted to ker d_i, which equals the
    # torsion of coker d_{i-1} (the quotient C^i/ker d_i is torsion-free).
    assert all(v == 0 for v in _matmul(dcur, dprev)), "d o d != 0"
    return [x for x in snf_diagonal(dprev) if x > 1]


def _matmul(A, B):
    Bt = list(zip(*B))
    return [x for row in A for col in Bt for x in [sum(a * b for a, b in zip(row, col))]]


def is_cocycle(G, M, i, vec):
    tab, _, n = table_of(G)
    d = coboundary(tab, n, action_lists(M), M.rank, i)
    return all(sum(a * b for a, b in zip(row, vec)) == 0 for row in d)


def restrict_cochain(G, D_members, r, i, vec):
    n = G.order
    pos = {g: k for k, g in enumerate(D_members)}
    m = len(D_members)
    out = [0] * (m ** i * r)
    for tup in product(D_members, repeat=i):
        kG = kD = 0
        for t in tup:
            kG = kG * n + t
            kD = kD * m + pos[t]
        for b in range(r):
            out[kD * r + b] = vec[kG * r + b]
    return out


def is_coboundary(G, M, i, vec, members=None):
    members = list(range(G.order)) if members is None else list(members)
    tab, _, n = table_of(G, members)
    act = action_lists(M, members)
    d = coboundary(tab, n, act, M.rank, i - 1)
    return in_column_span(d, vec)


def dense(u, length):
    v = [0] * length
    for k, c in u.items():
        v[k] += c
    return v


def sha_order(G, M, i, H, family_members):
    """|Sha^i| by enumerating every class of H^i(G, M).

    ``H`` is the package's cohomology group; its generator cocycles are only
    used as candidates: the oracle checks they are cocycles, that their
    combinations are pairwise distinct modulo coboundaries and that there
    are exactly |H^i| of them, then counts the classes that restrict to
    coboundaries on every member of the family.
    """
    r = M.rank
    length = G.order ** i * r
    gens = [dense(u, length) for u in H.generators]
    for v in gens:
        assert is_cocycle(G, M, i, v)
    expected = 1
    for x in positive_degree_invariants(G, M, i):
        expected *= x
    classes = []
    for coeffs in product(*[range(e) for e in H.invariants]):
        classes.append([sum(c * v[k] for c, v in zip(coeffs, gens)) for k in range(length)])
    assert len(classes) == expected
    for a in range(len(classes)):
        for b in range(a):
            diff = [x - y for x, y in zip(classes[a], classes[b])]
            assert not is_coboundary(G, M, i, diff), "two candidate classes coincide"
    count = 0
    for c in classes:
        if all(is_coboundary(G, M, i, restrict_cochain(G, D, r, i, c), D) for D in family_members):
            count += 1
    return count
