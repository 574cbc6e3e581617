from normtorus.groups import trivial_subgroup
from normtorus.intlinalg import IntMatrix, snf
from normtorus.lattice import (GLattice, LatticeMap, cokernel_lattice, permutation_lattice,
                               trivial_lattice)
from normtorus.torus import PER_FACTOR, aux_projection


def dual_lattice(M):
    G = M.group
    return GLattice(G, M.rank, [M.action[G.inv(g)].T for g in range(G.order)], check=True)


def norm_one_lattice(G):
    """Z[G] / Z * (sum of g): the character lattice of the norm-one torus."""
    ZG = permutation_lattice(G, trivial_subgroup(G))
    f = LatticeMap(trivial_lattice(G), ZG, IntMatrix([[1]] * G.order, G.order, 1))
    return cokernel_lattice(f).lattice


def order_of(factors):
    out = 1
    for d in factors:
        out *= d
    return out


def check_structure(T):
    # composite of the defining sequence is zero, first map injective
    assert (T.quotient.matrix @ T.relations.matrix).is_zero()
    assert snf(T.relations.matrix, transforms=False).rank == T.relations.source.rank
    assert (T.aux_quotient.matrix @ T.aux_relations.matrix).is_zero()
    # X and X_aux are lattices: the quotient maps have unimodular cokernels
    assert T.X.rank == T.rank_formula()
    assert all(d == 1 for d in snf(T.quotient.matrix).invariant_factors())
    assert all(d == 1 for d in snf(T.aux_quotient.matrix).invariant_factors())
    T.X.verify()
    T.X_aux.verify()
    # 0 -> Z -> X -> X_aux -> 0 (shared multiplier)
    if T.datum.multiplier != PER_FACTOR:
        assert T.X_aux.rank == T.X.rank - 1
        inc = T.multiplier_map.matrix
        assert snf(inc).invariant_factors() == [1]
        if not T.datum.is_etale:
            q = aux_projection(T, 0)
            assert (q.matrix @ inc).is_zero()
            assert snf(q.matrix).invariant_factors() == [1] * T.X_aux.rank
