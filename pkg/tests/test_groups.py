import random
from itertools import product

import pytest

from normtorus.errors import InputError
from normtorus.groups import (Abelianization, CentralDatum, all_subgroups, build_group,
                              catalog_names, central_elements_of_prime_order, conjugate_subgroup,
                              cyclic_subgroup_classes, is_normal, left_cosets, subgroup_classes,
                              subgroup_closure, transfer, trivial_subgroup, two_group_catalog_names,
                              abelian_catalog_names, whole_group)

# (order, number of subgroups, number of conjugacy classes of subgroups)
KNOWN = {
    "C1": (1, 1, 1), "C2": (2, 2, 2), "C6": (6, 4, 4), "E4": (4, 5, 5), "S3": (6, 6, 4),
    "D8": (8, 10, 8), "Q8": (8, 6, 6), "E8": (8, 16, 16), "S4": (24, 30, 11),
    "D12": (12, 16, 10), "C2xQ8": (16, 19, 19),
}


@pytest.mark.parametrize("name", sorted(KNOWN))
def test_subgroup_counts(name):
    G = build_group(name)
    order, n_sub, n_cls = KNOWN[name]
    assert G.order == order
    assert len(all_subgroups(G)) == n_sub
    assert len(subgroup_classes(G)) == n_cls


@pytest.mark.parametrize("name", ["S3", "D8", "Q8", "C4xC2", "D10"])
def test_group_axioms(name):
    G = build_group(name)
    n = G.order
    for a, b, c in product(range(n), repeat=3):
        assert G.mul(G.mul(a, b), c) == G.mul(a, G.mul(b, c))
    for a in range(n):
        assert G.mul(a, G.inv(a)) == 0 and G.mul(0, a) == a


def test_composition_convention():
    # (p*q)(x) = p(q(x)) on permutation tuples
    G = build_group("S3")
    for a in range(G.order):
        for b in range(G.order):
            pa, pb = G.elements[a], G.elements[b]
            assert G.elements[G.mul(a, b)] == tuple(pa[pb[x]] for x in range(len(pa)))


def test_words_round_trip():
    for name in ["D8", "Q8", "S4", "C2xD8", "E8"]:
        G = build_group(name)
        for a in range(G.order):
            assert G.parse_element(G.word(a)) == a
            assert G.parse_element(f"#{a}") == a
    G = build_group("D8")
    assert G.parse_element("r^-1") == G.inv(G.parse_element("r"))
    assert G.element_order(G.parse_element("r^2")) == 2
    with pytest.raises(InputError):
        G.parse_element("x")
    with pytest.raises(InputError):
        G.parse_element("#99")


def test_build_group_forms():
    assert build_group("catalog:C4").order == 4
    assert build_group({"catalog": {"name": "dihedral", "params": [8]}}).order == 8
    G = build_group({"permutations": {"degree": 3, "generators": [[1, 2, 0], [1, 0, 2]],
                                      "names": ["a", "b"]}})
    assert G.order == 6 and G.parse_element("a*b") is not None
    assert build_group("C2xS3").order == 12
    for bad in ["X5", "E6", 17, {"permutations": {}}]:
        with pytest.raises(InputError):
            build_group(bad)
    with pytest.raises(InputError):
        build_group("S4", max_order=12)


def test_catalog_lists():
    names = catalog_names(16)
    assert len(names) == len(set(names))
    assert all(build_group(n).order <= 16 for n in names)
    assert {"D8", "Q8", "C2xQ8", "E16", "D16"} <= set(names)
    ab = abelian_catalog_names(16)
    assert all(build_group(n).is_abelian() for n in ab)
    # number of abelian groups of order n summed over n <= 16
    assert len(ab) == 1 + 1 + 1 + 2 + 1 + 1 + 1 + 3 + 2 + 1 + 1 + 2 + 1 + 1 + 1 + 5
    assert {"D8", "Q8"} <= set(two_group_catalog_names(8))


def test_normality_and_conjugates():
    G = build_group("S3")
    t = subgroup_closure(G, [G.parse_element("a")])
    assert not is_normal(t)
    assert is_normal(subgroup_closure(G, [G.parse_element("b")]))
    assert is_normal(trivial_subgroup(G)) and is_normal(whole_group(G))
    conj = {conjugate_subgroup(t, g).members for g in range(G.order)}
    assert len(conj) == 3


def test_cyclic_classes():
    G = build_group("Q8")
    orders = sorted(S.order for S in cyclic_subgroup_classes(G))
    assert orders == [1, 2, 4, 4, 4]
    G = build_group("E4")
    assert len(cyclic_subgroup_classes(G)) == 4


def test_central_datum():
    G = build_group("D8")
    assert central_elements_of_prime_order(G) == [G.parse_element("r^2")]
    iota = CentralDatum.make(G, "r^2", 2)
    assert iota.p == 2
    with pytest.raises(InputError):
        CentralDatum.make(G, "r", 4)  # 4 is not prime
    with pytest.raises(InputError):
        CentralDatum.make(G, "s", 2)  # not central
    with pytest.raises(InputError):
        CentralDatum.make(G, "r^2", 3)  # wrong order


def _commutator_subgroup(S):
    G = S.parent
    comms = [G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b))) for a in S.members for b in S.members]
    return subgroup_closure(G, comms)


@pytest.mark.parametrize("name", ["S3", "D8", "Q8", "S4", "C2xD8", "E8", "C4xC4"])
def test_abelianization(name):
    G = build_group(name)
    for S in subgroup_classes(G):
        ab = Abelianization(S)
        assert ab.order == S.order // _commutator_subgroup(S).order
        prod_ = 1
        for d in ab.invariants:
            prod_ *= d
        assert prod_ == ab.order
        # coords is a surjective homomorphism
        images = set()
        for a in S.members:
            images.add(ab.coords(a))
            for b in S.members:
                assert ab.coords(G.mul(a, b)) == ab.add(ab.coords(a), ab.coords(b))
        assert len(images) == ab.order


def transversal_transfer(G, S, g, ab):
    """Ver(g) = prod h_i with g t_i = t_sigma(i) h_i, from a fixed transversal."""
    coset_of, cosets = left_cosets(G, S)
    reps = [c[-1] for c in cosets]  # a different transversal from the one in the package
    total = ab.zero()
    for t in reps:
        gt = G.mul(g, t)
        u = reps[coset_of[gt]]
        h = G.mul(G.inv(u), gt)
        assert h in S
        total = ab.add(total, ab.coords(h))
    return total


@pytest.mark.parametrize("name", ["S3", "D8", "Q8", "S4", "C4xC2", "D12"])
def test_transfer_matches_transversal_definition(name):
    G = build_group(name)
    rng = random.Random(1)
    for S in subgroup_classes(G):
        ab = Abelianization(S)
        for g in range(G.order):
            ref = transversal_transfer(G, S, g, ab)
            assert transfer(G, S, g, ab=ab) == ref
            assert transfer(G, S, g, rng=rng, ab=ab) == ref
