"""
Finite permutation groups with a full multiplication table.

Elements are permutations of ``range(degree)`` given as image tuples and
are kept sorted by image tuple, so element indices are reproducible and the
identity is always index 0.  Products compose right-to-left:
``(p * q)(x) == p(q(x))``.
"""

from __future__ import annotations

import random
import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property

from .errors import InputError
from .intlinalg import IntMatrix, snf

MAX_ORDER = 64


def compose(p, q):
    return tuple(p[x] for x in q)


def is_prime(n):
    if n < 2:
        return False
    f = 2
    while f * f <= n:
        if n % f == 0:
            return False
        f += 1
    return True


class Group:
    """A finite group of permutations, fully tabulated.

    ``names`` maps human-readable generator names to permutations; they are
    used to parse words like ``"r^2*s"`` and to label elements.
    """

    def __init__(self, generators, degree=None, names=None, label=None, max_order=MAX_ORDER):
        gens = [tuple(int(x) for x in g) for g in generators]
        if degree is None:
            degree = len(gens[0]) if gens else 1
        if degree < 1:
            raise InputError("degree must be positive")
        for g in gens:
            if len(g) != degree or sorted(g) != list(range(degree)):
                raise InputError(f"{list(g)} is not a permutation of {degree} points")
        ident = tuple(range(degree))
        seen = {ident}
        frontier = [ident]
        while frontier:
            nxt = []
            for a in frontier:
                for g in gens:
                    b = compose(g, a)
                    if b not in seen:
                        seen.add(b)
                        nxt.append(b)
                        if len(seen) > max_order:
                            raise InputError(
                                f"group order exceeds the configured maximum {max_order}")
            frontier = nxt
        self.degree = degree
        self.elements = sorted(seen)
        self.index = {e: i for i, e in enumerate(self.elements)}
        self.order = len(self.elements)
        self.identity = 0
        n = self.order
        els, idx = self.elements, self.index
        self.table = [[idx[compose(a, b)] for b in els] for a in els]
        self.inverses = [row.index(0) for row in self.table]
        gen_idx = []
        for g in gens:
            i = idx[g]
            if i not in gen_idx:
                gen_idx.append(i)
        self.generators = tuple(gen_idx)
        self.names = {}
        for name, perm in (names or {}).items():
            self.names[name] = idx[tuple(perm)]
        self.label = label or f"perm{degree}[{n}]"

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"<Group {self.label} of order {self.order}>"

    def mul(self, a, b):
        return self.table[a][b]

    def inv(self, a):
        return self.inverses[a]

    def power(self, a, k):
        if k < 0:
            a, k = self.inverses[a], -k
        r = 0
        while k:
            if k & 1:
                r = self.table[r][a]
            a = self.table[a][a]
            k >>= 1
        return r

    def element_order(self, a):
        k, x = 1, a
        while x != 0:
            x = self.table[x][a]
            k += 1
        return k

    def conj(self, g, x):
        """g x g^-1"""
        return self.table[self.table[g][x]][self.inverses[g]]

    def commutes(self, a, b):
        return self.table[a][b] == self.table[b][a]

    def is_abelian(self):
        return all(self.commutes(a, b) for a in self.generators for b in self.generators)

    def center(self):
        return [z for z in range(self.order) if all(self.commutes(z, g) for g in self.generators)]

    @cached_property
    def words(self):
        """Shortest generator word for every element (breadth-first, name order)."""
        order = sorted(self.names.items(), key=lambda kv: (kv[1], kv[0]))
        named = {}
        for nm, i in order:
            named.setdefault(i, nm)
        words = {0: "1"}
        queue = deque([0])
        pieces = {0: []}
        gens = [(i, nm) for i, nm in sorted(named.items())]
        if not gens:
            gens = [(i, f"x{i}") for i in self.generators]
        while queue:
            a = queue.popleft()
            for g, nm in gens:
                b = self.table[a][g]
                if b not in pieces:
                    pieces[b] = pieces[a] + [nm]
                    queue.append(b)
        for i, seq in pieces.items():
            if not seq:
                continue
            out = []
            for nm in seq:
                if out and out[-1][0] == nm:
                    out[-1][1] += 1
                else:
                    out.append([nm, 1])
            words[i] = "*".join(nm if k == 1 else f"{nm}^{k}" for nm, k in out)
        return [words[i] for i in range(self.order)]

    def word(self, a):
        return self.words[a]

    def parse_element(self, text):
        """Parse an element index or a generator word such as ``"r^2*s"``."""
        if isinstance(text, int):
            if not 0 <= text < self.order:
                raise InputError(f"element index {text} out of range")
            return text
        text = str(text).strip()
        if re.fullmatch(r"#\d+", text):
            return self.parse_element(int(text[1:]))
        if text in ("", "1", "e", "id"):
            return 0
        result = 0
        for tok in text.split("*"):
            tok = tok.strip()
            m = re.fullmatch(r"([A-Za-z_][A-Za-z_0-9]*)\s*(?:\^\s*(-?\d+))?", tok)
            if not m:
                raise InputError(f"cannot parse element word {text!r}")
            nm, exp = m.group(1), m.group(2)
            if nm not in self.names:
                raise InputError(f"unknown generator {nm!r}; known: {sorted(self.names)}")
            result = self.table[result][self.power(self.names[nm], int(exp) if exp else 1)]
        return result

    def is_subgroup_set(self, members):
        ms = set(members)
        return 0 in ms and all(self.table[a][b] in ms for a in ms for b in ms)


@dataclass(frozen=True, eq=False)
class Subgroup:
    parent: Group
    members: tuple
    generators: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "members", tuple(sorted(set(self.members))))
        object.__setattr__(self, "_set", frozenset(self.members))

    @property
    def order(self):
        return len(self.members)

    @property
    def index(self):
        return self.parent.order // self.order

    def __contains__(self, g):
        return g in self._set

    def __len__(self):
        return len(self.members)

    def __eq__(self, other):
        return (isinstance(other, Subgroup) and other.parent is self.parent
                and other.members == self.members)

    def __hash__(self):
        return hash((id(self.parent), self.members))

    def __repr__(self):
        return f"<Subgroup of order {self.order} in {self.parent.label}>"

    def issubset(self, other):
        return self._set <= other._set

    @cached_property
    def as_group(self):
        """This subgroup as a stand-alone ``Group``.

        Elements keep the parent's ordering, so ``members[k]`` is the parent
        index of element ``k`` of the returned group.
        """
        G = self.parent
        gens = [G.elements[g] for g in (self.generators or self.members)]
        names = {nm: G.elements[i] for nm, i in G.names.items() if i in self}
        H = Group(gens or [G.elements[0]], degree=G.degree, names=names,
                  label=f"{G.label}>{self.order}", max_order=G.order)
        assert [G.index[e] for e in H.elements] == list(self.members)
        return H

    def generating_set(self):
        return self.generators or tuple(m for m in self.members if m)


def subgroup_closure(G: Group, gens) -> Subgroup:
    gens = tuple(sorted(set(int(g) for g in gens)))
    for g in gens:
        if not 0 <= g < G.order:
            raise InputError(f"element index {g} out of range")
    members = {0}
    frontier = [0]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                b = G.table[a][g]
                if b not in members:
                    members.add(b)
                    nxt.append(b)
        frontier = nxt
    return Subgroup(G, tuple(members), gens)


def whole_group(G: Group) -> Subgroup:
    return Subgroup(G, tuple(range(G.order)), G.generators)


def trivial_subgroup(G: Group) -> Subgroup:
    return Subgroup(G, (0,), ())


def conjugate_subgroup(S: Subgroup, g) -> Subgroup:
    G = S.parent
    return Subgroup(G, tuple(G.conj(g, x) for x in S.members),
                    tuple(G.conj(g, x) for x in S.generators))


def is_normal(S: Subgroup) -> bool:
    G = S.parent
    return all(G.conj(g, x) in S for g in G.generators for x in S.generating_set())


def _class_reps(G, subgroups):
    """Group subgroups into conjugacy classes; one representative per class."""
    seen = set()
    classes = []
    for S in subgroups:
        if S.members in seen:
            continue
        orbit = {}
        for g in range(G.order):
            C = conjugate_subgroup(S, g)
            orbit.setdefault(C.members, C)
        seen.update(orbit)
        classes.append(list(orbit.values()))
    return classes


def cyclic_subgroup_classes(G: Group) -> list:
    """One cyclic subgroup per conjugacy class, sorted by (order, min generator)."""
    by_members = {}
    for g in range(G.order):
        S = subgroup_closure(G, [g])
        key = S.members
        if key not in by_members or g < by_members[key][0]:
            by_members[key] = (g, S)
    cyc = [Subgroup(G, S.members, (g,) if g else ()) for g, S in by_members.values()]
    reps = []
    for cls in _class_reps(G, cyc):
        best = min(cls, key=lambda S: (min(by_members[S.members][0], 10 ** 9), S.members))
        g = by_members[best.members][0]
        reps.append((best.order, g, Subgroup(G, best.members, (g,) if g else ())))
    reps.sort(key=lambda t: (t[0], t[1]))
    return [S for _, _, S in reps]


def all_subgroups(G: Group) -> list:
    """Every subgroup, by repeated joins of cyclic subgroups."""
    cyclic = {}
    for g in range(G.order):
        S = subgroup_closure(G, [g])
        cyclic.setdefault(S.members, g)
    found = {m: Subgroup(G, m, (g,) if g else ()) for m, g in cyclic.items()}
    frontier = list(found.values())
    cyc_list = [(g, m) for m, g in cyclic.items()]
    while frontier:
        nxt = []
        for S in frontier:
            for g, m in cyc_list:
                if g in S:
                    continue
                T = subgroup_closure(G, tuple(S.generators) + (g,))
                if T.members not in found:
                    found[T.members] = T
                    nxt.append(T)
        frontier = nxt
    return sorted(found.values(), key=lambda S: (S.order, S.members))


def subgroup_classes(G: Group) -> list:
    """Representatives of all conjugacy classes of subgroups,
    sorted by order then member list."""
    reps = [min(cls, key=lambda S: S.members) for cls in _class_reps(G, all_subgroups(G))]
    return sorted(reps, key=lambda S: (S.order, S.members))


def central_elements_of_prime_order(G: Group) -> list:
    out = []
    for z in G.center():
        if z and is_prime(G.element_order(z)):
            out.append(z)
    return out


@dataclass(frozen=True)
class CentralDatum:
    iota: int
    p: int

    @classmethod
    def make(cls, G: Group, iota, p=None):
        iota = G.parse_element(iota)
        order = G.element_order(iota)
        if p is None:
            p = order
        p = int(p)
        if not is_prime(p):
            raise InputError(f"p = {p} is not prime")
        if order != p:
            raise InputError(f"iota = {G.word(iota)} has order {order}, not {p}")
        if not all(G.commutes(iota, g) for g in G.generators):
            raise InputError(f"iota = {G.word(iota)} is not central")
        return cls(iota, p)


# -- abelianization and transfer ---------------------------------------------

class Abelianization:
    """S/[S,S] in invariant-factor coordinates.

    ``coords(x)`` sends a parent element index of S to a tuple reduced
    modulo ``invariants``.
    """

    def __init__(self, S: Subgroup):
        G = S.parent
        self.subgroup = S
        comms = set()
        for a in S.members:
            for b in S.members:
                c = G.mul(G.mul(a, b), G.mul(G.inv(a), G.inv(b)))
                comms.add(c)
        D = subgroup_closure(G, comms)
        self.commutator = D
        coset = {}
        for x in S.members:
            if x in coset:
                continue
            cid = len(set(coset.values()))
            for d in D.members:
                coset[G.mul(x, d)] = cid
        self._coset = coset
        gens = list(S.generating_set())
        k = len(gens)
        vec = {coset[0]: [0] * k}
        queue = deque([0])
        rep = {coset[0]: 0}
        rels = []
        while queue:
            x = queue.popleft()
            vx = vec[coset[x]]
            for j, g in enumerate(gens):
                y = G.mul(x, g)
                cy = coset[y]
                w = list(vx)
                w[j] += 1
                if cy not in vec:
                    vec[cy] = w
                    rep[cy] = y
                    queue.append(y)
                else:
                    rel = [a - b for a, b in zip(w, vec[cy])]
                    if any(rel):
                        rels.append(rel)
        self._vec = vec
        if k:
            R = IntMatrix.from_columns(rels, k) if rels else IntMatrix.zeros(k, 0)
            res = snf(R)
            diag = res.diagonal + [0] * (k - len(res.diagonal))
            if any(d == 0 for d in diag):
                raise AssertionError("abelianization of a finite group came out infinite")
            self._U = res.U
            self._positions = [i for i, d in enumerate(diag) if d > 1]
            self.invariants = tuple(diag[i] for i in self._positions)
        else:
            self._U = IntMatrix.zeros(0, 0)
            self._positions = []
            self.invariants = ()
        self.order = len(vec)

    def coords(self, x):
        v = self._U @ self._vec[self._coset[x]] if self._U.rows else []
        return tuple(v[i] % d for i, d in zip(self._positions, self.invariants))

    def add(self, a, b):
        return tuple((x + y) % d for x, y, d in zip(a, b, self.invariants))

    def zero(self):
        return tuple(0 for _ in self.invariants)


def abelianization(S: Subgroup):
    """Return ``(invariant factors, quotient map)`` for S/[S,S]."""
    ab = Abelianization(S)
    return ab.invariants, ab.coords


def left_cosets(G: Group, S: Subgroup):
    """Cosets gS in order of their least element; returns (coset_of, cosets)."""
    coset_of = [None] * G.order
    cosets = []
    for g in range(G.order):
        if coset_of[g] is not None:
            continue
        c = len(cosets)
        members = sorted(G.mul(g, s) for s in S.members)
        for x in members:
            coset_of[x] = c
        cosets.append(members)
    return coset_of, cosets


def transfer(G: Group, S: Subgroup, g, rng=None, ab=None):
    """Ver_{G->S}(g) in S^ab, by the orbit form.

    For each <g>-orbit on G/S of length f, with representative coset rS,
    the element r^-1 g^f r lies in S; the classes of these elements add up
    to the transfer.  ``rng`` randomises both the orbit representative and
    the coset representative (the answer must not change).
    """
    if not 0 <= g < G.order:
        raise InputError(f"element index {g} out of range")
    ab = ab or Abelianization(S)
    coset_of, cosets = left_cosets(G, S)
    total = ab.zero()
    for rS, f in coset_orbits(G, S, g, coset_of, cosets, rng):
        r = rS
        h = G.mul(G.mul(G.inv(r), G.power(g, f)), r)
        assert h in S
        total = ab.add(total, ab.coords(h))
    return total


def coset_orbits(G, S, g, coset_of=None, cosets=None, rng=None):
    """Yield (representative element r, orbit length) for the <g>-orbits on G/S."""
    if coset_of is None:
        coset_of, cosets = left_cosets(G, S)
    seen = [False] * len(cosets)
    for c in range(len(cosets)):
        if seen[c]:
            continue
        orbit = []
        x = c
        while not seen[x]:
            seen[x] = True
            orbit.append(x)
            x = coset_of[G.mul(g, cosets[x][0])]
        if rng is None:
            r = cosets[orbit[0]][0]
        else:
            r = rng.choice(cosets[rng.choice(orbit)])
        yield r, len(orbit)


# -- catalog -----------------------------------------------------------------

def _cycle_perm(n):
    return tuple((i + 1) % n for i in range(n))


def cyclic(n):
    n = int(n)
    if n < 1:
        raise InputError("cyclic group needs n >= 1")
    g = _cycle_perm(n)
    return Group([g], degree=n, names={"g": g}, label=f"C{n}")


def dihedral(order):
    """Dihedral group of the given order (order = 2n, n >= 2)."""
    order = int(order)
    if order < 4 or order % 2:
        raise InputError("dihedral order must be even and >= 4")
    n = order // 2
    if n == 2:
        r = (1, 0, 3, 2)
        s = (2, 3, 0, 1)
        return Group([r, s], degree=4, names={"r": r, "s": s}, label="D4")
    r = _cycle_perm(n)
    s = tuple((-i) % n for i in range(n))
    return Group([r, s], degree=n, names={"r": r, "s": s}, label=f"D{order}")


def quaternion(order=8):
    if int(order) != 8:
        raise InputError("only the quaternion group of order 8 is in the catalog")
    # elements (sign, unit) with unit in 1,i,j,k -> index 4*(sign<0) + unit
    table = {("1", "1"): (1, "1"), ("1", "i"): (1, "i"), ("1", "j"): (1, "j"), ("1", "k"): (1, "k"),
             ("i", "1"): (1, "i"), ("i", "i"): (-1, "1"), ("i", "j"): (1, "k"), ("i", "k"): (-1, "j"),
             ("j", "1"): (1, "j"), ("j", "i"): (-1, "k"), ("j", "j"): (-1, "1"), ("j", "k"): (1, "i"),
             ("k", "1"): (1, "k"), ("k", "i"): (1, "j"), ("k", "j"): (-1, "i"), ("k", "k"): (-1, "1")}
    units = ["1", "i", "j", "k"]
    elems = [(s, u) for s in (1, -1) for u in units]
    pos = {e: i for i, e in enumerate(elems)}

    def left(x):
        sx, ux = x
        return tuple(pos[(sx * sy * table[(ux, uy)][0], table[(ux, uy)][1])] for sy, uy in elems)

    i, j = left((1, "i")), left((1, "j"))
    k = left((1, "k"))
    return Group([i, j], degree=8, names={"i": i, "j": j, "k": k}, label="Q8")


def symmetric(n):
    n = int(n)
    if not 1 <= n <= 4:
        raise InputError("symmetric groups are catalogued for n <= 4")
    if n == 1:
        return Group([(0,)], degree=1, names={}, label="S1")
    a = tuple([1, 0] + list(range(2, n)))
    b = _cycle_perm(n)
    return Group([a, b], degree=n, names={"a": a, "b": b}, label=f"S{n}")


def elementary_abelian(k):
    """(Z/2)^k on 2k points, generators a, b, c, ..."""
    k = int(k)
    if k < 1:
        raise InputError("elementary abelian needs k >= 1")
    gens = {}
    for t in range(k):
        perm = list(range(2 * k))
        perm[2 * t], perm[2 * t + 1] = 2 * t + 1, 2 * t
        gens["abcdefgh"[t]] = tuple(perm)
    return Group(list(gens.values()), degree=2 * k, names=gens, label=f"E{2 ** k}")


def direct_product(factors, label=None):
    factors = list(factors)
    if not factors:
        raise InputError("direct product of nothing")
    offset = 0
    degree = sum(F.degree for F in factors)
    gens = []
    names = {}
    clash = len({nm for F in factors for nm in F.names}) < sum(len(F.names) for F in factors)
    for t, F in enumerate(factors):
        for i in F.generators:
            perm = list(range(degree))
            for x, y in enumerate(F.elements[i]):
                perm[offset + x] = offset + y
            gens.append(tuple(perm))
        for nm, i in F.names.items():
            perm = list(range(degree))
            for x, y in enumerate(F.elements[i]):
                perm[offset + x] = offset + y
            names[f"{nm}{t + 1}" if clash else nm] = tuple(perm)
        offset += F.degree
    return Group(gens, degree=degree, names=names,
                 label=label or "x".join(F.label for F in factors))


CATALOG = {
    "cyclic": ("C<n>", "cyclic group of order n", cyclic),
    "dihedral": ("D<order>", "dihedral group of the given (even) order", dihedral),
    "quaternion": ("Q8", "quaternion group of order 8", quaternion),
    "symmetric": ("S<n>", "symmetric group on n <= 4 letters", symmetric),
    "elementary_abelian": ("E<2^k>", "elementary abelian group (Z/2)^k", elementary_abelian),
    "direct_product": ("AxB", "direct product of catalog groups", None),
}

_SHORT = re.compile(r"^(C|D|Q|S|E)(\d+)$")


def _from_short(name):
    parts = name.split("x")
    if len(parts) > 1:
        return direct_product([_from_short(p) for p in parts])
    m = _SHORT.match(name.strip())
    if not m:
        raise InputError(f"unknown catalog group {name!r}")
    kind, num = m.group(1), int(m.group(2))
    if kind == "C":
        return cyclic(num)
    if kind == "D":
        return dihedral(num)
    if kind == "Q":
        return quaternion(num)
    if kind == "S":
        return symmetric(num)
    k = num.bit_length() - 1
    if num < 2 or 2 ** k != num:
        raise InputError("elementary abelian groups are named by their order 2^k")
    return elementary_abelian(k)


def _from_catalog_obj(obj):
    if isinstance(obj, str):
        return _from_short(obj)
    name = obj.get("name")
    params = list(obj.get("params", []))
    if name == "direct_product":
        return direct_product([_from_catalog_obj(p) for p in params])
    if name not in CATALOG or CATALOG[name][2] is None:
        if isinstance(name, str):
            return _from_short(name)
        raise InputError(f"unknown catalog entry {name!r}")
    try:
        return CATALOG[name][2](*params)
    except TypeError as exc:
        raise InputError(f"bad parameters for {name}: {params}") from exc


def build_group(spec, max_order=MAX_ORDER) -> Group:
    """Build a group from a catalog name, a catalog JSON object, or explicit
    permutations.

    >>> build_group("C4").order
    4
    >>> build_group({"permutations": {"degree": 3, "generators": [[1, 0, 2]]}}).order
    2
    """
    if isinstance(spec, Group):
        return spec
    if isinstance(spec, str):
        s = spec.strip()
        if s.startswith("catalog:"):
            s = s[len("catalog:"):]
        G = _from_short(s)
    elif isinstance(spec, dict) and "catalog" in spec:
        G = _from_catalog_obj(spec["catalog"])
    elif isinstance(spec, dict) and "permutations" in spec:
        body = spec["permutations"]
        try:
            degree = int(body["degree"])
            gens = body["generators"]
        except (KeyError, TypeError, ValueError) as exc:
            raise InputError("permutation spec needs 'degree' and 'generators'") from exc
        names = body.get("names")
        named = dict(zip(names, gens)) if names else {f"x{t}": g for t, g in enumerate(gens)}
        G = Group(gens or [list(range(degree))], degree=degree, names=named,
                  label=body.get("label"), max_order=max_order)
    else:
        raise InputError(f"unrecognised group specification: {spec!r}")
    if G.order > max_order:
        raise InputError(f"group order {G.order} exceeds the configured maximum {max_order}")
    return G


def _abelian_types(n):
    """Partitions of each prime exponent -> list of cyclic factor orders."""
    def partitions(k, top=None):
        top = k if top is None else top
        if k == 0:
            yield []
            return
        for first in range(min(k, top), 0, -1):
            for rest in partitions(k - first, first):
                yield [first] + rest

    fac = {}
    m, p = n, 2
    while m > 1:
        while m % p == 0:
            fac[p] = fac.get(p, 0) + 1
            m //= p
        p += 1
    types = [[]]
    for p, e in sorted(fac.items()):
        types = [t + [p ** a for a in part] for t in types for part in partitions(e)]
    out = []
    for t in types:
        # combine into invariant factors
        by_prime = {}
        for q in t:
            pr = min(d for d in range(2, q + 1) if q % d == 0)
            by_prime.setdefault(pr, []).append(q)
        cols = max((len(v) for v in by_prime.values()), default=0)
        inv = []
        for c in range(cols):
            val = 1
            for v in by_prime.values():
                v = sorted(v, reverse=True)
                if c < len(v):
                    val *= v[c]
            inv.append(val)
        out.append(sorted(inv))
    return out


def abelian_catalog_names(max_order):
    """Catalog names of every abelian group of order <= max_order, one per
    isomorphism type, in (order, name) order."""
    names = []
    for n in range(1, max_order + 1):
        for inv in sorted(_abelian_types(n)):
            if not inv:
                names.append("C1")
            elif all(q == 2 for q in inv) and len(inv) > 1:
                names.append(f"E{2 ** len(inv)}")
            else:
                names.append("x".join(f"C{q}" for q in sorted(inv, reverse=True)))
    return names


def two_group_catalog_names(max_order):
    """2-groups of order <= max_order reachable from the catalog."""
    names = [nm for nm in abelian_catalog_names(max_order)
             if _is_pow2(build_group(nm).order) and build_group(nm).order > 1]
    for order in (8, 16):
        if order <= max_order:
            names.append(f"D{order}")
    if max_order >= 8:
        names.append("Q8")
    if max_order >= 16:
        names += ["C2xD8", "C2xQ8"]
    return sorted(names, key=lambda nm: (build_group(nm).order, nm))


def _is_pow2(n):
    return n & (n - 1) == 0


def catalog_names(max_order):
    """The sweep catalog: abelian groups, dihedral groups, Q8, S3, S4 and the
    small non-abelian products C2xD8, C2xQ8, C3xS3 up to ``max_order``."""
    names = list(abelian_catalog_names(max_order))
    for order in range(6, max_order + 1, 2):
        names.append(f"D{order}")
    extra = [("Q8", 8), ("S3", 6), ("S4", 24), ("C2xD8", 16), ("C2xQ8", 16), ("C3xS3", 18)]
    names += [nm for nm, o in extra if o <= max_order]
    return sorted(dict.fromkeys(names), key=lambda nm: (build_group(nm).order, nm))


def random_conjugate(S: Subgroup, rng: random.Random) -> Subgroup:
    return conjugate_subgroup(S, rng.randrange(S.parent.order))
