"""Finite groups as multiplication tables, their subgroups and small unitary representations."""
from __future__ import annotations

import cmath
import math
import re
from dataclasses import dataclass, field
from itertools import permutations, product
from typing import Callable, Hashable, Sequence

import numpy as np

__all__ = [
    "FiniteGroupModel",
    "SubgroupEmbedding",
    "UnitaryRepOmega",
    "GroupModelError",
    "from_elements",
    "cyclic_group",
    "dihedral_group",
    "symmetric_group",
    "alternating_group",
    "quaternion_group",
    "direct_product",
    "group_by_name",
    "read_group_table",
    "generated_subgroup",
    "all_subgroups",
    "parse_subgroup",
    "linear_characters",
    "trivial_rep",
    "character_rep",
    "sign_rep",
    "induced_two_dim_rep",
    "regular_rep",
    "rep_from_json",
    "corpus",
]


class GroupModelError(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class FiniteGroupModel:
    """Group on ``0..order-1`` with ``mul[a, b] = a * b``.

    ``labels`` name the elements (permutation tuples, pairs, ...) for parsing
    and printing; they play no role in the arithmetic.
    """

    mul: np.ndarray
    labels: tuple = ()
    name: str = "G"
    perm_degree: int = 0  # > 0 when labels are permutations of 0..perm_degree-1
    identity: int = field(init=False)
    inverse: np.ndarray = field(init=False, repr=False)

    def __post_init__(self):
        mul = np.asarray(self.mul, dtype=np.int64)
        n = mul.shape[0]
        if mul.ndim != 2 or mul.shape != (n, n) or n == 0:
            raise GroupModelError("multiplication table must be a nonempty square matrix")
        if mul.min() < 0 or mul.max() >= n:
            raise GroupModelError("table entries must be element indices")
        object.__setattr__(self, "mul", mul)
        labels = tuple(self.labels) if len(self.labels) else tuple(range(n))
        if len(labels) != n:
            raise GroupModelError("need one label per element")
        object.__setattr__(self, "labels", labels)
        ar = np.arange(n)
        ids = [e for e in range(n) if np.array_equal(mul[e], ar) and np.array_equal(mul[:, e], ar)]
        if len(ids) != 1:
            raise GroupModelError("no two-sided identity")
        e = ids[0]
        object.__setattr__(self, "identity", e)
        inv = np.full(n, -1, dtype=np.int64)
        for a in range(n):
            hits = np.nonzero(mul[a] == e)[0]
            if len(hits) != 1 or mul[hits[0], a] != e:
                raise GroupModelError(f"element {a} has no two-sided inverse")
            inv[a] = hits[0]
        object.__setattr__(self, "inverse", inv)
        self._check_associative()

    def _check_associative(self, n_random: int = 2000):
        n = self.order
        m = self.mul
        if n <= 64:
            # (ab)c == a(bc) for all triples, vectorised over (b, c)
            for a in range(n):
                if not np.array_equal(m[m[a]][:, :], m[a][m]):
                    raise GroupModelError("multiplication is not associative")
        else:
            rng = np.random.default_rng(0)
            a, b, c = rng.integers(0, n, size=(3, n_random))
            if not np.array_equal(m[m[a, b], c], m[a, m[b, c]]):
                raise GroupModelError("multiplication is not associative")

    @property
    def order(self) -> int:
        return self.mul.shape[0]

    def __len__(self):
        return self.order

    def __repr__(self):
        return f"FiniteGroupModel({self.name}, order={self.order})"

    def conj(self, x: int, g: int) -> int:
        """``x^-1 g x``."""
        return int(self.mul[self.mul[self.inverse[x], g], x])

    def index_of(self, label) -> int:
        return self.labels.index(label)

    def element_order(self, g: int) -> int:
        k, x = 1, g
        while x != self.identity:
            x = self.mul[x, g]
            k += 1
        return k

    def exponent(self) -> int:
        return math.lcm(*(self.element_order(g) for g in range(self.order)))

    def centralizer(self, g: int, within: Sequence[int] | None = None) -> list[int]:
        pool = range(self.order) if within is None else within
        return [x for x in pool if self.mul[x, g] == self.mul[g, x]]

    def center(self) -> list[int]:
        return [z for z in range(self.order) if np.array_equal(self.mul[z], self.mul[:, z])]

    def right_coset_reps(self, H: Sequence[int]) -> list[int]:
        """One ``x`` per right coset ``H x``."""
        seen = set()
        reps = []
        for x in range(self.order):
            if x in seen:
                continue
            reps.append(x)
            seen.update(int(self.mul[h, x]) for h in H)
        return reps


def from_elements(elements: Sequence[Hashable], op: Callable, name: str = "G",
                  perm_degree: int = 0) -> FiniteGroupModel:
    index = {el: i for i, el in enumerate(elements)}
    n = len(elements)
    mul = np.empty((n, n), dtype=np.int64)
    for i, a in enumerate(elements):
        for j, b in enumerate(elements):
            mul[i, j] = index[op(a, b)]
    return FiniteGroupModel(mul, tuple(elements), name, perm_degree)


def cyclic_group(n: int) -> FiniteGroupModel:
    return from_elements(list(range(n)), lambda a, b: (a + b) % n, f"C{n}")


def dihedral_group(order: int) -> FiniteGroupModel:
    """Dihedral group of the given (even) order; elements ``(k, s)`` mean ``r^k f^s``."""
    if order < 4 or order % 2:
        raise ValueError("dihedral order must be even and >= 4")
    n = order // 2
    elements = [(k, s) for s in (0, 1) for k in range(n)]

    def op(a, b):
        (k1, s1), (k2, s2) = a, b
        return ((k1 + (-k2 if s1 else k2)) % n, s1 ^ s2)

    return from_elements(elements, op, f"D{order}")


def _compose(p, q):
    # (p * q)(i) = p(q(i)): apply q first
    return tuple(p[i] for i in q)


def symmetric_group(n: int) -> FiniteGroupModel:
    return from_elements(list(permutations(range(n))), _compose, f"S{n}", n)


def _perm_sign(p) -> int:
    sign, seen = 1, set()
    for i in range(len(p)):
        if i in seen:
            continue
        j, length = i, 0
        while j not in seen:
            seen.add(j)
            j = p[j]
            length += 1
        sign *= -1 if length % 2 == 0 else 1
    return sign


def alternating_group(n: int) -> FiniteGroupModel:
    return from_elements([p for p in permutations(range(n)) if _perm_sign(p) == 1], _compose, f"A{n}", n)


def quaternion_group() -> FiniteGroupModel:
    # unit quaternions (+-1, +-i, +-j, +-k) as (sign, axis) with axis 0 = real part
    table = {  # axis products: (a, b) -> (sign, axis)
        (0, 0): (1, 0), (0, 1): (1, 1), (0, 2): (1, 2), (0, 3): (1, 3),
        (1, 0): (1, 1), (1, 1): (-1, 0), (1, 2): (1, 3), (1, 3): (-1, 2),
        (2, 0): (1, 2), (2, 1): (-1, 3), (2, 2): (-1, 0), (2, 3): (1, 1),
        (3, 0): (1, 3), (3, 1): (1, 2), (3, 2): (-1, 1), (3, 3): (-1, 0),
    }
    elements = [(s, a) for a in range(4) for s in (1, -1)]

    def op(x, y):
        sg, ax = table[(x[1], y[1])]
        return (x[0] * y[0] * sg, ax)

    return from_elements(elements, op, "Q8")


def direct_product(G: FiniteGroupModel, H: FiniteGroupModel) -> FiniteGroupModel:
    n, m = G.order, H.order
    mul = np.empty((n * m, n * m), dtype=np.int64)
    for a, b, c, d in product(range(n), range(m), range(n), range(m)):
        mul[a * m + b, c * m + d] = G.mul[a, c] * m + H.mul[b, d]
    labels = tuple((x, y) for x in G.labels for y in H.labels)
    return FiniteGroupModel(mul, labels, f"{G.name}x{H.name}")


def group_by_name(name: str) -> FiniteGroupModel:
    """``cN``, ``dN`` (dihedral of order N), ``sN`` (N <= 4), ``a4``, ``q8``, ``c2xc2xc2``."""
    key = name.strip().lower()
    if key == "q8":
        return quaternion_group()
    if key == "a4":
        return alternating_group(4)
    if "x" in key:
        parts = [group_by_name(p) for p in key.split("x")]
        G = parts[0]
        for P in parts[1:]:
            G = direct_product(G, P)
        return G
    m = re.fullmatch(r"([cds])(\d+)", key)
    if not m:
        raise GroupModelError(f"unknown group {name!r}")
    kind, k = m.group(1), int(m.group(2))
    if kind == "c":
        return cyclic_group(k)
    if kind == "d":
        return dihedral_group(k)
    if k > 4:
        raise GroupModelError("symmetric groups are built in up to S4")
    return symmetric_group(k)


def read_group_table(path) -> FiniteGroupModel:
    """Whitespace-separated integer matrix, row ``a`` column ``b`` holding ``a * b``."""
    rows = []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                rows.append([int(x) for x in line.split()])
    return FiniteGroupModel(np.array(rows, dtype=np.int64), name=str(path))


# -- subgroups -----------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class SubgroupEmbedding:
    group: FiniteGroupModel
    elements: tuple[int, ...]
    coset_reps: tuple[int, ...] = field(init=False)

    def __post_init__(self):
        els = tuple(sorted(set(int(x) for x in self.elements)))
        object.__setattr__(self, "elements", els)
        G = self.group
        S = set(els)
        if G.identity not in S:
            raise GroupModelError("subgroup must contain the identity")
        for a in els:
            if int(G.inverse[a]) not in S:
                raise GroupModelError(f"subgroup not closed under inverse at {a}")
            for b in els:
                if int(G.mul[a, b]) not in S:
                    raise GroupModelError(f"subgroup not closed under multiplication at ({a}, {b})")
        reps = tuple(G.right_coset_reps(els))
        if len(reps) * len(els) != G.order:
            raise GroupModelError("coset count times subgroup order differs from group order")
        object.__setattr__(self, "coset_reps", reps)

    @property
    def order(self) -> int:
        return len(self.elements)

    @property
    def index(self) -> int:
        return len(self.coset_reps)

    def conjugacy_classes(self) -> list[list[int]]:
        """Classes of the subgroup under conjugation by its own elements."""
        G = self.group
        seen = set()
        classes = []
        for g in self.elements:
            if g in seen:
                continue
            cls = sorted({G.conj(x, g) for x in self.elements})
            seen.update(cls)
            classes.append(cls)
        return classes

    def __repr__(self):
        return f"SubgroupEmbedding(order={self.order} in {self.group.name})"


def _closure(G: FiniteGroupModel, gens: Sequence[int]) -> frozenset[int]:
    S = {G.identity}
    frontier = [G.identity]
    gens = [int(g) for g in gens]
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = int(G.mul[x, g])
                if y not in S:
                    S.add(y)
                    new.append(y)
        frontier = new
    return frozenset(S)


def generated_subgroup(G: FiniteGroupModel, gens: Sequence[int]) -> SubgroupEmbedding:
    return SubgroupEmbedding(G, tuple(_closure(G, gens)))


def all_subgroups(G: FiniteGroupModel) -> list[SubgroupEmbedding]:
    """Every subgroup, by joining cyclic subgroups until nothing new appears."""
    cyclic = {_closure(G, [g]) for g in range(G.order)}
    found = set(cyclic)
    frontier = set(cyclic)
    while frontier:
        new = set()
        for H in frontier:
            for C in cyclic:
                if not C <= H:
                    J = _closure(G, sorted(H | C))
                    if J not in found:
                        new.add(J)
        found |= new
        frontier = new
    return [SubgroupEmbedding(G, tuple(sorted(H))) for H in sorted(found, key=lambda H: (len(H), sorted(H)))]


def _parse_cycles(text: str, n: int) -> tuple[int, ...]:
    perm = list(range(n))
    for cyc in re.findall(r"\(([^()]*)\)", text):
        pts = [int(x) - 1 for x in cyc.replace(",", " ").split()]
        if any(not 0 <= p < n for p in pts):
            raise GroupModelError(f"cycle {cyc!r} mentions a point outside 1..{n}")
        for a, b in zip(pts, pts[1:] + pts[:1]):
            perm[a] = b
    return tuple(perm)


def parse_subgroup(G: FiniteGroupModel, spec: str) -> SubgroupEmbedding:
    """``perm:(1 2 3 4);(1 2)`` (generators in cycle notation, symmetric groups),
    ``gen:i,j,...`` (element indices), ``center``, ``trivial`` or ``whole``."""
    spec = spec.strip()
    if spec == "trivial":
        return SubgroupEmbedding(G, (G.identity,))
    if spec == "whole":
        return SubgroupEmbedding(G, tuple(range(G.order)))
    if spec == "center":
        return SubgroupEmbedding(G, tuple(G.center()))
    kind, _, body = spec.partition(":")
    if kind == "gen":
        return generated_subgroup(G, [int(x) for x in body.split(",") if x.strip()])
    if kind == "perm":
        if not G.perm_degree:
            raise GroupModelError("perm: generators need a permutation group")
        n = G.perm_degree
        gens = [G.index_of(_parse_cycles(part, n)) for part in body.split(";") if part.strip()]
        return generated_subgroup(G, gens)
    raise GroupModelError(f"cannot parse subgroup {spec!r}")


# -- representations of the subgroup ------------------------------------------

@dataclass(frozen=True, eq=False)
class UnitaryRepOmega:
    """Matrices ``omega(gamma)`` for every element of a subgroup."""

    sub: SubgroupEmbedding
    matrices: dict
    name: str = "omega"

    def __post_init__(self):
        G = self.sub.group
        mats = {int(k): np.asarray(v) for k, v in self.matrices.items()}
        if set(mats) != set(self.sub.elements):
            raise GroupModelError("need one matrix per subgroup element")
        dims = {m.shape for m in mats.values()}
        if len(dims) != 1 or next(iter(dims))[0] != next(iter(dims))[1]:
            raise GroupModelError("matrices must be square of one common size")
        object.__setattr__(self, "matrices", mats)
        d = self.dim
        eye = np.identity(d)
        if not np.allclose(mats[G.identity], eye, atol=1e-12, rtol=0):
            raise GroupModelError("omega(e) must be the identity")
        for g, M in mats.items():
            if not np.allclose(M.conj().T @ M, eye, atol=1e-12, rtol=0):
                raise GroupModelError(f"omega({g}) is not unitary")
        for a in self.sub.elements:
            for b in self.sub.elements:
                if not np.allclose(mats[a] @ mats[b], mats[int(G.mul[a, b])], atol=1e-12, rtol=0):
                    raise GroupModelError(f"omega is not multiplicative at ({a}, {b})")

    @property
    def dim(self) -> int:
        return next(iter(self.matrices.values())).shape[0]

    def trace(self, g: int):
        """Exact int for integer matrices, complex otherwise."""
        M = self.matrices[g]
        if np.issubdtype(M.dtype, np.integer):
            return int(np.trace(M))
        return complex(np.trace(M))


def _subgroup_generators(G: FiniteGroupModel, els: Sequence[int]) -> list[int]:
    gens, span = [], frozenset({G.identity})
    for g in sorted(els, key=lambda x: -G.element_order(x)):
        if g not in span:
            gens.append(g)
            span = _closure(G, gens)
        if len(span) == len(els):
            break
    return gens


def linear_characters(sub: SubgroupEmbedding) -> list[dict[int, complex]]:
    """All one-dimensional characters of the subgroup, trivial first.

    Characters take values in the ``e``-th roots of unity (``e`` = exponent);
    generator images are enumerated and kept when they extend consistently.
    """
    G = sub.group
    els = list(sub.elements)
    gens = _subgroup_generators(G, els)
    e = math.lcm(*(G.element_order(g) for g in els))
    roots = [cmath.exp(2j * math.pi * k / e) for k in range(e)]
    found = []
    for ks in product(range(e), repeat=len(gens)):
        val = {G.identity: 0}  # exponent of the root of unity
        frontier = [G.identity]
        ok = True
        while frontier and ok:
            new = []
            for x in frontier:
                for g, k in zip(gens, ks):
                    y = int(G.mul[x, g])
                    v = (val[x] + k) % e
                    if y in val:
                        if val[y] != v:
                            ok = False
                            break
                    else:
                        val[y] = v
                        new.append(y)
                if not ok:
                    break
            frontier = new
        if ok:
            found.append({g: _root(val[g], e, roots) for g in els})
    return found


def _root(k: int, e: int, roots):
    if k == 0:
        return 1
    if 2 * k == e:
        return -1
    return roots[k]


def character_rep(sub: SubgroupEmbedding, chi: dict, name: str = "chi") -> UnitaryRepOmega:
    exact = all(isinstance(v, int) for v in chi.values())
    dtype = np.int64 if exact else complex
    return UnitaryRepOmega(sub, {g: np.array([[chi[g]]], dtype=dtype) for g in sub.elements}, name)


def trivial_rep(sub: SubgroupEmbedding) -> UnitaryRepOmega:
    return character_rep(sub, {g: 1 for g in sub.elements}, "trivial")


def sign_rep(sub: SubgroupEmbedding) -> UnitaryRepOmega | None:
    """Permutation sign for permutation groups, else a nontrivial real character (None if none)."""
    G = sub.group
    if G.perm_degree:
        chi = {g: _perm_sign(G.labels[g]) for g in sub.elements}
        if any(v == -1 for v in chi.values()):
            return character_rep(sub, chi, "sign")
    for chi in linear_characters(sub)[1:]:
        if all(v in (1, -1) for v in chi.values()):
            return character_rep(sub, chi, "sign")
    return None


def induced_two_dim_rep(sub: SubgroupEmbedding) -> UnitaryRepOmega | None:
    """Induce a character of an index-2 subgroup H; a nontrivial character of H is
    preferred so that the result is irreducible when possible."""
    G = sub.group
    els = list(sub.elements)
    if len(els) % 2:
        return None
    for H in all_subgroups(_as_group(sub)):
        if 2 * H.order != len(els):
            continue
        Hg = SubgroupEmbedding(G, tuple(els[h] for h in H.elements))
        chars = linear_characters(Hg)
        chi = next((c for c in chars[1:] if any(v not in (1, -1) for v in c.values())),
                   chars[1] if len(chars) > 1 else chars[0])
        Hset = set(Hg.elements)
        t = next(x for x in els if x not in Hset)
        reps = [G.identity, t]
        dtype = np.int64 if all(isinstance(v, int) for v in chi.values()) else complex
        mats = {}
        for g in els:
            M = np.zeros((2, 2), dtype=dtype)
            for i, r in enumerate(reps):
                gr = int(G.mul[g, r])
                for j, rj in enumerate(reps):
                    h = int(G.mul[G.inverse[rj], gr])
                    if h in Hset:
                        M[j, i] = chi[h]
                        break
            mats[g] = M
        return UnitaryRepOmega(sub, mats, "induced2")
    return None


def _as_group(sub: SubgroupEmbedding) -> FiniteGroupModel:
    """The subgroup as a group in its own right (elements renumbered by position)."""
    G = sub.group
    els = list(sub.elements)
    pos = {g: i for i, g in enumerate(els)}
    mul = np.array([[pos[int(G.mul[a, b])] for b in els] for a in els], dtype=np.int64)
    return FiniteGroupModel(mul, tuple(G.labels[g] for g in els), f"sub({G.name})")


def regular_rep(sub: SubgroupEmbedding) -> UnitaryRepOmega:
    G = sub.group
    els = list(sub.elements)
    pos = {g: i for i, g in enumerate(els)}
    mats = {}
    for g in els:
        M = np.zeros((len(els), len(els)), dtype=np.int64)
        for h in els:
            M[pos[int(G.mul[g, h])], pos[h]] = 1
        mats[g] = M
    return UnitaryRepOmega(sub, mats, "regular")


def rep_from_json(sub: SubgroupEmbedding, data: dict) -> UnitaryRepOmega:
    """``{"matrices": {"<element index>": [[[re, im], ...], ...]}}``."""
    mats = {}
    for k, rows in data["matrices"].items():
        mats[int(k)] = np.array([[complex(re, im) for re, im in row] for row in rows], dtype=complex)
    return UnitaryRepOmega(sub, mats, data.get("name", "file"))


def corpus() -> list[FiniteGroupModel]:
    """Built-in groups of order <= 24."""
    groups = [cyclic_group(n) for n in range(1, 13)]
    groups += [dihedral_group(2 * n) for n in range(2, 13)]
    groups += [symmetric_group(3), symmetric_group(4), alternating_group(4), quaternion_group(),
               group_by_name("c2xc2xc2")]
    return groups
