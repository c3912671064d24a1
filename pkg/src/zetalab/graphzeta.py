"""Zeta functions of finite graphs.

A finite connected graph of minimum degree two is the quotient of a tree by a
free lattice; closed non-backtracking cycles play the role of hyperbolic
conjugacy classes and their lengths form the length spectrum.  With unit class
weights the Euler product

    Z(T) = prod_{primitive cycles} (1 - T^length)

is the polynomial ``det(I - T B)`` for the oriented-edge (Hashimoto) matrix
``B``.  This module enumerates the cycles, computes ``det(I - T B)`` and the
vertex-side formula exactly, and checks rationality, the cycle-count trace
identity, the log-derivative and the divisor.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from .polynomial import (
    IntPolynomial,
    TruncatedSeries,
    bareiss_det,
    interpolate,
    squarefree_decomposition,
)

__all__ = [
    "Graph",
    "GraphError",
    "OrientedEdgeSpace",
    "PrimitiveCycle",
    "read_graph",
    "write_graph",
    "cycle_graph",
    "complete_graph",
    "complete_bipartite_graph",
    "petersen_graph",
    "random_graph",
    "hashimoto",
    "enumerate_primitive_cycles",
    "self_paired_cycles",
    "euler_product_series",
    "zeta_polynomial",
    "bass_polynomial",
    "rationality_report",
    "cycle_count_identity",
    "divisor",
    "Root",
    "RootFindingError",
    "log_derivative_check",
    "SeriesReport",
]


class GraphError(ValueError):
    pass


@dataclass(frozen=True)
class Graph:
    n_vertices: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        edges = tuple((int(u), int(v)) for u, v in self.edges)
        object.__setattr__(self, "edges", edges)
        problems = []
        if self.n_vertices < 1:
            problems.append("need at least one vertex")
        seen = set()
        for u, v in edges:
            if not (0 <= u < self.n_vertices and 0 <= v < self.n_vertices):
                problems.append(f"edge ({u}, {v}) has a vertex out of range")
            elif u == v:
                problems.append(f"loop at vertex {u}")
            key = frozenset((u, v))
            if key in seen:
                problems.append(f"duplicate edge ({u}, {v})")
            seen.add(key)
        if problems:
            raise GraphError("; ".join(problems))
        deg = self.degrees
        low = [v for v in range(self.n_vertices) if deg[v] < 2]
        if low:
            raise GraphError(f"vertices of degree < 2: {low}")
        if not self._connected():
            raise GraphError("graph is not connected")

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def degrees(self) -> list[int]:
        deg = [0] * self.n_vertices
        for u, v in self.edges:
            deg[u] += 1
            deg[v] += 1
        return deg

    def adjacency(self) -> np.ndarray:
        A = np.zeros((self.n_vertices, self.n_vertices), dtype=np.int64)
        for u, v in self.edges:
            A[u, v] = A[v, u] = 1
        return A

    def _connected(self) -> bool:
        nbrs = [[] for _ in range(self.n_vertices)]
        for u, v in self.edges:
            nbrs[u].append(v)
            nbrs[v].append(u)
        seen = {0}
        stack = [0]
        while stack:
            x = stack.pop()
            for y in nbrs[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return len(seen) == self.n_vertices


def read_graph(path) -> Graph:
    """Text format: ``p <n_vertices> <n_edges>`` then one ``u v`` pair per line, 0-indexed."""
    with open(path, encoding="utf-8") as fh:
        lines = [ln.split("#", 1)[0].strip() for ln in fh]
    lines = [ln for ln in lines if ln]
    if not lines or not lines[0].startswith("p"):
        raise GraphError(f"{path}: first line must be 'p <n_vertices> <n_edges>'")
    head = lines[0].split()
    if len(head) != 3:
        raise GraphError(f"{path}: malformed header {lines[0]!r}")
    try:
        n, m = int(head[1]), int(head[2])
        edges = [tuple(int(x) for x in ln.split()) for ln in lines[1:]]
    except ValueError as exc:
        raise GraphError(f"{path}: {exc}") from exc
    if any(len(e) != 2 for e in edges):
        raise GraphError(f"{path}: each edge line needs exactly two vertices")
    if len(edges) != m:
        raise GraphError(f"{path}: header announces {m} edges, found {len(edges)}")
    return Graph(n, tuple(edges))


def write_graph(g: Graph, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"p {g.n_vertices} {g.n_edges}\n")
        for u, v in g.edges:
            fh.write(f"{u} {v}\n")


# -- corpus ---------------------------------------------------------------------

def cycle_graph(n: int) -> Graph:
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple((i, j) for i in range(n) for j in range(i + 1, n)))


def complete_bipartite_graph(a: int, b: int) -> Graph:
    return Graph(a + b, tuple((i, a + j) for i in range(a) for j in range(b)))


def petersen_graph() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


def random_graph(n: int, seed: int = 0, p: float = 0.4, max_tries: int = 10_000) -> Graph:
    """Random connected graph on ``n`` vertices with minimum degree 2 (rejection sampling)."""
    if n < 3:
        raise ValueError("need n >= 3")
    rng = np.random.default_rng(seed)
    pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
    for _ in range(max_tries):
        keep = rng.random(len(pairs)) < p
        edges = tuple(e for e, k in zip(pairs, keep) if k)
        try:
            return Graph(n, edges)
        except GraphError:
            continue
    raise RuntimeError(f"no valid graph found for n={n}, p={p}")


# -- oriented edges and the Hashimoto matrix ----------------------------------

@dataclass(frozen=True)
class OrientedEdgeSpace:
    """Edge ``i = (u, v)`` gives oriented edges ``2i: u -> v`` and ``2i + 1: v -> u``."""

    origin: tuple[int, ...]
    terminus: tuple[int, ...]

    @classmethod
    def of(cls, g: Graph) -> "OrientedEdgeSpace":
        origin, terminus = [], []
        for u, v in g.edges:
            origin += [u, v]
            terminus += [v, u]
        return cls(tuple(origin), tuple(terminus))

    def __len__(self):
        return len(self.origin)

    @staticmethod
    def reverse(e: int) -> int:
        return e ^ 1

    def successors(self) -> list[list[int]]:
        by_origin: dict[int, list[int]] = {}
        for f, o in enumerate(self.origin):
            by_origin.setdefault(o, []).append(f)
        return [[f for f in by_origin.get(self.terminus[e], []) if f != e ^ 1]
                for e in range(len(self))]


def hashimoto(g: Graph) -> np.ndarray:
    """``B[e, f] = 1`` iff ``terminus(e) = origin(f)`` and ``f`` is not the reversal of ``e``."""
    space = OrientedEdgeSpace.of(g)
    B = np.zeros((len(space), len(space)), dtype=np.int64)
    for e, nxt in enumerate(space.successors()):
        B[e, nxt] = 1
    return B


# -- primitive cycles ------------------------------------------------------------

def _min_rotation(word: Sequence[int]) -> tuple[int, ...]:
    return min(tuple(word[i:]) + tuple(word[:i]) for i in range(len(word)))


def _is_primitive(word: Sequence[int]) -> bool:
    n = len(word)
    return all(tuple(word[d:]) + tuple(word[:d]) != tuple(word)
               for d in range(1, n) if n % d == 0)


@dataclass(frozen=True, order=True)
class PrimitiveCycle:
    """Closed non-backtracking cycle, stored as its lexicographically minimal rotation."""

    canonical_key: tuple[int, ...]
    length: int = field(compare=False)

    @classmethod
    def from_word(cls, word: Sequence[int]) -> "PrimitiveCycle":
        key = _min_rotation(word)
        return cls(key, len(key))

    @property
    def edge_seq(self) -> tuple[int, ...]:
        return self.canonical_key

    def reversed(self) -> "PrimitiveCycle":
        return PrimitiveCycle.from_word([e ^ 1 for e in reversed(self.canonical_key)])

    def vertices(self, space: OrientedEdgeSpace) -> list[int]:
        return [space.origin[e] for e in self.canonical_key]


def enumerate_primitive_cycles(g: Graph, max_len: int) -> list[PrimitiveCycle]:
    """All primitive closed non-backtracking tailless cycles of length ``<= max_len``.

    One representative per rotation class; a cycle and its reversal are distinct.
    Order: by length, then by canonical key.
    """
    if max_len < 1:
        raise ValueError("max_len must be >= 1")
    space = OrientedEdgeSpace.of(g)
    succ = space.successors()
    found = []
    for start in range(len(space)):
        o_start = space.origin[start]
        rev_start = start ^ 1
        # depth-first over paths whose edges are all >= start; start is then the minimum
        path = [start]
        stack = [iter([f for f in succ[start] if f >= start])] if max_len >= 2 else []
        while stack:
            nxt = next(stack[-1], None)
            if nxt is None:
                stack.pop()
                path.pop()
                continue
            path.append(nxt)
            if space.terminus[nxt] == o_start and nxt != rev_start:
                if _min_rotation(path) == tuple(path) and _is_primitive(path):
                    found.append(PrimitiveCycle(tuple(path), len(path)))
            if len(path) < max_len:
                stack.append(iter([f for f in succ[nxt] if f >= start]))
            else:
                path.pop()
    found.sort(key=lambda c: (c.length, c.canonical_key))
    return found


def self_paired_cycles(cycles: Iterable[PrimitiveCycle]) -> list[PrimitiveCycle]:
    """Cycles whose reversal lies in their own rotation class."""
    return [c for c in cycles if c.reversed() == c]


# -- Euler product and determinant oracles ------------------------------------

def euler_product_series(g: Graph, max_len: int,
                         cycles: Sequence[PrimitiveCycle] | None = None) -> TruncatedSeries:
    """``prod (1 - T^length)`` over primitive cycles, exact to degree ``max_len``.

    Pass ``cycles`` to use a given census instead of enumerating.
    """
    if cycles is None:
        cycles = enumerate_primitive_cycles(g, max_len)
    series = TruncatedSeries.one(max_len)
    for c in cycles:
        if c.length <= max_len:
            series = series.mul_one_minus_monomial(c.length)
    return series


def zeta_polynomial(g: Graph) -> IntPolynomial:
    """``det(I - T B)`` exactly, by integer Bareiss at ``2|E| + 1`` points and interpolation."""
    B = hashimoto(g).tolist()
    n = len(B)
    xs = list(range(n + 1))
    ys = []
    for t in xs:
        M = [[(1 if i == j else 0) - t * B[i][j] for j in range(n)] for i in range(n)]
        ys.append(bareiss_det(M))
    poly = interpolate(xs, ys)
    if not poly.is_integral():
        raise ArithmeticError("interpolated determinant is not an integer polynomial")
    return poly


def bass_polynomial(g: Graph) -> IntPolynomial:
    """``(1 - T^2)^(|E| - |V|) det(I - T A + T^2 (D - I))`` by Bareiss over Z[T]."""
    A = g.adjacency()
    deg = g.degrees
    n = g.n_vertices
    T = IntPolynomial([0, 1])
    M = []
    for i in range(n):
        row = []
        for j in range(n):
            entry = IntPolynomial([1, 0, deg[i] - 1]) if i == j else IntPolynomial()
            if A[i, j]:
                entry = entry - T
            row.append(entry)
        M.append(row)
    det = bareiss_det(M)
    excess = g.n_edges - g.n_vertices
    if excess < 0:
        raise GraphError("|E| < |V| cannot happen for minimum degree 2")
    return IntPolynomial([1, 0, -1]) ** excess * det


@dataclass(frozen=True)
class SeriesReport:
    """Outcome of an exact coefficientwise comparison up to degree ``order``."""

    passed: bool
    order: int
    lhs: tuple
    rhs: tuple
    first_mismatch: int | None = None

    def __str__(self):
        if self.passed:
            return f"PASS (degree <= {self.order})"
        k = self.first_mismatch
        return f"FAIL at degree {k}: {self.lhs[k]} != {self.rhs[k]}"


def rationality_report(g: Graph, max_len: int,
                       cycles: Sequence[PrimitiveCycle] | None = None) -> SeriesReport:
    """Truncated Euler product against ``det(I - T B)`` truncated at ``max_len``."""
    series = euler_product_series(g, max_len, cycles)
    poly = zeta_polynomial(g).truncate(max_len)
    k = series.first_mismatch(poly)
    return SeriesReport(k is None, max_len, tuple(series.coeffs), tuple(poly.coeffs), k)


def _matrix_power_trace(B: np.ndarray, m: int) -> int:
    P = np.array(B, dtype=object)
    acc = np.identity(len(B), dtype=np.int64).astype(object)
    for _ in range(m):
        acc = acc.dot(P)
    return int(sum(acc[i, i] for i in range(len(B))))


def cycle_count_identity(g: Graph, m: int,
                         cycles: Sequence[PrimitiveCycle] | None = None) -> tuple[int, int]:
    """``(sum_{d | m} d * P_d, tr B^m)`` with ``P_d`` the number of primitive cycles of length d."""
    if m < 1:
        raise ValueError("m must be >= 1")
    if cycles is None:
        cycles = enumerate_primitive_cycles(g, m)
    counts: dict[int, int] = {}
    for c in cycles:
        counts[c.length] = counts.get(c.length, 0) + 1
    lhs = sum(d * counts.get(d, 0) for d in range(1, m + 1) if m % d == 0)
    return lhs, _matrix_power_trace(hashimoto(g), m)


def log_derivative_check(g: Graph, max_len: int,
                         cycles: Sequence[PrimitiveCycle] | None = None) -> SeriesReport:
    """``Z'/Z`` from ``det(I - T B)`` against ``-sum_cycles l sum_k T^(k l - 1)``, to degree ``max_len - 1``."""
    if max_len < 2:
        raise ValueError("max_len must be >= 2")
    if cycles is None:
        cycles = enumerate_primitive_cycles(g, max_len)
    Z = zeta_polynomial(g).truncate(max_len)
    analytic = Z.derivative() / Z
    order = max_len - 1
    geometric = [0] * (order + 1)
    for c in cycles:
        l = c.length
        for k in range(1, order // l + 2):
            deg = k * l - 1
            if deg <= order:
                geometric[deg] -= l
    geometric = TruncatedSeries(geometric, order)
    k = analytic.first_mismatch(geometric)
    return SeriesReport(k is None, order, tuple(analytic.coeffs), tuple(geometric.coeffs), k)


# -- divisor ---------------------------------------------------------------------

class RootFindingError(RuntimeError):
    pass


@dataclass(frozen=True)
class Root:
    value: complex
    multiplicity: int
    residual: float  # |Z(value)|


def _polish(coeffs: list[Fraction], z: complex, steps: int = 50) -> complex:
    p = np.polynomial.Polynomial([float(c) for c in coeffs])
    dp = p.deriv()
    for _ in range(steps):
        d = dp(z)
        if d == 0:
            break
        step = p(z) / d
        z -= step
        if abs(step) <= 1e-16 * max(1.0, abs(z)):
            break
    return complex(z)


def divisor(g: Graph, tol: float = 1e-8) -> list[Root]:
    """Zeros of ``det(I - T B)`` with multiplicities.

    Multiplicities come from an exact squarefree decomposition; each squarefree
    factor is solved numerically (companion matrix, then Newton polishing).
    Roots are sorted by (|z|, arg z).
    """
    Z = zeta_polynomial(g)
    roots = []
    for factor, mult in squarefree_decomposition(Z):
        fc = [Fraction(c) for c in factor.coeffs]
        approx = np.polynomial.polynomial.polyroots([float(c) for c in fc])
        scale_f = sum(abs(float(c)) for c in fc)
        for z0 in np.atleast_1d(approx):
            z = _polish(fc, complex(z0))
            fz = abs(complex(np.polynomial.polynomial.polyval(z, [float(c) for c in fc])))
            if fz > tol * scale_f * (1 + abs(z)) ** factor.degree:
                raise RootFindingError(f"no convergence for factor {factor.coeffs} near {z0}: |f| = {fz:.3g}")
            zval = abs(complex(np.polynomial.polynomial.polyval(z, Z.to_float())))
            roots.append(Root(z, mult, zval))
    if sum(r.multiplicity for r in roots) != Z.degree:
        raise RootFindingError("multiplicities do not add up to the degree")
    roots.sort(key=lambda r: (round(abs(r.value), 12), round(math.atan2(r.value.imag, r.value.real), 12)))
    return roots
