"""Finite abstract simplicial complexes and their (co)chain data.

Vertices are kept as labels sorted by :func:`label_key`; simplices are
strictly increasing tuples of vertex *indices*, and each dimension's list is
sorted lexicographically. That ordering fixes every matrix index, so boundary
matrices are reproducible across runs.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Hashable, Iterable, Sequence

from .errors import FormatError, NotAManifold, RangeError
from .linalg_exact import Matrix, rank, smith_normal_form


def label_key(label):
    """Total order on vertex labels: ints before strings, tuples elementwise."""
    if isinstance(label, bool):
        raise FormatError("boolean vertex label")
    if isinstance(label, int):
        return (0, label)
    if isinstance(label, str):
        return (1, label)
    if isinstance(label, tuple):
        return (2, tuple(label_key(x) for x in label))
    raise FormatError(f"unsupported vertex label {label!r}")


@dataclass(frozen=True)
class SimplicialComplex:
    vertices: tuple
    simplices_by_dim: tuple  # simplices_by_dim[k] = sorted tuple of k-simplices

    @property
    def dim(self) -> int:
        return len(self.simplices_by_dim) - 1

    def simplices(self, k: int) -> tuple:
        if 0 <= k <= self.dim:
            return self.simplices_by_dim[k]
        return ()

    def count(self, k: int) -> int:
        return len(self.simplices(k))

    @property
    def f_vector(self) -> tuple[int, ...]:
        return tuple(len(s) for s in self.simplices_by_dim)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * n for k, n in enumerate(self.f_vector))

    @cached_property
    def _index(self) -> list[dict]:
        return [{s: i for i, s in enumerate(level)} for level in self.simplices_by_dim]

    def index(self, simplex: Sequence[int]) -> int:
        s = tuple(simplex)
        return self._index[len(s) - 1][s]

    @cached_property
    def vertex_index(self) -> dict:
        return {v: i for i, v in enumerate(self.vertices)}

    def labeled(self, simplex: Sequence[int]) -> tuple:
        return tuple(self.vertices[i] for i in simplex)

    @cached_property
    def facets(self) -> tuple:
        """Maximal simplices, ordered by dimension then lexicographically."""
        out = []
        for k, level in enumerate(self.simplices_by_dim):
            covered = set()
            for t in self.simplices(k + 1):
                covered.update(t[:p] + t[p + 1:] for p in range(len(t)))
            out.extend(s for s in level if s not in covered)
        return tuple(out)

    def is_pure(self) -> bool:
        return all(len(f) == self.dim + 1 for f in self.facets)

    def components(self) -> list[list[int]]:
        n = len(self.vertices)
        parent = list(range(n))

        def find(a):
            while parent[a] != a:
                parent[a] = parent[parent[a]]
                a = parent[a]
            return a

        for a, b in self.simplices(1):
            parent[find(a)] = find(b)
        groups: dict[int, list[int]] = {}
        for v in range(n):
            groups.setdefault(find(v), []).append(v)
        return list(groups.values())

    def is_connected(self) -> bool:
        return len(self.components()) <= 1

    def to_json(self) -> dict:
        return {"facets": [list(self.labeled(f)) for f in self.facets]}


def build_complex(facets: Iterable[Sequence[Hashable]]) -> SimplicialComplex:
    """Downward closure of ``facets`` with canonical ordering."""
    facets = [tuple(f) for f in facets]
    if not facets:
        raise FormatError("a complex needs at least one facet")
    labels = set()
    for f in facets:
        if not f:
            raise FormatError("empty facet")
        if len(set(f)) != len(f):
            raise FormatError(f"repeated vertex in facet {f!r}")
        labels.update(f)
    vertices = tuple(sorted(labels, key=label_key))
    pos = {v: i for i, v in enumerate(vertices)}
    top = max(len(f) for f in facets) - 1
    levels = [set() for _ in range(top + 1)]
    for f in facets:
        idx = tuple(sorted(pos[v] for v in f))
        for k in range(len(idx)):
            levels[k].update(combinations(idx, k + 1))
    return SimplicialComplex(vertices, tuple(tuple(sorted(lv)) for lv in levels))


def boundary_matrix(X: SimplicialComplex, k: int) -> Matrix:
    """Matrix of the simplicial boundary C_k -> C_{k-1}: entry (-1)^p for the p-th face."""
    if not 1 <= k <= X.dim:
        raise RangeError(f"boundary degree {k} outside 1..{X.dim}")
    rows = X.count(k - 1)
    cols = X.simplices(k)
    data = [[0] * len(cols) for _ in range(rows)]
    for j, s in enumerate(cols):
        for p in range(len(s)):
            data[X.index(s[:p] + s[p + 1:])][j] = -1 if p % 2 else 1
    return Matrix.from_rows(data, cols=len(cols))


def coboundary_matrix(X: SimplicialComplex, k: int) -> Matrix:
    """d^k : C^k -> C^{k+1}. For k = -1 this is the augmentation, a column of ones."""
    if not -1 <= k < X.dim:
        raise RangeError(f"coboundary degree {k} outside -1..{X.dim - 1}")
    if k == -1:
        return Matrix.from_rows([[1] for _ in X.vertices], cols=1)
    return boundary_matrix(X, k + 1).T


# ---------------------------------------------------------------- chains

@dataclass(frozen=True)
class Chain:
    dim: int
    coefficients: dict = field(default_factory=dict)  # simplex index -> int | Fraction

    def __post_init__(self):
        object.__setattr__(self, "coefficients",
                           {i: c for i, c in self.coefficients.items() if c})

    @property
    def is_rational(self) -> bool:
        return any(isinstance(c, Fraction) and c.denominator != 1
                   for c in self.coefficients.values())

    def norm(self):
        """The l1 norm: sum of absolute coefficients."""
        return sum(abs(c) for c in self.coefficients.values())

    def __add__(self, other: "Chain") -> "Chain":
        if other.dim != self.dim:
            raise ValueError("chains of different dimension")
        out = dict(self.coefficients)
        for i, c in other.coefficients.items():
            out[i] = out.get(i, 0) + c
        return Chain(self.dim, out)

    def __rmul__(self, scalar) -> "Chain":
        return Chain(self.dim, {i: scalar * c for i, c in self.coefficients.items()})

    def __neg__(self):
        return (-1) * self

    def vector(self, length: int) -> tuple:
        return tuple(self.coefficients.get(i, 0) for i in range(length))

    @classmethod
    def from_vector(cls, dim: int, vec: Sequence) -> "Chain":
        return cls(dim, {i: c for i, c in enumerate(vec) if c})


def chain_boundary(X: SimplicialComplex, c: Chain) -> Chain:
    if c.dim == 0:
        return Chain(-1, {0: sum(c.coefficients.values())}) if c.coefficients else Chain(-1)
    out: dict = {}
    for j, coef in c.coefficients.items():
        s = X.simplices(c.dim)[j]
        for p in range(len(s)):
            i = X.index(s[:p] + s[p + 1:])
            out[i] = out.get(i, 0) + (-coef if p % 2 else coef)
    return Chain(c.dim - 1, out)


# ---------------------------------------------------------------- homology

@dataclass(frozen=True)
class HomologyReport:
    dim: int
    betti: int
    torsion: tuple[int, ...]

    def to_json(self):
        return {"dim": self.dim, "betti": self.betti, "torsion": list(self.torsion)}


def homology(X: SimplicialComplex, k: int) -> HomologyReport:
    """Integral homology H_k: Betti number and torsion invariant factors."""
    if not 0 <= k <= X.dim:
        raise RangeError(f"homology degree {k} outside 0..{X.dim}")
    rank_in = rank(boundary_matrix(X, k)) if k >= 1 else 0
    if k < X.dim:
        snf = smith_normal_form(boundary_matrix(X, k + 1))
        rank_out = snf.rank
        torsion = tuple(d for d in snf.invariant_factors if d > 1)
    else:
        rank_out, torsion = 0, ()
    return HomologyReport(k, X.count(k) - rank_in - rank_out, torsion)


def betti_numbers(X: SimplicialComplex) -> list[int]:
    return [homology(X, k).betti for k in range(X.dim + 1)]


# ---------------------------------------------------------------- manifolds

@dataclass(frozen=True)
class ManifoldReport:
    is_pseudomanifold: bool
    is_closed: bool
    is_orientable: bool
    dim: int
    fundamental_class: Chain | None = None
    orientation: tuple | None = None  # +-1 per facet, one coherent choice per component

    def to_json(self):
        fc = self.fundamental_class
        return {"is_pseudomanifold": self.is_pseudomanifold, "is_closed": self.is_closed,
                "is_orientable": self.is_orientable, "dim": self.dim,
                "fundamental_class": None if fc is None else list(fc.vector(len(self.orientation)))}


def _ridge_cofaces(X: SimplicialComplex) -> dict:
    """(m-1)-simplex index -> list of (facet index, sign of the ridge in its boundary)."""
    m = X.dim
    out: dict[int, list] = {i: [] for i in range(X.count(m - 1))}
    for j, s in enumerate(X.simplices(m)):
        for p in range(len(s)):
            out[X.index(s[:p] + s[p + 1:])].append((j, -1 if p % 2 else 1))
    return out


def manifold_check(X: SimplicialComplex) -> ManifoldReport:
    """Combinatorial pseudomanifold, closedness and orientability test.

    Orientations are propagated across ridges shared by two facets; a
    conflict means the component is not orientable.
    """
    m = X.dim
    if m < 1 or not X.is_pure():
        return ManifoldReport(False, False, False, m)
    cof = _ridge_cofaces(X)
    degrees = [len(v) for v in cof.values()]
    if any(d > 2 for d in degrees):
        return ManifoldReport(False, False, False, m)
    closed = all(d == 2 for d in degrees)

    nf = X.count(m)
    adj: list[list] = [[] for _ in range(nf)]
    for pairs in cof.values():
        if len(pairs) == 2:
            (f, sf), (g, sg) = pairs
            # coherent: eps_f * sf + eps_g * sg = 0
            adj[f].append((g, -sf * sg))
            adj[g].append((f, -sf * sg))
    eps = [0] * nf
    orientable = True
    n_components = 0
    for start in range(nf):
        if eps[start]:
            continue
        n_components += 1
        eps[start] = 1
        queue = deque([start])
        while queue:
            f = queue.popleft()
            for g, rel in adj[f]:
                want = eps[f] * rel
                if eps[g] == 0:
                    eps[g] = want
                    queue.append(g)
                elif eps[g] != want:
                    orientable = False
    fundamental = None
    if orientable and closed and n_components == 1:
        fundamental = Chain.from_vector(m, eps)
    return ManifoldReport(True, closed, orientable, m, fundamental,
                          tuple(eps) if orientable else None)


def dual_graph_incidence(X: SimplicialComplex) -> Matrix:
    """Coboundary d^0 of the dual 1-skeleton (facets joined across ridges).

    Row r belongs to the dual edge crossing the r-th ridge, column j to the
    dual vertex at the j-th facet; each dual edge runs from the smaller
    facet index to the larger one.
    """
    cof = _ridge_cofaces(X)
    nf = X.count(X.dim)
    rows = []
    for r in range(X.count(X.dim - 1)):
        row = [0] * nf
        facets = sorted(f for f, _ in cof[r])
        if len(facets) != 2:
            raise NotAManifold("a ridge without exactly two cofaces has no dual edge")
        row[facets[0]], row[facets[1]] = -1, 1
        rows.append(row)
    return Matrix.from_rows(rows, cols=nf)


def dual_coboundary_matrix(X: SimplicialComplex, k: int) -> Matrix:
    """d^k of the dual cell structure of a closed oriented X in its dual basis.

    Dual k-cells are indexed by the (m-k)-simplices, so up to the sign of
    each basis element this is the boundary matrix in degree m-k; signed
    basis changes preserve every l1 quantity, so the identification is used
    as-is.
    """
    return boundary_matrix(X, X.dim - k)


def require_closed_orientable(X: SimplicialComplex) -> ManifoldReport:
    rep = manifold_check(X)
    if not (rep.is_pseudomanifold and rep.is_closed and rep.is_orientable):
        raise NotAManifold("complex is not a closed orientable pseudomanifold")
    if rep.dim < 2:
        raise NotAManifold("need dimension at least 2")
    return rep


@dataclass(frozen=True)
class CodimExpansion:
    top: object  # ExpansionResult for the boundary in degree m
    next: object  # ExpansionResult for the boundary in degree m-1

    @property
    def values(self):
        return (self.top.value, self.next.value)


def codim_expansion_constants(X: SimplicialComplex, guard=None) -> CodimExpansion:
    """Real expansion constants of the boundary maps in degrees m and m-1.

    By duality these are the constants of d^0 and d^1 on the dual cell
    structure.
    """
    from .expansion import xi_real_global

    require_closed_orientable(X)
    m = X.dim
    return CodimExpansion(xi_real_global(boundary_matrix(X, m), guard=guard),
                          xi_real_global(boundary_matrix(X, m - 1), guard=guard))
