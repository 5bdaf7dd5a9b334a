"""Finite covers from permutation voltage assignments.

A d-sheeted cover of a connected complex X is described by a permutation of
{0, ..., d-1} on every oriented edge, identity on a spanning tree. Sheet i
over u is joined to sheet pi(i) over v along the edge u -> v. Higher
simplices lift when every triangle's boundary word is the identity.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .complexes import SimplicialComplex, boundary_matrix, build_complex, label_key
from .errors import FormatError, NotConnected, VoltageInconsistent
from .linalg_exact import Matrix


def _check_perm(p, d):
    p = tuple(p)
    if sorted(p) != list(range(d)):
        raise FormatError(f"{list(p)} is not a permutation of 0..{d - 1}")
    return p


def invert(p: Sequence[int]) -> tuple[int, ...]:
    out = [0] * len(p)
    for i, x in enumerate(p):
        out[x] = i
    return tuple(out)


def compose(p, q):
    """Apply p first, then q."""
    return tuple(q[x] for x in p)


@dataclass(frozen=True)
class VoltageAssignment:
    degree: int
    spanning_tree: tuple = ()  # pairs of vertex labels
    voltages: dict = field(default_factory=dict)  # (u, v) label pair -> image list

    def __post_init__(self):
        if self.degree < 1:
            raise FormatError("cover degree must be >= 1")
        object.__setattr__(self, "spanning_tree", tuple(tuple(e) for e in self.spanning_tree))
        vol = {}
        for (u, v), p in self.voltages.items():
            p = _check_perm(p, self.degree)
            if (v, u) in vol and vol[(v, u)] != invert(p):
                raise FormatError(f"voltages on {u}-{v} and {v}-{u} are not inverse")
            vol[(u, v)] = p
        object.__setattr__(self, "voltages", vol)

    def voltage(self, u, v) -> tuple[int, ...]:
        """Permutation along u -> v; identity on tree edges and unlabeled edges."""
        if (u, v) in self.voltages:
            return self.voltages[(u, v)]
        if (v, u) in self.voltages:
            return invert(self.voltages[(v, u)])
        return tuple(range(self.degree))

    def is_transitive(self) -> bool:
        """Whether the permutations generate a transitive group on the sheets."""
        seen, frontier = {0}, [0]
        gens = list(self.voltages.values())
        gens += [invert(p) for p in gens]
        while frontier:
            i = frontier.pop()
            for p in gens:
                if p[i] not in seen:
                    seen.add(p[i])
                    frontier.append(p[i])
        return len(seen) == self.degree


def trivial_voltages(X: SimplicialComplex, degree: int) -> VoltageAssignment:
    return VoltageAssignment(degree, spanning_tree_of(X))


def spanning_tree_of(X: SimplicialComplex) -> tuple:
    """BFS spanning tree of the 1-skeleton as label pairs."""
    adj = {v: [] for v in range(len(X.vertices))}
    for a, b in X.simplices(1):
        adj[a].append(b)
        adj[b].append(a)
    seen, tree, frontier = {0}, [], [0]
    while frontier:
        a = frontier.pop(0)
        for b in adj[a]:
            if b not in seen:
                seen.add(b)
                tree.append((X.vertices[min(a, b)], X.vertices[max(a, b)]))
                frontier.append(b)
    return tuple(tree)


def _validate_tree(X: SimplicialComplex, va: VoltageAssignment):
    edges = {frozenset(X.labeled(e)) for e in X.simplices(1)}
    tree = [frozenset(e) for e in va.spanning_tree]
    if len(tree) != len(X.vertices) - 1:
        raise FormatError("spanning tree must have #vertices - 1 edges")
    parent = {v: v for v in X.vertices}

    def find(a):
        while parent[a] != a:
            a = parent[a]
        return a

    for e in tree:
        if e not in edges:
            raise FormatError(f"tree edge {sorted(e, key=label_key)} is not an edge of the complex")
        a, b = tuple(e)
        ra, rb = find(a), find(b)
        if ra == rb:
            raise FormatError("tree edges contain a cycle")
        parent[ra] = rb
    for (u, v), p in va.voltages.items():
        if frozenset((u, v)) not in edges:
            raise FormatError(f"voltage on {u}-{v}, which is not an edge")
        if frozenset((u, v)) in tree and p != tuple(range(va.degree)):
            raise FormatError(f"tree edge {u}-{v} carries a non-identity voltage")


def build_cover(X: SimplicialComplex, va: VoltageAssignment) -> SimplicialComplex:
    """The cover defined by ``va``; vertex labels are (base label, sheet) pairs."""
    if not X.is_connected():
        raise NotConnected("covers are built over connected complexes")
    _validate_tree(X, va)
    d = va.degree
    lab = X.vertices
    perm = {}
    for a, b in X.simplices(1):
        perm[(a, b)] = va.voltage(lab[a], lab[b])
    for a, b, c in X.simplices(2):
        if compose(perm[(a, b)], perm[(b, c)]) != perm[(a, c)]:
            raise VoltageInconsistent(
                f"boundary word of triangle {X.labeled((a, b, c))} is not the identity")
    facets = []
    for f in X.facets:
        v0 = f[0]
        for i in range(d):
            facets.append(tuple((lab[v], i if v == v0 else perm[(v0, v)][i]) for v in f))
    return build_complex(facets)


def projection_matrix(X: SimplicialComplex, cover: SimplicialComplex, k: int) -> Matrix:
    """0/1 matrix of the simplicial projection C_k(cover) -> C_k(X)."""
    rows = [[0] * cover.count(k) for _ in range(X.count(k))]
    pos = X.vertex_index
    for j, s in enumerate(cover.simplices(k)):
        base = tuple(sorted(pos[cover.vertices[v][0]] for v in s))
        rows[X.index(base)][j] = 1
    return Matrix.from_rows(rows, cols=cover.count(k))


@dataclass(frozen=True)
class SweepRow:
    degree: int
    xi_top: object  # Fraction
    xi_next: object  # Fraction, or None when m - 1 < 1
    connected: bool

    def to_json(self):
        return {"degree": self.degree, "xi_top": str(self.xi_top),
                "xi_next": None if self.xi_next is None else str(self.xi_next),
                "connected": self.connected}


def cover_expansion_sweep(X: SimplicialComplex, assignments: Sequence[VoltageAssignment],
                          guard=None) -> list[SweepRow]:
    """Real expansion of the top two boundary maps of each sampled cover.

    A finite sample only; it says nothing about covers outside the list.
    """
    from .expansion import xi_real_global

    m = X.dim
    out = []
    for va in assignments:
        Y = build_cover(X, va)
        top = xi_real_global(boundary_matrix(Y, m), guard).value
        nxt = xi_real_global(boundary_matrix(Y, m - 1), guard).value if m >= 2 else None
        out.append(SweepRow(va.degree, top, nxt, Y.is_connected()))
    return out


def cyclic_voltages(X: SimplicialComplex, degree: int, shift: int = 1) -> VoltageAssignment:
    """Cyclic shift by ``shift`` sheets on every non-tree edge.

    Always fine on graphs; on higher complexes the triangle words may fail,
    which :func:`build_cover` reports.
    """
    tree = spanning_tree_of(X)
    tset = {frozenset(e) for e in tree}
    p = tuple((i + shift) % degree for i in range(degree))
    vol = {X.labeled(e): p for e in X.simplices(1) if frozenset(X.labeled(e)) not in tset}
    return VoltageAssignment(degree, tree, vol)


def cocycle_voltages(X: SimplicialComplex, degree: int, phi=None) -> VoltageAssignment:
    """Cyclic voltages read off an integer 1-cocycle ``phi`` modulo ``degree``.

    Cocycles always satisfy the triangle condition. ``phi`` is shifted by a
    coboundary so it vanishes on the spanning tree. By default ``phi`` is
    the first integer cocycle that is not a coboundary; ValueError when the
    first cohomology vanishes.
    """
    from .complexes import coboundary_matrix
    from .linalg_exact import in_column_space, kernel_basis, primitive

    d0 = coboundary_matrix(X, 0)
    if phi is None:
        d1 = coboundary_matrix(X, 1) if X.dim >= 2 else Matrix.zeros(0, X.count(1))
        basis = kernel_basis(d1) if d1.rows else [tuple(int(i == j) for j in range(X.count(1)))
                                                     for i in range(X.count(1))]
        phi = next((primitive(b) for b in basis if not in_column_space(d0, b)), None)
        if phi is None:
            raise ValueError("first cohomology vanishes: no nontrivial cocycle")
    phi = list(phi)
    tree = spanning_tree_of(X)
    pos = X.vertex_index
    f = {0: 0}
    adj = {}
    for u, v in tree:
        a, b = pos[u], pos[v]
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)
    frontier = [0]
    while frontier:
        a = frontier.pop()
        for b in adj.get(a, []):
            if b not in f:
                e = X.index((min(a, b), max(a, b)))
                f[b] = f[a] + (phi[e] if a < b else -phi[e])
                frontier.append(b)
    vol = {}
    for e, (a, b) in enumerate(X.simplices(1)):
        s = (phi[e] - f[b] + f[a]) % degree
        if s:
            vol[X.labeled((a, b))] = tuple((i + s) % degree for i in range(degree))
    return VoltageAssignment(degree, tree, vol)
