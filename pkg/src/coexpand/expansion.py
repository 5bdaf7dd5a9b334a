"""l1 expansion constants of integer matrices, over the reals and the integers.

For a matrix A and v in its image, the expansion at v is
min{ ||u||_1 : A u = v } / ||v||_1, and the expansion constant of A is the
supremum over nonzero image vectors. Everything is computed exactly.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, product
from typing import Sequence

from . import guards
from .errors import (DomainError, Infeasible, NegativeInput, NoIntegerSolution, NotCertified,
                     NotExact, NotTU, ZeroMap, ZeroVector)
from .linalg_exact import (Matrix, as_matrix, canonical_sign, in_column_space, integer_solution,
                           l1_norm, line_through, pivot_columns, primitive, rank,
                           smith_normal_form, solve_rational)
from .lp import OPTIMAL, solve_standard

REAL = "real"
INTEGER = "integer"


@dataclass(frozen=True)
class L1Problem:
    A: Matrix
    v: tuple

    def __post_init__(self):
        object.__setattr__(self, "A", as_matrix(self.A))
        object.__setattr__(self, "v", tuple(self.v))
        if len(self.v) != self.A.rows:
            raise ValueError(f"target of length {len(self.v)} for a matrix with {self.A.rows} rows")


@dataclass(frozen=True)
class ExpansionResult:
    """``value`` is the minimal norm for a single target, the ratio for global results.

    ``witness`` is the image vector the value refers to; ``minimizer`` solves
    A·minimizer = witness with ||minimizer|| = value·||witness|| for global
    results and ||minimizer|| = value for single-target results.
    """

    value: Fraction
    minimizer: tuple | None
    witness: tuple | None
    ring: str
    certificate: dict = field(default_factory=dict)

    def to_json(self):
        enc = lambda v: None if v is None else [str(x) for x in v]
        cert = {k: (enc(v) if isinstance(v, tuple) else v) for k, v in self.certificate.items()}
        return {"value": str(self.value), "minimizer": enc(self.minimizer),
                "witness": enc(self.witness), "ring": self.ring, "certificate": cert}


def _frac(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def _l1_split_lp(A: Matrix, v: Sequence, extra_rows=(), extra_rhs=(), n_slack=0):
    """LP min sum(p+q) s.t. A(p-q) = v, plus rows on (p, q, slacks)."""
    n = A.cols
    c = [1] * (2 * n) + [0] * n_slack
    rows = [list(r) + [-x for x in r] + [0] * n_slack for r in A.data]
    rows += [list(r) for r in extra_rows]
    return solve_standard(c, rows, list(v) + list(extra_rhs))


def _bounded_lp(A: Matrix, v: Sequence, bounds):
    """The split LP with lo <= p_j - q_j <= hi for each (j, lo, hi) in ``bounds``."""
    n = A.cols
    side = [(j, lo, 1) for j, lo, _ in bounds if lo is not None]
    side += [(j, hi, -1) for j, _, hi in bounds if hi is not None]
    rows, rhs = [], []
    for s, (j, bnd, sgn) in enumerate(side):
        row = [0] * (2 * n + len(side))
        row[j], row[n + j] = 1, -1
        row[2 * n + s] = -sgn  # u_j - slack = lo, or u_j + slack = hi
        rows.append(row)
        rhs.append(bnd)
    return _l1_split_lp(A, v, rows, rhs, len(side))


def check_certificate(A: Matrix, v: Sequence, u: Sequence, y: Sequence) -> bool:
    """Independent optimality check for min ||u||_1 s.t. Au = v.

    Weak duality: any y with |A^T y|_inf <= 1 gives y·v <= ||u'||_1 for every
    feasible u', so y·v == ||u||_1 certifies u.
    """
    A = as_matrix(A)
    if A.apply(u) != tuple(v):
        return False
    if any(abs(sum(A[i, j] * y[i] for i in range(A.rows))) > 1 for j in range(A.cols)):
        return False
    return l1_norm(u) == sum(a * b for a, b in zip(y, v))


def l1_min_real(p: L1Problem) -> ExpansionResult:
    """Exact minimum of ||u||_1 over real solutions of A u = v."""
    A, v = p.A, p.v
    sol = _l1_split_lp(A, v)
    if sol.status != OPTIMAL:
        raise Infeasible("target is not in the image of the matrix")
    n = A.cols
    u = tuple(_frac(sol.x[j] - sol.x[n + j]) for j in range(n))
    y = tuple(_frac(t) for t in sol.dual)
    return ExpansionResult(_frac(sol.value), u, v, REAL, {"dual": y, "pivots": sol.pivots})


def _is_int(x) -> bool:
    return Fraction(x).denominator == 1


def l1_min_int(p: L1Problem, node_limit: int = 200_000) -> ExpansionResult:
    """Exact minimum of ||u||_1 over integer solutions, by branch and bound.

    Best-first on the LP relaxation, branching on the most fractional
    coordinate of u; each node keeps one interval per branched coordinate.
    The Smith-form particular solution seeds the incumbent.
    """
    A, v = p.A, p.v
    if not in_column_space(A, v):
        raise Infeasible("target is not in the rational image")
    if not all(_is_int(x) for x in v):
        raise NoIntegerSolution("target has fractional entries")
    v = tuple(int(x) for x in v)
    seed = integer_solution(A, v)
    if seed is None:
        raise NoIntegerSolution("target is in the rational image but not the integral one")
    best_u, best = tuple(seed), l1_norm(seed)
    n = A.cols
    # a node is a tuple of per-coordinate bounds (j, lo, hi); None means open
    heap: list[tuple] = [(Fraction(0), 0, ())]
    counter = 1
    nodes = 0
    root_bound = None
    while heap:
        parent_bound, _, bounds = heapq.heappop(heap)
        if math.ceil(parent_bound) >= best:
            continue
        nodes += 1
        if nodes > node_limit:
            raise NotCertified(f"branch and bound exceeded {node_limit} nodes")
        sol = _bounded_lp(A, v, bounds)
        if sol.status != OPTIMAL:
            continue
        if root_bound is None:
            root_bound = sol.value
        if math.ceil(sol.value) >= best:
            continue
        u = [sol.x[j] - sol.x[n + j] for j in range(n)]
        frac = [(abs(Fraction(x) - math.floor(x) - Fraction(1, 2)), j)
                for j, x in enumerate(u) if not _is_int(x)]
        if not frac:
            best_u, best = tuple(int(x) for x in u), int(sol.value)
            continue
        _, j = min(frac)
        f = math.floor(u[j])
        box = {k: (lo, hi) for k, lo, hi in bounds}
        lo, hi = box.get(j, (None, None))
        for child in ((lo, f), (f + 1, hi)):
            box[j] = child
            heapq.heappush(heap, (sol.value, counter, tuple((k, a, b) for k, (a, b) in box.items())))
            counter += 1
    return ExpansionResult(Fraction(best), best_u, v, INTEGER,
                           {"nodes": nodes, "root_bound": str(root_bound)})


def _nonzero_norm(v):
    nv = l1_norm(v)
    if nv == 0:
        raise ZeroVector("expansion at the zero vector is undefined")
    return nv


def xi_real_at(A: Matrix, v: Sequence) -> Fraction:
    nv = _nonzero_norm(v)
    return Fraction(l1_min_real(L1Problem(A, v)).value) / nv


def xi_int_at(A: Matrix, v: Sequence) -> Fraction:
    nv = _nonzero_norm(v)
    return Fraction(l1_min_int(L1Problem(A, v)).value) / nv


def image_circuits(A: Matrix, guard: int | None = None) -> list[tuple]:
    """Primitive integer vectors of minimal support in the column space of A.

    Up to sign and scaling these are the vertices of the unit l1 ball
    intersected with the image. With B an integer column basis (rank r),
    every such vector is B s where s spans the kernel of r-1 rows of B.
    """
    A = as_matrix(A)
    basis_cols = pivot_columns(A)
    r = len(basis_cols)
    B = A.submatrix(range(A.rows), basis_cols)
    if r == 1:
        return [canonical_sign(primitive(B.col(0)))]
    guards.check("enum", math.comb(A.rows, r - 1), guard, "image vertex enumeration")
    found = set()
    for Z in combinations(range(A.rows), r - 1):
        s = line_through(B.submatrix(Z, range(r)))
        if s is None:
            continue
        w = B.apply(s)
        if any(w):
            found.add(canonical_sign(primitive(w)))
    return sorted(found)


def xi_real_global(A: Matrix, guard: int | None = None) -> ExpansionResult:
    """Sup over nonzero image vectors of the real expansion, attained at a circuit.

    The quotient norm w -> min{||u|| : Au = w} is convex, so its maximum on
    the polytope {w in im A : ||w||_1 <= 1} is attained at a vertex.
    """
    A = as_matrix(A)
    if A.is_zero():
        raise ZeroMap("the zero map has no expansion constant")
    best = None
    circuits = image_circuits(A, guard)
    for w in circuits:
        res = l1_min_real(L1Problem(A, w))
        ratio = Fraction(res.value) / l1_norm(w)
        if best is None or ratio > best[0]:
            best = (ratio, w, res)
    ratio, w, res = best
    return ExpansionResult(_frac(ratio), res.minimizer, w, REAL,
                           {"vertices": len(circuits), "dual": res.certificate["dual"]})


def _image_parametrization(A: Matrix):
    """(P, T): rows P determine image vectors, v = T v_P for v in the image."""
    rows = pivot_columns(A.T)
    cols = pivot_columns(A)
    B = A.submatrix(range(A.rows), cols)
    BP = B.submatrix(rows, range(len(cols)))
    # T = B BP^{-1}, column by column
    inv_cols = [solve_rational(BP, [int(i == k) for i in range(len(rows))])
                for k in range(len(rows))]
    T = [tuple(_frac(sum(B[i, t] * inv_cols[k][t] for t in range(len(cols))))
               for k in range(len(rows))) for i in range(A.rows)]
    return rows, T


def xi_int_probe(A: Matrix, radius: int, guard: int | None = None) -> ExpansionResult:
    """Lower bound for the integer expansion constant: max over lattice points with |v|_inf <= R."""
    A = as_matrix(A)
    if radius < 1:
        raise DomainError("probe radius must be at least 1")
    if A.is_zero():
        raise ZeroMap("the zero map has no expansion constant")
    rows, T = _image_parametrization(A)
    guards.check("enum", (2 * radius + 1) ** len(rows), guard, "lattice probe")
    snf = smith_normal_form(A)
    best = (Fraction(0), None, None)
    count = 0
    for vp in product(range(-radius, radius + 1), repeat=len(rows)):
        if canonical_sign(vp) != vp or not any(vp):
            continue
        v = tuple(_frac(sum(t * x for t, x in zip(Ti, vp))) for Ti in T)
        if not all(isinstance(x, int) and abs(x) <= radius for x in v):
            continue
        if integer_solution(A, v, snf) is None:
            continue
        count += 1
        res = l1_min_int(L1Problem(A, v))
        ratio = Fraction(res.value) / l1_norm(v)
        if ratio > best[0]:
            best = (ratio, v, res.minimizer)
    return ExpansionResult(_frac(best[0]), best[2], best[1], INTEGER,
                           {"kind": "lower_bound", "radius": radius, "points": count})


def xi_int_global(A: Matrix, predecessor: Matrix | None = None,
                  guard: int | None = None) -> ExpansionResult:
    """Integer expansion constant, only where it provably equals the real one.

    Certified cases: A totally unimodular, or ``predecessor`` totally
    unimodular with image equal to the kernel of A.
    """
    from .tu import tu_report

    A = as_matrix(A)
    if tu_report(A, guard).is_tu:
        reason = "totally unimodular"
    elif predecessor is not None:
        P = as_matrix(predecessor)
        if not is_exact(P, A):
            raise NotCertified("predecessor is not exact at this map")
        if not tu_report(P, guard).is_tu:
            raise NotCertified("predecessor is not totally unimodular")
        reason = "exact after a totally unimodular map"
    else:
        raise NotCertified("integer expansion is only certified for TU or TU-exact maps; "
                           "use the probe for a lower bound")
    res = xi_real_global(A, guard)
    cert = dict(res.certificate, equality=reason)
    return ExpansionResult(res.value, res.minimizer, res.witness, INTEGER, cert)


# ---------------------------------------------------------------- rounding

def tu_round(A: Matrix, v: Sequence[int], u0: Sequence) -> tuple[int, ...]:
    """Integral point of the optimal face inside the orthant of ``u0``.

    Solves min ||u|| over {A u = v, sign(u_i) in {0, sign(u0_i)}}; a basic
    optimal solution is a vertex of that face, integral when A is TU.
    """
    A = as_matrix(A)
    if A.apply(u0) != tuple(v):
        raise ValueError("u0 does not solve A u = v")
    support = [j for j, x in enumerate(u0) if x]
    sigma = [1 if u0[j] > 0 else -1 for j in support]
    if not support:
        return tuple(0 for _ in range(A.cols))
    sub = A.submatrix(range(A.rows), support).scale_columns(sigma)
    sol = solve_standard([1] * len(support), sub.tolist(), list(v))
    if sol.status != OPTIMAL:  # cannot happen: u0 is feasible
        raise Infeasible("orthant problem infeasible")
    if not all(_is_int(x) for x in sol.x):
        raise NotTU("optimal face vertex is fractional; the matrix is not totally unimodular")
    u1 = [0] * A.cols
    for j, s, x in zip(support, sigma, sol.x):
        u1[j] = s * int(x)
    if l1_norm(u1) < l1_norm(u0):
        raise ValueError("u0 is not an l1-optimal solution")
    return tuple(u1)


def is_exact(A: Matrix, B: Matrix) -> bool:
    """im A = ker B over the reals: B A = 0 and rank A + rank B = #rows of A."""
    A, B = as_matrix(A), as_matrix(B)
    if B.cols != A.rows:
        return False
    if not (B @ A).is_zero():
        return False
    return rank(A) + rank(B) == A.rows


def exact_round(A: Matrix, B: Matrix, w: Sequence[int], v0: Sequence,
                v1: Sequence[int], tu_guard: int | None = None) -> tuple[int, ...]:
    """Integer v2 with B v2 = w and ||v2|| = ||v0||, for exact A -> B with A TU.

    Works over u in the column space of a column basis of A: minimize
    ||A u + v1|| over the closed orthant of v0; a basic optimum is integral.
    """
    from .tu import is_totally_unimodular

    A, B = as_matrix(A), as_matrix(B)
    w, v0, v1 = tuple(w), tuple(v0), tuple(v1)
    if B.apply(v0) != w or B.apply(v1) != w:
        raise ValueError("v0 and v1 must both solve B v = w")
    if not all(_is_int(x) for x in v1):
        raise ValueError("v1 must be integral")
    if not is_exact(A, B):
        raise NotExact("image of A differs from kernel of B")
    rep = is_totally_unimodular(A, tu_guard)
    if not rep.is_tu:
        raise NotTU(f"A has a minor {rep.witness[2]} outside {{-1, 0, 1}}")
    m = A.rows
    cols = pivot_columns(A)
    AS = A.submatrix(range(m), cols)
    k = len(cols)
    support = [i for i in range(m) if v0[i]]
    sigma = {i: (1 if v0[i] > 0 else -1) for i in support}
    slack_of = {i: s for s, i in enumerate(support)}
    nvar = 2 * k + len(support)
    rows, rhs = [], []
    for i in range(m):
        s = sigma.get(i, 1)
        row = [s * AS[i, j] for j in range(k)] + [-s * AS[i, j] for j in range(k)] + [0] * len(support)
        if i in slack_of:
            row[2 * k + slack_of[i]] = -1
        rows.append(row)
        rhs.append(-s * v1[i])
    cost = [0] * nvar
    for i in support:
        for j in range(k):
            cost[j] += sigma[i] * AS[i, j]
            cost[k + j] -= sigma[i] * AS[i, j]
    sol = solve_standard(cost, rows, rhs)
    if sol.status != OPTIMAL:
        raise Infeasible("face problem has no optimum")
    u1 = [sol.x[j] - sol.x[k + j] for j in range(k)]
    if not all(_is_int(x) for x in u1):
        raise NotTU("optimal face vertex is fractional")
    Au = AS.apply([int(x) for x in u1])
    v2 = tuple(int(a + b) for a, b in zip(Au, v1))
    if l1_norm(v2) < l1_norm(v0):
        raise ValueError("v0 is not an l1-optimal solution of B v = w")
    return v2


# ---------------------------------------------------------------- constants

def waist_constant(C) -> Fraction:
    """1 / (1 + 3C + 12C^2)."""
    C = Fraction(C)
    if C < 0:
        raise NegativeInput("the isoperimetric constant must be nonnegative")
    return 1 / (1 + 3 * C + 12 * C * C)


def combine_constants(xi, D, E, m: int) -> Fraction:
    """(xi * D^(2m) + E) * E: cellular expansion turned into an isoperimetric constant."""
    xi, D, E = Fraction(xi), Fraction(D), Fraction(E)
    if D < 1:
        raise DomainError("the bilipschitz constant D must be >= 1")
    if E <= 0:
        raise DomainError("the deformation constant E must be > 0")
    if xi < 0:
        raise DomainError("expansion constants are nonnegative")
    if m < 0:
        raise DomainError("dimension must be nonnegative")
    return (xi * D ** (2 * m) + E) * E
