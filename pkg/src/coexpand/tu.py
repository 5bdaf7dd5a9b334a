"""Total unimodularity and integrality of box/row-bounded polyhedra."""

from __future__ import annotations

import math
import random
from dataclasses import dataclass
from fractions import Fraction

from . import guards
from .errors import FormatError, Unbounded
from .linalg_exact import Matrix, as_matrix

INF = math.inf


@dataclass(frozen=True)
class TUReport:
    is_tu: bool
    witness: tuple | None = None  # (rows, cols, det) of a violating minor
    method: str = "exhaustive"
    minors_checked: int = 0

    def to_json(self):
        w = None
        if self.witness is not None:
            rows, cols, d = self.witness
            w = {"rows": list(rows), "cols": list(cols), "det": d}
        return {"is_tu": self.is_tu, "method": self.method, "witness": w,
                "minors_checked": self.minors_checked}


def _bits(mask):
    out, i = [], 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return tuple(out)


def is_totally_unimodular(M: Matrix, guard: int | None = None) -> TUReport:
    """Exhaustive minor test, smallest minors first.

    Minors of order k are assembled from those of order k-1 by Laplace
    expansion along the last selected row; only nonzero minors are stored,
    and each stored value contributes once per nonzero entry of a later row.
    The first order containing a minor outside {-1, 0, 1} stops the search,
    so the witness is a violating minor of least order and every smaller
    minor inside it is already known to be fine.

    The guard caps the order of minors; a violation below the cap is still
    reported, only a TU verdict beyond it raises :class:`SizeGuard`.
    """
    M = as_matrix(M)
    if not M.is_integral():
        raise FormatError("total unimodularity is defined for integer matrices")
    cap = guards.limit("tu", guard)
    row_nz = [[(j, x) for j, x in enumerate(r) if x] for r in M.data]
    level: dict[tuple[int, int, int], int] = {}  # (row mask, col mask, last row) -> det
    checked = 0
    for i, nz in enumerate(row_nz):
        for j, x in nz:
            checked += 1
            if abs(x) > 1:
                return TUReport(False, ((i,), (j,), x), "exhaustive", checked)
            level[(1 << i, 1 << j, i)] = x
    for k in range(2, min(M.rows, M.cols) + 1):
        if k > cap:
            # every minor of order <= cap is fine; certifying TU needs more
            guards.check("tu", k, guard, f"exhaustive minor enumeration of order {k}")
        nxt: dict[tuple[int, int], int] = {}
        for (rmask, cmask, last), d in level.items():
            for r in range(last + 1, M.rows):
                for c, a in row_nz[r]:
                    bit = 1 << c
                    if cmask & bit:
                        continue
                    pos = bin(cmask & (bit - 1)).count("1")
                    term = a * d if (k - 1 + pos) % 2 == 0 else -a * d
                    key = (rmask | (1 << r), cmask | bit, r)
                    nxt[key] = nxt.get(key, 0) + term
        checked += len(nxt)
        level = {}
        for key, d in nxt.items():
            if d == 0:
                continue
            if abs(d) > 1:
                return TUReport(False, (_bits(key[0]), _bits(key[1]), d), "exhaustive", checked)
            level[key] = d
        if not level:
            break
    return TUReport(True, None, "exhaustive", checked)


def row_criterion(M: Matrix) -> bool:
    """Entries in {-1,0,1}, and at most one +1 and one -1 in every row."""
    M = as_matrix(M)
    for r in M.data:
        if any(x not in (-1, 0, 1) for x in r):
            return False
        if r.count(1) > 1 or r.count(-1) > 1:
            return False
    return True


def tu_report(M: Matrix, guard: int | None = None) -> TUReport:
    """Cheap sufficient criterion first, exhaustive enumeration otherwise."""
    if row_criterion(M):
        return TUReport(True, None, "row_criterion")
    return is_totally_unimodular(M, guard)


# ---------------------------------------------------------------- polyhedra

def _bound(x, what):
    if x in (INF, -INF):
        return x
    if isinstance(x, bool) or not isinstance(x, int):
        if isinstance(x, float) and x.is_integer():
            return int(x)
        raise FormatError(f"{what} must be an integer or +-inf, got {x!r}")
    return x


@dataclass(frozen=True)
class BoundsBox:
    """b <= u <= b' and c <= M u <= c' with entries in Z or +-inf."""

    lower: tuple
    upper: tuple
    row_lower: tuple
    row_upper: tuple

    def __post_init__(self):
        for name in ("lower", "upper", "row_lower", "row_upper"):
            object.__setattr__(self, name, tuple(_bound(x, name) for x in getattr(self, name)))
        if len(self.lower) != len(self.upper) or len(self.row_lower) != len(self.row_upper):
            raise FormatError("bound vectors of unequal length")
        for lo, hi in zip(self.lower + self.row_lower, self.upper + self.row_upper):
            if lo > hi:
                raise FormatError("lower bound exceeds upper bound")

    def to_json(self):
        enc = lambda v: [x if isinstance(x, int) else ("inf" if x > 0 else "-inf") for x in v]
        return {"lower": enc(self.lower), "upper": enc(self.upper),
                "row_lower": enc(self.row_lower), "row_upper": enc(self.row_upper)}


@dataclass(frozen=True)
class HKReport:
    vertices: tuple
    all_integral: bool
    fractional_witness: tuple | None

    def to_json(self):
        enc = lambda v: [str(x) for x in v]
        return {"vertices": [enc(v) for v in self.vertices], "all_integral": self.all_integral,
                "fractional_witness": None if self.fractional_witness is None
                else enc(self.fractional_witness)}


def _halfspaces(M: Matrix, box: BoundsBox):
    """Row constraints as (a, beta) meaning a·u <= beta; infinite bounds dropped."""
    out = []
    for i, r in enumerate(M.data):
        if box.row_upper[i] != INF:
            out.append((r, box.row_upper[i]))
        if box.row_lower[i] != -INF:
            out.append((tuple(-x for x in r), -box.row_lower[i]))
    return out


def polytope_vertices(M: Matrix, box: BoundsBox, guard: int | None = None) -> list[tuple]:
    """Vertices of {b <= u <= b', c <= M u <= c'} by double description.

    Starts from the vertices of the box and cuts with one row half-space at
    a time. Each vertex carries the bitmask of its tight constraints; two
    vertices span an edge iff no third vertex is tight on all constraints
    they share.
    """
    M = as_matrix(M)
    n = M.cols
    if len(box.lower) != n or len(box.row_lower) != M.rows:
        raise FormatError("bounds do not match the matrix shape")
    if any(x in (INF, -INF) for x in box.lower + box.upper):
        raise Unbounded("variable bounds must be finite (pointed, bounded polyhedron)")
    guards.check("enum", 2 ** n, guard, "box vertex enumeration")

    verts: dict[tuple, int] = {}
    for mask in range(2 ** n):
        p = tuple(box.upper[i] if mask >> i & 1 else box.lower[i] for i in range(n))
        verts[p] = 0
    for p in list(verts):
        tight = 0
        for i in range(n):
            if p[i] == box.upper[i]:
                tight |= 1 << (2 * i)
            if p[i] == box.lower[i]:
                tight |= 1 << (2 * i + 1)
        verts[p] = tight

    for h, (a, beta) in enumerate(_halfspaces(M, box), start=2 * n):
        slack = {p: beta - sum(x * y for x, y in zip(a, p) if x) for p in verts}
        plus = [p for p in verts if slack[p] > 0]
        minus = [p for p in verts if slack[p] < 0]
        if not minus:
            for p in verts:
                if slack[p] == 0:
                    verts[p] |= 1 << h
            continue
        if not plus and not any(slack[p] == 0 for p in verts):
            return []
        masks = list(verts.values())
        new: dict[tuple, int] = {}
        for p in plus:
            mp = verts[p]
            for q in minus:
                common = mp & verts[q]
                if bin(common).count("1") < n - 1:
                    continue
                if sum(1 for m in masks if m & common == common) > 2:
                    continue
                t = Fraction(slack[p], slack[p] - slack[q])
                point = tuple(_frac_norm(x + t * (y - x)) for x, y in zip(p, q))
                new[point] = new.get(point, 0) | common | (1 << h)
        kept = {p: m | (1 << h if slack[p] == 0 else 0) for p, m in verts.items() if slack[p] >= 0}
        for p, m in new.items():
            kept[p] = kept.get(p, 0) | m
        verts = kept
        if not verts:
            return []
    return sorted(verts)


def _frac_norm(x):
    x = Fraction(x)
    return x.numerator if x.denominator == 1 else x


def hk_vertex_integrality(M: Matrix, bounds: BoundsBox, guard: int | None = None) -> HKReport:
    verts = polytope_vertices(M, bounds, guard)
    frac = next((v for v in verts if not all(isinstance(x, int) for x in v)), None)
    return HKReport(tuple(verts), frac is None, frac)


def random_bounds(M: Matrix, rng: random.Random, width: int = 3, spread: int = 2,
                  p_inf: float = 0.3, slack: int = 2) -> BoundsBox:
    """Random integral bounds around a random integer point, so the polyhedron is nonempty.

    Each row bound is dropped (set to +-inf) with probability ``p_inf``.
    """
    M = as_matrix(M)
    lower = [rng.randint(-spread, spread) for _ in range(M.cols)]
    upper = [lo + rng.randint(0, width) for lo in lower]
    z = [rng.randint(lo, hi) for lo, hi in zip(lower, upper)]
    rlo, rhi = [], []
    for val in M.apply(z):
        rlo.append(-INF if rng.random() < p_inf else val - rng.randint(0, slack))
        rhi.append(INF if rng.random() < p_inf else val + rng.randint(0, slack))
    return BoundsBox(tuple(lower), tuple(upper), tuple(rlo), tuple(rhi))


def search_fractional_vertex(M: Matrix, rng: random.Random, budget: int = 500,
                             guard: int | None = None):
    """Best-effort random search for integral bounds with a fractional vertex.

    Returns (bounds, vertex) or None when the budget runs out.
    """
    M = as_matrix(M)
    for attempt in range(budget):
        box = random_bounds(M, rng, width=1 + attempt % 4, slack=attempt % 3)
        rep = hk_vertex_integrality(M, box, guard)
        if not rep.all_integral:
            return box, rep.fractional_witness
    return None


def hk_check_many(M: Matrix, rng: random.Random, trials: int) -> tuple[int, tuple | None]:
    """Run ``trials`` random boxes; returns (#vertices seen, first failing (box, vertex))."""
    seen = 0
    for _ in range(trials):
        box = random_bounds(M, rng)
        rep = hk_vertex_integrality(M, box)
        seen += len(rep.vertices)
        if not rep.all_integral:
            return seen, (box, rep.fractional_witness)
    return seen, None
