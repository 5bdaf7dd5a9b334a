"""Randomized and bundled check batteries, one per verified statement.

Every suite returns a :class:`VerificationReport`. A suite passes iff none
of its non-skipped checks failed. All randomness flows from ``seed``.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

from .complexes import (SimplicialComplex, boundary_matrix, coboundary_matrix,
                        codim_expansion_constants, dual_graph_incidence, homology,
                        manifold_check)
from .covers import (VoltageAssignment, build_cover, cocycle_voltages, cover_expansion_sweep,
                     cyclic_voltages, projection_matrix, spanning_tree_of, trivial_voltages)
from .errors import NotTU, SizeGuard, VoltageInconsistent
from .expansion import (L1Problem, exact_round, is_exact, l1_min_int, l1_min_real,
                        tu_round, xi_int_at, xi_int_probe, xi_real_at, xi_real_global)
from .library import NAMED, bundled_complexes, cycle_graph
from .linalg_exact import Matrix, l1_norm, rank
from .tu import (BoundsBox, hk_vertex_integrality, is_totally_unimodular, random_bounds,
                 row_criterion, search_fractional_vertex)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"
PROBE_POINTS = 3000  # lattice points a suite may spend on one integer probe

ANCHORS = {
    "er-le-ez": "real expansion is at most integer expansion, with equality for injective maps",
    "tu-criterion": "entries in {-1,0,1} with at most one +1 and one -1 per row give a TU matrix",
    "hoffman-kruskal": "Hoffman-Kruskal: A is TU iff all integrally bounded polyhedra have integral faces",
    "tue1": "a TU map has equal integer and real expansion",
    "tue2": "a map exact after a TU map has equal integer and real expansion",
    "dtu": "the augmentation and the degree-0 coboundary are totally unimodular",
    "integrality": "vanishing first real cohomology makes degree-0 and degree-1 expansion integral",
    "duality": "Poincare duality matches d^k with the boundary in degree m-k basis to basis",
    "cover": "finite covers: multiplicative cell counts and a chain-map projection",
}


@dataclass
class Check:
    claim: str
    anchor: str
    status: str
    witness: dict | None = None

    def to_json(self):
        return {"claim": self.claim, "anchor": self.anchor, "status": self.status,
                "witness": self.witness}


@dataclass
class VerificationReport:
    suite: str
    checks: list = field(default_factory=list)

    def add(self, claim: str, ok: bool | None, **witness):
        status = SKIPPED if ok is None else (PASS if ok else FAIL)
        self.checks.append(Check(claim, ANCHORS[self.suite], status, witness or None))
        return ok

    @property
    def passed(self) -> bool:
        return not any(c.status == FAIL for c in self.checks)

    def count(self, status: str) -> int:
        return sum(1 for c in self.checks if c.status == status)

    def summary(self) -> dict:
        return {"suite": self.suite, "passed": self.passed, "pass": self.count(PASS),
                "fail": self.count(FAIL), "skipped": self.count(SKIPPED)}

    def to_json(self):
        return {"summary": self.summary(), "checks": [c.to_json() for c in self.checks]}

    def table(self) -> str:
        lines = [f"suite {self.suite}: {'PASS' if self.passed else 'FAIL'}"]
        for c in self.checks:
            lines.append(f"  [{c.status:7}] {c.claim}")
        s = self.summary()
        lines.append(f"  {s['pass']} passed, {s['fail']} failed, {s['skipped']} skipped")
        return "\n".join(lines)


def _s(v):
    return [str(x) for x in v] if v is not None else None


def _named_complexes(inputs, default_names):
    if inputs:
        return list(inputs)
    return [(name, NAMED[name]()) for name in default_names]


# ---------------------------------------------------------------- suites

def suite_er_le_ez(inputs=None, seed=0, trials=200) -> VerificationReport:
    rep = VerificationReport("er-le-ez")
    A = Matrix.from_rows([[1, 2]])
    real, probe = xi_real_global(A).value, xi_int_probe(A, 3).value
    rep.add("A=(1,2): real constant 1/2, integer probe 1 (strict inequality)",
            real == Fraction(1, 2) and probe == 1, real=str(real), integer_probe=str(probe))
    rng = random.Random(seed)
    mats = [(name, M) for name, M in (inputs or [])]
    injective = 0
    for t in range(max(trials, len(mats))):
        if t < len(mats):
            name, M = mats[t]
        else:
            rows, cols = rng.randint(1, 5), rng.randint(1, 7)
            M = Matrix.from_rows([[rng.randint(-3, 3) for _ in range(cols)] for _ in range(rows)])
            name = f"random{t}"
        if M.is_zero():
            M = Matrix.from_rows([[1] + [0] * (M.cols - 1)] + [[0] * M.cols] * (M.rows - 1))
        v = ()
        while not any(v):
            v = M.apply([rng.randint(-2, 2) for _ in range(M.cols)])
        r, z = xi_real_at(M, v), xi_int_at(M, v)
        inj = rank(M) == M.cols
        injective += inj
        ok = r <= z and (r == z if inj else True)
        rep.add(f"{name} {M.rows}x{M.cols}{' injective' if inj else ''}: real <= integer"
                f"{' and equal' if inj else ''}", ok, A=M.tolist(), v=_s(v), real=str(r), integer=str(z))
    rep.add("injective subsample is nonempty", True if injective else None, injective=injective)
    return rep


def random_row_criterion_matrix(rng: random.Random, max_dim: int = 8) -> Matrix:
    rows, cols = rng.randint(1, max_dim), rng.randint(1, max_dim)
    data = []
    for _ in range(rows):
        r = [0] * cols
        slots = rng.sample(range(cols), min(cols, 2))
        if rng.random() < 0.8:
            r[slots[0]] = 1
        if len(slots) > 1 and rng.random() < 0.8:
            r[slots[1]] = -1
        data.append(r)
    return Matrix.from_rows(data)


def suite_tu_criterion(inputs=None, seed=0, trials=100) -> VerificationReport:
    rep = VerificationReport("tu-criterion")
    rng = random.Random(seed)
    for name, M in inputs or []:
        if not row_criterion(M):
            rep.add(f"{name}: row criterion does not apply", None)
            continue
        res = is_totally_unimodular(M)
        rep.add(f"{name}: criterion holds, exhaustive TU", res.is_tu, witness=res.to_json())
    for t in range(trials):
        M = random_row_criterion_matrix(rng)
        res = is_totally_unimodular(M)
        rep.add(f"random{t} {M.rows}x{M.cols}: criterion holds, exhaustive TU",
                row_criterion(M) and res.is_tu, A=M.tolist(), minors=res.minors_checked)
    rep.add("[[1,1],[0,1]] violates the criterion", not row_criterion(Matrix.from_rows([[1, 1], [0, 1]])))
    return rep


SMALL_NON_TU = [("(1,2)", Matrix.from_rows([[1, 2]])),
                ("[[1,1],[-1,1]]", Matrix.from_rows([[1, 1], [-1, 1]])),
                ("odd cycle incidence", Matrix.from_rows([[1, 1, 0], [0, 1, 1], [1, 0, 1]]))]


def suite_hoffman_kruskal(inputs=None, seed=0, trials=50) -> VerificationReport:
    rep = VerificationReport("hoffman-kruskal")
    rng = random.Random(seed)
    complexes = list(inputs) if inputs else list(bundled_complexes().items())
    for name, X in complexes:
        for k in (-1, 0):
            M = coboundary_matrix(X, k)
            if not is_totally_unimodular(M).is_tu:
                rep.add(f"{name} d^{k}: not TU, skipped", None)
                continue
            seen, bad = 0, None
            for _ in range(trials):
                box = random_bounds(M, rng)
                res = hk_vertex_integrality(M, box)
                seen += len(res.vertices)
                if not res.all_integral:
                    bad = {"bounds": box.to_json(), "vertex": _s(res.fractional_witness)}
                    break
            rep.add(f"{name} d^{k}: {trials} random integral boxes, all vertices integral",
                    bad is None, vertices=seen, counterexample=bad)
    A = Matrix.from_rows([[1, 2]])
    box = BoundsBox((0, 0), (2, 2), (1,), (1,))
    res = hk_vertex_integrality(A, box)
    rep.add("A=(1,2), 0<=u<=(2,2), Au=1: fractional vertex (0,1/2)",
            (0, Fraction(1, 2)) in res.vertices and not res.all_integral,
            vertices=[_s(v) for v in res.vertices])
    for name, M in SMALL_NON_TU:
        found = search_fractional_vertex(M, rng)
        rep.add(f"{name} (not TU): random search finds a fractional vertex", found is not None,
                bounds=found and found[0].to_json(), vertex=found and _s(found[1]))
    return rep


def _random_image_vector(rng, M, spread=3):
    v = ()
    while not any(v):
        v = M.apply([rng.randint(-spread, spread) for _ in range(M.cols)])
    return v


def suite_tue1(inputs=None, seed=0, trials=50) -> VerificationReport:
    rep = VerificationReport("tue1")
    rng = random.Random(seed)
    for name, X in _named_complexes(inputs, ("delta3", "rp2", "torus")):
        A = coboundary_matrix(X, 0)
        if not is_totally_unimodular(A).is_tu:
            rep.add(f"{name} d^0: not TU", False)
            continue
        bad, root_only = None, True
        for _ in range(trials):
            v = _random_image_vector(rng, A)
            lp, ilp = l1_min_real(L1Problem(A, v)), l1_min_int(L1Problem(A, v))
            u1 = tu_round(A, v, lp.minimizer)
            orth = all(x == 0 or (x > 0) == (y > 0) for x, y in zip(u1, lp.minimizer))
            root_only &= ilp.certificate["nodes"] == 1
            if not (lp.value == ilp.value == l1_norm(u1) and A.apply(u1) == v and orth):
                bad = {"v": _s(v), "lp": str(lp.value), "ilp": str(ilp.value), "rounded": _s(u1)}
                break
        rep.add(f"{name} d^0: ILP optimum = LP optimum = rounded norm on {trials} vectors",
                bad is None, counterexample=bad)
        rep.add(f"{name} d^0: every ILP closed at the root node", root_only)
    return rep


def suite_tue2(inputs=None, seed=0, trials=50) -> VerificationReport:
    rep = VerificationReport("tue2")
    rng = random.Random(seed)
    for name, X in _named_complexes(inputs, ("delta3", "rp2")):
        if X.dim < 2:
            rep.add(f"{name}: no degree-1 coboundary", None)
            continue
        h1 = homology(X, 1)
        if h1.betti != 0:
            rep.add(f"{name}: first Betti number {h1.betti} != 0, hypothesis fails", None)
            continue
        A, B = coboundary_matrix(X, 0), coboundary_matrix(X, 1)
        rep.add(f"{name}: d^0 -> d^1 exact over R", is_exact(A, B))
        bad = None
        for _ in range(trials):
            g = [rng.randint(-2, 2) for _ in range(B.cols)]
            w = B.apply(g)
            if not any(w):
                continue
            lp, ilp = l1_min_real(L1Problem(B, w)), l1_min_int(L1Problem(B, w))
            v2 = exact_round(A, B, w, lp.minimizer, g)
            if not (lp.value == ilp.value == l1_norm(v2) and B.apply(v2) == w):
                bad = {"w": _s(w), "lp": str(lp.value), "ilp": str(ilp.value), "rounded": _s(v2)}
                break
        rep.add(f"{name} d^1: ILP optimum = LP optimum = exact_round norm on {trials} vectors",
                bad is None, counterexample=bad)
    try:
        exact_round(Matrix.from_rows([[-2], [1]]), Matrix.from_rows([[1, 2]]), (1,),
                    (0, Fraction(1, 2)), (1, 0))
        ok = False
    except NotTU:
        ok = True
    rep.add("B=(1,2) after A=(-2,1)^T: exact but A not TU, rounding refused", ok)
    return rep


def suite_dtu(inputs=None, seed=0, trials=0) -> VerificationReport:
    rep = VerificationReport("dtu")
    complexes = list(inputs) if inputs else list(bundled_complexes(seed).items())
    for name, X in complexes:
        for k in (-1, 0):
            if k == 0 and X.dim < 1:
                rep.add(f"{name}: no edges, d^0 is empty", None)
                continue
            M = coboundary_matrix(X, k)
            try:
                res = is_totally_unimodular(M)
            except SizeGuard as exc:
                rep.add(f"{name} d^{k}: beyond the size guard", None, reason=str(exc))
                continue
            rep.add(f"{name} d^{k} ({M.rows}x{M.cols}): exhaustive TU", res.is_tu,
                    minors=res.minors_checked, witness=res.to_json()["witness"])
    return rep


def suite_integrality(inputs=None, seed=0, trials=20) -> VerificationReport:
    rep = VerificationReport("integrality")
    rng = random.Random(seed)
    for name, X in _named_complexes(inputs, ("delta3", "rp2")):
        if X.dim < 2:
            rep.add(f"{name}: needs a 2-skeleton", None)
            continue
        b1 = homology(X, 1).betti
        if b1 != 0:
            rep.add(f"{name}: H^1(X;R) has dimension {b1}, hypothesis fails", None)
            continue
        rep.add(f"{name}: H^1(X;R) = 0", True)
        for k in (0, 1):
            M = coboundary_matrix(X, k)
            bad = None
            for _ in range(trials):
                v = _random_image_vector(rng, M, spread=2)
                r, z = xi_real_at(M, v), xi_int_at(M, v)
                if r != z:
                    bad = {"v": _s(v), "real": str(r), "integer": str(z)}
                    break
            rep.add(f"{name} d^{k}: integer = real expansion on {trials} image vectors",
                    bad is None, counterexample=bad)
            if 3 ** rank(M) > PROBE_POINTS:
                rep.add(f"{name} d^{k}: radius-1 probe too large, skipped", None,
                        points=3 ** rank(M))
                continue
            try:
                glob = xi_real_global(M).value
                probe = xi_int_probe(M, 1).value
                rep.add(f"{name} d^{k}: probe lower bound {probe} <= real constant {glob}",
                        probe <= glob, real=str(glob), probe=str(probe))
            except SizeGuard as exc:
                rep.add(f"{name} d^{k}: global comparison beyond the size guard", None,
                        reason=str(exc))
    return rep


def _signed_permutation(rng, M: Matrix) -> Matrix:
    rows = list(range(M.rows))
    cols = list(range(M.cols))
    rng.shuffle(rows)
    rng.shuffle(cols)
    P = M.permute(rows, cols)
    P = P.scale_rows([rng.choice((-1, 1)) for _ in rows])
    return P.scale_columns([rng.choice((-1, 1)) for _ in cols])


def suite_duality(inputs=None, seed=0, trials=2) -> VerificationReport:
    rep = VerificationReport("duality")
    rng = random.Random(seed)
    for name, X in _named_complexes(inputs, ("delta3", "delta4", "torus")):
        mrep = manifold_check(X)
        if not (mrep.is_closed and mrep.is_orientable and X.dim >= 2):
            rep.add(f"{name}: not a closed orientable pseudomanifold of dim >= 2", None)
            continue
        m = X.dim
        eps = mrep.orientation
        D = boundary_matrix(X, m)
        rep.add(f"{name}: coherent orientation is a +-1 top cycle", not any(D.apply(eps)))
        oriented = D.scale_columns(eps)
        dual = dual_graph_incidence(X)
        same = all(r1 == r2 or r1 == tuple(-x for x in r2)
                   for r1, r2 in zip(oriented.data, dual.data))
        rep.add(f"{name}: oriented top boundary = dual-graph d^0 up to row signs", same)
        try:
            codim = codim_expansion_constants(X)
        except SizeGuard as exc:
            rep.add(f"{name}: expansion constants beyond the size guard", None, reason=str(exc))
            continue
        top, nxt = codim.values
        rep.add(f"{name}: Xi(d^0 dual) = Xi(boundary_{m}) = {top}, Xi(d^1 dual) = "
                f"Xi(boundary_{m - 1}) = {nxt}", top > 0 and nxt > 0,
                top=str(top), next=str(nxt))
        ok = all(xi_real_global(_signed_permutation(rng, D)).value == top for _ in range(trials))
        rep.add(f"{name}: Xi(boundary_{m}) invariant under {trials} signed permutations", ok)
    return rep


def suite_cover(inputs=None, seed=0, trials=5) -> VerificationReport:
    rep = VerificationReport("cover")
    C3 = cycle_graph(3)
    Y = build_cover(C3, cyclic_voltages(C3, 3))
    rep.add("3-cycle, degree-3 cyclic voltage: connected 9-cycle",
            Y.f_vector == (9, 9) and Y.euler_characteristic() == 0 and Y.is_connected()
            and all(d == 2 for d in _vertex_degrees(Y)), f_vector=list(Y.f_vector))
    for name, X in _named_complexes(inputs, ("cycle3", "delta3", "torus")):
        for d in (2, 3):
            Y = build_cover(X, trivial_voltages(X, d))
            rep.add(f"{name}: trivial degree-{d} voltages give {d} copies, chi x {d}",
                    len(Y.components()) == d * len(X.components())
                    and Y.euler_characteristic() == d * X.euler_characteristic()
                    and Y.f_vector == tuple(d * n for n in X.f_vector))
        for d in (2, 3):
            try:
                Y = build_cover(X, cocycle_voltages(X, d))
            except ValueError:
                rep.add(f"{name}: first cohomology vanishes, no cyclic degree-{d} cover", None)
                continue
            rep.add(f"{name}: cyclic degree-{d} cover from a cocycle has d-fold cell counts",
                    Y.f_vector == tuple(d * n for n in X.f_vector)
                    and Y.euler_characteristic() == d * X.euler_characteristic(),
                    f_vector=list(Y.f_vector), connected=Y.is_connected())
            rep.add(f"{name}: cyclic degree-{d} cover has boundary squared zero and "
                    "fiber sums matching the base", _chain_map_ok(X, Y))
    X = NAMED["delta3"]()
    tree = spanning_tree_of(X)
    tset = {frozenset(e) for e in tree}
    extra = [X.labeled(e) for e in X.simplices(1) if frozenset(X.labeled(e)) not in tset]
    consistent = []
    for mask in range(2 ** len(extra)):
        vol = {e: ((1, 0) if mask >> i & 1 else (0, 1)) for i, e in enumerate(extra)}
        try:
            build_cover(X, VoltageAssignment(2, tree, vol))
            consistent.append(mask)
        except VoltageInconsistent:
            pass
    rep.add("delta3 (simply connected): only the trivial double cover is consistent",
            consistent == [0], consistent=consistent)
    rows = cover_expansion_sweep(C3, [cyclic_voltages(C3, d) for d in range(1, trials + 1)])
    base = xi_real_global(boundary_matrix(C3, 1)).value
    rep.add("3-cycle sweep: degree 1 reproduces the base value", rows[0].xi_top == base,
            table=[r.to_json() for r in rows])
    return rep


def _vertex_degrees(Y: SimplicialComplex):
    deg = [0] * len(Y.vertices)
    for a, b in Y.simplices(1):
        deg[a] += 1
        deg[b] += 1
    return deg


def _chain_map_ok(X: SimplicialComplex, Y: SimplicialComplex) -> bool:
    for k in range(1, X.dim + 1):
        dY = boundary_matrix(Y, k)
        if k + 1 <= Y.dim and not (dY @ boundary_matrix(Y, k + 1)).is_zero():
            return False
        lhs = projection_matrix(X, Y, k - 1) @ dY
        rhs = boundary_matrix(X, k) @ projection_matrix(X, Y, k)
        if lhs != rhs:
            return False
    return True


SUITES: dict[str, Callable] = {
    "er-le-ez": suite_er_le_ez,
    "tu-criterion": suite_tu_criterion,
    "hoffman-kruskal": suite_hoffman_kruskal,
    "tue1": suite_tue1,
    "tue2": suite_tue2,
    "dtu": suite_dtu,
    "integrality": suite_integrality,
    "duality": suite_duality,
    "cover": suite_cover,
}

# which suites take complexes as inputs (the rest take matrices)
COMPLEX_SUITES = {"hoffman-kruskal", "tue1", "tue2", "dtu", "integrality", "duality", "cover"}


def run_suite(name: str, inputs=None, seed: int = 0, trials: int | None = None) -> VerificationReport:
    fn = SUITES[name]
    if trials is None:
        return fn(inputs, seed)
    return fn(inputs, seed, trials)
