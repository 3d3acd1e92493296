"""Seeded verification suites for the angle, Grassmannian and Chern machinery.

Every suite is a deterministic sequence of independent trials: trial i of a
run with seed s draws from ``numpy.random.default_rng([s, i])``, so single
trials can be replayed in isolation and trial ranges can be sharded across
workers without changing the report.  A suite aggregates a worst margin
(smallest slack for inequality suites, largest observed ratio for the
stability suite, None for exact-arithmetic suites) and captures the first
failing trial as a replayable counterexample blob.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import numpy as np

from . import angles as ang
from . import chern
from . import grassmann as gr
from . import naive
from .exactcx import QComplex

DEFAULT_SEED = 0xDE7C0C1
DEFAULT_TOL = 1e-9

BLOB_SCHEMA = "detloci/counterexample-v1"


@dataclass
class TrialOutcome:
    ok: bool
    margin: float | None = None
    data: dict | None = None


@dataclass
class SuiteReport:
    suite: str
    trials: int
    failures: int
    worst_margin: float | None
    seed: int
    tol: float
    duration_s: float
    first_counterexample: dict | None = None

    def to_json(self, no_timestamp: bool = False) -> dict:
        out = {
            "suite": self.suite,
            "trials": self.trials,
            "failures": self.failures,
            "worst_margin": self.worst_margin,
            "seed": self.seed,
            "tol": self.tol,
            "first_counterexample": self.first_counterexample,
        }
        if not no_timestamp:
            out["duration_s"] = self.duration_s
        return out


@dataclass(frozen=True)
class SuiteDef:
    name: str
    family: str
    trial: Callable[[np.random.Generator, float, int, bool], TrialOutcome]
    default_trials: int
    default_tol: float
    aggregate: str  # "min" or "max"
    description: str


REGISTRY: dict[str, SuiteDef] = {}


def _suite(name, family, default_trials, description, aggregate="min", default_tol=DEFAULT_TOL):
    def wrap(fn):
        REGISTRY[name] = SuiteDef(
            name=name,
            family=family,
            trial=fn,
            default_trials=default_trials,
            default_tol=default_tol,
            aggregate=aggregate,
            description=description,
        )
        return fn

    return wrap


def suites_for(family: str | None = None) -> list[SuiteDef]:
    defs = list(REGISTRY.values())
    if family is not None:
        defs = [d for d in defs if d.family == family]
    return defs


def run_trial(name: str, seed: int, index: int, tol: float, capture: bool = False) -> TrialOutcome:
    spec = REGISTRY[name]
    rng = np.random.default_rng([seed, index])
    return spec.trial(rng, tol, index, capture)


def run_suite(
    name: str,
    trials: int | None = None,
    seed: int = DEFAULT_SEED,
    tol: float | None = None,
    jobs: int = 1,
) -> SuiteReport:
    if name not in REGISTRY:
        raise KeyError(f"unknown suite {name!r}; known: {sorted(REGISTRY)}")
    spec = REGISTRY[name]
    trials = spec.default_trials if trials is None else trials
    tol = spec.default_tol if tol is None else tol
    start = time.perf_counter()
    if jobs > 1:
        chunks = _run_sharded(name, trials, seed, tol, jobs)
    else:
        chunks = [_run_range(name, range(trials), seed, tol)]
    failures = sum(c["failures"] for c in chunks)
    margins = [c["worst_margin"] for c in chunks if c["worst_margin"] is not None]
    if margins:
        worst = min(margins) if spec.aggregate == "min" else max(margins)
    else:
        worst = None
    first = None
    fail_indices = [c["first_failure"] for c in chunks if c["first_failure"] is not None]
    if fail_indices:
        idx = min(fail_indices)
        outcome = run_trial(name, seed, idx, tol, capture=True)
        first = make_blob(name, seed, idx, tol, outcome)
    return SuiteReport(
        suite=name,
        trials=trials,
        failures=failures,
        worst_margin=worst,
        seed=seed,
        tol=tol,
        duration_s=time.perf_counter() - start,
        first_counterexample=first,
    )


def _run_range(name: str, indices, seed: int, tol: float) -> dict:
    spec = REGISTRY[name]
    failures = 0
    worst = None
    first_failure = None
    for i in indices:
        outcome = run_trial(name, seed, i, tol)
        if not outcome.ok:
            failures += 1
            if first_failure is None:
                first_failure = i
        if outcome.margin is not None:
            if worst is None:
                worst = outcome.margin
            elif spec.aggregate == "min":
                worst = min(worst, outcome.margin)
            else:
                worst = max(worst, outcome.margin)
    return {"failures": failures, "worst_margin": worst, "first_failure": first_failure}


def _run_sharded(name: str, trials: int, seed: int, tol: float, jobs: int) -> list[dict]:
    from concurrent.futures import ProcessPoolExecutor

    shards = [range(s, trials, jobs) for s in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        futs = [pool.submit(_run_range, name, shard, seed, tol) for shard in shards]
        return [f.result() for f in futs]


def make_blob(name: str, seed: int, index: int, tol: float, outcome: TrialOutcome) -> dict:
    return {
        "schema": BLOB_SCHEMA,
        "suite": name,
        "seed": seed,
        "trial": index,
        "tol": tol,
        "ok": outcome.ok,
        "margin": outcome.margin,
        "data": outcome.data,
    }


class ReplayError(ValueError):
    """Raised when a counterexample blob cannot be replayed faithfully."""


def replay(blob: dict) -> SuiteReport:
    """Re-run the single trial recorded in a counterexample blob.

    The blob is self-contained (schema, suite, seed, trial index); the trial
    is recomputed and must match the recorded outcome exactly, otherwise the
    blob is rejected as altered or from an incompatible version.
    """
    if not isinstance(blob, dict) or blob.get("schema") != BLOB_SCHEMA:
        raise ReplayError(f"expected schema {BLOB_SCHEMA!r}")
    name = blob["suite"]
    if name not in REGISTRY:
        raise ReplayError(f"unknown suite {name!r}")
    seed, index, tol = int(blob["seed"]), int(blob["trial"]), float(blob["tol"])
    start = time.perf_counter()
    outcome = run_trial(name, seed, index, tol, capture=True)
    recorded = make_blob(name, seed, index, tol, outcome)
    for key in ("ok", "margin", "data"):
        if recorded[key] != blob.get(key):
            raise ReplayError(
                f"trial does not replay identically (field {key!r} differs); "
                "the blob was altered or produced by another version"
            )
    return SuiteReport(
        suite=name,
        trials=1,
        failures=0 if outcome.ok else 1,
        worst_margin=outcome.margin,
        seed=seed,
        tol=tol,
        duration_s=time.perf_counter() - start,
        first_counterexample=None if outcome.ok else recorded,
    )


# ---------------------------------------------------------------------------
# helpers for the randomized angle suites


def _unit_vector(rng: np.random.Generator, n: int) -> np.ndarray:
    while True:
        v = rng.standard_normal(n)
        norm = np.linalg.norm(v)
        if norm > 1e-3:
            return v / norm


def _random_pair(rng, n_lo=2, n_hi=8):
    n = int(rng.integers(n_lo, n_hi + 1))
    a = int(rng.integers(1, n + 1))
    b = int(rng.integers(1, n + 1))
    return n, ang.random_subspace(rng, n, a), ang.random_subspace(rng, n, b)


def _transversal_pair(rng, margin=1e-3, proper=True):
    """Random transversal pair with minimum angle above the margin."""
    while True:
        n = int(rng.integers(2, 9))
        hi = n - 1 if proper else n
        if hi < 1:
            continue
        a = int(rng.integers(1, hi + 1))
        b_lo = max(1, n - a)
        if b_lo > hi:
            continue
        b = int(rng.integers(b_lo, hi + 1))
        u = ang.random_subspace(rng, n, a)
        v = ang.random_subspace(rng, n, b)
        if ang.min_angle_perp(u, v) > margin:
            return n, u, v


def _perturb(rng, space: ang.Subspace, scale: float) -> ang.Subspace:
    g = rng.standard_normal(space.frame.shape)
    return ang.Subspace(space.frame + scale * g)


def _frames(*spaces: ang.Subspace) -> list:
    return [s.frame.tolist() for s in spaces]


# ---------------------------------------------------------------------------
# angle suites


@_suite("vector_triangle", "angles", 10_000, "triangle inequality for vector angles")
def _t_vector_triangle(rng, tol, index, capture):
    n = int(rng.integers(2, 9))
    u, v, w = (_unit_vector(rng, n) for _ in range(3))
    lhs = ang.angle_between_vectors(u, w)
    rhs = ang.angle_between_vectors(u, v) + ang.angle_between_vectors(v, w)
    margin = rhs + tol - lhs
    data = {"u": u.tolist(), "v": v.tolist(), "w": w.tolist()} if capture else None
    return TrialOutcome(margin >= 0, margin, data)


@_suite("sub_add", "angles", 10_000, "triangle inequality for the max angle over subspace triples")
def _t_sub_add(rng, tol, index, capture):
    n = int(rng.integers(2, 9))
    dims = [int(rng.integers(1, n + 1)) for _ in range(3)]
    u, v, w = (ang.random_subspace(rng, n, d) for d in dims)
    margin = ang.max_angle(u, v) + ang.max_angle(v, w) + tol - ang.max_angle(u, w)
    data = {"frames": _frames(u, v, w)} if capture else None
    return TrialOutcome(margin >= 0, margin, data)


@_suite("max_symmetry", "angles", 10_000, "max angle is symmetric for equal dimensions")
def _t_max_symmetry(rng, tol, index, capture):
    n = int(rng.integers(2, 9))
    d = int(rng.integers(1, n + 1))
    u = ang.random_subspace(rng, n, d)
    v = ang.random_subspace(rng, n, d)
    margin = tol - abs(ang.max_angle(u, v) - ang.max_angle(v, u))
    data = {"frames": _frames(u, v)} if capture else None
    return TrialOutcome(margin >= 0, margin, data)


@_suite("angle_perp", "angles", 10_000, "the two minimum-angle computation routes agree")
def _t_angle_perp(rng, tol, index, capture):
    _, u, v = _transversal_pair(rng)
    margin = tol - abs(ang.min_angle(u, v) - ang.min_angle_perp(u, v))
    data = {"frames": _frames(u, v)} if capture else None
    return TrialOutcome(margin >= 0, margin, data)


@_suite("vari_min", "angles", 10_000, "min angle varies by at most the max angle of the moved argument")
def _t_vari_min(rng, tol, index, capture):
    n = int(rng.integers(2, 9))
    dims = [int(rng.integers(1, n)) for _ in range(3)]
    u, v, w = (ang.random_subspace(rng, n, d) for d in dims)
    margin = ang.max_angle(u, w) + ang.min_angle(w, v) + tol - ang.min_angle(u, v)
    data = {"frames": _frames(u, v, w)} if capture else None
    return TrialOutcome(margin >= 0, margin, data)


@_suite("vari_min_cor", "angles", 10_000, "perturbation stability of the min angle with constant 1")
def _t_vari_min_cor(rng, tol, index, capture):
    _, u, v = _transversal_pair(rng)
    u2 = _perturb(rng, u, float(rng.uniform(0.001, 0.05)))
    delta = ang.max_angle(u, u2)
    margin = ang.min_angle(u2, v) + delta + tol - ang.min_angle(u, v)
    data = {"frames": _frames(u, v, u2)} if capture else None
    return TrialOutcome(margin >= 0, margin, data)


GEOMETRIC_EPS = 0.3
GEOMETRIC_GAMMA = 0.01


@_suite(
    "geometric",
    "angles",
    10_000,
    "perturbed transversal pairs stay transversal; intersection moves O(gamma)",
    aggregate="max",
)
def _t_geometric(rng, tol, index, capture):
    # pair with overlapping dimensions, intersection of positive dimension
    while True:
        n = int(rng.integers(4, 9))
        a = int(rng.integers(2, n))
        b_lo = n - a + 1
        if b_lo > n - 1:
            continue
        b = int(rng.integers(b_lo, n))
        u = ang.random_subspace(rng, n, a)
        v = ang.random_subspace(rng, n, b)
        if ang.min_angle(u, v) > GEOMETRIC_EPS:
            break
    scale = 0.002
    while True:
        u2 = _perturb(rng, u, scale)
        v2 = _perturb(rng, v, scale)
        if (
            ang.max_angle(u, u2) < GEOMETRIC_GAMMA
            and ang.max_angle(v, v2) < GEOMETRIC_GAMMA
        ):
            break
        scale *= 0.5
    w = ang.intersect(u, v)
    w2 = ang.intersect(u2, v2)
    data = {"frames": _frames(u, v, u2, v2)} if capture else None
    if w is None or w2 is None or w.dim != w2.dim:
        return TrialOutcome(False, math.inf, data)
    if ang.min_angle(u2, v2) <= 0.0:
        return TrialOutcome(False, math.inf, data)
    ratio = ang.max_angle(w, w2) / GEOMETRIC_GAMMA
    return TrialOutcome(math.isfinite(ratio), ratio, data)


@_suite("bridge", "angles", 10_000, "right-inverse norm of the perpendicular projection bounds the min angle")
def _t_bridge(rng, tol, index, capture):
    _, u, v = _transversal_pair(rng)
    bound = ang.bridge_angle_bound(u, v)
    margin = bound.observed - bound.angle_lower_bound + tol
    data = {"frames": _frames(u, v)} if capture else None
    return TrialOutcome(margin >= 0, margin, data)


@_suite("orth_invariance", "angles", 10_000, "angle operations are invariant under a common rotation")
def _t_orth_invariance(rng, tol, index, capture):
    kind = index % 3
    if kind == 0:
        n = int(rng.integers(2, 9))
        u = ang.random_subspace(rng, n, int(rng.integers(1, n + 1)))
        v = ang.random_subspace(rng, n, int(rng.integers(1, n + 1)))
        op = lambda x, y: ang.max_angle(x, y)
    elif kind == 1:
        n, u, v = _transversal_pair(rng)
        op = lambda x, y: ang.min_angle(x, y)
    else:
        n = int(rng.integers(2, 9))
        u = ang.random_subspace(rng, n, 1)
        v = ang.random_subspace(rng, n, int(rng.integers(1, n + 1)))
        op = lambda x, y: ang.angle_vector_subspace(x.frame[:, 0], y)
    q, _ = np.linalg.qr(rng.standard_normal((n, n)))
    ru = ang.Subspace(q @ u.frame)
    rv = ang.Subspace(q @ v.frame)
    margin = tol - abs(op(u, v) - op(ru, rv))
    data = {"frames": _frames(u, v), "q": q.tolist()} if capture else None
    return TrialOutcome(margin >= 0, margin, data)


# brute-force grid oracles ---------------------------------------------------

GRID_POINTS = 60_000


def grid_max_angle(u: ang.Subspace, v: ang.Subspace) -> float:
    """Grid-search the largest angle a unit vector of U makes with V."""
    if u.dim == 1:
        return ang.angle_vector_subspace(u.frame[:, 0], v)
    if u.dim != 2:
        raise ValueError("grid oracle supports subspace dimensions 1 and 2")
    phi = np.linspace(0.0, math.pi, GRID_POINTS, endpoint=False)
    vecs = u.frame @ np.vstack([np.cos(phi), np.sin(phi)])
    cosines = np.linalg.norm(v.frame.T @ vecs, axis=0)
    return float(np.arccos(np.clip(cosines.min(), -1.0, 1.0)))


def grid_min_angle(u: ang.Subspace, v: ang.Subspace) -> float:
    """Grid-search the minimum (transversality) angle of a low-dimensional pair."""
    n = u.ambient_dim
    if u.dim + v.dim < n:
        return 0.0
    if u.dim + v.dim == n:
        # zero intersection generically: minimize the angle to V over U
        if u.dim == 1:
            return ang.angle_vector_subspace(u.frame[:, 0], v)
        if u.dim != 2:
            raise ValueError("grid oracle supports subspace dimensions 1 and 2")
        phi = np.linspace(0.0, math.pi, GRID_POINTS, endpoint=False)
        vecs = u.frame @ np.vstack([np.cos(phi), np.sin(phi)])
        cosines = np.linalg.norm(v.frame.T @ vecs, axis=0)
        return float(np.arccos(np.clip(cosines.max(), -1.0, 1.0)))
    # overlapping dimensions: minimize between the orthogonal complements
    cu, cv = u.complement(), v.complement()
    if cu.dim == 1:
        return ang.angle_vector_subspace(cu.frame[:, 0], cv)
    if cv.dim == 1:
        return ang.angle_vector_subspace(cv.frame[:, 0], cu)
    raise ValueError("grid oracle expects a complement of dimension 1 here")


@_suite(
    "oracle_grid",
    "angles",
    200,
    "max/min angle agree with a unit-sphere grid search in low dimensions",
    default_tol=1e-3,
)
def _t_oracle_grid(rng, tol, index, capture):
    while True:
        n = int(rng.integers(2, 5))
        hi = min(2, n - 1) if n > 2 else 1
        a = int(rng.integers(1, hi + 1))
        b = int(rng.integers(1, hi + 1))
        u = ang.random_subspace(rng, n, a)
        v = ang.random_subspace(rng, n, b)
        if a + b < n or ang.min_angle_perp(u, v) > 1e-3:
            break
    err_max = abs(ang.max_angle(u, v) - grid_max_angle(u, v))
    err_min = abs(ang.min_angle(u, v) - grid_min_angle(u, v))
    margin = tol - max(err_max, err_min)
    data = {"frames": _frames(u, v)} if capture else None
    return TrialOutcome(margin >= 0, margin, data)


# ---------------------------------------------------------------------------
# Grassmannian suites


def _random_exact_matrix(rng, rows, cols, lo=-9, hi=9):
    return [
        [QComplex(int(rng.integers(lo, hi + 1)), int(rng.integers(lo, hi + 1))) for _ in range(cols)]
        for _ in range(rows)
    ]


def _pluecker_quadruple_relations(coords, subsets, n):
    """Three-term quadratic relations for 2-plane Pluecker vectors."""
    import itertools

    index = {s: i for i, s in enumerate(subsets)}
    bad = []
    for (i, j, k, l) in itertools.combinations(range(n), 4):
        lhs = (
            coords[index[(i, j)]] * coords[index[(k, l)]]
            - coords[index[(i, k)]] * coords[index[(j, l)]]
            + coords[index[(i, l)]] * coords[index[(j, k)]]
        )
        if not lhs.is_zero():
            bad.append((i, j, k, l))
    return bad


@_suite("pluecker_relations", "grassmann", 1000, "Pluecker quadratic relations and GL covariance, exact")
def _t_pluecker(rng, tol, index, capture):
    n = 4 if index % 2 == 0 else 5
    while True:
        mat = _random_exact_matrix(rng, 2, n)
        try:
            point = gr.GrassmannPoint(mat, exact=True)
            break
        except ValueError:
            continue
    pc = gr.pluecker_embed(point)
    bad = _pluecker_quadruple_relations(pc.coords, pc.subsets, n)
    # covariance under a row operation: coordinates scale by det(G)
    while True:
        g = _random_exact_matrix(rng, 2, 2, -3, 3)
        det_g = g[0][0] * g[1][1] - g[0][1] * g[1][0]
        if not det_g.is_zero():
            break
    from .exactcx import exact_matmul

    moved = gr.GrassmannPoint(exact_matmul(g, point.matrix), exact=True)
    pm = gr.pluecker_embed(moved)
    gl_ok = all(a == det_g * b for a, b in zip(pm.coords, pc.coords))
    ok = not bad and gl_ok
    data = {"matrix": point.to_json(), "bad_relations": bad, "gl_ok": gl_ok} if capture else None
    return TrialOutcome(ok, None, data)


@_suite("cauchy_binet", "grassmann", 1000, "compound matrices are multiplicative, exact")
def _t_cauchy_binet(rng, tol, index, capture):
    n = int(rng.integers(1, 6))
    m = int(rng.integers(1, 6))
    p = int(rng.integers(1, 6))
    a = _random_exact_matrix(rng, n, m, -5, 5)
    b = _random_exact_matrix(rng, m, p, -5, 5)
    from .exactcx import exact_matmul

    ab = exact_matmul(a, b)
    ok = True
    for l in range(1, min(n, m, p) + 1):
        lhs = gr.compound_matrix(ab, l)
        prod = exact_matmul(gr.compound_matrix(a, l), gr.compound_matrix(b, l))
        if any(
            not (lhs[i][j] == prod[i][j])
            for i in range(len(lhs))
            for j in range(len(lhs[0]))
        ):
            ok = False
            break
    data = {"shapes": [n, m, p]} if capture else None
    return TrialOutcome(ok, None, data)


@_suite("fs_metric", "grassmann", 1000, "Fubini-Study distance is a symmetric metric on random triples")
def _t_fs_metric(rng, tol, index, capture):
    pts = []
    for _ in range(3):
        mat = rng.standard_normal((2, 4)) + 1j * rng.standard_normal((2, 4))
        pts.append(gr.GrassmannPoint(mat))
    p, q, r = pts
    dpq, dqp = gr.fs_distance(p, q), gr.fs_distance(q, p)
    sym_ok = dpq == dqp
    margin = gr.fs_distance(p, q) + gr.fs_distance(q, r) + tol - gr.fs_distance(p, r)
    self_ok = gr.fs_distance(p, p) <= 1e-12
    ok = sym_ok and self_ok and margin >= 0
    data = {"p": p.to_json(), "q": q.to_json(), "r": r.to_json()} if capture else None
    return TrialOutcome(ok, margin, data)


CHART_CASES = ((1, 2), (2, 4), (2, 5))


@_suite("chart_isometry", "grassmann", 3, "standard chart is an isometry at the base point", default_tol=1e-6)
def _t_chart_isometry(rng, tol, index, capture):
    r, n = CHART_CASES[index % len(CHART_CASES)]
    defect = gr.chart_isometry_defect(r, n)
    margin = tol - defect
    data = {"r": r, "N": n, "defect": defect} if capture else None
    return TrialOutcome(margin >= 0, margin, data)


@_suite("curvature_signs", "grassmann", 1000, "universal-bundle curvature is negative at the base point")
def _t_curvature_signs(rng, tol, index, capture):
    r, n = (2, 4) if index % 2 == 0 else (2, 5)
    z = rng.standard_normal((r, n - r)) + 1j * rng.standard_normal((r, n - r))
    z = z / np.linalg.norm(z)
    form = gr.curvature_form_at_base(r, n, z, 1j * z)
    endo = -1j * form
    eigs = np.linalg.eigvalsh(endo)
    wedge = float(np.real(np.trace(endo)))
    margin = min(1e-10 - float(eigs[-1]), -wedge)
    data = {"r": r, "N": n, "eigs": [float(e) for e in eigs], "wedge": wedge} if capture else None
    return TrialOutcome(margin >= 0, margin, data)


TANGENT_SHAPES = ((2, 1), (3, 2), (4, 2), (4, 3))


@_suite("tangent_rank", "grassmann", 400, "tangent dimension of the top-wedge image is m - n + 1")
def _t_tangent_rank(rng, tol, index, capture):
    m, n = TANGENT_SHAPES[index % len(TANGENT_SHAPES)]
    mat = rng.standard_normal((n, m)) + 1j * rng.standard_normal((n, m))
    phi = gr.MorphismSample(m=m, n=n, matrix=mat)
    got = gr.rank_variety_tangent_rank(phi)
    ok = got == m - n + 1
    data = {"m": m, "n": n, "rank": got} if capture else None
    return TrialOutcome(ok, None, data)


@_suite("compound_rank_link", "grassmann", 400, "rank >= l iff the l-th compound is nonzero, exact")
def _t_compound_rank_link(rng, tol, index, capture):
    n = int(rng.integers(1, 5))
    m = int(rng.integers(1, 5))
    r = int(rng.integers(0, min(n, m) + 1))
    if r == 0:
        mat = [[QComplex(0, 0)] * m for _ in range(n)]
    else:
        from .exactcx import exact_matmul

        left = _random_exact_matrix(rng, n, r, -3, 3)
        right = _random_exact_matrix(rng, r, m, -3, 3)
        mat = exact_matmul(left, right)
    # true rank from the compounds themselves
    true_rank = 0
    for l in range(1, min(n, m) + 1):
        comp = gr.compound_matrix(mat, l)
        if any(not c.is_zero() for row in comp for c in row):
            true_rank = l
    float_mat = np.array([[complex(c) for c in row] for row in mat])
    stratum = gr.rank_stratum(gr.MorphismSample(m=m, n=n, matrix=float_mat), tol=1e-8)
    ok = stratum == true_rank
    data = {"n": n, "m": m, "built_rank": r, "true_rank": true_rank, "stratum": stratum} if capture else None
    return TrialOutcome(ok, None, data)


# ---------------------------------------------------------------------------
# Chern suites (exact arithmetic throughout)


def _cp_cases() -> list[tuple[int, int, int, int]]:
    cases = []
    for n in range(1, 9):
        for p in range(0, n + 1):
            for r_e in range(1, 7):
                for r_f in range(1, 7):
                    cases.append((n, p, r_e, r_f))
    return cases


_CP_CASES = _cp_cases()


@_suite("cp_leading", "chern", len(_CP_CASES), "leading twisted difference-class coefficients match the closed form")
def _t_cp_leading(rng, tol, index, capture):
    n, p, r_e, r_f = _CP_CASES[index % len(_CP_CASES)]
    e_tw = chern.twist_by_line_power(chern.BundleSpec.trivial(r_e, n), -1)
    f_tw = chern.twist_by_line_power(chern.BundleSpec.trivial(r_f, n), +1)
    diff = chern.difference_chern(f_tw, e_tw)
    got = diff.coeff(p).coeff(p)
    want = chern.cp_leading_coefficient(r_e, r_f, p)
    ok = got == want
    data = {"n": n, "p": p, "r_e": r_e, "r_f": r_f, "got": str(got), "want": str(want)} if capture else None
    return TrialOutcome(ok, None, data)


def _random_problem(rng) -> tuple[int, int, int, int, list, list, list]:
    dim_locus = 1 if rng.integers(0, 2) == 0 else 2
    while True:
        r = int(rng.integers(0, 3))
        gap_e = int(rng.integers(1, 3))
        gap_f = int(rng.integers(1, 4))
        n = gap_e * gap_f + dim_locus
        r_e, r_f = r + gap_e, r + gap_f
        if n <= 7 and r_e <= 5 and r_f <= 5:
            break

    def rand_data(rank):
        data = [Fraction(1)]
        for _ in range(1, min(rank, n) + 1):
            data.append(Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 5))))
        return data

    return n, r_e, r_f, r, rand_data(n), rand_data(r_e), rand_data(r_f)


@_suite("dual_engine", "chern", 50, "main and naive invariant engines agree exactly on random problems")
def _t_dual_engine(rng, tol, index, capture):
    n, r_e, r_f, r, c_tm, c_e, c_f = _random_problem(rng)
    problem = chern.DeterminantalProblem(
        n=n,
        e_bundle=chern.BundleSpec.from_rationals(r_e, n, c_e),
        f_bundle=chern.BundleSpec.from_rationals(r_f, n, c_f),
        r=r,
        tm=chern.BundleSpec.from_rationals(n, n, c_tm),
    )
    main = chern.determinantal_invariants(problem)
    other = naive.invariants(n, r_e, r_f, r, c_tm, c_e, c_f)
    ok = True
    for key, entry in main.entries.items():
        main_map = {j: c for j, c in enumerate(entry.raw.coeffs) if c}
        if main_map != other[key]:
            ok = False
    data = {
        "n": n, "r_e": r_e, "r_f": r_f, "r": r,
        "c_tm": [str(c) for c in c_tm],
        "c_e": [str(c) for c in c_e],
        "c_f": [str(c) for c in c_f],
    } if capture else None
    return TrialOutcome(ok, None, data)


def _random_bundle(rng, n) -> chern.BundleSpec:
    rank = int(rng.integers(1, 5))
    data = [Fraction(1)]
    for _ in range(1, min(rank, n) + 1):
        data.append(Fraction(int(rng.integers(-3, 4)), int(rng.integers(1, 5))))
    return chern.BundleSpec.from_rationals(rank, n, data)


@_suite("whitney", "chern", 200, "difference class times c(E) recovers c(F), exact")
def _t_whitney(rng, tol, index, capture):
    n = int(rng.integers(1, 7))
    e = _random_bundle(rng, n)
    f = _random_bundle(rng, n)
    ok = chern.difference_chern(f, e) * e.total == f.total
    data = {"n": n} if capture else None
    return TrialOutcome(ok, None, data)


@_suite("dual_involution", "chern", 200, "the dual of the dual is the original bundle")
def _t_dual_involution(rng, tol, index, capture):
    n = int(rng.integers(1, 7))
    b = _random_bundle(rng, n)
    ok = chern.dual_chern(chern.dual_chern(b)) == b
    return TrialOutcome(ok, None, {"n": n} if capture else None)


@_suite("truncation", "chern", 200, "products beyond the truncation degree vanish exactly")
def _t_truncation(rng, tol, index, capture):
    n = int(rng.integers(1, 7))
    d1 = int(rng.integers(1, n + 1))
    d2 = int(rng.integers(n + 1 - d1, n + 1))
    a = chern.CohomologyClass.h_power(n, d1, Fraction(int(rng.integers(-5, 6)), 1))
    b = chern.CohomologyClass.h_power(n, d2, Fraction(int(rng.integers(-5, 6)), 1))
    ok = (a * b).is_zero() if d1 + d2 > n else True
    return TrialOutcome(ok, None, {"n": n, "d1": d1, "d2": d2} if capture else None)


@_suite("porteous_degree", "chern", 200, "Schur determinants are homogeneous of the predicted degree")
def _t_porteous_degree(rng, tol, index, capture):
    n = int(rng.integers(2, 9))
    size = int(rng.integers(1, 4))
    q = int(rng.integers(1, 4))
    r = int(rng.integers(0, 3))
    r_e = r + size
    r_f = r + q
    e = _random_bundle(rng, n)
    f = _random_bundle(rng, n)
    e = chern.BundleSpec(r_e, chern.CohomologyClass(n, e.total.coeffs[: min(r_e, n) + 1]))
    f = chern.BundleSpec(r_f, chern.CohomologyClass(n, f.total.coeffs[: min(r_f, n) + 1]))
    c = chern.difference_chern(
        chern.twist_by_line_power(f, +1), chern.twist_by_line_power(e, -1)
    )
    parts = sorted((int(rng.integers(0, 4)) for _ in range(size)), reverse=True)
    delta = chern.porteous_delta(c, r_e, r_f, r, parts)
    deg = size * q + sum(parts)
    ok = delta.is_homogeneous(deg) if deg <= n else delta.is_zero()
    return TrialOutcome(ok, None, {"n": n, "parts": parts, "q": q} if capture else None)


def _pow2(e: int) -> Fraction:
    return Fraction(2) ** e


@_suite("example1_table", "chern", 9, "dimension-1 family reproduces its closed-form leading invariants")
def _t_example1(rng, tol, index, capture):
    n = 2 + (index % 9)
    row = chern.example_tables(1, [n])[0]
    vol = row.determinantal.leading("vol")
    ok = vol == n * _pow2(n - 1)
    q = row.determinantal.quotient("n1", "vol")
    ok = ok and q == Fraction(-2) - 2 * n + Fraction(4, n)
    aq = row.auroux.quotient("n1", "vol")
    ok = ok and aq == 1 - n and row.auroux.leading("vol") == 1
    ok = ok and row.distinct
    ok = ok and row.cross_k_match == (n == 2)
    data = {"n": n, "vol": str(vol), "n1_over_vol": str(q), "auroux": str(aq)} if capture else None
    return TrialOutcome(ok, None, data)


@_suite("example2_table", "chern", 8, "dimension-2 family reproduces its closed-form leading invariants")
def _t_example2(rng, tol, index, capture):
    n = 3 + (index % 8)
    row = chern.example_tables(2, [n])[0]
    det = row.determinantal
    ok = det.leading("vol") == (n - 1) * _pow2(n - 2)
    ok = ok and det.leading("n11") == 4 * (n - 1) * (n * n - 5) * _pow2(n - 2)
    ok = ok and det.leading("n2") == 2 * (n * n + n - 4) * (n - 1) * _pow2(n - 2)
    ok = ok and det.quotient("n2", "n11") == Fraction(n * n + n - 4, 2 * (n * n - 5))
    aur = row.auroux
    ok = ok and aur.leading("vol") == 1
    ok = ok and aur.leading("n11") == (n - 2) ** 2
    ok = ok and aur.leading("n2") == Fraction((n - 1) * (n - 2), 2)
    ok = ok and aur.quotient("n2", "n11") == Fraction(n - 1, 2 * (n - 2))
    ok = ok and row.distinct
    data = {"n": n} if capture else None
    return TrialOutcome(ok, None, data)


@_suite("cross_k", "chern", 9, "cross-twist leading-order matching happens only at n = 2")
def _t_cross_k(rng, tol, index, capture):
    n = 2 + (index % 9)
    got = chern.cross_k_isotopy_check(1, n)
    ok = got == (n == 2)
    return TrialOutcome(ok, None, {"n": n, "match": got} if capture else None)
