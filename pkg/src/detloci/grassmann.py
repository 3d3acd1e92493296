"""Matrix model of the complex Grassmannian Gr(r, N).

A point is a full-rank r x N complex matrix modulo row operations; the
Pluecker embedding sends it to its vector of r x r minors, indexed by the
increasing r-subsets of the columns in lexicographic order.  On top of the
embedding this module provides the Fubini-Study distance, the standard
affine chart at a point, wedge-power (compound) matrices, rank strata of
morphism samples, the tangent dimension of the top-rank wedge variety, and
the curvature of the universal bundle at the base point.

Two arithmetic backends coexist: numpy complex floats for the geometry, and
exact rational complex entries (:class:`detloci.exactcx.QComplex`) for the
identity tests where equality is the claim.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .exactcx import QComplex, exact_det

__all__ = [
    "GrassmannPoint",
    "PlueckerCoords",
    "MorphismSample",
    "CurvatureReport",
    "ChartDomainError",
    "subsets_lex",
    "pluecker_embed",
    "fs_distance",
    "chart_psi0",
    "chart_inverse",
    "chart_isometry_defect",
    "compound_matrix",
    "rank_stratum",
    "expected_codimension",
    "rank_variety_tangent_rank",
    "curvature_form_at_base",
    "universal_curvature_at_base",
]


class ChartDomainError(ValueError):
    """Raised when a point lies outside the standard affine chart."""


def subsets_lex(n: int, l: int) -> list[tuple[int, ...]]:
    """Increasing l-subsets of range(n) in lexicographic order."""
    return list(itertools.combinations(range(n), l))


def _is_exact_matrix(matrix) -> bool:
    return isinstance(matrix, (list, tuple))


def _to_exact(matrix) -> tuple[tuple[QComplex, ...], ...]:
    return tuple(tuple(QComplex.coerce(x) for x in row) for row in matrix)


class GrassmannPoint:
    """An r-plane in C^N as a full-rank r x N matrix (rows span the plane).

    The matrix is either a numpy complex array (float backend) or nested
    sequences of exact rational complex numbers (exact backend; select by
    passing lists/tuples or exact=True).  Equality is span-equality of the
    row spaces.
    """

    __slots__ = ("r", "N", "matrix", "exact")

    def __init__(self, matrix, exact: bool | None = None):
        if exact is None:
            exact = _is_exact_matrix(matrix) and not isinstance(matrix, np.ndarray)
        if exact:
            mat = _to_exact(matrix)
            r, n = len(mat), len(mat[0])
            if any(len(row) != n for row in mat):
                raise ValueError("ragged matrix")
        else:
            mat = np.array(matrix, dtype=complex)
            if mat.ndim != 2:
                raise ValueError("expected a matrix")
            r, n = mat.shape
            mat.setflags(write=False)
        if not (1 <= r <= n):
            raise ValueError("need 1 <= r <= N")
        object.__setattr__(self, "r", r)
        object.__setattr__(self, "N", n)
        object.__setattr__(self, "matrix", mat)
        object.__setattr__(self, "exact", exact)
        self._check_rank()

    def __setattr__(self, name, value):
        raise AttributeError("GrassmannPoint is immutable")

    def _check_rank(self):
        if self.exact:
            if all(c.is_zero() for c in pluecker_embed(self).coords):
                raise ValueError("matrix does not have full rank")
        else:
            s = np.linalg.svd(self.matrix, compute_uv=False)
            if s[0] == 0.0 or s[-1] <= 1e-10 * s[0]:
                raise ValueError("matrix does not have full rank")

    @classmethod
    def base_point(cls, r: int, n: int) -> "GrassmannPoint":
        """The point [I | 0]."""
        mat = np.zeros((r, n), dtype=complex)
        mat[:, :r] = np.eye(r)
        return cls(mat)

    @classmethod
    def from_json(cls, obj: dict, exact: bool = False) -> "GrassmannPoint":
        rows, cols = int(obj["rows"]), int(obj["cols"])
        entries = obj["entries"]
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match rows*cols")
        if exact:
            mat = [
                [_entry_exact(entries[i * cols + j]) for j in range(cols)]
                for i in range(rows)
            ]
        else:
            mat = np.array(
                [complex(float(e[0]), float(e[1])) for e in entries], dtype=complex
            ).reshape(rows, cols)
        return cls(mat, exact=exact)

    def to_json(self) -> dict:
        if self.exact:
            entries = [[str(c.re), str(c.im)] for row in self.matrix for c in row]
        else:
            entries = [[z.real, z.imag] for z in self.matrix.ravel()]
        return {"rows": self.r, "cols": self.N, "entries": entries}

    def span_equal(self, other: "GrassmannPoint", tol: float = 1e-9) -> bool:
        if (self.r, self.N) != (other.r, other.N):
            return False
        if self.exact or other.exact:
            p = pluecker_embed(self).coords
            q = pluecker_embed(other).coords
            # proportionality of the Pluecker vectors: p_i q_j == p_j q_i
            pairs = [(a, b) for a, b in zip(p, q)]
            for (a1, b1), (a2, b2) in itertools.combinations(pairs, 2):
                if a1 * b2 != a2 * b1:
                    return False
            return True
        a = np.linalg.svd(self.matrix.conj().T, full_matrices=False)[0][:, : self.r]
        b = np.linalg.svd(other.matrix.conj().T, full_matrices=False)[0][:, : other.r]
        res = a - b @ (b.conj().T @ a)
        return float(np.abs(res).max()) <= tol

    def __eq__(self, other) -> bool:
        if not isinstance(other, GrassmannPoint):
            return NotImplemented
        return self.span_equal(other)

    __hash__ = None

    def __repr__(self) -> str:
        return f"GrassmannPoint(r={self.r}, N={self.N}, exact={self.exact})"


def _entry_exact(e) -> QComplex:
    from fractions import Fraction

    def part(x):
        if isinstance(x, str):
            return Fraction(x)
        if isinstance(x, int):
            return x
        if isinstance(x, float) and x.is_integer():
            return int(x)
        raise ValueError(f"entry {x!r} is not exact; use ints or 'p/q' strings")

    return QComplex(part(e[0]), part(e[1]))


@dataclass(frozen=True)
class PlueckerCoords:
    """Vector of r x r minors indexed by increasing column subsets (lex order)."""

    r: int
    N: int
    coords: tuple
    exact: bool

    @property
    def subsets(self) -> list[tuple[int, ...]]:
        return subsets_lex(self.N, self.r)

    def as_array(self) -> np.ndarray:
        if self.exact:
            return np.array([complex(c) for c in self.coords])
        return np.asarray(self.coords)


def pluecker_embed(point: GrassmannPoint) -> PlueckerCoords:
    """All r x r minors of the matrix, in lexicographic subset order.

    Row operations on the point scale the whole vector by the determinant of
    the operation, so the result is a well-defined projective point.
    """
    subs = subsets_lex(point.N, point.r)
    if point.exact:
        coords = tuple(
            exact_det([[point.matrix[i][j] for j in s] for i in range(point.r)])
            for s in subs
        )
    else:
        mat = point.matrix
        coords = tuple(complex(np.linalg.det(mat[:, s])) for s in subs)
    return PlueckerCoords(point.r, point.N, coords, point.exact)


def fs_distance(p: GrassmannPoint, q: GrassmannPoint) -> float:
    """Fubini-Study distance between two planes via their Pluecker vectors.

    d = arccos(|<p, q>| / (|p| |q|)) evaluated as an atan2 of symmetrized
    rejection norms, which keeps full accuracy for nearby planes and is
    bitwise symmetric in its arguments.
    """
    if (p.r, p.N) != (q.r, q.N):
        raise ValueError("points live on different Grassmannians")
    vp = pluecker_embed(p).as_array()
    vq = pluecker_embed(q).as_array()
    np_, nq = np.linalg.norm(vp), np.linalg.norm(vq)
    inner = np.vdot(vp, vq)  # conjugates the first argument
    c = abs(inner)
    # rejections of each vector from the other's line
    up = vq - (inner / np_**2) * vp
    uq = vp - (np.conj(inner) / nq**2) * vq
    s = 0.5 * (np.linalg.norm(up) / nq + np.linalg.norm(uq) / np_)
    return math.atan2(float(s), float(c / (np_ * nq)))


def chart_psi0(point: GrassmannPoint) -> np.ndarray:
    """Standard chart at the base point: [A | B] -> A^(-1) B.

    Defined where the leading r x r block is invertible; a condition number
    at or above 1e12 counts as outside the chart.
    """
    if point.exact:
        raise ValueError("the chart is a float-backend operation")
    a = point.matrix[:, : point.r]
    b = point.matrix[:, point.r :]
    s = np.linalg.svd(a, compute_uv=False)
    if s[0] == 0.0 or s[0] / s[-1] >= 1e12 if s[-1] > 0 else True:
        raise ChartDomainError("leading block is singular; point outside chart")
    return np.linalg.solve(a, b)


def chart_inverse(z: np.ndarray) -> GrassmannPoint:
    """Inverse of the standard chart: Z -> [I | Z]."""
    z = np.asarray(z, dtype=complex)
    r = z.shape[0]
    mat = np.hstack([np.eye(r, dtype=complex), z])
    return GrassmannPoint(mat)


def chart_isometry_defect(r: int, n: int, step: float = 1e-5) -> float:
    """Deviation of the chart from an isometry at the base point.

    Differentiates the Fubini-Study distance numerically along the real
    coordinate directions of the chart (central polarization with the given
    step), assembles the induced Gram matrix on the 2 r (N - r) real tangent
    coordinates, and returns the operator norm of its deviation from the
    identity.  The step balances truncation against rounding at double
    precision.
    """
    if not (1 <= r < n):
        raise ValueError("need 1 <= r < N")
    base = GrassmannPoint.base_point(r, n)
    dims = r * (n - r)
    real_dims = 2 * dims

    def direction(i: int) -> np.ndarray:
        z = np.zeros((r, n - r), dtype=complex)
        flat, part = divmod(i, 2)
        z.flat[flat] = 1.0 if part == 0 else 1.0j
        return z

    def dist_along(z: np.ndarray) -> float:
        return fs_distance(chart_inverse(step * z), base)

    def quad(z: np.ndarray) -> float:
        d = dist_along(z)
        return (d / step) ** 2

    gram = np.zeros((real_dims, real_dims))
    dirs = [direction(i) for i in range(real_dims)]
    for i in range(real_dims):
        gram[i, i] = quad(dirs[i])
    for i in range(real_dims):
        for j in range(i + 1, real_dims):
            plus = quad(dirs[i] + dirs[j])
            minus = quad(dirs[i] - dirs[j])
            gram[i, j] = gram[j, i] = 0.25 * (plus - minus)
    defect = np.linalg.svd(gram - np.eye(real_dims), compute_uv=False)
    return float(defect[0])


def compound_matrix(matrix, l: int):
    """l-th compound: the matrix of all l x l minors in lexicographic order.

    Entry ((S), (T)) is the minor with row set S and column set T.  Satisfies
    the Cauchy-Binet identity compound(AB, l) = compound(A, l) compound(B, l).
    Works on both backends; the exact backend returns nested tuples.
    """
    if _is_exact_matrix(matrix) and not isinstance(matrix, np.ndarray):
        rows = _to_exact(matrix)
        nr, nc = len(rows), len(rows[0])
        if not (1 <= l <= min(nr, nc)):
            raise ValueError("compound order out of range")
        row_subs = subsets_lex(nr, l)
        col_subs = subsets_lex(nc, l)
        return tuple(
            tuple(exact_det([[rows[i][j] for j in t] for i in s]) for t in col_subs)
            for s in row_subs
        )
    mat = np.asarray(matrix, dtype=complex)
    nr, nc = mat.shape
    if not (1 <= l <= min(nr, nc)):
        raise ValueError("compound order out of range")
    row_subs = subsets_lex(nr, l)
    col_subs = subsets_lex(nc, l)
    out = np.empty((len(row_subs), len(col_subs)), dtype=complex)
    for a, s in enumerate(row_subs):
        sub = mat[np.ix_(s, range(nc))]
        for b, t in enumerate(col_subs):
            out[a, b] = np.linalg.det(sub[:, t])
    return out


@dataclass(frozen=True)
class MorphismSample:
    """A linear map V -> W sampled from a bundle morphism: an n x m matrix
    for dim V = m, dim W = n.  No ordering of m and n is enforced."""

    m: int
    n: int
    matrix: np.ndarray

    def __post_init__(self):
        if self.m <= 0 or self.n <= 0:
            raise ValueError("dimensions must be positive")
        mat = np.asarray(self.matrix, dtype=complex)
        if mat.shape != (self.n, self.m):
            raise ValueError(f"matrix must be {self.n} x {self.m}")
        object.__setattr__(self, "matrix", mat)


def rank_stratum(phi: MorphismSample, tol: float = 1e-9) -> int:
    """Numerical rank: singular values above tol times the largest (or 1 if
    everything is essentially zero)."""
    if tol <= 0:
        raise ValueError("tol must be positive")
    s = np.linalg.svd(phi.matrix, compute_uv=False)
    ref = s[0] if s[0] > tol else 1.0
    return int(np.sum(s > tol * ref))


def expected_codimension(r_e: int, r_f: int, r: int) -> int:
    """Expected real codimension 2 (r_e - r)(r_f - r) of the rank-r stratum."""
    if not (0 <= r <= min(r_e, r_f)):
        raise ValueError("need 0 <= r <= min(r_e, r_f)")
    return 2 * (r_e - r) * (r_f - r)


def _top_wedge(mat: np.ndarray) -> np.ndarray:
    """Vector of maximal minors of an n x m matrix (n <= m), lex order."""
    n, m = mat.shape
    return np.array([np.linalg.det(mat[:, s]) for s in subsets_lex(m, n)])


def rank_variety_tangent_rank(phi: MorphismSample, step: float = 1e-6, tol: float = 1e-6) -> int:
    """Tangent dimension of the punctured top-wedge image at a full-rank map.

    Differentiates phi -> wedge^n(phi) by central differences in all n*m
    real-pair coordinates and returns the complex rank of the Jacobian with
    the given relative threshold.  For m >= n and full-rank phi the image of
    the top wedge is a cone of complex dimension m - n + 1.
    """
    n, m = phi.n, phi.m
    if m < n:
        raise ValueError("need source dimension m >= target dimension n")
    if np.abs(_top_wedge(phi.matrix)).max() <= 1e-12:
        raise ValueError("morphism is rank deficient; the top wedge vanishes")
    cols = []
    for i in range(n):
        for j in range(m):
            for unit in (1.0, 1.0j):
                bump = np.zeros((n, m), dtype=complex)
                bump[i, j] = unit * step
                diff = _top_wedge(phi.matrix + bump) - _top_wedge(phi.matrix - bump)
                cols.append(diff / (2.0 * step))
    jac = np.column_stack(cols)
    s = np.linalg.svd(jac, compute_uv=False)
    if s[0] == 0.0:
        return 0
    return int(np.sum(s > tol * s[0]))


def curvature_form_at_base(r: int, n: int, u: np.ndarray, v: np.ndarray) -> np.ndarray:
    """Universal-bundle curvature 2-form at the base point, as an r x r matrix.

    In the chart coordinates z_(jk) the curvature at [I | 0] reduces to
    entries (a, b) = (1/2) sum_k ( dz_(ak)(u) conj(dz_(bk))(v)
                                  - dz_(ak)(v) conj(dz_(bk))(u) ),
    where a tangent vector is an r x (N - r) complex matrix of chart
    coefficients.  On coordinate directions this gives
    R(e_(jk), i e_(jk)) = -i e_j (x) e_j^*.
    """
    u = np.asarray(u, dtype=complex)
    v = np.asarray(v, dtype=complex)
    if u.shape != (r, n - r) or v.shape != (r, n - r):
        raise ValueError("tangent vectors must be r x (N - r) chart matrices")
    return 0.5 * (u @ v.conj().T - v @ u.conj().T)


@dataclass(frozen=True)
class CurvatureReport:
    """Spectra of -i R(u, Ju) over sampled unit tangents at the base point."""

    point: GrassmannPoint
    tangents: tuple
    endomorphism_spectrum: tuple
    wedge_curvature: tuple


def universal_curvature_at_base(
    r: int, n: int, tangent_samples: int, seed: int = 0, include_coordinate_directions: bool = True
) -> CurvatureReport:
    """Sample unit tangents and record the spectrum of -i R(u, Ju).

    Each endomorphism is Hermitian; its eigenvalues are reported sorted
    ascending, together with the induced curvature on the top wedge power
    (the trace).  The tangents are unit for the chart metric, which is the
    ambient metric at the base point.
    """
    if not (1 <= r < n):
        raise ValueError("need 1 <= r < N")
    rng = np.random.default_rng(seed)
    tangents = []
    if include_coordinate_directions:
        for flat in range(r * (n - r)):
            z = np.zeros((r, n - r), dtype=complex)
            z.flat[flat] = 1.0
            tangents.append(z)
    while len(tangents) < tangent_samples:
        z = rng.standard_normal((r, n - r)) + 1j * rng.standard_normal((r, n - r))
        norm = np.linalg.norm(z)
        if norm > 1e-8:
            tangents.append(z / norm)
    tangents = tangents[:max(tangent_samples, 1)]
    spectra = []
    wedge = []
    for z in tangents:
        form = curvature_form_at_base(r, n, z, 1j * z)
        endo = -1j * form
        herm_defect = float(np.abs(endo - endo.conj().T).max())
        if herm_defect > 1e-9:
            raise ArithmeticError("curvature endomorphism is not Hermitian")
        eigs = np.linalg.eigvalsh(endo)
        spectra.append(tuple(float(e) for e in eigs))
        wedge.append(float(np.real(np.trace(endo))))
    return CurvatureReport(
        point=GrassmannPoint.base_point(r, n),
        tangents=tuple(np.asarray(t) for t in tangents),
        endomorphism_spectrum=tuple(spectra),
        wedge_curvature=tuple(wedge),
    )
