"""Angles between linear subspaces of Euclidean space.

Subspaces are represented by orthonormal frames and every angle quantity is
reduced to singular values of frame products:

* vector-vector and vector-subspace angles via projections,
* the maximum angle of U against V as ``arccos(sigma_min(B^T A))`` where A
  and B are orthonormal frames of U and V (the smallest singular value of
  B^T A regarded as an operator on U, so it is 0 whenever dim U > dim V),
* the minimum (transversality) angle of a pair via the orthogonal
  complements of the intersection inside each subspace, with an independent
  second route through the minimal principal angle of the orthogonal
  complements U^perp, V^perp,
* the complex angle of an even-dimensional subspace against its image under
  a compatible complex structure, and the quantitative transversality
  predicate built on the minimum angle.

All inputs of arccos are clamped to [-1, 1]; rounding can exceed the domain
by a few ulps.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

import numpy as np

__all__ = [
    "Subspace",
    "ComplexStructure",
    "TransversalitySample",
    "BridgeBound",
    "HolomorphicityFit",
    "angle_between_vectors",
    "angle_vector_subspace",
    "max_angle",
    "intersect",
    "min_angle",
    "min_angle_perp",
    "complex_angle",
    "is_complex_subspace",
    "is_symplectic_subspace",
    "asymptotic_holomorphicity_rate",
    "check_sigma_transverse",
    "bridge_angle_bound",
    "random_subspace",
]

# Relative threshold below which a projection counts as zero (angle pi/2).
PROJECTION_EPS = 1e-12


def _clamped_arccos(x: float) -> float:
    return math.acos(min(1.0, max(-1.0, x)))


def _orthonormalize(vectors: np.ndarray) -> np.ndarray:
    """Orthonormal basis for the column span; raises if columns are dependent."""
    a = np.asarray(vectors, dtype=float)
    if a.ndim != 2 or a.shape[1] == 0:
        raise ValueError("expected a nonempty matrix of column vectors")
    u, s, _ = np.linalg.svd(a, full_matrices=False)
    if s[0] == 0.0 or s[-1] <= 1e-12 * s[0]:
        raise ValueError("basis vectors are linearly dependent")
    return u[:, : a.shape[1]]


class Subspace:
    """A linear subspace of R^n held as an orthonormal frame (n x d columns).

    Construction orthonormalizes the given spanning vectors; rank-deficient
    input is rejected rather than silently reducing the dimension.  Equality
    is span-equality (mutual projection residual below 1e-9).
    """

    __slots__ = ("ambient_dim", "frame")

    def __init__(self, vectors, ambient_dim: int | None = None):
        frame = _orthonormalize(vectors)
        n = frame.shape[0]
        if ambient_dim is not None and ambient_dim != n:
            raise ValueError(f"ambient dimension mismatch: {ambient_dim} != {n}")
        if not (1 <= frame.shape[1] <= n):
            raise ValueError("need 1 <= dim <= ambient_dim")
        frame.setflags(write=False)
        object.__setattr__(self, "ambient_dim", n)
        object.__setattr__(self, "frame", frame)

    def __setattr__(self, name, value):
        raise AttributeError("Subspace is immutable")

    @classmethod
    def from_spanning(cls, vectors: Sequence[Sequence[float]]) -> "Subspace":
        """Subspace spanned by a list of vectors (vectors given as rows)."""
        return cls(np.asarray(vectors, dtype=float).T)

    @classmethod
    def coordinate(cls, ambient_dim: int, indices: Sequence[int]) -> "Subspace":
        """Span of the listed coordinate axes."""
        frame = np.zeros((ambient_dim, len(indices)))
        for j, i in enumerate(indices):
            frame[i, j] = 1.0
        return cls(frame)

    @classmethod
    def from_json(cls, obj: dict) -> "Subspace":
        return cls(np.asarray(obj["basis"], dtype=float).T, ambient_dim=int(obj["ambient_dim"]))

    def to_json(self) -> dict:
        return {"ambient_dim": self.ambient_dim, "basis": self.frame.T.tolist()}

    @property
    def dim(self) -> int:
        return self.frame.shape[1]

    def project(self, x: np.ndarray) -> np.ndarray:
        """Orthogonal projection of a vector (or stacked vectors) onto the span."""
        return self.frame @ (self.frame.T @ x)

    def complement(self) -> "Subspace":
        """Orthogonal complement; raises for the full space."""
        if self.dim == self.ambient_dim:
            raise ValueError("the full space has no nonzero complement")
        u, _, _ = np.linalg.svd(self.frame, full_matrices=True)
        return Subspace(u[:, self.dim :])

    def span_equal(self, other: "Subspace", tol: float = 1e-9) -> bool:
        if self.ambient_dim != other.ambient_dim or self.dim != other.dim:
            return False
        a, b = self.frame, other.frame
        res_a = a - b @ (b.T @ a)
        res_b = b - a @ (a.T @ b)
        return max(np.abs(res_a).max(), np.abs(res_b).max()) <= tol

    def __eq__(self, other) -> bool:
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.span_equal(other)

    __hash__ = None

    def __repr__(self) -> str:
        return f"Subspace(ambient_dim={self.ambient_dim}, dim={self.dim})"


class ComplexStructure:
    """A linear complex structure J on R^(2n): a real matrix with J^2 = -I."""

    __slots__ = ("ambient_dim", "matrix")

    def __init__(self, matrix):
        j = np.asarray(matrix, dtype=float)
        if j.ndim != 2 or j.shape[0] != j.shape[1]:
            raise ValueError("J must be a square matrix")
        n = j.shape[0]
        if n % 2 != 0:
            raise ValueError("a complex structure needs even ambient dimension")
        if np.abs(j @ j + np.eye(n)).max() > 1e-12:
            raise ValueError("J^2 != -I")
        j = j.copy()
        j.setflags(write=False)
        object.__setattr__(self, "ambient_dim", n)
        object.__setattr__(self, "matrix", j)

    def __setattr__(self, name, value):
        raise AttributeError("ComplexStructure is immutable")

    @classmethod
    def standard(cls, ambient_dim: int) -> "ComplexStructure":
        """The block structure sending e_(2i-1) to e_(2i)."""
        if ambient_dim % 2 != 0:
            raise ValueError("a complex structure needs even ambient dimension")
        j = np.zeros((ambient_dim, ambient_dim))
        for i in range(0, ambient_dim, 2):
            j[i + 1, i] = 1.0
            j[i, i + 1] = -1.0
        return cls(j)

    def apply(self, subspace: Subspace) -> Subspace:
        if subspace.ambient_dim != self.ambient_dim:
            raise ValueError("ambient dimensions differ")
        return Subspace(self.matrix @ subspace.frame)


@dataclass(frozen=True)
class TransversalitySample:
    """One quantitative-transversality probe: a distance to the target locus
    plus the pushed-forward tangent plane and the local distribution plane."""

    distance: float
    tangent_image: Subspace
    distribution_plane: Subspace

    def __post_init__(self):
        if self.distance < 0:
            raise ValueError("distance must be nonnegative")
        if self.tangent_image.ambient_dim != self.distribution_plane.ambient_dim:
            raise ValueError("sample subspaces live in different ambient spaces")


def angle_between_vectors(u, v) -> float:
    """Angle in [0, pi] between two nonzero vectors."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    nu, nv = np.linalg.norm(u), np.linalg.norm(v)
    if nu == 0.0 or nv == 0.0:
        raise ValueError("angle with the zero vector is undefined")
    return _clamped_arccos(float(u @ v) / (nu * nv))


def angle_vector_subspace(u, v_space: Subspace) -> float:
    """Angle in [0, pi/2] between a nonzero vector and a subspace.

    Computed as atan2(|u - p|, |p|) with p the orthogonal projection; when
    |p| <= 1e-12 |u| the angle is pi/2 by convention.
    """
    u = np.asarray(u, dtype=float)
    nu = np.linalg.norm(u)
    if nu == 0.0:
        raise ValueError("angle with the zero vector is undefined")
    p = v_space.project(u)
    np_ = np.linalg.norm(p)
    if np_ <= PROJECTION_EPS * nu:
        return math.pi / 2
    return math.atan2(float(np.linalg.norm(u - p)), float(np_))


def max_angle(u_space: Subspace, v_space: Subspace) -> float:
    """Largest angle a unit vector of U makes with V.

    Reduction: the cosines of the principal angles of (U, V) are the
    singular values of B^T A; as an operator on U that matrix has dim U
    singular values, of which dim U - dim V are zero when dim U > dim V.
    The maximum angle is arccos of the smallest of them.
    """
    if u_space.ambient_dim != v_space.ambient_dim:
        raise ValueError("ambient dimensions differ")
    if u_space.dim > v_space.dim:
        return math.pi / 2
    s = np.linalg.svd(v_space.frame.T @ u_space.frame, compute_uv=False)
    return _clamped_arccos(float(s[-1]))


def intersect(u_space: Subspace, v_space: Subspace, tol: float = 1e-9, dim: int | None = None) -> Subspace | None:
    """Intersection of two subspaces, or None when it is zero.

    The intersection is read off the principal-vector pairs whose principal
    cosine exceeds 1 - tol; passing ``dim`` overrides the threshold and
    keeps exactly the best ``dim`` pairs.
    """
    if u_space.ambient_dim != v_space.ambient_dim:
        raise ValueError("ambient dimensions differ")
    if tol <= 0:
        raise ValueError("tol must be positive")
    a, b = u_space.frame, v_space.frame
    w, s, _ = np.linalg.svd(b.T @ a)
    if dim is None:
        count = int(np.sum(s > 1.0 - tol))
    else:
        count = dim
    if count == 0:
        return None
    directions = b @ w[:, :count]
    return Subspace(directions)


def _complement_within(space: Subspace, inner: Subspace | None) -> Subspace | None:
    """Orthogonal complement of ``inner`` inside ``space`` (None if empty)."""
    if inner is None:
        return space
    if inner.dim >= space.dim:
        return None
    residual = space.frame - inner.project(space.frame)
    u, s, _ = np.linalg.svd(residual, full_matrices=False)
    keep = space.dim - inner.dim
    return Subspace(u[:, :keep])


def min_angle(u_space: Subspace, v_space: Subspace, tol: float = 1e-9) -> float:
    """Minimum (transversality) angle of a pair of subspaces.

    Zero when dim U + dim V < n, and when U + V is not all of R^n (decided
    by the rank of the stacked frames with threshold tol).  Otherwise the
    intersection W is split off and the result is the smallest angle a unit
    vector of the complement of W in U makes with the complement in V.  See
    :func:`min_angle_perp` for the dual computation route.
    """
    if u_space.ambient_dim != v_space.ambient_dim:
        raise ValueError("ambient dimensions differ")
    if tol <= 0:
        raise ValueError("tol must be positive")
    n = u_space.ambient_dim
    if u_space.dim + v_space.dim < n:
        return 0.0
    stacked = np.hstack([u_space.frame, v_space.frame])
    s = np.linalg.svd(stacked, compute_uv=False)
    if s[n - 1] <= tol:
        return 0.0
    w = intersect(u_space, v_space, tol)
    u_c = _complement_within(u_space, w)
    v_c = _complement_within(v_space, w)
    if u_c is None or v_c is None:
        # one subspace contains the intersection entirely (e.g. U inside V);
        # transversality then forces the other to be the whole space
        return math.pi / 2
    sv = np.linalg.svd(v_c.frame.T @ u_c.frame, compute_uv=False)
    return _clamped_arccos(float(sv[0]))


def min_angle_perp(u_space: Subspace, v_space: Subspace) -> float:
    """Minimum angle via the orthogonal complements.

    For any pair, the minimum angle equals the smallest principal angle
    between U^perp and V^perp, i.e. arccos of the largest singular value of
    the product of the perpendicular frames.  Degenerate full-space inputs
    give pi/2 (empty minimum).
    """
    if u_space.ambient_dim != v_space.ambient_dim:
        raise ValueError("ambient dimensions differ")
    n = u_space.ambient_dim
    if u_space.dim == n or v_space.dim == n:
        return math.pi / 2
    cu = u_space.complement()
    cv = v_space.complement()
    s = np.linalg.svd(cv.frame.T @ cu.frame, compute_uv=False)
    return _clamped_arccos(float(s[0]))


def complex_angle(v_space: Subspace, j: ComplexStructure) -> float:
    """Complex angle of an even-dimensional subspace: max angle of V against JV."""
    if v_space.dim % 2 != 0:
        raise ValueError("the complex angle needs an even-dimensional subspace")
    return max_angle(v_space, j.apply(v_space))


def is_complex_subspace(v_space: Subspace, j: ComplexStructure, tol: float = 1e-9) -> bool:
    return complex_angle(v_space, j) <= tol


def is_symplectic_subspace(v_space: Subspace, j: ComplexStructure, tol: float = 1e-9) -> bool:
    return complex_angle(v_space, j) < math.pi / 2 - tol


class HolomorphicityFit(NamedTuple):
    """Least-squares decay fit of complex angles along a sequence of planes."""

    constant: float
    exponent: float
    passes: bool
    exactly_holomorphic: bool
    samples_used: int


def asymptotic_holomorphicity_rate(
    samples: Sequence[tuple[int, Subspace]], j: ComplexStructure, slack: float = 0.1
) -> HolomorphicityFit:
    """Fit log(complex angle) against log k and test for O(k^(-1/2)) decay.

    Samples with zero angle are dropped; when all are zero the sequence is
    reported as exactly holomorphic.  The fit passes when the estimated
    exponent is at most -1/2 + slack.
    """
    if len(samples) < 3:
        raise ValueError("need at least 3 samples")
    ks = [k for k, _ in samples]
    if any(k2 <= k1 for k1, k2 in zip(ks, ks[1:])):
        raise ValueError("sample indices must be strictly increasing")
    pairs = []
    for k, v_space in samples:
        beta = complex_angle(v_space, j)
        if beta > PROJECTION_EPS:
            pairs.append((math.log(k), math.log(beta)))
    if not pairs:
        return HolomorphicityFit(0.0, 0.0, True, True, 0)
    xs = np.array([p[0] for p in pairs])
    ys = np.array([p[1] for p in pairs])
    slope, intercept = np.polyfit(xs, ys, 1)
    return HolomorphicityFit(
        constant=float(math.exp(intercept)),
        exponent=float(slope),
        passes=bool(slope <= -0.5 + slack),
        exactly_holomorphic=False,
        samples_used=len(pairs),
    )


class SigmaTransverseResult(NamedTuple):
    ok: bool
    first_violation: int | None


def check_sigma_transverse(
    samples: Sequence[TransversalitySample], sigma: float, tol: float = 1e-9
) -> SigmaTransverseResult:
    """Quantitative transversality test over a set of samples.

    Passes iff every sample closer than sigma to the target locus has
    minimum angle greater than sigma - tol between the tangent image and
    the distribution plane.
    """
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    for i, sample in enumerate(samples):
        if sample.distance < sigma:
            ang = min_angle(sample.tangent_image, sample.distribution_plane)
            if not ang > sigma - tol:
                return SigmaTransverseResult(False, i)
    return SigmaTransverseResult(True, None)


class BridgeBound(NamedTuple):
    """Norm of the minimal right inverse of the projection U -> V^perp, the
    derived lower bound on the minimum angle, and the observed minimum angle."""

    theta_norm: float
    angle_lower_bound: float
    observed: float


def bridge_angle_bound(u_space: Subspace, v_space: Subspace) -> BridgeBound:
    """Lower bound on the minimum angle from the projection h: U -> V^perp.

    When h is onto, its minimal-norm right inverse theta satisfies
    min_angle(U, V) > 1/|theta|; |theta| is 1/sigma_min of the matrix of h in
    orthonormal frames.  When h is not onto (rank checked against 1e-12) the
    bound degenerates to (inf, 0, observed).
    """
    if u_space.ambient_dim != v_space.ambient_dim:
        raise ValueError("ambient dimensions differ")
    if v_space.dim == v_space.ambient_dim:
        raise ValueError("V^perp is zero; the projection bound is vacuous")
    c = v_space.complement()
    h = c.frame.T @ u_space.frame  # dim V^perp x dim U
    s = np.linalg.svd(h, compute_uv=False)
    observed = min_angle(u_space, v_space)
    onto = u_space.dim >= c.dim and s[c.dim - 1] > 1e-12
    if not onto:
        return BridgeBound(math.inf, 0.0, observed)
    gamma = float(s[c.dim - 1])
    return BridgeBound(1.0 / gamma, gamma, observed)


def random_subspace(rng: np.random.Generator, ambient_dim: int, dim: int) -> Subspace:
    """Haar-random subspace from the QR factor of a Gaussian matrix."""
    g = rng.standard_normal((ambient_dim, dim))
    q, _ = np.linalg.qr(g)
    return Subspace(q)
