"""Exact characteristic-class calculus for determinantal loci.

Cohomology is modeled as the truncated ring Q[k][h] / (h^(n+1)), where h is
the degree-2 generator (the symplectic class divided by 2*pi) and k is a
symbolic twist exponent.  Every coefficient is an exact rational polynomial
in k; no floating point enters anywhere in this module.

Provides total Chern classes of twisted bundles, formal difference classes
c(F - E), Porteous/Schur determinants, the Harris-Tu Chern-number formulas
for determinantal loci of complex dimension 1 and 2, zero-locus invariants
for comparison, and the two worked example families.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

__all__ = [
    "KPoly",
    "CohomologyClass",
    "BundleSpec",
    "DeterminantalProblem",
    "InvariantEntry",
    "InvariantReport",
    "ExampleRow",
    "twist_chern",
    "twist_by_line_power",
    "dual_chern",
    "difference_chern",
    "porteous_delta",
    "integrate_raw",
    "integrate",
    "harris_tu_n1",
    "harris_tu_n11_n2",
    "determinantal_invariants",
    "zero_locus_invariants",
    "example_tables",
    "cross_k_isotopy_check",
    "cp_leading_coefficient",
]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"not an exact rational: {x!r}")


class KPoly:
    """Dense polynomial in the twist symbol k with Fraction coefficients.

    Immutable; coefficients are stored low degree first with trailing zeros
    stripped, so the zero polynomial has an empty coefficient tuple.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("KPoly is immutable")

    @classmethod
    def const(cls, c) -> "KPoly":
        return cls((c,))

    @classmethod
    def k(cls, power: int = 1) -> "KPoly":
        """The monomial k**power."""
        return cls((0,) * power + (1,))

    @property
    def degree(self) -> int:
        """Degree of the polynomial; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def coeff(self, j: int) -> Fraction:
        return self.coeffs[j] if 0 <= j < len(self.coeffs) else Fraction(0)

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = KPoly((other,))
        if not isinstance(other, KPoly):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other) -> "KPoly":
        if isinstance(other, (int, Fraction)):
            other = KPoly((other,))
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return KPoly(out)

    __radd__ = __add__

    def __neg__(self) -> "KPoly":
        return KPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other) -> "KPoly":
        if isinstance(other, (int, Fraction)):
            other = KPoly((other,))
        return self + (-other)

    def __rsub__(self, other) -> "KPoly":
        return (-self) + other

    def __mul__(self, other) -> "KPoly":
        if isinstance(other, (int, Fraction)):
            return KPoly(tuple(c * other for c in self.coeffs))
        if not isinstance(other, KPoly):
            return NotImplemented
        if not self.coeffs or not other.coeffs:
            return KPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return KPoly(out)

    __rmul__ = __mul__

    def __pow__(self, p: int) -> "KPoly":
        if p < 0:
            raise ValueError("negative power")
        out = KPoly((1,))
        for _ in range(p):
            out = out * self
        return out

    def __call__(self, x):
        """Evaluate at an exact rational point."""
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __repr__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for j, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if j == 0:
                terms.append(str(c))
            elif j == 1:
                terms.append(f"{c}*k")
            else:
                terms.append(f"{c}*k^{j}")
        return " + ".join(terms)


_ZERO = KPoly()
_ONE = KPoly((1,))


class CohomologyClass:
    """Element of Q[k][h] / (h^(n+1)): one KPoly coefficient per h-degree."""

    __slots__ = ("n", "coeffs")

    def __init__(self, n: int, coeffs: Sequence[KPoly] | None = None):
        if n < 0:
            raise ValueError("truncation degree must be nonnegative")
        object.__setattr__(self, "n", n)
        cs = list(coeffs) if coeffs is not None else []
        if len(cs) > n + 1:
            cs = cs[: n + 1]
        cs = [c if isinstance(c, KPoly) else KPoly((c,)) for c in cs]
        cs += [_ZERO] * (n + 1 - len(cs))
        object.__setattr__(self, "coeffs", tuple(cs))

    def __setattr__(self, name, value):
        raise AttributeError("CohomologyClass is immutable")

    @classmethod
    def zero(cls, n: int) -> "CohomologyClass":
        return cls(n)

    @classmethod
    def one(cls, n: int) -> "CohomologyClass":
        return cls(n, [_ONE])

    @classmethod
    def h_power(cls, n: int, d: int, coeff=1) -> "CohomologyClass":
        """The class coeff * h^d (coeff may be a rational or a KPoly)."""
        if d < 0:
            raise ValueError("negative degree")
        if d > n:
            return cls(n)
        cs = [_ZERO] * (d + 1)
        cs[d] = coeff if isinstance(coeff, KPoly) else KPoly((coeff,))
        return cls(n, cs)

    @classmethod
    def omega_k(cls, n: int) -> "CohomologyClass":
        """The rescaled symplectic class k*h."""
        return cls.h_power(n, 1, KPoly.k())

    @classmethod
    def from_rationals(cls, n: int, data: Sequence) -> "CohomologyClass":
        """Class sum_d data[d] * h^d from a list of rationals (or 'p/q' strings)."""
        return cls(n, [KPoly((_frac(x),)) for x in data])

    def coeff(self, d: int) -> KPoly:
        return self.coeffs[d] if 0 <= d <= self.n else _ZERO

    def degree_part(self, d: int) -> "CohomologyClass":
        return CohomologyClass.h_power(self.n, d, self.coeff(d)) if d <= self.n else CohomologyClass(self.n)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_homogeneous(self, d: int) -> bool:
        return all(not c for j, c in enumerate(self.coeffs) if j != d)

    def __eq__(self, other) -> bool:
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return self.n == other.n and self.coeffs == other.coeffs

    def __hash__(self):
        return hash((self.n, self.coeffs))

    def _check(self, other: "CohomologyClass"):
        if self.n != other.n:
            raise ValueError("truncation degrees differ")

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        self._check(other)
        return CohomologyClass(self.n, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    def __sub__(self, other: "CohomologyClass") -> "CohomologyClass":
        self._check(other)
        return CohomologyClass(self.n, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __neg__(self) -> "CohomologyClass":
        return CohomologyClass(self.n, [-a for a in self.coeffs])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction, KPoly)):
            return CohomologyClass(self.n, [a * other for a in self.coeffs])
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        self._check(other)
        out = [_ZERO] * (self.n + 1)
        for i, a in enumerate(self.coeffs):
            if not a:
                continue
            for j in range(self.n + 1 - i):
                b = other.coeffs[j]
                if b:
                    out[i + j] = out[i + j] + a * b
        return CohomologyClass(self.n, out)

    __rmul__ = __mul__

    def __pow__(self, p: int) -> "CohomologyClass":
        if p < 0:
            raise ValueError("negative power")
        out = CohomologyClass.one(self.n)
        for _ in range(p):
            out = out * self
        return out

    def inverse(self) -> "CohomologyClass":
        """Multiplicative inverse of a class with unit degree-0 part."""
        if self.coeffs[0] != _ONE:
            raise ValueError("inverse requires degree-0 coefficient 1")
        inv = [_ONE] + [_ZERO] * self.n
        for d in range(1, self.n + 1):
            acc = _ZERO
            for i in range(1, d + 1):
                if self.coeffs[i]:
                    acc = acc + self.coeffs[i] * inv[d - i]
            inv[d] = -acc
        return CohomologyClass(self.n, inv)

    def __repr__(self) -> str:
        parts = [f"({c!r})*h^{d}" for d, c in enumerate(self.coeffs) if c]
        return " + ".join(parts) if parts else "0"


@dataclass(frozen=True)
class BundleSpec:
    """A complex bundle given by its rank and total Chern class.

    The total class lives in the ambient truncated ring; components above
    the rank must vanish and the degree-0 component must be 1.
    """

    rank: int
    total: CohomologyClass

    def __post_init__(self):
        if self.rank < 0:
            raise ValueError("rank must be nonnegative")
        if self.total.coeffs[0] != _ONE:
            raise ValueError("total Chern class must start with 1")
        for d in range(self.rank + 1, self.total.n + 1):
            if self.total.coeffs[d]:
                raise ValueError(f"c_{d} nonzero for a rank-{self.rank} bundle")

    @classmethod
    def trivial(cls, rank: int, n: int) -> "BundleSpec":
        return cls(rank, CohomologyClass.one(n))

    @classmethod
    def from_rationals(cls, rank: int, n: int, data: Sequence) -> "BundleSpec":
        """Bundle with c_d = data[d] * h^d; data[0] must be 1 (or omitted)."""
        vals = list(data)
        if not vals:
            vals = [1]
        return cls(rank, CohomologyClass.from_rationals(n, vals))

    @property
    def n(self) -> int:
        return self.total.n

    def c(self, p: int) -> CohomologyClass:
        """The p-th Chern class as a homogeneous class."""
        return self.total.degree_part(p)


def twist_chern(bundle: BundleSpec, line_c1: CohomologyClass) -> BundleSpec:
    """Total Chern class of bundle tensor a line bundle with first class line_c1.

    Splitting principle:  c_p(E (x) L) = sum_i C(rank-i, p-i) c_i(E) t^(p-i)
    with t = c_1(L).  line_c1 must be homogeneous of h-degree 1.
    """
    if not line_c1.is_homogeneous(1):
        raise ValueError("line_c1 must be homogeneous of degree 1")
    n = bundle.n
    if line_c1.n != n:
        raise ValueError("truncation degrees differ")
    t = line_c1.coeff(1)  # KPoly multiplying h
    r = bundle.rank
    tp = [_ONE]
    for _ in range(n):
        tp.append(tp[-1] * t)
    out = [_ZERO] * (n + 1)
    for p in range(n + 1):
        acc = _ZERO
        for i in range(p + 1):
            ci = bundle.total.coeffs[i]
            if not ci:
                continue
            b = math.comb(r - i, p - i) if r - i >= p - i else 0
            if b:
                acc = acc + ci * tp[p - i] * b
        out[p] = acc
    return BundleSpec(bundle.rank, CohomologyClass(n, out))


def twist_by_line_power(bundle: BundleSpec, power: int) -> BundleSpec:
    """Twist by the power-th tensor power of the prequantum line bundle.

    power=+1 gives E (x) L^k (first class k*h), power=-1 gives E (x) (L*)^k.
    """
    t = CohomologyClass.h_power(bundle.n, 1, KPoly((0, power)))
    return twist_chern(bundle, t)


def dual_chern(bundle: BundleSpec) -> BundleSpec:
    """Dual bundle: c_p(E*) = (-1)^p c_p(E)."""
    cs = [c if d % 2 == 0 else -c for d, c in enumerate(bundle.total.coeffs)]
    return BundleSpec(bundle.rank, CohomologyClass(bundle.n, cs))


def difference_chern(f_bundle: BundleSpec, e_bundle: BundleSpec) -> CohomologyClass:
    """Total class of the formal difference F - E, i.e. c(F)/c(E) truncated."""
    return f_bundle.total * e_bundle.total.inverse()


def _delta_general(c: CohomologyClass, q: int, parts: Sequence[int], size: int) -> CohomologyClass:
    """Determinant det( c_{q + parts[a] + (b-a)} ) of the given size.

    parts is padded with zeros up to size; c_j = 0 for j < 0 is implied by
    the lookup.  Expansion is over permutations, which is exact and cheap at
    the sizes that occur here.
    """
    lam = list(parts) + [0] * (size - len(parts))
    n = c.n
    total_deg = size * q + sum(lam)
    if total_deg > n or total_deg < 0:
        return CohomologyClass(n)

    def entry(a: int, b: int) -> KPoly:
        j = q + lam[a] + (b - a)
        if j < 0 or j > n:
            return _ZERO
        return c.coeffs[j]

    acc = _ZERO
    for perm, sign in _signed_permutations(size):
        term = _ONE
        for a in range(size):
            e = entry(a, perm[a])
            if not e:
                term = _ZERO
                break
            term = term * e
        if term:
            acc = acc + (term if sign > 0 else -term)
    return CohomologyClass.h_power(n, total_deg, acc)


def _signed_permutations(size: int):
    """All permutations of range(size) with their signs."""
    import itertools

    base = list(range(size))
    for perm in itertools.permutations(base):
        inv = 0
        for i in range(size):
            for j in range(i + 1, size):
                if perm[i] > perm[j]:
                    inv += 1
        yield perm, (1 if inv % 2 == 0 else -1)


def porteous_delta(
    c: CohomologyClass, r_e: int, r_f: int, r: int, indices: Sequence[int] = ()
) -> CohomologyClass:
    """Schur-type determinant Delta_{i1,...} in the components of c = c(F-E).

    The matrix has size r_e - r with entry (a, b) = c_{r_f - r + i_a + (b-a)},
    indices padded with zeros; components with negative subscript vanish.
    The result is homogeneous of h-degree (r_e-r)(r_f-r) + sum(indices).
    """
    size = r_e - r
    if size < 1:
        raise ValueError("matrix size r_e - r must be at least 1")
    idx = list(indices)
    if len(idx) > size:
        if any(i != 0 for i in idx[size:]):
            raise ValueError("more nonzero indices than the matrix size")
        idx = idx[:size]
    return _delta_general(c, r_f - r, idx, size)


@dataclass(frozen=True)
class DeterminantalProblem:
    """Input data for the Chern numbers of a rank-r degeneracy locus.

    The locus lives in a manifold of complex dimension n and comes from a
    generic morphism E (x) (L*)^k -> F (x) L^k; tm carries the Chern data of
    the tangent bundle.
    """

    n: int
    e_bundle: BundleSpec
    f_bundle: BundleSpec
    r: int
    tm: BundleSpec | None = None

    def __post_init__(self):
        if not (0 <= self.r < min(self.e_bundle.rank, self.f_bundle.rank)):
            raise ValueError("need 0 <= r < min(rank E, rank F)")
        if self.codim > self.n:
            raise ValueError("expected codimension exceeds the dimension")
        if self.tm is not None and self.tm.rank != self.n:
            raise ValueError("tangent bundle rank must equal n")
        for b in (self.e_bundle, self.f_bundle):
            if b.n != self.n:
                raise ValueError("bundle truncation degree must equal n")

    @property
    def r_e(self) -> int:
        return self.e_bundle.rank

    @property
    def r_f(self) -> int:
        return self.f_bundle.rank

    @property
    def codim(self) -> int:
        """Expected complex codimension (r_e - r)(r_f - r)."""
        return (self.r_e - self.r) * (self.r_f - self.r)

    @property
    def locus_dim(self) -> int:
        return self.n - self.codim

    def tangent(self) -> BundleSpec:
        return self.tm if self.tm is not None else BundleSpec.trivial(self.n, self.n)

    def twisted(self) -> tuple[BundleSpec, BundleSpec]:
        """The twisted pair (E (x) (L*)^k, F (x) L^k)."""
        return twist_by_line_power(self.e_bundle, -1), twist_by_line_power(self.f_bundle, +1)


@dataclass(frozen=True)
class InvariantEntry:
    """One integrated invariant: exact k-expansion and its normalized form.

    raw is the degree-n coefficient a(k) of the integrand; the normalized
    series is a(k)/k^n, a Laurent polynomial in 1/k whose constant term
    (`leading`) is the large-k ratio to the manifold volume.
    """

    name: str
    raw: KPoly
    n: int

    @property
    def leading(self) -> Fraction:
        return self.raw.coeff(self.n)

    @property
    def leading_power(self) -> int:
        return self.raw.degree

    def normalized(self) -> tuple[Fraction, ...]:
        """Coefficients (c_0, c_1, ...) of sum_j c_j * k^(-j)."""
        return tuple(self.raw.coeff(self.n - j) for j in range(self.n + 1))

    def to_json(self) -> dict:
        return {
            "name": self.name,
            "raw_coeffs": [str(c) for c in self.raw.coeffs],
            "leading": str(self.leading),
            "leading_power": self.leading_power,
            "normalized": [str(c) for c in self.normalized()],
        }


def integrate_raw(cls: CohomologyClass) -> KPoly:
    """Pairing with the fundamental class: the coefficient of h^n."""
    return cls.coeffs[cls.n]


def integrate(cls: CohomologyClass, vol_normalization: str = "per-unit-vol", name: str = "") -> InvariantEntry:
    """Integrate and report in units of the manifold volume int (k h)^n.

    The raw degree-n coefficient a(k) is kept alongside the normalized
    Laurent expansion a(k)/k^n; the constant term of the latter is the
    k -> infinity value of the ratio.
    """
    if vol_normalization != "per-unit-vol":
        raise ValueError(f"unknown normalization {vol_normalization!r}")
    return InvariantEntry(name=name, raw=integrate_raw(cls), n=cls.n)


def _c1_of(bundle: BundleSpec) -> CohomologyClass:
    return bundle.c(1)


def harris_tu_n1(problem: DeterminantalProblem) -> InvariantEntry:
    """Chern number n_1 = <c_1, [D_r]> of a dimension-1 determinantal locus.

    Evaluates (c_1(M) + (r_e-r) c_1(E-F)) Delta + (r_e-r_f) Delta_1 for the
    twisted morphism, with c_1(E-F) = c_1(E) - c_1(F).
    """
    if problem.locus_dim != 1:
        raise ValueError("n_1 formula requires locus dimension 1")
    e_tw, f_tw = problem.twisted()
    c = difference_chern(f_tw, e_tw)
    re, rf, r = problem.r_e, problem.r_f, problem.r
    delta = porteous_delta(c, re, rf, r)
    delta1 = porteous_delta(c, re, rf, r, (1,))
    c1_ef = _c1_of(e_tw) - _c1_of(f_tw)
    c1_m = _c1_of(problem.tangent())
    total = (c1_m + (re - r) * c1_ef) * delta + (re - rf) * delta1
    return integrate(total, name="n1")


def harris_tu_n11_n2(problem: DeterminantalProblem) -> tuple[InvariantEntry, InvariantEntry]:
    """Chern numbers (n_11, n_2) of a dimension-2 determinantal locus.

    n_11 = <c_1^2, [D_r]> and n_2 = <c_2, [D_r]>, expanded in the Schur
    determinants Delta, Delta_1, Delta_2, Delta_11 of the twisted difference
    class.  When r_e - r = 1 the Delta_11 block does not fit in the matrix;
    its two-row determinant has h-degree 2(n-1) > n and truncates to zero.
    """
    if problem.locus_dim != 2:
        raise ValueError("n_11/n_2 formulas require locus dimension 2")
    e_tw, f_tw = problem.twisted()
    c = difference_chern(f_tw, e_tw)
    re, rf, r = problem.r_e, problem.r_f, problem.r
    q = rf - r
    size = re - r
    delta = _delta_general(c, q, (), size)
    delta1 = _delta_general(c, q, (1,), size)
    delta2 = _delta_general(c, q, (2,), size)
    delta11 = _delta_general(c, q, (1, 1), max(size, 2))

    tm = problem.tangent()
    c1_m, c2_m = tm.c(1), tm.c(2)
    c1_e, c2_e = e_tw.c(1), e_tw.c(2)
    c1_f, c2_f = f_tw.c(1), f_tw.c(2)
    c1_ef = c1_e - c1_f
    a = re - r
    s = re - rf

    lin = c1_m + a * c1_ef
    n11_cls = lin * lin * delta + 2 * s * (lin * delta1) + s * s * (delta2 + delta11)

    quad = (
        c2_m
        + a * (c1_m * c1_ef)
        + a * (c2_e - c2_f)
        + math.comb(a, 2) * (c1_e * c1_e)
        - (a * a) * (c1_e * c1_f)
        + math.comb(a + 1, 2) * (c1_f * c1_f)
    )
    n2_cls = (
        quad * delta
        + (a * c1_m + (a * s - 1) * c1_ef) * delta1
        + Fraction(s * s + a + (rf - r) - 2, 2) * delta2
        + Fraction(s * s - a - (rf - r) - 2, 2) * delta11
    )
    return integrate(n11_cls, name="n11"), integrate(n2_cls, name="n2")


@dataclass(frozen=True)
class InvariantReport:
    """Volume and Chern-number invariants of one locus, all exact in k."""

    kind: str
    n: int
    entries: dict = field(default_factory=dict)

    def entry(self, name: str) -> InvariantEntry:
        return self.entries[name]

    def leading(self, name: str) -> Fraction:
        return self.entries[name].leading

    def quotient(self, num: str, den: str) -> Fraction | None:
        """Leading-order ratio of two invariants; None if the denominator vanishes."""
        d = self.leading(den)
        if d == 0:
            return None
        return self.leading(num) / d

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "n": self.n,
            "entries": {k: v.to_json() for k, v in sorted(self.entries.items())},
        }


def determinantal_invariants(problem: DeterminantalProblem) -> InvariantReport:
    """Volume plus the Harris-Tu numbers appropriate to the locus dimension."""
    e_tw, f_tw = problem.twisted()
    c = difference_chern(f_tw, e_tw)
    delta = porteous_delta(c, problem.r_e, problem.r_f, problem.r)
    omega = CohomologyClass.omega_k(problem.n)
    vol = integrate(delta * omega ** problem.locus_dim, name="vol")
    entries = {"vol": vol}
    if problem.locus_dim == 1:
        entries["n1"] = harris_tu_n1(problem)
    elif problem.locus_dim == 2:
        n11, n2 = harris_tu_n11_n2(problem)
        entries["n11"] = n11
        entries["n2"] = n2
    return InvariantReport(kind="determinantal", n=problem.n, entries=entries)


def zero_locus_invariants(
    n: int, twisted_bundle: BundleSpec, tm: BundleSpec | None = None
) -> InvariantReport:
    """Invariants of the zero set of a transverse section of a twisted bundle.

    With G the (already twisted) bundle and Z its zero locus:
    vol = c_top(G) omega_k^(n - rank), n_1 = c_1(TM-G) c_top(G),
    n_11 = c_1(TM-G)^2 c_top(G), n_2 = c_2(TM-G) c_top(G); entries whose
    h-degree misses n integrate to zero.
    """
    g = twisted_bundle
    if g.rank >= n:
        raise ValueError("rank must be below n for a positive-dimensional zero locus")
    if g.n != n:
        raise ValueError("bundle truncation degree must equal n")
    tangent = tm if tm is not None else BundleSpec.trivial(n, n)
    if tangent.rank != n:
        raise ValueError("tangent bundle rank must equal n")
    ctop = g.c(g.rank)
    diff = difference_chern(tangent, g)
    c1 = diff.degree_part(1)
    c2 = diff.degree_part(2)
    omega = CohomologyClass.omega_k(n)
    z_dim = n - g.rank
    entries = {
        "vol": integrate(ctop * omega ** z_dim, name="vol"),
        "n1": integrate(c1 * ctop, name="n1"),
        "n11": integrate(c1 * c1 * ctop, name="n11"),
        "n2": integrate(c2 * ctop, name="n2"),
    }
    return InvariantReport(kind="zero-locus", n=n, entries=entries)


def cross_k_isotopy_check(which: int, n: int) -> bool:
    """Whether a determinantal curve can match a zero-locus curve across twists.

    Matching the volume and n_1 leading terms at possibly different twist
    exponents forces (1-n) n 2^(n-1) = -2 - 2n + 4/n; the test is exact.
    """
    if which != 1:
        raise ValueError("cross-twist matching is defined for example family 1")
    if n < 2:
        raise ValueError("need n >= 2")
    lhs = Fraction(1 - n) * n * 2 ** (n - 1)
    rhs = Fraction(-2) - 2 * n + Fraction(4, n)
    return lhs == rhs


@dataclass(frozen=True)
class ExampleRow:
    """One table row: determinantal and zero-locus invariants at dimension n."""

    which: int
    n: int
    determinantal: InvariantReport
    auroux: InvariantReport
    distinct: bool
    cross_k_match: bool | None

    def ratios(self) -> dict:
        det, aur = self.determinantal, self.auroux
        out: dict[str, Fraction | None] = {}
        if self.which == 1:
            out["det_n1_over_vol"] = det.quotient("n1", "vol")
            out["aur_n1_over_vol"] = aur.quotient("n1", "vol")
        else:
            out["det_n11_over_vol"] = det.quotient("n11", "vol")
            out["det_n2_over_vol"] = det.quotient("n2", "vol")
            out["det_n2_over_n11"] = det.quotient("n2", "n11")
            out["aur_n11_over_vol"] = aur.quotient("n11", "vol")
            out["aur_n2_over_vol"] = aur.quotient("n2", "vol")
            out["aur_n2_over_n11"] = aur.quotient("n2", "n11")
        return out

    def to_json(self) -> dict:
        return {
            "which": self.which,
            "n": self.n,
            "determinantal": self.determinantal.to_json(),
            "auroux": self.auroux.to_json(),
            "ratios": {k: (str(v) if v is not None else None) for k, v in self.ratios().items()},
            "distinct": self.distinct,
            "cross_k_match": self.cross_k_match,
        }


def _example_problem(which: int, n: int) -> DeterminantalProblem:
    if which == 1:
        if n < 2:
            raise ValueError("example family 1 needs n >= 2")
        r_f = n
    elif which == 2:
        if n < 3:
            raise ValueError("example family 2 needs n >= 3")
        r_f = n - 1
    else:
        raise ValueError("which must be 1 or 2")
    return DeterminantalProblem(
        n=n,
        e_bundle=BundleSpec.trivial(2, n),
        f_bundle=BundleSpec.trivial(r_f, n),
        r=1,
    )


def example_tables(which: int, n_range: Iterable[int]) -> list[ExampleRow]:
    """Invariant tables for the two example families.

    Family 1: r=1, r_e=2, r_f=n (dimension-1 loci), compared against the
    zero locus of a twisted rank n-1 bundle.  Family 2: r=1, r_e=2, r_f=n-1
    (dimension-2 loci), compared against a twisted rank n-2 bundle.  The
    distinction flag records whether the volume-normalized invariants of the
    two constructions differ.
    """
    rows = []
    for n in n_range:
        problem = _example_problem(which, n)
        det = determinantal_invariants(problem)
        aur_rank = n - 1 if which == 1 else n - 2
        g = twist_by_line_power(BundleSpec.trivial(aur_rank, n), +1)
        aur = zero_locus_invariants(n, g)
        if which == 1:
            distinct = det.quotient("n1", "vol") != aur.quotient("n1", "vol")
            cross = cross_k_isotopy_check(1, n)
        else:
            pair_det = (det.quotient("n11", "vol"), det.quotient("n2", "vol"))
            pair_aur = (aur.quotient("n11", "vol"), aur.quotient("n2", "vol"))
            distinct = pair_det != pair_aur
            cross = None
        rows.append(
            ExampleRow(
                which=which, n=n, determinantal=det, auroux=aur, distinct=distinct, cross_k_match=cross
            )
        )
    return rows


def cp_leading_coefficient(r_e: int, r_f: int, p: int) -> int:
    """Closed-form leading k^p coefficient of c_p(F(x)L^k - E(x)(L*)^k).

    Equals the x^p coefficient of (1+x)^r_f / (1-x)^r_e, i.e.
    sum_i C(r_f, i) C(r_e + p - i - 1, p - i), for trivial input classes.
    """
    total = 0
    for i in range(0, min(r_f, p) + 1):
        total += math.comb(r_f, i) * math.comb(r_e + p - i - 1, p - i)
    return total
