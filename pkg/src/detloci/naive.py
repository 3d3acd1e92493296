"""Second, deliberately naive evaluation engine for the invariant formulas.

This module re-derives the determinantal Chern numbers with its own data
representation (sparse dicts of (k-power, h-degree) monomials), its own
binomials, a geometric-series inverse instead of the recursive one, and a
cofactor determinant instead of the permutation expansion.  It shares no
code with :mod:`detloci.chern`; agreement of the two engines on random
problems is one of the verification suites.
"""

from __future__ import annotations

from fractions import Fraction

Poly2 = dict  # {(k_power, h_degree): Fraction}


def _binom(n: int, k: int) -> Fraction:
    if k < 0 or k > n:
        return Fraction(0)
    num = 1
    den = 1
    for i in range(k):
        num *= n - i
        den *= i + 1
    return Fraction(num, den)


def p_zero() -> Poly2:
    return {}

def p_const(c) -> Poly2:
    c = Fraction(c)
    return {(0, 0): c} if c else {}


def p_add(a: Poly2, b: Poly2) -> Poly2:
    out = dict(a)
    for mono, c in b.items():
        s = out.get(mono, Fraction(0)) + c
        if s:
            out[mono] = s
        elif mono in out:
            del out[mono]
    return out


def p_scale(a: Poly2, c) -> Poly2:
    c = Fraction(c)
    if not c:
        return {}
    return {m: v * c for m, v in a.items()}


def p_mul(a: Poly2, b: Poly2, n: int) -> Poly2:
    out: Poly2 = {}
    for (ka, ha), ca in a.items():
        for (kb, hb), cb in b.items():
            h = ha + hb
            if h > n:
                continue
            mono = (ka + kb, h)
            s = out.get(mono, Fraction(0)) + ca * cb
            if s:
                out[mono] = s
            elif mono in out:
                del out[mono]
    return out


def p_pow(a: Poly2, e: int, n: int) -> Poly2:
    out = p_const(1)
    for _ in range(e):
        out = p_mul(out, a, n)
    return out


def p_eq(a: Poly2, b: Poly2) -> bool:
    return p_add(a, p_scale(b, -1)) == {}


def total_from_rationals(data, n: int) -> list[Poly2]:
    """Per-degree components [c_0, ..., c_n] from rational multiples of h^d."""
    comps = []
    for d in range(n + 1):
        c = Fraction(data[d]) if d < len(data) else Fraction(0)
        comps.append({(0, d): c} if c else {})
    return comps


def twist(components: list[Poly2], rank: int, power: int, n: int) -> list[Poly2]:
    """Components of c(E (x) L^power-twist): the line class is power*k*h."""
    t = {(1, 1): Fraction(power)} if power else {}
    out = []
    for p in range(n + 1):
        acc: Poly2 = {}
        for i in range(p + 1):
            b = _binom(rank - i, p - i)
            if not b or not components[i]:
                continue
            term = p_scale(p_mul(components[i], p_pow(t, p - i, n), n), b)
            acc = p_add(acc, term)
        out.append(acc)
    return out


def series_inverse(components: list[Poly2], n: int) -> list[Poly2]:
    """Inverse via the geometric series in u = (c - 1): 1/c = sum (-u)^j."""
    u = []
    for d in range(n + 1):
        comp = dict(components[d])
        if d == 0:
            comp = p_add(comp, p_const(-1))
        u.append(comp)
    u_class = {}
    for d in range(n + 1):
        u_class = p_add(u_class, u[d])
    inv = p_const(1)
    power = p_const(1)
    for _ in range(1, n + 1):
        power = p_mul(power, p_scale(u_class, -1), n)
        inv = p_add(inv, power)
    return split_degrees(inv, n)


def split_degrees(poly: Poly2, n: int) -> list[Poly2]:
    comps: list[Poly2] = [{} for _ in range(n + 1)]
    for (k, h), c in poly.items():
        comps[h][(k, h)] = c
    return comps


def merge_degrees(components: list[Poly2]) -> Poly2:
    out: Poly2 = {}
    for comp in components:
        out = p_add(out, comp)
    return out


def class_mul(a: list[Poly2], b: list[Poly2], n: int) -> list[Poly2]:
    return split_degrees(p_mul(merge_degrees(a), merge_degrees(b), n), n)


def cofactor_det(matrix: list[list[Poly2]], n: int) -> Poly2:
    m = len(matrix)
    if m == 1:
        return matrix[0][0]
    acc: Poly2 = {}
    for j in range(m):
        piv = matrix[0][j]
        if not piv:
            continue
        minor = [[row[t] for t in range(m) if t != j] for row in matrix[1:]]
        term = p_mul(piv, cofactor_det(minor, n), n)
        acc = p_add(acc, term if j % 2 == 0 else p_scale(term, -1))
    return acc


def delta(diff: list[Poly2], q: int, parts, size: int, n: int) -> Poly2:
    lam = list(parts) + [0] * (size - len(parts))

    def comp(j: int) -> Poly2:
        if j < 0 or j > n:
            return {}
        return diff[j]

    matrix = [[comp(q + lam[a] + (b - a)) for b in range(size)] for a in range(size)]
    return cofactor_det(matrix, n)


def h_top_coefficients(poly: Poly2, n: int) -> dict[int, Fraction]:
    """The coefficient of h^n as a map from k-power to Fraction."""
    return {k: c for (k, h), c in poly.items() if h == n}


def invariants(
    n: int,
    r_e: int,
    r_f: int,
    r: int,
    c_tm,
    c_e,
    c_f,
) -> dict[str, dict[int, Fraction]]:
    """Volume and Chern numbers of the rank-r locus, naive route.

    Inputs are lists of rational multiples of h^d for the tangent bundle and
    the two morphism bundles.  Returns the degree-n coefficients as maps
    {k-power: Fraction} for vol and, depending on the locus dimension,
    n1 or (n11, n2).
    """
    codim = (r_e - r) * (r_f - r)
    dim_locus = n - codim
    e_tw = twist(total_from_rationals(c_e, n), r_e, -1, n)
    f_tw = twist(total_from_rationals(c_f, n), r_f, +1, n)
    tm = total_from_rationals(c_tm, n)
    diff = class_mul(f_tw, series_inverse(e_tw, n), n)

    q = r_f - r
    size = r_e - r
    d0 = delta(diff, q, (), size, n)
    d1 = delta(diff, q, (1,), size, n)
    omega = {(1, 1): Fraction(1)}  # k*h
    vol = p_mul(d0, p_pow(omega, dim_locus, n), n)
    out = {"vol": h_top_coefficients(vol, n)}

    a = r_e - r
    s = r_e - r_f
    c1_ef = p_add(e_tw[1], p_scale(f_tw[1], -1))
    lin = p_add(tm[1], p_scale(c1_ef, a))

    if dim_locus == 1:
        n1 = p_add(p_mul(lin, d0, n), p_scale(d1, s))
        out["n1"] = h_top_coefficients(n1, n)
    elif dim_locus == 2:
        d2 = delta(diff, q, (2,), size, n)
        d11 = delta(diff, q, (1, 1), max(size, 2), n)
        n11 = p_mul(p_mul(lin, lin, n), d0, n)
        n11 = p_add(n11, p_scale(p_mul(lin, d1, n), 2 * s))
        n11 = p_add(n11, p_scale(p_add(d2, d11), s * s))
        out["n11"] = h_top_coefficients(n11, n)

        quad = p_add(tm[2], p_scale(p_mul(tm[1], c1_ef, n), a))
        quad = p_add(quad, p_scale(p_add(e_tw[2], p_scale(f_tw[2], -1)), a))
        quad = p_add(quad, p_scale(p_mul(e_tw[1], e_tw[1], n), _binom(a, 2)))
        quad = p_add(quad, p_scale(p_mul(e_tw[1], f_tw[1], n), -a * a))
        quad = p_add(quad, p_scale(p_mul(f_tw[1], f_tw[1], n), _binom(a + 1, 2)))
        n2 = p_mul(quad, d0, n)
        lin1 = p_add(p_scale(tm[1], a), p_scale(c1_ef, a * s - 1))
        n2 = p_add(n2, p_mul(lin1, d1, n))
        n2 = p_add(n2, p_scale(d2, Fraction(s * s + a + (r_f - r) - 2, 2)))
        n2 = p_add(n2, p_scale(d11, Fraction(s * s - a - (r_f - r) - 2, 2)))
        out["n2"] = h_top_coefficients(n2, n)
    return out
