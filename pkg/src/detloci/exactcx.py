"""Exact complex arithmetic over the rationals, plus small exact matrix helpers.

Used by the Grassmannian identities (Pluecker relations, Cauchy-Binet) where
the claims are exact equalities and floating point would only obscure them.
Components may be ints or Fractions; division promotes to Fraction.
"""

from __future__ import annotations

from fractions import Fraction

__all__ = ["QComplex", "exact_det", "exact_matmul"]


class QComplex:
    """A complex number with exact rational real and imaginary parts."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        object.__setattr__(self, "re", re)
        object.__setattr__(self, "im", im)

    def __setattr__(self, name, value):
        raise AttributeError("QComplex is immutable")

    @classmethod
    def coerce(cls, x) -> "QComplex":
        if isinstance(x, QComplex):
            return x
        if isinstance(x, (int, Fraction)):
            return cls(x, 0)
        if isinstance(x, str):
            return cls(Fraction(x), 0)
        raise TypeError(f"cannot interpret {x!r} as an exact complex number")

    def __add__(self, other):
        other = QComplex.coerce(other)
        return QComplex(self.re + other.re, self.im + other.im)

    __radd__ = __add__

    def __neg__(self):
        return QComplex(-self.re, -self.im)

    def __sub__(self, other):
        other = QComplex.coerce(other)
        return QComplex(self.re - other.re, self.im - other.im)

    def __rsub__(self, other):
        return QComplex.coerce(other) - self

    def __mul__(self, other):
        other = QComplex.coerce(other)
        return QComplex(
            self.re * other.re - self.im * other.im,
            self.re * other.im + self.im * other.re,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = QComplex.coerce(other)
        d = other.re * other.re + other.im * other.im
        if d == 0:
            raise ZeroDivisionError("division by zero")
        return QComplex(
            Fraction(self.re * other.re + self.im * other.im, 1) / d,
            Fraction(self.im * other.re - self.re * other.im, 1) / d,
        )

    def conjugate(self) -> "QComplex":
        return QComplex(self.re, -self.im)

    def abs2(self):
        """Squared modulus, an exact rational."""
        return self.re * self.re + self.im * self.im

    def is_zero(self) -> bool:
        return self.re == 0 and self.im == 0

    def __bool__(self) -> bool:
        return not self.is_zero()

    def __eq__(self, other) -> bool:
        try:
            other = QComplex.coerce(other)
        except TypeError:
            return NotImplemented
        return self.re == other.re and self.im == other.im

    def __hash__(self):
        return hash((self.re, self.im))

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __repr__(self) -> str:
        return f"QComplex({self.re}, {self.im})"


def exact_det(rows) -> QComplex:
    """Determinant by cofactor expansion along the first row."""
    m = len(rows)
    if any(len(r) != m for r in rows):
        raise ValueError("determinant of a non-square matrix")
    if m == 0:
        return QComplex(1, 0)
    if m == 1:
        return QComplex.coerce(rows[0][0])
    if m == 2:
        a, b = QComplex.coerce(rows[0][0]), QComplex.coerce(rows[0][1])
        c, d = QComplex.coerce(rows[1][0]), QComplex.coerce(rows[1][1])
        return a * d - b * c
    acc = QComplex(0, 0)
    for j in range(m):
        pivot = QComplex.coerce(rows[0][j])
        if not pivot:
            continue
        minor = [[row[t] for t in range(m) if t != j] for row in rows[1:]]
        term = pivot * exact_det(minor)
        acc = acc + (term if j % 2 == 0 else -term)
    return acc


def exact_matmul(a, b):
    """Product of two nested-list matrices over QComplex-compatible entries."""
    rows, inner, cols = len(a), len(b), len(b[0])
    if any(len(r) != inner for r in a):
        raise ValueError("inner dimensions do not match")
    out = []
    for i in range(rows):
        row = []
        for j in range(cols):
            acc = QComplex(0, 0)
            for t in range(inner):
                acc = acc + QComplex.coerce(a[i][t]) * QComplex.coerce(b[t][j])
            row.append(acc)
        out.append(row)
    return out
