"""Truncated power series in s = x - 1 with exact rational coefficients.

Jets are the common currency when two objects that live in different exact
representations (quasi-monomial fractions, Baker coefficients obtained from a
tau-function) have to be compared at the base point x = 1.  A jet knows its
order: coefficients beyond it are meaningless and never compared.
"""

from __future__ import annotations

from fractions import Fraction

Q = Fraction


def qq(v):
    """Coerce v (int, str like '3/4', Fraction) to Fraction."""
    if isinstance(v, Fraction):
        return v
    return Fraction(v)


class Jet:
    """Polynomial jet sum(c_i s^i, i <= order) at s = x - 1."""

    __slots__ = ("coeffs", "order")

    def __init__(self, coeffs, order):
        order = int(order)
        cs = [qq(c) for c in coeffs[: order + 1]] if order >= 0 else []
        while len(cs) < order + 1:
            cs.append(Q(0))
        self.coeffs = cs
        self.order = order

    @classmethod
    def scalar(cls, c, order):
        cs = [qq(c)] + [Q(0)] * order if order >= 0 else []
        return cls(cs, order)

    @classmethod
    def zero(cls, order):
        return cls.scalar(0, order)

    @classmethod
    def variable(cls, order):
        """The jet of s itself."""
        cs = [Q(0)] * (order + 1)
        if order >= 1:
            cs[1] = Q(1)
        return cls(cs, order)

    def __getitem__(self, i):
        return self.coeffs[i]

    def truncate(self, order):
        if order >= self.order:
            return self
        return Jet(self.coeffs[: order + 1], order)

    def __add__(self, other):
        m = min(self.order, other.order)
        return Jet([self.coeffs[i] + other.coeffs[i] for i in range(m + 1)], m)

    def __sub__(self, other):
        m = min(self.order, other.order)
        return Jet([self.coeffs[i] - other.coeffs[i] for i in range(m + 1)], m)

    def __neg__(self):
        return Jet([-c for c in self.coeffs], self.order)

    def scale(self, c):
        c = qq(c)
        return Jet([c * a for a in self.coeffs], self.order)

    def __mul__(self, other):
        if not isinstance(other, Jet):
            return self.scale(other)
        m = min(self.order, other.order)
        out = [Q(0)] * (m + 1)
        for i, a in enumerate(self.coeffs):
            if i > m or a == 0:
                continue
            for j in range(0, m - i + 1):
                b = other.coeffs[j]
                if b:
                    out[i + j] += a * b
        return Jet(out, m)

    __rmul__ = __mul__

    def inverse(self):
        """Multiplicative inverse; requires nonzero constant term."""
        if self.order < 0 or self.coeffs[0] == 0:
            raise ZeroDivisionError("jet has no invertible constant term")
        c0 = self.coeffs[0]
        out = [Q(0)] * (self.order + 1)
        out[0] = 1 / c0
        for n in range(1, self.order + 1):
            acc = Q(0)
            for i in range(1, n + 1):
                acc += self.coeffs[i] * out[n - i]
            out[n] = -acc / c0
        return Jet(out, self.order)

    def __truediv__(self, other):
        return self * other.inverse()

    def derivative(self):
        """d/ds; loses one order."""
        if self.order <= 0:
            return Jet([], -1)
        return Jet([(i + 1) * self.coeffs[i + 1] for i in range(self.order)], self.order - 1)

    def is_zero(self):
        return all(c == 0 for c in self.coeffs)

    def eq_through(self, other, order=None):
        m = min(self.order, other.order)
        if order is not None:
            m = min(m, order)
        for i in range(m + 1):
            if self.coeffs[i] != other.coeffs[i]:
                return False
        return True

    def first_divergence(self, other, order=None):
        """Index and the two coefficients of the first mismatch, or None."""
        m = min(self.order, other.order)
        if order is not None:
            m = min(m, order)
        for i in range(m + 1):
            if self.coeffs[i] != other.coeffs[i]:
                return (i, self.coeffs[i], other.coeffs[i])
        return None

    def __eq__(self, other):
        return isinstance(other, Jet) and self.order == other.order and self.coeffs == other.coeffs

    def __repr__(self):
        return "Jet(%s; order=%d)" % (", ".join(str(c) for c in self.coeffs), self.order)


def binomial_frac(gamma, i):
    """Generalized binomial coefficient C(gamma, i) for rational gamma."""
    gamma = qq(gamma)
    num = Q(1)
    for t in range(i):
        num *= gamma - t
    den = 1
    for t in range(1, i + 1):
        den *= t
    return num / den


def power_jet(gamma, order):
    """Jet of x^gamma = (1+s)^gamma, rational gamma allowed."""
    return Jet([binomial_frac(gamma, i) for i in range(order + 1)], order)


def log_jet(order):
    """Jet of ln x = ln(1+s)."""
    cs = [Q(0)]
    for i in range(1, order + 1):
        cs.append(Q((-1) ** (i - 1), i))
    return Jet(cs, order)
