"""Differential operators in x with quasi-monomial(-fraction) coefficients,
the Bessel operator calculus, formal adjoints, exact right division, and the
z-side operator algebra spanned by z^a d_z^b.

Operators in x are stored in D-form, D = x d/dx, as {k: coefficient}; the
Bessel operator for an exponent vector beta in Q^N is

    L_beta = x^(-N) (D - beta_1)...(D - beta_N).

Exponent vectors are plain tuples of Fractions.  Ordered equality is what
tuple equality gives; planes compare as multisets (sorted tuples).
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from bispectral_lab.core import (
    Q,
    QuasiMonomialFraction,
    QuasiMonomialSum,
    qq,
)


def exponent_vector(entries):
    return tuple(qq(e) for e in entries)


def bessel_sum_ok(beta):
    """The admissibility constraint sum(beta) = N(N-1)/2 for waves/planes."""
    n = len(beta)
    return sum(beta, Q(0)) == Q(n * (n - 1), 2)


def same_plane_vector(beta1, beta2):
    """Multiset equality (the plane only sees the multiset)."""
    return sorted(beta1) == sorted(beta2)


def poly_from_roots(roots):
    """Coefficients c[0..n] of prod (X - r_i), constant first."""
    cs = [Q(1)]
    for r in roots:
        r = qq(r)
        nxt = [Q(0)] * (len(cs) + 1)
        for i, c in enumerate(cs):
            nxt[i + 1] += c
            nxt[i] -= c * r
        cs = nxt
    return cs


class DiffOp:
    """sum_k f_k(x) D^k with QuasiMonomialFraction coefficients f_k.

    Pure operators (all f_k plain quasi-monomial sums) cover the paper's
    (c, x^gamma, D^k) term form and are the only ones serialized.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        clean = {}
        if coeffs:
            for k, f in coeffs.items():
                if isinstance(f, QuasiMonomialSum):
                    f = QuasiMonomialFraction(f)
                if not f.is_zero():
                    clean[int(k)] = f
        self.coeffs = clean

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def identity(cls):
        return cls({0: QuasiMonomialFraction.one()})

    @classmethod
    def from_terms(cls, terms):
        """terms: iterable of (c, gamma, k) for c x^gamma D^k."""
        d = {}
        for c, gamma, k in terms:
            k = int(k)
            t = QuasiMonomialFraction.monomial(c, gamma)
            d[k] = d[k] + t if k in d else t
        return cls(d)

    @classmethod
    def euler(cls):
        """D = x d/dx."""
        return cls({1: QuasiMonomialFraction.one()})

    @classmethod
    def partial(cls):
        """d/dx = x^(-1) D."""
        return cls({1: QuasiMonomialFraction.monomial(1, -1)})

    @classmethod
    def x_power(cls, gamma):
        return cls({0: QuasiMonomialFraction.monomial(1, gamma)})

    def is_zero(self):
        return not self.coeffs

    def order(self):
        return max(self.coeffs) if self.coeffs else -1

    def leading_coeff(self):
        return self.coeffs[self.order()]

    def coeff(self, k):
        return self.coeffs.get(k, QuasiMonomialFraction.zero())

    def is_pure(self):
        return all(f.is_sum() for f in self.coeffs.values())

    # linear structure

    def __add__(self, other):
        d = dict(self.coeffs)
        for k, f in other.coeffs.items():
            d[k] = d[k] + f if k in d else f
        return DiffOp(d)

    def __sub__(self, other):
        d = dict(self.coeffs)
        for k, f in other.coeffs.items():
            d[k] = d[k] - f if k in d else -f
        return DiffOp(d)

    def __neg__(self):
        return DiffOp({k: -f for k, f in self.coeffs.items()})

    def scale(self, c):
        return DiffOp({k: f * qq(c) for k, f in self.coeffs.items()})

    def mul_left_x(self, gamma):
        """x^gamma * self."""
        return DiffOp({k: f.x_shift_mul(gamma) for k, f in self.coeffs.items()})

    # composition: D^k o g = sum_i C(k,i) (D^i g) D^(k-i)

    def compose(self, other):
        out = {}
        for k, f in self.coeffs.items():
            for j, g in other.coeffs.items():
                gg = g
                binom = 1
                for i in range(k + 1):
                    if i > 0:
                        binom = binom * (k - i + 1) // i
                        gg = gg.euler()
                    coef = f * gg * binom
                    kk = k - i + j
                    out[kk] = out[kk] + coef if kk in out else coef
        return DiffOp(out)

    def __matmul__(self, other):
        return self.compose(other)

    # action on quasi-monomial data

    def apply(self, f):
        """Apply to a QuasiMonomialSum or -Fraction."""
        acc = None
        for k, c in self.coeffs.items():
            g = f
            for _ in range(k):
                g = g.euler()
            if isinstance(g, QuasiMonomialSum):
                g = QuasiMonomialFraction(g)
            term = c * g
            acc = term if acc is None else acc + term
        if acc is None:
            return QuasiMonomialFraction.zero()
        return acc

    def __eq__(self, other):
        if not isinstance(other, DiffOp):
            return NotImplemented
        keys = set(self.coeffs) | set(other.coeffs)
        return all(self.coeff(k) == other.coeff(k) for k in keys)

    def __str__(self):
        if not self.coeffs:
            return "0"
        bits = []
        for k in sorted(self.coeffs, reverse=True):
            c = self.coeffs[k]
            if k == 0:
                bits.append("(%s)" % c)
            else:
                bits.append("(%s)*D^%d" % (c, k) if k > 1 else "(%s)*D" % c)
        return " + ".join(bits)

    __repr__ = __str__


def compose(p, q):
    return p.compose(q)


def bessel_operator(beta):
    """L_beta = x^(-N) (D - beta_1)...(D - beta_N), expanded canonical."""
    beta = exponent_vector(beta)
    n = len(beta)
    if n < 1:
        return DiffOp.identity()
    cs = poly_from_roots(beta)
    return DiffOp.from_terms((c, -n, k) for k, c in enumerate(cs) if c != 0)


def bessel_compose(alpha, beta):
    """Exponent vector gamma with L_alpha L_beta = L_gamma (Lemma-style)."""
    alpha = exponent_vector(alpha)
    beta = exponent_vector(beta)
    n = len(beta)
    return tuple(a + n for a in alpha) + beta


def bessel_power(beta, d):
    """Exponent vector beta^d with (L_beta)^d = L_(beta^d):
    entries beta_k + (j-1)N, grouped by k, j = 1..d."""
    if d < 1:
        raise ValueError("d must be >= 1")
    beta = exponent_vector(beta)
    n = len(beta)
    out = []
    for b in beta:
        for j in range(d):
            out.append(b + j * n)
    return tuple(out)


def bessel_kernel(beta):
    """Basis of ker L_beta: x^alpha_i (ln x)^k, k < multiplicity of alpha_i."""
    beta = exponent_vector(beta)
    mult = {}
    for b in beta:
        mult[b] = mult.get(b, 0) + 1
    out = []
    for val in sorted(mult):
        for k in range(mult[val]):
            out.append(QuasiMonomialSum.monomial(1, val, k))
    return out


def adjoint_exponents(beta):
    """a(beta) = (N-1)delta - beta."""
    beta = exponent_vector(beta)
    n = len(beta)
    return tuple(Q(n - 1) - b for b in beta)


def formal_adjoint(p):
    """The antiautomorphism * with x* = x, (d/dx)* = -d/dx, so D* = -D - 1.

    (f(x) D^k)* = (-D-1)^k o f(x).
    """
    out = DiffOp.zero()
    # (-D-1)^k expanded once per k
    for k, f in p.coeffs.items():
        cs = poly_from_roots([Q(-1)] * k)  # (X+1)^k, constant first
        op = DiffOp({i: QuasiMonomialFraction.monomial(c * (-1) ** k, 0)
                     for i, c in enumerate(cs) if c != 0})
        out = out + op.compose(DiffOp({0: f}))
    return out


class DivisionError(ArithmeticError):
    pass


def right_divide(a, p):
    """Right division a = q o p + r with ord r < ord p.

    Needs the leading coefficient of p invertible as a quasi-monomial
    fraction (log-free numerator)."""
    if p.is_zero():
        raise ZeroDivisionError("division by the zero operator")
    lead = p.leading_coeff()
    if not lead.num.is_log_free():
        raise DivisionError("leading coefficient of divisor is not invertible: %s" % lead)
    n = p.order()
    q = DiffOp.zero()
    r = a
    while not r.is_zero() and r.order() >= n:
        m = r.order()
        t = DiffOp({m - n: r.leading_coeff() / lead})
        q = q + t
        r = r - t.compose(p)
        if not r.is_zero() and r.order() >= m:
            raise DivisionError("division failed to reduce the order")
    return q, r


# serialization of pure operators:
# header "diffop", lines "c_num/c_den gamma_num/gamma_den k"


def serialize_diffop(p):
    if not p.is_pure():
        raise ValueError("only pure (denominator-free) operators serialize")
    lines = ["diffop"]
    for k in sorted(p.coeffs):
        s = p.coeffs[k].as_sum()
        for (g, j), c in sorted(s.terms.items()):
            if j != 0:
                raise ValueError("log coefficients do not serialize")
            lines.append("%d/%d %d/%d %d" % (c.numerator, c.denominator,
                                             g.numerator, g.denominator, k))
    return "\n".join(lines) + "\n"


def parse_diffop(text):
    lines = [ln for ln in text.strip().splitlines() if ln.strip()]
    if lines[0].strip() != "diffop":
        raise ValueError("not a diffop serialization")
    terms = []
    for ln in lines[1:]:
        c, g, k = ln.split()
        terms.append((Fraction(c), Fraction(g), int(k)))
    return DiffOp.from_terms(terms)


# ---------------------------------------------------------------------------
# z-side operators: the algebra spanned by z^a d_z^b


@lru_cache(maxsize=None)
def stirling2(n, k):
    """Stirling numbers of the second kind."""
    if n == 0 and k == 0:
        return 1
    if n == 0 or k == 0 or k > n:
        return 0
    return k * stirling2(n - 1, k) + stirling2(n - 1, k - 1)


def falling_factorial_coeffs(l):
    """Coefficients of D(D-1)...(D-l+1) = z^l d^l, constant first."""
    return poly_from_roots(range(l))


class ZOperator:
    """Finite sums of c z^a d_z^b in canonical ordered form {(a,b): c}."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for (a, b), c in terms.items():
                c = qq(c)
                if c != 0:
                    key = (int(a), int(b))
                    clean[key] = clean.get(key, Q(0)) + c
                    if clean[key] == 0:
                        del clean[key]
        self.terms = clean

    @classmethod
    def zero(cls):
        return cls()

    @classmethod
    def identity(cls):
        return cls({(0, 0): Q(1)})

    @classmethod
    def monomial(cls, c, a, b=0):
        return cls({(int(a), int(b)): qq(c)})

    def is_zero(self):
        return not self.terms

    def __add__(self, other):
        d = dict(self.terms)
        for k, c in other.terms.items():
            d[k] = d.get(k, Q(0)) + c
        return ZOperator(d)

    def __sub__(self, other):
        d = dict(self.terms)
        for k, c in other.terms.items():
            d[k] = d.get(k, Q(0)) - c
        return ZOperator(d)

    def __neg__(self):
        return ZOperator({k: -c for k, c in self.terms.items()})

    def scale(self, c):
        c = qq(c)
        return ZOperator({k: c * v for k, v in self.terms.items()})

    def compose(self, other):
        """(z^a1 d^b1)(z^a2 d^b2) with d^b o z^a = sum_i C(b,i) a(a-1)..(a-i+1)
        z^(a-i) d^(b-i)."""
        out = {}
        for (a1, b1), c1 in self.terms.items():
            for (a2, b2), c2 in other.terms.items():
                binom = 1
                ff = Q(1)
                for i in range(min(b1, abs(a2)) + 1 if a2 >= 0 else b1 + 1):
                    if i > 0:
                        binom = binom * (b1 - i + 1) // i
                        ff *= a2 - (i - 1)
                    if ff == 0:
                        break
                    key = (a1 + a2 - i, b1 + b2 - i)
                    val = c1 * c2 * binom * ff
                    out[key] = out.get(key, Q(0)) + val
        return ZOperator(out)

    def __matmul__(self, other):
        return self.compose(other)

    def power(self, n):
        acc = ZOperator.identity()
        for _ in range(n):
            acc = acc.compose(self)
        return acc

    def to_dz(self):
        """Inverse of dz_to_monomials: dict zpow -> list of D_z coefficients
        (constant first), using z^b d^b = D(D-1)...(D-b+1)."""
        out = {}
        for (a, b), c in sorted(self.terms.items()):
            zp = a - b
            cs = falling_factorial_coeffs(b)
            lst = out.setdefault(zp, [])
            while len(lst) < len(cs):
                lst.append(Q(0))
            for i, cc in enumerate(cs):
                lst[i] += c * cc
        # strip zero tails and drop empty rows
        clean = {}
        for zp, lst in out.items():
            while lst and lst[-1] == 0:
                lst.pop()
            if lst:
                clean[zp] = lst
        return clean

    def __eq__(self, other):
        if not isinstance(other, ZOperator):
            return NotImplemented
        return self.terms == other.terms

    def __str__(self):
        if not self.terms:
            return "0"
        bits = []
        for (a, b), c in sorted(self.terms.items()):
            s = str(c)
            if a:
                s += "*z^%d" % a
            if b:
                s += "*dz^%d" % b if b > 1 else "*dz"
            bits.append(s)
        return " + ".join(bits)

    __repr__ = __str__


def dz_to_monomials(zpow, dpoly):
    """z^zpow * P(D_z) as a ZOperator, P given by coefficients (constant first).

    Uses D^m = sum_b S(m,b) z^b d^b (Stirling second kind), then the z-power
    shift; exact."""
    out = {}
    for m, c in enumerate(dpoly):
        c = qq(c)
        if c == 0:
            continue
        for b in range(m + 1):
            s = stirling2(m, b)
            if s:
                key = (zpow + b, b)
                out[key] = out.get(key, Q(0)) + c * s
    return ZOperator(out)


def bessel_z_operator(beta):
    """L_beta(z, d_z) = z^(-N) P_beta(D_z) as a ZOperator."""
    beta = exponent_vector(beta)
    return dz_to_monomials(-len(beta), poly_from_roots(beta))


def dpoly_mul(p, q):
    """Product of two D_z-polynomials given as coefficient lists."""
    out = [Q(0)] * (len(p) + len(q) - 1) if p and q else []
    for i, a in enumerate(p):
        for j, b in enumerate(q):
            out[i + j] += qq(a) * qq(b)
    return out


def dpoly_shift(p, c):
    """P(D) -> P(D + c) on coefficient lists."""
    out = [Q(0)] * len(p)
    # expand (D + c)^i
    for i, a in enumerate(p):
        a = qq(a)
        if a == 0:
            continue
        row = [Q(1)]
        for _ in range(i):
            row = [Q(0)] + row
            for t in range(len(row) - 1):
                row[t] += qq(c) * row[t + 1]
        # row now holds coefficients of (D + c)^i, constant first
        for t, r in enumerate(row):
            out[t] += a * r
    return out
