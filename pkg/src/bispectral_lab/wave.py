"""Wave series e^(xz) * sum a_m(x) z^(-m) and Bessel wave functions.

The e^(xz) prefactor is implicit and never expanded; every operator action is
implemented on the coefficient tail.  Coefficients are quasi-monomial
fractions ("exact" kind) or jets at x = 1 ("jet" kind, what the Baker formula
produces from a truncated tau).  The validity depth kw says which indices m
are trustworthy; applying d/dx or multiplying by z consumes one unit.
"""

from __future__ import annotations

from fractions import Fraction

from bispectral_lab.core import (
    Jet,
    Q,
    QuasiMonomialFraction,
    QuasiMonomialSum,
    power_jet,
    qq,
)
from bispectral_lab.diffop import DiffOp, ZOperator, bessel_operator, bessel_sum_ok, exponent_vector


class ResonantRecursion(ArithmeticError):
    """The Bessel wave recursion hit a zero divisor; carries the index."""

    def __init__(self, index):
        super().__init__("resonant division by zero at coefficient index %d" % index)
        self.index = index


class WaveSeries:

    __slots__ = ("coeffs", "kw", "kind")

    def __init__(self, coeffs, kw, kind="exact"):
        self.kind = kind
        self.kw = int(kw)
        clean = {}
        for m, c in coeffs.items():
            m = int(m)
            if m > self.kw:
                continue
            if kind == "exact":
                if isinstance(c, QuasiMonomialSum):
                    c = QuasiMonomialFraction(c)
                if not c.is_zero():
                    clean[m] = c
            else:
                clean[m] = c  # jets kept even when zero: they carry an order
        self.coeffs = clean

    @classmethod
    def exponential(cls, kw):
        """Plain e^(xz)."""
        return cls({0: QuasiMonomialFraction.one()}, kw)

    def coeff(self, m):
        if m in self.coeffs:
            return self.coeffs[m]
        if self.kind == "exact":
            return QuasiMonomialFraction.zero()
        raise KeyError("jet wave has no data at index %d" % m)

    def m_min(self):
        return min(self.coeffs, default=0)

    def indices(self):
        return sorted(self.coeffs)

    # linear structure

    def __add__(self, other):
        if self.kind != other.kind:
            raise ValueError("mixed wave kinds")
        kw = min(self.kw, other.kw)
        if self.kind == "exact":
            d = {m: c for m, c in self.coeffs.items() if m <= kw}
            for m, c in other.coeffs.items():
                if m <= kw:
                    d[m] = d[m] + c if m in d else c
            return WaveSeries(d, kw)
        d = {}
        for m in set(self.coeffs) | set(other.coeffs):
            if m > kw:
                continue
            if m in self.coeffs and m in other.coeffs:
                d[m] = self.coeffs[m] + other.coeffs[m]
            else:
                d[m] = self.coeffs.get(m, other.coeffs.get(m))
        return WaveSeries(d, kw, "jet")

    def __sub__(self, other):
        return self + other.scale(-1)

    def scale(self, c):
        c = qq(c)
        if self.kind == "exact":
            return WaveSeries({m: f * c for m, f in self.coeffs.items()}, self.kw)
        return WaveSeries({m: f.scale(c) for m, f in self.coeffs.items()}, self.kw, "jet")

    def mul_z(self, a):
        """Multiply by z^a (a may be negative); validity shifts by -a."""
        return WaveSeries({m - a: c for m, c in self.coeffs.items()}, self.kw - a, self.kind)

    def mul_x(self, f):
        """Multiply every coefficient by the quasi-monomial fraction f."""
        if self.kind == "exact":
            return WaveSeries({m: f * c for m, c in self.coeffs.items()}, self.kw)
        return WaveSeries({m: f.jet(c.order) * c for m, c in self.coeffs.items()},
                          self.kw, "jet")

    def mul_x_power(self, gamma):
        return self.mul_x(QuasiMonomialFraction.monomial(1, gamma))

    # operator actions

    def _euler_once(self):
        """D_x, using D(e^(xz) a z^-m) = e^(xz)((D a) z^-m + x a z^-(m-1))."""
        kw = self.kw - 1
        out = {}
        if self.kind == "exact":
            x = QuasiMonomialFraction.monomial(1, 1)
            for m, a in self.coeffs.items():
                if m <= kw:
                    da = a.euler()
                    out[m] = out[m] + da if m in out else da
                if m - 1 <= kw:
                    xa = x * a
                    out[m - 1] = out[m - 1] + xa if m - 1 in out else xa
            return WaveSeries(out, kw)
        for m, a in self.coeffs.items():
            da = power_jet(1, max(a.order - 1, -1)) * a.derivative()
            if m <= kw:
                out[m] = out[m] + da if m in out else da
            xa = power_jet(1, a.order) * a
            if m - 1 <= kw:
                out[m - 1] = out[m - 1] + xa if m - 1 in out else xa
        return WaveSeries(out, kw, "jet")

    def _dz_once(self):
        """d_z, using d_z(e^(xz) a z^-m) = e^(xz)(x a z^-m - m a z^-(m+1))."""
        out = {}
        if self.kind == "exact":
            x = QuasiMonomialFraction.monomial(1, 1)
            for m, a in self.coeffs.items():
                t = x * a
                out[m] = out[m] + t if m in out else t
                t2 = a * Q(-m)
                if not t2.is_zero():
                    out[m + 1] = out[m + 1] + t2 if m + 1 in out else t2
            return WaveSeries(out, self.kw)
        for m, a in self.coeffs.items():
            t = power_jet(1, a.order) * a
            out[m] = out[m] + t if m in out else t
            t2 = a.scale(-m)
            out[m + 1] = out[m + 1] + t2 if m + 1 in out else t2
        # a fresh index kw+1 may appear with data only from index kw: drop it
        return WaveSeries({m: c for m, c in out.items() if m <= self.kw}, self.kw, "jet")

    def apply_diffop(self, p):
        """Apply an x-operator in D-form; costs ord(p) units of depth."""
        n = p.order()
        powers = [self]
        for _ in range(max(n, 0)):
            powers.append(powers[-1]._euler_once())
        kw = self.kw - max(n, 0)
        acc = None
        for k, f in p.coeffs.items():
            term = powers[k].mul_x(f)
            # align validities: all terms compared at the final kw
            term = WaveSeries({m: c for m, c in term.coeffs.items() if m <= kw}, kw, term.kind)
            acc = term if acc is None else acc + term
        if acc is None:
            return WaveSeries({}, kw, self.kind)
        return acc

    def apply_zop(self, zop):
        """Apply a z-operator sum c z^a d_z^b."""
        maxb = max((b for (_, b) in zop.terms), default=0)
        powers = [self]
        for _ in range(maxb):
            powers.append(powers[-1]._dz_once())
        acc = None
        for (a, b), c in zop.terms.items():
            term = powers[b].mul_z(a).scale(c)
            acc = term if acc is None else acc + term
        if acc is None:
            return WaveSeries({}, self.kw, self.kind)
        return acc

    # comparisons

    def jet_order_at(self, m):
        if self.kind == "jet":
            return self.coeffs[m].order if m in self.coeffs else None
        return None

    def first_divergence(self, other, depth=None, jet_slack=0):
        """Compare through min validity depth; jets decide the x-order.

        Returns (m, description) or None.  jet_slack lowers the compared jet
        order uniformly (useful when one side lost x-orders to an operator).
        """
        kw = min(self.kw, other.kw)
        if depth is not None:
            kw = min(kw, depth)
        ms = sorted(set(self.coeffs) | set(other.coeffs))
        for m in ms:
            if m > kw:
                continue
            a = self.coeffs.get(m)
            b = other.coeffs.get(m)
            if self.kind == "exact" and other.kind == "exact":
                a = a if a is not None else QuasiMonomialFraction.zero()
                b = b if b is not None else QuasiMonomialFraction.zero()
                if a != b:
                    return (m, "%s != %s" % (a, b))
                continue
            # at least one jet side: compare as jets
            if a is None or b is None:
                side = a if a is not None else b
                if isinstance(side, Jet):
                    if not side.truncate(side.order - jet_slack).is_zero():
                        return (m, "one side missing, other nonzero")
                elif not side.is_zero():
                    return (m, "one side missing, other nonzero")
                continue
            ja = a if isinstance(a, Jet) else None
            jb = b if isinstance(b, Jet) else None
            order = min(x.order for x in (ja, jb) if x is not None) - jet_slack
            if order < 0:
                continue
            ja = ja.truncate(order) if ja is not None else a.jet(order)
            jb = jb.truncate(order) if jb is not None else b.jet(order)
            div = ja.first_divergence(jb)
            if div is not None:
                return (m, "s^%d: %s != %s" % div)
        return None

    def eq_through(self, other, depth=None, jet_slack=0):
        return self.first_divergence(other, depth, jet_slack) is None

    def is_zero_through(self, depth=None):
        kw = self.kw if depth is None else min(self.kw, depth)
        for m, c in self.coeffs.items():
            if m <= kw and not c.is_zero():
                return False
        return True

    def shift_x0(self, x0):
        """e^(-x0 z) Psi(x + x0, z): coefficients a_m(x + x0).

        Only defined for polynomial coefficients (Remark-style translation
        consistency checks)."""
        if self.kind != "exact":
            raise ValueError("x-translation needs exact coefficients")
        out = {}
        for m, c in self.coeffs.items():
            out[m] = QuasiMonomialFraction(c.as_sum().shift_x(x0))
        return WaveSeries(out, self.kw)

    def serialize(self):
        if self.kind != "exact":
            raise ValueError("only exact waves serialize")
        lines = ["wave %d %d" % (max(self.coeffs, default=0), self.kw)]
        for m in sorted(self.coeffs):
            c = self.coeffs[m]
            nterms = len(c.num.terms)
            dterms = len(c.den.terms)
            lines.append("coef %d %d %d" % (m, nterms, dterms))
            for (g, j), cc in sorted(c.num.terms.items()):
                lines.append("%d/%d %d/%d %d" % (cc.numerator, cc.denominator,
                                                 g.numerator, g.denominator, j))
            for (g, j), cc in sorted(c.den.terms.items()):
                lines.append("%d/%d %d/%d %d" % (cc.numerator, cc.denominator,
                                                 g.numerator, g.denominator, j))
        return "\n".join(lines) + "\n"

    @classmethod
    def deserialize(cls, text):
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        tag, _, kw = lines[0].split()
        if tag != "wave":
            raise ValueError("not a wave serialization")
        coeffs = {}
        i = 1
        while i < len(lines):
            _, m, nn, nd = lines[i].split()
            i += 1
            num = {}
            for _ in range(int(nn)):
                c, g, j = lines[i].split()
                num[(Fraction(g), int(j))] = Fraction(c)
                i += 1
            den = {}
            for _ in range(int(nd)):
                c, g, j = lines[i].split()
                den[(Fraction(g), int(j))] = Fraction(c)
                i += 1
            coeffs[int(m)] = QuasiMonomialFraction(QuasiMonomialSum(num),
                                                   QuasiMonomialSum(den))
        return cls(coeffs, int(kw))

    def __str__(self):
        bits = []
        for m in sorted(self.coeffs):
            bits.append("z^%d * (%s)" % (-m, self.coeffs[m]))
        return "e^(xz) * [" + (" + ".join(bits) if bits else "0") + "]  [kw=%d]" % self.kw

    __repr__ = __str__


class BesselWave:
    """The unique wave function of L_beta depending only on u = xz:
    Psi = e^(xz) sum b_k (xz)^(-k), b_0 = 1."""

    __slots__ = ("beta", "bs", "kz")

    def __init__(self, beta, bs, kz):
        self.beta = exponent_vector(beta)
        self.bs = [qq(b) for b in bs]
        self.kz = int(kz)

    @property
    def n(self):
        return len(self.beta)

    def as_wave(self):
        return WaveSeries(
            {m: QuasiMonomialFraction.monomial(b, -m)
             for m, b in enumerate(self.bs) if b != 0},
            self.kz)

    def __str__(self):
        return "BesselWave(beta=%s, b=%s...)" % (list(self.beta), self.bs[:4])

    __repr__ = __str__


def _pdu_row(beta, m):
    """prod_i (D_u + u - beta_i) applied to u^(-m); returns {exponent: coeff}.

    The factors commute, so the application order is irrelevant."""
    cur = {Q(-m): Q(1)}
    for b in beta:
        nxt = {}
        for e, c in cur.items():
            nxt[e] = nxt.get(e, Q(0)) + c * (e - b)
            nxt[e + 1] = nxt.get(e + 1, Q(0)) + c
        cur = {e: c for e, c in nxt.items() if c != 0}
    return cur


def bessel_wave(beta, k_z):
    """Solve the coefficient recursion of L_beta Psi = z^N Psi with b_0 = 1.

    Substituting e^u sum b_k u^(-k) (u = xz) into P_beta(D_u + u) Psi = u^N Psi
    and matching the coefficient of u^(N-k-1) determines b_k from the N-1
    previous coefficients.  The divisor is sigma - N k with
    sigma = N(N-1)/2 - sum(beta); under the admissibility constraint sigma = 0
    and the recursion never degenerates."""
    beta = exponent_vector(beta)
    n = len(beta)
    if not bessel_sum_ok(beta):
        raise ValueError("sum(beta) != N(N-1)/2 for beta=%s" % (list(beta),))
    sigma = Q(n * (n - 1), 2) - sum(beta, Q(0))
    bs = [Q(1)]
    rows = {}  # cache of _pdu_row results keyed by m
    for k in range(1, k_z + 1):
        div = sigma - n * k
        if div == 0:
            raise ResonantRecursion(k)
        acc = Q(0)
        for i in range(0, n - 1):
            j = k - (n - 1 - i)
            if j < 0:
                continue
            if j not in rows:
                rows[j] = _pdu_row(beta, j)
            acc += rows[j].get(Q(-j + i), Q(0)) * bs[j]
        bs.append(-acc / div)
    return BesselWave(beta, bs, k_z)


def apply_x(p, w):
    """Apply an x-side operator (DiffOp in D-form) to a wave."""
    if isinstance(w, BesselWave):
        w = w.as_wave()
    return w.apply_diffop(p)


def apply_z(zop, w):
    """Apply a z-side operator (ZOperator) to a wave."""
    if isinstance(w, BesselWave):
        w = w.as_wave()
    return w.apply_zop(zop)
