"""Truncated weighted series in the bosonic variables and Schur machinery.

A TauSeries is an element of the charge-0 bosonic Fock space written, per the
convention fixed once for the whole package, as a jet at the point
t = (1, 0, 0, ...): the stored variables are

    axis 0  <->  s1 = t1 - 1           (weight 1)
    axis i  <->  t_{i+1}, i >= 1       (weight i+1)

Weighted degree deg t_k = k, deg s1 = 1.  Truncation order K_t bounds what is
stored; the validity order K_v <= K_t bounds what is *known*: coefficients of
weighted degree > K_v are semantically undefined and all comparisons stop
there.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache

from bispectral_lab.core.jets import Jet, Q, qq


def key_weight(key):
    """Weighted degree of an exponent key (axis 0 has weight 1)."""
    w = 0
    for i, e in enumerate(key):
        w += e * (i + 1)
    return w


def trim(key):
    key = tuple(key)
    n = len(key)
    while n and key[n - 1] == 0:
        n -= 1
    return key[:n]


class TauSeries:
    """Weighted-truncated series with explicit validity order."""

    __slots__ = ("kt", "kv", "coeffs")

    def __init__(self, kt, coeffs=None, kv=None):
        self.kt = int(kt)
        self.kv = self.kt if kv is None else min(int(kv), self.kt)
        clean = {}
        if coeffs:
            for key, c in coeffs.items():
                c = qq(c)
                if c == 0:
                    continue
                key = trim(key)
                if key_weight(key) > self.kt:
                    continue
                clean[key] = clean.get(key, Q(0)) + c
                if clean[key] == 0:
                    del clean[key]
        self.coeffs = clean

    # constructors

    @classmethod
    def zero(cls, kt, kv=None):
        return cls(kt, {}, kv)

    @classmethod
    def one(cls, kt, kv=None):
        return cls(kt, {(): Q(1)}, kv)

    @classmethod
    def s1(cls, kt):
        return cls(kt, {(1,): Q(1)})

    @classmethod
    def t(cls, k, kt):
        """The variable t_k (k >= 2); t_1 is not a stored variable, use s1."""
        if k < 2:
            raise ValueError("stored variables are s1 and t_k for k >= 2")
        key = tuple([0] * (k - 1)) + (1,)
        return cls(kt, {key: Q(1)})

    def coeff(self, key):
        return self.coeffs.get(trim(key), Q(0))

    def copy_with(self, coeffs=None, kv=None):
        return TauSeries(self.kt, self.coeffs if coeffs is None else coeffs,
                         self.kv if kv is None else kv)

    # ring structure

    def __add__(self, other):
        self._check(other)
        d = dict(self.coeffs)
        for k, c in other.coeffs.items():
            d[k] = d.get(k, Q(0)) + c
        return TauSeries(self.kt, d, min(self.kv, other.kv))

    def __sub__(self, other):
        self._check(other)
        d = dict(self.coeffs)
        for k, c in other.coeffs.items():
            d[k] = d.get(k, Q(0)) - c
        return TauSeries(self.kt, d, min(self.kv, other.kv))

    def __neg__(self):
        return TauSeries(self.kt, {k: -c for k, c in self.coeffs.items()}, self.kv)

    def scale(self, c):
        c = qq(c)
        return TauSeries(self.kt, {k: c * v for k, v in self.coeffs.items()}, self.kv)

    def __mul__(self, other):
        if isinstance(other, TauSeries):
            return self.mul(other)
        return self.scale(other)

    __rmul__ = __mul__

    def mul(self, other):
        self._check(other)
        out = {}
        items = sorted(other.coeffs.items(), key=lambda kv_: key_weight(kv_[0]))
        for k1, c1 in self.coeffs.items():
            w1 = key_weight(k1)
            for k2, c2 in items:
                if w1 + key_weight(k2) > self.kt:
                    break
                key = trim(tuple(
                    (k1[i] if i < len(k1) else 0) + (k2[i] if i < len(k2) else 0)
                    for i in range(max(len(k1), len(k2)))))
                out[key] = out.get(key, Q(0)) + c1 * c2
        return TauSeries(self.kt, out, min(self.kv, other.kv))

    def _check(self, other):
        if self.kt != other.kt:
            raise ValueError("mismatched truncation orders: %d vs %d" % (self.kt, other.kt))

    # variable operations (all aware of the s1 = t1 - 1 shift)

    def mul_t(self, k):
        """Multiply by t_k.  For k = 1 this is (1 + s1)."""
        if k == 1:
            return self + self.mul_key((1,))
        return self.mul_key(tuple([0] * (k - 1)) + (1,))

    def mul_key(self, key):
        key = trim(key)
        w0 = key_weight(key)
        out = {}
        for k1, c in self.coeffs.items():
            if key_weight(k1) + w0 > self.kt:
                continue
            nk = trim(tuple((k1[i] if i < len(k1) else 0) + (key[i] if i < len(key) else 0)
                            for i in range(max(len(k1), len(key)))))
            out[nk] = out.get(nk, Q(0)) + c
        return TauSeries(self.kt, out, self.kv)

    def deriv_t(self, k):
        """d/dt_k; d/dt_1 = d/ds1.  Validity drops by k."""
        axis = k - 1
        out = {}
        for key, c in self.coeffs.items():
            if axis < len(key) and key[axis] > 0:
                e = key[axis]
                nk = list(key)
                nk[axis] = e - 1
                out[trim(nk)] = out.get(trim(nk), Q(0)) + c * e
        return TauSeries(self.kt, out, self.kv - k)

    # comparisons

    def is_zero_through(self, order=None):
        order = self.kv if order is None else min(order, self.kv)
        return all(c == 0 for k, c in self.coeffs.items() if key_weight(k) <= order)

    def first_divergence(self, other, order=None):
        """(key, coeff_self, coeff_other) of the first mismatch within the
        shared validity, or None."""
        self._check(other)
        m = min(self.kv, other.kv)
        if order is not None:
            m = min(m, order)
        keys = set(self.coeffs) | set(other.coeffs)
        for key in sorted(keys, key=lambda k: (key_weight(k), k)):
            if key_weight(key) > m:
                continue
            a, b = self.coeffs.get(key, Q(0)), other.coeffs.get(key, Q(0))
            if a != b:
                return (key, a, b)
        return None

    def eq_through(self, other, order=None):
        return self.first_divergence(other, order) is None

    def proportional(self, other, order=None):
        """Return the scalar r with other = r*self through shared validity,
        or None if no such scalar exists (0 counts: both zero -> r = 1)."""
        self._check(other)
        m = min(self.kv, other.kv)
        if order is not None:
            m = min(m, order)
        r = None
        keys = sorted(set(self.coeffs) | set(other.coeffs),
                      key=lambda k: (key_weight(k), k))
        for key in keys:
            if key_weight(key) > m:
                continue
            a, b = self.coeffs.get(key, Q(0)), other.coeffs.get(key, Q(0))
            if a == 0:
                if b != 0:
                    return None
                continue
            if r is None:
                r = b / a
            elif a * r != b:
                return None
        return Q(1) if r is None else r

    # the adjoint involution a: t_k -> (-1)^(k-1) t_k (s1 is fixed)

    def involution(self):
        out = {}
        for key, c in self.coeffs.items():
            flips = sum(key[i] for i in range(1, len(key), 2))  # axes of t_2, t_4, ...
            out[key] = -c if flips % 2 else c
        return TauSeries(self.kt, out, self.kv)

    def depends_on_t(self, k, through=None):
        """True if some valid monomial contains t_k (k>=2) or s1 (k=1)."""
        axis = k - 1
        order = self.kv if through is None else min(through, self.kv)
        for key, c in self.coeffs.items():
            if axis < len(key) and key[axis] > 0 and key_weight(key) <= order and c != 0:
                return True
        return False

    def eval_jet(self):
        """Set t_k = 0 for k >= 2; the result is a jet in s1 of order K_v."""
        if self.kv < 0:
            return Jet([], -1)
        cs = [Q(0)] * (self.kv + 1)
        for key, c in self.coeffs.items():
            if len(key) <= 1:
                e = key[0] if key else 0
                if e <= self.kv:
                    cs[e] += c
        return Jet(cs, self.kv)

    def with_validity(self, kv):
        return TauSeries(self.kt, self.coeffs, kv)

    def support_max_weight(self):
        return max((key_weight(k) for k in self.coeffs), default=0)

    # serialization: header "tau K_t K_v", then one monomial per line

    def serialize(self):
        lines = ["tau %d %d" % (self.kt, self.kv)]
        for key in sorted(self.coeffs, key=lambda k: (key_weight(k), k)):
            c = self.coeffs[key]
            exps = [key[i] if i < len(key) else 0 for i in range(self.kt)]
            lines.append("%d/%d %s" % (c.numerator, c.denominator,
                                       " ".join(str(e) for e in exps)))
        return "\n".join(lines) + "\n"

    @classmethod
    def deserialize(cls, text):
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        tag, kt, kv = lines[0].split()
        if tag != "tau":
            raise ValueError("not a tau serialization")
        coeffs = {}
        for ln in lines[1:]:
            bits = ln.split()
            coeffs[trim(int(e) for e in bits[1:])] = Fraction(bits[0])
        return cls(int(kt), coeffs, int(kv))

    def __eq__(self, other):
        if not isinstance(other, TauSeries):
            return NotImplemented
        return (self.kt, self.kv, self.coeffs) == (other.kt, other.kv, other.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0  [kt=%d kv=%d]" % (self.kt, self.kv)
        names = []
        for key in sorted(self.coeffs, key=lambda k: (key_weight(k), k)):
            c = self.coeffs[key]
            mono = []
            for i, e in enumerate(key):
                if e == 0:
                    continue
                v = "s1" if i == 0 else "t%d" % (i + 1)
                mono.append(v if e == 1 else "%s^%d" % (v, e))
            names.append(("%s" % c) + ("*" + "*".join(mono) if mono else ""))
        return " + ".join(names) + "  [kt=%d kv=%d]" % (self.kt, self.kv)

    __repr__ = __str__


def tau_mul(a, b):
    """Product of two TauSeries (same K_t); K_v = min of the inputs'."""
    return a.mul(b)


# ---------------------------------------------------------------------------
# partitions


def partitions_of(n):
    """All partitions of n as descending tuples, lexicographically decreasing."""
    if n == 0:
        return [()]
    out = []

    def rec(rest, maxpart, prefix):
        if rest == 0:
            out.append(tuple(prefix))
            return
        for p in range(min(rest, maxpart), 0, -1):
            rec(rest - p, p, prefix + [p])

    rec(n, n, [])
    return out


def partitions_upto(n):
    out = []
    for m in range(n + 1):
        out.extend(partitions_of(m))
    return out


# ---------------------------------------------------------------------------
# elementary Schur polynomials S_l:  exp(sum t_k z^k) = sum S_l(t) z^l
#
# The dict representation uses the same exponent keys as TauSeries, with
# axis 0 playing the role of t_1.  That makes substitution of the shifted
# variable s1 for t_1 a no-op by design.


@lru_cache(maxsize=None)
def _schur_elem_dict(l):
    if l == 0:
        return (((), Q(1)),)
    # S_l = (1/l) sum_{k=1}^{l} k t_k S_{l-k}
    acc = {}
    for k in range(1, l + 1):
        for key, c in _schur_elem_dict(l - k):
            nk = list(key) + [0] * max(0, k - len(key))
            nk[k - 1] += 1
            nk = trim(nk)
            acc[nk] = acc.get(nk, Q(0)) + c * k
    return tuple(sorted((k, c / l) for k, c in acc.items()))


def schur_elementary(ts, L):
    """S_0..S_L evaluated at a rational vector ts = (t_1, ..., t_len)."""
    ts = [qq(t) for t in ts]
    out = []
    for l in range(L + 1):
        acc = Q(0)
        for key, c in _schur_elem_dict(l):
            term = c
            ok = True
            for i, e in enumerate(key):
                if e == 0:
                    continue
                if i >= len(ts) or ts[i] == 0:
                    ok = False
                    break
                term *= ts[i] ** e
            if ok:
                acc += term
        out.append(acc)
    return out


def schur_poly(l, kt, kv=None):
    """S_l as a TauSeries (t_1 slot = stored s1 axis)."""
    return TauSeries(kt, dict(_schur_elem_dict(l)), kv)


_SCHUR_FN_CACHE = {}


def schur_function(lam, kt):
    """Schur function s_lambda via Jacobi-Trudi, as a TauSeries.

    s_lambda = det( S_{lambda_i - i + j} ), 1 <= i,j <= len(lambda).
    """
    lam = tuple(lam)
    if (lam, kt) in _SCHUR_FN_CACHE:
        return _SCHUR_FN_CACHE[(lam, kt)]
    n = len(lam)
    if n == 0:
        res = TauSeries.one(kt)
        _SCHUR_FN_CACHE[(lam, kt)] = res
        return res

    def entry(i, j):
        m = lam[i] - i + j
        if m < 0:
            return None
        return schur_poly(m, kt)

    memo = {}

    def det(rows):
        if not rows:
            return TauSeries.one(kt)
        if rows in memo:
            return memo[rows]
        col = n - len(rows)
        acc = TauSeries.zero(kt)
        for pos, i in enumerate(rows):
            e = entry(i, col)
            if e is None:
                continue
            sub = det(tuple(r for r in rows if r != i))
            term = e.mul(sub)
            acc = acc + (term if pos % 2 == 0 else -term)
        memo[rows] = acc
        return acc

    res = det(tuple(range(n)))
    _SCHUR_FN_CACHE[(lam, kt)] = res
    return res


# ---------------------------------------------------------------------------
# Miwa shift


def miwa_shift(tau, k_z):
    """Expand tau(t - [z^-1]) as sum_{m=0}^{k_z} c_m(t) z^-m.

    [z^-1] = (z^-1, z^-2/2, z^-3/3, ...); in stored variables the shift acts
    as s1 -> s1 - z^-1, t_k -> t_k - z^-k / k.  The m-th coefficient is valid
    through K_v - m.
    """
    out = [dict() for _ in range(k_z + 1)]
    for key, c in tau.coeffs.items():
        # expand each variable's binomial; track z-weight m and reduced key
        stack = [(0, (), c, 0)]  # (axis, newkey-prefix, coeff, zweight)
        for axis in range(len(key)):
            e = key[axis]
            k = axis + 1  # t_k (axis 0 is s1, shift weight 1)
            nstack = []
            for (_, prefix, cc, m) in stack:
                # choose how many shifted factors j of the e available
                binom = 1
                for j in range(e + 1):
                    if j > 0:
                        binom = binom * (e - j + 1) // j
                    mm = m + k * j
                    if mm > k_z:
                        break
                    shift_c = (Q(-1, k)) ** j
                    nstack.append((axis + 1, prefix + (e - j,), cc * binom * shift_c, mm))
            stack = nstack
        for (_, newkey, cc, m) in stack:
            if cc == 0:
                continue
            nk = trim(newkey)
            out[m][nk] = out[m].get(nk, Q(0)) + cc
    return [TauSeries(tau.kt, out[m], tau.kv - m) for m in range(k_z + 1)]
