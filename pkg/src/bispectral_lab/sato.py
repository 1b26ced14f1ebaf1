"""Truncated Sato Grassmannian: admissible bases extracted from wave series,
tau-functions via Pluecker/Schur expansion, Baker functions from tau, the
vertex operator, the adjoint involution, Gr^(N) membership, and a finite
window fermionic Fock oracle.

Conventions, fixed once
-----------------------

All planes are extracted at the base point x0 = 1 with v_k = e^z z^(-k):
column k of an AdmissiblePlane holds e^(-z) d^k/dx^k Psi(x,z)|_(x=1) expanded
over the v_i.  Tau-functions are stored on the axes (s1, t2, t3, ...) where
s1 = t1 - 1.

The tau of a plane is  tau = sum_lambda (-1)^|lambda| pi_lambda s_lambda
with pi_lambda the Pluecker minors of the admissible matrix and s_lambda the
Schur function written on the stored axes.  The sign makes the Baker formula
(Miwa shift over tau) reproduce the original wave exactly; it is pinned by
round-trip tests, not adjustable.

Two actions of the algebra live on the same stored data and differ only in
the weight-one modes:

* the function-level action (walgebra module): J_(-1) multiplies by
  t1 = 1 + s1.  The highest-weight constraints and module machinery use it.
* the plane-level action (this module's sigma/fermion bridge): J_(-1)
  multiplies by the bare axis s1.  It is the action the wedge mechanics
  transport through sigma, and the one `walgebra.w_apply` realizes.
"""

from __future__ import annotations

from fractions import Fraction

from bispectral_lab.core import (
    Jet,
    PoleAtOne,
    Q,
    TauSeries,
    linalg,
    miwa_shift,
    partitions_upto,
    qq,
    schur_function,
    schur_poly,
)
from bispectral_lab.wave import BesselWave, WaveSeries


class NonInvertibleTau(ArithmeticError):
    pass


class AdmissiblePlane:
    """Window M: columns k = 0..M over rows i in [-M, rmax].

    Column k represents w_(-k) = v_(-k) + (entries at rows i > -k); the
    constructor checks the unit leading coefficient."""

    __slots__ = ("window", "rmax", "cols")

    def __init__(self, window, rmax, cols):
        self.window = int(window)
        self.rmax = int(rmax)
        self.cols = []
        for k, col in enumerate(cols):
            c = {int(i): qq(v) for i, v in col.items() if v != 0 and -self.window <= i <= self.rmax}
            if c.get(-k, Q(0)) != 1:
                raise ValueError("column %d is not admissible (leading coefficient %s)"
                                 % (k, c.get(-k, Q(0))))
            for i in c:
                if i < -k:
                    raise ValueError("column %d has support below its pivot row" % k)
            self.cols.append(c)
        if len(self.cols) != self.window + 1:
            raise ValueError("expected %d columns" % (self.window + 1))

    def reduced(self):
        """Pivot rows cleared by column additions (all maximal minors, hence
        all Pluecker coordinates, are unchanged)."""
        cols = [dict(c) for c in self.cols]
        for k in range(len(cols)):
            piv = cols[k]
            for j in range(len(cols)):
                if j == k:
                    continue
                c = cols[j].get(-k, Q(0))
                if c == 0:
                    continue
                for i, v in piv.items():
                    nv = cols[j].get(i, Q(0)) - c * v
                    if nv == 0:
                        cols[j].pop(i, None)
                    else:
                        cols[j][i] = nv
        return cols

    def pluecker(self, lam, _reduced=None):
        """Pluecker coordinate at the partition lam (raw normalization: the
        vacuum coordinate of the derivative basis is 1)."""
        lam = tuple(lam)
        if lam and lam[0] > self.rmax:
            raise ValueError("partition row %d beyond the stored rows" % lam[0])
        cols = self.reduced() if _reduced is None else _reduced
        l = len(lam)
        if l == 0:
            return Q(1)
        mat = [[cols[k].get(lam[j] - j, Q(0)) for k in range(l)] for j in range(l)]
        return linalg.det(mat)

    def pluecker_table(self, maxweight):
        cols = self.reduced()
        out = {}
        for lam in partitions_upto(maxweight):
            out[lam] = self.pluecker(lam, _reduced=cols)
        return out

    def serialize(self):
        lines = ["plane %d %d" % (self.window, self.rmax)]
        for k, col in enumerate(self.cols):
            for i in sorted(col):
                c = col[i]
                lines.append("%d %d %d/%d" % (k, i, c.numerator, c.denominator))
        return "\n".join(lines) + "\n"

    @classmethod
    def deserialize(cls, text):
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        tag, window, rmax = lines[0].split()
        if tag != "plane":
            raise ValueError("not a plane serialization")
        window = int(window)
        cols = [dict() for _ in range(window + 1)]
        for ln in lines[1:]:
            k, i, c = ln.split()
            cols[int(k)][int(i)] = Fraction(c)
        return cls(window, int(rmax), cols)


def plane_from_wave(psi, window, kt):
    """Extract the admissible basis w_(-k) = e^(-z) d_x^k Psi|_(x=1).

    Needs validity depth >= window + kt; rows are kept up to kt (enough for
    every Pluecker minor of weight <= kt).  Raises PoleAtOne if a coefficient
    is singular at x = 1."""
    if isinstance(psi, BesselWave):
        psi = psi.as_wave()
    if psi.kw < window + kt:
        raise ValueError("wave valid to depth %d; need >= %d" % (psi.kw, window + kt))
    if psi.coeffs and min(psi.coeffs) < 0:
        raise ValueError("not a wave function: positive powers of z present")
    # derivative values a_m^(j)(1) = j! * jet_j for all needed m
    need = window + kt
    derivs = {}
    for m in range(0, need + 1):
        if psi.kind == "exact":
            j = psi.coeff(m).jet(window)
        else:
            if m not in psi.coeffs:
                j = Jet.zero(window)
            else:
                j = psi.coeffs[m]
                if j.order < window:
                    raise ValueError("jet order %d at index %d; need %d"
                                     % (j.order, m, window))
        fact = Q(1)
        row = []
        for t in range(window + 1):
            if t > 0:
                fact *= t
            row.append(j.coeffs[t] * fact if t <= j.order else Q(0))
        derivs[m] = row
    cols = []
    for k in range(window + 1):
        col = {}
        binom = 1
        binoms = [1]
        for j in range(1, k + 1):
            binom = binom * (k - j + 1) // j
            binoms.append(binom)
        for i in range(-k, kt + 1):
            acc = Q(0)
            for j in range(0, k + 1):
                m = i + k - j
                if 0 <= m <= need:
                    acc += binoms[j] * derivs[m][j]
            if acc != 0:
                col[i] = acc
        cols.append(col)
    return AdmissiblePlane(window, kt, cols)


def state_sign(lam):
    """(-1)^|lambda|: the sign relating Pluecker data to Schur coefficients."""
    return -1 if sum(lam) % 2 else 1


def tau_from_plane(plane, kt, normalize=False):
    """tau = sum (-1)^|lambda| pi_lambda s_lambda through weight kt.

    With normalize=True the vacuum coordinate is divided out when nonzero;
    otherwise the lexicographically least nonvanishing Pluecker coordinate is
    scaled to 1 and reported:  returns (tau, flag) in that mode."""
    if plane.window < kt:
        raise ValueError("window %d < kt %d" % (plane.window, kt))
    table = plane.pluecker_table(kt)
    tau = TauSeries.zero(kt)
    for lam, pi in sorted(table.items()):
        if pi == 0:
            continue
        tau = tau + schur_function(lam, kt).scale(pi * state_sign(lam))
    if not normalize:
        return tau
    vac = table[()]
    if vac != 0:
        return tau.scale(1 / vac), "vacuum"
    nz = [lam for lam, pi in sorted(table.items()) if pi != 0]
    if not nz:
        return tau, "zero"
    return tau.scale(1 / table[nz[0]]), "leading:%s" % (nz[0],)


def baker_from_tau(tau, kz):
    """Baker function from tau by the Miwa-shift quotient, evaluated on the
    locus t = (x, 0, 0, ...).  Output is a jet-kind WaveSeries; the m-th
    coefficient is a jet in s = x - 1 of order K_v - m."""
    t0 = tau.coeff(())
    if t0 == 0:
        raise NonInvertibleTau("tau has zero constant coefficient; renormalize first")
    depth = min(kz, tau.kv)
    shifts = miwa_shift(tau, depth)
    base = tau.eval_jet()
    inv = base.inverse()
    coeffs = {}
    for m in range(0, depth + 1):
        order = tau.kv - m
        coeffs[m] = (shifts[m].eval_jet().truncate(order) * inv.truncate(order))
    return WaveSeries(coeffs, depth, "jet")


def vertex_apply(tau, kz):
    """X tau as a z-indexed family {p: TauSeries} for z^p, -kz <= p <= kt.

    X is the vertex operator written on the stored axes:
    exp(sum u_k z^k) exp(-sum z^-k/k d/du_k) with u = (s1, t2, t3, ...).
    The element at z^p is valid through min(K_v + p, kt)."""
    kt = tau.kt
    shifts = miwa_shift(tau, kz)
    fam = {}
    for p in range(-kz, kt + 1):
        acc = TauSeries.zero(kt, kv=min(tau.kv + p, kt))
        for j in range(max(0, p), kt + 1):
            m = j - p
            if m > kz:
                continue
            term = schur_poly(j, kt).mul(shifts[m])
            acc = acc + term.with_validity(acc.kv)
        fam[p] = acc.with_validity(min(tau.kv + p, kt))
    return fam


def involution_tau(tau):
    """The adjoint involution t_k -> (-1)^(k-1) t_k (t1, hence s1, is fixed)."""
    return tau.involution()


def gr_n_check(obj, n, window_slack=0):
    """Gr^(N) membership.

    TauSeries: no valid monomial contains t_(kN) (for N = 1 this reads: the
    series is constant).  AdmissiblePlane: z^N maps every column into the
    column span, checked on the rows where the shift is known."""
    if isinstance(obj, TauSeries):
        k = n
        while k <= obj.kt:
            if obj.depends_on_t(k):
                return False
            k += n
        return True
    plane = obj
    rows = range(-plane.window + window_slack, plane.rmax - n + 1)
    rows = list(rows)
    base = [[col.get(i, Q(0)) for i in rows] for col in plane.cols]
    shifted = [[col.get(i + n, Q(0)) for i in rows] for col in plane.cols]
    r0 = linalg.rank(base)
    r1 = linalg.rank(base + shifted)
    return r0 == r1


# ---------------------------------------------------------------------------
# fermionic Fock oracle
#
# Charge-0 states are linear combinations of partition basis states b_lambda;
# b_lambda is (-1)^|lambda| times the geometric wedge word, so that
# sigma(b_lambda) = s_lambda on the stored axes and sigma carries the plane
# state (coefficients pi_lambda from the minors) to tau_from_plane.
#
# fermion_apply realizes the same generators as walgebra.w_apply: per
# monomial z^a d^b it is (-1)^(a+b+1) times the plain wedge Leibniz action.
# The wedge mechanics themselves (psi wedging/contracting, used by the
# anticommutator suite) are in WedgeWord below, free of any twist.


class FermionState:
    """Finite Q-linear combination of charge-0 partition basis states."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        clean = {}
        if terms:
            for lam, c in terms.items():
                c = qq(c)
                if c != 0:
                    lam = tuple(int(p) for p in lam)
                    clean[lam] = clean.get(lam, Q(0)) + c
                    if clean[lam] == 0:
                        del clean[lam]
        self.terms = clean

    @classmethod
    def vacuum(cls):
        return cls({(): Q(1)})

    @classmethod
    def basis(cls, lam):
        return cls({tuple(lam): Q(1)})

    def __add__(self, other):
        d = dict(self.terms)
        for k, c in other.terms.items():
            d[k] = d.get(k, Q(0)) + c
        return FermionState(d)

    def __sub__(self, other):
        d = dict(self.terms)
        for k, c in other.terms.items():
            d[k] = d.get(k, Q(0)) - c
        return FermionState(d)

    def scale(self, c):
        return FermionState({k: qq(c) * v for k, v in self.terms.items()})

    def is_zero(self):
        return not self.terms

    def __eq__(self, other):
        return isinstance(other, FermionState) and self.terms == other.terms

    def serialize(self):
        lines = ["fermion"]
        for lam in sorted(self.terms):
            c = self.terms[lam]
            lines.append("%d/%d %s" % (c.numerator, c.denominator,
                                       " ".join(str(p) for p in lam)))
        return "\n".join(lines) + "\n"

    @classmethod
    def deserialize(cls, text):
        lines = [ln for ln in text.strip().splitlines() if ln.strip()]
        if lines[0] != "fermion":
            raise ValueError("not a fermion state serialization")
        d = {}
        for ln in lines[1:]:
            bits = ln.split()
            d[tuple(int(p) for p in bits[1:])] = Fraction(bits[0])
        return cls(d)

    def __str__(self):
        return " + ".join("%s*|%s>" % (c, list(lam)) for lam, c in sorted(self.terms.items())) or "0"

    __repr__ = __str__


def _occupied(lam, v):
    """Is index v occupied in the word of lam (i_k = lam_k - k)?"""
    if v <= -len(lam):
        return True
    for k, p in enumerate(lam):
        if p - k == v:
            return True
    return False


def _slot_coeff(j, b):
    """d^b acting on v_j = z^-j: prod_{t=0}^{b-1} (-j - t)."""
    c = Q(1)
    for t in range(b):
        c *= -j - t
    return c


def _apply_monomial_wedge(lam, a, b):
    """Plain r-hat of z^a d^b on the geometric wedge word of lam.

    Returns {partition: coeff}.  Off-diagonal (a != b): Leibniz over slots.
    Diagonal: the normal-ordered eigenvalue (occupied positive slots minus
    vacant non-positive slots)."""
    s = b - a
    lam = tuple(lam)
    ln = len(lam)
    if s == 0:
        val = Q(0)
        for k, p in enumerate(lam):
            j = p - k
            if j >= 1:
                val += _slot_coeff(j, b)
        for j in range(0, -ln, -1):
            if not _occupied(lam, j):
                val -= _slot_coeff(j, b)
        return {lam: val} if val != 0 else {}
    out = {}
    depth = ln + max(s, 0) + 1
    occ = [lam[k] - k if k < ln else -k for k in range(depth)]
    for k in range(depth):
        j = occ[k]
        c = _slot_coeff(j, b)
        if c == 0:
            continue
        new = j + s
        if _occupied(lam, new):
            continue
        rest = occ[:k] + occ[k + 1:]
        # insert new keeping strict descent; count transpositions
        pos = 0
        while pos < len(rest) and rest[pos] > new:
            pos += 1
        word = rest[:pos] + [new] + rest[pos:]
        sign = -1 if (k - pos) % 2 else 1
        mu = tuple(word[t] + t for t in range(len(word)))
        assert all(p >= 0 for p in mu)
        while mu and mu[-1] == 0:
            mu = mu[:-1]
        out[mu] = out.get(mu, Q(0)) + c * sign
    return out


def fermion_apply(zop, state):
    """The plane-level action of a z-operator on a FermionState.

    Matches walgebra.w_apply through sigma; per monomial z^a d^b the matrix
    is (-1)^(a+b+1) times the plain wedge Leibniz action in the partition
    basis (the twist absorbs the basis normalization and the generator sign
    convention)."""
    out = {}
    for (a, b), c in zop.terms.items():
        for lam, v in state.terms.items():
            wedge = _apply_monomial_wedge(lam, a, b)
            bsign_in = state_sign(lam)
            for mu, w in wedge.items():
                # transport into the signed partition basis, with the global
                # generator sign (equivalently: (-1)^(a+b+1) per monomial)
                coef = -c * v * w * bsign_in * state_sign(mu)
                out[mu] = out.get(mu, Q(0)) + coef
    return FermionState(out)


def sigma(state, kt):
    """Boson-fermion correspondence on partition basis states:
    sigma(b_lambda) = s_lambda on the stored axes."""
    tau = TauSeries.zero(kt)
    for lam, c in state.terms.items():
        tau = tau + schur_function(lam, kt).scale(c)
    return tau


def plane_to_state(plane, maxweight):
    """|W> in the signed partition basis: coefficients (-1)^|l| pi_l, so that
    sigma(plane_to_state(P)) = tau_from_plane(P)."""
    table = plane.pluecker_table(maxweight)
    return FermionState({lam: pi * state_sign(lam) for lam, pi in table.items()})


# ---------------------------------------------------------------------------
# raw wedge words with charge, for the anticommutation checks


class WedgeWord:
    """A semi-infinite wedge v_(i_0) ^ v_(i_1) ^ ... with i_k = charge - k
    eventually; stored as the finite head plus the charge."""

    __slots__ = ("head", "charge")

    def __init__(self, head, charge):
        head = list(head)
        # canonical: strictly decreasing, and trailing entries matching the
        # vacuum pattern are absorbed
        for i in range(len(head) - 1):
            if head[i] <= head[i + 1]:
                raise ValueError("not strictly decreasing")
        while head and head[-1] == charge - (len(head) - 1):
            head.pop()
        self.head = tuple(head)
        self.charge = int(charge)

    @classmethod
    def vacuum(cls, charge=0):
        return cls((), charge)

    def occupied(self, j):
        if j in self.head:
            return True
        return j <= self.charge - len(self.head)

    def slot_of(self, j):
        """Position of index j in the full word."""
        for k, v in enumerate(self.head):
            if v == j:
                return k
        if j <= self.charge - len(self.head):
            return len(self.head) + (self.charge - len(self.head) - j)
        raise KeyError(j)


def psi_create(j, word):
    """psi_(-j+1/2): wedge v_j in front; returns (sign, WedgeWord) or None."""
    if word.occupied(j):
        return None
    depth = max(len(word.head), word.charge - j + 1) + 1
    full = [word.head[k] if k < len(word.head) else word.charge - k
            for k in range(depth)]
    pos = 0
    while pos < len(full) and full[pos] > j:
        pos += 1
    full = full[:pos] + [j] + full[pos:]
    sign = -1 if pos % 2 else 1
    return sign, WedgeWord(full, word.charge + 1)


def psi_annihilate(j, word):
    """psi*_(j-1/2): contract v_j; returns (sign, WedgeWord) or None."""
    if not word.occupied(j):
        return None
    depth = max(len(word.head), word.charge - j + 1) + 1
    full = [word.head[k] if k < len(word.head) else word.charge - k
            for k in range(depth)]
    pos = full.index(j)
    full = full[:pos] + full[pos + 1:]
    sign = -1 if pos % 2 else 1
    return sign, WedgeWord(full, word.charge - 1)


def psi_mode(mu, word):
    """psi_mu, mu = -j + 1/2 (so j = 1/2 - mu): wedging with v_j."""
    j = Fraction(1, 2) - mu
    assert j.denominator == 1
    return psi_create(int(j), word)


def psi_star_mode(mu, word):
    """psi*_mu, mu = j - 1/2 (so j = mu + 1/2): contracting v_j."""
    j = mu + Fraction(1, 2)
    assert j.denominator == 1
    return psi_annihilate(int(j), word)
