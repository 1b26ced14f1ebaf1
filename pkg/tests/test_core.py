import random
from fractions import Fraction as Q

from bispectral_lab.core import (
    Jet,
    QuasiMonomialFraction,
    QuasiMonomialSum,
    TauSeries,
    key_weight,
    miwa_shift,
    partitions_upto,
    qm_derivative,
    schur_elementary,
    schur_function,
    schur_poly,
    tau_mul,
)

QMS = QuasiMonomialSum
QMF = QuasiMonomialFraction


def rand_q(rng, num=6, den=4):
    return Q(rng.randint(-num, num), rng.randint(1, den))


# --- elementary Schur polynomials ------------------------------------------

def test_schur_elementary_trivial():
    assert schur_elementary([], 0) == [Q(1)]


def test_schur_elementary_low_degrees():
    # S_2 = t1^2/2 + t2, S_3 = t1^3/6 + t1 t2 + t3, from expanding the
    # exponential generating series directly
    t1, t2, t3 = Q(5, 3), Q(-1, 2), Q(7)
    s = schur_elementary([t1, t2, t3], 3)
    assert s[0] == 1
    assert s[1] == t1
    assert s[2] == t1 ** 2 / 2 + t2
    assert s[3] == t1 ** 3 / 6 + t1 * t2 + t3


def test_schur_generating_identity():
    # sum S_l(t) z^l == truncation of exp(sum t_k z^k) for random rational t
    rng = random.Random(7)
    for _ in range(6):
        L = 8
        ts = [rand_q(rng) for _ in range(L)]
        svals = schur_elementary(ts, L)
        # brute-force oracle: multiply out exp factors term by term
        series = [Q(0)] * (L + 1)
        series[0] = Q(1)
        for k in range(1, L + 1):
            # multiply by exp(t_k z^k) truncated
            term = [Q(0)] * (L + 1)
            fact = Q(1)
            power = [Q(0)] * (L + 1)
            power[0] = Q(1)
            j = 0
            while j * k <= L:
                for a in range(0, L + 1 - j * k):
                    term[a + j * k] += series[a] * (ts[k - 1] ** j) / fact
                j += 1
                fact *= j
            series = term
        assert svals == series


def test_schur_homogeneity():
    rng = random.Random(11)
    for _ in range(5):
        ts = [rand_q(rng) for _ in range(6)]
        c = rand_q(rng)
        if c == 0:
            c = Q(2)
        scaled = [c ** (k + 1) * t for k, t in enumerate(ts)]
        a = schur_elementary(ts, 6)
        b = schur_elementary(scaled, 6)
        for l in range(7):
            assert b[l] == c ** l * a[l]


def test_schur_function_basics():
    kt = 6
    assert schur_function((), kt) == TauSeries.one(kt)
    # s_(1) = t1 (stored: the s1 axis), s_(1,1) = t1^2/2 - t2
    s1 = schur_function((1,), kt)
    assert s1.coeff((1,)) == 1 and len(s1.coeffs) == 1
    s11 = schur_function((1, 1), kt)
    assert s11.coeff((2,)) == Q(1, 2) and s11.coeff((0, 1)) == Q(-1)
    # dual pair s_(2) = t1^2/2 + t2
    s2 = schur_function((2,), kt)
    assert s2.coeff((2,)) == Q(1, 2) and s2.coeff((0, 1)) == Q(1)


def test_schur_function_pieri_spot():
    kt = 6
    # t1 * s_(2,1) = s_(3,1) + s_(2,2) + s_(2,1,1)
    lhs = schur_function((2, 1), kt).mul_t(1) - schur_function((2, 1), kt)
    # mul_t(1) is (1+s1); subtracting the series itself leaves s1 * s_(2,1)
    rhs = (schur_function((3, 1), kt) + schur_function((2, 2), kt)
           + schur_function((2, 1, 1), kt))
    assert lhs.eq_through(rhs)


# --- TauSeries ring ---------------------------------------------------------

def test_tau_mul_examples():
    kt = 8
    one = TauSeries.one(kt)
    tau = TauSeries(kt, {(1,): Q(2), (0, 1): Q(-3)})
    assert tau_mul(one, tau) == tau
    s1 = TauSeries.s1(kt)
    sq = tau_mul(s1, s1)
    assert sq.coeff((2,)) == 1 and len(sq.coeffs) == 1
    t2 = TauSeries.t(2, kt)
    prod = tau_mul(one + t2, one - t2)
    assert prod.coeff(()) == 1 and prod.coeff((0, 2)) == -1 and len(prod.coeffs) == 2


def test_tau_ring_axioms_random():
    rng = random.Random(3)
    kt = 6
    keys = [(), (1,), (2,), (0, 1), (1, 1), (0, 0, 1), (3,)]

    def rand_tau():
        return TauSeries(kt, {k: rand_q(rng) for k in rng.sample(keys, 4)},
                         kv=rng.choice([4, 5, 6]))

    for _ in range(10):
        a, b, c = rand_tau(), rand_tau(), rand_tau()
        assert tau_mul(tau_mul(a, b), c) == tau_mul(a, tau_mul(b, c))
        assert tau_mul(a, b + c) == tau_mul(a, b) + tau_mul(a, c)
        assert tau_mul(a, b).kv == min(a.kv, b.kv)


def test_tau_truncation_and_weights():
    kt = 4
    t4 = TauSeries.t(4, kt)
    assert key_weight((0, 0, 0, 1)) == 4
    assert tau_mul(t4, TauSeries.s1(kt)).coeffs == {}  # weight 5 > kt


def test_tau_serialization_roundtrip():
    kt = 5
    tau = TauSeries(kt, {(1,): Q(2, 3), (0, 2): Q(-5, 7), (): Q(1)}, kv=4)
    text = tau.serialize()
    back = TauSeries.deserialize(text)
    assert back == tau and back.serialize() == text


def test_involution():
    kt = 6
    tau = TauSeries.t(2, kt)
    assert tau.involution() == -tau
    tau1 = TauSeries.s1(kt)
    assert tau1.involution() == tau1
    mixed = TauSeries(kt, {(1, 1): Q(2), (0, 0, 1): Q(3)})
    twice = mixed.involution().involution()
    assert twice == mixed


# --- Miwa shift -------------------------------------------------------------

def test_miwa_shift_trivial():
    kt = 6
    one = TauSeries.one(kt)
    cs = miwa_shift(one, 5)
    assert cs[0].eq_through(one)
    for m in range(1, 6):
        assert cs[m].is_zero_through()


def test_miwa_shift_t1():
    kt = 6
    # tau = t1 = 1 + s1 in stored variables
    tau = TauSeries.one(kt) + TauSeries.s1(kt)
    cs = miwa_shift(tau, 4)
    assert cs[0].eq_through(tau)
    assert cs[1].coeff(()) == -1 and len(cs[1].coeffs) == 1
    for m in (2, 3, 4):
        assert cs[m].is_zero_through()


def test_miwa_shift_t2():
    kt = 6
    tau = TauSeries.t(2, kt)
    cs = miwa_shift(tau, 4)
    assert cs[0].eq_through(tau)
    assert cs[1].is_zero_through()
    assert cs[2].coeff(()) == Q(-1, 2)
    assert cs[3].is_zero_through() and cs[4].is_zero_through()


def test_miwa_validity_drop():
    kt = 6
    tau = TauSeries(kt, {(2, 1): Q(1)}, kv=5)
    cs = miwa_shift(tau, 4)
    for m, c in enumerate(cs):
        assert c.kv == 5 - m


# --- quasi-monomials --------------------------------------------------------

def test_qm_derivative_examples():
    one = QMS.one()
    assert qm_derivative(one).is_zero()
    lnx = QMS.monomial(1, 0, 1)
    d = qm_derivative(lnx)
    assert d == QMS.monomial(1, -1, 0)
    f = QMS.monomial(1, 2, 1)  # x^2 ln x
    d = qm_derivative(f)
    assert d == QMS.from_terms([(2, 1, 1), (1, 1, 0)])


def test_qm_leibniz_random():
    rng = random.Random(5)
    gammas = [Q(0), Q(1), Q(-1, 2), Q(3, 2), Q(2)]
    for _ in range(10):
        f = QMS.from_terms([(rand_q(rng), rng.choice(gammas), rng.randint(0, 2))
                            for _ in range(3)])
        g = QMS.from_terms([(rand_q(rng), rng.choice(gammas), rng.randint(0, 2))
                            for _ in range(3)])
        lhs = qm_derivative(f * g)
        rhs = qm_derivative(f) * g + f * qm_derivative(g)
        assert lhs == rhs


def test_qm_fraction_normalization_and_equality():
    num = QMS.monomial(3, 2)
    den = QMS.from_terms([(2, Q(-3, 2), 0), (4, Q(1, 2), 0)])
    f = QMF(num, den)
    assert f.den.min_exponent() == 0
    assert f.den.terms[(Q(0), 0)] == 1
    g = QMF(num.scale(5), den.scale(5))
    assert f == g
    # cross-multiplied inequality
    h = QMF(num, QMS.one())
    assert f != h


def test_qm_fraction_quotient_rule():
    f = QMF(QMS.monomial(1, 1), QMS.from_terms([(1, 0, 0), (1, 2, 0)]))  # x/(1+x^2)
    d = f.derivative()
    # oracle: ((1+x^2) - x*2x)/(1+x^2)^2 = (1-x^2)/(1+x^2)^2
    num = QMS.from_terms([(1, 0, 0), (-1, 2, 0)])
    den = QMS.from_terms([(1, 0, 0), (1, 2, 0)])
    assert d == QMF(num, den * den)


def test_qm_jets():
    # jet of x^(1/2) at x=1: 1 + s/2 - s^2/8 + ...
    f = QMS.monomial(1, Q(1, 2))
    j = f.jet(3)
    assert j.coeffs == [Q(1), Q(1, 2), Q(-1, 8), Q(1, 16)]
    # ln x jet
    l = QMS.monomial(1, 0, 1).jet(3)
    assert l.coeffs == [0, 1, Q(-1, 2), Q(1, 3)]
    # fraction jet: 1/x = (1+s)^-1
    inv = QMF(QMS.one(), QMS.monomial(1, 1)).jet(3)
    assert inv.coeffs == [1, -1, 1, -1]


def test_jet_arithmetic():
    a = Jet([1, 2, 3], 2)
    b = Jet([1, -1], 1)
    assert (a * b).coeffs == [1, 1]
    assert (a + b).coeffs == [2, 1]
    assert a.inverse().coeffs == [1, -2, 1]
    assert (a * a.inverse()).coeffs == [1, 0, 0]


def test_partitions():
    ps = partitions_upto(4)
    assert len(ps) == 1 + 1 + 2 + 3 + 5
    assert (2, 1, 1) in ps


def test_schur_poly_matches_elementary():
    kt = 6
    rng = random.Random(1)
    ts = [rand_q(rng) for _ in range(kt)]
    vals = schur_elementary(ts, kt)
    for l in range(kt + 1):
        p = schur_poly(l, kt)
        acc = Q(0)
        for key, c in p.coeffs.items():
            term = c
            for i, e in enumerate(key):
                term *= ts[i] ** e
            acc += term
        assert acc == vals[l]
