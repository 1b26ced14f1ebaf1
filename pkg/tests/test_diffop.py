import random
from fractions import Fraction as Q

from bispectral_lab.core import QuasiMonomialFraction, QuasiMonomialSum
from bispectral_lab.diffop import (
    DiffOp,
    ZOperator,
    adjoint_exponents,
    bessel_compose,
    bessel_kernel,
    bessel_operator,
    bessel_power,
    bessel_z_operator,
    dz_to_monomials,
    exponent_vector,
    falling_factorial_coeffs,
    formal_adjoint,
    parse_diffop,
    poly_from_roots,
    right_divide,
    serialize_diffop,
    stirling2,
)

QMS = QuasiMonomialSum
QMF = QuasiMonomialFraction


def rand_beta(rng, n, den=3):
    return tuple(Q(rng.randint(-5, 5), rng.randint(1, den)) for _ in range(n))


def rand_op(rng, maxord=2):
    terms = []
    for _ in range(rng.randint(1, 3)):
        c = Q(rng.randint(-4, 4), rng.randint(1, 3))
        if c == 0:
            c = Q(1)
        terms.append((c, Q(rng.randint(-2, 2)), rng.randint(0, maxord)))
    return DiffOp.from_terms(terms)


# --- composition ------------------------------------------------------------

def test_compose_commutation_rule():
    # d/dx o x = x (d/dx) + 1; in D-form: (x^-1 D) o x = D + 1 acting after x^1
    dx = DiffOp.partial()
    x = DiffOp.x_power(1)
    c = dx.compose(x)
    # c should equal x^0 * (1 + x^... : dx(x f) = f + x f', i.e. 1 + x*dx
    expected = DiffOp.identity() + x.compose(dx)
    assert c == expected


def test_compose_identity():
    rng = random.Random(2)
    for _ in range(5):
        p = rand_op(rng)
        assert DiffOp.identity().compose(p) == p
        assert p.compose(DiffOp.identity()) == p


def test_compose_on_functions():
    rng = random.Random(3)
    for _ in range(8):
        p, q = rand_op(rng), rand_op(rng)
        f = QMS.from_terms([(Q(2), Q(1, 2), 1), (Q(-1), Q(2), 0)])
        lhs = p.compose(q).apply(f)
        rhs = p.apply(q.apply(f))
        assert lhs == rhs


# --- Bessel operators -------------------------------------------------------

def test_bessel_operator_examples():
    # beta=(0): x^-1 D = d/dx
    assert bessel_operator([0]) == DiffOp.partial()
    # beta=(0,1): x^-2(D^2 - D) = d^2/dx^2
    l = bessel_operator([0, 1])
    dd = DiffOp.partial().compose(DiffOp.partial())
    assert l == dd
    # beta=(2,-1): x^-2 (D-2)(D+1) = x^-2 (D^2 - D - 2)
    l2 = bessel_operator([2, -1])
    assert l2 == DiffOp.from_terms([(1, -2, 2), (-1, -2, 1), (-2, -2, 0)])


def test_bessel_compose_lemma():
    rng = random.Random(4)
    assert bessel_compose([0], [0]) == (1, 0)
    assert bessel_compose([0, 1], [0, 1]) == (2, 3, 0, 1)
    assert bessel_compose([], [Q(1, 2)]) == (Q(1, 2),)
    for _ in range(10):
        a = rand_beta(rng, rng.randint(1, 3))
        b = rand_beta(rng, rng.randint(1, 3))
        gamma = bessel_compose(a, b)
        assert bessel_operator(a).compose(bessel_operator(b)) == bessel_operator(gamma)


def test_bessel_power_lemma():
    assert bessel_power([0], 2) == (0, 1)
    assert bessel_power([0, 1], 2) == (0, 2, 1, 3)
    rng = random.Random(5)
    for _ in range(10):
        b = rand_beta(rng, rng.randint(1, 3))
        d = rng.randint(1, 3)
        bd = bessel_power(b, d)
        op = DiffOp.identity()
        for _ in range(d):
            op = op.compose(bessel_operator(b))
        assert op == bessel_operator(bd)
        assert bessel_power(b, 1) == b


def test_bessel_kernel():
    ker = bessel_kernel([0, 0])
    assert ker == [QMS.monomial(1, 0, 0), QMS.monomial(1, 0, 1)]
    ker = bessel_kernel([2, -1])
    assert ker == [QMS.monomial(1, -1, 0), QMS.monomial(1, 2, 0)]
    assert bessel_kernel([0]) == [QMS.one()]
    rng = random.Random(6)
    for _ in range(10):
        b = rand_beta(rng, rng.randint(1, 3), den=2)
        op = bessel_operator(b)
        for f in bessel_kernel(b):
            assert op.apply(f).is_zero()


# --- adjoint ----------------------------------------------------------------

def test_adjoint_examples():
    dx = DiffOp.partial()
    assert formal_adjoint(dx) == dx.scale(-1)
    x = DiffOp.x_power(1)
    assert formal_adjoint(x) == x
    d_euler = DiffOp.euler()
    assert formal_adjoint(d_euler) == d_euler.scale(-1) - DiffOp.identity()


def test_adjoint_antiautomorphism_involution():
    rng = random.Random(7)
    for _ in range(10):
        p, q = rand_op(rng), rand_op(rng)
        assert formal_adjoint(p.compose(q)) == formal_adjoint(q).compose(formal_adjoint(p))
        assert formal_adjoint(formal_adjoint(p)) == p


def test_adjoint_beta():
    assert adjoint_exponents(exponent_vector([2, -1])) == (Q(-1), Q(2))
    assert adjoint_exponents(exponent_vector([0, 1, 2])) == (Q(2), Q(1), Q(0))


# --- division ---------------------------------------------------------------

def test_right_divide_trivial():
    dd = DiffOp.partial().compose(DiffOp.partial())
    q, r = right_divide(dd, DiffOp.partial())
    assert r.is_zero() and q == DiffOp.partial()
    q, r = right_divide(DiffOp.partial(), dd)
    assert q.is_zero() and r == DiffOp.partial()


def test_right_divide_bessel_factor():
    # a = L_(2,-1), p = d/dx - 2/x (kernel x^2): exact division, ord q = 1
    a = bessel_operator([2, -1])
    p = DiffOp.partial() - DiffOp.from_terms([(2, -1, 0)])
    assert p.apply(QMS.monomial(1, 2)).is_zero()
    q, r = right_divide(a, p)
    assert r.is_zero()
    assert q.order() == 1
    assert q.compose(p) == a


def test_right_divide_reconstruction_random():
    rng = random.Random(8)
    for _ in range(10):
        a, p = rand_op(rng), rand_op(rng)
        if p.is_zero():
            continue
        lead = p.leading_coeff()
        if not lead.num.is_log_free():
            continue
        q, r = right_divide(a, p)
        assert q.compose(p) + r == a
        assert r.is_zero() or r.order() < p.order()


# --- serialization ----------------------------------------------------------

def test_diffop_serialization_roundtrip():
    p = bessel_operator([Q(1, 2), Q(1, 2)])
    text = serialize_diffop(p)
    assert parse_diffop(text) == p
    assert serialize_diffop(parse_diffop(text)) == text


# --- z-side operators -------------------------------------------------------

def test_dz_to_monomials_examples():
    # D_z -> z dz
    assert dz_to_monomials(0, [0, 1]) == ZOperator.monomial(1, 1, 1)
    # D_z^2 -> z^2 dz^2 + z dz
    got = dz_to_monomials(0, [0, 0, 1])
    assert got == ZOperator({(2, 2): Q(1), (1, 1): Q(1)})
    # z^-2 * D_z -> z^-1 dz
    assert dz_to_monomials(-2, [0, 1]) == ZOperator.monomial(1, -1, 1)


def test_dz_round_trip():
    rng = random.Random(9)
    for _ in range(10):
        zpow = rng.randint(-3, 3)
        dpoly = [Q(rng.randint(-3, 3)) for _ in range(rng.randint(1, 4))]
        zop = dz_to_monomials(zpow, dpoly)
        back = zop.to_dz()
        # re-assemble and compare as ZOperators
        acc = ZOperator.zero()
        for zp, poly in back.items():
            acc = acc + dz_to_monomials(zp, poly)
        assert acc == zop


def test_zoperator_compose():
    dz = ZOperator.monomial(1, 0, 1)
    z = ZOperator.monomial(1, 1, 0)
    # dz o z = z dz + 1
    assert dz.compose(z) == ZOperator({(1, 1): Q(1), (0, 0): Q(1)})
    # D_z = z dz; D_z^2 via compose matches Stirling expansion
    D = z.compose(dz)
    assert D == ZOperator.monomial(1, 1, 1)
    assert D.compose(D) == dz_to_monomials(0, [0, 0, 1])


def test_bessel_z_operator():
    # L_(0)(z, dz) = z^-1 D = dz
    assert bessel_z_operator([0]) == ZOperator.monomial(1, 0, 1)


def test_stirling_and_falling():
    assert stirling2(3, 2) == 3
    assert falling_factorial_coeffs(2) == [Q(0), Q(-1), Q(1)]  # D(D-1) = D^2 - D
    assert poly_from_roots([1, 2]) == [Q(2), Q(-3), Q(1)]
