import pytest
from fractions import Fraction as Q

from bispectral_lab.core import QuasiMonomialFraction, QuasiMonomialSum
from bispectral_lab.diffop import (
    DiffOp,
    ZOperator,
    bessel_operator,
    bessel_z_operator,
    exponent_vector,
)
from bispectral_lab.wave import (
    BesselWave,
    WaveSeries,
    apply_x,
    apply_z,
    bessel_wave,
)

QMS = QuasiMonomialSum
QMF = QuasiMonomialFraction

# beta vectors used across the suite (all satisfy sum = N(N-1)/2)
BETAS = [
    (Q(0),),
    (Q(0), Q(1)),
    (Q(2), Q(-1)),
    (Q(1, 2), Q(1, 2)),
    (Q(7, 2), Q(-5, 2)),
    (Q(0), Q(1), Q(2)),
    (Q(3), Q(1), Q(-1)),
]


def test_bessel_wave_requires_admissible_sum():
    with pytest.raises(ValueError):
        bessel_wave([1], 4)


def test_bessel_wave_exponential_case():
    # beta = (0, 1, ..., N-1): L = (d/dx)^N, psi = e^(xz)
    for n in (1, 2, 3):
        w = bessel_wave(list(range(n)), 8)
        assert w.bs[0] == 1
        assert all(b == 0 for b in w.bs[1:])


def test_bessel_wave_rank2_example():
    # beta=(2,-1): recursion gives b_1 = -1 and 0 beyond
    w = bessel_wave([2, -1], 8)
    assert w.bs[1] == -1
    assert all(b == 0 for b in w.bs[2:])


def test_bessel_wave_half_half():
    w = bessel_wave([Q(1, 2), Q(1, 2)], 6)
    assert w.bs[1] == Q(1, 8)
    # closed-form check of the next coefficient via the derived recursion
    # b_k = ((k-1/2)^2 - 0)/(2k) b_(k-1) for alpha = 0
    assert w.bs[2] == (Q(3, 2) ** 2) / 4 * w.bs[1]


def test_bessel_wave_uniqueness_truncation():
    for beta in BETAS:
        deep = bessel_wave(beta, 12)
        shallow = bessel_wave(beta, 5)
        assert deep.bs[:6] == shallow.bs


def test_ode_identities_through_validity():
    """(2.17'1)/(2.17'2)/(2.17'3) analogues, exact through validity depth."""
    kz = 24
    for beta in BETAS:
        n = len(beta)
        w = bessel_wave(beta, kz)
        wave = w.as_wave()
        # x-side eigenvalue: L_beta(x) Psi = z^N Psi
        lhs = apply_x(bessel_operator(beta), wave)
        rhs = wave.mul_z(n)
        assert lhs.eq_through(rhs)
        assert lhs.kw == kz - n
        # D_x Psi = D_z Psi
        dx = wave.apply_diffop(DiffOp.euler())
        dz = wave.apply_zop(ZOperator.monomial(1, 1, 1))
        assert dx.eq_through(dz)
        # z-side: L_beta(z, dz) Psi = x^N Psi
        lz = apply_z(bessel_z_operator(beta), wave)
        rz = wave.mul_x_power(n)
        assert lz.eq_through(rz)


def test_apply_x_exponential():
    w = WaveSeries.exponential(8)
    out = apply_x(DiffOp.partial(), w)
    assert out.eq_through(w.mul_z(1))
    assert out.kw == 7
    assert apply_x(DiffOp.identity(), w).eq_through(w)


def test_apply_x_wave_shift_720():
    # (d/dx - beta_i/x) Psi_beta = z Psi_beta' with beta' from the one-step rule
    beta = (Q(2), Q(-1))
    w = bessel_wave(beta, 16).as_wave()
    p = DiffOp.partial() - DiffOp.from_terms([(2, -1, 0)])
    lhs = apply_x(p, w)
    bp = (Q(2) + 2 - 1, Q(-1) - 1)  # raise chosen slot by N, lower all by 1
    rhs = bessel_wave(bp, 16).as_wave().mul_z(1)
    assert lhs.eq_through(rhs)


def test_apply_z_exponential():
    w = WaveSeries.exponential(8)
    dz = w.apply_zop(ZOperator.monomial(1, 1, 1))  # D_z
    assert dz.eq_through(w.mul_x_power(1).mul_z(1))  # xz e^(xz): index -1
    got = dz.coeffs[-1]
    assert got == QMF.monomial(1, 1)


def test_wave_translation_consistency():
    # e^(-x0 z) Psi(x + x0, z) for a polynomial-coefficient test wave
    x0 = Q(3, 2)
    a1 = QMS.from_terms([(2, 1, 0), (1, 0, 0)])  # 2x + 1
    a2 = QMS.from_terms([(1, 2, 0)])  # x^2
    w = WaveSeries({0: QMF.one(), 1: QMF(a1), 2: QMF(a2)}, 6)
    shifted = w.shift_x0(x0)
    assert shifted.coeffs[1] == QMF(QMS.from_terms([(2, 1, 0), (4, 0, 0)]))
    assert shifted.coeffs[2] == QMF(QMS.from_terms([(1, 2, 0), (3, 1, 0), (Q(9, 4), 0, 0)]))
    # derivative data transported: d/dx then shift == shift then d/dx
    left = apply_x(DiffOp.partial(), w).shift_x0(x0)
    right = apply_x(DiffOp.partial(), shifted)
    assert left.eq_through(right)


def test_wave_serialization_roundtrip():
    w = bessel_wave([Q(7, 2), Q(-5, 2)], 6).as_wave()
    text = w.serialize()
    back = WaveSeries.deserialize(text)
    assert back.eq_through(w) and back.kw == w.kw
    assert back.serialize() == text


def test_jet_wave_operator_action():
    # jets support x-operators: compare exact vs jetified route
    w = bessel_wave([2, -1], 10).as_wave()
    jw = WaveSeries({m: w.coeff(m).jet(6) for m in range(0, 11)}, 10, "jet")
    p = DiffOp.partial() - DiffOp.from_terms([(2, -1, 0)])
    out_exact = apply_x(p, w)
    out_jet = apply_x(p, jw)
    assert out_jet.first_divergence(out_exact) is None
