"""Exact linear algebra against a sympy oracle over the rationals, plus the
valuation-aware helpers on Laurent scalars."""

import random
from fractions import Fraction

import sympy

from biquadfl.linalg import (ScalarRing, berkowitz_charpoly, gauss_kernel,
                             lattice_column_basis, mat_det, mat_eye,
                             mat_inv_field, mat_mul, mat_rank,
                             scalar_mat_integral, scalar_mat_val_min,
                             smith_valuations, solve_any)
from biquadfl.localfield import FieldDesc, Scalar, parse_literal

Q3 = FieldDesc("padic", 3)
F2 = FieldDesc("laurent", 2)
R3 = ScalarRing(Q3)


def rand_mat(rng, n, m=None, lo=-6, hi=6):
    m = n if m is None else m
    fr = [[Fraction(rng.randint(lo, hi), rng.randint(1, 3))
           for _ in range(m)] for _ in range(n)]
    mine = [[Scalar(Q3, x) for x in row] for row in fr]
    oracle = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator)
                            for x in row] for row in fr])
    return mine, oracle


def to_sympy(A):
    return sympy.Matrix([[sympy.Rational(x.core.numerator,
                                         x.core.denominator)
                          for x in row] for row in A])


def test_det_matches_sympy():
    rng = random.Random(201)
    for n in (1, 2, 3, 4):
        for _ in range(25):
            A, SA = rand_mat(rng, n)
            d = mat_det(R3, A)
            assert d.core == Fraction(int(SA.det().p), int(SA.det().q))


def test_charpoly_matches_sympy():
    rng = random.Random(202)
    lam = sympy.Symbol("lam")
    for n in (2, 3):
        for _ in range(15):
            A, SA = rand_mat(rng, n)
            cp = berkowitz_charpoly(R3, A)   # ascending, monic
            sp = SA.charpoly(lam).all_coeffs()   # descending
            assert len(cp) == n + 1
            for k, c in enumerate(cp):
                ref = sympy.Rational(sp[n - k])
                assert c.core == Fraction(int(ref.p), int(ref.q))


def test_inverse_and_rank():
    rng = random.Random(203)
    for _ in range(25):
        A, SA = rand_mat(rng, 3)
        if SA.det() == 0:
            assert mat_rank(R3, A) < 3
            continue
        Ainv = mat_inv_field(R3, A)
        assert to_sympy(Ainv) == SA.inv()
        assert mat_rank(R3, A) == 3
        prod = mat_mul(R3, A, Ainv)
        assert to_sympy(prod) == sympy.eye(3)


def test_kernel_and_solver():
    rng = random.Random(204)
    for _ in range(30):
        A, SA = rand_mat(rng, 3, 4)
        kern = gauss_kernel(R3, A)
        assert len(kern) == 4 - SA.rank()
        for v in kern:
            img = [sum((a * x for a, x in zip(row, v)), Q3.zero())
                   for row in A]
            assert all(e.is_zero() for e in img)
        # consistent systems get solved, inconsistent ones get None
        xs = [Scalar(Q3, Fraction(rng.randint(-3, 3))) for _ in range(4)]
        b = [sum((a * x for a, x in zip(row, xs)), Q3.zero()) for row in A]
        sol = solve_any(R3, A, b)
        assert sol is not None
        img = [sum((a * x for a, x in zip(row, sol)), Q3.zero())
               for row in A]
        assert all((e - t).is_zero() for e, t in zip(img, b))


def test_solver_detects_inconsistency():
    A = [[Scalar(Q3, Fraction(1)), Scalar(Q3, Fraction(2))],
         [Scalar(Q3, Fraction(2)), Scalar(Q3, Fraction(4))]]
    b = [Scalar(Q3, Fraction(1)), Scalar(Q3, Fraction(3))]
    assert solve_any(R3, A, b) is None


def test_smith_valuations_padic():
    # diag(1, 3, 9) has elementary-divisor valuations (0, 1, 2)
    A = [[Scalar(Q3, Fraction(v)) for v in row]
         for row in ((1, 0, 0), (0, 3, 0), (0, 0, 9))]
    assert smith_valuations(A) == [0, 1, 2]
    # a unimodular-conjugated version keeps them
    G = [[Scalar(Q3, Fraction(v)) for v in row]
         for row in ((1, 1, 0), (0, 1, 2), (0, 0, 1))]
    assert smith_valuations(mat_mul(R3, G, A)) == [0, 1, 2]


def test_smith_valuations_laurent():
    A = [[parse_literal(F2, lit) for lit in row]
         for row in (("1/t", "0"), ("1", "t^2"))]
    # min entry valuation -1, det valuation 1 => divisors t^-1, t^2
    assert smith_valuations(A) == [-1, 2]


def test_valuation_helpers():
    A = [[parse_literal(F2, "t^2"), parse_literal(F2, "1/t")],
         [parse_literal(F2, "0"), parse_literal(F2, "1")]]
    assert scalar_mat_val_min(A) == -1
    assert not scalar_mat_integral(A)
    B = mat_eye(ScalarRing(F2), 2)
    assert scalar_mat_val_min(B) == 0
    assert scalar_mat_integral(B)


def test_lattice_column_basis():
    # (3,0),(1,1),(0,3) generate the index-3 sublattice {x = y mod 3}
    cols = [[Scalar(Q3, Fraction(a)) for a in col]
            for col in ((3, 0), (1, 1), (0, 3))]
    basis = lattice_column_basis(cols)
    M = [[basis[j][i] for j in range(2)] for i in range(2)]
    assert smith_valuations(M) == [0, 1]
    # adding (1,0) makes it the full standard lattice
    basis2 = lattice_column_basis(
        cols + [[Scalar(Q3, Fraction(1)), Scalar(Q3, Fraction(0))]])
    M2 = [[basis2[j][i] for j in range(2)] for i in range(2)]
    assert smith_valuations(M2) == [0, 0]
