"""Scalar arithmetic, literals, and exact magnitudes.

Oracles: plain Fractions and integer-polynomial arithmetic mod p (written
here, independent of the package's representation), and sympy's sqrt for
the Z[sqrt(q)] layer.
"""

import random
from fractions import Fraction
from math import inf

import pytest
import sympy

from biquadfl.errors import ConfigError, DivisionByZero, PrecisionExhausted
from biquadfl.localfield import (FieldDesc, QSqrt, Scalar, abs_q_half,
                                 parse_literal)

Q3 = FieldDesc("padic", 3)
Q5 = FieldDesc("padic", 5)
F3 = FieldDesc("laurent", 3)
F2 = FieldDesc("laurent", 2)


# ---------------------------------------------------------------------------
# oracles
# ---------------------------------------------------------------------------

def padic_val(fr, p):
    """p-adic valuation of a Fraction, by repeated division."""
    if fr == 0:
        return inf
    v = 0
    n = fr.numerator
    while n % p == 0:
        n //= p
        v += 1
    d = fr.denominator
    while d % p == 0:
        d //= p
        v -= 1
    return v


def poly_mul(a, b, p):
    """Integer-coefficient polynomial product mod p (ascending tuples)."""
    if not a or not b:
        return ()
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] = (out[i + j] + x * y) % p
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def poly_add(a, b, p):
    out = [0] * max(len(a), len(b))
    for i, x in enumerate(a):
        out[i] = x
    for i, y in enumerate(b):
        out[i] = (out[i] + y) % p
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


def rand_poly(rng, p, deg, monicish=False):
    cs = [rng.randrange(p) for _ in range(deg + 1)]
    if monicish:
        cs[-1] = 1 + rng.randrange(p - 1) if p > 2 else 1
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def rand_laurent(rng, desc, allow_zero=True):
    """A random rational function (num, den) with unit (nonzero constant
    term) or t-power denominator, as a package Scalar plus its oracle."""
    p = desc.p
    num = rand_poly(rng, p, rng.randrange(4))
    if not num and not allow_zero:
        num = (1,)
    den = rand_poly(rng, p, rng.randrange(3))
    if not den or den[0] == 0:
        den = tuple([0] * rng.randrange(3)) + (1 + rng.randrange(p - 1),)
    return Scalar(desc, (num, den)), (num, den)


# ---------------------------------------------------------------------------
# p-adic scalars
# ---------------------------------------------------------------------------

def test_padic_arithmetic_matches_fractions():
    rng = random.Random(101)
    for _ in range(300):
        a = Fraction(rng.randint(-40, 40), rng.randint(1, 24))
        b = Fraction(rng.randint(-40, 40), rng.randint(1, 24))
        x, y = Scalar(Q3, a), Scalar(Q3, b)
        assert (x + y).core == a + b
        assert (x - y).core == a - b
        assert (x * y).core == a * b
        if b != 0:
            assert (x / y).core == a / b


def test_padic_valuation_and_abs():
    rng = random.Random(102)
    for desc in (Q3, Q5):
        for _ in range(200):
            a = Fraction(rng.randint(-60, 60), rng.randint(1, 50))
            if a == 0:
                continue
            assert Scalar(desc, a).valuation() == padic_val(a, desc.p)
    assert Scalar(Q3, Fraction(0)).is_zero()


def test_padic_digits_reconstruct():
    rng = random.Random(103)
    for _ in range(60):
        a = Fraction(rng.randint(-50, 50), rng.randint(1, 40))
        if a == 0:
            continue
        x = Scalar(Q3, a)
        v = x.valuation()
        ds = x.digits(v, v + 12)
        acc = sum(Fraction(d) * Fraction(3) ** (v + i)
                  for i, d in enumerate(ds))
        # truncation agrees with a mod 3^(v+12)
        assert padic_val(a - acc, 3) >= v + 12 if a != acc else True


def test_padic_pow_and_inverse():
    x = Scalar(Q3, Fraction(3, 2))
    assert (x ** 3).core == Fraction(27, 8)
    assert (x ** -2).core == Fraction(4, 9)
    assert (x * x.inv()).core == 1
    with pytest.raises(DivisionByZero):
        Scalar(Q3, Fraction(0)).inv()


def test_capped_precision_guards():
    x = Scalar(Q3, Fraction(0), prec=6)  # zero at precision 6
    with pytest.raises(PrecisionExhausted):
        x.valuation()
    with pytest.raises(PrecisionExhausted):
        x.inv()


# ---------------------------------------------------------------------------
# Laurent scalars
# ---------------------------------------------------------------------------

def cross_equal(mine, oracle, p):
    """Rational-function equality via cross multiplication mod p."""
    n1, d1 = mine
    n2, d2 = oracle
    return poly_mul(n1, d2, p) == poly_mul(n2, d1, p)


def test_laurent_arithmetic_matches_polynomial_oracle():
    rng = random.Random(104)
    for desc in (F3, F2):
        p = desc.p
        for _ in range(200):
            x, (n1, d1) = rand_laurent(rng, desc)
            y, (n2, d2) = rand_laurent(rng, desc)
            s = x + y
            o_num = poly_add(poly_mul(n1, d2, p), poly_mul(n2, d1, p), p)
            assert cross_equal(s.core, (o_num, poly_mul(d1, d2, p)), p)
            m = x * y
            assert cross_equal(m.core, (poly_mul(n1, n2, p),
                                        poly_mul(d1, d2, p)), p)
            if n2:
                q = x / y
                assert cross_equal(q.core, (poly_mul(n1, d2, p),
                                            poly_mul(d1, n2, p)), p)


def test_laurent_valuation():
    rng = random.Random(105)
    for _ in range(150):
        x, (num, den) = rand_laurent(rng, F3, allow_zero=False)
        if not num:
            continue
        v_num = next(i for i, c in enumerate(num) if c)
        v_den = next(i for i, c in enumerate(den) if c)
        assert x.valuation() == v_num - v_den
    t = F3.uniformizer(1)
    assert t.valuation() == 1
    assert F3.uniformizer(-4).valuation() == -4


def test_laurent_subtraction_and_negation():
    x = parse_literal(F2, "1+t+t^3")
    assert (x - x).is_zero()
    assert (x + x).is_zero()  # char 2
    y = parse_literal(F3, "2*t")
    assert (-y + y).is_zero()
    assert (y + y + y).is_zero()  # char 3


# ---------------------------------------------------------------------------
# literals
# ---------------------------------------------------------------------------

def test_parse_literal_basic_forms():
    assert parse_literal(Q3, "1/2").core == Fraction(1, 2)
    assert parse_literal(Q3, "-3/2*pi^2").core == Fraction(-27, 2)
    assert parse_literal(Q3, "pi^-1").core == Fraction(1, 3)
    assert parse_literal(Q3, "2 + pi").core == Fraction(5)
    assert parse_literal(Q3, "(1+pi)^2").core == Fraction(16)
    t = parse_literal(F3, "t^3+2*t")
    assert t.valuation() == 1
    neg = parse_literal(F3, "(1+t)/(t^2)")
    assert neg.valuation() == -2
    # pi and t are synonyms for the uniformizer
    assert parse_literal(F3, "pi") == parse_literal(F3, "t")


def test_parse_literal_rejects_junk():
    for bad in ("1/", "x+1", "2^^3", "(1", "1)", "", "3..5", "pi^t"):
        with pytest.raises(ConfigError):
            parse_literal(Q3, bad)
    with pytest.raises(ConfigError):
        parse_literal(F2, "1+&")


def test_literal_round_trip():
    rng = random.Random(106)
    for _ in range(150):
        a = Fraction(rng.randint(-90, 90), rng.randint(1, 60))
        x = Scalar(Q3, a)
        assert parse_literal(Q3, x.literal()) == x
    for desc in (F3, F2):
        for _ in range(150):
            x, _ = rand_laurent(rng, desc)
            assert parse_literal(desc, x.literal()) == x


# ---------------------------------------------------------------------------
# QSqrt = Z[sqrt(q)] magnitudes
# ---------------------------------------------------------------------------

def test_qsqrt_matches_sympy():
    rng = random.Random(107)
    r3 = sympy.sqrt(3)
    for _ in range(120):
        a, b = (Fraction(rng.randint(-9, 9), rng.randint(1, 6))
                for _ in range(2))
        c, d = (Fraction(rng.randint(-9, 9), rng.randint(1, 6))
                for _ in range(2))
        x, y = QSqrt(3, a, b), QSqrt(3, c, d)
        sx = sympy.Rational(a.numerator, a.denominator) + \
            sympy.Rational(b.numerator, b.denominator) * r3
        sy = sympy.Rational(c.numerator, c.denominator) + \
            sympy.Rational(d.numerator, d.denominator) * r3
        for mine, theirs in (((x + y), sx + sy), ((x - y), sx - sy),
                             ((x * y), sx * sy)):
            ref = sympy.expand(theirs)
            assert sympy.Rational(mine.a.numerator, mine.a.denominator) \
                == ref.coeff(r3, 0)
            assert sympy.Rational(mine.b.numerator, mine.b.denominator) \
                == ref.coeff(r3, 1)


def test_qsqrt_half_power_and_monomial():
    assert QSqrt.half_power(3, 0) == QSqrt(3, 1)
    assert QSqrt.half_power(3, 2) == QSqrt(3, 3)
    assert QSqrt.half_power(3, 1) == QSqrt(3, 0, 1)
    assert QSqrt.half_power(3, -1) == QSqrt(3, 0, Fraction(1, 3))
    assert QSqrt.half_power(2, 5) == QSqrt(2, 0, 4)
    m = QSqrt(3, 0, Fraction(5, 2)).monomial()
    assert m == (1, Fraction(5, 2))
    assert QSqrt(3, 1, 1).monomial() is None
    assert QSqrt(3, Fraction(9), 0).to_json() == {"halfpow": 4, "rat": "1"}


def test_abs_q_half():
    assert abs_q_half(3, 0) == QSqrt(3, 1)
    assert abs_q_half(3, 2) == QSqrt(3, Fraction(1, 3))
    assert abs_q_half(3, -1) == QSqrt(3, 0, 1)
    assert abs_q_half(3, inf) == QSqrt(3, 0, 0)


def test_qsqrt_equality_is_exact():
    # 1 + sqrt(3) != 1 + sqrt(3) + epsilon in any disguise
    assert QSqrt(3, 1, 1) != QSqrt(3, 1, Fraction(999999, 1000000))
    assert QSqrt(3, Fraction(1, 3), 0) == QSqrt(3, Fraction(1, 3))
