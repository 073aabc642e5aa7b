"""Unramified extensions: ring axioms, Frobenius as an automorphism of the
right order, norms landing in the base, and coordinate round trips."""

import random
from fractions import Fraction

import pytest

from biquadfl.errors import UnsupportedExtension
from biquadfl.extension import unramified_extension
from biquadfl.localfield import FieldDesc, Scalar

Q3 = FieldDesc("padic", 3)
Q5 = FieldDesc("padic", 5)
F3 = FieldDesc("laurent", 3)
F2 = FieldDesc("laurent", 2)


def rand_el(rng, ext, desc):
    cs = [desc.frac(rng.randint(-6, 6), rng.randint(1, 3))
          for _ in range(ext.deg)]
    return ext.from_base_coords(cs)


def rand_laurent_el(rng, ext, desc):
    cs = []
    for _ in range(ext.deg):
        num = tuple(rng.randrange(desc.p) for _ in range(rng.randint(1, 3)))
        cs.append(Scalar(desc, (num, (1,))))
    return ext.from_base_coords(cs)


CASES = [(Q3, 2), (Q3, 4), (Q5, 2), (F3, 2), (F2, 2), (F2, 4)]


def _sample(rng, ext, desc):
    if desc.kind == "padic":
        return rand_el(rng, ext, desc)
    return rand_laurent_el(rng, ext, desc)


def test_ring_axioms_and_inverse():
    rng = random.Random(301)
    for desc, d in CASES:
        ext = unramified_extension(desc, d)
        for _ in range(40):
            a = _sample(rng, ext, desc)
            b = _sample(rng, ext, desc)
            c = _sample(rng, ext, desc)
            assert ext.eq(ext.mul(a, ext.mul(b, c)),
                          ext.mul(ext.mul(a, b), c))
            assert ext.eq(ext.mul(a, ext.add(b, c)),
                          ext.add(ext.mul(a, b), ext.mul(a, c)))
            assert ext.eq(ext.mul(a, b), ext.mul(b, a))
            if not ext.is_zero(a):
                assert ext.eq(ext.mul(a, ext.inv(a)), ext.one())


def test_frobenius_generates_the_galois_group():
    rng = random.Random(302)
    for desc, d in CASES:
        ext = unramified_extension(desc, d)
        for _ in range(25):
            a = _sample(rng, ext, desc)
            b = _sample(rng, ext, desc)
            fa = ext.frob(a)
            assert ext.eq(ext.frob(ext.add(a, b)),
                          ext.add(fa, ext.frob(b)))
            assert ext.eq(ext.frob(ext.mul(a, b)),
                          ext.mul(fa, ext.frob(b)))
            # order exactly d on a generator-ish element
            x = a
            for _ in range(d):
                x = ext.frob(x)
            assert ext.eq(x, a)
        # frob fixes the base
        s = desc.frac(7, 2) if desc.kind == "padic" else desc.uniformizer(1)
        assert ext.eq(ext.frob(ext.from_base(s)), ext.from_base(s))
        # frob^k composition
        a = _sample(rng, ext, desc)
        assert ext.eq(ext.frob(ext.frob(a)), ext.frob(a, 2))


def test_norm_lands_in_base():
    rng = random.Random(303)
    for desc, d in CASES:
        ext = unramified_extension(desc, d)
        for _ in range(20):
            a = _sample(rng, ext, desc)
            n = ext.one()
            for k in range(d):
                n = ext.mul(n, ext.frob(a, k))
            cs = ext.to_base_coords(n)
            assert all(c.is_zero() for c in cs[1:])


def test_coordinate_round_trip():
    rng = random.Random(304)
    for desc, d in CASES:
        ext = unramified_extension(desc, d)
        for _ in range(20):
            a = _sample(rng, ext, desc)
            cs = ext.to_base_coords(a)
            assert len(cs) == d
            assert ext.eq(ext.from_base_coords(cs), a)


def test_padic_quadratic_nonresidue_defining_relation():
    # E = Q_3(x), x^2 = d with d a unit nonresidue: x has valuation 0 and
    # x^2 lies in the base
    ext = unramified_extension(Q3, 2)
    x = ext.from_base_coords([Q3.zero(), Q3.one()])
    x2 = ext.mul(x, x)
    cs = ext.to_base_coords(x2)
    assert cs[1].is_zero()
    assert cs[0].valuation() == 0
    # Frobenius negates x (the nontrivial conjugate)
    assert ext.eq(ext.frob(x), ext.neg(x))


def test_laurent_gf_element_constant():
    ext = unramified_extension(F2, 2)
    z = ext.gf_element(2)   # the GF(4) generator as a constant
    # z^2 + z + 1 = 0
    lhs = ext.add(ext.add(ext.mul(z, z), z), ext.one())
    assert ext.is_zero(lhs)
    assert ext.eq(ext.frob(z), ext.add(z, ext.one()))


def test_valuation_through_extension():
    ext = unramified_extension(Q5, 2)
    a = ext.from_base_coords([Q5.frac(25), Q5.frac(5)])
    assert ext.val(a) == 1  # min of component valuations, e is 1
    assert ext.val(ext.zero()) == float("inf")


def test_unsupported_degree_raises():
    with pytest.raises(Exception):
        unramified_extension(Q3, 3)
