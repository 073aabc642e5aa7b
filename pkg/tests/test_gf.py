"""Finite-field tables: axioms by exhaustive enumeration (the fields are
tiny), Frobenius, traces, square roots, and the polynomial helpers."""

import random

import pytest

from biquadfl.gf import gf, padd, pgcd, pmul, pdivmod, pval


FIELDS = [gf(2, 1), gf(3, 1), gf(5, 1), gf(2, 2), gf(3, 2), gf(2, 3)]


def test_field_axioms_exhaustive():
    for K in FIELDS:
        els = range(K.q)
        for a in els:
            assert K.add(a, 0) == a
            assert K.mul(a, 1) == a
            assert K.add(a, K.neg(a)) == 0
            if a != 0:
                assert K.mul(a, K.inv(a)) == 1
        for a in els:
            for b in els:
                assert K.add(a, b) == K.add(b, a)
                assert K.mul(a, b) == K.mul(b, a)
        rng = random.Random(K.q)
        for _ in range(150):
            a, b, c = (rng.randrange(K.q) for _ in range(3))
            assert K.mul(a, K.add(b, c)) == K.add(K.mul(a, b), K.mul(a, c))
            assert K.mul(a, K.mul(b, c)) == K.mul(K.mul(a, b), c)


def test_frobenius_is_field_automorphism():
    for K in FIELDS:
        for a in range(K.q):
            assert K.frob(a) == K.pow_(a, K.p)
            for b in range(K.q):
                assert K.frob(K.add(a, b)) == K.add(K.frob(a), K.frob(b))
                assert K.frob(K.mul(a, b)) == K.mul(K.frob(a), K.frob(b))
        # order d, fixing exactly the prime field
        for a in range(K.q):
            x = a
            for _ in range(K.d):
                x = K.frob(x)
            assert x == a
        fixed = [a for a in range(K.q) if K.frob(a) == a]
        assert len(fixed) == K.p


def test_trace_counts():
    # the absolute trace is p^(d-1)-to-1 onto the prime field
    for K in FIELDS:
        from collections import Counter
        c = Counter(K.trace_abs(a) for a in range(K.q))
        assert set(c) <= set(range(K.p))
        assert all(v == K.q // K.p for v in c.values())


def test_squares_and_roots():
    for K in FIELDS:
        squares = {K.mul(a, a) for a in range(K.q)}
        for a in range(K.q):
            assert K.is_square(a) == (a in squares)
            if a in squares:
                r = K.sqrt(a)
                assert K.mul(r, r) == a
    # odd characteristic: exactly (q-1)/2 nonzero squares
    K3 = gf(3, 2)
    assert sum(1 for a in range(1, 9) if K3.is_square(a)) == 4
    # char 2: squaring is a bijection
    K4 = gf(2, 2)
    assert {K4.mul(a, a) for a in range(4)} == set(range(4))


def test_gf4_generator_has_order_3():
    K = gf(2, 2)
    # the packed element 2 is the polynomial generator zeta
    z = 2
    assert K.mul(z, z) != 1 and K.mul(z, K.mul(z, z)) == 1
    assert K.trace_abs(z) == 1


def test_subfield_membership():
    K = gf(2, 2)
    assert K.in_subfield(0, 1) and K.in_subfield(1, 1)
    assert not K.in_subfield(2, 1)
    K8 = gf(2, 3)
    assert all(K8.in_subfield(a, 1) == (a in (0, 1)) for a in range(8))


def test_polynomial_helpers():
    K = gf(3, 1)
    f = (1, 2, 1)           # 1 + 2x + x^2 = (1+x)^2
    g = (1, 1)              # 1 + x
    q, r = pdivmod(K, f, g)
    assert r == () and pmul(K, q, g) == f
    assert pgcd(K, f, g) == g or pgcd(K, f, g) == tuple(
        K.mul(c, K.inv(g[-1])) for c in g)
    assert padd(K, (1, 2), (2, 1)) == ()
    assert pval((0, 0, 2)) == 2


def test_gf_rejects_bad_parameters():
    with pytest.raises(Exception):
        gf(4, 1)  # not prime
