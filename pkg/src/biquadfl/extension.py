"""Unramified extensions of the base field, with *exact* Frobenius.

The cyclic division algebras need E/F unramified of degree 2h together
with the arithmetic Frobenius phi as an exact map.  Hensel lifting would
force approximate roots, so instead we only support presentations where
phi is exactly rational:

p-adic, degree 2:  any quadratic T^2 + a1*T + a0; the conjugate of omega
    is -a1 - omega, exactly.
p-adic, degree 4:  two tables.
    * ord_5(p) = 4 (p = 2, 3, 7, 13, ...): E = Q_p(zeta_5), minimal
      polynomial T^4+T^3+T^2+T+1, Frobenius zeta -> zeta^p on the nose.
    * p = 5: E = Q_5(zeta_16 + zeta_16^{-1}), minimal polynomial
      T^4 - 4T^2 + 2; Gal is generated by g(w) = w^3 - 3w, and the
      Frobenius is whichever power of g agrees with x -> x^5 on the
      residue field (an exact mod-5 check on integer coordinates).
Laurent:  F_{q^d}((t)) via a bigger GF table; Frobenius acts on series
    coefficients by x -> x^q.

Anything else raises UnsupportedExtension.  Elements are coordinate
tuples over Q (p-adic) or Scalars of the bigger Laurent field; valuations
are exact (min of coordinate valuations -- the ring of integers is the
power-basis lattice in every supported presentation).
"""

from fractions import Fraction
from math import inf

from .errors import DivisionByZero, UnsupportedExtension, ConfigError
from .localfield import FieldDesc, Scalar, _vp


class PadicUnramExt:
    """E/Q_p unramified of degree d, elements = coordinate tuples in the
    power basis 1, w, ..., w^(d-1), coordinates are Fractions."""

    def __init__(self, F, d, minpoly=None):
        if F.kind != "padic":
            raise ConfigError("PadicUnramExt over a p-adic base only")
        self.F = F
        self.deg = d
        if d == 1:
            self.minpoly = (Fraction(0), Fraction(1))
            self._sig = ((Fraction(1),),)
        elif d == 2:
            if minpoly is None:
                minpoly = _default_quadratic(F.p)
            self.minpoly = tuple(Fraction(c) for c in minpoly)
            self._check_unramified_quadratic()
            a1 = self.minpoly[1]
            # sigma(w) = -a1 - w
            self._sig = _power_table(self, (-a1, Fraction(-1)))
        elif d == 4:
            if minpoly is not None:
                raise UnsupportedExtension(
                    "degree-4 extensions use the built-in presentations")
            self._setup_quartic()
        else:
            raise UnsupportedExtension("degree %d not supported" % d)

    # -- construction helpers ------------------------------------------------

    def _check_unramified_quadratic(self):
        a0, a1 = self.minpoly[0], self.minpoly[1]
        p = self.F.p
        disc = a1 * a1 - 4 * a0
        if disc == 0:
            raise UnsupportedExtension("inseparable/degenerate quadratic")
        v = _vp(disc, p)
        if v % 2:
            raise UnsupportedExtension("ramified quadratic extension")
        u = _unit_part(disc, p, v)
        if p != 2:
            if _is_qr(u, p):
                raise UnsupportedExtension("split: not a field extension")
        else:
            if u % 8 == 1:
                raise UnsupportedExtension("split: not a field extension")
            if u % 8 != 5:
                raise UnsupportedExtension("ramified quadratic extension")

    def _setup_quartic(self):
        p = self.F.p
        if p != 5 and _order_mod5(p) == 4:
            self.minpoly = tuple(Fraction(c) for c in (1, 1, 1, 1, 1))
            # sigma(zeta) = zeta^p, reduced mod Phi_5
            img = self._pow_mod_minpoly((Fraction(0), Fraction(1), Fraction(0),
                                         Fraction(0)), p)
            self._sig = _power_table(self, img)
        elif p == 5:
            self.minpoly = tuple(Fraction(c) for c in (2, 0, -4, 0, 1))
            g = (Fraction(0), Fraction(-3), Fraction(0), Fraction(1))  # w^3-3w
            w5 = self._pow_mod_minpoly((Fraction(0), Fraction(1), Fraction(0),
                                        Fraction(0)), 5)
            cand = (Fraction(0), Fraction(1), Fraction(0), Fraction(0))
            found = None
            for _ in range(1, 4):
                cand = self._eval_poly_coords(g, cand)
                if all((a - b).numerator % 5 == 0
                       for a, b in zip(cand, w5)):
                    found = cand
                    break
            if found is None:
                raise AssertionError("no Galois power matches Frobenius mod 5")
            self._sig = _power_table(self, found)
        else:
            raise UnsupportedExtension(
                "no exact degree-4 Frobenius table for p=%d" % p)

    def _pow_mod_minpoly(self, coords, n):
        r = self.one()
        b = tuple(coords)
        while n:
            if n & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            n >>= 1
        return r

    def _eval_poly_coords(self, poly, x):
        """poly(x) where poly has base-field coefficients, x in E."""
        acc = self.zero()
        for c in reversed(poly):
            acc = self.add(self.mul(acc, x), self.scalar_mul(c, self.one()))
        return acc

    # -- ring ops ---------------------------------------------------------------

    def zero(self):
        return tuple(Fraction(0) for _ in range(self.deg))

    def one(self):
        return tuple(Fraction(1) if i == 0 else Fraction(0)
                     for i in range(self.deg))

    def from_coords(self, cs):
        cs = tuple(Fraction(c) for c in cs)
        if len(cs) != self.deg:
            raise ConfigError("expected %d coordinates" % self.deg)
        return cs

    def add(self, a, b):
        return tuple(x + y for x, y in zip(a, b))

    def sub(self, a, b):
        return tuple(x - y for x, y in zip(a, b))

    def neg(self, a):
        return tuple(-x for x in a)

    def mul(self, a, b):
        d = self.deg
        prod = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] += x * y
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                prod[k] = 0
                for i in range(d):
                    prod[k - d + i] -= c * self.minpoly[i]
        return tuple(prod[:d])

    def scalar_mul(self, c, a):
        c = Fraction(c)
        return tuple(c * x for x in a)

    def is_zero(self, a):
        return all(x == 0 for x in a)

    def eq(self, a, b):
        return all(x == y for x, y in zip(a, b))

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero("inverse of zero in the extension field")
        # solve mul(a, x) = 1 as a linear system over Q
        d = self.deg
        cols = []
        for j in range(d):
            e = tuple(Fraction(1) if i == j else Fraction(0) for i in range(d))
            cols.append(self.mul(a, e))
        # Gaussian elimination on the d x d system
        M = [[cols[j][i] for j in range(d)] + [Fraction(1) if i == 0 else Fraction(0)]
             for i in range(d)]
        for col in range(d):
            piv = next(r for r in range(col, d) if M[r][col] != 0)
            M[col], M[piv] = M[piv], M[col]
            pv = M[col][col]
            M[col] = [x / pv for x in M[col]]
            for r in range(d):
                if r != col and M[r][col]:
                    f = M[r][col]
                    M[r] = [x - f * y for x, y in zip(M[r], M[col])]
        return tuple(M[i][d] for i in range(d))

    def frob(self, a, k=1):
        """Arithmetic Frobenius, iterated k times (exact)."""
        k %= self.deg
        out = a
        for _ in range(k):
            acc = self.zero()
            for i, c in enumerate(out):
                if c:
                    acc = self.add(acc, self.scalar_mul(c, self._sig[i]))
            out = acc
        return out

    def val(self, a):
        """Valuation (unramified: min over coordinate valuations)."""
        vs = [inf if c == 0 else _vp(c, self.F.p) for c in a]
        return min(vs)

    def from_base(self, s):
        if isinstance(s, Scalar):
            s = s.core
        return tuple(Fraction(s) if i == 0 else Fraction(0)
                     for i in range(self.deg))

    def to_base(self, a):
        """Scalar if a lies in the base field, else None."""
        if any(c != 0 for c in a[1:]):
            return None
        return Scalar(self.F, a[0])

    def coords(self, a):
        return a

    def to_base_coords(self, a):
        """F-coordinates (Scalars) of a in the power basis 1, w, ..."""
        return [Scalar(self.F, c) for c in a]

    def from_base_coords(self, cs):
        return tuple(Fraction(c.core) for c in cs)

    def literal(self, a):
        return "[" + ",".join(str(c) for c in a) + "]"


class LaurentUnramExt:
    """F_{q^d}((t)) over F_q((t)); elements are Scalars of the big field."""

    def __init__(self, F, d):
        if F.kind != "laurent":
            raise ConfigError("LaurentUnramExt over a Laurent base only")
        if F.d != 1:
            raise UnsupportedExtension(
                "unramified extensions only over prime residue fields here")
        self.F = F
        self.deg = d
        self.E = FieldDesc("laurent", F.p, d, precision=F.precision)

    def zero(self):
        return self.E.zero()

    def one(self):
        return self.E.one()

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def scalar_mul(self, c, a):
        if isinstance(c, Scalar):
            c = self.from_base(c)
        return c * a

    def is_zero(self, a):
        return a.is_zero()

    def eq(self, a, b):
        return a == b

    def inv(self, a):
        return a.inv()

    def frob(self, a, k=1):
        """Relative Frobenius x -> x^q on coefficients, exact."""
        k %= self.deg
        if k == 0:
            return a
        K = self.E.res
        power = self.F.q ** k

        def fc(poly):
            return tuple(K.pow_(c, power) for c in poly)

        return Scalar(self.E, (fc(a.core[0]), fc(a.core[1])), a.prec)

    def val(self, a):
        if a.core_is_zero():
            return inf
        return a.valuation()

    def from_base(self, s):
        # prime residue field: packed values agree between GF(p) and GF(p^d)
        return Scalar(self.E, s.core, s.prec)

    def to_base(self, a):
        num, den = a.core
        K = self.E.res
        if all(c < self.F.p for c in num) and all(c < self.F.p for c in den):
            return Scalar(self.F, (num, den), a.prec)
        return None

    def coords(self, a):
        return a.core

    def literal(self, a):
        return a.literal()

    def gf_element(self, packed):
        """The constant series with the given GF(q^d) packed coefficient."""
        return Scalar(self.E, (((packed,) if packed else ()), (1,)))

    def to_base_coords(self, a):
        """F-coordinates of a in the basis 1, r, ..., r^(d-1) with r the
        residue-modulus root.  Clears the denominator into GF(p)[t] by
        multiplying through with its Frobenius conjugates, then splits the
        numerator coefficients digit by digit."""
        from .gf import pmul
        num, den = a.core
        K = self.E.res
        big_den = den
        for k in range(1, self.deg):
            conj = tuple(K.frob(c, k) for c in den)
            num = pmul(K, num, conj)
            big_den = pmul(K, big_den, conj)
        assert all(c < self.F.p for c in big_den), \
            "denominator norm must land in the base residue field"
        from .gf import pnorm
        p = self.F.p
        out = []
        for j in range(self.deg):
            cj = pnorm([(c // p ** j) % p for c in num])
            out.append(Scalar(self.F, (cj, big_den)))
        return out

    def from_base_coords(self, cs):
        K = self.E.res
        r = 1  # r = root^j; the root itself packs as the integer p
        acc = self.zero()
        for c in cs:
            acc = acc + self.from_base(c) * self.gf_element(r)
            r = K.mul(r, self.F.p)
        return acc


def unramified_extension(F, d, minpoly=None):
    if F.kind == "padic":
        return PadicUnramExt(F, d, minpoly)
    return LaurentUnramExt(F, d)


# -- small helpers ----------------------------------------------------------

def _default_quadratic(p):
    """A standard unramified quadratic minimal polynomial over Q_p."""
    if p == 2:
        return (1, 1, 1)  # T^2 + T + 1
    if p == 3:
        return (1, 0, 1)  # T^2 + 1 (i.e. adjoining i)
    # T^2 - u for the smallest positive nonsquare unit u
    u = next(u for u in range(2, p) if not _is_qr(u, p))
    return (-u, 0, 1)


def _power_table(ext, img):
    """Powers img^0 .. img^(d-1) of the conjugated generator."""
    d = ext.deg
    out = [ext.one()]
    for _ in range(d - 1):
        out.append(ext.mul(out[-1], img))
    return tuple(out)


def _unit_part(x, p, v):
    x = Fraction(x) / Fraction(p) ** v
    return x.numerator * pow(x.denominator, -1, p ** 4) % p ** 4


def _is_qr(u, p):
    u %= p
    return any(x * x % p == u for x in range(p))


def _order_mod5(p):
    if p % 5 == 0:
        return 0
    x, k = p % 5, 1
    while x != 1:
        x = x * p % 5
        k += 1
    return k
