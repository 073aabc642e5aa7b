"""Central simple algebras of degree 2h over the base field, and their
scalar extension by the fixed quadratic algebra K3.

Two kinds:

* matrix    -- B = M_{2h}(F); elements are 2h x 2h Scalar matrices.
* division  -- the cyclic algebra E[Pi] with E/F unramified of degree 2h,
               Pi^{2h} = pi and Pi a = a^phi Pi (phi = Frobenius);
               elements are tuples (a_0, ..., a_{2h-1}) of E-elements
               standing for sum a_i Pi^i.

Reduced characteristic polynomials come from the right-regular
representation over E.  Right multiplication is left-E-linear, and the map
b -> R_b is an anti-homomorphism; characteristic polynomials are blind to
that (the coefficients are central), so R_b's characteristic polynomial is
the reduced one.  Inverses go through Cayley-Hamilton, which stays exact
and division-free except for one division by the reduced norm.

C = B (x) K3 is represented uniformly as pairs (c0, c1) = c0 + c1*g with
g the K3 generator; multiplication uses g^2 = e0 + e1 g.  Characteristic
polynomials of C-elements live in the quadratic ring K3 itself and are
computed with the same Berkowitz code over quadratic-ring adapters --
no division, so split K3 (zero divisors) is safe.
"""

from .errors import (ComputeError, ConfigError, DivisionByZero, NotARoot,
                     UnsupportedRank)
from .extension import unramified_extension
from .linalg import (ExtRing, QuadRing, ScalarRing, berkowitz_charpoly,
                     mat_eye, mat_mul, mat_zero)


class CSA:
    def __init__(self, desc, kind, h):
        if kind not in ("matrix", "division"):
            raise ConfigError("CSA kind must be matrix or division")
        if h not in (1, 2):
            raise UnsupportedRank("h must be 1 or 2")
        self.desc = desc
        self.kind = kind
        self.h = h
        self.n = 2 * h
        if kind == "division":
            self.ext = unramified_extension(desc, self.n)
            self._pi_e = self.ext.from_base(desc.uniformizer(1))
        else:
            self.ext = None
        self._R = ScalarRing(desc)

    # -- element constructors -------------------------------------------------

    def zero(self):
        if self.kind == "matrix":
            return mat_zero(self._R, self.n)
        return tuple(self.ext.zero() for _ in range(self.n))

    def one(self):
        if self.kind == "matrix":
            return mat_eye(self._R, self.n)
        return tuple(self.ext.one() if i == 0 else self.ext.zero()
                     for i in range(self.n))

    def from_scalar(self, s):
        if self.kind == "matrix":
            out = mat_zero(self._R, self.n)
            for i in range(self.n):
                out[i][i] = s
            return out
        return tuple(self.ext.from_base(s) if i == 0 else self.ext.zero()
                     for i in range(self.n))

    def from_int(self, k):
        return self.from_scalar(self.desc.from_int(k))

    def from_matrix(self, rows):
        assert self.kind == "matrix"
        return [list(r) for r in rows]

    def from_cyclic(self, coeffs):
        """Division element from E-coefficients of 1, Pi, Pi^2, ..."""
        assert self.kind == "division"
        assert len(coeffs) == self.n
        return tuple(coeffs)

    def gen_pi_element(self):
        """The uniformizing element Pi (division kind)."""
        return tuple(self.ext.one() if i == 1 else self.ext.zero()
                     for i in range(self.n))

    def from_ext(self, a):
        """E -> B along the distinguished maximal unramified subfield."""
        return tuple(a if i == 0 else self.ext.zero() for i in range(self.n))

    # -- arithmetic -------------------------------------------------------------

    def add(self, a, b):
        if self.kind == "matrix":
            return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
        return tuple(self.ext.add(x, y) for x, y in zip(a, b))

    def sub(self, a, b):
        if self.kind == "matrix":
            return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]
        return tuple(self.ext.sub(x, y) for x, y in zip(a, b))

    def neg(self, a):
        if self.kind == "matrix":
            return [[-x for x in ra] for ra in a]
        return tuple(self.ext.neg(x) for x in a)

    def smul(self, s, a):
        if self.kind == "matrix":
            return [[s * x for x in ra] for ra in a]
        se = self.ext.from_base(s)
        return tuple(self.ext.mul(se, x) for x in a)

    def mul(self, a, b):
        if self.kind == "matrix":
            return mat_mul(self._R, a, b)
        n = self.n
        acc = [self.ext.zero()] * n
        for i in range(n):
            if self.ext.is_zero(a[i]):
                continue
            for j in range(n):
                if self.ext.is_zero(b[j]):
                    continue
                term = self.ext.mul(a[i], self.ext.frob(b[j], i))
                if i + j >= n:
                    term = self.ext.mul(term, self._pi_e)
                k = (i + j) % n
                acc[k] = self.ext.add(acc[k], term)
        return tuple(acc)

    def eq(self, a, b):
        if self.kind == "matrix":
            return all(x == y for ra, rb in zip(a, b) for x, y in zip(ra, rb))
        return all(self.ext.eq(x, y) for x, y in zip(a, b))

    def is_zero(self, a):
        if self.kind == "matrix":
            return all(x.is_zero() for ra in a for x in ra)
        return all(self.ext.is_zero(x) for x in a)

    def power(self, a, k):
        out = self.one()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    # -- reduced characteristic polynomial --------------------------------------

    def regular_rep(self, b):
        """Right-multiplication matrix over E (division kind): column i
        holds the E-coordinates of Pi^i * b."""
        n = self.n
        R = [[None] * n for _ in range(n)]
        for i in range(n):
            for k in range(n):
                j = (k - i) % n
                entry = self.ext.frob(b[j], i)
                if i + j >= n:
                    entry = self.ext.mul(entry, self._pi_e)
                R[k][i] = entry
        return R

    def reduced_charpoly(self, b):
        """Ascending Scalar coefficients c0..c_{2h} (monic, length 2h+1)."""
        if self.kind == "matrix":
            return berkowitz_charpoly(self._R, b)
        coeffs = berkowitz_charpoly(ExtRing(self.ext), self.regular_rep(b))
        out = []
        for c in coeffs:
            s = self.ext.to_base(c)
            if s is None:
                raise ComputeError(
                    "regular representation produced a non-central "
                    "characteristic coefficient")
            out.append(s)
        return out

    def trd(self, b):
        cp = self.reduced_charpoly(b)
        return -cp[-2]

    def nrd(self, b):
        cp = self.reduced_charpoly(b)
        return cp[0] if self.n % 2 == 0 else -cp[0]

    def inv(self, b):
        cp = self.reduced_charpoly(b)
        c0 = cp[0]
        if c0.is_zero():
            raise DivisionByZero("non-invertible algebra element")
        # b^{-1} = -(b^{n-1} + c_{n-1} b^{n-2} + ... + c_1) / c0
        acc = self.one()
        for k in range(self.n - 1, 0, -1):
            acc = self.add(self.mul(acc, b), self.from_scalar(cp[k]))
        return self.smul(-c0.inv(), acc)

    def val(self, b):
        """Valuation v_B(b) = v_F(nrd b) on the division algebra,
        normalized so v_B(Pi) = 1."""
        assert self.kind == "division"
        return self.nrd(b).valuation()

    # -- F-linear coordinates ----------------------------------------------------

    def dim(self):
        return self.n * self.n

    def coords(self, b):
        """Flatten to a list of 4h^2 Scalars (fixed F-basis)."""
        if self.kind == "matrix":
            return [x for row in b for x in row]
        out = []
        for a in b:
            out.extend(self.ext.to_base_coords(a))
        return out

    def from_coords(self, cs):
        n = self.n
        assert len(cs) == n * n
        if self.kind == "matrix":
            return [list(cs[i * n:(i + 1) * n]) for i in range(n)]
        return tuple(self.ext.from_base_coords(cs[i * n:(i + 1) * n])
                     for i in range(n))

    def basis(self):
        out = []
        zero, one = self.desc.zero(), self.desc.one()
        for k in range(self.dim()):
            cs = [one if i == k else zero for i in range(self.dim())]
            out.append(self.from_coords(cs))
        return out

    # -- misc ----------------------------------------------------------------------

    def scalar_part(self, b):
        """The Scalar s with b = s * 1, or None."""
        if self.kind == "matrix":
            s = b[0][0]
            probe = self.from_scalar(s)
            return s if self.eq(b, probe) else None
        s = self.ext.to_base(b[0])
        if s is None:
            return None
        return s if self.eq(b, self.from_scalar(s)) else None

    def conjugate(self, u, b):
        return self.mul(self.mul(u, b), self.inv(u))

    def check_quadratic_generator(self, b, minpoly):
        """Verify b^2 + a1 b + a0 = 0 (descending monic minpoly) and that b
        is not central; raises NotARoot otherwise."""
        _, a1, a0 = minpoly
        lhs = self.add(self.mul(b, b),
                       self.add(self.smul(a1, b), self.from_scalar(a0)))
        if not self.is_zero(lhs):
            raise NotARoot("claimed generator does not satisfy its "
                           "minimal polynomial")
        if self.scalar_part(b) is not None:
            raise NotARoot("generator lies in the center")

    def companion_embedding(self, K):
        """Phi(x) for the normalized generator of K as a block-diagonal
        companion matrix (matrix kind)."""
        assert self.kind == "matrix"
        one, a1, a0 = K.minpoly_descending()
        out = self.zero()
        for blk in range(self.h):
            i = 2 * blk
            out[i][i + 1] = self.desc.one()
            out[i + 1][i] = -a0
            out[i + 1][i + 1] = -a1
        return out


# ---------------------------------------------------------------------------
# C = B (x) K3
# ---------------------------------------------------------------------------

class TensorCSA:
    """Pairs (c0, c1) = c0 + c1 g over B, with g^2 = e0 + e1 g from K3."""

    def __init__(self, csa, K3):
        self.B = csa
        self.K3 = K3
        self.e0 = -K3.a0
        self.e1 = -K3.a1
        self.desc = csa.desc

    # -- constructors ------------------------------------------------------------

    def zero(self):
        return (self.B.zero(), self.B.zero())

    def one(self):
        return (self.B.one(), self.B.zero())

    def gen(self):
        return (self.B.zero(), self.B.one())

    def from_B(self, b):
        return (b, self.B.zero())

    def from_k3(self, z):
        """K3 element (k0, k1) -> C."""
        return (self.B.from_scalar(z[0]), self.B.from_scalar(z[1]))

    # -- arithmetic -----------------------------------------------------------------

    def add(self, a, b):
        return (self.B.add(a[0], b[0]), self.B.add(a[1], b[1]))

    def sub(self, a, b):
        return (self.B.sub(a[0], b[0]), self.B.sub(a[1], b[1]))

    def neg(self, a):
        return (self.B.neg(a[0]), self.B.neg(a[1]))

    def mul(self, a, b):
        B = self.B
        vv = B.mul(a[1], b[1])
        c0 = B.add(B.mul(a[0], b[0]), B.smul(self.e0, vv))
        c1 = B.add(B.add(B.mul(a[0], b[1]), B.mul(a[1], b[0])),
                   B.smul(self.e1, vv))
        return (c0, c1)

    def k3_mul(self, z, a):
        """Multiply by a K3 scalar."""
        return self.mul(self.from_k3(z), a)

    def smul(self, s, a):
        return (self.B.smul(s, a[0]), self.B.smul(s, a[1]))

    def eq(self, a, b):
        return self.B.eq(a[0], b[0]) and self.B.eq(a[1], b[1])

    def is_zero(self, a):
        return self.B.is_zero(a[0]) and self.B.is_zero(a[1])

    def sigma3(self, a):
        """1 (x) sigma3: g -> e1 - g."""
        return (self.B.add(a[0], self.B.smul(self.e1, a[1])),
                self.B.neg(a[1]))

    def power(self, a, k):
        out = self.one()
        for _ in range(k):
            out = self.mul(out, a)
        return out

    # -- characteristic polynomial ------------------------------------------------

    def charpoly(self, c):
        """Ascending coefficients in K3 (pairs of Scalars), length 2h+1."""
        n = self.B.n
        if self.B.kind == "matrix":
            QR = QuadRing(ScalarRing(self.desc), self.e0, self.e1)
            M = [[(c[0][i][j], c[1][i][j]) for j in range(n)]
                 for i in range(n)]
            return berkowitz_charpoly(QR, M)
        ext = self.B.ext
        ER = ExtRing(ext)
        QRE = QuadRing(ER, ER.lift_scalar(self.e0), ER.lift_scalar(self.e1))
        # right-regular representation over E (x) K3: same twisting as in
        # CSA.regular_rep, applied to both g-components (Frobenius acts on
        # the E part only)
        R0 = self.B.regular_rep(c[0])
        R1 = self.B.regular_rep(c[1])
        M = [[(R0[i][j], R1[i][j]) for j in range(n)] for i in range(n)]
        coeffs = berkowitz_charpoly(QRE, M)
        out = []
        for u, v in coeffs:
            su, sv = ext.to_base(u), ext.to_base(v)
            if su is None or sv is None:
                raise ComputeError("characteristic coefficient of a tensor "
                                   "element did not descend to K3")
            out.append((su, sv))
        return out

    def inv(self, c):
        """Inverse via Cayley-Hamilton; the only division is by the K3-norm
        of the constant coefficient, so split K3 is handled correctly
        (genuinely non-invertible elements raise)."""
        QR = QuadRing(ScalarRing(self.desc), self.e0, self.e1)
        cp = self.charpoly(c)
        c0 = cp[0]
        c0i = QR.inv(c0)  # raises DivisionByZero if norm vanishes
        acc = self.one()
        for k in range(self.B.n - 1, 0, -1):
            acc = self.add(self.mul(acc, c), self.from_k3(cp[k]))
        return self.neg(self.k3_mul(c0i, acc))

    # -- coordinates -------------------------------------------------------------------

    def dim(self):
        return 2 * self.B.dim()

    def coords(self, c):
        return self.B.coords(c[0]) + self.B.coords(c[1])

    def from_coords(self, cs):
        d = self.B.dim()
        return (self.B.from_coords(cs[:d]), self.B.from_coords(cs[d:]))

    def scalar_k3_part(self, c):
        """The K3 element z with c = z * 1, or None."""
        s0 = self.B.scalar_part(c[0])
        s1 = self.B.scalar_part(c[1])
        if s0 is None or s1 is None:
            return None
        return (s0, s1)
