"""Small finite fields GF(p^d), fully tabulated.

Elements are ints in [0, q) packing polynomial coefficients base p
(value = c0 + c1*p + c2*p^2 + ...).  Everything is precomputed at table
construction: q <= 81 throughout this package, so add/mul tables are a few
thousand ints and building them is instant.  The payoff is that Laurent
series coefficient arithmetic is table lookups, which matters in the
stratified integrators.

The modulus is the first monic irreducible of degree d in packed-value
order, so tables are deterministic.  (For d=2, p=3 this gives T^2+1, i.e.
GF(9) = F3[i] -- convenient, the test configs lean on it.)

Also here: generic polynomial helpers over a GF table (tuples of packed
ints, ascending degree, no trailing zeros), used by the rational-function
scalars.
"""

from .errors import DivisionByZero

_TABLES = {}


def _digits(n, p, d):
    out = []
    for _ in range(d):
        out.append(n % p)
        n //= p
    return out


def _pack(digits, p):
    v = 0
    for c in reversed(digits):
        v = v * p + c
    return v


class GF:
    """Arithmetic table for GF(p^d)."""

    def __init__(self, p, d):
        self.p = p
        self.d = d
        self.q = p ** d
        self.modulus = self._find_irreducible() if d > 1 else (0, 1)
        self._build_tables()
        self.generator = self._find_generator()
        self._build_sqrt()

    # -- construction ----------------------------------------------------

    def _find_irreducible(self):
        p, d = self.p, self.d
        for low in range(p ** d):
            coeffs = _digits(low, p, d) + [1]  # monic T^d + ...
            if _is_irreducible_prime_field(coeffs, p):
                return tuple(coeffs)
        raise AssertionError("no irreducible polynomial found (impossible)")

    def _build_tables(self):
        p, d, q = self.p, self.d, self.q
        mod = self.modulus
        add = [[0] * q for _ in range(q)]
        mul = [[0] * q for _ in range(q)]
        for a in range(q):
            da = _digits(a, p, d)
            for b in range(q):
                db = _digits(b, p, d)
                add[a][b] = _pack([(x + y) % p for x, y in zip(da, db)], p)
                # polynomial product, reduced mod the modulus
                prod = [0] * (2 * d - 1)
                for i, x in enumerate(da):
                    if x:
                        for j, y in enumerate(db):
                            prod[i + j] = (prod[i + j] + x * y) % p
                for k in range(len(prod) - 1, d - 1, -1):
                    c = prod[k]
                    if c:
                        prod[k] = 0
                        for i in range(d):
                            prod[k - d + i] = (prod[k - d + i] - c * mod[i]) % p
                mul[a][b] = _pack(prod[:d], p)
        self.ADD = add
        self.MUL = mul
        self.NEG = [add[a].index(0) for a in range(q)]
        inv = [0] * q
        for a in range(1, q):
            inv[a] = mul[a].index(1)
        self.INV = inv

    def _find_generator(self):
        q = self.q
        for g in range(1, q):
            x, order = g, 1
            while x != 1:
                x = self.MUL[x][g]
                order += 1
            if order == q - 1:
                return g
        return 1  # q == 2

    def _build_sqrt(self):
        sq = [None] * self.q
        for a in range(self.q):
            s = self.MUL[a][a]
            if sq[s] is None:
                sq[s] = a
        self.SQRT = sq

    # -- arithmetic --------------------------------------------------------

    def add(self, a, b):
        return self.ADD[a][b]

    def sub(self, a, b):
        return self.ADD[a][self.NEG[b]]

    def mul(self, a, b):
        return self.MUL[a][b]

    def neg(self, a):
        return self.NEG[a]

    def inv(self, a):
        if a == 0:
            raise DivisionByZero("inverse of 0 in GF(%d)" % self.q)
        return self.INV[a]

    def div(self, a, b):
        return self.MUL[a][self.inv(b)]

    def pow_(self, a, n):
        if n < 0:
            a, n = self.inv(a), -n
        r = 1
        while n:
            if n & 1:
                r = self.MUL[r][a]
            a = self.MUL[a][a]
            n >>= 1
        return r

    def frob(self, a, k=1):
        """a -> a^(p^k), the absolute Frobenius iterated k times."""
        return self.pow_(a, self.p ** (k % self.d))

    def trace_abs(self, a):
        """Absolute trace down to GF(p), returned as an int in [0, p)."""
        t, x = 0, a
        for _ in range(self.d):
            t = self.ADD[t][x]
            x = self.pow_(x, self.p)
        return t  # lies in the prime field, packed value < p

    def is_square(self, a):
        return self.SQRT[a] is not None

    def sqrt(self, a):
        s = self.SQRT[a]
        if s is None:
            raise ValueError("%d is not a square in GF(%d)" % (a, self.q))
        return s

    def in_subfield(self, a, e):
        """Is a in the subfield GF(p^e)?  (e must divide d.)"""
        return self.pow_(a, self.p ** e) == a

    def from_int(self, n):
        return n % self.p


def gf(p, d=1):
    """Cached table access: gf(3), gf(3, 4), ..."""
    key = (p, d)
    if key not in _TABLES:
        _TABLES[key] = GF(p, d)
    return _TABLES[key]


def _is_irreducible_prime_field(coeffs, p):
    """Irreducibility of a monic polynomial over GF(p), by trial division
    against every monic polynomial of degree <= deg/2.  Degrees here are
    <= 4, so brute force is the honest choice."""
    d = len(coeffs) - 1
    if d == 1:
        return True
    if coeffs[0] == 0:  # divisible by T
        return False
    for deg in range(1, d // 2 + 1):
        for low in range(p ** deg):
            g = _digits(low, p, deg) + [1]
            if all(c == 0 for c in _prime_poly_rem(coeffs, g, p)):
                return False
    return True


def _prime_poly_rem(f, g, p):
    """Remainder of f by monic g, coefficients in GF(p) as plain ints."""
    r = list(f)
    dg = len(g) - 1
    while len(r) - 1 >= dg and any(r):
        while r and r[-1] == 0:
            r.pop()
        if len(r) - 1 < dg:
            break
        c = r[-1]
        shift = len(r) - 1 - dg
        for i in range(dg + 1):
            r[shift + i] = (r[shift + i] - c * g[i]) % p
    return r


# ---------------------------------------------------------------------------
# Polynomials over a GF table: tuples of packed ints, ascending degree,
# normalized (no trailing zeros; the zero polynomial is the empty tuple).
# ---------------------------------------------------------------------------

def pnorm(cs):
    cs = list(cs)
    while cs and cs[-1] == 0:
        cs.pop()
    return tuple(cs)


def padd(K, f, g):
    n = max(len(f), len(g))
    return pnorm([K.add(f[i] if i < len(f) else 0, g[i] if i < len(g) else 0)
                  for i in range(n)])


def pneg(K, f):
    return tuple(K.neg(c) for c in f)


def psub(K, f, g):
    return padd(K, f, pneg(K, g))


def pmul(K, f, g):
    if not f or not g:
        return ()
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            row = K.MUL[a]
            for j, b in enumerate(g):
                if b:
                    out[i + j] = K.ADD[out[i + j]][row[b]]
    return pnorm(out)


def pscale(K, c, f):
    if c == 0:
        return ()
    row = K.MUL[c]
    return pnorm([row[a] for a in f])


def pdivmod(K, f, g):
    if not g:
        raise DivisionByZero("polynomial division by zero")
    f = list(f)
    dg = len(g) - 1
    ginv = K.inv(g[-1])
    q = [0] * max(0, len(f) - dg)
    while len(f) - 1 >= dg and any(f):
        while f and f[-1] == 0:
            f.pop()
        if len(f) - 1 < dg:
            break
        c = K.mul(f[-1], ginv)
        shift = len(f) - 1 - dg
        q[shift] = c
        for i in range(dg + 1):
            f[shift + i] = K.sub(f[shift + i], K.mul(c, g[i]))
    return pnorm(q), pnorm(f)


def pgcd(K, f, g):
    while g:
        f, g = g, pdivmod(K, f, g)[1]
    if f:
        f = pscale(K, K.inv(f[-1]), f)  # monic
    return f


def pval(f):
    """t-adic valuation: index of the lowest nonzero coefficient."""
    for i, c in enumerate(f):
        if c:
            return i
    return None  # zero polynomial


def pmodpow(K, base, n, mod):
    r = (1,)
    base = pdivmod(K, base, mod)[1]
    while n:
        if n & 1:
            r = pdivmod(K, pmul(K, r, base), mod)[1]
        base = pdivmod(K, pmul(K, base, base), mod)[1]
        n >>= 1
    return r


def find_irreducible(K, d):
    """First monic irreducible of degree d over the field of table K, in
    packed-coefficient order.  Used to present GF(q^d) when needed."""
    q = K.q
    for low in range(q ** d):
        cs = []
        n = low
        for _ in range(d):
            cs.append(n % q)
            n //= q
        f = pnorm(cs + [1])
        if _is_irreducible_over(K, f):
            return f
    raise AssertionError("unreachable")


def _is_irreducible_over(K, f):
    d = len(f) - 1
    if d <= 1:
        return d == 1
    # f irreducible iff T^(q^d) = T mod f and gcd(T^(q^(d/l)) - T, f) = 1
    # for every prime l dividing d.
    x = (0, 1)
    xq = pmodpow(K, x, K.q ** d, f)
    if psub(K, xq, x) != ():
        return False
    dd = d
    primes = set()
    k = 2
    while k * k <= dd:
        while dd % k == 0:
            primes.add(k)
            dd //= k
        k += 1
    if dd > 1:
        primes.add(dd)
    for l in primes:
        xe = pmodpow(K, x, K.q ** (d // l), f)
        if pgcd(K, psub(K, xe, x), f) != (1,):
            return False
    return True
