"""Exact scalars for the two supported local field families.

A Scalar is an *exact* value (Fraction for p-adic fields, reduced rational
function over the tabulated residue field for Laurent series fields)
together with an optional absolute-precision marker.  Exact values never
degrade: precision markers appear only when someone explicitly truncates,
and from then on they propagate through arithmetic with the usual p-adic
rules.  valuation() refuses to guess: a capped value that is congruent to
zero at its recorded precision raises PrecisionExhausted rather than
returning a number that might be wrong.

This split (exact core + explicit truncation) is what lets the rest of the
package certify valuations instead of estimating them.
"""

from fractions import Fraction
from math import inf

from . import gf as gfmod
from .errors import DivisionByZero, PrecisionExhausted, ConfigError
from .gf import gf, padd, pgcd, pmul, pneg, pnorm, pdivmod, pscale, psub, pval


class FieldDesc:
    """Which local field we are working over.

    kind 'padic':   Q_p, uniformizer pi = p, residue field GF(p).
    kind 'laurent': F_q((t)), uniformizer t, residue field GF(q) tabulated.

    `precision` is the default depth for explicit truncation and digit
    display; it does not silently affect exact arithmetic.
    """

    def __init__(self, kind, p, d=1, precision=24):
        if kind not in ("padic", "laurent"):
            raise ConfigError("unknown field kind %r" % (kind,))
        self.kind = kind
        self.p = p
        self.d = d
        self.q = p ** d
        self.precision = precision
        self.res = gf(p, d) if kind == "laurent" else gf(p, 1)
        if kind == "padic" and d != 1:
            raise ConfigError("p-adic base fields are Q_p itself here")

    @property
    def char(self):
        return 0 if self.kind == "padic" else self.p

    def uniformizer_name(self):
        return "pi" if self.kind == "padic" else "t"

    def zero(self):
        return Scalar(self, Fraction(0) if self.kind == "padic" else ((), (1,)))

    def one(self):
        return Scalar(self, Fraction(1) if self.kind == "padic" else ((1,), (1,)))

    def from_int(self, n):
        if self.kind == "padic":
            return Scalar(self, Fraction(n))
        c = n % self.p
        return Scalar(self, (((c,) if c else ()), (1,)))

    def uniformizer(self, k=1):
        if self.kind == "padic":
            return Scalar(self, Fraction(self.p) ** k)
        if k >= 0:
            return Scalar(self, (((0,) * k) + (1,), (1,)))
        return Scalar(self, ((1,), ((0,) * (-k)) + (1,)))

    def frac(self, a, b=1):
        """Convenience: a/b as an exact scalar (ints)."""
        if self.kind == "padic":
            return Scalar(self, Fraction(a, b))
        num = self.from_int(a)
        den = self.from_int(b)
        return num / den

    def __repr__(self):
        if self.kind == "padic":
            return "Q_%d" % self.p
        return "F_%d((t))" % self.q

    def __eq__(self, other):
        return (isinstance(other, FieldDesc) and self.kind == other.kind
                and self.p == other.p and self.d == other.d)

    def __hash__(self):
        return hash((self.kind, self.p, self.d))


def _vp(x, p):
    """p-adic valuation of a nonzero Fraction."""
    v = 0
    n = x.numerator
    while n % p == 0:
        n //= p
        v += 1
    m = x.denominator
    while m % p == 0:
        m //= p
        v -= 1
    return v


def _ratfunc_reduce(K, num, den):
    if not den:
        raise DivisionByZero("rational function with zero denominator")
    if not num:
        return (), (1,)
    g = pgcd(K, num, den)
    if len(g) > 1 or g[0] != 1:
        num = pdivmod(K, num, g)[0]
        den = pdivmod(K, den, g)[0]
    # common t-powers
    vn, vd = pval(num), pval(den)
    s = min(vn, vd)
    if s > 0:
        num = num[s:]
        den = den[s:]
    # monic denominator
    lc = den[-1]
    if lc != 1:
        c = K.inv(lc)
        num = pscale(K, c, num)
        den = pscale(K, c, den)
    return num, den


class Scalar:
    """One element of the base field, exact core + optional precision cap."""

    __slots__ = ("desc", "core", "prec")

    def __init__(self, desc, core, prec=None):
        self.desc = desc
        if desc.kind == "laurent":
            core = _ratfunc_reduce(desc.res, *core)
        self.core = core
        self.prec = prec

    # -- basics ------------------------------------------------------------

    def is_exact(self):
        return self.prec is None

    def core_is_zero(self):
        if self.desc.kind == "padic":
            return self.core == 0
        return self.core[0] == ()

    def is_zero(self):
        """Certified exact zero (raises if only 'zero at this precision')."""
        if self.core_is_zero():
            if self.prec is not None:
                raise PrecisionExhausted(
                    "value is 0 mod pi^%d but not certified zero" % self.prec)
            return True
        if self.prec is not None and self._core_val() >= self.prec:
            raise PrecisionExhausted(
                "value is 0 mod pi^%d but not certified zero" % self.prec)
        return False

    def _core_val(self):
        if self.core_is_zero():
            return inf
        if self.desc.kind == "padic":
            return _vp(self.core, self.desc.p)
        return pval(self.core[0]) - pval(self.core[1])

    def valuation(self):
        """Certified valuation; +inf for the exact zero."""
        v = self._core_val()
        if self.prec is not None and v >= self.prec:
            raise PrecisionExhausted(
                "valuation >= precision %d; cannot certify" % self.prec)
        return v

    # -- arithmetic ---------------------------------------------------------

    def _check(self, other):
        if not isinstance(other, Scalar):
            if isinstance(other, int):
                other = self.desc.from_int(other)
            else:
                return NotImplemented
        if other.desc != self.desc:
            raise ConfigError("mixing scalars from %r and %r" % (self.desc, other.desc))
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        prec = _min_prec(self.prec, other.prec)
        if self.desc.kind == "padic":
            return Scalar(self.desc, self.core + other.core, prec)
        K = self.desc.res
        n1, d1 = self.core
        n2, d2 = other.core
        num = padd(K, pmul(K, n1, d2), pmul(K, n2, d1))
        return Scalar(self.desc, (num, pmul(K, d1, d2)), prec)

    def __radd__(self, other):
        return self.__add__(other)

    def __neg__(self):
        if self.desc.kind == "padic":
            return Scalar(self.desc, -self.core, self.prec)
        K = self.desc.res
        return Scalar(self.desc, (pneg(K, self.core[0]), self.core[1]), self.prec)

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        prec = None
        if self.prec is not None or other.prec is not None:
            # |a*b| known mod pi^min(pa + v(b), pb + v(a))
            va, vb = self._core_val(), other._core_val()
            cands = []
            if self.prec is not None:
                cands.append(inf if vb is inf else self.prec + vb)
            if other.prec is not None:
                cands.append(inf if va is inf else other.prec + va)
            m = min(cands)
            prec = None if m is inf else m
        if self.desc.kind == "padic":
            return Scalar(self.desc, self.core * other.core, prec)
        K = self.desc.res
        n1, d1 = self.core
        n2, d2 = other.core
        return Scalar(self.desc, (pmul(K, n1, n2), pmul(K, d1, d2)), prec)

    def __rmul__(self, other):
        return self.__mul__(other)

    def inv(self):
        if self.core_is_zero():
            if self.prec is not None:
                raise PrecisionExhausted("inverting a value that is 0 at precision %d"
                                         % self.prec)
            raise DivisionByZero("inverse of exact zero")
        prec = None
        if self.prec is not None:
            v = self._core_val()
            if v >= self.prec:
                raise PrecisionExhausted("cannot certify invertibility at precision %d"
                                         % self.prec)
            prec = self.prec - 2 * v
        if self.desc.kind == "padic":
            return Scalar(self.desc, 1 / self.core, prec)
        return Scalar(self.desc, (self.core[1], self.core[0]), prec)

    def __truediv__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        return self * other.inv()

    def __rtruediv__(self, other):
        other = self._check(other)
        return other * self.inv()

    def __pow__(self, n):
        r = self.desc.one()
        b = self if n >= 0 else self.inv()
        for _ in range(abs(n)):
            r = r * b
        return r

    def __eq__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return NotImplemented
        if self.prec is None and other.prec is None:
            return self.core == other.core
        # capped values: equal iff difference is 0 at the joint precision
        d = self - other
        return d.core_is_zero() or d._core_val() >= d.prec

    def __hash__(self):
        return hash((self.desc, self.core if self.desc.kind == "padic"
                     else self.core, self.prec))

    # -- truncation & display -------------------------------------------------

    def truncate(self, n=None):
        """Canonical representative mod pi^n, marked with precision n."""
        if n is None:
            n = self.desc.precision
        prec = n if self.prec is None else min(n, self.prec)
        if self.core_is_zero() or self._core_val() >= n:
            return Scalar(self.desc, self.desc.zero().core, prec)
        v = self._core_val()
        ds = self.digits(v, n)
        if self.desc.kind == "padic":
            core = Fraction(0)
            for i, d in zip(range(v, n), ds):
                core += d * Fraction(self.desc.p) ** i
        else:
            num = pnorm(ds)  # coefficients for exponents v .. n-1
            if v < 0:
                core = (num, (0,) * (-v) + (1,))
            else:
                core = (pnorm([0] * v + list(ds)), (1,))
        return Scalar(self.desc, core, prec)

    def digits(self, lo, hi):
        """Digits of the pi-adic expansion, positions lo..hi-1.

        p-adic: ints in [0,p).  Laurent: packed GF(q) coefficients.
        lo must not exceed the valuation of a nonzero value.
        """
        if not self.core_is_zero():
            assert lo <= self._core_val(), "digits() below the valuation"
        if self.desc.kind == "padic":
            p = self.desc.p
            x = self.core * Fraction(1, p) ** lo
            out = []
            for _ in range(lo, hi):
                if x == 0:
                    out.append(0)
                    continue
                a, b = x.numerator, x.denominator
                d = (a * pow(b, -1, p)) % p
                out.append(d)
                x = (x - d) / p
            return out
        # laurent: series expansion of num/den = t^{-shift} * num/den2
        K = self.desc.res
        num, den = self.core
        shift = pval(den)
        den2 = den[shift:]
        inv_d0 = K.inv(den2[0])
        cs = []  # series coefficients of num/den2 (a unit at t=0)
        for k in range(max(0, hi + shift)):
            acc = num[k] if k < len(num) else 0
            for j in range(1, min(k, len(den2) - 1) + 1):
                if den2[j]:
                    acc = K.sub(acc, K.mul(den2[j], cs[k - j]))
            cs.append(K.mul(acc, inv_d0))
        out = []
        for i in range(lo, hi):
            k = i + shift
            out.append(cs[k] if 0 <= k < len(cs) else 0)
        return out

    # -- formatting -------------------------------------------------------------

    def literal(self):
        """Canonical literal string (parseable by parse_literal)."""
        if self.desc.kind == "padic":
            return str(self.core)
        num, den = self.core
        s = _poly_str(num)
        if den != (1,):
            return "(%s)/(%s)" % (s, _poly_str(den))
        return s

    def __repr__(self):
        base = self.literal()
        if self.prec is not None:
            return "%s + O(%s^%d)" % (base, self.desc.uniformizer_name(), self.prec)
        return base


def _min_prec(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


def _poly_str(f):
    if not f:
        return "0"
    parts = []
    for i, c in enumerate(f):
        if not c:
            continue
        if i == 0:
            parts.append(str(c))
        elif i == 1:
            parts.append("t" if c == 1 else "%d*t" % c)
        else:
            parts.append("t^%d" % i if c == 1 else "%d*t^%d" % (c, i))
    return "+".join(parts)


# ---------------------------------------------------------------------------
# Literal parser:  a/b*pi^k  style expressions, also sums like t^2+t^5.
# Grammar: expr := term (('+'|'-') term)* ; term := factor (('*'|'/') factor)*;
# factor := ('-')* atom ('^' ('-')? int)? ; atom := int | pi | t | '(' expr ')'
# ---------------------------------------------------------------------------

def parse_literal(desc, text):
    toks = _tokenize(text)
    pos = [0]

    def peek():
        return toks[pos[0]] if pos[0] < len(toks) else None

    def take(expected=None):
        tok = peek()
        if tok is None or (expected is not None and tok != expected):
            raise ConfigError("bad scalar literal %r (at token %r)" % (text, tok))
        pos[0] += 1
        return tok

    def parse_expr():
        val = parse_term()
        while peek() in ("+", "-"):
            op = take()
            rhs = parse_term()
            val = val + rhs if op == "+" else val - rhs
        return val

    def parse_term():
        val = parse_factor()
        while peek() in ("*", "/"):
            op = take()
            rhs = parse_factor()
            val = val * rhs if op == "*" else val / rhs
        return val

    def parse_factor():
        neg = False
        while peek() == "-":
            take()
            neg = not neg
        val = parse_atom()
        if peek() == "^":
            take()
            sgn = 1
            if peek() == "-":
                take()
                sgn = -1
            n = take()
            if not isinstance(n, int):
                raise ConfigError("exponent must be an integer in %r" % text)
            val = val ** (sgn * n)
        return -val if neg else val

    def parse_atom():
        tok = peek()
        if tok == "(":
            take()
            val = parse_expr()
            take(")")
            return val
        if isinstance(tok, int):
            take()
            return desc.from_int(tok)
        if tok in ("pi", "t"):
            take()
            return desc.uniformizer(1)
        raise ConfigError("bad scalar literal %r (at token %r)" % (text, tok))

    val = parse_expr()
    if pos[0] != len(toks):
        raise ConfigError("trailing garbage in scalar literal %r" % text)
    return val


def _tokenize(text):
    toks = []
    i = 0
    while i < len(text):
        c = text[i]
        if c.isspace():
            i += 1
        elif c.isdigit():
            j = i
            while j < len(text) and text[j].isdigit():
                j += 1
            toks.append(int(text[i:j]))
            i = j
        elif text.startswith("pi", i):
            toks.append("pi")
            i += 2
        elif c == "t":
            toks.append("t")
            i += 1
        elif c in "+-*/^()":
            toks.append(c)
            i += 1
        else:
            raise ConfigError("bad character %r in scalar literal %r" % (c, text))
    return toks


# ---------------------------------------------------------------------------
# Exact magnitudes: elements a + b*sqrt(q) with rational a, b.  Every
# absolute value and every intersection-number style quantity lives here;
# no floats anywhere.
# ---------------------------------------------------------------------------

class QSqrt:
    """a + b*sqrt(q), exact."""

    __slots__ = ("q", "a", "b")

    def __init__(self, q, a, b=0):
        self.q = q
        self.a = Fraction(a)
        self.b = Fraction(b)

    @classmethod
    def half_power(cls, q, k):
        """q^(k/2) as an exact QSqrt (k any integer)."""
        if k % 2 == 0:
            return cls(q, Fraction(q) ** (k // 2), 0)
        return cls(q, 0, Fraction(q) ** ((k - 1) // 2))

    def __add__(self, other):
        other = self._coerce(other)
        return QSqrt(self.q, self.a + other.a, self.b + other.b)

    def __sub__(self, other):
        other = self._coerce(other)
        return QSqrt(self.q, self.a - other.a, self.b - other.b)

    def __neg__(self):
        return QSqrt(self.q, -self.a, -self.b)

    def __mul__(self, other):
        other = self._coerce(other)
        return QSqrt(self.q,
                     self.a * other.a + self.q * self.b * other.b,
                     self.a * other.b + self.b * other.a)

    def _coerce(self, other):
        if isinstance(other, QSqrt):
            if other.q != self.q:
                raise ConfigError("mixing sqrt(%d) and sqrt(%d) magnitudes"
                                  % (self.q, other.q))
            return other
        return QSqrt(self.q, Fraction(other), 0)

    __radd__ = __add__
    __rmul__ = __mul__

    def __eq__(self, other):
        other = self._coerce(other)
        return self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.q, self.a, self.b))

    def is_zero(self):
        return self.a == 0 and self.b == 0

    def monomial(self):
        """(k, rational) with value = rational * q^(k/2), if this value is a
        single half-power monomial; None otherwise."""
        if self.b == 0:
            if self.a == 0:
                return (0, Fraction(0))
            k2 = _pure_power(self.a, self.q)
            return None if k2 is None else (2 * k2[0], k2[1])
        if self.a == 0:
            k2 = _pure_power(self.b, self.q)
            return None if k2 is None else (2 * k2[0] + 1, k2[1])
        return None

    def __float__(self):
        return float(self.a) + float(self.b) * self.q ** 0.5

    def __repr__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return "%s*sqrt(%d)" % (self.b, self.q)
        return "%s + %s*sqrt(%d)" % (self.a, self.b, self.q)

    def to_json(self):
        m = self.monomial()
        if m is not None:
            return {"halfpow": m[0], "rat": str(m[1])}
        return {"rat": str(self.a), "rat_sqrtq": str(self.b)}


def _pure_power(x, q):
    """x = rational; return (k, u) with x = u * q^k, u the q-free part."""
    if x == 0:
        return None
    v = 0
    n, d = x.numerator, x.denominator
    while n % q == 0:
        n //= q
        v += 1
    while d % q == 0:
        d //= q
        v -= 1
    return (v, Fraction(n, d))


def abs_q_half(q, vsq):
    """|x| as exact QSqrt given v(x^2) = vsq (so |x| = q^(-vsq/2)).

    vsq may be +inf (|0| = 0)."""
    if vsq is inf:
        return QSqrt(q, 0, 0)
    return QSqrt.half_power(q, -vsq)
