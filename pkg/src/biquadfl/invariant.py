"""Invariant-polynomial calculus for a pair of embeddings into a common
central simple algebra.

Given embeddings Phi_i : K_i -> B (specified by the images of the
normalized generators), everything here lives in C = B (x) K3:

    s = (w - u) / v,   t = z / v,

with w = Phi1(x1)Phi2(x2) + Phi2(x2^s2)Phi1(x1^s1) and
z = Phi1(x1)Phi2(x2) - Phi2(x2)Phi1(x1) in B, and the K3-scalars
u = x1 x2^s2 + x2 x1^s1, v = (x1 - x1^s1)(x2 - x2^s2).

The invariant polynomial is the unique monic square root of the reduced
characteristic polynomial of s; it determines the pair up to conjugacy
when regular semisimple, satisfies Inv^{sigma3}(T) = (-1)^h Inv(1-T), and
everything is verified exactly.
"""

from .csa import TensorCSA
from .errors import (ComputeError, DivisionByZero, NoConjugatorFound,
                     NotASquare, SingularGradingPart)
from .etale import _poly_sqrt_char2, _poly_sqrt_odd, _rational_sqrt
from .linalg import (QuadRing, ScalarRing, berkowitz_charpoly, gauss_kernel,
                     gauss_solve, mat_rank, solve_any)
from .localfield import Scalar
from .rng import SplitMix64


# ---------------------------------------------------------------------------
# Polynomials over K3 (ascending lists of K3 elements = Scalar pairs)
# ---------------------------------------------------------------------------

def kp_add(K3, f, g):
    n = max(len(f), len(g))
    fz = list(f) + [K3.zero_el()] * (n - len(f))
    gz = list(g) + [K3.zero_el()] * (n - len(g))
    return [K3.add(a, b) for a, b in zip(fz, gz)]


def kp_mul(K3, f, g):
    out = [K3.zero_el()] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        for j, b in enumerate(g):
            out[i + j] = K3.add(out[i + j], K3.mul(a, b))
    return out


def kp_smul(K3, c, f):
    return [K3.mul(c, a) for a in f]


def kp_eq(K3, f, g):
    n = max(len(f), len(g))
    fz = list(f) + [K3.zero_el()] * (n - len(f))
    gz = list(g) + [K3.zero_el()] * (n - len(g))
    return all(K3.eq(a, b) for a, b in zip(fz, gz))


def kp_conj(K3, f):
    return [K3.conj(a) for a in f]


def kp_deriv(K3, f):
    out = []
    for i in range(1, len(f)):
        c = f[i]
        acc = K3.zero_el()
        for _ in range(i):
            acc = K3.add(acc, c)
        out.append(acc)
    return out


def kp_compose_affine(K3, f, alpha, beta):
    """f(alpha + beta*T) expanded in T."""
    out = [K3.zero_el()]
    lin = [alpha, beta]
    pw = [K3.one_el()]
    for i, c in enumerate(f):
        out = kp_add(K3, out, kp_smul(K3, c, pw))
        pw = kp_mul(K3, pw, lin)
    return out[:len(f)] if len(out) >= len(f) else out


def kp_sylvester_det(K3, f, g):
    """det of the Sylvester matrix of (f, g), rows f-shifts then g-shifts.
    With f, g monic of degrees m, n this equals prod g(alpha) over roots
    alpha of... — we only use the convention-consistent combination below."""
    m, n = len(f) - 1, len(g) - 1
    if m == 0 and n == 0:
        return K3.one_el()
    N = m + n
    rows = []
    fd = list(reversed(f))  # descending
    gd = list(reversed(g))
    for k in range(n):
        rows.append([K3.zero_el()] * k + fd + [K3.zero_el()] * (n - 1 - k))
    for k in range(m):
        rows.append([K3.zero_el()] * k + gd + [K3.zero_el()] * (m - 1 - k))
    QR = QuadRing(ScalarRing(K3.desc), -K3.a0, -K3.a1)
    cp = berkowitz_charpoly(QR, rows)
    det = cp[0]
    if N % 2:
        det = K3.neg(det)
    return det


def kp_resultant(K3, f, g):
    """Res(f, g) = prod f(beta) over roots beta of g (f, g monic)."""
    if len(g) == 1:
        return K3.one_el()
    return kp_sylvester_det(K3, g, f)


def scalar_sqrt(desc, s):
    """Exact square root of a base Scalar, or None."""
    if s.is_zero():
        return desc.zero()
    if desc.kind == "padic":
        r = _rational_sqrt(s.core)
        return None if r is None else Scalar(desc, r)
    num, den = s.core
    K = desc.res
    if desc.char == 2:
        rn, rd = _poly_sqrt_char2(K, list(num)), _poly_sqrt_char2(K, list(den))
    else:
        rn, rd = _poly_sqrt_odd(K, list(num)), _poly_sqrt_odd(K, list(den))
    if rn is None or rd is None:
        return None
    return Scalar(desc, (rn, rd))


def k3_sqrt_char2(K3, z):
    """Square root in a char-2 K3 (Artin-Schreier normalized, e1 = 1):
    (a + bg)^2 = (a^2 + e0 b^2) + b^2 g."""
    desc = K3.desc
    A, Bc = z
    b = scalar_sqrt(desc, Bc)
    if b is None:
        return None
    e0 = -K3.a0  # g^2 = e0 + g
    a = scalar_sqrt(desc, A + e0 * b * b)
    if a is None:
        return None
    return (a, b)


def kp_sqrt_monic(K3, P):
    """Monic square root Q of a monic P of even degree over K3; raises
    NotASquare when none exists (which the theory forbids for true
    characteristic polynomials of s)."""
    desc = K3.desc
    n = len(P) - 1
    if n % 2:
        raise NotASquare("odd degree")
    h = n // 2
    if desc.char == 2:
        for i in range(1, n, 2):
            if not K3.is_zero_el(P[i]):
                raise NotASquare("odd-degree coefficient survives in char 2")
        Q = []
        for i in range(h + 1):
            r = k3_sqrt_char2(K3, P[2 * i])
            if r is None:
                raise NotASquare("coefficient has no square root")
            Q.append(r)
        if not kp_eq(K3, kp_mul(K3, Q, Q), P):
            raise NotASquare("square of candidate root does not match")
        return Q
    half = K3.from_base(desc.from_int(1) / desc.from_int(2))
    Q = [K3.zero_el()] * h + [K3.one_el()]
    for k in range(h - 1, -1, -1):
        acc = P[h + k]
        for i in range(k + 1, h):
            acc = K3.sub(acc, K3.mul(Q[i], Q[h + k - i]))
        Q[k] = K3.mul(acc, half)
    if not kp_eq(K3, kp_mul(K3, Q, Q), P):
        raise NotASquare("square of candidate root does not match")
    return Q


# ---------------------------------------------------------------------------
# Pair context
# ---------------------------------------------------------------------------

class PairContext:
    """Embeddings Phi_i : K_i -> B, via the images b_i of the normalized
    generators, together with the induced K3-algebra maps K -> C."""

    def __init__(self, diagram, csa, b1, b2, check=True):
        self.diagram = diagram
        self.B = csa
        self.b1 = b1
        self.b2 = b2
        if check:
            csa.check_quadratic_generator(b1, diagram.K1.minpoly_descending())
            csa.check_quadratic_generator(b2, diagram.K2.minpoly_descending())
        self.K3 = diagram.K3
        self.C = TensorCSA(csa, diagram.K3)
        self._X1 = self.C.from_B(b1)
        self._X2 = self.C.from_B(b2)
        self._stwz = None

    # Phi_i on K_i itself (values in B)
    def phi1_K1(self, z):
        B = self.B
        return B.add(B.from_scalar(z[0]), B.smul(z[1], self.b1))

    def phi2_K2(self, z):
        B = self.B
        return B.add(B.from_scalar(z[0]), B.smul(z[1], self.b2))

    # the induced K3-algebra maps K -> C
    def phi_tilde(self, i, y):
        r, s = self.diagram.decompose(y, i)
        X = self._X1 if i == 1 else self._X2
        C = self.C
        return C.add(C.from_k3(r), C.mul(C.from_k3(s), X))

    def phi1(self, y):
        return self.phi_tilde(1, y)

    def phi2(self, y):
        return self.phi_tilde(2, y)

    # -- s, t, w, z ------------------------------------------------------------

    def _k3_of(self, y):
        """Recognize an element of K as lying in K3."""
        r, s = self.diagram.decompose(y, 1)
        assert self.K3.is_zero_el(s) or all(c.is_zero() for c in s), \
            "element is not in K3"
        return r

    def stwz(self):
        if self._stwz is not None:
            return self._stwz
        D, B, C, K3 = self.diagram, self.B, self.C, self.K3
        one1 = (D.desc.zero(), D.desc.one())
        x1 = D.embed1(one1)
        x2 = D.embed2(one1)
        x1c = D.embed1(D.K1.conj(one1))
        x2c = D.embed2(D.K2.conj(one1))
        P1, P2 = self.phi1_K1(one1), self.phi2_K2(one1)
        P1c = self.phi1_K1(D.K1.conj(one1))
        P2c = self.phi2_K2(D.K2.conj(one1))
        w = B.add(B.mul(P1, P2), B.mul(P2c, P1c))
        z = B.sub(B.mul(P1, P2), B.mul(P2, P1))
        u = self._k3_of(D.k_add(D.k_mul(x1, x2c), D.k_mul(x2, x1c)))
        v = self._k3_of(D.k_mul(D.k_sub(x1, x1c), D.k_sub(x2, x2c)))
        vi = K3.inv(v)
        s = C.k3_mul(vi, C.sub(C.from_B(w), C.from_k3(u)))
        t = C.k3_mul(vi, C.from_B(z))
        self._stwz = {"s": s, "t": t, "w": w, "z": z, "u": u, "v": v}
        return self._stwz

    def stwz_general(self, y1, y2):
        """s and t from arbitrary K3-algebra generators y1, y2 of K (the
        generator-independence property)."""
        D, C, K3 = self.diagram, self.C, self.K3
        y1c, y2c = D.tau3(y1), D.tau3(y2)
        num_u = self._k3_of(D.k_add(D.k_mul(y1, y2c), D.k_mul(y2, y1c)))
        den = self._k3_of(D.k_mul(D.k_sub(y1, y1c), D.k_sub(y2, y2c)))
        di = K3.inv(den)
        F1, F2 = self.phi1(y1), self.phi2(y2)
        F1c, F2c = self.phi1(y1c), self.phi2(y2c)
        s_num = C.add(C.mul(F1, F2), C.mul(F2c, F1c))
        s = C.k3_mul(di, C.sub(s_num, C.from_k3(num_u)))
        t = C.k3_mul(di, C.sub(C.mul(F1, F2), C.mul(F2, F1)))
        return s, t


# ---------------------------------------------------------------------------
# Invariant polynomial
# ---------------------------------------------------------------------------

class InvariantReport:
    def __init__(self, ctx, P_s, inv, func_eq_ok):
        self.K3 = ctx.K3
        self.h = ctx.B.h
        self.P_s = P_s        # ascending, length 2h+1, K3 coefficients
        self.inv = inv        # ascending, length h+1, monic
        self.func_eq_ok = func_eq_ok
        self.rss = None       # filled by is_regular_semisimple

    def xi(self):
        """For h=1: the single root, Inv = T - xi."""
        assert self.h == 1
        return self.K3.neg(self.inv[0])

    def components(self):
        """Per-component coefficient views over a structurally split K3."""
        out = []
        for pick in (0, 1):
            out.append([self.K3.components(c)[pick] for c in self.inv])
        return out

    def to_json(self):
        def k3c(z):
            return [z[0].literal(), z[1].literal()]
        data = {
            "h": self.h,
            "inv": [k3c(c) for c in self.inv],
            "P_s": [k3c(c) for c in self.P_s],
            "functional_equation": bool(self.func_eq_ok),
        }
        if self.rss is not None:
            data["rss"] = bool(self.rss)
        return data


def _functional_equation_holds(K3, inv, h):
    """Inv^{sigma3}(T) == (-1)^h * Inv(1 - T)."""
    lhs = kp_conj(K3, inv)
    rhs = kp_compose_affine(K3, inv, K3.one_el(), K3.neg(K3.one_el()))
    if h % 2:
        rhs = [K3.neg(c) for c in rhs]
    return kp_eq(K3, lhs, rhs)


def invariant_polynomial(ctx):
    K3 = ctx.K3
    s = ctx.stwz()["s"]
    P_s = ctx.C.charpoly(s)
    inv = kp_sqrt_monic(K3, P_s)
    # Q_s(s) = 0 in C
    acc = ctx.C.zero()
    for c in reversed(inv):
        acc = ctx.C.add(ctx.C.mul(acc, s), ctx.C.from_k3(c))
    if not ctx.C.is_zero(acc):
        raise ComputeError("invariant polynomial does not annihilate s")
    ok = _functional_equation_holds(K3, inv, ctx.B.h)
    return InvariantReport(ctx, P_s, inv, ok)


def is_regular_semisimple(report):
    """No zero root and no repeated root in any geometric component:
    Nm(Inv(0)) != 0 and Nm(disc) != 0, with disc = Res(Inv, Inv')."""
    K3 = report.K3
    const_ok = not K3.norm_el(report.inv[0]).is_zero()
    if report.h == 1:
        report.rss = const_ok
        return report.rss
    d = kp_resultant(K3, report.inv, kp_deriv(K3, report.inv))
    report.rss = const_ok and not K3.norm_el(d).is_zero()
    return report.rss


def resultant_abs(reportA, reportB):
    """R = Res(Inv_A, Inv_B) over K3 (the product of Inv_A over the roots
    of Inv_B), its square in F, and |R| as an exact power of q^(1/2)."""
    from .localfield import QSqrt, abs_q_half
    K3 = reportA.K3
    assert reportB.K3.a0 == K3.a0 and reportB.K3.a1 == K3.a1, \
        "resultant needs both invariants over the same K3"
    h = reportA.h
    R = kp_resultant(K3, reportA.inv, reportB.inv)
    Rc = K3.conj(R)
    want = K3.neg(R) if h % 2 else R
    assert K3.eq(Rc, want), "resultant conjugation law failed"
    R2 = K3.mul(R, R)
    rsq = R2[0]
    assert R2[1].is_zero(), "R^2 must descend to the base field"
    q = K3.desc.q
    if rsq.is_zero():
        absr = QSqrt(q, 0)
    else:
        absr = abs_q_half(q, rsq.valuation())
    return {"R": R, "Rsq": rsq, "absR": absr}


def conjugacy_test(reportA, reportB, rssA=None, rssB=None):
    rssA = is_regular_semisimple(reportA) if rssA is None else rssA
    rssB = is_regular_semisimple(reportB) if rssB is None else rssB
    if not (rssA and rssB):
        return "inconclusive"
    if kp_eq(reportA.K3, reportA.inv, reportB.inv):
        return "same-orbit"
    return "different-orbit"


# ---------------------------------------------------------------------------
# The grading construction of s (independent oracle)
# ---------------------------------------------------------------------------

def _linear_map_matrix(C, fn):
    R = ScalarRing(C.desc)
    cols = []
    for e in _c_basis(C):
        cols.append([x for x in C.coords(fn(e))])
    n = len(cols)
    return [[cols[j][i] for j in range(n)] for i in range(len(cols[0]))]


def _c_basis(C):
    zero, one = C.desc.zero(), C.desc.one()
    d = C.dim()
    out = []
    for k in range(d):
        out.append(C.from_coords([one if i == k else zero for i in range(d)]))
    return out


def alt_invariant_via_grading(ctx, seed=0, tries=64):
    """s rebuilt from a conjugator between the two induced embeddings:
    find c with  Phi1~(y) c = c Phi2~(y), split it into its commuting and
    twisted-commuting parts c = c_+ + c_-, and return
    (c_+ + c_-)^{-1} c_+ (c_+ - c_-)^{-1} c_+ .  Equality with the direct
    s is asserted."""
    C, D, K3 = ctx.C, ctx.diagram, ctx.K3
    R = ScalarRing(C.desc)
    one1 = (D.desc.zero(), D.desc.one())
    x1_in_K = D.embed1(one1)
    X1 = ctx.phi1(x1_in_K)
    Y = ctx.phi2(x1_in_K)          # Phi2~ of the same element of K
    X1tw = ctx.phi1(D.tau3(x1_in_K))

    M = _linear_map_matrix(C, lambda a: C.sub(C.mul(X1, a), C.mul(a, Y)))
    kern = gauss_kernel(R, M)
    if not kern:
        raise NoConjugatorFound("intertwiner space is trivial")
    rng = SplitMix64(seed)
    c = None
    for trial in range(tries):
        if trial < len(kern):
            cand_coords = kern[trial]
        else:
            cand_coords = [R.zero()] * len(kern[0])
            for v in kern:
                lam = R.from_int(rng.randint(-3, 3))
                cand_coords = [R.add(a, R.mul(lam, b))
                               for a, b in zip(cand_coords, v)]
        cand = C.from_coords(cand_coords)
        if C.is_zero(cand):
            continue
        try:
            C.inv(cand)
        except DivisionByZero:
            continue
        c = cand
        break
    if c is None:
        raise NoConjugatorFound("no invertible intertwiner after %d tries"
                                % tries)

    Mplus = _linear_map_matrix(C, lambda a: C.sub(C.mul(X1, a), C.mul(a, X1)))
    Mminus = _linear_map_matrix(C, lambda a: C.sub(C.mul(X1, a),
                                                   C.mul(a, X1tw)))
    Bp = gauss_kernel(R, Mplus)
    Bm = gauss_kernel(R, Mminus)
    # write c = c_+ + c_- by solving over the combined spanning set
    A = [[vec[i] for vec in (Bp + Bm)] for i in range(C.dim())]
    lam = solve_any(R, A, C.coords(c))
    if lam is None:
        raise SingularGradingPart("conjugator does not split along the "
                                  "grading")
    cp_coords = [R.zero()] * C.dim()
    for l, vec in zip(lam[:len(Bp)], Bp):
        cp_coords = [R.add(a, R.mul(l, b)) for a, b in zip(cp_coords, vec)]
    c_plus = C.from_coords(cp_coords)
    c_minus = C.sub(c, c_plus)
    try:
        inv_c = C.inv(c)
        inv_diff = C.inv(C.sub(c_plus, c_minus))
    except DivisionByZero:
        raise SingularGradingPart("c_+ - c_- (or c) is not invertible")
    s_alt = C.mul(C.mul(inv_c, c_plus), C.mul(inv_diff, c_plus))
    assert C.eq(s_alt, ctx.stwz()["s"]), \
        "grading construction disagrees with the direct s"
    return s_alt


# ---------------------------------------------------------------------------
# The presented algebra rebuilt from the invariant polynomial
# ---------------------------------------------------------------------------

class PresentedAlgebra:
    """The 4h-dimensional F-algebra on the basis W^a * {1, X1, Z, X1 Z}
    (a < h) cut out by the four relations; built from Inv and the
    normalized generator data alone.

    Elements are 4-tuples of ascending F-coefficient lists of length h
    (polynomials in W), one per monomial slot."""

    def __init__(self, diagram, inv):
        desc = diagram.desc
        K1, K2, K3 = diagram.K1, diagram.K2, diagram.K3
        self.desc = desc
        self.h = len(inv) - 1
        h = self.h
        one1 = (desc.zero(), desc.one())
        self.T1 = K1.trace_el(one1)
        self.N1 = K1.norm_el(one1)
        self.T2 = K2.trace_el(one1)
        self.N2 = K2.norm_el(one1)
        # x_i^{sigma_i} = a_i x_i + b_i
        self.a1, self.b1 = -desc.one(), -K1.a1
        self.a2, self.b2 = -desc.one(), -K2.a1
        # u, v in K3 from the diagram generators
        x1 = diagram.embed1(one1)
        x2 = diagram.embed2(one1)
        x1c = diagram.embed1(K1.conj(one1))
        x2c = diagram.embed2(K2.conj(one1))

        def k3_of(y):
            r, s = diagram.decompose(y, 1)
            assert all(c.is_zero() for c in s)
            return r

        u = k3_of(diagram.k_add(diagram.k_mul(x1, x2c),
                                diagram.k_mul(x2, x1c)))
        v = k3_of(diagram.k_mul(diagram.k_sub(x1, x1c),
                                diagram.k_sub(x2, x2c)))
        # Q_w(S) = v^h * Inv((S - u)/v), with F coefficients
        vi = K3.inv(v)
        shifted = kp_compose_affine(K3, inv, K3.mul(K3.neg(u), vi), vi)
        vpow = K3.one_el()
        for _ in range(h):
            vpow = K3.mul(vpow, v)
        qw_k3 = kp_smul(K3, vpow, shifted)
        self.Qw = []
        for c in qw_k3:
            if not c[1].is_zero():
                raise ComputeError("Q_w coefficient did not descend to F")
            self.Qw.append(c[0])
        assert self.Qw[-1] == desc.one()
        # Z^2 = Q_Z(W)
        trx1sq = K1.trace_el(K1.mul(one1, one1))
        trx2sq = K2.trace_el(K2.mul(one1, one1))
        qz = [trx1sq * self.N2 + trx2sq * self.N1,
              -(self.T1 * self.T2), desc.one()]
        self.Qz = self._wred(qz)
        self._build_table()

    # -- F[W]/(Qw) helpers -------------------------------------------------------

    def _wred(self, poly):
        """Reduce an ascending F-coefficient list mod Q_w, to length h."""
        h = self.h
        p = list(poly)
        while len(p) > h:
            lead = p.pop()
            if lead.is_zero():
                continue
            for i in range(h):
                p[len(p) - h + i] = p[len(p) - h + i] - lead * self.Qw[i]
        return p + [self.desc.zero()] * (h - len(p))

    def _wmul(self, p, q):
        out = [self.desc.zero()] * (len(p) + len(q) - 1)
        for i, a in enumerate(p):
            for j, b in enumerate(q):
                out[i + j] = out[i + j] + a * b
        return self._wred(out)

    def _wzero(self):
        return [self.desc.zero()] * self.h

    def _wconst(self, s):
        return self._wred([s])

    def _build_table(self):
        """table[mu][nu] = 4 W-polynomials: the product of monomials."""
        desc = self.desc
        z = self._wzero
        one = self._wconst(desc.one())
        a1, b1, T1, N1 = self.a1, self.b1, self.T1, self.N1
        Qz = self.Qz
        t = {}
        for nu in range(4):
            t[(0, nu)] = [one if k == nu else z() for k in range(4)]
            if nu:
                t[(nu, 0)] = [one if k == nu else z() for k in range(4)]
        t[(1, 1)] = [self._wconst(-N1), self._wconst(T1), z(), z()]
        t[(1, 2)] = [z(), z(), z(), one]
        t[(1, 3)] = [z(), z(), self._wconst(-N1), self._wconst(T1)]
        t[(2, 1)] = [z(), z(), self._wconst(b1), self._wconst(a1)]
        t[(2, 2)] = [Qz, z(), z(), z()]
        t[(2, 3)] = [self._wmul(self._wconst(b1), Qz),
                     self._wmul(self._wconst(a1), Qz), z(), z()]
        t[(3, 1)] = [z(), z(), self._wconst(-a1 * N1),
                     self._wconst(a1 * T1 + b1)]
        t[(3, 2)] = [z(), Qz, z(), z()]
        t[(3, 3)] = [self._wmul(self._wconst(-a1 * N1), Qz),
                     self._wmul(self._wconst(a1 * T1 + b1), Qz), z(), z()]
        self.table = t

    # -- element arithmetic ---------------------------------------------------------

    def zero(self):
        return tuple(self._wzero() for _ in range(4))

    def one_el(self):
        return (self._wconst(self.desc.one()), self._wzero(),
                self._wzero(), self._wzero())

    def gen(self, name):
        e = [self._wzero() for _ in range(4)]
        if name == "W":
            return (self._wred([self.desc.zero(), self.desc.one()]),
                    self._wzero(), self._wzero(), self._wzero())
        slot = {"X1": 1, "Z": 2, "X1Z": 3}[name]
        e[slot] = self._wconst(self.desc.one())
        return tuple(e)

    def add(self, x, y):
        return tuple([a + b for a, b in zip(px, py)]
                     for px, py in zip(x, y))

    def sub(self, x, y):
        return tuple([a - b for a, b in zip(px, py)]
                     for px, py in zip(x, y))

    def smul(self, s, x):
        return tuple([s * a for a in px] for px in x)

    def mul(self, x, y):
        out = [self._wzero() for _ in range(4)]
        for mu in range(4):
            if all(c.is_zero() for c in x[mu]):
                continue
            for nu in range(4):
                if all(c.is_zero() for c in y[nu]):
                    continue
                coef = self._wmul(x[mu], y[nu])
                prod = self.table[(mu, nu)]
                for k in range(4):
                    term = self._wmul(coef, prod[k])
                    out[k] = [a + b for a, b in zip(out[k], term)]
        return tuple(out)

    def eq(self, x, y):
        return all(a == b for px, py in zip(x, y) for a, b in zip(px, py))

    def is_zero(self, x):
        return all(a.is_zero() for px in x for a in px)

    def coords(self, x):
        return [c for slot in x for c in slot]

    def from_coords(self, cs):
        h = self.h
        return tuple(list(cs[k * h:(k + 1) * h]) for k in range(4))

    def dim(self):
        return 4 * self.h

    def basis(self):
        out = []
        zero, one = self.desc.zero(), self.desc.one()
        for k in range(self.dim()):
            out.append(self.from_coords(
                [one if i == k else zero for i in range(self.dim())]))
        return out

    def inv_el(self, x):
        """Inverse via the right-multiplication matrix."""
        R = ScalarRing(self.desc)
        cols = [self.coords(self.mul(b, x)) for b in self.basis()]
        M = [[cols[j][i] for j in range(self.dim())]
             for i in range(self.dim())]
        target = [[c] for c in self.coords(self.one_el())]
        sol = gauss_solve(R, M, target)
        return self.from_coords([row[0] for row in sol])

    def x2_element(self):
        """Recover X2 = (W - Z - a1 b2 X1 - b1 b2) * (a1 a2 X1 + X1 + b1 a2)^{-1}."""
        a1, b1, a2, b2 = self.a1, self.b1, self.a2, self.b2
        num = self.sub(self.gen("W"), self.gen("Z"))
        num = self.sub(num, self.smul(a1 * b2, self.gen("X1")))
        num = self.sub(num, self.smul(b1 * b2, self.one_el()))
        den = self.add(self.smul(a1 * a2 + self.desc.one(), self.gen("X1")),
                       self.smul(b1 * a2, self.one_el()))
        return self.mul(num, self.inv_el(den))

    def check_internal(self):
        """Relations and associativity inside the abstract algebra."""
        X1, Z, W = self.gen("X1"), self.gen("Z"), self.gen("W")
        one = self.one_el()
        rel1 = self.add(self.sub(self.mul(X1, X1), self.smul(self.T1, X1)),
                        self.smul(self.N1, one))
        assert self.is_zero(rel1), "X1 quadratic relation"
        zz = self.mul(Z, Z)
        qz = (self._wred(list(self.Qz)), self._wzero(), self._wzero(),
              self._wzero())
        assert self.eq(zz, qz), "Z^2 relation"
        lhs = self.mul(Z, X1)
        rhs = self.mul(self.add(self.smul(self.a1, X1),
                                self.smul(self.b1, one)), Z)
        assert self.eq(lhs, rhs), "Z X1 twist relation"
        X2 = self.x2_element()
        rel2 = self.add(self.sub(self.mul(X2, X2), self.smul(self.T2, X2)),
                        self.smul(self.N2, one))
        assert self.is_zero(rel2), "X2 quadratic relation"
        lhs = self.mul(Z, X2)
        rhs = self.mul(self.add(self.smul(self.a2, X2),
                                self.smul(self.b2, one)), Z)
        assert self.eq(lhs, rhs), "Z X2 twist relation"
        # relation 4: Z = W - [a2 X2 + b2][a1 X1 + b1] - X2 X1
        t1 = self.mul(self.add(self.smul(self.a2, X2), self.smul(self.b2, one)),
                      self.add(self.smul(self.a1, X1), self.smul(self.b1, one)))
        rhs = self.sub(self.sub(W, t1), self.mul(X2, X1))
        assert self.eq(Z, rhs), "Z recovery relation"
        basis = self.basis()
        for x in basis:
            for y in basis:
                xy = self.mul(x, y)
                for z in basis:
                    assert self.eq(self.mul(xy, z),
                                   self.mul(x, self.mul(y, z))), \
                        "associativity failure"
        return True

    def verify_against(self, ctx):
        """Certify the isomorphism onto the subalgebra of B generated by
        the images: maps W, Z, X1, X2 to w, z, Phi1(x1), Phi2(x2) and
        checks linear independence plus full multiplicativity on basis
        pairs.  Raises DimensionMismatch if the image is too small."""
        from .errors import DimensionMismatch
        B = ctx.B
        data = ctx.stwz()
        w, z = data["w"], data["z"]
        imgs = {0: B.one(), 1: ctx.b1, 2: z, 3: B.mul(ctx.b1, z)}
        images = []
        for a in range(self.h):
            wa = B.power(w, a)
            for slot in range(4):
                images.append(B.mul(wa, imgs[slot]))
        # order must match coords(): slot-major, W-degree minor
        ordered = []
        for slot in range(4):
            for a in range(self.h):
                ordered.append(images[a * 4 + slot])
        R = ScalarRing(self.desc)
        coord_rows = [B.coords(m) for m in ordered]
        if mat_rank(R, coord_rows) != self.dim():
            raise DimensionMismatch(
                "images of the presented basis are dependent in B")

        def to_B(el):
            acc = B.zero()
            for c, m in zip(self.coords(el), ordered):
                acc = B.add(acc, B.smul(c, m))
            return acc

        basis = self.basis()
        for x in basis:
            for y in basis:
                lhs = B.mul(to_B(x), to_B(y))
                rhs = to_B(self.mul(x, y))
                assert B.eq(lhs, rhs), "image fails multiplicativity"
        # X2 maps to Phi2(x2)
        assert B.eq(to_B(self.x2_element()), ctx.b2), \
            "X2 does not map to the second embedding"
        return True


def presented_quaternion(diagram, inv):
    """Build the presented algebra from the invariant polynomial and check
    its internal consistency."""
    F = PresentedAlgebra(diagram, inv)
    F.check_internal()
    return F
