"""Matching and the fundamental-lemma checks.

A configuration has two sides.  The (1,2)-side is a pair of embeddings of
quadratic algebras K1, K2 into a central simple algebra B of rank 2h; the
(0,3)-side is the matched pair with K0 split and K3 the fixed algebra of
the swap involution of K1 (x) K2.  This module

  * builds the matched split-side pair realizing a given invariant
    (``build_matching_pair``),
  * compares the two orbital integrals at s = 0 (``verify_bfl``) and the
    derivative at s = 0 against the intersection number (``verify_abfl``),
  * provides seeded samplers over the standard field battery and the
    randomized structural identity suites used by the CLI and the tests.

Everything is exact; no floats anywhere.
"""

from fractions import Fraction
import time

from .localfield import FieldDesc, QSqrt
from .etale import BiquadDiagram, QuadEtale
from .csa import CSA
from .errors import (ComputeError, ConfigError, DomainError,
                     NoSplitRealization, NotRegularSemisimple,
                     UnsupportedRank, VanishingFailed)
from .integrate import (EtaChar, HeckeFunction, check_functional_equation,
                        intersection_number, orbital_03, orbital_12)
from .invariant import (PairContext, conjugacy_test, invariant_polynomial,
                        is_regular_semisimple, resultant_abs)
from .linalg import ScalarRing, gauss_kernel, mat_det, solve_any
from .rng import SplitMix64


def _ext_is_zero(ext, a):
    return all(c.is_zero() for c in ext.to_base_coords(a))


# ---------------------------------------------------------------------------
# The matched split-side pair
# ---------------------------------------------------------------------------

def dual_split_diagram(d12):
    """The diagram of the matched side: K0 split, K3 as in the source."""
    desc = d12.desc
    K3 = d12.K3
    K0 = QuadEtale.split(desc)
    K3c = QuadEtale.from_minpoly(desc, [desc.one(), K3.a1, K3.a0])
    return BiquadDiagram(K0, K3c)


class MatchedQuadruple:
    """A (1,2)-side pair together with its matched (0,3)-side pair: both
    have the same invariant polynomial, and the character eta comes from
    the source diagram."""

    def __init__(self, ctx12, ctx03, eta, xi):
        self.ctx12 = ctx12
        self.ctx03 = ctx03
        self.eta = eta
        self.xi = xi

    def to_json(self):
        d = self.ctx12.diagram
        return {"base": {"kind": d.desc.kind, "p": d.desc.p, "d": d.desc.d},
                "algebra": self.ctx12.B.kind,
                "relative": d.relative,
                "eta_ramified": self.eta.ramified,
                "xi": [self.xi[0].literal(), self.xi[1].literal()],
                "phi0": [[e.literal() for e in row]
                         for row in self.ctx03.b1],
                "phi3": [[e.literal() for e in row]
                         for row in self.ctx03.b2]}


def build_matching_pair(ctx12):
    """The split-side pair matched to a rank-one regular semisimple pair.

    The matched pair lives in the 2x2 matrix algebra, K0 is realized on the
    standard idempotents, and the image of the K3 generator is solved for in
    closed form from the invariant xi; both sign choices of the off-diagonal
    normalization are tried and the one reproducing xi exactly is kept."""
    d12 = ctx12.diagram
    desc = d12.desc
    if ctx12.B.h != 1:
        raise UnsupportedRank("matching is implemented at rank one")
    rep = invariant_polynomial(ctx12)
    if not is_regular_semisimple(rep):
        raise NotRegularSemisimple("matching needs a regular semisimple "
                                   "pair")
    xi = rep.xi()
    d03 = dual_split_diagram(d12)
    Bm = CSA(desc, "matrix", 1)
    K3 = d12.K3
    one, zero = desc.one(), desc.zero()
    if desc.char != 2:
        # K3 generator squares to d = -a0; xi has constant part 1/2
        half = one / desc.from_int(2)
        if not (xi[0] - half).is_zero():
            raise NoSplitRealization("invariant constant part is not 1/2")
        d = -K3.a0
        phi0 = [[one, zero], [zero, -one]]
        A_cands = [desc.from_int(2) * d * xi[1]]
        A_cands.append(-A_cands[0])
        def phi3_of(A):
            return [[A, one], [d - A * A, -A]]
    else:
        # K3 generator y satisfies y^2 + y = a0; xi has odd part 1
        if not (xi[1] - one).is_zero():
            raise NoSplitRealization("invariant odd part is not 1")
        c = K3.a0
        phi0 = [[zero, zero], [zero, one]]
        A_cands = [xi[0] + one, xi[0]]
        def phi3_of(A):
            return [[A, one], [c + A + A * A, one + A]]
    for A in A_cands:
        ctx03 = PairContext(d03, Bm, phi0, phi3_of(A))
        xi03 = invariant_polynomial(ctx03).xi()
        if (xi03[0] - xi[0]).is_zero() and (xi03[1] - xi[1]).is_zero():
            return MatchedQuadruple(ctx12, ctx03, EtaChar(d12), xi)
    raise ComputeError("no sign choice of the split-side pair reproduces "
                       "the invariant")


# ---------------------------------------------------------------------------
# The two comparisons
# ---------------------------------------------------------------------------

def verify_bfl(quad, f=None):
    """Compare the plain count against the weighted sum at s = 0.

    For a matrix-algebra source pair the statement is an equality of
    absolute values (and of signed values when eta is trivial); the report
    carries both sides, the realizing sign, and the functional-equation
    check of the weighted side."""
    ctx12 = quad.ctx12
    if ctx12.B.kind != "matrix":
        raise DomainError("the value comparison needs the matrix form on "
                          "the source side")
    if quad.eta.ramified:
        raise DomainError("the value comparison needs an unramified "
                          "character (the weighted sum vanishes "
                          "identically otherwise)")
    h = ctx12.B.h
    if f is None:
        f = HeckeFunction.unit(h)
    o12 = orbital_12(ctx12, f)
    P = orbital_03(quad.ctx03, f, quad.eta)
    v0 = P.value_at_0()
    if o12 == v0 == 0:
        sign = 0
    elif o12 == v0:
        sign = 1
    elif o12 == -v0:
        sign = -1
    else:
        sign = None
    fe = check_functional_equation(quad.ctx03, f, quad.eta)
    return {"o12": o12, "o03_at_0": v0, "equal_abs": sign is not None,
            "sign": sign, "fe_ok": fe["ok"], "relative":
            ctx12.diagram.relative, "ok": (sign is not None) and fe["ok"]}


def integral_matrix_pair(d12):
    """A regular semisimple matrix-algebra pair over the same diagram with
    integral generator images (companion matrices, sheared if the plain
    companions are degenerate)."""
    desc = d12.desc
    Bm = CSA(desc, "matrix", 1)
    one, zero = desc.one(), desc.zero()
    p1 = Bm.companion_embedding(d12.K1)
    p2 = Bm.companion_embedding(d12.K2)
    shears = [None,
              [[one, one], [zero, one]],
              [[one, zero], [one, one]],
              [[one, -one], [zero, one]],
              [[one, desc.from_int(2)], [zero, one]]]
    for g in shears:
        q2 = p2 if g is None else Bm.mul(Bm.mul(g, p2), Bm.inv(g))
        ctx = PairContext(d12, Bm, p1, q2)
        if is_regular_semisimple(invariant_polynomial(ctx)):
            return ctx
    raise ComputeError("no unimodular shear made the companion pair "
                       "regular semisimple")


def verify_abfl(quad, depth_cap=16, recheck_resolved=False):
    """Compare the derivative of the weighted sum at s = 0 against the
    intersection number.

    The source pair must live in the division algebra with eta unramified.
    The report carries the weighted sum, its value and both normalized
    derivatives at s = 0 (per log q and per log q^2), the exact
    intersection number, and which normalization (if either) realizes the
    equality of absolute values.  It surfaces the data without rescaling
    either side."""
    ctx12 = quad.ctx12
    if ctx12.B.kind != "division":
        raise DomainError("the derivative comparison needs the division "
                          "form on the source side")
    if quad.eta.ramified:
        raise DomainError("the derivative comparison needs an unramified "
                          "character (the weighted sum vanishes "
                          "identically otherwise)")
    f = HeckeFunction.unit(1)
    P = orbital_03(quad.ctx03, f, quad.eta)
    v0 = P.value_at_0()
    if v0 != 0:
        # With a division-algebra source the value at s = 0 vanishes
        # identically; a nonzero value means the quadruple is corrupt.
        err = VanishingFailed("weighted sum has nonzero value %s at s = 0 "
                              "for a division-side pair" % (v0,))
        err.partial = {"orbital": P, "value_at_0": v0}
        raise err
    fe = check_functional_equation(quad.ctx03, f, quad.eta)
    dq = P.deriv_over_log_q()
    dq2 = P.deriv_over_log_q2()
    ctx_mat = integral_matrix_pair(ctx12.diagram)
    ires = intersection_number(ctx12, ctx_mat, m=0, depth_cap=depth_cap,
                               recheck_resolved=recheck_resolved)
    q = ctx12.diagram.desc.q
    inter = ires.value
    m_q = inter == QSqrt(q, abs(dq))
    m_q2 = inter == QSqrt(q, abs(dq2))
    if m_q:
        realized = "log_q"
    elif m_q2:
        realized = "log_q2"
    else:
        realized = None
    return {"orbital": P, "value_at_0": v0, "vanishes_at_0": v0 == 0,
            "fe_ok": fe["ok"],
            "deriv_over_log_q": dq, "deriv_over_log_q2": dq2,
            "intersection": inter, "intersection_detail": ires,
            "matches_log_q": m_q, "matches_log_q2": m_q2,
            "realized_normalization": realized,
            "ok": (v0 == 0) and fe["ok"] and (m_q or m_q2)}


def central_value_scan(quad, box=3):
    """Value at s = 0 of the weighted sum for every basic function with a
    single type in the given box.  For a division-algebra source every
    value must vanish; the report lists any that do not."""
    nonzero = []
    count = 0
    for a in range(-box, box + 1):
        for b in range(a, box + 1):
            f = HeckeFunction.indicator((a, b))
            v = orbital_03(quad.ctx03, f, quad.eta).value_at_0()
            count += 1
            if v != 0:
                nonzero.append({"type": (a, b), "value": v})
    return {"types": count, "nonzero": nonzero, "ok": not nonzero}


# ---------------------------------------------------------------------------
# Seeded samplers over the standard field battery
# ---------------------------------------------------------------------------

FIELD_BATTERY = (("padic", 3), ("padic", 5), ("laurent", 3), ("laurent", 2))


def _minpoly_catalogue(desc):
    """Monic quadratics (a1, a0) of each kind over the base field."""
    one, zero = desc.one(), desc.zero()
    if desc.kind == "padic" and desc.p == 3:
        return {
            "unramified": [(zero, one), (desc.from_int(-2), desc.from_int(2))],
            "ramified": [(zero, desc.from_int(-3)), (zero, desc.from_int(-6)),
                         (desc.from_int(-3), desc.from_int(3))],
            "split": [(zero, -one), (desc.from_int(-3), desc.from_int(2))],
        }
    if desc.kind == "padic" and desc.p == 5:
        return {
            "unramified": [(zero, desc.from_int(-2)),
                           (desc.from_int(-2), -one)],
            "ramified": [(zero, desc.from_int(-5)),
                         (zero, desc.from_int(-10)),
                         (desc.from_int(-5), desc.from_int(5))],
            "split": [(zero, -one), (-one, desc.from_int(-6))],
        }
    if desc.kind == "laurent" and desc.p == 3:
        t = desc.uniformizer(1)
        return {
            "unramified": [(zero, one), (one, -one)],
            "ramified": [(zero, -t), (zero, t), (t, t)],
            "split": [(zero, -one), (one, zero)],
        }
    if desc.kind == "laurent" and desc.p == 2:
        ti = desc.uniformizer(-1)
        return {
            "unramified": [(one, one)],
            "ramified": [(one, ti), (one, one + ti),
                         (one, desc.uniformizer(-3))],
            "split": [(one, zero)],
        }
    raise ConfigError("no quadratic catalogue for this base field")


def _etale_from_pair(desc, a1a0):
    a1, a0 = a1a0
    return QuadEtale.from_minpoly(desc, [desc.one(), a1, a0])


def _random_scalar(rng, desc):
    """A small random base scalar; occasionally carries a uniformizer term
    so that samples do not collapse into the residue field (essential in
    characteristic two, where the integers alone only reach 0 and 1)."""
    s = desc.from_int(rng.randint(-2, 2))
    if rng.below(3) == 0:
        s = s + desc.uniformizer(1) * desc.from_int(rng.choice((1, -1)))
    return s


def _random_invertible(B, rng):
    """A random invertible element of the algebra, with small entries."""
    desc = B.desc
    R = ScalarRing(desc)
    if B.kind == "matrix":
        for _ in range(64):
            g = [[_random_scalar(rng, desc) for _ in range(B.n)]
                 for _ in range(B.n)]
            if not mat_det(R, g).is_zero():
                return g
        raise ComputeError("could not sample an invertible matrix")
    ext = B.ext
    for _ in range(64):
        coeffs = []
        for _ in range(B.n):
            cs = [_random_scalar(rng, desc) for _ in range(ext.deg)]
            coeffs.append(ext.from_base_coords(cs))
        g = B.from_cyclic(coeffs)
        if not B.is_zero(g):
            return g
    raise ComputeError("could not sample an invertible element")


def conjugate_context(ctx, g=None, rng=None, both=True):
    """The pair conjugated by g (a random invertible element if omitted).
    With both=False only the second embedding is conjugated, which changes
    the orbit while keeping the diagram."""
    B = ctx.B
    if g is None:
        g = _random_invertible(B, rng if rng is not None else SplitMix64(0))
    gi = B.inv(g)
    b2 = B.mul(B.mul(g, ctx.b2), gi)
    b1 = B.mul(B.mul(g, ctx.b1), gi) if both else ctx.b1
    return PairContext(ctx.diagram, B, b1, b2)


def _element_minpoly(B, x):
    """Descending monic minimal polynomial of a quadratic non-central
    element, solved from coordinates; None if x is not quadratic."""
    if B.scalar_part(x) is not None:
        return None
    if B.h == 1:
        cp = B.reduced_charpoly(x)
        return [cp[2], cp[1], cp[0]]
    R = ScalarRing(B.desc)
    cols = [B.coords(B.from_int(1)), B.coords(x)]
    A = [[cols[0][i], cols[1][i]] for i in range(len(cols[0]))]
    sol = solve_any(R, A, B.coords(B.mul(x, x)))
    if sol is None:
        return None
    c0, c1 = sol
    return [B.desc.one(), -c1, -c0]


def _normalized_image(B, K, x):
    """Image of the normalized generator of K under the embedding sending
    the presented generator (the minimal polynomial root) to x."""
    shift, scale = K.transform
    return B.smul(scale, B.add(x, B.from_scalar(shift)))


def _division_e2_generator(B):
    """An element of the rank-two unramified subfield of the degree-four
    extension (the fixed field of the square of Frobenius), non-scalar,
    and with square in the base field when the characteristic is odd."""
    ext = B.ext
    desc = B.desc
    R = ScalarRing(desc)
    n = ext.deg
    basis = []
    for k in range(n):
        cs = [desc.one() if i == k else desc.zero() for i in range(n)]
        basis.append(ext.from_base_coords(cs))
    # matrix of frob^2 - id on base coordinates
    M = []
    for k in range(n):
        col = ext.to_base_coords(ext.frob(basis[k], 2))
        M.append([col[i] - (desc.one() if i == k else desc.zero())
                  for i in range(n)])
    A = [[M[j][i] for j in range(n)] for i in range(n)]
    ker = gauss_kernel(R, A)
    y = None
    for vec in ker:
        if any(not c.is_zero() for c in vec[1:]):
            y = ext.from_base_coords(list(vec))
            break
    if y is None:
        raise ComputeError("no non-scalar fixed vector of the square of "
                           "Frobenius")
    # minimal polynomial over the base: y^2 = c1 y + c0
    one_el = basis[0]
    cols = [ext.to_base_coords(one_el), ext.to_base_coords(y)]
    A2 = [[cols[0][i], cols[1][i]] for i in range(n)]
    sol = solve_any(R, A2, list(ext.to_base_coords(ext.mul(y, y))))
    if sol is None:
        raise ComputeError("fixed vector is not quadratic over the base")
    c0, c1 = sol
    if desc.char != 2:
        # complete the square so that the square lands in the base field
        half = desc.one() / desc.from_int(2)
        y = ext.add(y, ext.from_base(-(c1 * half)))
    return y


_E2_CACHE = {}


def _division_slot(B, kind, rng):
    """A non-central element of the division algebra generating a quadratic
    subfield of the requested kind."""
    desc = B.desc
    ext = B.ext

    def rnd():
        return _random_scalar(rng, desc)

    if B.h == 1:
        x = None
        if kind == "unramified":
            for _ in range(32):
                e = ext.from_base_coords([rnd(), rnd()])
                cand = B.from_ext(e)
                if B.scalar_part(cand) is None:
                    x = cand
                    break
        elif desc.char != 2:
            # a + b*Pi ramifies (the reduced discriminant has odd valuation)
            for _ in range(32):
                b = ext.from_base_coords([rnd(), rnd()])
                if _ext_is_zero(ext, b):
                    continue
                cand = B.from_cyclic([ext.from_base(rnd()), b])
                if B.scalar_part(cand) is None:
                    x = cand
                    break
        else:
            # characteristic two: a trace-one unramified part keeps the
            # minimal polynomial separable, the Pi part makes it ramify
            zeta = ext.gf_element(2)
            for _ in range(32):
                c0 = ext.add(zeta, ext.from_base(rnd()))
                k = 2 * rng.below(2) + 1
                b = ext.from_base(desc.uniformizer(-k))
                if rng.below(2):
                    b = ext.mul(b, zeta)
                cand = B.from_cyclic([c0, b])
                if B.scalar_part(cand) is None:
                    x = cand
                    break
        if x is None:
            raise ComputeError("division slot sampling failed")
        # conjugate out of the canonical presentation, else same-shape
        # slots can land in a common commutative subalgebra
        g = _random_invertible(B, rng)
        return B.mul(B.mul(g, x), B.inv(g))

    # rank two: shapes from the quadratic subfields of the big extension
    key = (desc.kind, desc.p, desc.d)
    if key not in _E2_CACHE:
        _E2_CACHE[key] = _division_e2_generator(B)
    w2 = _E2_CACHE[key]
    pi_el = B.gen_pi_element()
    pi2 = B.mul(pi_el, pi_el)
    if kind == "unramified":
        base = B.from_ext(w2)
    else:
        if desc.char == 2:
            raise ConfigError("no separable ramified quadratic shape in "
                              "the rank-two division algebra in "
                              "characteristic two")
        base = pi2 if rng.below(2) else B.mul(B.from_ext(w2), pi2)
    for _ in range(32):
        b = rnd()
        if b.is_zero():
            continue
        x = B.add(B.from_scalar(rnd()), B.smul(b, base))
        g = _random_invertible(B, rng)
        x = B.mul(B.mul(g, x), B.inv(g))
        if B.scalar_part(x) is None:
            return x
    raise ComputeError("division slot sampling failed")


def sample_rss_context(desc, h, kind, combo, rng, max_tries=40):
    """A seeded random regular semisimple pair of the requested shape.

    combo is a pair of strings from {unramified, ramified, split} naming
    the kinds of K1 and K2; the division algebra admits no split slots."""
    if kind == "division" and "split" in combo:
        raise ConfigError("split quadratic algebras do not embed in the "
                          "division algebra")
    B = CSA(desc, kind, h)
    cat = _minpoly_catalogue(desc)
    last = None
    for _ in range(max_tries):
        try:
            if kind == "matrix":
                K1 = _etale_from_pair(desc, cat[combo[0]][
                    rng.below(len(cat[combo[0]]))])
                K2 = _etale_from_pair(desc, cat[combo[1]][
                    rng.below(len(cat[combo[1]]))])
                b1 = B.companion_embedding(K1)
                b2 = B.companion_embedding(K2)
                g1 = _random_invertible(B, rng)
                g2 = _random_invertible(B, rng)
                b1 = B.mul(B.mul(g1, b1), B.inv(g1))
                b2 = B.mul(B.mul(g2, b2), B.inv(g2))
            else:
                x1 = _division_slot(B, combo[0], rng)
                x2 = _division_slot(B, combo[1], rng)
                mp1 = _element_minpoly(B, x1)
                mp2 = _element_minpoly(B, x2)
                if mp1 is None or mp2 is None:
                    continue
                K1 = QuadEtale.from_minpoly(desc, mp1)
                K2 = QuadEtale.from_minpoly(desc, mp2)
                if K1.kind != combo[0] or K2.kind != combo[1]:
                    raise ComputeError("sampled slot has kind %s/%s, "
                                       "wanted %s/%s"
                                       % (K1.kind, K2.kind, *combo))
                b1 = _normalized_image(B, K1, x1)
                b2 = _normalized_image(B, K2, x2)
            D = BiquadDiagram(K1, K2)
            ctx = PairContext(D, B, b1, b2)
            rep = invariant_polynomial(ctx)
            if is_regular_semisimple(rep):
                return ctx, rep
        except (ComputeError, DomainError) as e:
            last = e
    raise ComputeError("could not sample a regular semisimple %s pair "
                       "of shape %s/%s over %s_%d%s"
                       % (kind, combo[0], combo[1], desc.kind, desc.p,
                          "" if last is None else " (%s)" % last))


# ---------------------------------------------------------------------------
# The randomized structural identity suites
# ---------------------------------------------------------------------------

def check_pair_identities(ctx, rep=None, rng=None):
    """Every exact structural identity of one pair; raises AssertionError
    with a short tag on the first failure.

    Checked: the invariant functional equation; s + s^sigma3 = 1;
    s s^sigma3 + t^2 = 0; w commutes with both embeddings; z intertwines
    them with the conjugate embeddings; wz = zw; the quadratic identity
    for z^2; and generator independence of (s, t)."""
    B, C, K3, D = ctx.B, ctx.C, ctx.K3, ctx.diagram
    desc = D.desc
    if rep is None:
        rep = invariant_polynomial(ctx)
    assert rep.func_eq_ok, "invariant functional equation"
    sw = ctx.stwz()
    s, t, w, z = sw["s"], sw["t"], sw["w"], sw["z"]
    sc = C.sigma3(s)
    assert C.is_zero(C.sub(C.add(s, sc), C.one())), "s + s^sigma3 = 1"
    assert C.is_zero(C.add(C.mul(s, sc), C.mul(t, t))), \
        "s s^sigma3 + t^2 = 0"
    for b, K in ((ctx.b1, D.K1), (ctx.b2, D.K2)):
        bc = B.sub(B.from_scalar(-K.a1), b)
        assert B.eq(B.mul(w, b), B.mul(b, w)), "w commutes with the images"
        assert B.eq(B.mul(z, b), B.mul(bc, z)), "z intertwines conjugates"
    assert B.eq(B.mul(w, z), B.mul(z, w)), "wz = zw"
    two = desc.from_int(2)
    tr1, nm1 = -D.K1.a1, D.K1.a0
    tr2, nm2 = -D.K2.a1, D.K2.a0
    trsq1 = D.K1.a1 * D.K1.a1 - two * D.K1.a0
    trsq2 = D.K2.a1 * D.K2.a1 - two * D.K2.a0
    rhs = B.sub(B.mul(w, w), B.smul(tr1 * tr2, w))
    rhs = B.add(rhs, B.from_scalar(trsq1 * nm2 + trsq2 * nm1))
    assert B.eq(B.mul(z, z), rhs), "quadratic identity for z^2"
    # generator independence: shifted and rescaled generators give the
    # same s and t
    if rng is None:
        rng = SplitMix64(0)
    c1 = desc.from_int(rng.randint(0, 2))
    c2 = desc.from_int(rng.randint(0, 2))
    u2 = desc.one() + desc.uniformizer(1) if rng.below(2) \
        else desc.from_int(rng.choice((1, -1)))
    y1 = D.embed1((c1, desc.one()))
    y2 = D.embed2((c2, u2))
    s2, t2 = ctx.stwz_general(y1, y2)
    assert C.is_zero(C.sub(s, s2)), "s depends on the generators"
    assert C.is_zero(C.sub(t, t2)), "t depends on the generators"


def _suite_plan(include_split=True):
    """Round-robin sampling plan over the field battery."""
    mat_combos = [("unramified", "unramified"), ("unramified", "ramified"),
                  ("ramified", "ramified")]
    if include_split:
        mat_combos += [("split", "unramified"), ("split", "ramified"),
                       ("unramified", "split"), ("split", "split")]
    div_combos = [("unramified", "unramified"), ("unramified", "ramified"),
                  ("ramified", "ramified")]
    plan = []
    for kind, p in FIELD_BATTERY:
        desc = FieldDesc(kind, p)
        for h in (1, 2):
            for combo in mat_combos:
                plan.append((desc, h, "matrix", combo))
            for combo in div_combos:
                if desc.char == 2 and h == 2 and "ramified" in combo:
                    continue  # no separable ramified shape there
                plan.append((desc, h, "division", combo))
    return plan


def verify_identity_suite(seed=0, count=200, include_split=True):
    """The seeded identity battery: `count` pairs cycling through every
    base field, rank, algebra form and ramification shape; each pair is
    checked for all structural identities, for invariance of the invariant
    under joint conjugation, and for the resultant conjugation law against
    a second pair over the same diagram."""
    t0 = time.time()
    plan = _suite_plan(include_split)
    rng = SplitMix64(seed)
    coverage = {}
    failures = []
    for i in range(count):
        desc, h, kind, combo = plan[i % len(plan)]
        sub = rng.fork(i)
        tag = "%s_%d h=%d %s %s/%s" % (desc.kind, desc.p, h, kind,
                                       combo[0], combo[1])
        try:
            ctx, rep = sample_rss_context(desc, h, kind, combo, sub)
            check_pair_identities(ctx, rep, sub)
            # joint conjugation fixes the invariant
            ctx_c = conjugate_context(ctx, rng=sub)
            rep_c = invariant_polynomial(ctx_c)
            for a, b in zip(rep.inv, rep_c.inv):
                assert (a[0] - b[0]).is_zero() and (a[1] - b[1]).is_zero(), \
                    "invariant moved under joint conjugation"
            if h == 1:
                assert conjugacy_test(rep, rep_c) == "same-orbit"
            # resultant conjugation law against a second pair
            ctx_b = conjugate_context(ctx, rng=sub, both=False)
            rep_b = invariant_polynomial(ctx_b)
            resultant_abs(rep, rep_b)  # asserts the law internally
        except (AssertionError, ComputeError, DomainError) as e:
            failures.append({"round": i, "config": tag, "error": str(e)})
        key = tag
        coverage[key] = coverage.get(key, 0) + 1
    return {"rounds": count, "cells": len(coverage), "coverage": coverage,
            "failures": failures, "ok": not failures,
            "elapsed_s": round(time.time() - t0, 3)}


def verify_fe_suite(seed=0, count=40, box=2):
    """The seeded functional-equation battery for the weighted sum: builds
    matched quadruples over the field battery at rank one and checks the
    functional equation for every single-type basic function in the box
    and for the unit."""
    t0 = time.time()
    rng = SplitMix64(seed)
    plan = []
    for kind, p in FIELD_BATTERY:
        desc = FieldDesc(kind, p)
        plan.append((desc, "matrix", ("unramified", "unramified")))
        plan.append((desc, "division", ("unramified", "ramified")))
        plan.append((desc, "matrix", ("split", "ramified")))
        plan.append((desc, "division", ("unramified", "unramified")))
        plan.append((desc, "matrix", ("unramified", "ramified")))
    fs = [HeckeFunction.unit(1)]
    for a in range(-box, box + 1):
        for b in range(a, box + 1):
            fs.append(HeckeFunction.indicator((a, b)))
    checked = 0
    failures = []
    for i in range(count):
        desc, kind, combo = plan[i % len(plan)]
        sub = rng.fork(i)
        tag = "%s_%d %s %s/%s" % (desc.kind, desc.p, kind,
                                  combo[0], combo[1])
        try:
            ctx, _ = sample_rss_context(desc, 1, kind, combo, sub)
            quad = build_matching_pair(ctx)
            for f in fs:
                fe = check_functional_equation(quad.ctx03, f, quad.eta)
                checked += 1
                if not fe["ok"]:
                    failures.append({"round": i, "config": tag,
                                     "type": sorted(f.types())})
        except (ComputeError, DomainError) as e:
            failures.append({"round": i, "config": tag, "error": str(e)})
    return {"rounds": count, "checked": checked, "failures": failures,
            "ok": not failures, "elapsed_s": round(time.time() - t0, 3)}
