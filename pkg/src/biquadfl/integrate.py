"""Rank-one orbital sums and the lattice-counting integral, in exact arithmetic.

Everything here works at h = 1 (2x2 matrices).  The two main consumers are

* ``orbital_12`` / ``orbital_03``: sums of a compactly supported bi-invariant
  weight over pairs of torus cosets.  The coset support is found by exact
  affine valuation formulas (a unit pi-step on one side shifts every row /
  column / elementary-divisor valuation by exactly one), and every solved
  coset is re-certified by an honest Smith-form computation, so the support
  is provably complete, never sampled.
* ``integrate_resultant`` / ``intersection_number``: the integral of
  1/|resultant| over a congruence unit group, evaluated by stratified
  refinement.  A congruence class is resolved once the valuation of a
  cleared-denominator polynomial certificate is pinned below the working
  depth; unresolved mass is split into all residue children.  Volumes are
  tracked as exact rationals and conservation is asserted at every depth.

Values live in small exact types: ``Fraction`` for plain sums, ``LaurentQS``
(Laurent polynomials in X = q^{-s}) for character-weighted sums, and
``QSqrt`` (Z[1/q, sqrt(q)]-numbers) for the lattice integral.

Calibration note: the weighted sum depends on the choice of base point inside
a double coset; recalibrating multiplies it by a sign times an integer power
of X.  The quantities consumed downstream (value at s = 0, the magnitude of
the derivative, the functional-equation check) are calibration-independent.

Ranks h >= 2 raise UnsupportedRank rather than returning sampled estimates.
"""

from fractions import Fraction
from itertools import product
from math import inf

from .localfield import Scalar, QSqrt
from .linalg import (ScalarRing, mat_eye, mat_add, mat_sub, mat_smul, mat_mul,
                     mat_apply, mat_det, mat_inv_field, gauss_kernel,
                     solve_any, smith_valuations, scalar_mat_val_min,
                     scalar_mat_integral)
from .errors import (ConfigError, DomainError, ComputeError, UnsupportedRank,
                     UnsupportedExtension, RamifiedCharacterUnsupported,
                     NotRegularSemisimple, NoConjugatorFound, DepthCapReached)
from .invariant import invariant_polynomial, is_regular_semisimple


# ---------------------------------------------------------------------------
# Residue digits
# ---------------------------------------------------------------------------

def residue_digits(desc):
    """All residue-field representatives as exact scalars."""
    if desc.kind == "padic":
        if desc.d != 1:
            raise UnsupportedExtension(
                "residue enumeration needs a prime residue field over Q_p")
        return [desc.from_int(k) for k in range(desc.p)]
    out = [desc.zero()]
    for c in range(1, desc.q):
        out.append(Scalar(desc, ((c,), (1,))))
    return out


# ---------------------------------------------------------------------------
# Weight functions and value types
# ---------------------------------------------------------------------------

class HeckeFunction:
    """Finite rational combination of indicator weights, one per Cartan type.

    A type is an ascending tuple of elementary-divisor valuations (length 2
    at rank one).  Coefficients are exact rationals."""

    def __init__(self, pairs, h=1):
        self.h = h
        items = pairs.items() if isinstance(pairs, dict) else pairs
        table = {}
        for t, c in items:
            t = tuple(int(v) for v in t)
            if len(t) != 2 * h:
                raise ConfigError("type %r has length %d, expected %d"
                                  % (t, len(t), 2 * h))
            if any(t[i] > t[i + 1] for i in range(len(t) - 1)):
                raise ConfigError("type %r is not ascending" % (t,))
            c = Fraction(c)
            table[t] = table.get(t, Fraction(0)) + c
        self.table = {t: c for t, c in table.items() if c != 0}

    @classmethod
    def indicator(cls, t):
        t = tuple(int(v) for v in t)
        return cls([(t, 1)], h=len(t) // 2)

    @classmethod
    def unit(cls, h=1):
        """Indicator of the standard maximal compact."""
        return cls([((0,) * (2 * h), 1)], h=h)

    def coeff(self, t):
        return self.table.get(tuple(t), Fraction(0))

    def types(self):
        return sorted(self.table)

    def is_zero(self):
        return not self.table

    def to_json(self):
        return [{"type": list(t), "coeff": str(c)}
                for t, c in sorted(self.table.items())]

    def __repr__(self):
        return "HeckeFunction(%s)" % (self.to_json(),)


class LaurentQS:
    """Laurent polynomial in X = q^{-s} with exact rational coefficients."""

    def __init__(self, coeffs=None, meta=None):
        table = {}
        for k, v in (coeffs or {}).items():
            v = Fraction(v)
            if v != 0:
                table[int(k)] = v
        self.coeffs = table
        self.meta = dict(meta or {})

    def add(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) + v
        return LaurentQS(out)

    def sub(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, Fraction(0)) - v
        return LaurentQS(out)

    def scale(self, c):
        c = Fraction(c)
        return LaurentQS({k: c * v for k, v in self.coeffs.items()})

    def shift(self, m):
        """Multiply by X^m."""
        return LaurentQS({k + m: v for k, v in self.coeffs.items()})

    def conj(self):
        """X -> 1/X, i.e. s -> -s."""
        return LaurentQS({-k: v for k, v in self.coeffs.items()})

    def eq(self, other):
        return self.coeffs == other.coeffs

    def is_zero(self):
        return not self.coeffs

    def value_at_0(self):
        """Value at s = 0 (X = 1)."""
        return sum(self.coeffs.values(), Fraction(0))

    def deriv_over_log_q2(self):
        """d/ds at s = 0, divided by log(q^2).

        With X = q^{-s}, d/ds X^k at 0 is -k log q, so the normalized
        derivative is -(1/2) * sum(k * c_k)."""
        return -Fraction(1, 2) * sum((Fraction(k) * c
                                      for k, c in self.coeffs.items()),
                                     Fraction(0))

    def deriv_over_log_q(self):
        """d/ds at s = 0, divided by log(q): -sum(k * c_k)."""
        return -sum((Fraction(k) * c for k, c in self.coeffs.items()),
                    Fraction(0))

    def to_json(self):
        out = {"coeffs": {str(k): str(self.coeffs[k])
                          for k in sorted(self.coeffs)}}
        if self.meta:
            out["meta"] = dict(self.meta)
        return out

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            c = self.coeffs[k]
            if k == 0:
                parts.append(str(c))
            elif k == 1:
                parts.append("%s*X" % c)
            else:
                parts.append("%s*X^%d" % (c, k))
        return " + ".join(parts).replace("+ -", "- ")


def laurent_eval_deriv(p):
    """Value and normalized derivatives of a LaurentQS at s = 0."""
    return {"value_at_0": p.value_at_0(),
            "deriv_over_log_q": p.deriv_over_log_q(),
            "deriv_over_log_q2": p.deriv_over_log_q2()}


# ---------------------------------------------------------------------------
# The quadratic character of the top algebra over the middle one
# ---------------------------------------------------------------------------

class EtaChar:
    """Quadratic character attached to a diagram, evaluated on elements of
    the middle algebra.

    ``ramified`` is True exactly when the relative extension is ramified; a
    weighted sum against a ramified character vanishes identically and must
    be special-cased by the caller (``orbital_03`` does)."""

    def __init__(self, diagram):
        self.diagram = diagram
        rel = diagram.relative
        if rel == "ramified":
            self.ramified = True
        elif rel == "unramified":
            self.ramified = False
        else:  # relative 'split'
            if diagram.K1.kind == "split" or diagram.K2.kind == "split":
                self.ramified = False
            else:
                # K1 = K2 fields; the component characters are the K1/F ones
                self.ramified = diagram.K1.kind == "ramified"

    def value(self, z):
        """+1 or -1 at an invertible element of the middle algebra."""
        if self.ramified:
            raise RamifiedCharacterUnsupported(
                "this character is ramified; the weighted sum vanishes")
        return self.diagram.eta(z)


def _check_eta_compat(ctx, eta):
    """The character must live on the same quadratic data as the second
    algebra of the pair (coordinates transfer verbatim then)."""
    K2, K3 = ctx.diagram.K2, eta.diagram.K3
    if K2.kind != K3.kind or K2.a0 != K3.a0 or K2.a1 != K3.a1:
        raise DomainError(
            "character mismatch: the second algebra of the pair and the "
            "middle algebra of the character diagram must carry the same "
            "normalized quadratic data")


# ---------------------------------------------------------------------------
# Stable lattice witnesses
# ---------------------------------------------------------------------------

_WITNESS_SWEEP = ((1, 0), (0, 1), (1, 1), (1, -1),
                  (2, 1), (1, 2), (1, 3), (3, 1))


def stable_lattice_witness(desc, K, A):
    """A basis matrix g of a lattice stable under the order generated by K.

    A is the 2x2 image of the generator of K.  Returns (g, g^-1); columns of
    g span a lattice L with (image of the ring of integers of K) . L = L.
    For a split K the columns are the two eigencolumns, so conjugation by g
    diagonalizes the K-action exactly."""
    R = ScalarRing(desc)
    t0, t1 = K.theta
    eye = mat_eye(R, 2)
    Th = mat_add(R, mat_smul(R, t0, eye), mat_smul(R, t1, A))
    for a, b in _WITNESS_SWEEP:
        v = [desc.from_int(a), desc.from_int(b)]
        tv = mat_apply(R, Th, v)
        if K.kind == "split":
            cols = []
            ok = True
            for col in (tv, [v[0] - tv[0], v[1] - tv[1]]):
                vals = [inf if x.is_zero() else x.valuation() for x in col]
                mv = min(vals)
                if mv is inf:
                    ok = False
                    break
                u = desc.uniformizer(-mv)
                cols.append([x * u for x in col])
            if not ok:
                continue
            g = [[cols[0][0], cols[1][0]], [cols[0][1], cols[1][1]]]
        else:
            g = [[v[0], tv[0]], [v[1], tv[1]]]
        det = mat_det(R, g)
        if det.is_zero():
            continue
        ginv = mat_inv_field(R, g)
        W = mat_mul(R, ginv, mat_mul(R, Th, g))
        if not scalar_mat_integral(W):
            raise ComputeError("witness lattice is not stable under the "
                               "integral generator")
        if K.kind == "split" and not (W[0][1].is_zero() and W[1][0].is_zero()):
            raise ComputeError("split witness failed to diagonalize")
        return g, ginv
    raise ComputeError("no stable lattice witness found in the sweep")


class _Side:
    """One torus side of an orbital sum: a quadratic etale algebra K acting
    through the image A of its generator, rebased onto a stable lattice.

    Coset exponents: an integer k (element pi_K^k) for a field, a pair
    (a, b) of component valuations for a split algebra."""

    def __init__(self, desc, K, A, witness=None):
        self.desc = desc
        self.K = K
        self.A = A
        self.R = ScalarRing(desc)
        self.split = K.kind == "split"
        self.e = 1 if self.split else K.e
        if witness is None:
            witness = stable_lattice_witness(desc, K, A)
        self.g, self.ginv = witness

    def element(self, vec):
        if self.split:
            return self.K.from_components(self.desc.uniformizer(vec[0]),
                                          self.desc.uniformizer(vec[1]))
        return self.K.pi_power(vec)

    def inv_element(self, vec):
        if self.split:
            return self.K.from_components(self.desc.uniformizer(-vec[0]),
                                          self.desc.uniformizer(-vec[1]))
        return self.K.pi_power(-vec)

    def w_mat(self, z):
        """g^-1 (z0 + z1 A) g."""
        R = self.R
        m = mat_add(R, mat_smul(R, z[0], mat_eye(R, 2)),
                    mat_smul(R, z[1], self.A))
        return mat_mul(R, self.ginv, mat_mul(R, m, self.g))


def _row_vals(M):
    return [min(inf if x.is_zero() else x.valuation() for x in row)
            for row in M]


def _col_vals(M):
    n = len(M[0])
    return [min(inf if M[i][j].is_zero() else M[i][j].valuation()
                for i in range(len(M)))
            for j in range(n)]


# ---------------------------------------------------------------------------
# Exact coset support
# ---------------------------------------------------------------------------

def _coset_support(sideA, sideB, J, types):
    """For each requested Cartan type, the complete list of torus double
    cosets (modulo the diagonal center) whose matrix has that type.

    Returns {type: [(vecA, vecB), ...]}.  Every candidate produced by the
    affine valuation formulas is re-verified with an exact Smith form; a
    mismatch is a bug, not data, and raises."""
    R = sideA.R
    found = {tuple(t): {} for t in types}

    def matrix_of(vecA, vecB):
        return mat_mul(R, sideA.w_mat(sideA.inv_element(vecA)),
                       mat_mul(R, J, sideB.w_mat(sideB.element(vecB))))

    def consider(t, vecA, vecB):
        key = (vecA, vecB)
        if key in found[t]:
            return
        got = tuple(smith_valuations(matrix_of(vecA, vecB)))
        if got != t:
            raise ComputeError(
                "coset certification mismatch: solved for type %r but the "
                "matrix has type %r" % (t, got))
        found[t][key] = (vecA, vecB)

    if not sideA.split and not sideB.split:
        # Both fields.  Within the residue class (rA mod eA, rB mod eB) the
        # uniformizer steps shift the whole GL2(O)-double coset by exact
        # powers of pi, so the type is affine in the step counts.
        for rA in range(sideA.e):
            for rB in range(sideB.e):
                M0 = matrix_of(rA, rB)
                vmin0 = scalar_mat_val_min(M0)
                vdet0 = mat_det(R, M0).valuation()
                for t in found:
                    v1, v2 = t
                    d = v1 - vmin0
                    if vdet0 + 2 * d == v1 + v2:
                        consider(t, rA, rB + sideB.e * d)
    elif sideA.split and not sideB.split:
        # Split acting on rows from the left, field stepping on the right.
        for rB in range(sideB.e):
            N0 = mat_mul(R, J, sideB.w_mat(sideB.element(rB)))
            r1, r2 = _row_vals(N0)
            vdet0 = mat_det(R, N0).valuation()
            for tt in found:
                v1, v2 = tt
                # row 1 achieves the minimum
                t = v1 - r1
                beta = vdet0 + 2 * t - (v1 + v2)
                if r2 + t - beta >= v1:
                    consider(tt, (0, beta), rB + sideB.e * t)
                # row 2 achieves the minimum
                t = v2 - vdet0 + r2
                beta = r2 + t - v1
                if r1 + t >= v1:
                    consider(tt, (0, beta), rB + sideB.e * t)
    elif not sideA.split and sideB.split:
        # Field stepping on the left, split scaling columns on the right.
        for rA in range(sideA.e):
            N0 = mat_mul(R, sideA.w_mat(sideA.inv_element(rA)), J)
            c1, c2 = _col_vals(N0)
            vdet0 = mat_det(R, N0).valuation()
            for tt in found:
                v1, v2 = tt
                # column 1 achieves the minimum
                s = c1 - v1
                delta = v1 + v2 - vdet0 + 2 * s
                if c2 - s + delta >= v1:
                    consider(tt, rA + sideA.e * s, (0, delta))
                # column 2 achieves the minimum
                s = vdet0 - c2 - v2
                delta = v1 - c2 + s
                if c1 - s >= v1:
                    consider(tt, rA + sideA.e * s, (0, delta))
    else:
        # Both split: every entry valuation is an exact affine function of
        # the exponents (no cancellation inside a single entry).
        vJ = [[inf if J[i][j].is_zero() else J[i][j].valuation()
               for j in range(2)] for i in range(2)]
        if any(v is inf for row in vJ for v in row):
            raise NotRegularSemisimple(
                "the two split tori share an eigenline")
        vdetJ = mat_det(R, J).valuation()
        for tt in found:
            v1, v2 = tt
            D = v1 + v2 - vdetJ
            cands = []
            # entry (1,1) achieves the minimum: gamma is pinned
            g0 = v1 - vJ[0][0]
            if vJ[1][1] + D - g0 >= v1:
                lo = v1 - vJ[0][1] - D + g0
                hi = vJ[1][0] + g0 - v1
                for beta in range(lo, hi + 1):
                    cands.append((beta, g0, D + beta - g0))
            # entry (1,2): delta is pinned
            d0 = v1 - vJ[0][1]
            if vJ[1][0] + D - d0 >= v1:
                lo = v1 - vJ[0][0] - D + d0
                hi = vJ[1][1] + d0 - v1
                for beta in range(lo, hi + 1):
                    cands.append((beta, D + beta - d0, d0))
            # entry (2,1): delta is pinned
            d0 = D - v1 + vJ[1][0]
            if vJ[0][1] + d0 >= v1:
                lo = vJ[1][0] - vJ[0][0]
                hi = vJ[1][1] + d0 - v1
                for beta in range(lo, hi + 1):
                    cands.append((beta, v1 - vJ[1][0] + beta, d0))
            # entry (2,2): gamma is pinned
            g0 = D + vJ[1][1] - v1
            if vJ[0][0] + g0 >= v1:
                lo = vJ[1][1] - vJ[0][1]
                hi = vJ[1][0] + g0 - v1
                for beta in range(lo, hi + 1):
                    cands.append((beta, g0, v1 - vJ[1][1] + beta))
            for beta, gamma, delta in cands:
                consider(tt, (0, beta), (gamma, delta))

    return {t: list(d.values()) for t, d in found.items()}


# ---------------------------------------------------------------------------
# Orbital sums
# ---------------------------------------------------------------------------

def _orbital_guards(ctx):
    if ctx.B.kind != "matrix":
        raise DomainError("orbital sums need the matrix form of the algebra; "
                          "division-algebra pairs have no open orbit to sum "
                          "over")
    if ctx.B.h != 1:
        raise UnsupportedRank("orbital sums are exact at rank one only; "
                              "higher rank is not implemented")
    rep = invariant_polynomial(ctx)
    if not is_regular_semisimple(rep):
        raise NotRegularSemisimple(
            "orbital sums need a regular semisimple pair")


def _sides_for(ctx, witnesses=None):
    desc = ctx.B.desc
    wA = wB = None
    if witnesses is not None:
        wA, wB = witnesses
    sideA = _Side(desc, ctx.diagram.K1, ctx.b1, witness=wA)
    sideB = _Side(desc, ctx.diagram.K2, ctx.b2, witness=wB)
    J = mat_mul(sideA.R, sideA.ginv, sideB.g)
    return sideA, sideB, J


def orbital_12(ctx, f, witnesses=None):
    """Plain double-coset count: sum of f over torus cosets mod the center.

    Returns an exact Fraction.  ``witnesses`` optionally fixes the stable
    lattice bases as ((gA, gAinv), (gB, gBinv))."""
    _orbital_guards(ctx)
    sideA, sideB, J = _sides_for(ctx, witnesses)
    support = _coset_support(sideA, sideB, J, f.types())
    total = Fraction(0)
    for t, cosets in support.items():
        total += f.coeff(t) * len(cosets)
    return total


def orbital_03(ctx, f, eta, witnesses=None):
    """Character- and |.|^s-weighted coset sum, as a Laurent polynomial in
    X = q^{-s}.

    The first algebra of the pair must be split (its component valuations
    carry the |.|^s-weight); the character eta comes from the original
    diagram whose middle algebra matches the second side here.  A ramified
    character makes the sum vanish identically."""
    _orbital_guards(ctx)
    if ctx.diagram.K1.kind != "split":
        raise DomainError("the weighted sum needs a split first algebra")
    _check_eta_compat(ctx, eta)
    if eta.ramified:
        return LaurentQS({}, meta={"vanishes": "ramified character"})
    sideA, sideB, J = _sides_for(ctx, witnesses)
    support = _coset_support(sideA, sideB, J, f.types())
    coeffs = {}
    ncosets = 0
    for t, cosets in support.items():
        c = f.coeff(t)
        for vecA, vecB in cosets:
            ncosets += 1
            alpha, beta = vecA
            sign = eta.value(sideB.element(vecB))
            k = alpha - beta
            coeffs[k] = coeffs.get(k, Fraction(0)) + c * sign
    return LaurentQS(coeffs, meta={"cosets": ncosets})


# ---------------------------------------------------------------------------
# Functional equation data
# ---------------------------------------------------------------------------

def sigma_conjugating_unit(desc, K, A, g, ginv):
    """A matrix u, unit with respect to the witness lattice g, with
    u (z0 + z1 A) u^-1 = image of the conjugate element, for all z."""
    R = ScalarRing(desc)
    eye = mat_eye(R, 2)
    Asig = mat_sub(R, mat_smul(R, -K.a1, eye), A)
    # u A - Asig u = 0, vectorized over the 4 matrix entries
    basis_mats = []
    for k in range(2):
        for l in range(2):
            E = [[desc.one() if (i, j) == (k, l) else desc.zero()
                  for j in range(2)] for i in range(2)]
            basis_mats.append(E)
    L = []
    cols = []
    for E in basis_mats:
        T = mat_sub(R, mat_mul(R, E, A), mat_mul(R, Asig, E))
        cols.append([T[0][0], T[0][1], T[1][0], T[1][1]])
    L = [[cols[j][i] for j in range(4)] for i in range(4)]
    kern = gauss_kernel(R, L)
    if not kern:
        raise NoConjugatorFound("no twisting unit: empty intertwiner space")
    # The intertwiner space is a free rank-one module over the centralizing
    # torus, so it contains an element carrying the witness lattice to a
    # scalar multiple of itself: take any invertible intertwiner and
    # correct it by a torus element.  A compact-mod-center torus needs at
    # most the torus uniformizer; a split torus needs a power of the
    # uniformizer on one eigenline.
    combos = []
    if len(kern) == 1:
        combos.append(kern[0])
    else:
        v1, v2 = kern[0], kern[1]
        pi1 = desc.uniformizer(1)
        combos = [v1, v2,
                  [v1[i] + v2[i] for i in range(4)],
                  [v1[i] - v2[i] for i in range(4)],
                  [v1[i] + pi1 * v2[i] for i in range(4)]]
    V = None
    for vec in combos:
        cand = [[vec[0], vec[1]], [vec[2], vec[3]]]
        Wc = mat_mul(R, ginv, mat_mul(R, cand, g))
        if not mat_det(R, Wc).is_zero():
            V = Wc
            break
    if V is None:
        raise NoConjugatorFound("no invertible intertwiner")
    App = mat_mul(R, ginv, mat_mul(R, A, g))
    taus = [eye, App]
    if K.kind == "split" and K.roots is not None:
        r1, r2 = K.roots
        den = desc.one() / (r1 - r2)
        P1 = mat_smul(R, den, mat_sub(R, App, mat_smul(R, r2, eye)))
        P2 = mat_sub(R, eye, P1)
        for k in range(-10, 11):
            pk = desc.uniformizer(k)
            taus.append(mat_add(R, mat_smul(R, pk, P1), P2))
    for tau in taus:
        W = mat_mul(R, tau, V)
        mv = scalar_mat_val_min(W)
        if mv is inf:
            continue
        det = mat_det(R, W)
        if det.is_zero() or det.valuation() != 2 * mv:
            continue
        u = mat_mul(R, g, mat_mul(R, W, ginv))
        return mat_smul(R, desc.uniformizer(-mv), u)
    raise NoConjugatorFound("no unit found in the intertwiner sweep")


def _torus_coords(ctx, M, gen_mat):
    """Solve M = c0 I + c1 gen_mat exactly; returns the element (c0, c1)."""
    R = ScalarRing(ctx.B.desc)
    eye = mat_eye(R, 2)
    A = [[eye[i][j], gen_mat[i][j]] for i in range(2) for j in range(2)]
    b = [M[i][j] for i in range(2) for j in range(2)]
    sol = solve_any(R, A, b)
    if sol is None:
        raise ComputeError("matrix does not lie on the expected torus")
    c0, c1 = sol
    # re-verify the decomposition exactly
    chk = mat_add(R, mat_smul(R, c0, eye), mat_smul(R, c1, gen_mat))
    for i in range(2):
        for j in range(2):
            if not (chk[i][j] - M[i][j]).is_zero():
                raise ComputeError("torus decomposition failed to recompose")
    return (c0, c1)


def functional_equation_data(ctx, eta, witnesses=None):
    """The exact factor relating the weighted sum at s and at -s.

    Returns {"m0": int, "eps": +-1, ...}: the sum satisfies
    P(X) = eps * X^m0 * P(1/X)."""
    _orbital_guards(ctx)
    if ctx.diagram.K1.kind != "split":
        raise DomainError("the functional equation needs a split first "
                          "algebra")
    _check_eta_compat(ctx, eta)
    sideA, sideB, _J = _sides_for(ctx, witnesses)
    desc = ctx.B.desc
    z = ctx.stwz()["z"]
    u0 = sigma_conjugating_unit(desc, ctx.diagram.K1, ctx.b1,
                                sideA.g, sideA.ginv)
    u3 = sigma_conjugating_unit(desc, ctx.diagram.K2, ctx.b2,
                                sideB.g, sideB.ginv)
    R = sideA.R
    zdet = mat_det(R, z)
    if zdet.is_zero():
        raise ComputeError("the twisting element is singular; the pair is "
                           "too degenerate for a functional equation")
    lam = _torus_coords(ctx, mat_mul(R, z, u0), ctx.b1)
    kap = _torus_coords(ctx, mat_mul(R, z, u3), ctx.b2)
    va, vb = ctx.diagram.K1.val_components(lam)
    eps = eta.value(kap)
    return {"m0": va - vb, "eps": eps, "zu0": lam, "zu3": kap}


def check_functional_equation(ctx, f, eta, witnesses=None):
    """Verify P(X) = eps * X^m0 * P(1/X) for the weighted sum of f."""
    P = orbital_03(ctx, f, eta, witnesses=witnesses)
    if eta.ramified:
        return {"poly": P, "m0": 0, "eps": 1, "ok": True,
                "vanishes": True}
    data = functional_equation_data(ctx, eta, witnesses=witnesses)
    rhs = P.conj().shift(data["m0"]).scale(data["eps"])
    return {"poly": P, "m0": data["m0"], "eps": data["eps"],
            "ok": P.eq(rhs)}


# ---------------------------------------------------------------------------
# The lattice-counting integral
# ---------------------------------------------------------------------------

def mu_scalar(ctx):
    """The symmetric cross product of the pair, as a base scalar.

    At rank one this product is central for every regular semisimple pair;
    a non-central value means the pair is degenerate."""
    w = ctx.stwz()["w"]
    s = ctx.B.scalar_part(w)
    if s is None:
        raise ComputeError("symmetric cross product is not central; the "
                           "pair is not regular semisimple at rank one")
    return s


def _scaled_integral_generator(desc, K, A):
    """(U, s1) with U = s1 * A integral, s1 a base scalar.

    Accepts an integral generator image as-is; otherwise tries the theta
    rescaling (valid when the order generator is a scalar multiple of the
    presented one).  Anything else must be conjugated onto a stable lattice
    by the caller first."""
    if scalar_mat_integral(A):
        return A, desc.one()
    t0, t1 = K.theta
    if t0.is_zero():
        R = ScalarRing(desc)
        U = mat_smul(R, t1, A)
        if scalar_mat_integral(U):
            return U, t1
    raise DomainError("generator image is not integral: conjugate the pair "
                      "onto a stable lattice first")


class StratumReport:
    """Exact bookkeeping of the stratified refinement, one row per depth."""

    def __init__(self, m, q):
        self.m = m
        self.q = q
        self.rows = []

    def add_row(self, depth, classes, resolved, class_volume,
                resolved_cum, unresolved):
        if resolved_cum + unresolved != 1:
            raise ComputeError("volume conservation violated at depth %d"
                               % depth)
        self.rows.append({"depth": depth, "classes": classes,
                          "resolved": resolved,
                          "class_volume": class_volume,
                          "resolved_volume": resolved_cum,
                          "unresolved_volume": unresolved})

    def log(self):
        out = []
        for r in self.rows:
            out.append("depth %d: %d classes, %d resolved, class volume %s, "
                       "resolved mass %s, unresolved mass %s"
                       % (r["depth"], r["classes"], r["resolved"],
                          r["class_volume"], r["resolved_volume"],
                          r["unresolved_volume"]))
        return out

    def to_json(self):
        return {"m": self.m, "q": self.q,
                "rows": [{"depth": r["depth"], "classes": r["classes"],
                          "resolved": r["resolved"],
                          "class_volume": str(r["class_volume"]),
                          "resolved_volume": str(r["resolved_volume"]),
                          "unresolved_volume": str(r["unresolved_volume"])}
                         for r in self.rows]}


def _require_same_diagram(ctx1, ctx2):
    d1, d2 = ctx1.diagram, ctx2.diagram
    if d1.desc != d2.desc:
        raise DomainError("the two pairs live over different base fields")
    for Ka, Kb in ((d1.K1, d2.K1), (d1.K2, d2.K2)):
        if Ka.kind != Kb.kind or Ka.a0 != Kb.a0 or Ka.a1 != Kb.a1:
            raise DomainError("the two pairs must share the same normalized "
                              "quadratic data on both sides")


def integrate_resultant(ctx_phi, ctx_psi, m=0, depth_cap=16,
                        recheck_resolved=False):
    """Integral of 1/|resultant of the two invariant polynomials| over the
    depth-m congruence unit group, against the probability Haar measure.

    ctx_phi is the reference pair (either algebra form); ctx_psi is a matrix
    pair sharing the same diagram, conjugated by the integration variable.
    Returns (value, report) with value an exact QSqrt; raises
    DepthCapReached (carrying .partial_value and .report) if unresolved mass
    remains at the cap.

    With ``recheck_resolved`` every class banked as resolved is split one
    level further and all of its children are re-certified at the same
    valuation, which proves the banked value is stable under refinement."""
    if ctx_psi.B.kind != "matrix":
        raise DomainError("the integration side needs the matrix form")
    if ctx_phi.B.h != 1 or ctx_psi.B.h != 1:
        raise UnsupportedRank("the integral is exact at rank one only")
    if m < 0:
        raise ConfigError("congruence depth m must be >= 0")
    _require_same_diagram(ctx_phi, ctx_psi)
    for ctx in (ctx_phi, ctx_psi):
        if not is_regular_semisimple(invariant_polynomial(ctx)):
            raise NotRegularSemisimple("both pairs must be regular "
                                       "semisimple")

    desc = ctx_psi.B.desc
    q = desc.q
    R = ScalarRing(desc)
    K3 = ctx_psi.K3

    # resultant^2 = (difference of cross products)^2 / vsq, with vsq the
    # base scalar (x1 - conj x1)^2 (x2 - conj x2)^2 shared by both pairs
    v3 = ctx_psi.stwz()["v"]
    vsq_el = K3.mul(v3, v3)
    if not vsq_el[1].is_zero():
        raise ComputeError("odd part of the shared square is nonzero")
    v_vsq = vsq_el[0].valuation()

    mu_phi = mu_scalar(ctx_phi)
    U1, s11 = _scaled_integral_generator(desc, ctx_psi.diagram.K1, ctx_psi.b1)
    U2, s12 = _scaled_integral_generator(desc, ctx_psi.diagram.K2, ctx_psi.b2)
    eye = mat_eye(R, 2)
    U1s = mat_sub(R, mat_smul(R, -(ctx_psi.diagram.K1.a1 * s11), eye), U1)
    U2s = mat_sub(R, mat_smul(R, -(ctx_psi.diagram.K2.a1 * s12), eye), U2)
    for M in (U1s, U2s):
        if not scalar_mat_integral(M):
            raise DomainError("conjugate generator image is not integral: "
                              "conjugate the pair onto a stable lattice "
                              "first")
    s1prod = s11 * s12
    v_s1 = s1prod.valuation()
    s_const = s1prod * mu_phi

    digits = residue_digits(desc)
    digit_mats = [[[d00, d01], [d10, d11]]
                  for d00, d01, d10, d11 in product(digits, repeat=4)]

    def certificate(g):
        # cleared-denominator difference of cross products, entry (0,0);
        # congruent mod pi^depth across the whole congruence class of g
        ginv = mat_inv_field(R, g)
        t1 = mat_mul(R, U1, mat_mul(R, g, mat_mul(R, U2, ginv)))
        t2 = mat_mul(R, mat_mul(R, g, mat_mul(R, U2s, ginv)), U1s)
        return t1[0][0] + t2[0][0] - s_const

    report = StratumReport(m, q)
    total = QSqrt(q, 0)
    resolved_cum = Fraction(0)

    if m == 0:
        base = (q * q - 1) * (q * q - q)
        pending = []
        for D in digit_mats:
            det = mat_det(R, D)
            if det.is_zero() or det.valuation() > 0:
                continue
            pending.append(D)
        if len(pending) != base:
            raise ComputeError("unit class count %d does not match the "
                               "residue group order %d"
                               % (len(pending), base))
        depth = 1
    else:
        pending = [mat_eye(R, 2)]
        depth = m

    while pending:
        if m == 0:
            cvol = Fraction(1, (q * q - 1) * (q * q - q)
                            * q ** (4 * (depth - 1)))
        else:
            cvol = Fraction(1, q ** (4 * (depth - m)))
        nxt = []
        nres = 0
        for g in pending:
            E = certificate(g)
            if (not E.is_zero()) and E.valuation() < depth:
                if recheck_resolved:
                    pi_r = desc.uniformizer(depth)
                    for D in digit_mats:
                        Ec = certificate(mat_add(R, g, mat_smul(R, pi_r, D)))
                        if Ec.is_zero() or Ec.valuation() != E.valuation():
                            raise ComputeError(
                                "a resolved class failed re-certification "
                                "one level deeper")
                v_rsq = 2 * (E.valuation() - v_s1) - v_vsq
                total = total + QSqrt(q, cvol) * QSqrt.half_power(q, v_rsq)
                nres += 1
            else:
                nxt.append(g)
        resolved_cum += cvol * nres
        unresolved = cvol * (len(pending) - nres)
        report.add_row(depth, len(pending), nres, cvol, resolved_cum,
                       unresolved)
        if not nxt:
            break
        if depth + 1 > depth_cap:
            err = DepthCapReached(
                "unresolved mass %s remains at depth %d" %
                (unresolved, depth))
            err.partial_value = total
            err.report = report
            raise err
        pi_d = desc.uniformizer(depth)
        pending = [mat_add(R, g, mat_smul(R, pi_d, D))
                   for g in nxt for D in digit_mats]
        depth += 1

    return total, report


# ---------------------------------------------------------------------------
# The closed-form constants and the intersection number
# ---------------------------------------------------------------------------

def gl_count(q, n):
    """Order of GL_n over the field with q elements."""
    qn = q ** n
    out = 1
    for i in range(n):
        out *= qn - q ** i
    return out


def unit_group_size_residue(K, h=1):
    """Order of GL_h over (integers of K) mod (base uniformizer)."""
    q = K.desc.q
    if K.kind == "split":
        return gl_count(q, h) ** 2
    if K.kind == "unramified":
        return gl_count(q * q, h)
    # ramified: residue ring is a square-zero extension of the residue field
    return gl_count(q, h) * q ** (h * h)


def c_constant(m, diagram, h=1):
    """Leading rational constant of the lattice count: 1 at positive depth,
    a ratio of residue unit-group orders at depth zero."""
    if m > 0:
        return Fraction(1)
    q = diagram.desc.q
    num = gl_count(q, 2 * h)
    den = (unit_group_size_residue(diagram.K1, h)
           * unit_group_size_residue(diagram.K2, h))
    return Fraction(num, den)


def disc_valuation(K):
    """Valuation of the discriminant of the maximal order of K.

    Computed intrinsically from the order generator theta, so it is
    independent of how the quadratic data was presented."""
    th = K.theta
    tr = K.trace_el(th)
    nm = K.norm_el(th)
    d = tr * tr - K.desc.from_int(4) * nm
    if d.is_zero():
        raise DomainError("degenerate (inseparable) order generator")
    return d.valuation()


class IntersectionResult:
    """Exact intersection length: constant * discriminant factor * integral."""

    def __init__(self, value, c, disc_halfpow, integral, report, m):
        self.value = value
        self.c = c
        self.disc_halfpow = disc_halfpow
        self.integral = integral
        self.report = report
        self.m = m

    def to_json(self):
        return {"m": self.m,
                "value": self.value.to_json(),
                "c": str(self.c),
                "disc_halfpow": self.disc_halfpow.to_json(),
                "integral": self.integral.to_json(),
                "strata": self.report.to_json()}

    def __repr__(self):
        return "IntersectionResult(value=%r, m=%d)" % (self.value, self.m)


def intersection_number(ctx_div, ctx_mat, m=0, depth_cap=16,
                        recheck_resolved=False):
    """The deformation-length formula at rank one: reference pair in the
    division algebra, integration pair in the matrix algebra, both over the
    same diagram."""
    if ctx_div.B.kind != "division":
        raise DomainError("the reference pair must live in the division "
                          "algebra")
    integral, report = integrate_resultant(ctx_div, ctx_mat, m=m,
                                           depth_cap=depth_cap,
                                           recheck_resolved=recheck_resolved)
    dia = ctx_mat.diagram
    q = dia.desc.q
    c = c_constant(m, dia, h=1)
    dv = disc_valuation(dia.K1) + disc_valuation(dia.K2)
    disc_factor = QSqrt.half_power(q, dv)
    value = QSqrt(q, c) * disc_factor * integral
    return IntersectionResult(value=value, c=c, disc_halfpow=disc_factor,
                              integral=integral, report=report, m=m)
