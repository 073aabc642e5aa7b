"""Exact linear algebra over pluggable coefficient rings.

Matrices are plain lists of lists.  A "ring" is any object with the small
adapter protocol below (zero/one/add/sub/mul/neg/eq/is_zero, plus inv and
from_int where meaningful).  Berkowitz's algorithm gives characteristic
polynomials without a single division, which is what makes the same code
path safe over split quadratic rings (zero divisors!) and in residue
characteristic 2.

Valuation-pivoted Smith reduction and lattice column reduction over the
ring of integers of the base field live here too; they work directly on
Scalar matrices rather than through the adapter protocol because they need
valuations, not just ring operations.
"""

from math import inf

from .errors import DivisionByZero, NotFree
from .localfield import Scalar


# ---------------------------------------------------------------------------
# Ring adapters
# ---------------------------------------------------------------------------

class ScalarRing:
    """The base field as a coefficient ring."""

    def __init__(self, desc):
        self.desc = desc

    def zero(self):
        return self.desc.zero()

    def one(self):
        return self.desc.one()

    def from_int(self, n):
        return self.desc.from_int(n)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def eq(self, a, b):
        return a == b

    def is_zero(self, a):
        return a.is_zero()

    def inv(self, a):
        return a.inv()


class ExtRing:
    """An unramified extension field as a coefficient ring."""

    def __init__(self, ext):
        self.ext = ext

    def zero(self):
        return self.ext.zero()

    def one(self):
        return self.ext.one()

    def from_int(self, n):
        return self.ext.from_base(self.ext.F.from_int(n))

    def add(self, a, b):
        return self.ext.add(a, b)

    def sub(self, a, b):
        return self.ext.sub(a, b)

    def mul(self, a, b):
        return self.ext.mul(a, b)

    def neg(self, a):
        return self.ext.neg(a)

    def eq(self, a, b):
        return self.ext.eq(a, b)

    def is_zero(self, a):
        return self.ext.is_zero(a)

    def inv(self, a):
        return self.ext.inv(a)

    def lift_scalar(self, s):
        return self.ext.from_base(s)


class QuadRing:
    """R[g] / (g^2 = e0 + e1 g) as a coefficient ring over an adapter R.

    Elements are pairs (u, v) = u + v g of R-elements.  When R is a field
    adapter this is the scalar extension by a quadratic etale algebra --
    possibly with zero divisors, which is why everything downstream sticks
    to division-free algorithms and inverts only via the norm.
    """

    def __init__(self, R, e0, e1):
        self.R = R
        self.e0 = e0
        self.e1 = e1

    def zero(self):
        return (self.R.zero(), self.R.zero())

    def one(self):
        return (self.R.one(), self.R.zero())

    def gen(self):
        return (self.R.zero(), self.R.one())

    def from_int(self, n):
        return (self.R.from_int(n), self.R.zero())

    def from_base(self, r):
        return (r, self.R.zero())

    def add(self, a, b):
        return (self.R.add(a[0], b[0]), self.R.add(a[1], b[1]))

    def sub(self, a, b):
        return (self.R.sub(a[0], b[0]), self.R.sub(a[1], b[1]))

    def neg(self, a):
        return (self.R.neg(a[0]), self.R.neg(a[1]))

    def mul(self, a, b):
        R = self.R
        vv = R.mul(a[1], b[1])
        u = R.add(R.mul(a[0], b[0]), R.mul(vv, self.e0))
        v = R.add(R.add(R.mul(a[0], b[1]), R.mul(a[1], b[0])),
                  R.mul(vv, self.e1))
        return (u, v)

    def conj(self, a):
        """g -> e1 - g (the nontrivial R-involution)."""
        return (self.R.add(a[0], self.R.mul(self.e1, a[1])),
                self.R.neg(a[1]))

    def norm(self, a):
        """a * conj(a), an R-element."""
        u, v = a
        R = self.R
        return R.sub(R.add(R.mul(u, u), R.mul(self.e1, R.mul(u, v))),
                     R.mul(self.e0, R.mul(v, v)))

    def trace(self, a):
        return self.R.add(self.R.add(a[0], a[0]), self.R.mul(self.e1, a[1]))

    def eq(self, a, b):
        return self.R.eq(a[0], b[0]) and self.R.eq(a[1], b[1])

    def is_zero(self, a):
        return self.R.is_zero(a[0]) and self.R.is_zero(a[1])

    def inv(self, a):
        n = self.norm(a)
        if self.R.is_zero(n):
            raise DivisionByZero("non-invertible quadratic-ring element")
        ni = self.R.inv(n)
        c = self.conj(a)
        return (self.R.mul(c[0], ni), self.R.mul(c[1], ni))


def quadring_for(K3, R):
    """QuadRing for the fixed algebra K3 over a base adapter R, mapping the
    minimal polynomial T^2 + a1 T + a0 to g^2 = -a0 - a1 g.  The structure
    constants must be liftable into R via from_base on Scalars (identity
    for ScalarRing)."""
    lift = getattr(R, "lift_scalar", lambda s: s)
    return QuadRing(R, lift(-K3.a0), lift(-K3.a1))


# ---------------------------------------------------------------------------
# Generic matrix operations
# ---------------------------------------------------------------------------

def mat_zero(R, n, m=None):
    m = n if m is None else m
    return [[R.zero() for _ in range(m)] for _ in range(n)]


def mat_eye(R, n):
    A = mat_zero(R, n)
    for i in range(n):
        A[i][i] = R.one()
    return A


def mat_add(R, A, B):
    return [[R.add(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_sub(R, A, B):
    return [[R.sub(a, b) for a, b in zip(ra, rb)] for ra, rb in zip(A, B)]


def mat_neg(R, A):
    return [[R.neg(a) for a in row] for row in A]


def mat_smul(R, c, A):
    return [[R.mul(c, a) for a in row] for row in A]


def mat_mul(R, A, B):
    n, k, m = len(A), len(B), len(B[0])
    out = [[R.zero()] * m for _ in range(n)]
    for i in range(n):
        Ai = A[i]
        for t in range(k):
            a = Ai[t]
            if R.is_zero(a):
                continue
            Bt = B[t]
            row = out[i]
            for j in range(m):
                row[j] = R.add(row[j], R.mul(a, Bt[j]))
    return out


def mat_eq(R, A, B):
    return all(R.eq(a, b) for ra, rb in zip(A, B) for a, b in zip(ra, rb))


def mat_apply(R, A, v):
    return [_dot(R, row, v) for row in A]


def _dot(R, xs, ys):
    acc = R.zero()
    for x, y in zip(xs, ys):
        acc = R.add(acc, R.mul(x, y))
    return acc


def berkowitz_charpoly(R, A):
    """Characteristic polynomial det(T*I - A), coefficients ascending
    (c0, c1, ..., 1).  Division-free; R only needs to be a commutative
    ring."""
    n = len(A)
    if n == 0:
        return [R.one()]
    vec = [R.one(), R.neg(A[0][0])]  # descending coeffs for the 1x1 corner
    for i in range(1, n):
        a = A[i][i]
        row = A[i][:i]
        col = [A[j][i] for j in range(i)]
        sub = [r[:i] for r in A[:i]]
        # Toeplitz column: 1, -a, -row.col, -row.sub.col, -row.sub^2.col, ...
        tcol = [R.one(), R.neg(a)]
        w = col
        for k in range(i):
            tcol.append(R.neg(_dot(R, row, w)))
            if k < i - 1:
                w = mat_apply(R, sub, w)
        newvec = []
        for m in range(i + 2):
            acc = R.zero()
            for j, vj in enumerate(vec):
                k = m - j
                if 0 <= k < len(tcol):
                    acc = R.add(acc, R.mul(tcol[k], vj))
            newvec.append(acc)
        vec = newvec
    vec.reverse()  # ascending
    return vec


def mat_det(R, A):
    c0 = berkowitz_charpoly(R, A)[0]
    return R.neg(c0) if len(A) % 2 else c0


def mat_adjugate(R, A):
    """Adjugate via the characteristic polynomial (division-free):
    adj(A) = (-1)^(n+1) * (A^(n-1) + c_{n-1} A^(n-2) + ... + c_1 I)."""
    n = len(A)
    cs = berkowitz_charpoly(R, A)
    # Horner: (((I)*A + c_{n-1} I)*A + ... + c_1 I)
    acc = mat_eye(R, n)
    for k in range(n - 1, 0, -1):
        acc = mat_mul(R, acc, A)
        for i in range(n):
            acc[i][i] = R.add(acc[i][i], cs[k])
    # at this point acc = A^{n-1} + c_{n-1}A^{n-2} + ... + c_1 I
    if n % 2 == 0:
        acc = mat_neg(R, acc)
    return acc


def mat_inv_field(R, A):
    """Inverse over a field adapter (Gaussian elimination)."""
    n = len(A)
    M = [list(row) + list(e) for row, e in zip(A, mat_eye(R, n))]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not R.is_zero(M[r][col]):
                piv = r
                break
        if piv is None:
            raise DivisionByZero("singular matrix")
        M[col], M[piv] = M[piv], M[col]
        pv_inv = R.inv(M[col][col])
        M[col] = [R.mul(pv_inv, x) for x in M[col]]
        for r in range(n):
            if r != col and not R.is_zero(M[r][col]):
                f = M[r][col]
                M[r] = [R.sub(x, R.mul(f, y)) for x, y in zip(M[r], M[col])]
    return [row[n:] for row in M]


def gauss_solve(R, A, B):
    """Solve A X = B over a field adapter; B is a matrix (or column list)."""
    n = len(A)
    cols = len(B[0])
    M = [list(row) + list(brow) for row, brow in zip(A, B)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if not R.is_zero(M[r][col]):
                piv = r
                break
        if piv is None:
            raise DivisionByZero("singular system")
        M[col], M[piv] = M[piv], M[col]
        pv_inv = R.inv(M[col][col])
        M[col] = [R.mul(pv_inv, x) for x in M[col]]
        for r in range(n):
            if r != col and not R.is_zero(M[r][col]):
                f = M[r][col]
                M[r] = [R.sub(x, R.mul(f, y)) for x, y in zip(M[r], M[col])]
    return [row[n:n + cols] for row in M]


def solve_any(R, A, b):
    """One solution of A x = b over a field adapter, for rectangular A
    (m x n), or None if inconsistent.  Free variables are set to zero."""
    m = len(A)
    n = len(A[0]) if m else 0
    M = [list(row) + [bb] for row, bb in zip(A, b)]
    pivots = {}
    r = 0
    for c in range(n):
        piv = None
        for rr in range(r, m):
            if not R.is_zero(M[rr][c]):
                piv = rr
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pv_inv = R.inv(M[r][c])
        M[r] = [R.mul(pv_inv, x) for x in M[r]]
        for rr in range(m):
            if rr != r and not R.is_zero(M[rr][c]):
                f = M[rr][c]
                M[rr] = [R.sub(x, R.mul(f, y)) for x, y in zip(M[rr], M[r])]
        pivots[c] = r
        r += 1
    for rr in range(r, m):
        if not R.is_zero(M[rr][n]):
            return None
    x = [R.zero()] * n
    for c, rr in pivots.items():
        x[c] = M[rr][n]
    return x


def mat_rank(R, A):
    """Rank over a field adapter."""
    m = len(A)
    n = len(A[0]) if m else 0
    M = [list(row) for row in A]
    r = 0
    for c in range(n):
        piv = None
        for rr in range(r, m):
            if not R.is_zero(M[rr][c]):
                piv = rr
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pv_inv = R.inv(M[r][c])
        M[r] = [R.mul(pv_inv, x) for x in M[r]]
        for rr in range(r + 1, m):
            if not R.is_zero(M[rr][c]):
                f = M[rr][c]
                M[rr] = [R.sub(x, R.mul(f, y)) for x, y in zip(M[rr], M[r])]
        r += 1
    return r


def gauss_kernel(R, A):
    """Basis of the right kernel of A (m x n) over a field adapter.
    Returns a list of length-n column vectors."""
    m = len(A)
    n = len(A[0]) if m else 0
    M = [list(row) for row in A]
    pivots = {}  # col -> row
    r = 0
    for c in range(n):
        piv = None
        for rr in range(r, m):
            if not R.is_zero(M[rr][c]):
                piv = rr
                break
        if piv is None:
            continue
        M[r], M[piv] = M[piv], M[r]
        pv_inv = R.inv(M[r][c])
        M[r] = [R.mul(pv_inv, x) for x in M[r]]
        for rr in range(m):
            if rr != r and not R.is_zero(M[rr][c]):
                f = M[rr][c]
                M[rr] = [R.sub(x, R.mul(f, y)) for x, y in zip(M[rr], M[r])]
        pivots[c] = r
        r += 1
    basis = []
    free = [c for c in range(n) if c not in pivots]
    for fc in free:
        v = [R.zero()] * n
        v[fc] = R.one()
        for c, rr in pivots.items():
            v[c] = R.neg(M[rr][fc])
        basis.append(v)
    return basis


# ---------------------------------------------------------------------------
# Valuation-pivoted reductions over the ring of integers (Scalar matrices)
# ---------------------------------------------------------------------------

def _sval(x):
    return inf if x.is_zero() else x.valuation()


def smith_valuations(A):
    """Elementary divisor valuations of a Scalar matrix over O, sorted
    ascending; inf entries mean the matrix has lower rank."""
    M = [list(row) for row in A]
    n, m = len(M), len(M[0])
    vals = []
    top = 0
    while top < min(n, m):
        best, bv = None, inf
        for i in range(top, n):
            for j in range(top, m):
                v = _sval(M[i][j])
                if v < bv:
                    best, bv = (i, j), v
        if best is None or bv is inf:
            vals.extend([inf] * (min(n, m) - top))
            break
        bi, bj = best
        M[top], M[bi] = M[bi], M[top]
        for row in M:
            row[top], row[bj] = row[bj], row[top]
        piv = M[top][top]
        for i in range(top + 1, n):
            if not M[i][top].is_zero():
                f = M[i][top] / piv  # integral: pivot has min valuation
                M[i] = [x - f * y for x, y in zip(M[i], M[top])]
        for j in range(top + 1, m):
            if not M[top][j].is_zero():
                f = M[top][j] / piv
                for i in range(n):
                    M[i][j] = M[i][j] - f * M[i][top]
        vals.append(bv)
        top += 1
    return sorted(vals)


def lattice_column_basis(cols):
    """O-basis of the lattice spanned by the given columns in F^n.

    cols: list of length-n Scalar vectors.  Returns n columns forming a
    basis (raises NotFree if the span has rank < n).  Valuation-pivoted
    column echelon: all eliminations divide by the minimal-valuation entry,
    so every quotient is integral and the O-span never changes.
    """
    n = len(cols[0])
    work = [list(c) for c in cols]
    basis = []
    for row in range(n):
        best, bv = None, inf
        for c in work:
            v = _sval(c[row])
            if v < bv:
                best, bv = c, v
        if best is None or bv is inf:
            raise NotFree("columns do not span a full lattice (rank < %d)" % n)
        work.remove(best)
        piv = best[row]
        for c in work:
            if not c[row].is_zero():
                f = c[row] / piv  # integral
                for i in range(n):
                    c[i] = c[i] - f * best[i]
        basis.append(best)
        # rows above `row` in remaining columns are already zero by induction
    # basis[k] has its first nonzero entry at row k
    return [[basis[j][i] for j in range(n)] for i in range(n)]


def scalar_mat_val_min(A):
    """min entry valuation (inf for the zero matrix)."""
    out = inf
    for row in A:
        for x in row:
            v = _sval(x)
            if v < out:
                out = v
    return out


def scalar_mat_integral(A):
    return scalar_mat_val_min(A) >= 0
