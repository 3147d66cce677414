"""Exact linear algebra over the rationals.

Everything here works on plain lists of lists of fractions.Fraction.  The
matrices involved are small (at most ~60 x 35), so dense Gaussian elimination
with exact pivoting is entirely adequate and keeps every downstream result
exact.
"""

from __future__ import annotations

from fractions import Fraction
from math import isqrt

Vec = list
Mat = list

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"cannot interpret {x!r} as an exact rational")


def mat_copy(m):
    return [list(row) for row in m]


def identity(n):
    return [[ONE if i == j else ZERO for j in range(n)] for i in range(n)]


def zeros(r, c):
    return [[ZERO] * c for _ in range(r)]


def transpose(m):
    return [list(col) for col in zip(*m)]


def matmul(a, b):
    rb = len(b)
    cb = len(b[0])
    bt = transpose(b)
    return [[sum((x * y for x, y in zip(row, col)), ZERO) for col in bt] for row in a]


def matvec(a, v):
    return [sum((x * y for x, y in zip(row, v)), ZERO) for row in a]


def mat_add(a, b):
    return [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def mat_scale(s, a):
    return [[s * x for x in row] for row in a]


def mat_eq(a, b):
    return a == b


def trace(a):
    return sum((a[i][i] for i in range(len(a))), ZERO)


def rref(m):
    """Reduced row echelon form.  Returns (R, pivot_columns)."""
    r = mat_copy(m)
    rows = len(r)
    cols = len(r[0]) if rows else 0
    pivots = []
    pr = 0
    for pc in range(cols):
        piv = None
        for i in range(pr, rows):
            if r[i][pc] != 0:
                piv = i
                break
        if piv is None:
            continue
        r[pr], r[piv] = r[piv], r[pr]
        inv = ONE / r[pr][pc]
        r[pr] = [x * inv for x in r[pr]]
        for i in range(rows):
            if i != pr and r[i][pc] != 0:
                f = r[i][pc]
                r[i] = [x - f * y for x, y in zip(r[i], r[pr])]
        pivots.append(pc)
        pr += 1
        if pr == rows:
            break
    return r, pivots


def rank(m):
    if not m or not m[0]:
        return 0
    return len(rref(m)[1])


def det(m):
    """Exact determinant by fraction-free-ish Gaussian elimination."""
    n = len(m)
    a = mat_copy(m)
    out = ONE
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            return ZERO
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            out = -out
        out *= a[col][col]
        inv = ONE / a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                f = a[r][col] * inv
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return out


def nullspace(m):
    """Basis of the right kernel, one vector per free column (deterministic)."""
    rows = len(m)
    cols = len(m[0]) if rows else 0
    if rows == 0:
        return [[ONE if i == j else ZERO for i in range(cols)] for j in range(cols)]
    r, pivots = rref(m)
    pivset = set(pivots)
    basis = []
    for free in range(cols):
        if free in pivset:
            continue
        v = [ZERO] * cols
        v[free] = ONE
        for i, pc in enumerate(pivots):
            v[pc] = -r[i][free]
        basis.append(v)
    return basis


def solve(a, b):
    """One solution of A x = b, or None if inconsistent."""
    rows = len(a)
    cols = len(a[0]) if rows else 0
    aug = [list(a[i]) + [b[i]] for i in range(rows)]
    r, pivots = rref(aug)
    if cols in pivots:
        return None
    x = [ZERO] * cols
    for i, pc in enumerate(pivots):
        x[pc] = r[i][cols]
    return x


def solve_affine(a, b):
    """Particular solution plus kernel basis of A x = b.

    Returns (x0, kernel_basis); x0 is None when the system is inconsistent.
    """
    x0 = solve(a, b)
    if x0 is None:
        return None, []
    return x0, nullspace(a)


def inverse(a):
    n = len(a)
    aug = [list(a[i]) + list(identity(n)[i]) for i in range(n)]
    r, pivots = rref(aug)
    if pivots != list(range(n)):
        raise ValueError("matrix is singular")
    return [row[n:] for row in r]


def charpoly(a):
    """Coefficients [1, c1, ..., cn] of det(tI - A) via Faddeev-LeVerrier."""
    n = len(a)
    coeffs = [ONE]
    m = mat_copy(a)
    for k in range(1, n + 1):
        if k > 1:
            m = matmul(a, mat_add(m_prev, mat_scale(coeffs[k - 1], identity(n))))
        c = -trace(m) / k
        coeffs.append(c)
        m_prev = m
    return coeffs


def poly_eval(coeffs, x):
    acc = ZERO
    for c in coeffs:
        acc = acc * x + c
    return acc


def _divisors(n):
    n = abs(n)
    out = []
    d = 1
    while d * d <= n:
        if n % d == 0:
            out.append(d)
            if d != n // d:
                out.append(n // d)
        d += 1
    return sorted(out)


def _synthetic_division(coeffs, r):
    """Divide polynomial by (x - r).  Returns (quotient, remainder)."""
    out = [coeffs[0]]
    for c in coeffs[1:]:
        out.append(c + out[-1] * r)
    return out[:-1], out[-1]


def rational_roots(coeffs, divisor_cap=10**9):
    """All rational roots with multiplicity.

    Returns (roots, fully_split) where roots is a list of (root, multiplicity)
    and fully_split says whether the polynomial factors completely over Q.
    """
    work = list(coeffs)
    roots = {}
    # strip zero roots
    while len(work) > 1 and work[-1] == 0:
        roots[ZERO] = roots.get(ZERO, 0) + 1
        work = work[:-1]
    while len(work) > 1:
        den = 1
        for c in work:
            den = den * c.denominator // _gcd(den, c.denominator)
        iw = [int(c * den) for c in work]
        a0, alead = iw[-1], iw[0]
        if a0 == 0:
            roots[ZERO] = roots.get(ZERO, 0) + 1
            work, _ = _synthetic_division(work, ZERO)
            continue
        if abs(a0) > divisor_cap or abs(alead) > divisor_cap:
            return sorted(roots.items()), False
        found = None
        for p in _divisors(a0):
            for q in _divisors(alead):
                for cand in (Fraction(p, q), Fraction(-p, q)):
                    if poly_eval(work, cand) == 0:
                        found = cand
                        break
                if found is not None:
                    break
            if found is not None:
                break
        if found is None:
            return sorted(roots.items()), False
        roots[found] = roots.get(found, 0) + 1
        work, rem = _synthetic_division(work, found)
        assert rem == 0
    return sorted(roots.items()), True


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def eigenvalues_exact(a):
    """(list of (eigenvalue, algebraic multiplicity), fully_split flag)."""
    return rational_roots(charpoly(a))


def eigenspace(a, lam):
    n = len(a)
    shifted = [[a[i][j] - (lam if i == j else ZERO) for j in range(n)] for i in range(n)]
    return nullspace(shifted)


def is_orthogonal(q):
    n = len(q)
    return matmul(transpose(q), q) == identity(n)


# a few exact Pythagorean cos/sin pairs for building rational rotations
_PYTH = [
    (Fraction(3, 5), Fraction(4, 5)),
    (Fraction(5, 13), Fraction(12, 13)),
    (Fraction(8, 17), Fraction(15, 17)),
    (Fraction(7, 25), Fraction(24, 25)),
    (Fraction(20, 29), Fraction(21, 29)),
    (Fraction(9, 41), Fraction(40, 41)),
]


def plane_rotation(n, i, j, c, s):
    q = identity(n)
    q[i][i] = c
    q[j][j] = c
    q[i][j] = -s
    q[j][i] = s
    return q


def random_rotation(n, rng, steps=6):
    """Exactly orthogonal rational matrix: product of Pythagorean plane rotations."""
    q = identity(n)
    for _ in range(steps):
        i = int(rng.integers(0, n))
        j = int(rng.integers(0, n - 1))
        if j >= i:
            j += 1
        c, s = _PYTH[int(rng.integers(0, len(_PYTH)))]
        if rng.integers(0, 2):
            s = -s
        q = matmul(q, plane_rotation(n, i, j, c, s))
    return q


def vectors_span_equal(a_basis, b_basis):
    """Do two lists of rational vectors span the same subspace?"""
    if not a_basis and not b_basis:
        return True
    if bool(a_basis) != bool(b_basis):
        return False
    ra = rank(a_basis)
    rb = rank(b_basis)
    if ra != rb:
        return False
    return rank(a_basis + b_basis) == ra


def in_span(vec, basis):
    if all(x == 0 for x in vec):
        return True
    if not basis:
        return False
    return rank(basis + [vec]) == rank(basis)
