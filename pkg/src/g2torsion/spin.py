"""Exact spin representation of Cl(7) on the 8-dimensional real spinor space.

The gamma matrices are built as left-multiplication operators of the
octonions, using the same seven antisymmetric triples that define the
calibration 3-form in :mod:`g2torsion.g2`.  All entries are 0 or +-1, so the
representation is exact over the integers.

Sign conventions are pinned by a spectral normalization: the operator of the
calibration 3-form acting on spinors must have spectrum {-7 (x1), +1 (x7)}.
The one-dimensional eigenspace for -7 is spanned by the distinguished spinor
returned by :func:`find_psi0`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from . import linalg
from .forms import Form
from .linalg import frac

ZERO = Fraction(0)
ONE = Fraction(1)

#: Anti-symmetric triples (i, j, k) with coefficient +-1: the multiplication
#: table of imaginary octonion units and simultaneously the coefficients of
#: the calibration 3-form e_127 + e_135 - e_146 - e_236 - e_245 + e_347 + e_567.
OCTONION_TRIPLES = {
    (1, 2, 7): 1,
    (1, 3, 5): 1,
    (1, 4, 6): -1,
    (2, 3, 6): -1,
    (2, 4, 5): -1,
    (3, 4, 7): 1,
    (5, 6, 7): 1,
}

DIM_SPINOR = 8
DIM_VECTOR = 7


def _structure_constant(triples, i, j, k):
    """phi_{ijk}, totally antisymmetric extension of the triple table."""
    idx = (i, j, k)
    base = tuple(sorted(idx))
    if len(set(idx)) < 3:
        return 0
    sign = 1
    lst = list(idx)
    for a in range(1, 3):
        b = a
        while b > 0 and lst[b - 1] > lst[b]:
            lst[b - 1], lst[b] = lst[b], lst[b - 1]
            sign = -sign
            b -= 1
    return sign * triples.get(base, 0)


def _build_gammas(triples):
    """Seven 8x8 integer matrices: left multiplication by imaginary units.

    Spinor coordinates: index 0 is the real octonion unit, indices 1..7 the
    imaginary units.  L_i u_0 = u_i, L_i u_i = -u_0, L_i u_j = phi_{ijk} u_k.
    """
    gammas = []
    for i in range(1, 8):
        m = [[ZERO] * 8 for _ in range(8)]
        m[i][0] = ONE
        m[0][i] = -ONE
        for j in range(1, 8):
            if j == i:
                continue
            for k in range(1, 8):
                c = _structure_constant(triples, i, j, k)
                if c:
                    m[k][j] = frac(c)
        gammas.append(m)
    return gammas


def _clifford_relations_hold(gammas):
    n = len(gammas)
    ident = linalg.identity(DIM_SPINOR)
    for i in range(n):
        sq = linalg.matmul(gammas[i], gammas[i])
        if sq != linalg.mat_scale(frac(-1), ident):
            return False
        for j in range(i + 1, n):
            anti = linalg.mat_add(
                linalg.matmul(gammas[i], gammas[j]), linalg.matmul(gammas[j], gammas[i])
            )
            if any(any(x != 0 for x in row) for row in anti):
                return False
    return True


@dataclass(frozen=True)
class Eigenvalue:
    value: Fraction
    multiplicity: int
    error_bound: float = 0.0


class CliffordRep:
    """Exact Cl(7) representation with pinned spectral normalization."""

    def __init__(self):
        gammas = _build_gammas(OCTONION_TRIPLES)
        if not _clifford_relations_hold(gammas):
            flipped = {k: -v for k, v in OCTONION_TRIPLES.items()}
            gammas = _build_gammas(flipped)
            if not _clifford_relations_hold(gammas):
                raise RuntimeError("octonion triple table does not satisfy Clifford relations")
        # normalize the global sign so that the calibration 3-form operator
        # has spectrum {-7: 1, +1: 7} rather than {+7: 1, -1: 7}
        self.gammas = gammas
        omega = Form(7, {k: v for k, v in OCTONION_TRIPLES.items()})
        op = self.operator(omega)
        tr7 = self._count_eigenvalue(op, frac(-7))
        if tr7 == 0:
            self.gammas = [linalg.mat_scale(frac(-1), g) for g in gammas]
            op = self.operator(omega)
            tr7 = self._count_eigenvalue(op, frac(-7))
        if tr7 != 1:
            raise RuntimeError("could not normalize 3-form operator spectrum to {-7, +1^7}")

    @staticmethod
    def _count_eigenvalue(op, lam):
        return len(linalg.eigenspace(op, lam))

    # ---------------- operators ----------------

    def vector_matrix(self, i):
        """Gamma matrix of the i-th frame vector, i in 1..7."""
        return self.gammas[i - 1]

    def word(self, indices):
        """Clifford product gamma_{i1} ... gamma_{ik} as an 8x8 matrix."""
        m = linalg.identity(DIM_SPINOR)
        for i in indices:
            m = linalg.matmul(m, self.gammas[i - 1])
        return m

    def operator(self, form):
        """Matrix of a form acting on spinors by Clifford multiplication.

        Each basis monomial e_I acts as the ordered product of its gammas.
        """
        acc = linalg.zeros(DIM_SPINOR, DIM_SPINOR)
        for idx, c in form.coeffs.items():
            acc = linalg.mat_add(acc, linalg.mat_scale(c, self.word(idx)))
        return acc

    def act(self, form, spinor):
        return linalg.matvec(self.operator(form), spinor)

    def vector_act(self, coords, spinor):
        """Clifford action of a tangent vector given by 7 coordinates."""
        acc = [ZERO] * DIM_SPINOR
        for i, x in enumerate(coords, start=1):
            x = frac(x)
            if x:
                acc = [a + x * b for a, b in zip(acc, linalg.matvec(self.gammas[i - 1], spinor))]
        return acc

    # ---------------- spectra ----------------

    def spectrum(self, form):
        """Eigenvalues with multiplicity of the operator of a form.

        Exact when the characteristic polynomial splits over Q (always the
        case for the operators in this package); otherwise falls back to
        numerically symmetrized eigenvalues with an explicit error bound.
        """
        op = self.operator(form)
        roots, split = linalg.eigenvalues_exact(op)
        if split:
            return [Eigenvalue(lam, mult, 0.0) for lam, mult in roots]
        import numpy as np

        a = np.array([[float(x) for x in row] for row in op])
        sym_defect = float(np.abs(a - a.T).max())
        vals = np.linalg.eigvals(a)
        out = []
        used = [False] * len(vals)
        tol = 1e-9 + 10 * sym_defect
        for i, v in enumerate(vals):
            if used[i]:
                continue
            group = [v]
            used[i] = True
            for j in range(i + 1, len(vals)):
                if not used[j] and abs(vals[j] - v) < tol:
                    group.append(vals[j])
                    used[j] = True
            mean = sum(group) / len(group)
            out.append(Eigenvalue(Fraction(mean.real).limit_denominator(10**6), len(group), tol))
        return sorted(out, key=lambda e: e.value)

    def find_psi0(self):
        """The distinguished unit-direction spinor: kernel of (omega-op + 7 I).

        Returned with integer-primitive coordinates, first nonzero entry
        positive.  For the standard triple table this is the real octonion
        unit (1, 0, ..., 0).
        """
        omega = Form(7, {k: v for k, v in OCTONION_TRIPLES.items()})
        op = self.operator(omega)
        shifted = linalg.mat_add(op, linalg.mat_scale(frac(7), linalg.identity(DIM_SPINOR)))
        kern = linalg.nullspace(shifted)
        if len(kern) != 1:
            raise RuntimeError(f"expected 1-dimensional kernel, got {len(kern)}")
        v = kern[0]
        den = 1
        for x in v:
            den = den * x.denominator // _gcd(den, x.denominator)
        ints = [int(x * den) for x in v]
        g = 0
        for x in ints:
            g = _gcd(g, abs(x))
        ints = [x // g for x in ints]
        for x in ints:
            if x != 0:
                if x < 0:
                    ints = [-y for y in ints]
                break
        return [frac(x) for x in ints]


@lru_cache(maxsize=1)
def standard_rep():
    return CliffordRep()


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def spinor_norm2(s):
    return sum((x * x for x in s), ZERO)


def spinor_eq(a, b):
    return list(a) == list(b)


def spinor_scale(c, s):
    c = frac(c)
    return [c * x for x in s]


def spinor_sub(a, b):
    return [x - y for x, y in zip(a, b)]
