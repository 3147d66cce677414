"""Exact invariant geometry on metric Lie algebras (dimension <= 8).

A left-invariant metric on a Lie group is encoded by structure constants
c^k_{ij} with respect to a frame declared orthonormal.  Everything downstream
— the invariant exterior derivative, codifferential, Levi-Civita connection,
metric connections with prescribed skew torsion, curvature, Ricci tensors,
infinitesimal holonomy, parallel fields and spinors — is then a finite exact
computation over Q.

Conventions:

* d theta^k = -1/2 sum c^k_{ij} theta^i ^ theta^j, extended as an
  antiderivation (so d theta(X, Y) = -theta([X, Y]));
* Gamma_{ijk} = <nabla_{e_i} e_j, e_k>; connection matrices
  (M_i)_{lk} = Gamma_{ikl} act on coordinate columns;
* torsion T(X,Y,Z) = <nabla_X Y - nabla_Y X - [X,Y], Z>; prescribing a
  3-form T means nabla = nabla^g + 1/2 T(X, Y, -);
* curvature R(X,Y) = [nabla_X, nabla_Y] - nabla_{[X,Y]},
  Ric(Y,Z) = sum_i <R(e_i, Y) Z, e_i>.
"""

from __future__ import annotations

import re
import warnings
from dataclasses import dataclass, field
from fractions import Fraction

from . import linalg
from .forms import Form, basis_indices
from .linalg import frac
from .spin import DIM_SPINOR, standard_rep

ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


class LieAlgebraData:
    """Structure constants of a metric Lie algebra in an orthonormal frame."""

    def __init__(self, n, structure, check_jacobi=True):
        """structure: dict {(i, j): {k: c^k_{ij}}} for i < j, 1-based."""
        if not 0 < n <= 8:
            raise ValueError("dimension out of supported range 1..8")
        self.n = n
        clean = {}
        for (i, j), comp in structure.items():
            if not (1 <= i <= n and 1 <= j <= n):
                raise ValueError(f"bracket index ({i},{j}) out of range")
            if i == j:
                if any(frac(v) != 0 for v in comp.values()):
                    raise ValueError("c^k_{ii} must vanish")
                continue
            if i > j:
                i, j = j, i
                comp = {k: -frac(v) for k, v in comp.items()}
            tgt = clean.setdefault((i, j), {})
            for k, v in comp.items():
                v = frac(v)
                if v == 0:
                    continue
                if not 1 <= k <= n:
                    raise ValueError(f"bracket target {k} out of range")
                tgt[k] = tgt.get(k, ZERO) + v
                if tgt[k] == 0:
                    del tgt[k]
        self.structure = {ij: comp for ij, comp in clean.items() if comp}
        if check_jacobi and not self.jacobi_holds():
            raise ValueError("structure constants violate the Jacobi identity")

    # ---------------- brackets ----------------

    def c(self, i, j, k):
        """c^k_{ij}; antisymmetric in (i, j)."""
        if i == j:
            return ZERO
        if i < j:
            return self.structure.get((i, j), {}).get(k, ZERO)
        return -self.structure.get((j, i), {}).get(k, ZERO)

    def bracket(self, x, y):
        """Bracket of two coordinate vectors."""
        out = [ZERO] * self.n
        for i in range(1, self.n + 1):
            for j in range(1, self.n + 1):
                f = x[i - 1] * y[j - 1]
                if f == 0:
                    continue
                for k in range(1, self.n + 1):
                    ck = self.c(i, j, k)
                    if ck:
                        out[k - 1] += f * ck
        return out

    def ad_matrix(self, i):
        """Matrix of ad_{e_i} acting on coordinates."""
        m = linalg.zeros(self.n, self.n)
        for j in range(1, self.n + 1):
            for k in range(1, self.n + 1):
                m[k - 1][j - 1] = self.c(i, j, k)
        return m

    def jacobi_holds(self):
        n = self.n
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                for k in range(j + 1, n + 1):
                    for l in range(1, n + 1):
                        s = sum(
                            (
                                self.c(i, j, m) * self.c(m, k, l)
                                + self.c(j, k, m) * self.c(m, i, l)
                                + self.c(k, i, m) * self.c(m, j, l)
                                for m in range(1, n + 1)
                            ),
                            ZERO,
                        )
                        if s != 0:
                            return False
        return True

    def is_unimodular(self):
        return all(
            sum((self.c(i, j, i) for i in range(1, self.n + 1)), ZERO) == 0
            for j in range(1, self.n + 1)
        )

    # ---------------- invariant calculus ----------------

    def ce_d(self, form):
        """Invariant exterior derivative (Chevalley-Eilenberg differential)."""
        if form.n != self.n:
            raise ValueError("form frame dimension does not match the algebra")
        d_basis = self._d_basis()
        out = Form.zero(self.n)
        for idx, coeff in form.coeffs.items():
            for t, i in enumerate(idx):
                sign = -1 if t % 2 else 1
                prefix = Form(self.n, {idx[:t]: sign * coeff})
                suffix = Form(self.n, {idx[t + 1 :]: ONE})
                out = out + prefix.wedge(d_basis[i - 1]).wedge(suffix)
        return out

    def _d_basis(self):
        if not hasattr(self, "_d_basis_cache"):
            basis = []
            for k in range(1, self.n + 1):
                acc = {}
                for i in range(1, self.n + 1):
                    for j in range(i + 1, self.n + 1):
                        ck = self.c(i, j, k)
                        if ck:
                            acc[(i, j)] = acc.get((i, j), ZERO) - ck
                basis.append(Form(self.n, acc))
            self._d_basis_cache = basis
        return self._d_basis_cache

    def codiff(self, form):
        """Codifferential delta = (-1)^{n(k+1)+1} * d *  (adjoint of ce_d).

        The adjointness <d a, b> = <a, delta b> holds pointwise for invariant
        forms exactly when the algebra is unimodular; a warning is emitted
        otherwise.
        """
        if not self.is_unimodular():
            warnings.warn("codifferential is not the L2-adjoint: algebra is not unimodular")
        degs = form.degrees()
        if not degs:
            return Form.zero(self.n)
        out = Form.zero(self.n)
        n = self.n
        for k in degs:
            part = form.homogeneous_part(k)
            sign = -1 if (n * (k + 1) + 1) % 2 else 1
            out = out + self.ce_d(part.hodge()).hodge().scale(sign)
        return out

    def cartan_three_form(self):
        """The 3-form <[X, Y], Z> of the algebra.

        Only defined when the tensor is totally skew, i.e. the metric is
        ad-invariant (bi-invariant on the group).
        """
        n = self.n
        form = Form(
            n,
            {
                (i, j, k): self.c(i, j, k)
                for i in range(1, n + 1)
                for j in range(i + 1, n + 1)
                for k in range(j + 1, n + 1)
            },
        )
        unit = [[ONE if a == b else ZERO for a in range(n)] for b in range(n)]
        for i in range(1, n + 1):
            for j in range(1, n + 1):
                for k in range(1, n + 1):
                    if form.evaluate(unit[i - 1], unit[j - 1], unit[k - 1]) != self.c(i, j, k):
                        raise ValueError("metric is not ad-invariant: <[X,Y],Z> is not a 3-form")
        return form

    def lie_derivative(self, x, form):
        """Lie derivative along the invariant field with coordinates x.

        Cartan formula: L_X = d (X hook .) + X hook d.
        """
        if isinstance(x, int):
            coords = [ONE if i == x else ZERO for i in range(1, self.n + 1)]
        else:
            coords = [frac(v) for v in x]
        return self.ce_d(form.hook(coords)) + self.ce_d(form).hook(coords)


@dataclass(frozen=True)
class InvariantConnection:
    """Metric connection on a metric Lie algebra, by coefficients Gamma_{ijk}."""

    algebra: LieAlgebraData
    gamma: tuple          # gamma[i][j][k] = Gamma_{ijk} = <nabla_{e_i} e_j, e_k>, 0-based
    torsion: Form

    @property
    def n(self):
        return self.algebra.n

    def matrix(self, i):
        """(M_i)_{lk} = Gamma_{ikl}: the matrix of nabla_{e_i} on coordinates."""
        g = self.gamma[i - 1]
        n = self.n
        return [[g[k][l] for k in range(n)] for l in range(n)]

    def is_metric(self):
        n = self.n
        return all(
            self.gamma[i][j][k] == -self.gamma[i][k][j]
            for i in range(n)
            for j in range(n)
            for k in range(n)
        )

    def torsion_tensor(self):
        """Recompute the torsion 3-tensor from Gamma; returns a Form if skew."""
        n = self.n
        alg = self.algebra
        t = [
            [
                [
                    self.gamma[i][j][k] - self.gamma[j][i][k] - alg.c(i + 1, j + 1, k + 1)
                    for k in range(n)
                ]
                for j in range(n)
            ]
            for i in range(n)
        ]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    if t[i][j][k] != -t[i][k][j]:
                        raise ValueError("torsion tensor is not totally skew")
        return Form(
            n,
            {
                (i + 1, j + 1, k + 1): t[i][j][k]
                for i in range(n)
                for j in range(i + 1, n)
                for k in range(j + 1, n)
            },
        )

    # ---------------- derivatives of tensors ----------------

    def nabla_form(self, i, form):
        """Covariant derivative of an invariant form along e_i."""
        return endo_derivation(self.matrix(i), form).scale(-1)

    def nabla_spinor(self, i, psi):
        """Covariant derivative of a constant spinor along e_i (dimension 7)."""
        if self.n != 7:
            raise ValueError("spinor derivatives require dimension 7")
        rep = standard_rep()
        acc = [ZERO] * DIM_SPINOR
        g = self.gamma[i - 1]
        for k in range(1, 8):
            for l in range(k + 1, 8):
                coeff = g[k - 1][l - 1]
                if coeff:
                    w = linalg.matvec(rep.word((k, l)), psi)
                    acc = [a + HALF * coeff * b for a, b in zip(acc, w)]
        return acc

    def parallel_spinors(self):
        """Basis of constant spinors with nabla psi = 0 (dimension 7)."""
        rep = standard_rep()
        rows = []
        for i in range(1, 8):
            m = linalg.zeros(DIM_SPINOR, DIM_SPINOR)
            g = self.gamma[i - 1]
            for k in range(1, 8):
                for l in range(k + 1, 8):
                    coeff = g[k - 1][l - 1]
                    if coeff:
                        m = linalg.mat_add(m, linalg.mat_scale(HALF * coeff, rep.word((k, l))))
            rows.extend(m)
        return linalg.nullspace(rows)

    # ---------------- curvature ----------------

    def curvature_endomorphism(self, i, j):
        mi, mj = self.matrix(i), self.matrix(j)
        r = linalg.mat_sub(linalg.matmul(mi, mj), linalg.matmul(mj, mi))
        for m in range(1, self.n + 1):
            cm = self.algebra.c(i, j, m)
            if cm:
                r = linalg.mat_sub(r, linalg.mat_scale(cm, self.matrix(m)))
        return r


@dataclass(frozen=True)
class CurvatureData:
    connection: InvariantConnection
    riemann: tuple        # riemann[i][j] = matrix of R(e_{i+1}, e_{j+1})
    ric_nabla: tuple      # Ric(Y,Z) = sum_i <R(e_i,Y)Z, e_i>
    ric_g: tuple          # same for the Levi-Civita connection
    scal_g: Fraction

    def is_nabla_flat(self):
        return all(
            all(all(x == 0 for x in row) for row in self.riemann[i][j])
            for i in range(len(self.riemann))
            for j in range(len(self.riemann))
        )

    def max_ric_nabla(self):
        return max((abs(x) for row in self.ric_nabla for x in row), default=ZERO)


def levi_civita(algebra):
    """Koszul formula for the orthonormal-frame Levi-Civita connection."""
    n = algebra.n
    gamma = [
        [
            [
                HALF
                * (
                    algebra.c(i, j, k)
                    - algebra.c(j, k, i)
                    + algebra.c(k, i, j)
                )
                for k in range(1, n + 1)
            ]
            for j in range(1, n + 1)
        ]
        for i in range(1, n + 1)
    ]
    conn = InvariantConnection(algebra, _freeze(gamma), Form.zero(n))
    return conn


def with_torsion(algebra, torsion):
    """The metric connection nabla = nabla^g + 1/2 T(X, Y, -)."""
    if torsion.degrees() not in ([], [3]):
        raise ValueError("torsion must be a 3-form")
    if torsion.n != algebra.n:
        raise ValueError("torsion frame dimension does not match the algebra")
    base = levi_civita(algebra)
    n = algebra.n
    ei = [[ONE if a == b else ZERO for a in range(n)] for b in range(n)]
    gamma = [
        [
            [
                base.gamma[i][j][k] + HALF * torsion.evaluate(ei[i], ei[j], ei[k])
                for k in range(n)
            ]
            for j in range(n)
        ]
        for i in range(n)
    ]
    return InvariantConnection(algebra, _freeze(gamma), torsion)


def _freeze(gamma):
    return tuple(tuple(tuple(row) for row in plane) for plane in gamma)


def curvature(conn):
    n = conn.n
    riemann = [[conn.curvature_endomorphism(i + 1, j + 1) for j in range(n)] for i in range(n)]
    ric = [
        [
            sum((riemann[i][j][i][k] for i in range(n)), ZERO)
            for k in range(n)
        ]
        for j in range(n)
    ]
    lc = levi_civita(conn.algebra)
    riemann_g = [[lc.curvature_endomorphism(i + 1, j + 1) for j in range(n)] for i in range(n)]
    ric_g = [
        [
            sum((riemann_g[i][j][i][k] for i in range(n)), ZERO)
            for k in range(n)
        ]
        for j in range(n)
    ]
    scal = sum((ric_g[i][i] for i in range(n)), ZERO)
    return CurvatureData(
        connection=conn,
        riemann=tuple(tuple(tuple(tuple(r) for r in m) for m in row) for row in riemann),
        ric_nabla=tuple(tuple(r) for r in ric),
        ric_g=tuple(tuple(r) for r in ric_g),
        scal_g=scal,
    )


def ric_from_torsion(torsion):
    """The quadratic Ricci candidate (1/4) sum_{ij} T(X,e_i,e_j) T(Y,e_i,e_j)."""
    if torsion.degrees() not in ([], [3]):
        raise ValueError("expected a 3-form")
    n = torsion.n
    # (e_i hook e_x hook T) has components T(x, i, j) over j; summing the
    # inner products over i covers each ordered pair (i, j) once, and the
    # double sum over ordered pairs is twice the sum over i < j.
    hooks = [[torsion.hook_basis(x).hook_basis(i) for i in range(1, n + 1)] for x in range(1, n + 1)]
    out = linalg.zeros(n, n)
    for x in range(n):
        for y in range(n):
            s = sum((hooks[x][i].inner(hooks[y][i]) for i in range(n)), ZERO)
            out[x][y] = Fraction(1, 4) * s
    return out


def holonomy_algebra(conn):
    """Infinitesimal holonomy: span of curvature endomorphisms, closed under
    bracketing with the nabla matrices and under internal brackets."""
    n = conn.n
    mats = [conn.matrix(i) for i in range(1, n + 1)]

    def vec(m):
        return [x for row in m for x in row]

    basis = []          # list of matrices
    rows = []           # their flattenings, for rank tests

    def add(m):
        v = vec(m)
        if all(x == 0 for x in v):
            return False
        if rows and linalg.in_span(v, rows):
            return False
        basis.append(m)
        rows.append(v)
        return True

    for i in range(n):
        for j in range(i + 1, n):
            add(conn.curvature_endomorphism(i + 1, j + 1))
    changed = True
    while changed:
        changed = False
        current = list(basis)
        for b in current:
            for m in mats:
                if add(linalg.mat_sub(linalg.matmul(m, b), linalg.matmul(b, m))):
                    changed = True
        current = list(basis)
        for x in range(len(current)):
            for y in range(x + 1, len(current)):
                br = linalg.mat_sub(
                    linalg.matmul(current[x], current[y]),
                    linalg.matmul(current[y], current[x]),
                )
                if add(br):
                    changed = True
    return basis


def parallel_fields(conn):
    """Basis of invariant fields theta with nabla theta = 0.

    Each returned field is checked against the identity d theta = theta hook T.
    """
    n = conn.n
    stacked = []
    for i in range(1, n + 1):
        stacked.extend(conn.matrix(i))
    kernel = linalg.nullspace(stacked)
    for v in kernel:
        theta = Form(n, {(i,): v[i - 1] for i in range(1, n + 1)})
        lhs = conn.algebra.ce_d(theta)
        rhs = conn.torsion.hook(v)
        if lhs != rhs:
            raise AssertionError(
                "parallel field violates d theta = theta hook T — connection data inconsistent"
            )
    return kernel


def endo_derivation(m, form):
    """Extension of an endomorphism to a derivation of the exterior algebra.

    For a k-form a:  (L_M a)(Y_1, .., Y_k) = sum_s a(Y_1, .., M Y_s, .., Y_k).
    """
    n = form.n
    out = Form.zero(n)
    for l in range(1, n + 1):
        hooked = form.hook_basis(l)
        if hooked.is_zero():
            continue
        cov = Form(n, {(j,): m[l - 1][j - 1] for j in range(1, n + 1)})
        out = out + cov.wedge(hooked)
    return out


def integrability_residual(conn, psi):
    """The three parallel-spinor integrability residuals for a torsion connection.

    Returns (per_direction, r_sigma, r_square) where per_direction[i] is the
    spinor ((e_i hook dT) + 2 nabla_{e_i} T) . psi, r_sigma = (3 dT - 2 sigma_T) . psi
    and r_square = T^2 psi - |T|^2 psi.
    """
    if conn.n != 7:
        raise ValueError("integrability residuals require dimension 7")
    rep = standard_rep()
    t = conn.torsion
    dt = conn.algebra.ce_d(t)
    per_direction = []
    for i in range(1, 8):
        four_form = dt.hook_basis(i) + conn.nabla_form(i, t).scale(2)
        per_direction.append(rep.act(four_form, psi))
    r_sigma = rep.act(dt.scale(3) - t.sigma().scale(2), psi)
    op = rep.operator(t)
    tt = linalg.matvec(op, linalg.matvec(op, psi))
    r_square = [a - t.norm2() * b for a, b in zip(tt, psi)]
    return per_direction, r_sigma, r_square


# ---------------- constructors ----------------


def abelian(n):
    return LieAlgebraData(n, {})


def su2(lam, n=3, slots=(1, 2, 3)):
    """su(2) scaled by lam on the given slots of an n-dimensional frame:
    [e_a, e_b] = lam e_c cyclically for (a, b, c) = slots."""
    lam = frac(lam)
    a, b, c = slots
    structure = {
        (a, b): {c: lam},
        (b, c): {a: lam},
        (c, a): {b: lam},
    }
    return LieAlgebraData(n, _orient(structure))


def _orient(structure):
    out = {}
    for (i, j), comp in structure.items():
        if i < j:
            out[(i, j)] = dict(comp)
        else:
            out[(j, i)] = {k: -v for k, v in comp.items()}
    return out


def r4_su2(lam, slots=(1, 2, 7)):
    """R^4 + su(2)_lam inside R^7, with the su(2) frame on the given slots."""
    return su2(lam, n=7, slots=slots)


def relabel(algebra, perm):
    """Push the algebra through the frame permutation e_i -> e_{perm[i-1]}."""
    n = algebra.n
    if sorted(perm) != list(range(1, n + 1)):
        raise ValueError("perm must be a permutation of 1..n")
    structure = {}
    for (i, j), comp in algebra.structure.items():
        structure[(perm[i - 1], perm[j - 1])] = {perm[k - 1]: v for k, v in comp.items()}
    return LieAlgebraData(n, _orient(structure))


# ---------------- serialization ----------------


def parse_algebra(text, n=None):
    """Parse 'i j k value' lines (c^k_{ij}); '#' starts a comment.

    A '# dimension N' comment fixes the frame dimension; otherwise it is
    inferred as the largest index seen (an explicit n argument wins).
    """
    entries = {}
    max_idx = 0
    header_n = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        comment = raw.split("#", 1)
        if len(comment) == 2:
            m = re.match(r"\s*dimension\s+(\d+)\s*$", comment[1])
            if m:
                header_n = int(m.group(1))
        line = comment[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 4:
            raise ValueError(f"line {lineno}: expected 'i j k value', got {raw!r}")
        try:
            i, j, k = (int(p) for p in parts[:3])
            v = frac(parts[3])
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"line {lineno}: {exc}") from exc
        if i == j:
            raise ValueError(f"line {lineno}: c^k_(ii) must vanish")
        max_idx = max(max_idx, i, j, k)
        key = (i, j) if i < j else (j, i)
        sign = 1 if i < j else -1
        tgt = entries.setdefault(key, {})
        prev = tgt.get(k)
        val = sign * v
        if prev is not None and prev != val:
            raise ValueError(f"line {lineno}: inconsistent duplicate for c^{k}_({i}{j})")
        tgt[k] = val
    if n is None:
        n = header_n if header_n is not None else max_idx
    return LieAlgebraData(n, entries)


def format_algebra(algebra):
    lines = [f"# dimension {algebra.n}"]
    for (i, j) in sorted(algebra.structure):
        for k in sorted(algebra.structure[(i, j)]):
            v = algebra.structure[(i, j)][k]
            coeff = str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"
            lines.append(f"{i} {j} {k} {coeff}")
    return "\n".join(lines) + "\n"
