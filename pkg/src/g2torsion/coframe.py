"""Curvature of explicit orthonormal coframes by the method of moving frames.

A coframe field on a chart is a matrix-valued map A(p) with rows the
orthonormal covectors f^i = sum_j A_{ij}(p) dx^j; the metric is sum (f^i)^2.
Structure functions c^i_{jk} are read off from df^i = -1/2 c^i_{jk} f^j wedge
f^k (same sign convention as the invariant calculus in liegroup), the
Levi-Civita coefficients come from the orthonormal-frame Koszul formula, and
curvature follows from the frame version of R(X,Y) = [nabla_X, nabla_Y] -
nabla_[X,Y], with directional derivatives taken by central finite differences.

All heavy functions accept an optional frame-constant torsion (a dict of
3-form components in the orthonormal frame); when given, the connection is
the metric connection with that skew torsion, nabla = nabla^g + 1/2 T.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable

import numpy as np

from .forms import basis_indices

Array = np.ndarray


# ------------------------------------------------------------ permutations


def perm_sign(seq):
    """Sign of the permutation sorting seq (0 if repeated entries)."""
    seq = list(seq)
    if len(set(seq)) != len(seq):
        return 0
    sign = 1
    for i in range(len(seq)):
        for j in range(i + 1, len(seq)):
            if seq[i] > seq[j]:
                sign = -sign
    return sign


def sort_index(idx):
    """(sorted tuple, sign) for a 1-based index tuple."""
    s = perm_sign(idx)
    return tuple(sorted(idx)), s


# ------------------------------------------------------------ float forms

# A float k-form on an n-frame is a plain dict {increasing 1-based tuple:
# float}; missing keys are zero.  These helpers mirror the exact Form class
# for numeric work.


def form_add(a, b, scale=1.0):
    out = dict(a)
    for k, v in b.items():
        out[k] = out.get(k, 0.0) + scale * v
    return out


def form_wedge(a, b):
    out = {}
    for ia, va in a.items():
        for ib, vb in b.items():
            idx, s = sort_index(ia + ib)
            if s:
                out[idx] = out.get(idx, 0.0) + s * va * vb
    return out


def form_inner(a, b):
    keys = set(a) | set(b)
    return sum(a.get(k, 0.0) * b.get(k, 0.0) for k in keys)


def form_norm2(a):
    return form_inner(a, a)


def form_max(a):
    return max((abs(v) for v in a.values()), default=0.0)


def form_hook(a, slot):
    """Interior product with the orthonormal frame vector e_slot."""
    out = {}
    for idx, v in a.items():
        if slot in idx:
            pos = idx.index(slot)
            rest = idx[:pos] + idx[pos + 1:]
            out[rest] = out.get(rest, 0.0) + ((-1) ** pos) * v
    return out


def form_hodge(a, n):
    """Hodge star on an oriented orthonormal n-frame."""
    out = {}
    full = tuple(range(1, n + 1))
    for idx, v in a.items():
        comp = tuple(i for i in full if i not in idx)
        s = perm_sign(idx + comp)
        out[comp] = out.get(comp, 0.0) + s * v
    return out


def frame_to_coords(components, a_matrix):
    """Rewrite frame components in the coordinate basis: f^I = det A[I,J] dx^J."""
    n = a_matrix.shape[0]
    out = {}
    for idx, v in components.items():
        if abs(v) < 1e-300:
            continue
        rows = [i - 1 for i in idx]
        for cols in combinations(range(n), len(idx)):
            minor = np.linalg.det(a_matrix[np.ix_(rows, cols)]) if idx else 1.0
            if minor:
                key = tuple(c + 1 for c in cols)
                out[key] = out.get(key, 0.0) + v * minor
    return out


def coords_to_frame(components, a_matrix):
    """Inverse of frame_to_coords: dx^J = det A^{-1}[J,I] f^I."""
    return frame_to_coords(components, np.linalg.inv(a_matrix))


def numeric_d(form_fn: Callable[[Array], dict], n: int, k: int, p: Array,
              h: float = 1e-5):
    """Exterior derivative of a coordinate k-form field by central FD."""
    partials = []
    for beta in range(n):
        pp, pm = p.copy(), p.copy()
        pp[beta] += h
        pm[beta] -= h
        fp, fm = form_fn(pp), form_fn(pm)
        keys = set(fp) | set(fm)
        partials.append({key: (fp.get(key, 0.0) - fm.get(key, 0.0)) / (2 * h)
                         for key in keys})
    out = {}
    for beta in range(n):
        for idx, v in partials[beta].items():
            key, s = sort_index((beta + 1,) + idx)
            if s:
                out[key] = out.get(key, 0.0) + s * v
    return {key: v for key, v in out.items() if v != 0.0}


# ------------------------------------------------------------ coframes


@dataclass
class CoframeField:
    """Orthonormal coframe f^i = sum_j A_{ij}(p) dx^j on a box chart."""

    n: int
    domain: tuple
    matrix: Callable[[Array], Array]
    matrix_jac: Callable[[Array], Array] | None = None
    h: float = 1e-5
    name: str = ""

    def coeff(self, p: Array) -> Array:
        a = np.asarray(self.matrix(np.asarray(p, dtype=float)), dtype=float)
        if a.shape != (self.n, self.n):
            raise ValueError(f"coframe matrix must be {self.n}x{self.n}")
        return a

    def jacobian(self, p: Array) -> Array:
        """J[i, j, k] = dA_ij / dx_k, closed-form when supplied, else FD."""
        p = np.asarray(p, dtype=float)
        if self.matrix_jac is not None:
            return np.asarray(self.matrix_jac(p), dtype=float)
        return self.fd_jacobian(p, self.h)

    def fd_jacobian(self, p: Array, h: float) -> Array:
        p = np.asarray(p, dtype=float)
        out = np.zeros((self.n, self.n, self.n))
        for k in range(self.n):
            pp, pm = p.copy(), p.copy()
            pp[k] += h
            pm[k] -= h
            out[:, :, k] = (self.coeff(pp) - self.coeff(pm)) / (2 * h)
        return out

    def dual(self, p: Array) -> Array:
        """E with e_j = sum_beta E[beta, j] d/dx_beta (columns are frame vectors)."""
        return np.linalg.inv(self.coeff(p))

    def is_interior(self, p, margin=0.0) -> bool:
        return all(lo + margin <= x <= hi - margin
                   for x, (lo, hi) in zip(p, self.domain))

    def sample_points(self, rng, count, margin_frac=0.1):
        pts = []
        for _ in range(count):
            pts.append(np.array([
                lo + (margin_frac + (1 - 2 * margin_frac) * rng.random()) * (hi - lo)
                for lo, hi in self.domain]))
        return pts


def structure_functions(cf: CoframeField, p: Array) -> Array:
    """c[i, j, k] = c^i_{jk} with df^i = -1/2 c^i_{jk} f^j wedge f^k."""
    p = np.asarray(p, dtype=float)
    a = cf.coeff(p)
    if abs(np.linalg.det(a)) < 1e-12:
        raise ValueError("coframe matrix is singular at the sample point")
    e = np.linalg.inv(a)               # e[beta, j]: frame vectors in coords
    jac = cf.jacobian(p)               # jac[i, alpha, beta] = dA_{i alpha}/dx_beta
    # m[i, j, k] = (e_j A_{i alpha}) e[alpha, k]
    m = np.einsum("iab,bj,ak->ijk", jac, e, e)
    return m.transpose(0, 2, 1) - m


def levi_civita_cartan(c: Array) -> Array:
    """gamma[i, j, k] = <nabla_{e_i} e_j, e_k> from the Koszul formula.

    With lowered structure functions cl_{ijk} = c^k_{ij}:
    gamma_{ijk} = (cl_{ijk} - cl_{jki} + cl_{kij}) / 2; skew in (j, k).
    """
    cl = np.transpose(c, (1, 2, 0))
    gamma = 0.5 * (cl - np.transpose(cl, (2, 0, 1)) + np.transpose(cl, (1, 2, 0)))
    return gamma


def connection_coefficients(cf: CoframeField, p: Array,
                            torsion: dict | None = None) -> Array:
    """gamma of the metric connection with optional frame-constant skew torsion."""
    gamma = levi_civita_cartan(structure_functions(cf, p))
    if torsion:
        n = cf.n
        t = np.zeros((n, n, n))
        for idx, v in torsion.items():
            for perm_idx, base in _permutations_with_sign(idx):
                t[perm_idx] = base * v
        gamma = gamma + 0.5 * t
    return gamma


def _permutations_with_sign(idx):
    from itertools import permutations

    for perm in permutations(range(len(idx))):
        sign = perm_sign(perm)
        yield tuple(idx[q] - 1 for q in perm), sign


@dataclass
class CurvatureReport:
    riemann: Array            # R[i, j, l, k] = <R(e_i, e_j) e_k, e_l>
    ric: Array                # Ric[j, k]
    eigenvalues: Array
    symmetry_error: float
    scal: float

    @property
    def max_riemann(self):
        return float(np.max(np.abs(self.riemann)))

    @property
    def max_ric(self):
        return float(np.max(np.abs(self.ric)))


def riemann_ricci(cf: CoframeField, p: Array, torsion: dict | None = None,
                  h: float | None = None, symmetry_tol: float = 1e-6) -> CurvatureReport:
    """Curvature, Ricci tensor and Ricci eigenvalues at an interior point.

    R(e_i, e_j) = e_i(M_j) - e_j(M_i) + [M_i, M_j] - c^m_{ij} M_m with
    (M_i)_{lk} = gamma_{ikl}; Ric_{jk} = sum_i R[i, j, i, k].
    """
    p = np.asarray(p, dtype=float)
    h = h if h is not None else cf.h
    n = cf.n
    c = structure_functions(cf, p)

    def m_matrices(q):
        g = connection_coefficients(cf, q, torsion)
        return g.transpose(0, 2, 1)    # M[i][l][k] = gamma_{ikl}

    m0 = m_matrices(p)
    # coordinate partials of the M field, then convert to frame directions
    partials = np.zeros((n, n, n, n))  # partials[beta] = dM/dx_beta
    for beta in range(n):
        pp, pm = p.copy(), p.copy()
        pp[beta] += h
        pm[beta] -= h
        partials[beta] = (m_matrices(pp) - m_matrices(pm)) / (2 * h)
    e = cf.dual(p)
    # dm[i, j] = directional derivative of M_j along the frame vector e_i
    dm = np.einsum("bjlk,bi->ijlk", partials, e)
    riemann = np.zeros((n, n, n, n))
    for i in range(n):
        for j in range(n):
            rij = dm[i, j] - dm[j, i] + m0[i] @ m0[j] - m0[j] @ m0[i]
            for mm in range(n):
                if c[mm, i, j]:
                    rij = rij - c[mm, i, j] * m0[mm]
            riemann[i, j] = rij
    ric = np.einsum("ijik->jk", riemann)
    sym_err = float(np.max(np.abs(ric - ric.T)))
    if sym_err > symmetry_tol and torsion is None:
        raise ValueError(
            f"Ricci asymmetry {sym_err:.3e} exceeds {symmetry_tol:.1e}; "
            "step too large or point too close to the domain edge")
    eig = np.linalg.eigvalsh(0.5 * (ric + ric.T))
    return CurvatureReport(riemann, ric, eig, sym_err, float(np.trace(ric)))


def torsion_ricci(torsion: dict, n: int) -> Array:
    """(1/4) sum_{i,j} T(x, e_i, e_j) T(y, e_i, e_j) for frame-constant T."""
    t = np.zeros((n, n, n))
    for idx, v in torsion.items():
        for perm_idx, s in _permutations_with_sign(idx):
            t[perm_idx] = s * v
    return 0.25 * np.einsum("xij,yij->xy", t, t)


# ------------------------------------------------------------ examples


def flat_coframe(n: int, box=None) -> CoframeField:
    box = box or tuple((0.0, 1.0) for _ in range(n))

    def matrix(p):
        return np.eye(n)

    def jac(p):
        return np.zeros((n, n, n))

    return CoframeField(n, box, matrix, jac, name="flat")


def sphere_coframe(radius: float = 1.0) -> CoframeField:
    """Round 2-sphere chart: f^1 = r dtheta, f^2 = r sin(theta) dphi."""

    def matrix(p):
        theta = p[0]
        return np.array([[radius, 0.0], [0.0, radius * math.sin(theta)]])

    def jac(p):
        theta = p[0]
        out = np.zeros((2, 2, 2))
        out[1, 1, 0] = radius * math.cos(theta)
        return out

    return CoframeField(2, ((0.4, math.pi - 0.4), (0.0, 2 * math.pi)),
                        matrix, jac, name="sphere")


def fd_convergence_order(cf: CoframeField, p: Array, h: float = 1e-3) -> float:
    """Observed FD order against the closed-form jacobian (needs matrix_jac)."""
    if cf.matrix_jac is None:
        raise ValueError("closed-form jacobian required for the order test")
    exact = cf.jacobian(p)
    e1 = np.max(np.abs(cf.fd_jacobian(p, h) - exact))
    e2 = np.max(np.abs(cf.fd_jacobian(p, h / 2) - exact))
    if e2 == 0:
        return float("inf")
    return math.log(e1 / e2, 2)
