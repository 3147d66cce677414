"""Invariant calculus on metric Lie algebras.

Oracles: the defining identity d(theta^k)(e_i, e_j) = -c^k_{ij} for the
invariant differential, d^2 = 0 on algebras satisfying Jacobi, adjointness
of the codifferential on unimodular algebras, and the classical flat
connections with skew torsion +/- the Cartan 3-form.
"""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from g2torsion import liegroup as lg
from g2torsion.forms import Form, format_form
from g2torsion.g2 import char_torsion, standard_omega3, standard_omega4

from .util import forms

SU2_SLOTTED = lg.su2(2, n=7, slots=(1, 2, 3))
BUNDLED = lg.su2(Fraction(-7), n=7, slots=(1, 2, 7))

ALGEBRAS = st.sampled_from(
    [
        lg.abelian(7),
        lg.r4_su2(1),
        lg.r4_su2(Fraction(-7)),
        SU2_SLOTTED,
        lg.relabel(SU2_SLOTTED, [5, 6, 7, 4, 3, 1, 2]),
    ]
)


def test_differential_matches_structure_constants():
    """d(theta^k)(e_i, e_j) = -c^k_{ij}: checked on every basis 1-form."""
    for alg in (lg.r4_su2(3), SU2_SLOTTED, BUNDLED):
        n = alg.n
        unit = [[Fraction(a == b) for a in range(n)] for b in range(n)]
        for k in range(1, n + 1):
            dk = alg.ce_d(Form.basis(n, k))
            for i in range(1, n + 1):
                for j in range(1, n + 1):
                    want = -alg.c(i, j, k)
                    assert dk.evaluate(unit[i - 1], unit[j - 1]) == want


@given(ALGEBRAS, st.integers(1, 3).flatmap(lambda k: forms(7, k)))
def test_differential_squares_to_zero(alg, form):
    assert alg.ce_d(alg.ce_d(form)).is_zero()


@given(st.integers(1, 3).flatmap(lambda k: st.tuples(forms(7, k), forms(7, k + 1))))
def test_codifferential_is_adjoint_on_unimodular(pair):
    alpha, beta = pair
    alg = lg.r4_su2(Fraction(5, 3))
    assert alg.is_unimodular()
    assert alg.ce_d(alpha).inner(beta) == alpha.inner(alg.codiff(beta))


def test_codifferential_warns_on_non_unimodular():
    solvable = lg.LieAlgebraData(2, {(1, 2): {2: 1}})
    assert not solvable.is_unimodular()
    with pytest.warns(UserWarning):
        solvable.codiff(Form.basis(2, 1, 2))


def test_jacobi_violation_is_rejected():
    bad = {(1, 2): {3: 1}, (1, 3): {1: 1}}
    with pytest.raises(ValueError, match="Jacobi"):
        lg.LieAlgebraData(3, bad)
    lg.LieAlgebraData(3, bad, check_jacobi=False)  # explicit opt-out works


def test_cartan_three_form_of_su2():
    assert SU2_SLOTTED.cartan_three_form() == Form(7, {(1, 2, 3): Fraction(2)})


def test_cartan_three_form_rejects_non_ad_invariant():
    heisenberg = lg.LieAlgebraData(3, {(1, 2): {3: 1}})
    with pytest.raises(ValueError, match="ad-invariant"):
        heisenberg.cartan_three_form()


def test_levi_civita_is_metric_and_torsion_free():
    for alg in (SU2_SLOTTED, BUNDLED, lg.abelian(5)):
        conn = lg.levi_civita(alg)
        assert conn.is_metric()
        assert conn.torsion_tensor().is_zero()


@given(forms(7, 3))
def test_with_torsion_realizes_its_torsion(t):
    conn = lg.with_torsion(lg.r4_su2(1), t)
    assert conn.is_metric()
    assert conn.torsion_tensor() == t


def test_flat_connections_with_cartan_torsion():
    """Torsion -C makes the invariant frame parallel (flat, n fields);

    torsion +C is also flat but only the 4 central fields are parallel."""
    c3 = SU2_SLOTTED.cartan_three_form()
    minus = lg.with_torsion(SU2_SLOTTED, c3.scale(-1))
    plus = lg.with_torsion(SU2_SLOTTED, c3)
    assert lg.curvature(minus).is_nabla_flat()
    assert lg.curvature(plus).is_nabla_flat()
    assert len(lg.parallel_fields(minus)) == 7
    assert len(lg.parallel_fields(plus)) == 4
    assert len(lg.holonomy_algebra(minus)) == 0
    assert len(lg.holonomy_algebra(plus)) == 0


def test_levi_civita_holonomy_dimension():
    assert len(lg.holonomy_algebra(lg.levi_civita(SU2_SLOTTED))) == 3
    assert len(lg.holonomy_algebra(lg.levi_civita(lg.abelian(7)))) == 0


def test_misplaced_su2_is_not_cocalibrated():
    """su(2) on a non-calibrated triple: d(*omega3) has a pinned witness."""
    mis = lg.su2(Fraction(7), n=7, slots=(1, 2, 3))
    residual = mis.ce_d(standard_omega4())
    assert format_form(residual) == "-7*e12456 -7*e13467 -7*e23457"


def test_bundled_example_full_chain():
    """su(2)_{-7} on the calibrated triple (1,2,7): cocalibrated, flat

    characteristic connection, 7 parallel fields, 8 parallel spinors."""
    dw4 = BUNDLED.ce_d(standard_omega4())
    assert dw4.is_zero()
    dec = char_torsion(BUNDLED.ce_d(standard_omega3()), dw4)
    assert dec.mu == 7
    assert dec.torsion == Form(7, {(1, 2, 7): Fraction(7)})
    conn = lg.with_torsion(BUNDLED, dec.torsion)
    cur = lg.curvature(conn)
    assert cur.is_nabla_flat()
    assert cur.max_ric_nabla() == 0
    assert len(lg.parallel_fields(conn)) == 7
    assert len(conn.parallel_spinors()) == 8
    assert cur.scal_g == Fraction(147, 2)


def test_riemannian_ricci_matches_quadratic_torsion_formula():
    """With flat characteristic connection, Ric^g = (1/4) sum T T."""
    dec = char_torsion(BUNDLED.ce_d(standard_omega3()))
    conn = lg.with_torsion(BUNDLED, dec.torsion)
    cur = lg.curvature(conn)
    quad = lg.ric_from_torsion(dec.torsion)
    assert [list(r) for r in cur.ric_g] == quad
    diag = [quad[i][i] for i in range(7)]
    assert diag == [Fraction(49, 2), Fraction(49, 2), 0, 0, 0, 0, Fraction(49, 2)]


def test_parallel_spinors_satisfy_integrability():
    dec = char_torsion(BUNDLED.ce_d(standard_omega3()))
    conn = lg.with_torsion(BUNDLED, dec.torsion)
    zero8 = [Fraction(0)] * 8
    for psi in conn.parallel_spinors():
        per_direction, r_sigma, r_square = lg.integrability_residual(conn, psi)
        assert all(r == zero8 for r in per_direction)
        assert r_sigma == zero8
        assert r_square == zero8


def test_parallel_fields_preserve_torsion():
    """L_theta T = 0 for every parallel field of the bundled example."""
    dec = char_torsion(BUNDLED.ce_d(standard_omega3()))
    conn = lg.with_torsion(BUNDLED, dec.torsion)
    for v in lg.parallel_fields(conn):
        assert BUNDLED.lie_derivative(v, dec.torsion).is_zero()


def test_cartan_form_is_ad_invariant():
    c3 = SU2_SLOTTED.cartan_three_form()
    for i in range(1, 8):
        assert SU2_SLOTTED.lie_derivative(i, c3).is_zero()


def test_relabel_moves_su2_between_slots():
    perm = [1, 2, 7, 4, 5, 6, 3]  # swap frame legs 3 and 7
    moved = lg.relabel(lg.su2(Fraction(-7), n=7, slots=(1, 2, 3)), perm)
    assert moved.structure == BUNDLED.structure


def test_serialization_roundtrip():
    for alg in (SU2_SLOTTED, BUNDLED, lg.abelian(3)):
        again = lg.parse_algebra(lg.format_algebra(alg))
        assert again.n == alg.n
        assert again.structure == alg.structure


def test_parse_algebra_reports_line_numbers():
    with pytest.raises(ValueError, match="line 2"):
        lg.parse_algebra("1 2 3 1\n1 3 oops\n")
    with pytest.raises(ValueError, match="line 1.*vanish"):
        lg.parse_algebra("1 1 2 1\n")
    with pytest.raises(ValueError, match="line 3.*duplicate"):
        lg.parse_algebra("1 2 3 1\n1 3 2 1\n2 1 3 1\n")
