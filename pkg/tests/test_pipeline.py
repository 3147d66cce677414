"""End-to-end exact verification pipeline for invariant structures.

The key frozen example: su(2) with lambda = -7 on the calibrated triple
(1, 2, 7).  The literal reconstruction formula sum d(theta_i) ^ theta_i
double-counts the theta-volume monomial there; the pipeline must flag it
and report the exact overcount 2 T(theta_1,theta_2,theta_3) theta_123.
"""

import json
from fractions import Fraction

import pytest

from g2torsion import liegroup as lg
from g2torsion import pipeline as pl
from g2torsion.forms import Form

BUNDLED = lg.su2(Fraction(-7), n=7, slots=(1, 2, 7))


def checklist_map(report):
    return {item.name: item.passed for item in report.checklist}


def test_bundled_report_values():
    rep = pl.run(BUNDLED)
    assert rep.passed
    assert rep.cocalibrated
    assert rep.mu == 7
    assert rep.torsion == Form(7, {(1, 2, 7): Fraction(7)})
    from g2torsion.g2 import standard_omega3

    assert rep.t1 == standard_omega3()        # (mu/7) omega3 with mu = 7
    assert rep.t27 == rep.torsion - rep.t1
    assert rep.norm2_torsion == 49
    assert rep.norm2_d_omega3 == 294          # = 6 mu^2
    assert rep.scal_g == Fraction(147, 2)     # = (3/2) |T|^2
    assert rep.holonomy_dim == 0
    assert rep.parallel_field_count == 7
    assert rep.parallel_spinor_dim == 8
    assert rep.conditions == {
        "ric_nabla_zero": True,
        "torsion_closed_and_coclosed": True,
        "d_star_d_omega3_proportional": True,
    }
    assert all(checklist_map(rep).values())
    assert len(rep.checklist) == 18


def test_bundled_reconstruction_overcount():
    """T(theta triple) = mu != 0, so the literal sum is off by exactly

    2 mu e127; the corrected identity carries the pipeline item."""
    rep = pl.run(BUNDLED)
    assert rep.t_theta == 7
    assert rep.t_theta_squared == 49
    assert rep.reconstruction_literal is False
    assert rep.reconstruction_overcount == Form(7, {(1, 2, 7): Fraction(14)})
    name = ("reconstruction sum (theta_i hook T) ^ theta_i"
            " = T + 2 T(theta) theta123")
    assert checklist_map(rep)[name]


def test_literal_sum_fails_directly():
    """Independent of the pipeline: sum (theta_i hook T) ^ theta_i != T."""
    t = Form(7, {(1, 2, 7): Fraction(7)})
    total = Form.zero(7)
    for i in (1, 2, 7):
        total = total + t.hook_basis(i).wedge(Form.basis(7, i))
    assert total != t
    assert total == t.scale(3)                # each slot re-counts e127
    assert total - t == Form(7, {(1, 2, 7): Fraction(14)})


def test_shifted_slots_make_literal_reconstruction_true():
    """On (5, 6, 7) the canonical triple (1, 2, 7) pairs to zero with T,

    so the overcount term vanishes and the literal formula happens to hold."""
    rep = pl.run(lg.su2(Fraction(-7), n=7, slots=(5, 6, 7)))
    assert rep.passed
    assert rep.mu == 7
    assert rep.torsion == Form(7, {(5, 6, 7): Fraction(7)})
    assert rep.t_theta == 0
    assert rep.reconstruction_literal is True
    assert rep.reconstruction_overcount.is_zero()


def test_abelian_degenerate_case():
    rep = pl.run(lg.abelian(7))
    assert rep.passed
    assert rep.mu == 0
    assert rep.torsion.is_zero()
    assert rep.scal_g == 0
    assert rep.holonomy_dim == 0
    assert rep.parallel_field_count == 7
    assert rep.parallel_spinor_dim == 8


def test_misplaced_structure_is_rejected_early():
    rep = pl.run(lg.su2(Fraction(7), n=7, slots=(1, 2, 3)))
    assert not rep.passed
    assert not rep.cocalibrated
    assert len(rep.checklist) == 1
    want = Form(7, {(1, 2, 4, 5, 6): Fraction(-7),
                    (1, 3, 4, 6, 7): Fraction(-7),
                    (2, 3, 4, 5, 7): Fraction(-7)})
    assert rep.cocalibration_residual == want


def test_placement_relabels_before_running():
    """A structure on the wrong slots passes once the frame is permuted."""
    mis = lg.su2(Fraction(-7), n=7, slots=(1, 2, 3))
    assert not pl.run(mis).cocalibrated
    rep = pl.run(mis, placement=(1, 2, 7, 4, 5, 6, 3))
    assert rep.cocalibrated and rep.passed
    assert rep.placement == (1, 2, 7, 4, 5, 6, 3)
    assert rep.torsion == Form(7, {(1, 2, 7): Fraction(7)})


def test_run_requires_dimension_seven():
    with pytest.raises(ValueError, match="7-dimensional"):
        pl.run(lg.abelian(5))


def test_report_dict_is_json_stable():
    a = json.dumps(pl.run(BUNDLED).to_dict(), sort_keys=True, indent=2)
    b = json.dumps(pl.run(lg.su2(Fraction(-7), n=7, slots=(1, 2, 7))).to_dict(),
                   sort_keys=True, indent=2)
    assert a == b
    payload = json.loads(a)
    assert payload["mu"] == "7"
    assert payload["torsion"] == {"127": "7"}
    assert payload["scal_g"] == "147/2"
    assert payload["reconstruction_overcount"] == {"127": "14"}
    assert payload["passed"] is True


def test_rational_str_lowest_terms():
    assert pl.rational_str(Fraction(4, 8)) == "1/2"
    assert pl.rational_str(Fraction(-3, 1)) == "-3"
    assert pl.rational_str(Fraction(0)) == "0"
