"""Exact and numerical tools for cocalibrated torsion geometry in dimension 7.

The exact layer (forms, spin, g2, liegroup, classifier) works over the
rationals; the numerical layer (coframe, liouville, bundle) provides
finite-difference differential geometry for coordinate-dependent metrics.
"""

from .bundle import BundleData, assemble_N5, kahler_coframe, strominger_check
from .coframe import CoframeField, riemann_ricci
from .forms import Form, format_form, parse_form
from .g2 import char_torsion, project3, standard_omega3, standard_omega4
from .liegroup import LieAlgebraData, parse_algebra, with_torsion
from .liouville import LiouvilleSolution, solve_liouville
from .pipeline import G2Report, run
from .spin import OCTONION_TRIPLES, CliffordRep, standard_rep

__all__ = [
    "BundleData",
    "assemble_N5",
    "kahler_coframe",
    "strominger_check",
    "CoframeField",
    "riemann_ricci",
    "Form",
    "format_form",
    "parse_form",
    "char_torsion",
    "project3",
    "standard_omega3",
    "standard_omega4",
    "LieAlgebraData",
    "parse_algebra",
    "with_torsion",
    "LiouvilleSolution",
    "solve_liouville",
    "G2Report",
    "run",
    "OCTONION_TRIPLES",
    "CliffordRep",
    "standard_rep",
]

__version__ = "0.1.0"
