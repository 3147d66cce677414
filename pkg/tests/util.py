"""Shared hypothesis strategies and small exact helpers for the test suite."""

from fractions import Fraction
from itertools import combinations

from hypothesis import strategies as st

from g2torsion.forms import Form, basis_indices

small_fractions = st.fractions(min_value=-4, max_value=4, max_denominator=6)
nonzero_fractions = small_fractions.filter(lambda x: x != 0)


def forms(n, degree, max_terms=5, coeffs=small_fractions):
    """Strategy for exact k-forms on an n-frame with few nonzero terms."""
    idx = basis_indices(n, degree)

    def build(pairs):
        return Form(n, dict(pairs))

    return st.lists(
        st.tuples(st.sampled_from(idx), coeffs),
        min_size=0, max_size=max_terms, unique_by=lambda kv: kv[0],
    ).map(build)


def vectors(n, coeffs=small_fractions):
    return st.lists(coeffs, min_size=n, max_size=n)


def perm_parity(seq):
    """Inversion-count parity sign, an oracle independent of the library."""
    inv = sum(
        1
        for (i, a), (j, b) in combinations(enumerate(seq), 2)
        if a > b
    )
    return -1 if inv % 2 else 1


def rational_matrix(n, coeffs=small_fractions):
    return st.lists(vectors(n, coeffs), min_size=n, max_size=n)


def as_fraction_vector(values):
    return [Fraction(v) for v in values]
