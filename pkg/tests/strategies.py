"""Hypothesis strategies for small finite rings."""

from __future__ import annotations

from hypothesis import strategies as st

from spectra_lab.ideals import enumerate_ideals
from spectra_lab.ring import make_product, make_quotient, make_zmod

moduli = st.integers(min_value=1, max_value=40)
small_moduli = st.integers(min_value=2, max_value=9)


@st.composite
def small_rings(draw, max_factors: int = 2):
    """Z/n, a product of two Z/n, or a quotient of either."""
    k = draw(st.integers(min_value=1, max_value=max_factors))
    if k == 1:
        ring = make_zmod(draw(moduli))
    else:
        ring = make_product([make_zmod(draw(small_moduli)) for _ in range(k)])
    if draw(st.booleans()):
        ideals = enumerate_ideals(ring)
        ring = make_quotient(ring, draw(st.sampled_from(list(ideals))))
    return ring
