import sys
from fractions import Fraction
from pathlib import Path

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

sys.path.insert(0, str(Path(__file__).parent))

settings.register_profile("default", deadline=None, max_examples=60,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_rationals = st.builds(Fraction, st.integers(-6, 6), st.integers(1, 4))


@st.composite
def polynomials(draw, n, max_terms=4, max_deg=3):
    from orbitspace.exactalg import Polynomial
    k = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(k):
        e = tuple(draw(st.lists(st.integers(0, max_deg), min_size=n, max_size=n)))
        terms[e] = draw(small_rationals)
    return Polynomial(n, terms)


@st.composite
def gaussian_points(draw, n):
    from orbitspace.exactalg import GaussianRational
    return tuple(GaussianRational(draw(small_rationals), draw(small_rationals)) for _ in range(n))
