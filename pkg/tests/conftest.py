from fractions import Fraction

from hypothesis import settings, strategies as st

from realcremona.exact import GaussRat

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

small_rat = st.builds(Fraction, st.integers(-20, 20), st.integers(1, 9))
gauss = st.builds(GaussRat, small_rat, small_rat)
nonzero_gauss = gauss.filter(lambda z: not z.is_zero())
nonreal_gauss = st.builds(GaussRat, small_rat, small_rat.filter(lambda q: q != 0))
positive_rat = st.builds(Fraction, st.integers(1, 20), st.integers(1, 9))
