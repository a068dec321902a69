"""Hypothesis strategies shared by the property tests."""


from hypothesis import strategies as st

from ladderkit.algebra import OperatorPoly, Scalar, UnitMonomial, dagger

small_fractions = st.fractions(min_value=-5, max_value=5, max_denominator=6)

units = st.builds(
    UnitMonomial,
    st.integers(min_value=-3, max_value=3),
    st.integers(min_value=-3, max_value=3),
    st.integers(min_value=-3, max_value=3),
)


def scalars(with_units: bool = False):
    unit_strategy = units if with_units else st.just(UnitMonomial())
    return st.builds(Scalar, small_fractions, small_fractions, small_fractions, small_fractions, unit_strategy)


@st.composite
def operator_polys(draw, max_degree: int = 3, max_terms: int = 4):
    keys = st.tuples(st.integers(0, max_degree), st.integers(0, max_degree)).filter(lambda t: sum(t) <= max_degree)
    terms = draw(st.dictionaries(keys, scalars(), max_size=max_terms))
    return OperatorPoly(terms)


@st.composite
def hermitian_polys(draw, max_degree: int = 3, max_terms: int = 3):
    P = draw(operator_polys(max_degree=max_degree, max_terms=max_terms))
    return P + dagger(P)
