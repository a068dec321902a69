import numpy as np

from ladderkit.algebra import OperatorPoly
from ladderkit.engine.selfcheck import check_perturbation, random_hermitian, run_selfcheck


def test_random_perturbations_are_hermitian_and_reproducible():
    first = [random_hermitian(np.random.default_rng(7), max_degree=3) for _ in range(2)]
    assert first[0] == first[1]
    rng = np.random.default_rng(3)
    for _ in range(10):
        V = random_hermitian(rng, max_degree=3)
        assert V.is_hermitian() and not V.is_zero
        assert V.degree <= 3


def test_identities_hold_on_random_perturbations():
    results = run_selfcheck(4, 2, seed=11, max_degree=3)
    assert len(results) == 4
    assert all(r.passed for r in results), [r.to_dict() for r in results]


def test_first_order_skips_the_closed_form():
    result = check_perturbation(OperatorPoly.position(), 1)
    assert result.alpha2_matches is None
    assert result.passed
    assert result.to_dict()["pass"] is True
