import pytest

from schubcone.errors import InvalidInput
from schubcone.roots import (
    Root, RootSystemSpec, col_of, column_set, parse_root, positive_roots,
    reflect, row_of, row_set, simple_roots,
)


@pytest.mark.parametrize("family,rank,count", [
    ("A", 2, 3), ("A", 3, 6), ("B", 2, 4), ("B", 3, 9), ("C", 3, 9),
    ("D", 3, 6), ("D", 4, 12), ("D", 5, 20), ("D", 6, 30),
])
def test_positive_root_counts(family, rank, count):
    assert len(positive_roots(RootSystemSpec(family, rank))) == count


def test_simple_roots_per_family():
    assert [str(a) for a in simple_roots(RootSystemSpec("D", 4))] == ["e1-e2", "e2-e3", "e3-e4", "e3+e4"]
    assert str(simple_roots(RootSystemSpec("B", 3))[-1]) == "e3"
    assert str(simple_roots(RootSystemSpec("C", 3))[-1]) == "2e3"
    assert [str(a) for a in simple_roots(RootSystemSpec("A", 2))] == ["e1-e2", "e2-e3"]


def test_positive_roots_are_positive_and_distinct(small_spec):
    roots = positive_roots(small_spec)
    assert len(set(roots)) == len(roots)
    assert all(r.is_positive() for r in roots)
    assert all(r.dim == small_spec.dim for r in roots)


def test_positive_roots_are_nonnegative_simple_combinations(small_spec):
    # solve over the simple roots: every coefficient must be a nonnegative integer
    import numpy as np
    simple = np.array([s.coeffs for s in simple_roots(small_spec)], dtype=float)
    for r in positive_roots(small_spec):
        coef, *_ = np.linalg.lstsq(simple.T, np.array(r.coeffs, dtype=float), rcond=None)
        assert np.allclose(coef, np.round(coef)) and (np.round(coef) >= 0).all(), r


def test_reflection_permutes_roots(small_spec):
    roots = set(positive_roots(small_spec))
    full = roots | {-r for r in roots}
    for a in roots:
        assert {reflect(a, b) for b in full} == full
        assert reflect(a, a) == -a


def test_parse_and_print_round_trip():
    for text in ["e1-e2", "e3+e4", "2e1", "e2"]:
        assert str(parse_root(text, 4)) == text
    with pytest.raises(InvalidInput):
        parse_root("e1*e2", 4)
    with pytest.raises(InvalidInput):
        parse_root("e5", 4)


def test_rows_and_columns():
    d4 = RootSystemSpec("D", 4)
    assert row_of(Root.of(4, (1, 1), (3, -1))) == 3
    assert row_of(Root.of(4, (1, 1), (3, 1))) == -3
    assert col_of(Root.of(4, (2, 1), (4, 1))) == 2
    assert {str(a) for a in column_set(d4, 1)} == {"e1-e2", "e1+e2", "e1-e3", "e1+e3", "e1-e4", "e1+e4"}
    assert {str(a) for a in row_set(d4, -4)} == {"e1+e4", "e2+e4", "e3+e4"}
    # every positive root lies in exactly one column and one row
    cols = [column_set(d4, k) for k in range(1, 5)]
    assert sum(len(c) for c in cols) == 12


def test_invalid_specs():
    with pytest.raises(InvalidInput):
        RootSystemSpec("E", 6)
    with pytest.raises(InvalidInput):
        RootSystemSpec("D", 1)
    with pytest.raises(InvalidInput):
        RootSystemSpec("A", 0)
    with pytest.raises(InvalidInput):
        column_set(RootSystemSpec("B", 3), 1)
