import pytest

from quotdeg.errors import DomainError
from quotdeg.grassmann import catalan_degree, schubert_degree, syt_count


def test_schubert_examples():
    assert schubert_degree(1, 5) == 1
    assert schubert_degree(1, 9) == 1
    assert schubert_degree(2, 4) == 2
    assert schubert_degree(2, 5) == 5


def test_schubert_domain():
    with pytest.raises(DomainError):
        schubert_degree(0, 3)
    with pytest.raises(DomainError):
        schubert_degree(3, 3)


def test_catalan_examples():
    assert catalan_degree(2) == 1
    assert catalan_degree(4) == 2
    assert catalan_degree(5) == 5


def test_syt_examples():
    assert syt_count(1, 7) == 1
    assert syt_count(2, 2) == 2
    assert syt_count(2, 3) == 5
    assert syt_count(0, 3) == 1


def test_schubert_equals_tableau_count():
    for l in range(1, 5):
        for r in range(l + 1, 13):
            assert schubert_degree(l, r) == syt_count(l, r - l)


def test_catalan_equals_schubert():
    for r in range(3, 21):
        assert catalan_degree(r) == schubert_degree(2, r)


def test_duality():
    for r in range(2, 13):
        for l in range(1, r):
            assert schubert_degree(l, r) == schubert_degree(r - l, r)


def test_schubert_gr_3_6():
    assert schubert_degree(3, 6) == 42
    assert syt_count(3, 3) == 42
