import math
from fractions import Fraction
from itertools import permutations

import numpy as np
import pytest

from avoidstat.avoiders import (avoider_blocks, catalan, count_rows, enumerate_avoiders,
                                expected_random_count, pattern_totals, signature,
                                total_occurrences)
from avoidstat.perms import count_occurrences, inverse

from conftest import brute_avoiders, brute_count, brute_total

S3 = list(permutations((1, 2, 3)))


@pytest.mark.parametrize("n,c", [(0, 1), (3, 5), (12, 208012)])
def test_catalan(n, c):
    assert catalan(n) == c
    assert catalan(n) == math.comb(2 * n, n) // (n + 1)


def test_catalan_matches_stream_count():
    for n in range(13):
        assert sum(1 for _ in enumerate_avoiders(n)) == catalan(n)


def test_small_streams():
    assert list(enumerate_avoiders(3)) == [(1, 2, 3), (2, 1, 3), (2, 3, 1), (3, 1, 2), (3, 2, 1)]
    assert list(enumerate_avoiders(2)) == [(1, 2), (2, 1)]
    assert list(enumerate_avoiders(0)) == [()]
    assert len(list(enumerate_avoiders(4))) == 14


@pytest.mark.parametrize("n", range(0, 8))
def test_stream_is_lexicographic_and_matches_filter(n, avoiders_by_n):
    got = list(enumerate_avoiders(n))
    assert got == avoiders_by_n[n]  # filtered permutations() are already lexicographic


@pytest.mark.parametrize("n", range(0, 10))
def test_blocks_partition_the_avoiders(n):
    rows = [tuple(r) for b in avoider_blocks(n) for r in b.tolist()]
    assert len(rows) == len(set(rows)) == catalan(n)
    assert set(rows) == set(enumerate_avoiders(n))


def test_block_i_has_n_at_position_i():
    n = 7
    for i, block in enumerate(avoider_blocks(n), start=1):
        assert (block[:, i - 1] == n).all()
        # left block is exactly {n-i+1, ..., n-1}
        assert set(np.unique(block[:, : i - 1])) == set(range(n - i + 1, n))


@pytest.mark.parametrize("r", [(1, 2, 3), (3, 2, 1), (2, 1), (1, 3, 2, 4)])
def test_general_r_stream(r):
    for n in range(6):
        assert list(enumerate_avoiders(n, r)) == brute_avoiders(n, r)


def test_count_rows_matches_scalar():
    rows = np.concatenate(list(avoider_blocks(7)))
    for q in [(1,), (2, 1), (2, 1, 3), (1, 3, 2), (3, 1, 2, 4), (2, 1, 3, 4, 5)]:
        counts = count_rows(rows, q)
        assert counts.tolist() == [count_occurrences(tuple(r), q) for r in rows.tolist()]


@pytest.mark.parametrize("n,q,expected", [
    (3, (2, 1, 3), 1), (3, (2, 3, 1), 1), (4, (2, 1, 3), 11), (3, (1, 2, 3), 1),
])
def test_total_examples(n, q, expected):
    assert total_occurrences(n, q) == expected


def test_total_matches_independent_oracle():
    for n in range(1, 7):
        for q in S3 + [(2, 1), (1, 2), (2, 1, 3, 4)]:
            assert total_occurrences(n, q) == brute_total(n, q)


def test_total_general_r():
    for n in range(1, 6):
        assert total_occurrences(n, (2, 1), r=(1, 2, 3)) == brute_total(n, (2, 1), (1, 2, 3))


def test_avoided_pattern_total_is_zero():
    assert all(total_occurrences(n, (1, 3, 2)) == 0 for n in range(12))


def test_threads_do_not_change_totals():
    for q in [(2, 1, 3), (3, 2, 1)]:
        assert total_occurrences(11, q, threads=1) == total_occurrences(11, q, threads=4)


@pytest.mark.parametrize("n", range(3, 10))
def test_triple_and_inverse_symmetry(n):
    t = {q: total_occurrences(n, q) for q in S3}
    assert t[(2, 3, 1)] == t[(3, 1, 2)] == t[(2, 1, 3)]
    for q in S3:
        assert t[q] == t[inverse(q)]
    assert sum(t.values()) == catalan(n) * math.comb(n, 3)


@pytest.mark.parametrize("n", range(6, 12))
def test_monotone_patterns_bound_the_rest(n):
    t = {q: total_occurrences(n, q) for q in S3 if q != (1, 3, 2)}
    assert all(t[(3, 2, 1)] >= v >= t[(1, 2, 3)] for v in t.values())


@pytest.mark.parametrize("n,k", [(6, 3), (7, 4), (5, 2)])
def test_pattern_totals_agree_with_single_totals(n, k):
    all_t = pattern_totals(n, k)
    for q, v in all_t.items():
        assert v == total_occurrences(n, q)
    assert sum(all_t.values()) == catalan(n) * math.comb(n, k)


def test_signature():
    assert signature((2, 1, 3), 3, 4).values == (1, 11)
    assert signature((1, 3, 2), 3, 6).values == (0, 0, 0, 0)
    assert signature((1, 2, 3), 3, 3).values == (1,)
    assert signature((2, 1, 3, 4), 2, 4).values[:2] == (0, 0)
    with pytest.raises(ValueError):
        signature((1,), 4, 3)


def test_expected_random_count():
    assert expected_random_count(3, 3) == Fraction(1, 6)
    assert expected_random_count(4, 3) == Fraction(2, 3)
    for k in range(6):
        assert expected_random_count(k, k) == Fraction(1, math.factorial(k))
    # mean over S_n of the subset-counting oracle
    n, q = 5, (2, 1, 3)
    mean = Fraction(sum(brute_count(p, q) for p in permutations(range(1, n + 1))),
                    math.factorial(n))
    assert mean == expected_random_count(n, 3)
