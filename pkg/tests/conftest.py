from itertools import combinations, permutations

import pytest


def brute_count(p, q):
    """Occurrences of q in p by checking every index subset."""
    k = len(q)
    total = 0
    for idx in combinations(range(len(p)), k):
        vals = [p[i] for i in idx]
        if all((vals[a] < vals[b]) == (q[a] < q[b]) for a in range(k) for b in range(k)):
            total += 1
    return total


def brute_avoiders(n, r=(1, 3, 2)):
    return [p for p in permutations(range(1, n + 1)) if brute_count(p, r) == 0]


def brute_total(n, q, r=(1, 3, 2)):
    return sum(brute_count(p, q) for p in brute_avoiders(n, r))


@pytest.fixture(scope="session")
def avoiders_by_n():
    return {n: brute_avoiders(n) for n in range(0, 8)}
