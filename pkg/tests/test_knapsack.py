import random

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from interdict import kernels
from interdict._kernels_py import cmckp_fold as py_cmckp, maxplus_fold as py_maxplus
from interdict.errors import EmptyBucket, Infeasible
from interdict.knapsack import NEG_INF, MckpFolder, reconstruct, shift, solve_cmckp, solve_mckp

from _util import enumerate_mckp


def random_buckets(rng, nb, ni, cmax, with_props=True):
    out = []
    for _ in range(nb):
        bucket = []
        for _ in range(rng.randint(1, ni)):
            item = (rng.randint(0, cmax), rng.randint(0, 20))
            if with_props:
                item += (rng.random() < 0.4,)
            bucket.append(item)
        out.append(bucket)
    return out


def rescore(buckets, choice):
    picks = [b[j] for b, j in zip(buckets, choice)]
    return sum(p[0] for p in picks), sum(p[1] for p in picks), any(len(p) > 2 and p[2] for p in picks)


def test_trivial_mckp():
    assert list(solve_mckp([[(0, 5)]], 0).values) == [5]
    assert list(solve_mckp([[(0, 0), (1, 10)]] * 2, 1).values) == [0, 10]


def test_trivial_cmckp():
    assert list(solve_cmckp([[(0, 5, True)]], 0).values) == [5]
    t = solve_cmckp([[(0, 1, False), (2, 4, False)]] * 2, 4)
    assert all(x == NEG_INF for x in t.values)
    with pytest.raises(Infeasible):
        reconstruct(t, 4)


def test_empty_bucket():
    with pytest.raises(EmptyBucket):
        solve_mckp([[]], 3)


def test_three_by_three_against_enumeration():
    rng = random.Random(8)
    buckets = random_buckets(rng, 3, 3, 4, with_props=False)
    assert list(solve_mckp(buckets, 8).values) == enumerate_mckp(buckets, 8)


def test_enumeration_and_reconstruction():
    rng = random.Random(9)
    for _ in range(300):
        buckets = random_buckets(rng, rng.randint(1, 4), 4, 5)
        C = rng.randint(0, 12)
        for constrained, solver in ((False, solve_mckp), (True, solve_cmckp)):
            t = solver(buckets, C)
            assert list(t.values) == enumerate_mckp(buckets, C, constrained)
            assert np.all(np.diff(t.values[np.isfinite(t.values)]) >= 0)
            for c in range(C + 1):
                if t.values[c] == NEG_INF:
                    continue
                cost, value, has_prop = rescore(buckets, reconstruct(t, c))
                assert cost <= c and value == t.values[c]
                assert has_prop or not constrained


def test_all_property_cmckp_equals_mckp():
    rng = random.Random(10)
    for _ in range(100):
        buckets = [[(c, v, True) for c, v, _ in b] for b in random_buckets(rng, 3, 4, 4)]
        assert list(solve_cmckp(buckets, 10).values) == list(solve_mckp(buckets, 10).values)


def test_ties_pick_lowest_item():
    t = solve_mckp([[(0, 3), (0, 3), (1, 3)]], 1)
    assert reconstruct(t, 1) == [0]


def test_dense_matches_generic():
    rng = np.random.default_rng(4)
    L = 6
    for _ in range(100):
        plain = rng.integers(0, 9, (3, L)).astype(float)
        prop = rng.integers(0, 9, (3, L)).astype(float)
        plain[rng.random((3, L)) < 0.2] = NEG_INF
        prop[rng.random((3, L)) < 0.2] = NEG_INF
        dense = MckpFolder(L - 1, constrained=True)
        generic = MckpFolder(L - 1, constrained=True)
        for i in range(3):
            dense.add_dense(plain[i], prop[i])
            items = [(j, plain[i, j], False) for j in range(L)] + [(j, prop[i, j], True) for j in range(L)]
            generic.add_bucket(items)
        assert np.array_equal(dense.values, generic.values)
        for c in range(L):
            if dense.values[c] == NEG_INF:
                continue
            tab = dense.table()
            total = 0.0
            for i, j in enumerate(reconstruct(tab, c)):
                total += plain[i, j] if j < L else prop[i, j - L]
            assert total == dense.values[c]


def test_shift():
    assert list(shift([1.0, 2.0, 3.0])) == [NEG_INF, 1.0, 2.0]
    assert list(shift([1.0], 3)) == [NEG_INF]


finite_or_neg = st.one_of(st.just(NEG_INF), st.integers(-50, 50).map(float))


@pytest.mark.skipif("compiled" not in kernels.BACKENDS, reason="compiled kernels not built")
@settings(max_examples=200, deadline=None)
@given(st.integers(1, 12).flatmap(lambda L: st.lists(st.lists(finite_or_neg, min_size=L, max_size=L), min_size=4, max_size=4)))
def test_backends_agree(arrays):
    a0, a1, plain, prop = (np.array(x) for x in arrays)
    comp = kernels.BACKENDS["compiled"]
    for x, y in zip(comp.maxplus_fold(a0, plain), py_maxplus(a0, plain)):
        assert np.array_equal(x, y)
    for x, y in zip(comp.cmckp_fold(a0, a1, plain, prop), py_cmckp(a0, a1, plain, prop)):
        assert np.array_equal(x, y)


def test_backend_switch():
    with kernels.use_backend("python"):
        assert kernels.BACKEND == "python"
    with pytest.raises(ValueError):
        kernels.set_backend("fortran")
