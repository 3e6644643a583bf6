import numpy as np
import pytest

from kfreesums import (
    CapacityError,
    RangeError,
    build_spf,
    introot,
    sieve_kfree_segment,
    sieve_mobius_segment,
    sieve_primes,
)
from kfreesums.sieve import MAX_LIMIT, is_perfect_power, segments

from oracles import factorize_trial, kfree_brute, mobius_brute, primes_trial


def test_primes_small():
    assert list(sieve_primes(10)) == [2, 3, 5, 7]
    assert list(sieve_primes(2)) == [2]
    assert list(sieve_primes(1)) == []
    assert list(sieve_primes(0)) == []


def test_primes_match_trial_division():
    assert list(sieve_primes(2000)) == primes_trial(2000)


def test_prime_count_1e6():
    # frozen from the one-shot trial-division oracle run
    assert len(sieve_primes(10**6)) == 78498


def test_mobius_first_ten():
    assert list(sieve_mobius_segment(1, 10).values) == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1]


def test_mobius_single_entry():
    assert list(sieve_mobius_segment(4, 4).values) == [0]


def test_mobius_high_segment_matches_spf_factorization():
    table = sieve_mobius_segment(999991, 1000000)
    spf = build_spf(10**6)
    for n in range(999991, 1000001):
        fac = spf.factorize(n)
        expect = 0 if any(r > 1 for _, r in fac) else (-1) ** len(fac)
        assert table.value_at(n) == expect


def test_mobius_segment_concatenation_matches_one_shot():
    limit = 10**6
    full = sieve_mobius_segment(1, limit).values
    parts = [sieve_mobius_segment(lo, hi).values for lo, hi in segments(1, limit, 2**17)]
    assert np.array_equal(np.concatenate(parts), full)


def test_mobius_unit_identity_by_divisor_enumeration():
    # sum_{d|n} mu(d) = [n == 1], accumulated by an explicit divisor walk
    limit = 10**5
    mu = sieve_mobius_segment(1, limit).values.astype(np.int64)
    acc = np.zeros(limit + 1, dtype=np.int64)
    for d in range(1, limit + 1):
        if mu[d - 1]:
            acc[d::d] += mu[d - 1]
    assert acc[1] == 1
    assert not acc[2:].any()


def test_mobius_unit_identity_brute_small():
    for n in range(1, 3001):
        total = sum(mobius_brute(d) for d in range(1, n + 1) if n % d == 0)
        assert total == (1 if n == 1 else 0)


def test_squarefree_density():
    limit = 10**6
    count = int(np.sum(sieve_mobius_segment(1, limit).values != 0))
    assert abs(count / limit - 6 / np.pi**2) < 0.002


def test_kfree_small_cases():
    assert list(sieve_kfree_segment(1, 8, 3).values) == [1, 1, 1, 1, 1, 1, 1, 0]
    assert list(sieve_kfree_segment(12, 12, 2).values) == [0]


def test_kfree_matches_brute_marking():
    limit = 10**5
    table = sieve_kfree_segment(1, limit, 4)
    marked = np.ones(limit + 1, dtype=np.int8)
    for p in primes_trial(introot(limit, 4)):
        marked[p**4 :: p**4] = 0
    assert int(np.sum(table.values)) == int(np.sum(marked[1:]))


@pytest.mark.parametrize("k", [2, 3, 4, 5])
def test_kfree_downward_closure(k):
    # mu_k^2(n) = 1 iff every divisor of n is k-free too
    limit = 10**4
    table = sieve_kfree_segment(1, limit, k)
    rng = np.random.RandomState(k)
    for n in rng.randint(1, limit + 1, size=200):
        n = int(n)
        expected = all(kfree_brute(d, k) for d in range(1, n + 1) if n % d == 0)
        assert bool(table.value_at(n)) == expected


def test_kfree_order_validation():
    with pytest.raises(RangeError):
        sieve_kfree_segment(1, 10, 1)
    with pytest.raises(RangeError):
        sieve_kfree_segment(1, 10, 61)


def test_spf_basics():
    spf = build_spf(10)
    assert int(spf.spf[9]) == 3
    assert int(spf.spf[7]) == 7
    assert int(spf.spf[1]) == 1


def test_spf_reconstruction():
    spf = build_spf(10**6)
    rng = np.random.RandomState(11)
    for n in rng.randint(2, 10**6, size=300):
        n = int(n)
        fac = spf.factorize(n)
        prod = 1
        for p, r in fac:
            prod *= p**r
        assert prod == n
        assert fac == factorize_trial(n)


def test_spf_capacity_error():
    with pytest.raises(CapacityError):
        build_spf(10**9, max_bytes=10**6)


def test_range_rejections():
    with pytest.raises(RangeError):
        sieve_mobius_segment(0, 10)
    with pytest.raises(RangeError):
        sieve_mobius_segment(10, 5)
    with pytest.raises(RangeError):
        sieve_mobius_segment(1, MAX_LIMIT + 1)


def test_value_table_immutable_and_bounds():
    table = sieve_mobius_segment(1, 10)
    with pytest.raises(ValueError):
        table.values[0] = 7
    with pytest.raises(RangeError):
        table.value_at(11)


def test_table_csv_dump(tmp_path):
    table = sieve_mobius_segment(1, 5)
    path = tmp_path / "mu.csv"
    table.to_csv(path)
    assert path.read_text().splitlines() == ["n,value", "1,1", "2,-1", "3,-1", "4,0", "5,-1"]


def test_introot_exactness():
    assert introot(10**10, 5) == 100
    assert introot(2**60 - 1, 60) == 1
    assert introot(2**60, 60) == 2
    assert is_perfect_power(128, 7) == (True, 2)
    assert is_perfect_power(127, 7) == (False, 1)
    # float powers misclassify near-powers; the exact path must not
    n = (10**6 - 1) ** 3
    assert is_perfect_power(n, 3) == (True, 10**6 - 1)
    assert is_perfect_power(n - 1, 3)[0] is False
