import numpy as np
import pytest

from kfreesums import (
    ModificationPlan,
    PlanError,
    RangeError,
    build_real_character,
    build_spf,
    character_rule,
    mobius_rule,
    modified_character,
    one_rule,
    sieve_mobius_segment,
)

from oracles import rule_value_brute


@pytest.fixture(scope="module")
def chi3():
    return build_real_character(3)


@pytest.fixture(scope="module")
def spf():
    return build_spf(10**6)


def test_evaluate_examples(chi3, spf):
    f = character_rule(chi3, k=2)
    assert f.evaluate(10, spf) == 1    # squarefree, 10 = 1 mod 3
    assert f.evaluate(12, spf) == 0    # 4 | 12
    assert character_rule(chi3, k=3).evaluate(8, spf) == 0  # 2^3 | 8


def test_evaluate_out_of_range(chi3):
    small = build_spf(100)
    with pytest.raises(RangeError):
        character_rule(chi3).evaluate(101, small)


def test_value_at_one_is_one(chi3, spf):
    for rule in (character_rule(chi3), mobius_rule(), one_rule(),
                 character_rule(chi3, k=4)):
        assert rule.evaluate(1, spf) == 1


def test_mobius_rule_equals_sieve(spf):
    # the alternating base truncated at squares reproduces mu
    vals = mobius_rule().segment_values(1, 5000)
    assert np.array_equal(vals, sieve_mobius_segment(1, 5000).values)


def test_streaming_matches_evaluate_fuzz(chi3, spf):
    plan = ModificationPlan(character=chi3, flipped_primes=(5, 11))
    rules = [
        character_rule(chi3),
        character_rule(chi3, k=2),
        modified_character(plan),
        modified_character(plan).truncated(3),
        mobius_rule(),
        one_rule(),
    ]
    rng = np.random.RandomState(17)
    ns = rng.randint(1, 10**6, size=200)
    for rule in rules:
        lo, hi = 10**5 + 1, 10**5 + 512
        seg = rule.segment_values(lo, hi)
        for i, n in enumerate(range(lo, hi + 1)):
            if i % 37 == 0:
                assert int(seg[i]) == rule.evaluate(n, spf)
        for n in ns[:40]:
            n = int(n)
            assert rule.evaluate(n, spf) == rule_value_brute(rule, n)


def test_factorization_consistency_large_fuzz(chi3, spf):
    rule = modified_character(
        ModificationPlan(character=chi3, flipped_primes=(7, 13))
    ).truncated(2)
    rng = np.random.RandomState(23)
    for n in rng.randint(1, 10**6, size=10**4):
        n = int(n)
        prod = 1
        for p, r in spf.factorize(n):
            prod *= rule.prime_power_value(p, r)
        assert rule.evaluate(n, spf) == prod


def test_truncation_kills_high_powers(chi3):
    rule = character_rule(chi3, k=3)
    assert rule.prime_power_value(2, 3) == 0
    assert rule.prime_power_value(2, 2) == 1  # (-1)^2
    assert rule.prime_power_value(2, 1) == -1


def test_override_validation(chi3):
    with pytest.raises(PlanError):
        character_rule(chi3).truncated(1)
    from kfreesums import MultiplicativeRule

    with pytest.raises(PlanError):
        MultiplicativeRule(base=chi3, overrides={4: 1})
    with pytest.raises(PlanError):
        MultiplicativeRule(base=chi3, overrides={5: 2})
    with pytest.raises(PlanError):
        MultiplicativeRule(base=3)


def test_unit_valued_detection(chi3):
    assert not character_rule(chi3).is_unit_valued()
    g = modified_character(ModificationPlan(character=chi3))
    assert g.is_unit_valued()
    assert mobius_rule().without_truncation().is_unit_valued()


def test_segment_values_with_large_override_prime(chi3, spf):
    # override prime above sqrt(hi) must still be peeled correctly
    p = 1009
    from kfreesums import MultiplicativeRule

    rule = MultiplicativeRule(base=-1, overrides={p: 1})
    lo, hi = 1, 5000
    seg = rule.segment_values(lo, hi)
    for n in (p, 2 * p, 3 * p, p - 1, p + 1, 4 * p):
        assert int(seg[n - 1]) == rule.evaluate(n, spf), n
