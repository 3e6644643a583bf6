"""Slow, independent reference implementations used only by the tests.

Every function here recomputes its quantity from first principles (trial
division, explicit divisor enumeration, literal definition sums) and
deliberately shares no algorithmic machinery with the package paths it
cross-checks.
"""

from math import gcd


def is_prime_trial(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def primes_trial(limit: int) -> list[int]:
    return [n for n in range(2, limit + 1) if is_prime_trial(n)]


def factorize_trial(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            r = 0
            while n % d == 0:
                n //= d
                r += 1
            out.append((d, r))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def mobius_brute(n: int) -> int:
    if n == 1:
        return 1
    fac = factorize_trial(n)
    if any(r > 1 for _, r in fac):
        return 0
    return -1 if len(fac) % 2 else 1


def kfree_brute(n: int, k: int) -> int:
    return 0 if any(r >= k for _, r in factorize_trial(n)) else 1


def divisors(n: int) -> list[int]:
    small, large = [], []
    d = 1
    while d * d <= n:
        if n % d == 0:
            small.append(d)
            if d * d != n:
                large.append(n // d)
        d += 1
    return small + large[::-1]


def convolve_at(a, b, n: int) -> int:
    """(a conv b)(n) by literal divisor enumeration; a, b map n -> value."""
    return sum(a(d) * b(n // d) for d in divisors(n))


def legendre_euler(a: int, p: int) -> int:
    """Legendre symbol (a|p) for odd prime p via Euler's criterion."""
    a %= p
    if a == 0:
        return 0
    r = pow(a, (p - 1) // 2, p)
    return 1 if r == 1 else -1


def kronecker_brute(d: int, n: int) -> int:
    """Kronecker symbol recomputed by factoring n and applying the
    defining 2-adic rule and Legendre symbols at odd primes."""
    if n == 0:
        return 1 if d in (1, -1) else 0
    out = 1
    for p, r in factorize_trial(n):
        if p == 2:
            if d % 2 == 0:
                s = 0
            elif d % 8 in (1, 7):
                s = 1
            else:
                s = -1
        else:
            s = legendre_euler(d, p)
        if s == 0:
            return 0
        out *= s**r
    return out


def partial_sum_enumeration(value_fn, x: int) -> int:
    return sum(value_fn(n) for n in range(1, x + 1))


def rule_value_brute(rule, n: int) -> int:
    """Evaluate a multiplicative rule at n from a trial-division
    factorisation, bypassing both package evaluation paths."""
    out = 1
    for p, r in factorize_trial(n) if n > 1 else []:
        out *= rule.prime_power_value(p, r)
    return out


def distance_squared_loop(f, g, x: int) -> float:
    """Pretentious distance squared by a direct prime loop."""
    total = 0.0
    for p in primes_trial(x):
        total += (1 - f.prime_value(p) * g.prime_value(p)) / p
    return total


def gcd_coprime(n: int, q: int) -> bool:
    return gcd(n, q) == 1
