#!/usr/bin/env python3
"""Exact arithmetic tables from segmented sieves.

Walks the low-level machinery: prime sieves, Mobius values over arbitrary
windows, k-free indicators, and smallest-prime-factor tables, with the
classical sanity checks (unit identity, squarefree density) recomputed
live.
"""

import numpy as np

from kfreesums import (
    build_spf,
    sieve_kfree_segment,
    sieve_mobius_segment,
    sieve_primes,
)
from kfreesums.sieve import segments

print("=" * 70)
print(" Exact sieve tables")
print("=" * 70)

# --- primes ------------------------------------------------------------
primes = sieve_primes(100)
print(f"\nprimes <= 100 ({len(primes)}):", " ".join(str(int(p)) for p in primes))
print(f"pi(10^6) = {len(sieve_primes(10**6))}")

# --- Mobius over a window, far from the origin --------------------------
lo, hi = 999_991, 1_000_000
table = sieve_mobius_segment(lo, hi)
print(f"\nmu(n) for n in [{lo}, {hi}]:")
for n in range(lo, hi + 1):
    print(f"  mu({n}) = {table.value_at(n):+d}")

# --- segment independence ----------------------------------------------
limit = 10**6
full = sieve_mobius_segment(1, limit).values
parts = np.concatenate(
    [sieve_mobius_segment(a, b).values for a, b in segments(1, limit, 2**17)]
)
print(f"\nsegmented == one-shot over [1, 1e6]: {np.array_equal(full, parts)}")

# --- unit identity: sum_{d|n} mu(d) = [n = 1] ---------------------------
acc = np.zeros(limit + 1, dtype=np.int64)
mu64 = full.astype(np.int64)
for d in range(1, limit + 1):
    if mu64[d - 1]:
        acc[d::d] += mu64[d - 1]
print(f"sum over divisors of mu: acc(1) = {acc[1]}, max |acc(n>1)| = {np.abs(acc[2:]).max()}")

# --- squarefree density -------------------------------------------------
density = np.count_nonzero(full) / limit
print(f"squarefree density to 1e6: {density:.6f}  (6/pi^2 = {6 / np.pi**2:.6f})")

# --- k-free indicators ---------------------------------------------------
print("\nk-free counts to 1e6:")
for k in (2, 3, 4, 5):
    count = int(np.sum(sieve_kfree_segment(1, limit, k).values, dtype=np.int64))
    print(f"  k = {k}: {count}  (fraction {count / limit:.6f})")

# --- smallest prime factors ----------------------------------------------
spf = build_spf(10**6)
print("\nfactorisations via the SPF table:")
for n in (999_983, 999_999, 2**19 + 1):
    fac = " * ".join(f"{p}^{r}" if r > 1 else str(p) for p, r in spf.factorize(n))
    print(f"  {n} = {fac}")

print("\ndone.")
