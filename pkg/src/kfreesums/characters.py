"""Real Dirichlet characters: construction, evaluation, validation.

A real character mod q is realised through the Kronecker symbol of a
fundamental discriminant d with |d| = q.  That gives an O(log n)
evaluator plus a period table of length q for O(1) lookups, and the
period table is validated at construction (non-principal, vanishing
exactly off the units, completely multiplicative).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

import numpy as np

from .errors import CharacterConstructionError


def kronecker_symbol(d: int, n: int) -> int:
    """Kronecker symbol (d|n) for n >= 0, by the standard recursion.

    Handles the 2-adic supplement ((d|2) = 0, 1, -1 for d even, d = +-1
    mod 8, d = +-3 mod 8) and quadratic reciprocity for the odd part.
    """
    if n < 0:
        raise ValueError("kronecker_symbol requires n >= 0")
    if n == 0:
        return 1 if d in (1, -1) else 0
    result = 1
    if n % 2 == 0:
        if d % 2 == 0:
            return 0
        while n % 2 == 0:
            n //= 2
            if d % 8 in (3, 5):
                result = -result
    d %= n
    while d != 0:
        while d % 2 == 0:
            d //= 2
            if n % 8 in (3, 5):
                result = -result
        d, n = n, d
        if d % 4 == 3 and n % 4 == 3:
            result = -result
        d %= n
    return result if n == 1 else 0


@dataclass(frozen=True)
class RealCharacter:
    """A real non-principal Dirichlet character mod q.

    Attributes:
        modulus: The period q >= 3.
        period_values: Length-q array, period_values[n % q] == chi(n).
        discriminant: Fundamental discriminant backing the Kronecker symbol.
        principal: Always False here; principal characters are rejected.
    """

    modulus: int
    period_values: np.ndarray = field(repr=False)
    discriminant: int
    principal: bool = False

    def __post_init__(self) -> None:
        self.period_values.setflags(write=False)

    @property
    def label(self) -> str:
        return f"chi_{self.modulus}"

    def value(self, n: int) -> int:
        return int(self.period_values[n % self.modulus])

    def values(self, lo: int, hi: int) -> np.ndarray:
        idx = np.arange(lo, hi + 1, dtype=np.int64) % self.modulus
        return self.period_values[idx]

    def partial_sum(self, y: int) -> int:
        """M_chi(y), exact in O(q) via full-period cancellation."""
        if y <= 0:
            return 0
        # non-principal => each full period sums to zero
        return int(np.sum(self.period_values[1 : y % self.modulus + 1], dtype=np.int64))

    def max_abs_partial_sum(self) -> int:
        """max_y |M_chi(y)|; attained within the first period."""
        prefix = np.cumsum(self.period_values, dtype=np.int64)
        return int(np.max(np.abs(prefix)))

    def q_divisor_primes(self) -> list[int]:
        """Sorted prime divisors of the modulus."""
        out, q = [], self.modulus
        p = 2
        while p * p <= q:
            if q % p == 0:
                out.append(p)
                while q % p == 0:
                    q //= p
            p += 1
        if q > 1:
            out.append(q)
        return out


def _is_squarefree(n: int) -> bool:
    n = abs(n)
    p = 2
    while p * p <= n:
        if n % (p * p) == 0:
            return False
        if n % p == 0:
            n //= p
        p += 1
    return True


def _fundamental_discriminant_candidates(q: int) -> list[int]:
    cands = []
    for d in (q, -q):
        if d % 4 == 1 and _is_squarefree(d):
            cands.append(d)
        elif d % 4 == 0:
            m = d // 4
            if m % 4 in (2, 3) and _is_squarefree(m):
                cands.append(d)
    # prefer positive discriminants so q=8 picks (8|.), matching chi(7)=+1
    return sorted(cands, reverse=True)


def build_real_character(q: int, discriminant: int | None = None) -> RealCharacter:
    """Construct the primitive real non-principal character mod q.

    Supported moduli are those carrying a fundamental discriminant of
    absolute value q (odd primes, 4, 8, and squarefree composites of the
    right residue class).  The period table is filled from the Kronecker
    symbol and validated before returning.

    Raises:
        CharacterConstructionError: No such character exists for q, or the
            requested discriminant fails validation.
    """
    if q < 3:
        raise CharacterConstructionError(f"no real non-principal character mod {q}")
    cands = [discriminant] if discriminant is not None else _fundamental_discriminant_candidates(q)
    for d in cands:
        table = np.array([kronecker_symbol(d, r) for r in range(q)], dtype=np.int8)
        if _valid_period_table(q, table):
            return RealCharacter(modulus=q, period_values=table, discriminant=d)
    raise CharacterConstructionError(
        f"modulus {q} carries no supported real non-principal character"
    )


def _valid_period_table(q: int, table: np.ndarray) -> bool:
    if int(np.sum(table, dtype=np.int64)) != 0:  # principal or non-character
        return False
    for r in range(q):
        coprime = gcd(r, q) == 1
        if coprime and table[r] == 0:
            return False
        if not coprime and table[r] != 0:
            return False
    # complete multiplicativity: exhaustive for small q, sampled beyond
    if q <= 512:
        prod = np.outer(table, table)
        grid = (np.arange(q)[:, None] * np.arange(q)[None, :]) % q
        return bool(np.array_equal(table[grid], prod))
    rng = np.random.RandomState(q)
    a = rng.randint(0, q, size=4096)
    b = rng.randint(0, q, size=4096)
    return bool(np.array_equal(table[(a * b) % q], table[a] * table[b]))


def character_table(chi: RealCharacter, lo: int, hi: int):
    """Dense chi(n) for n in [lo, hi] by period lookup."""
    from .sieve import DenseValueTable

    return DenseValueTable(lo, hi, chi.values(lo, hi).astype(np.int8), label=chi.label)
