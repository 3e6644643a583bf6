"""Multiplicative functions defined by their values on prime powers.

A rule couples a completely multiplicative base (a real character, or a
constant +-1 at every prime) with finitely many per-prime overrides and
an optional k-free truncation: with truncation order k the value at p^r
is zero for r >= k, so the function is supported on the k-free integers.

Two evaluation paths are provided and cross-checked in the test suite:
exact per-n evaluation through a smallest-prime-factor table, and
vectorised streaming over a [lo, hi] segment.  The streaming path peels
the finitely many exceptional primes off each n and reads the remaining
cofactor from the character's period table, so segments cost O(size)
regardless of where they sit.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import isqrt

import numpy as np

from .characters import RealCharacter
from .errors import PlanError, RangeError
from .sieve import SpfTable, DenseValueTable, sieve_kfree_segment, sieve_primes


@dataclass(frozen=True)
class MultiplicativeRule:
    """A multiplicative function built from a completely multiplicative base.

    Attributes:
        base: RealCharacter, or +1/-1 for the constant prime value (the
            constant 1 function, or the Liouville-style alternating one).
        overrides: Prime -> value in {-1, +1}, replacing the base at
            finitely many primes.
        k_truncation: When set (k >= 2), values vanish on prime powers
            p^r with r >= k, restricting support to the k-free integers.
        label: Display name.
    """

    base: RealCharacter | int
    overrides: dict[int, int] = field(default_factory=dict)
    k_truncation: int | None = None
    label: str = ""

    def __post_init__(self) -> None:
        if isinstance(self.base, int) and self.base not in (1, -1):
            raise PlanError(f"constant base must be +1 or -1, got {self.base}")
        for p, v in self.overrides.items():
            if v not in (-1, 1):
                raise PlanError(f"override value at p={p} must be +-1, got {v}")
            if not _is_prime(p):
                raise PlanError(f"override index {p} is not prime")
        if self.k_truncation is not None and self.k_truncation < 2:
            raise PlanError(f"truncation order must be >= 2, got {self.k_truncation}")
        if not self.label:
            object.__setattr__(self, "label", self._default_label())

    def _default_label(self) -> str:
        base = self.base.label if isinstance(self.base, RealCharacter) else f"const{self.base:+d}"
        parts = [base]
        if self.overrides:
            parts.append("mod" + ",".join(str(p) for p in sorted(self.overrides)))
        if self.k_truncation:
            parts.insert(0, f"mu_{self.k_truncation}^2*")
        return "".join(parts)

    # -- prime-power semantics ------------------------------------------

    def prime_value(self, p: int) -> int:
        """Value at a prime (before truncation, exponent 1)."""
        if p in self.overrides:
            return self.overrides[p]
        if isinstance(self.base, RealCharacter):
            return self.base.value(p)
        return self.base

    def prime_power_value(self, p: int, r: int) -> int:
        if r == 0:
            return 1
        if self.k_truncation is not None and r >= self.k_truncation:
            return 0
        v = self.prime_value(p)
        return v if r % 2 == 1 else abs(v)

    def is_unit_valued(self) -> bool:
        """True when every prime value is +-1 (so the rule is invertible
        and completely multiplicative off the truncation)."""
        if isinstance(self.base, RealCharacter):
            return all(p in self.overrides for p in self.base.q_divisor_primes())
        return True

    def without_truncation(self) -> "MultiplicativeRule":
        if self.k_truncation is None:
            return self
        return MultiplicativeRule(base=self.base, overrides=dict(self.overrides))

    def truncated(self, k: int) -> "MultiplicativeRule":
        label = f"mu_{k}^2*{self.label}" if self.k_truncation is None else ""
        return MultiplicativeRule(base=self.base, overrides=dict(self.overrides),
                                  k_truncation=k, label=label)

    # -- evaluation paths -----------------------------------------------

    def evaluate(self, n: int, spf: SpfTable) -> int:
        """Exact value at n via SPF factorisation."""
        if n < 1 or n > spf.limit:
            raise RangeError(f"n={n} outside SPF limit {spf.limit}")
        out = 1
        for p, r in spf.factorize(n):
            out *= self.prime_power_value(p, r)
            if out == 0:
                return 0
        return out

    def values(self, lo: int, hi: int, primes: np.ndarray | None = None) -> DenseValueTable:
        """Dense values over [lo, hi] by segment streaming."""
        vals = self.segment_values(lo, hi, primes)
        return DenseValueTable(lo, hi, vals, label=self.label)

    def segment_values(self, lo: int, hi: int, primes: np.ndarray | None = None) -> np.ndarray:
        size = hi - lo + 1
        sign = np.ones(size, dtype=np.int8)
        cof = np.arange(lo, hi + 1, dtype=np.int64)

        def peel(p: int, v: int) -> None:
            # one pass per power level divides out exactly v_p(n) factors
            pe = p
            while pe <= hi:
                start = ((lo + pe - 1) // pe) * pe
                sel = slice(start - lo, size, pe)
                if v == -1:
                    np.negative(sign[sel], out=sign[sel])
                cof[sel] //= p
                pe *= p

        for p in sorted(self.overrides):
            peel(p, self.overrides[p])

        if isinstance(self.base, RealCharacter):
            vals = self.base.period_values[cof % self.base.modulus] * sign
        else:
            if self.base == -1:
                root = isqrt(hi)
                if primes is None:
                    primes = sieve_primes(root)
                for p in primes:
                    p = int(p)
                    if p > root:
                        break
                    if p not in self.overrides:
                        peel(p, -1)
                # a single prime factor above sqrt(hi) may remain
                np.negative(sign, where=cof > 1, out=sign)
            vals = sign

        if self.k_truncation is not None:
            vals = vals * sieve_kfree_segment(lo, hi, self.k_truncation).values
        return vals.astype(np.int8)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


def character_rule(chi: RealCharacter, k: int | None = None) -> MultiplicativeRule:
    """The character itself as a rule, optionally restricted to k-free n."""
    return MultiplicativeRule(base=chi, k_truncation=k)


def mobius_rule() -> MultiplicativeRule:
    """mu as a rule: alternating base truncated at squares."""
    return MultiplicativeRule(base=-1, k_truncation=2, label="mu")


def one_rule() -> MultiplicativeRule:
    """The constant function 1."""
    return MultiplicativeRule(base=1, label="one")
