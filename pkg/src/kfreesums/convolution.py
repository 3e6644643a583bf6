"""Exact Dirichlet-algebra operations on dense prefix tables.

Convolution, Dirichlet inversion and pointwise products all operate on
tables over [1, N] with exact 64-bit integers; products of {-1, 0, 1}
tables never overflow at the oracle scales used here (N <= ~10^6).

Two closed-form convolution factors are also built directly from their
prime-power laws:

* ``kfree_factor(k, g, N)``: the factor h with g * h = (k-free
  indicator) * g for a completely multiplicative g; h is supported on
  k-th powers, with h(m^k) = mu(m) * g(m)^k.
* ``deviation_factor(g, chi, N)``: the factor h = (mu*g) conv chi, whose
  prime-power values chi(p)^(r-1) * (chi(p) - g(p)) vanish wherever g
  agrees with chi.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .characters import RealCharacter
from .errors import NonInvertibleError, RangeError, ShapeError
from .rules import MultiplicativeRule
from .sieve import DenseValueTable, build_spf, introot, sieve_mobius_segment


@dataclass(frozen=True)
class ConvolutionTable:
    """Exact (a * b)(n) for 1 <= n <= limit, with 64-bit integer entries."""

    limit: int
    values: np.ndarray = field(repr=False)  # index n, [0] unused
    operands: tuple[str, str] = ("", "")

    def __post_init__(self) -> None:
        self.values.setflags(write=False)

    def value_at(self, n: int) -> int:
        if n < 1 or n > self.limit:
            raise RangeError(f"n={n} outside convolution limit {self.limit}")
        return int(self.values[n])

    def as_table(self, label: str = "") -> DenseValueTable:
        return DenseValueTable(1, self.limit, self.values[1:].copy(),
                               label=label or f"{self.operands[0]}*{self.operands[1]}")

    def to_csv(self, path) -> None:
        self.as_table().to_csv(path)


def _require_prefix(t: DenseValueTable, name: str) -> None:
    if t.lo != 1:
        raise ShapeError(f"{name} must start at 1, got lo={t.lo}")


def _shared_limit(a: DenseValueTable, b: DenseValueTable) -> int:
    _require_prefix(a, "left operand")
    _require_prefix(b, "right operand")
    if a.hi != b.hi:
        raise ShapeError(f"operand ranges differ: [1,{a.hi}] vs [1,{b.hi}]")
    return a.hi


def dirichlet_convolve(a: DenseValueTable, b: DenseValueTable) -> ConvolutionTable:
    """(a * b)(n) = sum_{d|n} a(d) b(n/d) for n <= N, exactly.

    Divisor-pair enumeration in O(N log N): each d contributes a(d) times
    the b-prefix along its multiples.
    """
    n = _shared_limit(a, b)
    av = a.values.astype(np.int64)
    bv = b.values.astype(np.int64)
    out = np.zeros(n + 1, dtype=np.int64)
    for d in range(1, n + 1):
        ad = av[d - 1]
        if ad:
            out[d::d] += ad * bv[: n // d]
    return ConvolutionTable(limit=n, values=out, operands=(a.label, b.label))


def dirichlet_inverse(a: DenseValueTable) -> ConvolutionTable:
    """Table b with (a * b) = unit (1 at n=1, else 0) on [1, N].

    Uses the forward recursion b(n) = -a(1)^{-1} sum_{d|n, d>1} a(d) b(n/d);
    contributions are pushed to multiples as each b(n) is fixed, keeping the
    whole inversion O(N log N).
    """
    _require_prefix(a, "operand")
    n = a.hi
    a1 = int(a.values[0])
    if a1 == 0:
        raise NonInvertibleError("a(1) = 0 has no Dirichlet inverse")
    if a1 not in (1, -1):
        raise NonInvertibleError(f"a(1) = {a1} is not a unit in the integer table ring")
    av = a.values.astype(np.int64)
    b = np.zeros(n + 1, dtype=np.int64)
    acc = np.zeros(n + 1, dtype=np.int64)  # pending sum_{d|m, d<m} b(d) a(m/d)
    for m in range(1, n + 1):
        bm = (1 - acc[m]) * a1 if m == 1 else -a1 * acc[m]
        b[m] = bm
        if bm and 2 * m <= n:
            acc[2 * m :: m] += bm * av[1 : n // m]
    return ConvolutionTable(limit=n, values=b, operands=(a.label, "^-1"))


def pointwise_product(a: DenseValueTable, b: DenseValueTable) -> DenseValueTable:
    """Entrywise product over a shared [lo, hi] range."""
    if a.lo != b.lo or a.hi != b.hi:
        raise ShapeError(
            f"pointwise product needs matching ranges, got [{a.lo},{a.hi}] vs [{b.lo},{b.hi}]"
        )
    dtype = np.result_type(a.values.dtype, b.values.dtype)
    vals = a.values.astype(dtype) * b.values.astype(dtype)
    return DenseValueTable(a.lo, a.hi, vals, label=f"{a.label}*{b.label}")


def kfree_factor(k: int, g: MultiplicativeRule, limit: int) -> DenseValueTable:
    """The convolution factor restricting g to k-free support.

    For completely multiplicative g with prime values in {-1, 0, 1}, the
    function f(n) = [n k-free] * g(n) factors as f = g * h where h is
    supported on k-th powers: h(m^k) = mu(m) * g(m)^k (so for g = +-1
    everywhere, mu(m) g(m) when k is odd and plain mu(m) when k is even).
    """
    if g.k_truncation is not None:
        raise ShapeError("factor requires the untruncated completely multiplicative g")
    root = introot(limit, k)
    h = np.zeros(limit, dtype=np.int8)
    if root >= 1:
        mu = sieve_mobius_segment(1, root).values.astype(np.int64)
        gv = g.segment_values(1, root).astype(np.int64)
        gk = gv if k % 2 == 1 else np.abs(gv)
        m = np.arange(1, root + 1, dtype=np.int64)
        h[m**k - 1] = (mu * gk).astype(np.int8)
    return DenseValueTable(1, limit, h, label=f"kfree_factor[k={k},{g.label}]")


def deviation_factor(g: MultiplicativeRule, chi: RealCharacter, limit: int) -> DenseValueTable:
    """Multiplicative table of h = (mu*g) conv chi from its prime-power law.

    h(p^r) = chi(p)^(r-1) * (chi(p) - g(p)): zero wherever g matches chi,
    so h is supported on integers built from the exceptional primes.
    """
    if g.k_truncation is not None:
        raise ShapeError("deviation factor requires the untruncated g")
    spf = build_spf(limit)
    h = np.zeros(limit + 1, dtype=np.int64)
    h[1] = 1
    for n in range(2, limit + 1):
        p = int(spf.spf[n])
        m, r = n, 0
        while m % p == 0:
            m //= p
            r += 1
        cp = chi.value(p)
        local = (cp ** (r - 1)) * (cp - g.prime_value(p))
        h[n] = h[m] * local
    return DenseValueTable(1, limit, h[1:], label=f"dev[{g.label},{chi.label}]")
