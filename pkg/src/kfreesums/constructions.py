"""Modified characters, deviation budgets, and the pretentious distance.

The central object is a completely multiplicative g: N -> {-1, +1} built
from a real non-principal character chi by (a) assigning +-1 at the
primes dividing the modulus, where chi vanishes, and (b) optionally
flipping the sign at finitely many further primes.  The deviation sum

    S(x) = sum_{p<=x} |1 - g(p) chi(p)|

then counts 2 per flipped prime and 1 per modulus prime, and the
verifier checks S(x) against a concrete budget C * x^(1/k) *
exp(-c sqrt(log x)) over a finite window.
"""

from __future__ import annotations

import bisect
import json
import math
from dataclasses import dataclass

from .characters import RealCharacter, build_real_character
from .errors import PlanError, RangeError
from .rules import MultiplicativeRule
from .sieve import sieve_primes
from .summatory import PartialSumSeries, checkpoint_schedule, direct_summatory


@dataclass(frozen=True)
class ModificationPlan:
    """Where a completely multiplicative g deviates from its base character.

    Attributes:
        character: The base chi (modulus q).
        flipped_primes: Sorted primes p, coprime to q, where g(p) = -chi(p).
        unit_on_q_divisors: Value of g at primes p | q: +1 when True (the
            bounded-growth completion), -1 when False.
    """

    character: RealCharacter
    flipped_primes: tuple[int, ...] = ()
    unit_on_q_divisors: bool = True

    def __post_init__(self) -> None:
        q = self.character.modulus
        flips = tuple(sorted(set(int(p) for p in self.flipped_primes)))
        object.__setattr__(self, "flipped_primes", flips)
        for p in flips:
            if q % p == 0:
                raise PlanError(f"flipped prime {p} divides the modulus {q}")
            if self.character.value(p) == 0:
                raise PlanError(f"chi({p}) = 0: cannot flip a vanishing prime")
            if not _is_prime(p):
                raise PlanError(f"flip index {p} is not prime")

    def overrides(self) -> dict[int, int]:
        out = {p: (1 if self.unit_on_q_divisors else -1)
               for p in self.character.q_divisor_primes()}
        for p in self.flipped_primes:
            out[p] = -self.character.value(p)
        return out

    def to_json(self) -> str:
        return json.dumps(
            {
                "modulus": self.character.modulus,
                "flipped_primes": list(self.flipped_primes),
                "unit_on_q_divisors": self.unit_on_q_divisors,
            },
            sort_keys=True,
        )

    @classmethod
    def from_json(cls, text: str) -> "ModificationPlan":
        data = json.loads(text)
        chi = build_real_character(int(data["modulus"]))
        return cls(
            character=chi,
            flipped_primes=tuple(data.get("flipped_primes", ())),
            unit_on_q_divisors=bool(data.get("unit_on_q_divisors", True)),
        )


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    p = 2
    while p * p <= n:
        if n % p == 0:
            return False
        p += 1
    return True


def completed_character(chi: RealCharacter) -> MultiplicativeRule:
    """g with g(n) = chi(n) for gcd(n, q) = 1 and g(p) = +1 for p | q.

    The completion is completely multiplicative with values +-1 at every
    prime, and its partial sums grow at most like a power of log x.
    """
    return modified_character(ModificationPlan(character=chi))


def modified_character(plan: ModificationPlan) -> MultiplicativeRule:
    """The completely multiplicative g encoded by a modification plan."""
    tag = "+".join(str(p) for p in plan.flipped_primes)
    label = f"g[{plan.character.label}" + (f";flip {tag}]" if tag else "]")
    return MultiplicativeRule(
        base=plan.character, overrides=plan.overrides(), label=label
    )


def deviation_sum(g: MultiplicativeRule, chi: RealCharacter, x: int) -> int:
    """S(x) = sum_{p<=x} |1 - g(p) chi(p)|, exactly.

    Every prime where g agrees with chi contributes 0, so only the rule's
    override primes and the modulus primes can contribute; the sum is
    evaluated from those finite sets without touching other primes.
    """
    total = 0
    seen = set()
    for p in g.overrides:
        if p <= x:
            total += abs(1 - g.overrides[p] * chi.value(p))
            seen.add(p)
    for p in chi.q_divisor_primes():
        if p <= x and p not in seen:
            total += abs(1 - g.prime_value(p) * chi.value(p))
    return total


@dataclass(frozen=True)
class DeviationBudget:
    """Concrete budget C * x^(1/k) * exp(-c sqrt(log x)) with start point x0."""

    big_c: float = 2.0
    small_c: float = 1.0
    k: int = 2
    x0: int = 10

    def __post_init__(self) -> None:
        if self.big_c <= 0 or self.small_c <= 0:
            raise RangeError("budget constants must be positive")
        if self.k < 2:
            raise RangeError("budget exponent k must be >= 2")
        if self.x0 < 2:
            raise RangeError("budget start x0 must be >= 2")

    def value(self, x: float) -> float:
        return self.big_c * x ** (1.0 / self.k) * math.exp(-self.small_c * math.sqrt(math.log(x)))

    def valley(self) -> float:
        """The unique interior minimum of the budget curve (x where the
        decreasing exp factor hands over to the increasing power)."""
        return math.exp((self.small_c * self.k / 2.0) ** 2)


@dataclass(frozen=True)
class BudgetRow:
    x: int
    s: int
    budget: float
    passed: bool


@dataclass(frozen=True)
class BudgetReport:
    """Per-checkpoint budget comparison plus the overall verdict.

    `rows` follow the checkpoint schedule; `passed` additionally accounts
    for every point where S jumps (the plan's own primes) and the budget
    curve's interior minimum, so a violation between checkpoints cannot
    hide.
    """

    rows: list[BudgetRow]
    passed: bool
    first_violation: tuple[int, int, float] | None  # (x, S, budget)

    def to_csv(self, path) -> None:
        from .reporting import write_csv

        write_csv(
            path,
            ["x", "S", "budget", "pass"],
            [(r.x, r.s, r.budget, "true" if r.passed else "false") for r in self.rows],
        )


def _binding_points(lo: int, hi: int, budget: DeviationBudget, steps) -> list[int]:
    """Integer xs in [lo, hi] where S(x) <= budget(x) can be tightest.

    S is a step function jumping only at `steps` and the budget curve is
    unimodal (a single interior valley), so on each constant-S stretch the
    constraint binds at the stretch edges or at the valley; checking those
    points decides the whole window.
    """
    pts = {lo, hi}
    valley = budget.valley()
    for cand in (math.floor(valley), math.ceil(valley)):
        if lo <= cand <= hi:
            pts.add(int(cand))
    for s in steps:
        for x in (s, s - 1):
            if lo <= x <= hi:
                pts.add(x)
    return sorted(pts)


def verify_deviation_budget(
    g: MultiplicativeRule,
    chi: RealCharacter,
    budget: DeviationBudget,
    limit: int,
    schedule: list[int] | None = None,
) -> BudgetReport:
    """Check S(x) <= budget(x) for integer x in [x0, limit].

    Reports one row per schedule checkpoint; the verdict additionally
    scans every binding point (jump points of S, stretch edges, the budget
    valley), so a violation between checkpoints cannot hide.  Violations
    are report content, never exceptions.
    """
    if limit < budget.x0:
        raise RangeError(f"limit {limit} below budget start x0={budget.x0}")
    if schedule is None:
        schedule = checkpoint_schedule(limit)
    xs = sorted({x for x in schedule if budget.x0 <= x <= limit} | {budget.x0, limit})

    steps = sorted(set(list(g.overrides) + chi.q_divisor_primes()))
    first_violation = None
    for x in _binding_points(budget.x0, limit, budget, steps):
        s = deviation_sum(g, chi, x)
        b = budget.value(x)
        if s > b:
            first_violation = (x, s, b)
            break

    rows = []
    for x in xs:
        s = deviation_sum(g, chi, x)
        b = budget.value(x)
        rows.append(BudgetRow(x=x, s=s, budget=b, passed=s <= b))
    return BudgetReport(rows=rows, passed=first_violation is None,
                        first_violation=first_violation)


def greedy_plan(chi: RealCharacter, budget: DeviationBudget, limit: int) -> ModificationPlan:
    """Flip primes in increasing order while the budget keeps holding.

    A candidate p is accepted only if, with it included, S(x) stays within
    the budget at every x in [max(p, x0), limit]; since S is constant there
    apart from modulus-prime steps below p, it suffices to compare against
    the budget minimum over that window (endpoints and the interior
    valley).  The forced modulus-prime contribution is never removable, so
    the resulting plan passes the verifier exactly when that forced part
    does.
    """
    q_primes = chi.q_divisor_primes()
    q_contrib = sorted(p for p in q_primes if p <= limit)

    def s_at(x: int, flips: int) -> int:
        return 2 * flips + bisect.bisect_right(q_contrib, x)

    def window_ok(lo: int, flips: int) -> bool:
        return all(
            s_at(x, flips) <= budget.value(x)
            for x in _binding_points(lo, limit, budget, q_contrib)
        )

    flips: list[int] = []
    for p in sieve_primes(limit):
        p = int(p)
        if chi.modulus % p == 0:
            continue
        lo = max(p, budget.x0)
        if lo > limit:
            break
        if window_ok(lo, len(flips) + 1):
            flips.append(p)
    return ModificationPlan(character=chi, flipped_primes=tuple(flips))


def pretentious_distance(f: MultiplicativeRule, g: MultiplicativeRule, x: int) -> float:
    """D(f, g; x) = (sum_{p<=x} (1 - f(p) g(p)) / p)^(1/2) for real-valued rules.

    Accumulated with exact compensated summation (math.fsum); a rule pair
    agreeing at every prime gives exactly 0.0.
    """
    if x < 2:
        return 0.0
    terms = []
    for p in sieve_primes(x):
        p = int(p)
        corr = 1 - f.prime_value(p) * g.prime_value(p)
        if corr:
            terms.append(corr / p)
    return math.sqrt(math.fsum(terms))


@dataclass(frozen=True)
class GrowthReport:
    """|M_g(x)| / (log x)^omega(q) along a checkpoint schedule."""

    label: str
    omega_q: int
    series: PartialSumSeries
    ratios: list[tuple[int, float]]
    max_ratio: float
    max_ratio_at: int
    limit_bound: float

    def to_csv(self, path) -> None:
        from .reporting import write_csv

        write_csv(path, ["x", "M", "ratio"], [
            (x, m, r)
            for (x, m), (_, r) in zip(self.series.checkpoints, self.ratios)
        ])


def growth_report(
    g: MultiplicativeRule,
    chi: RealCharacter,
    limit: int,
    schedule: list[int] | None = None,
    x_min: int = 10**3,
    threads: int = 1,
) -> GrowthReport:
    """Track the log-power growth of M_g for the completed character g.

    The reported ceiling is max_y |M_chi(y)| / (omega(q)! * prod_{p|q} log p),
    the limiting bound for the completion's normalised partial sums.
    """
    q_primes = chi.q_divisor_primes()
    omega = len(q_primes)
    series = direct_summatory(g, limit, schedule=schedule, threads=threads)
    ratios = []
    best, best_at = 0.0, 0
    for x, m in series.checkpoints:
        r = abs(m) / (math.log(x) ** omega) if x >= 2 else float(abs(m))
        ratios.append((x, r))
        if x >= x_min and r > best:
            best, best_at = r, x
    bound = chi.max_abs_partial_sum() / (
        math.factorial(omega) * math.prod(math.log(p) for p in q_primes)
    )
    return GrowthReport(
        label=g.label, omega_q=omega, series=series, ratios=ratios,
        max_ratio=best, max_ratio_at=best_at, limit_bound=bound,
    )
