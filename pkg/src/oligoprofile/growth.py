"""Growth diagnostics for profile sequences.

Exact integer sequences (binary tree counts, Fibonacci) plus float-level
estimators for the exponential growth rate of a sequence, and the table of
named constants the package reproduces empirically.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import DomainError


@lru_cache(maxsize=None)
def tree_count(n: int) -> int:
    """Number of unordered rooted binary trees with n leaves.

    t_1 = 1 and t_n sums t_i * t_{n-i} over i < n/2, plus the unordered
    pairs t_{n/2}(t_{n/2}+1)/2 when n is even. Exact integers throughout.
    """
    if n < 1:
        raise DomainError(f"tree_count needs n >= 1, got {n}")
    if n == 1:
        return 1
    total = sum(tree_count(i) * tree_count(n - i) for i in range(1, (n + 1) // 2))
    if n % 2 == 0:
        h = tree_count(n // 2)
        total += h * (h + 1) // 2
    return total


def fibonacci(n: int) -> int:
    """F_1 = F_2 = 1, F_n = F_{n-1} + F_{n-2}."""
    if n < 1:
        raise DomainError(f"fibonacci needs n >= 1, got {n}")
    a, b = 1, 1
    for _ in range(n - 1):
        a, b = b, a + b
    return a


@dataclass(frozen=True)
class GrowthReport:
    """Ratio and root diagnostics for a positive integer sequence.

    values[i] is the term at index i+1. limit_estimate extrapolates the
    consecutive-ratio sequence one step: for ratios of the form
    L*(1 - c/n) the correction n*r_n - (n-1)*r_{n-1} returns L exactly,
    and on constant ratios it reduces to the last ratio. nth_roots give
    the cross-check values[n]**(1/n).
    """

    values: tuple[int, ...]
    nth_roots: tuple[float, ...]
    ratios: tuple[float, ...]
    limit_estimate: float
    monotone: bool

    def to_json_dict(self) -> dict:
        return {
            "values": [str(v) for v in self.values],
            "nth_roots": list(self.nth_roots),
            "ratios": list(self.ratios),
            "limit_estimate": self.limit_estimate,
            "monotone": self.monotone,
        }


def growth_estimate(values: list[int] | tuple[int, ...]) -> GrowthReport:
    vals = tuple(int(v) for v in values)
    if len(vals) < 3:
        raise DomainError(f"growth_estimate needs at least 3 values, got {len(vals)}")
    if any(v <= 0 for v in vals):
        raise DomainError("growth_estimate needs strictly positive values")
    roots = tuple(v ** (1.0 / (i + 1)) for i, v in enumerate(vals))
    ratios = tuple(b / a for a, b in zip(vals, vals[1:]))
    m = len(vals)
    limit = m * ratios[-1] - (m - 1) * ratios[-2]
    return GrowthReport(
        values=vals,
        nth_roots=roots,
        ratios=ratios,
        limit_estimate=limit,
        monotone=all(a <= b for a, b in zip(vals, vals[1:])),
    )


_K_GRID = tuple(10 ** e for e in range(7))


def lower_bound_check(values, c: float, degree: int) -> bool:
    """Is f_n >= c**n / (K*n**degree + K) for some K on the powers-of-10 grid up to 1e6?

    Comparison runs in log space so huge exact terms stay usable.
    """
    import math

    vals = [int(v) for v in values]
    if any(v <= 0 for v in vals):
        raise DomainError("lower_bound_check needs strictly positive values")
    if c <= 0:
        raise DomainError(f"growth base must be positive, got {c}")
    logc = math.log(c)
    for kk in _K_GRID:
        ok = True
        for i, v in enumerate(vals):
            n = i + 1
            lhs = math.log(v) + math.log(kk * n ** degree + kk)
            if lhs < n * logc:
                ok = False
                break
        if ok:
            return True
    return False


@dataclass(frozen=True)
class NamedConstant:
    key: str
    value: float
    note: str


GOLDEN_RATIO = (1 + 5 ** 0.5) / 2

CONSTANTS: tuple[NamedConstant, ...] = (
    NamedConstant("primitive_base", 2 ** 0.2, "2**(1/5), classical lower bound base for primitive profiles"),
    NamedConstant("tournament_base", 1.324, "improved general lower bound base via tournaments"),
    NamedConstant("tree_sqrt_base", 1.576, "square root of the binary tree growth constant"),
    NamedConstant("golden_ratio", GOLDEN_RATIO, "Fibonacci growth, realised by a fibered order with blocks of 2"),
    NamedConstant("local_order_ceiling", 2.0, "growth base no primitive bound can exceed; a local order sits near it"),
    NamedConstant("tree_growth", 2.483, "limit of t_{n+1}/t_n for binary tree counts"),
)


def constants_table() -> tuple[NamedConstant, ...]:
    return CONSTANTS


def ratio_table(values) -> list[tuple[int, float]]:
    """Gnuplot-ready (n, ratio) rows: ratio at n is values[n]/values[n-1]."""
    vals = [int(v) for v in values]
    return [(i + 2, b / a) for i, (a, b) in enumerate(zip(vals, vals[1:]))]
