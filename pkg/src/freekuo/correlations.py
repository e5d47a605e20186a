"""Finite-size correlation estimates and their convergence to the limit laws."""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

import mpmath

from .formulas import (
    bulk_asymptote,
    bulk_correlation,
    corner_correlation,
    flashlight_formula,
    flashlight_log,
)

# Above this x the corner ratio is evaluated through log-Gamma.
EXACT_X_MAX = int(os.environ.get("FREEKUO_EXACT_X_MAX", "300"))
DEFAULT_TOLERANCE = 0.05


def default_digits() -> int:
    return int(os.environ.get("FREEKUO_DIGITS", "50"))


@dataclass
class ConvergenceReport:
    """Deviations of a sequence from its target law over a parameter grid.

    ``verdict`` is true when the deviations never increase (up to the
    precision floor) and the last one is below ``tolerance``.
    """

    label: str
    grid: list[int]
    values: list
    deviations: list
    tolerance: float = DEFAULT_TOLERANCE
    digits: int = 50
    monotone: bool = field(init=False)
    verdict: bool = field(init=False)

    def __post_init__(self) -> None:
        floor = mpmath.mpf(10) ** (-(self.digits - 10))
        self.deviations = [mpmath.mpf(0) if d < floor else d for d in self.deviations]
        self.monotone = all(b <= a + floor for a, b in zip(self.deviations, self.deviations[1:]))
        last = self.deviations[-1] if self.deviations else 0
        self.verdict = self.monotone and last < self.tolerance

    def rows(self) -> list[dict]:
        return [
            {"point": g, "value": _fmt(v, self.digits), "deviation": mpmath.nstr(d, 6), "verdict": self.verdict}
            for g, v, d in zip(self.grid, self.values, self.deviations)
        ]


def _fmt(v, digits: int) -> str:
    if isinstance(v, Fraction):
        return f"{v.numerator}/{v.denominator}"
    if isinstance(v, int):
        return str(v)
    return mpmath.nstr(v, min(digits, 20))


def _to_mpf(v) -> mpmath.mpf:
    if isinstance(v, Fraction):
        return mpmath.mpf(v.numerator) / v.denominator
    return mpmath.mpf(v)


def corner_ratio(x: int, k: int, p: int, digits: int | None = None):
    """Ratio of dented to undented flashlight counts at the wedge corner.

    Exact ``Fraction`` for ``x <= EXACT_X_MAX``, an mpmath real above.
    """
    if min(k, p) < 0 or x < k + p:
        raise ValueError("corner ratio needs k, p >= 0 and x >= k + p")
    if x <= EXACT_X_MAX:
        return Fraction(flashlight_formula(x, x - k, k, p), flashlight_formula(x, x, 0, 0))
    digits = digits or default_digits()
    # log form wants a little slack for the cancellation between ~x^2 terms
    work = digits + 10
    with mpmath.workdps(work):
        val = mpmath.exp(flashlight_log(x, x - k, k, p, work) - flashlight_log(x, x, 0, 0, work))
    return val


def corner_convergence(k: int, p: int, x_grid: Sequence[int], digits: int | None = None,
                       tolerance: float = DEFAULT_TOLERANCE) -> ConvergenceReport:
    digits = digits or default_digits()
    grid = list(x_grid)
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be increasing")
    if grid and grid[0] < k + p:
        raise ValueError("grid must start at x >= k + p")
    with mpmath.workdps(digits):
        target = _to_mpf(corner_correlation(k, p))
        values, devs = [], []
        for x in grid:
            v = corner_ratio(x, k, p, digits)
            values.append(v)
            devs.append(abs(_to_mpf(v) / target - 1))
    return ConvergenceReport(f"corner k={k} p={p}", grid, values, devs, tolerance, digits)


def _log_bulk(k: int) -> mpmath.mpf:
    w = bulk_correlation(k)
    m = w.mantissa
    return mpmath.log(m.numerator) - mpmath.log(m.denominator) + w.pi_exp * mpmath.log(mpmath.pi)


def bulk_ratio_check(k_grid: Sequence[int], digits: int | None = None,
                     tolerance: float = DEFAULT_TOLERANCE) -> ConvergenceReport:
    digits = digits or default_digits()
    if digits < 15:
        raise ValueError("digits must be at least 15")
    grid = list(k_grid)
    if any(b <= a for a, b in zip(grid, grid[1:])):
        raise ValueError("grid must be increasing")
    if grid and grid[0] < 4:
        raise ValueError("bulk grid must start at k >= 4")
    values, devs = [], []
    with mpmath.workdps(digits):
        for k in grid:
            exact = bulk_correlation(k).to_mpf(digits)
            ratio = exact / bulk_asymptote(k, digits)
            values.append(exact)
            devs.append(abs(ratio - 1))
    return ConvergenceReport("bulk", grid, values, devs, tolerance, digits)


def log_asymptotics_table(k_grid: Sequence[int], digits: int | None = None,
                          tolerances: tuple[float, float] = (0.005, 0.02)) -> tuple[ConvergenceReport, ConvergenceReport]:
    """Reports for r1 (corner, p = 0) and r2 (quarter log of the bulk) against k^2 ln(sqrt3/4)."""
    digits = digits or default_digits()
    grid = list(k_grid)
    if any(k < 1 for k in grid):
        raise ValueError("log-asymptotics need k >= 1")
    r1s, r2s = [], []
    with mpmath.workdps(digits):
        base = mpmath.log(mpmath.sqrt(3) / 4)
        for k in grid:
            c = corner_correlation(k, 0)
            ln_c = mpmath.log(c.numerator) - mpmath.log(c.denominator)
            r1s.append(ln_c / (k * k * base))
            r2s.append(_log_bulk(k) / 4 / (k * k * base))
        d1 = [abs(r - 1) for r in r1s]
        d2 = [abs(r - 1) for r in r2s]
    return (
        ConvergenceReport("r1", grid, r1s, d1, tolerances[0], digits),
        ConvergenceReport("r2", grid, r2s, d2, tolerances[1], digits),
    )


def r1_closed_form(k: int) -> Fraction | mpmath.mpf:
    """``1 + (ln3/2 - ln2) / (k (ln3/2 - 2 ln2))``, the exact-exponent value of r1."""
    h3 = mpmath.log(3) / 2
    l2 = mpmath.log(2)
    return 1 + (h3 - l2) / (k * (h3 - 2 * l2))
