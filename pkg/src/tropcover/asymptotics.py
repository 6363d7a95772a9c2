"""Closed-form lower bounds for the witness families and growth probes.

The exact side is small: the snake-family bound and the chain-family
factorial bound, both plain integer arithmetic. The numeric side
evaluates the logarithmic ratios that compare those bounds with their
leading-order growth along parameter rays. Limits are never asserted;
a probe only reports whether |ratio - 1| stops increasing after the
first step, which is the strongest finite statement the slow
logarithmic convergence supports.

Log-factorials are computed through the log-gamma function at 40
decimal digits of working precision. Below a size threshold the same
quantity is recomputed from the exact integer factorial and the two
paths must agree to 1e-9 relative, guarding against precision loss.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from mpmath import mp, mpf

from .errors import DomainError, InvariantError

_DPS = 40
_EXACT_THRESHOLD = 20_000
_AGREEMENT = 1e-9

PROBE_KINDS = ("snake_fixed", "snake_joint", "combined")


def asymp2_bound(m: int, g: int) -> Fraction:
    """Exact lower bound (2g)!/((2*floor(g/m)+2)!)^m * (m!)^4 for the
    zigzag number of type (g, (1^(2m+1)), (1^(2m+1))) over 4m+2g
    points, realized by the snake family."""
    if m < 1:
        raise DomainError("need at least one inward tail")
    if g < 0:
        raise DomainError("genus must be non-negative")
    num = math.factorial(2 * g) * math.factorial(m) ** 4
    den = math.factorial(2 * (g // m) + 2) ** m
    return Fraction(num, den)


def factorial_bound(h: int, n0: int) -> int:
    """Exact lower bound floor((h-n0-1)/3)! for the number of zigzag
    covers of a ones-padded type (lam,1^h), realized by the chain
    family."""
    if h <= n0:
        raise DomainError(f"padding h must exceed n0 = {n0}")
    return math.factorial((h - n0 - 1) // 3)


def log_factorial(n: int) -> mpf:
    """ln(n!) via log-gamma at the module working precision."""
    if n < 0:
        raise DomainError("factorial argument must be non-negative")
    with mp.workdps(_DPS):
        return mp.loggamma(n + 1)


def log_factorial_exact(n: int) -> mpf:
    """ln(n!) from the exact integer factorial; slow for large n."""
    if n < 0:
        raise DomainError("factorial argument must be non-negative")
    with mp.workdps(_DPS):
        return mp.log(mpf(math.factorial(n)))


def log_factorial_agreement(n: int) -> float:
    """Relative difference between the two ln(n!) evaluation paths."""
    a = log_factorial(n)
    b = log_factorial_exact(n)
    if b == 0:
        return float(abs(a - b))
    return float(abs(a - b) / abs(b))


def _checked_log_factorial(n: int) -> mpf:
    value = log_factorial(n)
    if 0 < n <= _EXACT_THRESHOLD:
        rel = log_factorial_agreement(n)
        if rel > _AGREEMENT:
            raise InvariantError(
                f"log-factorial paths disagree at n={n}: relative {rel:.3e}"
            )
    return value


def snake_log_bound(m: int, g: int) -> mpf:
    """ln of the snake-family bound:
    ln(2g)! + 4 ln(m!) - m ln((2*floor(g/m)+2)!)."""
    if m < 1:
        raise DomainError("need at least one inward tail")
    if g < 0:
        raise DomainError("genus must be non-negative")
    with mp.workdps(_DPS):
        return (
            _checked_log_factorial(2 * g)
            + 4 * _checked_log_factorial(m)
            - m * _checked_log_factorial(2 * (g // m) + 2)
        )


def snake_ratio_fixed(m: int, g: int) -> float:
    """ln(snake bound) / (2g ln m): tends to 1 as g grows with m held
    fixed."""
    if m < 2:
        raise DomainError("ratio needs m at least 2")
    if g < 1:
        raise DomainError("ratio needs positive genus")
    with mp.workdps(_DPS):
        return float(snake_log_bound(m, g) / (2 * g * mp.log(m)))


def snake_ratio_joint(m: int, g: int) -> float:
    """ln(snake bound) / (2g ln m + 4m ln m): tends to 1 as g and m
    grow together."""
    if m < 2:
        raise DomainError("ratio needs m at least 2")
    if g < 1:
        raise DomainError("ratio needs positive genus")
    with mp.workdps(_DPS):
        return float(snake_log_bound(m, g) / ((2 * g + 4 * m) * mp.log(m)))


def s_ratio(g: int, h: int, m: int, n0: int = 0) -> float:
    """Growth ratio of the combined chain-and-snake family bound.

    Numerator: ln(2g)! + 4 ln(m-1)! - (m-1) ln((2*floor(g/(m-1))+2)!)
    + ln(floor((h-n0-1)/3)!). Denominator: 2g ln m + 4m ln m +
    (h/3) ln h. Tends to 1 when g, h, m all grow."""
    if m <= 1:
        raise DomainError("ratio needs m above 1")
    if g < 1:
        raise DomainError("ratio needs positive genus")
    if h <= n0 + 1:
        raise DomainError(f"padding h must exceed n0 + 1 = {n0 + 1}")
    with mp.workdps(_DPS):
        num = (
            _checked_log_factorial(2 * g)
            + 4 * _checked_log_factorial(m - 1)
            - (m - 1) * _checked_log_factorial(2 * (g // (m - 1)) + 2)
            + _checked_log_factorial((h - n0 - 1) // 3)
        )
        den = (2 * g + 4 * m) * mp.log(m) + mpf(h) / 3 * mp.log(h)
        return float(num / den)


@dataclass(frozen=True)
class ProbeTable:
    """Result of a limit probe: one row per ray point, in ray order.

    `rows` entries are (params..., ratio, abs_err) with abs_err =
    |ratio - 1|; `monotone` is True when abs_err never increases from
    the second row on."""

    kind: str
    header: tuple[str, ...]
    rows: tuple[tuple, ...]
    monotone: bool

    def to_csv(self) -> str:
        lines = [",".join(self.header)]
        for row in self.rows:
            lines.append(",".join(_csv_cell(x) for x in row))
        return "\n".join(lines) + "\n"


def _csv_cell(x) -> str:
    if isinstance(x, float):
        return repr(x)
    return str(x)


def limit_probe(kind: str, ray: Sequence[Sequence[int]], n0: int = 0) -> ProbeTable:
    """Evaluate one growth ratio along a ray of parameter points.

    kind 'snake_fixed' and 'snake_joint' take (m, g) points;
    'combined' takes (g, h, m) points. The ray must be strictly
    increasing as tuples. abs_err must be non-increasing from the
    second point on for the probe to count as monotone."""
    if kind not in PROBE_KINDS:
        raise DomainError(f"unknown probe kind {kind!r}; choose from {PROBE_KINDS}")
    points = [tuple(int(x) for x in p) for p in ray]
    if not points:
        raise DomainError("ray must contain at least one point")
    width = 2 if kind != "combined" else 3
    if any(len(p) != width for p in points):
        raise DomainError(f"probe kind {kind!r} takes {width}-tuples")
    for a, b in zip(points, points[1:]):
        if b <= a:
            raise DomainError("ray must be strictly increasing")

    if kind == "snake_fixed":
        header = ("m", "g", "ratio", "abs_err")
        values = [snake_ratio_fixed(m, g) for m, g in points]
    elif kind == "snake_joint":
        header = ("m", "g", "ratio", "abs_err")
        values = [snake_ratio_joint(m, g) for m, g in points]
    else:
        header = ("g", "h", "m", "ratio", "abs_err")
        values = [s_ratio(g, h, m, n0) for g, h, m in points]

    errs = [abs(v - 1.0) for v in values]
    rows = tuple(p + (v, e) for p, v, e in zip(points, values, errs))
    monotone = all(e2 <= e1 for e1, e2 in zip(errs[1:], errs[2:])) if len(errs) > 2 else True
    return ProbeTable(kind=kind, header=header, rows=rows, monotone=monotone)
