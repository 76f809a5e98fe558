"""Right-hand sides of the certified inequalities and the check combinator.

The four coefficient functions are closed forms; the scale factor they
multiply is either a supremum-based functional of the function (one of the
four :class:`QVariant` cases) or the distance from an image point to the
boundary of the convex hull of the image domain.  ``check_bound`` packages
one comparison into a :class:`BoundReport`.
"""

from __future__ import annotations

import cmath
import enum
import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

from .errors import HypothesisViolationError, NumericalError
from .series import AnalyticFunction

#: Radial exhaustion schedule for suprema over the open disc, as fractions
#: of the domain radius.  The boundary circle is appended when every
#: declared singularity is strictly outside the closed disc.
SUP_SCHEDULE_EXPONENTS = range(3, 13)
ANGULAR_SAMPLES = 2048

_REFINE_TOL = 1e-9
_INCREMENT_WARN = 1e-7


class QVariant(enum.Enum):
    """Scale functionals: which supremum is compared against the value at a."""

    SUP_RE = "sup_re"            # sup Re f  - Re f(a)
    SUP_ABS_RE = "sup_abs_re"    # sup |Re f| - |Re f(a)|
    SUP_ABS = "sup_abs"          # sup |f|   - |f(a)|
    POSITIVE_RE = "positive_re"  # Re f(a), valid when Re f > 0 on the disc


@dataclass(frozen=True)
class QFunctionalResult:
    value: float
    accuracy: float
    circle_maxima: tuple[float, ...]
    warnings: tuple[str, ...] = ()


def _circle_max(f: AnalyticFunction, radius: float, transform: Callable[[complex], float]) -> float:
    """Maximum of transform(f) over a circle, base grid plus local refinement.

    The base grid can straddle a narrow peak (e.g. a pole just beyond the
    boundary), so the window around the argmax is repeatedly subsampled
    until the improvement stalls.
    """
    n = ANGULAR_SAMPLES
    step = 2.0 * math.pi / n
    best_theta = 0.0
    best = -math.inf
    for j in range(n):
        theta = j * step
        v = transform(f(radius * cmath.exp(1j * theta)))
        if v > best:
            best, best_theta = v, theta
    width = step
    for _ in range(60):
        improved = best
        lo = best_theta - width
        for j in range(33):
            theta = lo + (2.0 * width) * j / 32
            v = transform(f(radius * cmath.exp(1j * theta)))
            if v > improved:
                improved, best_theta = v, theta
        gain = improved - best
        best = improved
        width *= 0.25
        if gain <= _REFINE_TOL * (1.0 + abs(best)) and width < step * 1e-3:
            break
    return best


def _sup_transform(variant: QVariant) -> Callable[[complex], float]:
    if variant is QVariant.SUP_RE:
        return lambda w: w.real
    if variant is QVariant.SUP_ABS_RE:
        return lambda w: abs(w.real)
    if variant is QVariant.SUP_ABS:
        return abs
    raise ValueError(f"variant {variant} has no supremum part")


def default_sup_schedule(f: AnalyticFunction) -> list[float]:
    radii = [f.domain_radius * (1.0 - 2.0**-k) for k in SUP_SCHEDULE_EXPONENTS]
    boundary_safe = all(
        abs(s) > f.domain_radius * (1.0 + 1e-9) for s in f.singularities
    )
    if boundary_safe:
        radii.append(f.domain_radius)
    return radii


def q_functional_detailed(
    f: AnalyticFunction,
    a: complex,
    variant: QVariant,
    sup_schedule: Sequence[float] | None = None,
) -> QFunctionalResult:
    """Evaluate one scale functional with accuracy metadata.

    For the supremum variants the circle maxima must be nondecreasing along
    the radius schedule (maximum principle); a violation is raised as a
    numerical error.  Divergence across the schedule sets an
    ``infinite-functional`` warning instead of a value claim.
    """
    a = complex(a)
    if abs(a) >= f.domain_radius:
        raise HypothesisViolationError(f"evaluation point {a} outside the open disc")
    warnings: list[str] = []

    if variant is QVariant.POSITIVE_RE:
        radius = f.domain_radius * (1.0 - 2.0 ** -max(SUP_SCHEDULE_EXPONENTS))
        worst = min(
            f(radius * cmath.exp(2j * math.pi * k / ANGULAR_SAMPLES)).real
            for k in range(ANGULAR_SAMPLES)
        )
        if worst <= 0.0:
            raise HypothesisViolationError(
                f"positivity of the real part fails on the sampled disc (min {worst})"
            )
        value = f(a).real
        return QFunctionalResult(value=value, accuracy=0.0, circle_maxima=())

    schedule = sorted(sup_schedule) if sup_schedule else default_sup_schedule(f)
    transform = _sup_transform(variant)
    maxima: list[float] = []
    for radius in schedule:
        m = _circle_max(f, radius, transform)
        if maxima and m < maxima[-1] - 1e-10 * (1.0 + abs(m)):
            raise NumericalError(
                f"circle maxima decreased along the radius schedule: "
                f"{maxima[-1]} -> {m} at radius {radius}"
            )
        maxima.append(m)

    increments = [b - a_ for a_, b in zip(maxima, maxima[1:])]
    accuracy = increments[-1] if increments else 0.0
    if len(increments) >= 2:
        last_two = increments[-2:]
        if any(inc > _INCREMENT_WARN * (1.0 + abs(maxima[-1])) for inc in last_two):
            warnings.append("sup-not-converged")
    if len(increments) >= 3 and all(
        increments[k + 1] > 1.5 * increments[k] and increments[k + 1] > 0
        for k in range(len(increments) - 3, len(increments) - 1)
    ):
        warnings.append("infinite-functional")

    sup_part = maxima[-1]
    fa = f(a)
    if variant is QVariant.SUP_RE:
        value = sup_part - fa.real
    elif variant is QVariant.SUP_ABS_RE:
        value = sup_part - abs(fa.real)
    else:
        value = sup_part - abs(fa)
    return QFunctionalResult(
        value=value,
        accuracy=accuracy,
        circle_maxima=tuple(maxima),
        warnings=tuple(warnings),
    )


def q_functional(
    f: AnalyticFunction,
    a: complex,
    variant: QVariant,
    sup_schedule: Sequence[float] | None = None,
) -> float:
    return q_functional_detailed(f, a, variant, sup_schedule).value


def deriv_bound_coeff(n: int, R: float, r: float, r_a: float) -> float:
    """Derivative-growth coefficient ``2 n! R (R - r_a) / ((R-r)^(n+1) (R+r_a))``.

    Requires 0 <= r_a <= r < R and n >= 1; at r_a = 0 it reduces to
    ``2 n! R / (R - r)^(n+1)``.
    """
    if n < 1 or n != int(n):
        raise ValueError("n must be an integer >= 1")
    if not (0.0 <= r_a <= r < R):
        raise ValueError(f"need 0 <= r_a <= r < R, got r_a={r_a}, r={r}, R={R}")
    n = int(n)
    return 2.0 * math.factorial(n) * R * (R - r_a) / ((R - r) ** (n + 1) * (R + r_a))


def bohr_coeff(m: int, q: float, R: float, r: float) -> float:
    """Coefficient-sum coefficient ``2 r^m / (R^(m-1) (R^q - r^q)^(1/q))``.

    At m = q = 1 it equals 1 exactly when r = R/3 (the classical
    one-third radius).
    """
    if m < 1 or m != int(m):
        raise ValueError("m must be an integer >= 1")
    if not (q > 0.0):
        raise ValueError("q must be positive")
    if not (0.0 < r < R):
        raise ValueError(f"need 0 < r < R, got r={r}, R={R}")
    m = int(m)
    return 2.0 * r**m / (R ** (m - 1) * (R**q - r**q) ** (1.0 / q))


def recentered_bohr_coeff(R: float, d_a: float, r: float) -> float:
    """Recentered coefficient-sum coefficient ``2 R r / ((2R - d_a)(d_a - r))``.

    ``d_a`` is the distance from the expansion point to the boundary of the
    disc of holomorphy; at d_a = R this reduces to ``2r/(R - r)``.
    """
    if not (0.0 < r < d_a <= R):
        raise ValueError(f"need 0 < r < d_a <= R, got r={r}, d_a={d_a}, R={R}")
    return 2.0 * R * r / ((2.0 * R - d_a) * (d_a - r))


def increment_coeff(n: int, R: float, r: float) -> float:
    """Increment coefficient ``2 n! (R^(n+1) - (R-r)^(n+1)) / ((R-r)^(n+1) R^n)``.

    Defined for n >= 0 and 0 <= r < R; at n = 0 it reduces to ``2r/(R - r)``.
    """
    if n < 0 or n != int(n):
        raise ValueError("n must be a nonnegative integer")
    if not (0.0 <= r < R):
        raise ValueError(f"need 0 <= r < R, got r={r}, R={R}")
    n = int(n)
    return (
        2.0
        * math.factorial(n)
        * (R ** (n + 1) - (R - r) ** (n + 1))
        / ((R - r) ** (n + 1) * R**n)
    )


@dataclass(frozen=True)
class BoundReport:
    """One inequality comparison: lhs against rhs = coefficient * scale."""

    inequality_id: str
    lhs: float
    rhs: float
    ratio: float
    margin: float
    passed: bool
    parameters: dict = field(default_factory=dict)
    warnings: tuple[str, ...] = ()


def check_bound(
    inequality_id: str,
    lhs: float,
    rhs_coeff: float,
    scale: float,
    parameters: dict | None = None,
    tolerance: float = 1e-6,
    warnings: Sequence[str] = (),
) -> BoundReport:
    """Compare lhs <= rhs_coeff * scale with relative tolerance.

    A vanishing right side with a positive left side is a flagged failure
    rather than an exception, so corpus runs can report it as a row.
    """
    if rhs_coeff < 0.0 or scale < 0.0:
        raise ValueError("rhs_coeff and scale must be nonnegative")
    lhs = float(lhs)
    rhs = float(rhs_coeff) * float(scale)
    warn = list(warnings)
    if rhs > 0.0:
        ratio = lhs / rhs
    elif lhs == 0.0:
        ratio = 0.0
    else:
        ratio = math.inf
        warn.append("zero-rhs")
    passed = lhs <= rhs * (1.0 + tolerance) if rhs > 0.0 else lhs == 0.0
    return BoundReport(
        inequality_id=inequality_id,
        lhs=lhs,
        rhs=rhs,
        ratio=ratio,
        margin=rhs - lhs,
        passed=passed,
        parameters=dict(parameters or {}),
        warnings=tuple(warn),
    )
