"""Extremal families and sharpness sweeps.

Two families witness the tightness of the coefficients:

* the pole family ``z -> pole/(z - pole) + |pole|^2/(|pole|^2 - R^2)`` with
  the pole just outside the disc.  Its image of the boundary circle is a
  circle centered at the origin, so its sup-modulus is known in closed form
  and the bound ratio approaches 1 as the pole slides toward the boundary;
* the crescent map: the inverse of (reciprocal, vertical shift, exponential,
  translation), taking a disc around 0 onto the region between two
  internally tangent discs.  Its Taylor coefficients come from inverting the
  logarithmic denominator series and are cross-checked against contour
  quadrature.

Sweeps drive these families along parameter schedules and report the ratio
of each certified bound to its left side.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

from .bounds import (
    QVariant,
    bohr_coeff,
    deriv_bound_coeff,
    increment_coeff,
    q_functional_detailed,
)
from .errors import DomainValidityError, HypothesisViolationError, NumericalError, PhaseUndefinedError
from .geometry import CrescentDomain, Disc, contains, dist_to_hull_boundary
from .series import (
    DEFAULT_ORDER,
    AnalyticFunction,
    PowerSeries,
    cauchy_derivative,
    series_from_coefficients,
)


@dataclass(frozen=True)
class PoleParams:
    """Pole location (strictly outside the disc) and disc radius."""

    pole: complex
    radius: float

    def __post_init__(self) -> None:
        if not (abs(self.pole) > self.radius > 0.0):
            raise ValueError("need |pole| > radius > 0")
        object.__setattr__(self, "pole", complex(self.pole))
        object.__setattr__(self, "radius", float(self.radius))


def pole_extremal(pole: complex, radius: float) -> AnalyticFunction:
    """Member of the pole family on the disc of the given radius.

    The additive constant ``|pole|^2/(|pole|^2 - R^2)`` recenters the image
    of the boundary circle at the origin; it blows up as the pole approaches
    the boundary while the pole term stays bounded away from it, which is
    what drives the bound ratios toward 1 along the approach schedule.
    """
    params = PoleParams(pole=pole, radius=radius)
    xi, R = params.pole, params.radius
    shift = abs(xi) ** 2 / (abs(xi) ** 2 - R**2)

    def evaluator(z: complex) -> complex:
        return xi / (z - xi) + shift

    def factory(order: int) -> PowerSeries:
        # xi/(z - xi) = -1/(1 - z/xi) = -sum (z/xi)^n.
        coeffs = [complex(shift - 1.0)] + [-(xi ** -n) for n in range(1, order + 1)]
        ratio = R / abs(xi)
        tail = ratio ** (order + 1) / (1.0 - ratio)
        return series_from_coefficients(coeffs, validity_radius=R, tail_bound=tail)

    return AnalyticFunction(
        evaluator=evaluator,
        domain_radius=R,
        singularities=(xi,),
        label=f"pole_extremal(pole={xi}, R={R})",
        series_factory=factory,
    )


@dataclass(frozen=True)
class AffineTransform:
    """Rotation by ``rotation`` radians, scaling by ``scaling``, then shift."""

    scaling: float
    offset: complex
    rotation: float

    def __post_init__(self) -> None:
        if not (self.scaling > 0.0):
            raise ValueError("scaling must be positive")
        object.__setattr__(self, "offset", complex(self.offset))
        object.__setattr__(self, "rotation", float(self.rotation))


def apply_transform(f: AnalyticFunction, t: AffineTransform) -> AnalyticFunction:
    """``z -> e^{i rotation} * scaling * f(z) + offset``; singularities kept."""
    phase = cmath.exp(1j * t.rotation)

    def evaluator(z: complex) -> complex:
        return phase * t.scaling * f.evaluator(z) + t.offset

    factory = None
    if f.series_factory is not None:
        base_factory = f.series_factory

        def factory(order: int) -> PowerSeries:
            base = base_factory(order)
            coeffs = [phase * t.scaling * c for c in base.coeffs]
            coeffs[0] += t.offset
            tail = None if base.tail_bound is None else t.scaling * base.tail_bound
            return PowerSeries(
                center=base.center,
                validity_radius=base.validity_radius,
                coeffs=tuple(coeffs),
                tail_bound=tail,
            )

    return AnalyticFunction(
        evaluator=evaluator,
        domain_radius=f.domain_radius,
        singularities=f.singularities,
        label=f"affine({f.label})",
        series_factory=factory,
    )


def choose_phase(w: complex, direction: complex) -> float:
    """Rotation angle phi making ``e^{i phi} w`` a positive multiple of direction."""
    w = complex(w)
    direction = complex(direction)
    if w == 0:
        raise PhaseUndefinedError("cannot align the zero vector")
    if direction == 0:
        raise PhaseUndefinedError("alignment direction must be nonzero")
    return cmath.phase(direction / w)


@dataclass(frozen=True)
class CrescentParams:
    """Parameters of the crescent map.

    ``disc_scale`` fixes the geometry: outer disc of radius ``2*disc_scale``
    centered at ``2i*disc_scale``, removed disc of radius ``disc_scale``
    centered at ``i*disc_scale`` (tangent at the origin).  The complex
    ``halfplane_shift`` (lower half-plane) translates the intermediate upper
    half-plane; the expansion disc of the map has radius
    ``|halfplane_shift|``.
    """

    disc_scale: float
    halfplane_shift: complex

    def __post_init__(self) -> None:
        a = float(self.disc_scale)
        p = complex(self.halfplane_shift)
        if not (a > 0.0):
            raise ValueError("disc_scale must be positive")
        if not (p.imag < 0.0):
            raise ValueError("halfplane_shift must have negative imaginary part")
        # The logarithm branch cut {shift + t : t <= 0} must stay outside the
        # open expansion disc, which for a leftward horizontal ray means a
        # nonpositive real part.
        if p.real > 1e-12 * abs(p):
            raise ValueError(
                "halfplane_shift with positive real part puts the branch cut "
                "inside the expansion disc"
            )
        # The inverted-denominator zero of the analytic continuation sits at
        # shift + 1; it must stay outside the closed expansion disc.
        if not (abs(p + 1.0) > abs(p)):
            raise ValueError("need |halfplane_shift + 1| > |halfplane_shift|")
        object.__setattr__(self, "disc_scale", a)
        object.__setattr__(self, "halfplane_shift", p)

    @property
    def expansion_radius(self) -> float:
        return abs(self.halfplane_shift)


def crescent_region(disc_scale: float) -> CrescentDomain:
    """Image region of the crescent map: outer disc minus tangent inner disc."""
    a = float(disc_scale)
    return CrescentDomain(
        outer=Disc(center=2j * a, radius=2.0 * a),
        inner=Disc(center=1j * a, radius=a),
    )


def _crescent_denominator_coeffs(params: CrescentParams, order: int) -> list[complex]:
    """Series of ``log(w - shift)/(4 a pi) - i/(2a)`` around 0.

    ``log(w - shift) = Log(-shift) - sum_{n>=1} (w/shift)^n / n`` on the
    expansion disc (principal branch on both sides once the cut stays
    clear of the disc).
    """
    a, p = params.disc_scale, params.halfplane_shift
    four_a_pi = 4.0 * a * math.pi
    coeffs = [cmath.log(-p) / four_a_pi - 1j / (2.0 * a)]
    for n in range(1, order + 1):
        coeffs.append(-1.0 / (four_a_pi * n * p**n))
    return coeffs


def crescent_map(params: CrescentParams, validate_image: bool = True) -> AnalyticFunction:
    """The conformal map from the expansion disc into the crescent region.

    Built as the inverse of the chain reciprocal -> vertical shift ->
    exponential -> translation; uses the principal logarithm throughout.
    Construction validates (by a 1000-point grid) that sampled images land
    inside the crescent region.
    """
    a, p = params.disc_scale, params.halfplane_shift
    R = params.expansion_radius
    four_a_pi = 4.0 * a * math.pi

    def evaluator(w: complex) -> complex:
        den = cmath.log(w - p) / four_a_pi - 1j / (2.0 * a)
        if abs(den) < 1e-12:
            raise NumericalError(f"denominator vanished at {w}; invalid parameters")
        return 1.0 / den

    def factory(order: int) -> PowerSeries:
        return crescent_coefficients(params, order)

    f = AnalyticFunction(
        evaluator=evaluator,
        domain_radius=R,
        singularities=(p, p + 1.0),
        label=f"crescent_map(a={a}, shift={p})",
        series_factory=factory,
    )
    if validate_image:
        region = crescent_region(a)
        tol = 1e-9 * a
        for i in range(5):
            radius = R * (0.15 + 0.2 * i)
            for k in range(200):
                w = radius * cmath.exp(2j * math.pi * k / 200)
                image = f(w)
                if not contains(region, image, tol=tol):
                    raise HypothesisViolationError(
                        f"image {image} of {w} left the crescent region"
                    )
    return f


def crescent_coefficients(params: CrescentParams, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Taylor coefficients of the crescent map around 0.

    The denominator series is inverted with the division recurrence; the
    result therefore carries the exact leading coefficients of the map.  The
    tail bound comes from a sampled max-modulus envelope of the map itself.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    R = params.expansion_radius
    den = series_from_coefficients(
        _crescent_denominator_coeffs(params, order),
        validity_radius=R,
        tail_bound=None,
    )
    inv = den.reciprocal()

    plain = crescent_map(params, validate_image=False)
    sigma = 0.945 * R
    m_sigma = max(
        abs(plain(sigma * cmath.exp(2j * math.pi * k / 1024))) for k in range(1024)
    )
    rho_w = min(0.92 * R, inv.validity_radius)
    x = rho_w / sigma
    tail = m_sigma * x ** (order + 1) / (1.0 - x)

    c0_direct = plain(0.0)
    if abs(inv.coeffs[0] - c0_direct) > 1e-10 * (1.0 + abs(c0_direct)):
        raise NumericalError(
            f"series constant term {inv.coeffs[0]} disagrees with direct value {c0_direct}"
        )
    return PowerSeries(
        center=0.0,
        validity_radius=rho_w,
        coeffs=inv.coeffs,
        tail_bound=tail,
    )


def coefficient_magnitude_estimate(params: CrescentParams, n: int) -> float:
    """Simplified geometric-decay estimate ``|4 a pi / (shift^n (Log(-shift) - i/(2a)))|``.

    This collapses the full division recurrence to a single-term closed form.
    It is emitted alongside the recurrence values in the comparison report;
    the recurrence is the authoritative route.
    """
    if n < 1:
        raise ValueError("estimate defined for n >= 1")
    a, p = params.disc_scale, params.halfplane_shift
    return abs(4.0 * a * math.pi / (p**n * (cmath.log(-p) - 1j / (2.0 * a))))


@dataclass(frozen=True)
class SweepRow:
    """One row of a sharpness table: parameters, both sides, and the ratio."""

    family: str
    n: int | None
    m: int | None
    q: float | None
    R: float
    r: float
    r_a: float | None
    parameter: complex
    lhs: float
    scale: float
    rhs_coeff: float
    ratio: float
    warnings: tuple[str, ...] = ()


def sharpness_sweep_deriv(
    n: int,
    R: float,
    r: float,
    r_a: float,
    schedule: Sequence[float],
    use_dist_scale: bool = False,
) -> list[SweepRow]:
    """Bound ratios for the derivative estimate along a pole-approach schedule.

    The evaluation point sits at ``-r`` and the comparison point at ``-r_a``
    on the negative real axis with the pole at ``rho > R`` on the positive
    axis.  ``use_dist_scale`` routes the scale through the image-disc
    geometry (distance from the image of the comparison point to the image
    circle) instead of the sup-modulus functional; the two agree because the
    hull of the image disc is the disc itself.

    Rows are sorted by descending pole modulus, so ratios increase down the
    table as the pole approaches the boundary.
    """
    if any(s <= 1.0 for s in schedule):
        raise ValueError("schedule entries must be ratios > 1")
    if not (0.0 <= r_a <= r < R):
        raise ValueError("need 0 <= r_a <= r < R")
    rows = []
    for ratio_to_R in sorted(schedule, reverse=True):
        rho = ratio_to_R * R
        g = pole_extremal(pole=rho, radius=R)
        z, a = -r, -r_a
        warnings: list[str] = []
        try:
            lhs = abs(cauchy_derivative(g, z, n))
        except NumericalError:
            rows.append(
                SweepRow(
                    family="pole",
                    n=n, m=None, q=None, R=R, r=r, r_a=r_a,
                    parameter=complex(rho),
                    lhs=math.nan, scale=math.nan, rhs_coeff=math.nan,
                    ratio=math.nan, warnings=("quadrature-failed",),
                )
            )
            continue
        detail = q_functional_detailed(g, a, QVariant.SUP_ABS)
        warnings.extend(detail.warnings)
        if use_dist_scale:
            beta = detail.value + abs(g(a))  # sup |g| recovered from the functional
            scale = dist_to_hull_boundary(g(a), Disc(center=0.0, radius=beta)).distance
        else:
            scale = detail.value
        coeff = deriv_bound_coeff(n, R, r, r_a)
        rows.append(
            SweepRow(
                family="pole",
                n=n, m=None, q=None, R=R, r=r, r_a=r_a,
                parameter=complex(rho),
                lhs=lhs, scale=scale, rhs_coeff=coeff,
                ratio=lhs / (coeff * scale),
                warnings=tuple(warnings),
            )
        )
    return rows


@dataclass(frozen=True)
class BohrSweepResult:
    """Empirical lower bound for the best coefficient-sum constant."""

    lower_bound: float
    theoretical_coeff: float
    rows: tuple[SweepRow, ...]


def sharpness_sweep_bohr(
    m: int,
    q: float,
    r_fraction: float,
    params: CrescentParams,
    order: int = DEFAULT_ORDER,
) -> BohrSweepResult:
    """Empirical lower bound for the best constant from the crescent map.

    The left side is the q-power coefficient sum of the crescent map at
    radius ``r_fraction * expansion_radius``; the scale is the distance from
    the image of 0 to the hull boundary of the crescent region.  The ratio
    of the empirical lower bound to the closed-form coefficient is the
    sharpness-gap diagnostic for this single map.
    """
    if not (0.0 < r_fraction < 1.0):
        raise ValueError("r_fraction must be in (0, 1)")
    R = params.expansion_radius
    r = r_fraction * R
    series = crescent_coefficients(params, order)
    if r >= series.validity_radius:
        raise DomainValidityError(
            f"radius {r} is outside the series working radius {series.validity_radius}"
        )
    tail = series.tail_q_sum(r, m, q)
    region = crescent_region(params.disc_scale)
    scale = dist_to_hull_boundary(series.coeffs[0], region).distance
    lower = tail.value / scale
    coeff = bohr_coeff(m, q, R, r)
    row = SweepRow(
        family="crescent",
        n=None, m=m, q=q, R=R, r=r, r_a=None,
        parameter=params.halfplane_shift,
        lhs=tail.value, scale=scale, rhs_coeff=coeff,
        ratio=lower / coeff,
        warnings=tail.warnings,
    )
    return BohrSweepResult(lower_bound=lower, theoretical_coeff=coeff, rows=(row,))


def sharpness_sweep_increment(
    n: int,
    R: float,
    r: float,
    schedule: Sequence[float],
) -> list[SweepRow]:
    """Bound ratios for the derivative-increment estimate over the pole family.

    No family is claimed extremal for this bound; the pole family is reused
    exploratorily with the same geometry as the derivative sweep, and the
    resulting table is recorded as a regression fixture only.
    """
    if any(s <= 1.0 for s in schedule):
        raise ValueError("schedule entries must be ratios > 1")
    if not (0.0 < r < R):
        raise ValueError("need 0 < r < R for a nonzero increment")
    rows = []
    for ratio_to_R in sorted(schedule, reverse=True):
        rho = ratio_to_R * R
        g = pole_extremal(pole=rho, radius=R)
        z = -r
        lhs = abs(cauchy_derivative(g, z, n) - cauchy_derivative(g, 0.0, n))
        detail = q_functional_detailed(g, 0.0, QVariant.SUP_ABS)
        coeff = increment_coeff(n, R, r)
        rows.append(
            SweepRow(
                family="pole",
                n=n, m=None, q=None, R=R, r=r, r_a=0.0,
                parameter=complex(rho),
                lhs=lhs, scale=detail.value, rhs_coeff=coeff,
                ratio=lhs / (coeff * detail.value),
                warnings=tuple(detail.warnings),
            )
        )
    return rows
