"""Truncated complex power series with two independent differentiation routes.

A :class:`PowerSeries` stores Taylor coefficients around a center together
with a working radius and, when known, a bound on the modulus of the
discarded tail on that radius.  An :class:`AnalyticFunction` wraps a
pointwise evaluator with the metadata needed to run contour quadrature
safely (domain radius, known singularities).

The two derivative routes are deliberately kept independent so that each
can serve as an oracle for the other:

* term-wise differentiation of the stored coefficients
  (:meth:`PowerSeries.derivative_value`), and
* trapezoidal quadrature of the Cauchy integral on a circle around the
  evaluation point (:func:`cauchy_derivative`).

Real accumulations use :func:`math.fsum`, which is exactly rounded and in
particular safe for the cancellation-free but magnitude-spread power sums
with exponent q < 1.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np

from .errors import (
    ContourError,
    DomainValidityError,
    NearZeroDivisionError,
    TruncationError,
)

# Default truncation order for series built from evaluators.
DEFAULT_ORDER = 256
# Default node count for single-derivative contour quadrature.
DEFAULT_NODES = 512

# Pivot threshold for series inversion, relative to the largest coefficient.
_RECIPROCAL_PIVOT_RTOL = 1e-13

# Radii used when a series is extracted from an evaluator, as fractions of
# the distance d from the expansion center to the nearest singularity or
# domain boundary:  quadrature contour < envelope contour < d, and the
# advertised working radius sits below the envelope so the geometric tail
# bound converges.
_CONTOUR_FRACTION = 0.97
_ENVELOPE_FRACTION = 0.945
_WORKING_FRACTION = 0.92


def csum(values: Iterable[complex]) -> complex:
    """Exactly rounded sum of complex values (fsum on both parts)."""
    vs = [complex(v) for v in values]
    return complex(math.fsum(v.real for v in vs), math.fsum(v.imag for v in vs))


@dataclass(frozen=True)
class TailSumResult:
    """Value of a truncated q-power tail sum plus accuracy metadata.

    ``value`` is ``(sum_{n=m}^{N} (|c_n| r^n)^q)^(1/q)`` over the stored
    coefficients.  ``omitted_bound`` bounds the q-sum (before the 1/q power)
    of the terms beyond the truncation order when the series carries a
    finite tail bound; ``None`` means the omitted part is not controlled.
    """

    value: float
    omitted_bound: float | None
    warnings: tuple[str, ...] = ()


@dataclass(frozen=True)
class PowerSeries:
    """Truncated Taylor expansion ``sum c_n (z - center)^n``, n = 0..N.

    ``validity_radius`` is the working radius of the object: evaluation is
    contracted for ``|z - center| < validity_radius`` and, when
    ``tail_bound`` is not ``None``, the evaluation error anywhere on that
    closed disc is at most ``tail_bound``.  ``tail_bound = None`` means the
    discarded tail is not controlled ("unknown").
    """

    center: complex
    validity_radius: float
    coeffs: tuple[complex, ...]
    tail_bound: float | None = None

    def __post_init__(self) -> None:
        if not self.coeffs:
            raise ValueError("coeffs must be nonempty")
        radius = float(self.validity_radius)
        if not (radius > 0.0 and math.isfinite(radius)):
            raise ValueError("validity_radius must be positive and finite")
        if self.tail_bound is not None:
            tb = float(self.tail_bound)
            if not (tb >= 0.0):
                raise ValueError("tail_bound must be nonnegative")
            object.__setattr__(self, "tail_bound", tb)
        # Coerce to plain Python scalars so repr/serialization is canonical.
        object.__setattr__(self, "center", complex(self.center))
        object.__setattr__(self, "validity_radius", radius)
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    @property
    def order(self) -> int:
        """Highest retained power N."""
        return len(self.coeffs) - 1

    def _require_inside(self, z: complex) -> complex:
        z = complex(z)
        if abs(z - self.center) >= self.validity_radius:
            raise DomainValidityError(
                f"point {z} outside validity disc of radius "
                f"{self.validity_radius} around {self.center}"
            )
        return z

    def eval(self, z: complex) -> complex:
        """Horner evaluation of the truncated expansion at z."""
        z = self._require_inside(z)
        u = z - self.center
        acc = 0j
        for c in reversed(self.coeffs):
            acc = acc * u + c
        return acc

    __call__ = eval

    def derivative_value(self, n: int, z: complex) -> complex:
        """Value of the n-th derivative of the truncated series at z.

        At ``z == center`` this returns ``n! * c_n`` exactly (up to the
        single float multiplication).
        """
        if n < 0 or n != int(n):
            raise ValueError("derivative order must be a nonnegative integer")
        n = int(n)
        if n > self.order:
            raise TruncationError(
                f"derivative order {n} exceeds truncation order {self.order}"
            )
        z = self._require_inside(z)
        u = z - self.center
        # Coefficients of the n-th derivative: c_k * k!/(k-n)! for k >= n.
        fall = float(math.factorial(n))
        derived = []
        for j, c in enumerate(self.coeffs[n:]):
            derived.append(c * fall)
            fall = fall * (n + j + 1) / (j + 1)
        acc = 0j
        for c in reversed(derived):
            acc = acc * u + c
        return acc

    def tail_q_sum(self, r: float, m: int, q: float) -> TailSumResult:
        """q-power sum of coefficient term moduli from index m at radius r.

        Returns ``(sum_{n=m}^{N} (|c_n| r^n)^q)^(1/q)`` together with a
        certified bound on the omitted q-sum beyond the truncation order.
        The omitted bound uses the coefficient estimates
        ``|c_n| <= tail_bound / validity_radius^n`` (n > N), which follow
        from the tail bound on the working circle.
        """
        r = float(r)
        if not (0.0 < r < self.validity_radius):
            raise DomainValidityError(
                f"radius {r} not inside (0, {self.validity_radius})"
            )
        if m < 1 or m != int(m):
            raise ValueError("m must be an integer >= 1")
        if not (q > 0.0):
            raise ValueError("q must be positive")
        m = int(m)
        terms = []
        for n in range(m, self.order + 1):
            mag = abs(self.coeffs[n])
            if mag != 0.0:
                terms.append((mag * r**n) ** q)
        total = math.fsum(terms)
        value = total ** (1.0 / q)

        warnings: list[str] = []
        omitted: float | None = None
        if self.tail_bound is None:
            warnings.append("tail-unknown")
        else:
            x = r / self.validity_radius
            start = max(m, self.order + 1)
            xq = x**q
            omitted = (self.tail_bound**q) * (x ** (start * q)) / (1.0 - xq)
            if omitted > 1e-6 * (1.0 + total):
                warnings.append("tail-significant")
        return TailSumResult(value=value, omitted_bound=omitted, warnings=tuple(warnings))

    def reciprocal(self) -> PowerSeries:
        """Multiplicative inverse series through the truncation order.

        Uses the standard division recurrence
        ``c_n = (a_n - sum_{k<n} c_k b_{n-k}) / b_0`` with a = 1.  The
        validity radius of the result is shrunk, when necessary, to a disc
        where the truncated denominator provably cannot vanish: the largest
        radius rho with ``sum_{k>=1} |b_k| rho^k <= |b_0|``, scaled by 0.99.
        The tail of the inverse is not controlled, so ``tail_bound`` is
        unknown.
        """
        b = self.coeffs
        scale = max(abs(c) for c in b)
        if scale == 0.0 or abs(b[0]) < _RECIPROCAL_PIVOT_RTOL * scale:
            raise NearZeroDivisionError(
                f"leading coefficient {b[0]} too small relative to {scale}"
            )
        inv = [1.0 / b[0]]
        for n in range(1, len(b)):
            conv = csum(inv[k] * b[n - k] for k in range(n))
            inv.append(-conv / b[0])

        mags = [abs(c) for c in b[1:]]

        def rest(rho: float) -> float:
            return math.fsum(mag * rho ** (k + 1) for k, mag in enumerate(mags))

        radius = self.validity_radius
        if mags and rest(radius) > abs(b[0]):
            lo, hi = 0.0, radius
            for _ in range(80):
                mid = 0.5 * (lo + hi)
                if rest(mid) <= abs(b[0]):
                    lo = mid
                else:
                    hi = mid
            radius = 0.99 * lo
            if radius <= 0.0:
                raise NearZeroDivisionError("no zero-free disc for truncated inverse")
        return PowerSeries(
            center=self.center,
            validity_radius=radius,
            coeffs=tuple(inv),
            tail_bound=None,
        )

    def to_json_dict(self) -> dict:
        """JSON object used by the harness for series interchange."""
        return {
            "center": [self.center.real, self.center.imag],
            "radius": self.validity_radius,
            "coeffs": [[c.real, c.imag] for c in self.coeffs],
            "tail_bound": "unknown" if self.tail_bound is None else self.tail_bound,
        }

    @staticmethod
    def from_json_dict(obj: dict) -> "PowerSeries":
        tail = obj["tail_bound"]
        return PowerSeries(
            center=complex(obj["center"][0], obj["center"][1]),
            validity_radius=float(obj["radius"]),
            coeffs=tuple(complex(re, im) for re, im in obj["coeffs"]),
            tail_bound=None if tail == "unknown" else float(tail),
        )


@dataclass(frozen=True, eq=False)
class AnalyticFunction:
    """Evaluatable holomorphic function on the disc ``|z| < domain_radius``.

    ``singularities`` lists points at or beyond the boundary circle that
    contour quadrature must stay away from (e.g. poles or branch points of
    the analytic continuation).  ``series_factory``, when given, returns a
    PowerSeries around 0 of a requested order via a closed-form coefficient
    route independent of contour quadrature.
    """

    evaluator: Callable[[complex], complex]
    domain_radius: float
    singularities: tuple[complex, ...] = ()
    label: str = ""
    series_factory: Callable[[int], PowerSeries] | None = None

    def __post_init__(self) -> None:
        if not (self.domain_radius > 0.0 and math.isfinite(self.domain_radius)):
            raise ValueError("domain_radius must be positive and finite")
        sings = tuple(complex(s) for s in self.singularities)
        for s in sings:
            if abs(s) < self.domain_radius * (1.0 - 1e-9):
                raise ValueError(f"declared singularity {s} inside the open disc")
        object.__setattr__(self, "singularities", sings)

    def __call__(self, z: complex) -> complex:
        z = complex(z)
        if abs(z) > self.domain_radius * (1.0 + 1e-9):
            raise DomainValidityError(
                f"point {z} outside closed disc of radius {self.domain_radius}"
            )
        for s in self.singularities:
            if abs(z - s) <= 1e-12 * self.domain_radius:
                raise DomainValidityError(f"point {z} hits declared singularity {s}")
        return complex(self.evaluator(z))

    def clearance(self, z: complex) -> float:
        """Distance from z to the domain boundary or nearest singularity."""
        z = complex(z)
        d = self.domain_radius - abs(z)
        for s in self.singularities:
            d = min(d, abs(z - s))
        return d


def cauchy_derivative(
    f: AnalyticFunction,
    z: complex,
    n: int,
    contour_radius: float | None = None,
    nodes: int = DEFAULT_NODES,
) -> complex:
    """n-th derivative at z by trapezoidal quadrature of the Cauchy integral.

    The equispaced trapezoid rule on a circle is spectrally accurate for
    analytic integrands.  By default the contour radius is half the distance
    from z to the nearest singularity or to the domain boundary.
    """
    if n < 0 or n != int(n):
        raise ValueError("derivative order must be a nonnegative integer")
    n = int(n)
    if nodes < 8:
        raise ValueError("need at least 8 quadrature nodes")
    z = complex(z)
    if abs(z) >= f.domain_radius:
        raise DomainValidityError(f"point {z} outside open disc of {f.label or f!r}")
    clearance = f.clearance(z)
    if contour_radius is None:
        contour_radius = 0.5 * clearance
    if not (0.0 < contour_radius < clearance):
        raise ContourError(
            f"contour radius {contour_radius} does not fit inside clearance {clearance}"
        )
    vals = []
    for j in range(nodes):
        theta = 2.0 * math.pi * j / nodes
        w = cmath.exp(1j * theta)
        vals.append(f(z + contour_radius * w) * cmath.exp(-1j * n * theta))
    total = csum(vals)
    return total * math.factorial(n) / (nodes * contour_radius**n)


def recenter(
    f: AnalyticFunction,
    a: complex,
    order: int = DEFAULT_ORDER,
    nodes: int | None = None,
) -> PowerSeries:
    """Taylor coefficients of f around a, from contour samples via FFT.

    The quadrature contour sits just inside the distance d from ``a`` to the
    nearest singularity or boundary; a second sampled circle provides the
    max-modulus envelope ``|c_n| <= M(sigma)/sigma^n`` from which the
    geometric tail bound at the working radius (0.92 d) is computed.
    """
    if order < 1:
        raise ValueError("order must be >= 1")
    a = complex(a)
    if abs(a) >= f.domain_radius:
        raise DomainValidityError(f"expansion point {a} outside the open disc")
    d = f.clearance(a)
    if nodes is None:
        nodes = max(512, 1 << (8 * order - 1).bit_length())
    r_c = _CONTOUR_FRACTION * d
    angles = 2.0 * np.pi * np.arange(nodes) / nodes
    samples = np.array(
        [f(a + r_c * cmath.exp(1j * t)) for t in angles], dtype=np.complex128
    )
    hat = np.fft.fft(samples)
    coeffs = tuple(complex(hat[k]) / (nodes * r_c**k) for k in range(order + 1))

    sigma = _ENVELOPE_FRACTION * d
    m_sigma = max(
        abs(f(a + sigma * cmath.exp(1j * 2.0 * math.pi * j / 1024)))
        for j in range(1024)
    )
    rho_w = _WORKING_FRACTION * d
    x = rho_w / sigma
    tail = m_sigma * x ** (order + 1) / (1.0 - x)
    return PowerSeries(
        center=a, validity_radius=rho_w, coeffs=coeffs, tail_bound=tail
    )


_series_cache: dict[tuple[int, int], PowerSeries] = {}


def series_at_zero(f: AnalyticFunction, order: int = DEFAULT_ORDER) -> PowerSeries:
    """Series of f around 0, preferring the closed-form factory when present.

    Results are cached per function instance; AnalyticFunction values are
    immutable so this is safe.
    """
    key = (id(f), order)
    cached = _series_cache.get(key)
    if cached is None:
        if f.series_factory is not None:
            cached = f.series_factory(order)
        else:
            cached = recenter(f, 0.0, order)
        _series_cache[key] = cached
    return cached


def increment_lhs(f: AnalyticFunction, n: int, z: complex, order: int = DEFAULT_ORDER) -> float:
    """``|f^(n)(z) - f^(n)(0)|`` with a series/quadrature cross-check.

    The quadrature route provides the value; when z sits well inside the
    working radius of the zero-centered series, the term-wise route must
    agree to 1e-6 relative or the disagreement is raised as a bug signal.
    """
    z = complex(z)
    if abs(z) >= f.domain_radius:
        raise DomainValidityError(f"point {z} outside the open disc")
    v_z = cauchy_derivative(f, z, n)
    v_0 = cauchy_derivative(f, 0.0, n)
    diff = v_z - v_0
    series = series_at_zero(f, order)
    if n <= series.order and abs(z) <= 0.5 * series.validity_radius:
        alt = series.derivative_value(n, z) - series.derivative_value(n, 0.0)
        if abs(alt - diff) > 1e-6 * (1.0 + abs(diff)):
            from .errors import NumericalError

            raise NumericalError(
                f"derivative routes disagree at z={z}, n={n}: {diff} vs {alt}"
            )
    return abs(diff)


def series_from_coefficients(
    coeffs: Sequence[complex],
    validity_radius: float,
    tail_bound: float | None = None,
    center: complex = 0.0,
) -> PowerSeries:
    """Convenience constructor used by closed-form series factories."""
    return PowerSeries(
        center=center,
        validity_radius=validity_radius,
        coeffs=tuple(coeffs),
        tail_bound=tail_bound,
    )
