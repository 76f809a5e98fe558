"""Builtin corpus of (function, image domain) pairs for the bound suite.

Each entry pairs an evaluatable function on a disc with a declared image
region; the pairing hypothesis (every sampled image point lies inside the
region) is validated mechanically before any bound check may run.  The
entries cover the canonical region shapes: disc, half-plane (positivity
case), strip, and the crescent.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import HypothesisViolationError
from .families import CrescentParams, crescent_map, crescent_region, pole_extremal
from .geometry import (
    CrescentDomain,
    Disc,
    Domain,
    HalfPlane,
    Strip,
    contains,
    domain_scale,
)
from .series import AnalyticFunction, PowerSeries, series_from_coefficients

_VALIDATION_ANGLES = 1024
_VALIDATION_EXPONENTS = range(3, 13)


@dataclass(frozen=True)
class CorpusEntry:
    function: AnalyticFunction
    domain: Domain
    containment_validated: bool
    detail: str = ""

    @property
    def label(self) -> str:
        return self.function.label


def validate_containment(
    f: AnalyticFunction,
    domain: Domain,
    angles: int = _VALIDATION_ANGLES,
) -> tuple[bool, str]:
    """Sample the open disc on the radial/angular validation grid and test
    that every image point lies inside the domain (tolerance 1e-9 scale)."""
    tol = 1e-9 * domain_scale(domain)
    for k in _VALIDATION_EXPONENTS:
        radius = f.domain_radius * (1.0 - 2.0**-k)
        for j in range(angles):
            z = radius * cmath.exp(2j * math.pi * j / angles)
            w = f(z)
            if not contains(domain, w, tol=tol):
                return False, f"image {w} of {z} escapes the declared region"
    return True, ""


def _polynomial(coeffs: list[complex], radius: float, label: str) -> AnalyticFunction:
    def evaluator(z: complex) -> complex:
        acc = 0j
        for c in reversed(coeffs):
            acc = acc * z + c
        return acc

    def factory(order: int) -> PowerSeries:
        padded = list(coeffs) + [0j] * (order + 1 - len(coeffs))
        return series_from_coefficients(padded[: order + 1], validity_radius=radius, tail_bound=0.0)

    return AnalyticFunction(
        evaluator=evaluator, domain_radius=radius, label=label, series_factory=factory
    )


def _bounded_mobius(radius: float = 1.0) -> AnalyticFunction:
    """z / (z + 2): a Moebius map with two-sided bounded real part on the disc."""

    def evaluator(z: complex) -> complex:
        return z / (z + 2.0)

    def factory(order: int) -> PowerSeries:
        # z/(z+2) = (z/2) / (1 + z/2) = sum (-1)^(n-1) z^n / 2^n, n >= 1.
        coeffs = [0j] + [((-1.0) ** (n - 1)) * 2.0**-n for n in range(1, order + 1)]
        ratio = radius / 2.0
        tail = ratio ** (order + 1) / (1.0 - ratio)
        return series_from_coefficients(coeffs, validity_radius=radius, tail_bound=tail)

    return AnalyticFunction(
        evaluator=evaluator,
        domain_radius=radius,
        singularities=(-2.0,),
        label="bounded_mobius",
        series_factory=factory,
    )


def builtin_corpus(validate: bool = True) -> list[CorpusEntry]:
    """The validated builtin entries.  Entries failing validation are
    excluded (with the failure recorded via :func:`corpus_report`)."""
    entries = []
    for f, domain in _candidate_pairs():
        if validate:
            ok, detail = validate_containment(f, domain)
            if not ok:
                continue
            entries.append(CorpusEntry(f, domain, True, detail))
        else:
            entries.append(CorpusEntry(f, domain, False, "not validated"))
    return entries


def corpus_report() -> list[CorpusEntry]:
    """All candidate entries with their validation outcome (none excluded)."""
    out = []
    for f, domain in _candidate_pairs():
        ok, detail = validate_containment(f, domain)
        out.append(CorpusEntry(f, domain, ok, detail))
    return out


def _candidate_pairs() -> list[tuple[AnalyticFunction, Domain]]:
    identity = _polynomial([0j, 1 + 0j], 1.0, "identity")
    square = _polynomial([0j, 0j, 1 + 0j], 1.0, "square")
    affine_positive = _polynomial([1 + 0j, 1 + 0j], 1.0, "affine_positive")
    mobius = _bounded_mobius(1.0)
    # Pole at 2R: sup-modulus on the boundary circle is R*rho/(rho^2 - R^2) = 2/3.
    pole = pole_extremal(pole=2.0, radius=1.0)
    pole_image = Disc(center=0.0, radius=2.0 / 3.0)
    crescent_f = crescent_map(CrescentParams(disc_scale=1.0, halfplane_shift=-1j))
    return [
        (identity, Disc(center=0.0, radius=1.0)),
        (square, Disc(center=0.0, radius=1.0)),
        (affine_positive, HalfPlane(unit_normal=-1.0, offset=0.0)),
        (mobius, Strip(unit_normal=1.0, low=-1.0, high=1.0)),
        (pole, pole_image),
        (crescent_f, crescent_region(1.0)),
    ]


def require_validated(entry: CorpusEntry) -> None:
    """Bound checks must not run on unvalidated pairings."""
    if not entry.containment_validated:
        raise HypothesisViolationError(
            f"entry {entry.label!r} has not passed containment validation"
        )
