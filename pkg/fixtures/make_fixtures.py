#!/usr/bin/env python3
"""Oracle run that produces the committed sweep fixtures.

This script is independent of the library: every number comes either from a
closed form derived here or from high-precision mpmath arithmetic.  Run it
from the repository root to regenerate the JSON files next to it:

    python fixtures/make_fixtures.py

Derivations for the pole family g(z) = xi/(z - xi) + |xi|^2/(|xi|^2 - R^2),
xi = rho > R real, evaluation at z = -r, comparison point a = -r_a:

* image of the circle |z| = R under xi/(z - xi) is the circle
  |w + rho^2/(rho^2 - R^2)| = R rho/(rho^2 - R^2)  (Apollonius: the locus of
  |w + 1| = (R/rho) |w|), so after the additive recentering constant the
  image circle is centered at 0 and  sup_{|z|<=R} |g| = R rho/(rho^2 - R^2)
  exactly;
* |g(a)| = rho^2/(rho^2 - R^2) - rho/(rho + r_a)  (positive for rho > R);
* hence the sup-modulus functional is
      scale(rho) = rho/(rho + r_a) - rho/(rho + R);
* |g^(n)(z)| = n! rho / (rho + r)^(n+1).

The deriv ratio divides by 2 n! R (R - r_a) / ((R-r)^(n+1) (R+r_a)) * scale;
the increment ratio uses  |g^(n)(-r) - g^(n)(0)|  against
2 n! (R^(n+1) - (R-r)^(n+1)) / ((R-r)^(n+1) R^n) * scale(a=0).

Every closed form is re-validated below against brute-force sampling before
the fixture is written.
"""

from __future__ import annotations

import cmath
import json
import math
from pathlib import Path

import mpmath as mp

HERE = Path(__file__).parent


def g_value(z: complex, rho: float, R: float) -> complex:
    return rho / (z - rho) + rho**2 / (rho**2 - R**2)


def g_derivative(z: complex, n: int, rho: float, R: float) -> complex:
    if n == 0:
        return g_value(z, rho, R)
    return rho * (-1) ** n * math.factorial(n) / (z - rho) ** (n + 1)


def sup_abs_closed(rho: float, R: float) -> float:
    return R * rho / (rho**2 - R**2)


def scale_closed(rho: float, R: float, r_a: float) -> float:
    return rho / (rho + r_a) - rho / (rho + R)


def deriv_ratio(n: int, R: float, r: float, r_a: float, rho: float) -> float:
    lhs = math.factorial(n) * rho / (rho + r) ** (n + 1)
    coeff = 2 * math.factorial(n) * R * (R - r_a) / ((R - r) ** (n + 1) * (R + r_a))
    return lhs / (coeff * scale_closed(rho, R, r_a))


def increment_ratio(n: int, R: float, r: float, rho: float) -> float:
    lhs = abs(g_derivative(-r, n, rho, R) - g_derivative(0.0, n, rho, R))
    coeff = (
        2 * math.factorial(n) * (R ** (n + 1) - (R - r) ** (n + 1)) / ((R - r) ** (n + 1) * R**n)
    )
    return lhs / (coeff * scale_closed(rho, R, 0.0))


def validate_closed_forms() -> None:
    R = 1.0
    for rho in (1.1, 1.01, 1.3):
        brute = max(
            abs(g_value(R * cmath.exp(2j * math.pi * k / 400000), rho, R))
            for k in range(400000)
        )
        closed = sup_abs_closed(rho, R)
        assert abs(brute - closed) < 1e-9 * closed, (rho, brute, closed)
        for r_a in (0.0, 0.3):
            brute_scale = closed - abs(g_value(-r_a, rho, R))
            assert abs(brute_scale - scale_closed(rho, R, r_a)) < 1e-9, (rho, r_a)
    # Finite-difference check of the derivative closed form.
    h = 1e-6
    for n in (1, 2):
        fd = (g_derivative(-0.2 + h, n - 1, 1.1, R) - g_derivative(-0.2 - h, n - 1, 1.1, R)) / (2 * h)
        assert abs(fd - g_derivative(-0.2, n, 1.1, R)) < 1e-5 * (1 + abs(fd)), n


def crescent_coefficients_mp(a: float, p: complex, order: int) -> list[mp.mpc]:
    """Division recurrence for the crescent-map series at 40 digits."""
    mp.mp.dps = 40
    a_mp = mp.mpf(a)
    p_mp = mp.mpc(p)
    four_a_pi = 4 * a_mp * mp.pi
    b = [mp.log(-p_mp) / four_a_pi - mp.mpc(0, 1) / (2 * a_mp)]
    for n in range(1, order + 1):
        b.append(-1 / (four_a_pi * n * p_mp**n))
    c = [1 / b[0]]
    for n in range(1, order + 1):
        c.append(-mp.fsum(c[k] * b[n - k] for k in range(n)) / b[0])
    return c


def crescent_quadrature_check(a: float, p: complex, coeffs: list[mp.mpc]) -> None:
    """Cross-check the recurrence against mpmath contour quadrature."""
    mp.mp.dps = 30

    def F(psi):
        return 1 / (mp.log(psi - mp.mpc(p)) / (4 * a * mp.pi) - mp.mpc(0, 1) / (2 * a))

    for k in (0, 1, 3, 6):
        quad = mp.quad(
            lambda t: F(mp.mpf("0.6") * mp.exp(1j * t)) * mp.exp(-1j * k * t),
            [0, 2 * mp.pi],
        ) / (2 * mp.pi * mp.mpf("0.6") ** k)
        assert abs(quad - coeffs[k]) < mp.mpf("1e-20"), (k, quad, coeffs[k])


def main() -> None:
    validate_closed_forms()

    schedule = [1.1, 1.01, 1.001]
    deriv = {
        "family": "pole",
        "n": 1,
        "R": 1.0,
        "r": 0.0,
        "r_a": 0.0,
        "schedule": schedule,
        "ratios": [deriv_ratio(1, 1.0, 0.0, 0.0, rho) for rho in schedule],
        # Threshold for the final (closest) schedule point, rounded down.
        "final_ratio_threshold": 0.9995,
        "comparison_rtol": 1e-8,
    }
    assert deriv["ratios"] == sorted(deriv["ratios"]), "ratios must increase"
    assert deriv["ratios"][-1] >= deriv["final_ratio_threshold"]

    increment = {
        "family": "pole",
        "n": 1,
        "R": 1.0,
        "r": 0.5,
        "schedule": schedule,
        "ratios": [increment_ratio(1, 1.0, 0.5, rho) for rho in schedule],
        "comparison_rtol": 1e-8,
    }

    a, p = 1.0, -1j
    order = 320
    coeffs = crescent_coefficients_mp(a, p, order)
    crescent_quadrature_check(a, p, coeffs)
    mp.mp.dps = 40
    low_order = [
        {"n": n, "re": float(coeffs[n].real), "im": float(coeffs[n].imag)}
        for n in range(13)
    ]
    dist = mp.mpf(4) / 3  # |c0 - 2ai| = 2a/3 against the outer radius 2a
    gaps = {}
    for r_frac in ("1/3", "0.3", "0.5"):
        r = mp.mpf(r_frac) if "/" not in r_frac else mp.mpf(1) / 3
        total = mp.fsum(abs(coeffs[n]) * r**n for n in range(1, order + 1))
        lower = total / dist
        coeff = 2 * r / (1 - r)
        gaps[r_frac] = {
            "lower_bound": float(lower),
            "theoretical_coeff": float(coeff),
            "gap_ratio": float(lower / coeff),
        }
    bohr = {
        "disc_scale": 1.0,
        "halfplane_shift": [0.0, -1.0],
        "m": 1,
        "q": 1.0,
        "coefficients": low_order,
        "gaps": gaps,
        "comparison_rtol": 1e-8,
    }

    (HERE / "sweep_deriv.json").write_text(json.dumps(deriv, indent=2) + "\n")
    (HERE / "sweep_increment.json").write_text(json.dumps(increment, indent=2) + "\n")
    (HERE / "crescent_oracle.json").write_text(json.dumps(bohr, indent=2) + "\n")
    print("fixtures written:", sorted(p.name for p in HERE.glob("*.json")))


if __name__ == "__main__":
    main()
