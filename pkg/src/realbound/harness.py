"""Experiment orchestration: configs, bound suites, sweeps, report emission.

Reports are deterministic: rows are assembled in canonical sorted order and
floats are serialized with shortest round-trip repr, so identical configs
produce byte-identical CSV/JSON.  Figures (PNG) are rendered alongside the
delimited output unless disabled; they are a convenience layer, not part of
the reproducibility contract.

Exit codes: 0 all checks pass, 1 bound-check or hypothesis failure,
2 usage/config error, 3 numerical failure (flagged rows).
"""

from __future__ import annotations

import cmath
import csv
import json
import math
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Sequence

from .bounds import (
    BoundReport,
    bohr_coeff,
    check_bound,
    deriv_bound_coeff,
    increment_coeff,
    recentered_bohr_coeff,
)
from .corpus import CorpusEntry, builtin_corpus, corpus_report, require_validated
from .errors import ConfigError
from .families import (
    CrescentParams,
    SweepRow,
    coefficient_magnitude_estimate,
    crescent_coefficients,
    crescent_region,
    sharpness_sweep_bohr,
    sharpness_sweep_deriv,
    sharpness_sweep_increment,
)
from .geometry import dist_to_hull_boundary, domain_to_json, export_hull_csv
from .series import cauchy_derivative, recenter, series_at_zero

EXIT_OK = 0
EXIT_CHECK_FAILURE = 1
EXIT_CONFIG_ERROR = 2
EXIT_NUMERICAL_FAILURE = 3

_CHECK_COLUMNS = [
    "inequality_id", "function", "domain", "n", "m", "q",
    "R", "r", "r_a", "d_a", "theta", "lhs", "rhs", "ratio", "margin",
    "status", "warnings",
]
_SWEEP_COLUMNS = [
    "family", "n", "m", "q", "R", "r", "r_a", "rho_or_p",
    "lhs", "scale", "rhs_coeff", "ratio", "warnings",
]

# Accuracy annotations that do not indicate a numerical failure.
_INFORMATIONAL_WARNINGS = {"tail-unknown", "tail-significant", "sup-not-converged"}


def _numerical_flags(warnings: Sequence[str]) -> list[str]:
    return [w for w in warnings if w and w not in _INFORMATIONAL_WARNINGS]


@dataclass(frozen=True)
class CheckSettings:
    """Parameter grid for the corpus bound suite.

    ``theta`` values give the shared ray direction for the evaluation and
    comparison points; ``ra_fractions`` are fractions of r; recenter
    fractions are |a|/R for the recentered coefficient-sum checks.
    """

    entries: tuple[str, ...] = ()          # empty = all builtins
    ns: tuple[int, ...] = (1, 2, 3)
    ms: tuple[int, ...] = (1, 2)
    qs: tuple[float, ...] = (0.5, 1.0, 2.0)
    r_fractions: tuple[float, ...] = (0.1, 0.5, 0.9)
    ra_fractions: tuple[float, ...] = (0.0, 0.5, 1.0)
    thetas: tuple[float, ...] = (0.0, 1.9)
    increment_ns: tuple[int, ...] = (0, 1, 2, 3)
    recenter_fractions: tuple[float, ...] = (0.0, 0.3)
    recenter_theta: float = 1.1


@dataclass(frozen=True)
class SweepSettings:
    kind: str = "deriv"                    # deriv | bohr | increment
    schedule: tuple[float, ...] = (1.1, 1.01, 1.001)
    n: int = 1
    radius: float = 1.0
    r_fraction: float = 0.0
    ra_fraction: float = 0.0
    m: int = 1
    q: float = 1.0
    bohr_r_fraction: float = 1.0 / 3.0
    disc_scale: float = 1.0
    halfplane_shift: complex = -1j


@dataclass(frozen=True)
class CoeffsSettings:
    disc_scale: float = 1.0
    halfplane_shift: complex = -1j
    order: int = 8


@dataclass(frozen=True)
class ExperimentConfig:
    kind: str = "check"                    # check | sweep | coeffs
    out_dir: Path = Path("reports")
    tolerance: float = 1e-6
    jobs: int = 1
    figures: bool = True
    check: CheckSettings = field(default_factory=CheckSettings)
    sweep: SweepSettings = field(default_factory=SweepSettings)
    coeffs: CoeffsSettings = field(default_factory=CoeffsSettings)


@dataclass(frozen=True)
class ExperimentResult:
    exit_code: int
    files: tuple[Path, ...]
    failures: int
    flagged: int
    rows: int


def _parse_complex_field(value) -> complex:
    if isinstance(value, (int, float, complex)):
        return complex(value)
    if isinstance(value, (list, tuple)) and len(value) == 2:
        return complex(float(value[0]), float(value[1]))
    if isinstance(value, str):
        return complex(value.replace("i", "j").replace(" ", ""))
    raise ConfigError(f"cannot parse complex value from {value!r}")


def config_from_dict(doc: dict) -> ExperimentConfig:
    """Build a validated config from a JSON document (harness schema)."""
    try:
        kind = doc.get("kind", "check")
        if kind not in ("check", "sweep", "coeffs"):
            raise ConfigError(f"unknown experiment kind {kind!r}")
        check = CheckSettings(
            entries=tuple(doc.get("check", {}).get("entries", ())),
            **{
                key: tuple(value)
                for key, value in doc.get("check", {}).items()
                if key in (
                    "ns", "ms", "qs", "r_fractions", "ra_fractions",
                    "thetas", "increment_ns", "recenter_fractions",
                )
            },
        )
        sweep_doc = dict(doc.get("sweep", {}))
        if "halfplane_shift" in sweep_doc:
            sweep_doc["halfplane_shift"] = _parse_complex_field(sweep_doc["halfplane_shift"])
        if "schedule" in sweep_doc:
            sweep_doc["schedule"] = tuple(float(s) for s in sweep_doc["schedule"])
        sweep = SweepSettings(**sweep_doc)
        if sweep.kind not in ("deriv", "bohr", "increment"):
            raise ConfigError(f"unknown sweep kind {sweep.kind!r}")
        coeffs_doc = dict(doc.get("coeffs", {}))
        if "halfplane_shift" in coeffs_doc:
            coeffs_doc["halfplane_shift"] = _parse_complex_field(coeffs_doc["halfplane_shift"])
        coeffs = CoeffsSettings(**coeffs_doc)
        tolerance = float(doc.get("tolerance", 1e-6))
        if tolerance < 0.0:
            raise ConfigError("tolerance must be nonnegative")
        jobs = int(doc.get("jobs", 1))
        if jobs < 1:
            raise ConfigError("jobs must be >= 1")
        return ExperimentConfig(
            kind=kind,
            out_dir=Path(doc.get("out_dir", "reports")),
            tolerance=tolerance,
            jobs=jobs,
            figures=bool(doc.get("figures", True)),
            check=check,
            sweep=sweep,
            coeffs=coeffs,
        )
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"invalid configuration: {exc}") from exc


def load_config(path: Path | str) -> ExperimentConfig:
    try:
        doc = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ConfigError(f"cannot read config {path}: {exc}") from exc
    return config_from_dict(doc)


# ---------------------------------------------------------------------------
# Bound suite over the corpus
# ---------------------------------------------------------------------------


def entry_bound_rows(entry: CorpusEntry, settings: CheckSettings, tolerance: float) -> list[BoundReport]:
    """All bound-check rows for one validated corpus entry."""
    require_validated(entry)
    f = entry.function
    R = f.domain_radius
    rows: list[BoundReport] = []
    label = entry.label
    domain_name = entry.domain.variant

    def params(**kw) -> dict:
        base = {"function": label, "domain": domain_name, "R": R}
        base.update(kw)
        return base

    deriv_at_zero: dict[int, complex] = {}

    def f_deriv(z: complex, n: int) -> complex:
        if z == 0:
            if n not in deriv_at_zero:
                deriv_at_zero[n] = cauchy_derivative(f, 0.0, n)
            return deriv_at_zero[n]
        return cauchy_derivative(f, z, n)

    # Derivative growth bounds, general and centered comparison point.
    for theta in settings.thetas:
        ray = cmath.exp(1j * theta)
        for rf in settings.r_fractions:
            r = rf * R
            z = r * ray
            for n in settings.ns:
                lhs = abs(f_deriv(z, n))
                for raf in settings.ra_fractions:
                    r_a = raf * r
                    a = r_a * ray
                    scale = dist_to_hull_boundary(f(a), entry.domain).distance
                    rows.append(
                        check_bound(
                            "deriv",
                            lhs,
                            deriv_bound_coeff(n, R, r, r_a),
                            scale,
                            parameters=params(n=n, r=r, r_a=r_a, theta=theta),
                            tolerance=tolerance,
                        )
                    )
                scale0 = dist_to_hull_boundary(f(0.0), entry.domain).distance
                rows.append(
                    check_bound(
                        "deriv-center",
                        lhs,
                        deriv_bound_coeff(n, R, r, 0.0),
                        scale0,
                        parameters=params(n=n, r=r, r_a=0.0, theta=theta),
                        tolerance=tolerance,
                    )
                )

    # Coefficient-sum bounds around the center.
    series = series_at_zero(f)
    scale0 = dist_to_hull_boundary(series.coeffs[0], entry.domain).distance
    for rf in settings.r_fractions:
        r = rf * R
        if r >= series.validity_radius:
            continue
        for m in settings.ms:
            for q in settings.qs:
                tail = series.tail_q_sum(r, m, q)
                rows.append(
                    check_bound(
                        "coeff-sum",
                        tail.value,
                        bohr_coeff(m, q, R, r),
                        scale0,
                        parameters=params(m=m, q=q, r=r),
                        tolerance=tolerance,
                        warnings=tail.warnings,
                    )
                )

    # Recentered coefficient-sum bounds.
    for af in settings.recenter_fractions:
        a = af * R * cmath.exp(1j * settings.recenter_theta)
        d_a = R - abs(a)
        recentered = series if af == 0.0 else recenter(f, a)
        scale_a = dist_to_hull_boundary(f(a), entry.domain).distance
        for rf in settings.r_fractions:
            r = rf * R
            if not (0.0 < r < d_a) or r >= recentered.validity_radius:
                continue
            tail = recentered.tail_q_sum(r, 1, 1.0)
            rows.append(
                check_bound(
                    "coeff-sum-recentered",
                    tail.value,
                    recentered_bohr_coeff(R, d_a, r),
                    scale_a,
                    parameters=params(r=r, d_a=d_a, theta=settings.recenter_theta),
                    tolerance=tolerance,
                    warnings=tail.warnings,
                )
            )

    # Increment bounds.
    scale0 = dist_to_hull_boundary(f(0.0), entry.domain).distance
    for theta in settings.thetas:
        ray = cmath.exp(1j * theta)
        for rf in settings.r_fractions:
            r = rf * R
            z = r * ray
            for n in settings.increment_ns:
                lhs = abs(f_deriv(z, n) - f_deriv(0.0, n))
                rows.append(
                    check_bound(
                        "increment",
                        lhs,
                        increment_coeff(n, R, r),
                        scale0,
                        parameters=params(n=n, r=r, theta=theta),
                        tolerance=tolerance,
                    )
                )
    return rows


def _row_sort_key(report: BoundReport):
    p = report.parameters
    return (
        report.inequality_id,
        p.get("function", ""),
        p.get("n", -1) if p.get("n") is not None else -1,
        p.get("m", -1) if p.get("m") is not None else -1,
        p.get("q", -1.0) if p.get("q") is not None else -1.0,
        p.get("r", -1.0),
        p.get("r_a", -1.0) if p.get("r_a") is not None else -1.0,
        p.get("theta", 0.0),
    )


def run_check_suite(config: ExperimentConfig) -> list[BoundReport]:
    entries = builtin_corpus()
    if config.check.entries:
        wanted = set(config.check.entries)
        entries = [e for e in entries if e.label in wanted]
        missing = wanted - {e.label for e in entries}
        if missing:
            raise ConfigError(f"unknown corpus entries: {sorted(missing)}")
    if config.jobs > 1:
        with ThreadPoolExecutor(max_workers=config.jobs) as pool:
            chunks = list(
                pool.map(
                    lambda e: entry_bound_rows(e, config.check, config.tolerance),
                    entries,
                )
            )
    else:
        chunks = [entry_bound_rows(e, config.check, config.tolerance) for e in entries]
    rows = [row for chunk in chunks for row in chunk]
    rows.sort(key=_row_sort_key)
    return rows


# ---------------------------------------------------------------------------
# Report writers
# ---------------------------------------------------------------------------


def _fmt(value) -> str:
    if value is None:
        return ""
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, complex):
        return f"{value.real!r}{'+' if value.imag >= 0 else '-'}{abs(value.imag)!r}j"
    return str(value)


def write_check_csv(rows: Sequence[BoundReport], path: Path) -> Path:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_CHECK_COLUMNS)
        for row in rows:
            p = row.parameters
            writer.writerow(
                [
                    row.inequality_id,
                    p.get("function", ""),
                    p.get("domain", ""),
                    _fmt(p.get("n")),
                    _fmt(p.get("m")),
                    _fmt(p.get("q")),
                    _fmt(p.get("R")),
                    _fmt(p.get("r")),
                    _fmt(p.get("r_a")),
                    _fmt(p.get("d_a")),
                    _fmt(p.get("theta")),
                    _fmt(row.lhs),
                    _fmt(row.rhs),
                    _fmt(row.ratio),
                    _fmt(row.margin),
                    "pass" if row.passed else "fail",
                    ";".join(row.warnings),
                ]
            )
    return path


def write_sweep_csv(rows: Sequence[SweepRow], path: Path) -> Path:
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(_SWEEP_COLUMNS)
        for row in rows:
            writer.writerow(
                [
                    row.family,
                    _fmt(row.n),
                    _fmt(row.m),
                    _fmt(row.q),
                    _fmt(row.R),
                    _fmt(row.r),
                    _fmt(row.r_a),
                    _fmt(row.parameter),
                    _fmt(row.lhs),
                    _fmt(row.scale),
                    _fmt(row.rhs_coeff),
                    _fmt(row.ratio),
                    ";".join(row.warnings),
                ]
            )
    return path


def _write_json(obj, path: Path) -> Path:
    path.write_text(json.dumps(obj, indent=2, sort_keys=True) + "\n")
    return path


# ---------------------------------------------------------------------------
# Experiment runner
# ---------------------------------------------------------------------------


def run_experiment(config: ExperimentConfig) -> ExperimentResult:
    """Execute one experiment and write its reports; see module docstring
    for the exit-code contract."""
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    files: list[Path] = []
    failures = 0
    flagged = 0
    rows_written = 0

    if config.kind == "check":
        rows = run_check_suite(config)
        rows_written = len(rows)
        failures = sum(1 for r in rows if not r.passed)
        flagged = sum(1 for r in rows if _numerical_flags(r.warnings))
        files.append(write_check_csv(rows, out / "checks.csv"))
        summary = {
            "kind": "check",
            "rows": len(rows),
            "failures": failures,
            "tolerance": config.tolerance,
            "max_ratio": max((r.ratio for r in rows), default=0.0),
            "failing_rows": [
                {"inequality_id": r.inequality_id, "parameters": {k: _fmt(v) for k, v in r.parameters.items()}}
                for r in rows
                if not r.passed
            ],
        }
        files.append(_write_json(summary, out / "checks_summary.json"))
        if config.figures:
            from . import figures

            files.append(figures.render_check_figure(rows, out / "figures" / "check_ratios.png"))

    elif config.kind == "sweep":
        s = config.sweep
        if s.kind == "deriv":
            rows = sharpness_sweep_deriv(
                s.n, s.radius, s.r_fraction * s.radius, s.ra_fraction * s.r_fraction * s.radius,
                s.schedule,
            )
        elif s.kind == "increment":
            r = s.r_fraction if s.r_fraction > 0.0 else 0.5
            rows = sharpness_sweep_increment(s.n, s.radius, r * s.radius, s.schedule)
        else:
            params = CrescentParams(s.disc_scale, s.halfplane_shift)
            result = sharpness_sweep_bohr(s.m, s.q, s.bohr_r_fraction, params)
            rows = list(result.rows)
        rows_written = len(rows)
        flagged = sum(1 for r in rows if "quadrature-failed" in r.warnings)
        failures = sum(
            1
            for r in rows
            if math.isfinite(r.ratio) and r.ratio > 1.0 + config.tolerance
        )
        files.append(write_sweep_csv(rows, out / f"sweep_{s.kind}.csv"))
        summary = {
            "kind": f"sweep-{s.kind}",
            "rows": rows_written,
            "failures": failures,
            "flagged": flagged,
            "ratios": [r.ratio for r in rows],
        }
        if s.kind == "bohr":
            summary["lower_bound"] = result.lower_bound
            summary["theoretical_coeff"] = result.theoretical_coeff
        files.append(_write_json(summary, out / f"sweep_{s.kind}_summary.json"))
        if config.figures:
            from . import figures

            files.append(
                figures.render_sweep_figure(rows, out / "figures" / f"sweep_{s.kind}.png")
            )

    elif config.kind == "coeffs":
        c = config.coeffs
        params = CrescentParams(c.disc_scale, c.halfplane_shift)
        series = crescent_coefficients(params, max(c.order, 1))
        files.append(_write_json(series.to_json_dict(), out / "crescent_series.json"))
        comparison = []
        for n in range(1, series.order + 1):
            comparison.append(
                {
                    "n": n,
                    "recurrence": abs(series.coeffs[n]),
                    "closed_form_estimate": coefficient_magnitude_estimate(params, n),
                }
            )
        path = out / "coefficient_comparison.csv"
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["n", "abs_recurrence", "abs_closed_form_estimate", "ratio"])
            for row in comparison:
                ratio = (
                    row["recurrence"] / row["closed_form_estimate"]
                    if row["closed_form_estimate"] > 0
                    else math.inf
                )
                writer.writerow(
                    [row["n"], _fmt(row["recurrence"]), _fmt(row["closed_form_estimate"]), _fmt(ratio)]
                )
        files.append(path)
        region = crescent_region(c.disc_scale)
        files.append(export_hull_csv(region, out / "crescent_hull.csv"))
        rows_written = len(comparison)
        if config.figures:
            from . import figures

            files.append(
                figures.render_coefficients_figure(
                    comparison, out / "figures" / "crescent_coefficients.png"
                )
            )
            files.append(
                figures.render_domain_figure(
                    region,
                    out / "figures" / "crescent_domain.png",
                    marks={"center_image": series.coeffs[0]},
                )
            )
    else:
        raise ConfigError(f"unknown experiment kind {config.kind!r}")

    if failures:
        code = EXIT_CHECK_FAILURE
    elif flagged:
        code = EXIT_NUMERICAL_FAILURE
    else:
        code = EXIT_OK
    return ExperimentResult(
        exit_code=code,
        files=tuple(files),
        failures=failures,
        flagged=flagged,
        rows=rows_written,
    )


def run_corpus_listing(out_dir: Path | None) -> tuple[int, list[str], tuple[Path, ...]]:
    """Validate and describe the builtin corpus; optionally write reports."""
    entries = corpus_report()
    lines = []
    files: list[Path] = []
    for e in entries:
        status = "ok" if e.containment_validated else f"EXCLUDED ({e.detail})"
        lines.append(f"{e.label:>24}  {e.domain.variant:<10} {status}")
    ok = all(e.containment_validated for e in entries)
    if out_dir is not None:
        out = Path(out_dir)
        out.mkdir(parents=True, exist_ok=True)
        path = out / "corpus.csv"
        with path.open("w", newline="") as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(["label", "domain", "validated", "detail"])
            for e in entries:
                writer.writerow([e.label, e.domain.variant, e.containment_validated, e.detail])
        files.append(path)
        doc = [
            {"label": e.label, "domain": domain_to_json(e.domain), "validated": e.containment_validated}
            for e in entries
        ]
        files.append(_write_json(doc, out / "corpus.json"))
        for e in entries:
            safe = e.label.replace("/", "_")
            files.append(export_hull_csv(e.domain, out / f"hull_{safe}.csv"))
    return (EXIT_OK if ok else EXIT_CHECK_FAILURE), lines, tuple(files)
