"""Weyl classification and counting-function growth.

The zero counting function grows like (b_nu / pi) * R + O(1), with b_nu the
effective size from the canonical exponential-polynomial form.  The
classification compares b_nu with the configuration size V(Y): equality
(within tolerance) is Weyl-type, a strict deficit means the top frequency
cancelled.  An optional least-squares fit of empirical counts against R
cross-checks the slope; it is advisory only, because the O(1) term makes
finite-radius slopes noisy while b_nu and V are exact combinatorial data.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import TooFewPoints
from .expoly import DEFAULT_CANCEL_TOL, DEFAULT_FREQ_TOL, expand
from .geometry import Configuration, random_configuration, strength_values, validate_configuration
from .sizing import is_generic, size_v
from .zeros import counting_function

DEFAULT_CLASS_TOL = 1e-8

WEYL = "Weyl"
NON_WEYL = "NonWeyl"
INCONCLUSIVE = "Inconclusive"


@dataclass(frozen=True)
class CountingReport:
    """Exact effective size vs configuration size, plus optional empirics."""

    b_nu: float
    v: float
    classification: str
    relative_discrepancies: dict
    radii: tuple[float, ...] | None = None
    counts: tuple[int, ...] | None = None
    winding_residuals: tuple[float, ...] | None = None
    fitted_slope: float | None = None
    fitted_intercept: float | None = None
    w_est: float | None = None


@dataclass(frozen=True)
class ScanSummary:
    """Aggregate of a randomized genericity scan."""

    n: int
    trials: int
    seed: int
    fraction_generic: float | None
    fraction_weyl: float | None
    min_gap_quantiles: dict
    near_cancellation_count: int
    near_cancellation_trials: tuple[int, ...]


def fit_slope(radii, counts, skip: int = 0) -> tuple[float, float]:
    """Ordinary least squares of counts against radii, dropping the first
    `skip` transient points."""
    r = np.asarray(radii, dtype=float)[skip:]
    c = np.asarray(counts, dtype=float)[skip:]
    if len(r) < 3:
        raise TooFewPoints(f"need at least 3 points after skip={skip}, got {len(r)}")
    slope, intercept = np.polyfit(r, c, 1)
    return float(slope), float(intercept)


def classify(
    strengths,
    config: Configuration,
    radii=None,
    class_tol: float = DEFAULT_CLASS_TOL,
    freq_tol: float = DEFAULT_FREQ_TOL,
    cancel_tol: float = DEFAULT_CANCEL_TOL,
    skip: int | None = None,
) -> CountingReport:
    """Classify the counting asymptotics of a configuration.

    Weyl iff |b_nu - V| <= class_tol * max(1, V); NonWeyl iff b_nu falls
    short of V by more than that.  When radii are given, the empirical
    counting function is computed and fitted (skipping radii below
    20 / b_nu by default) and pi * slope is reported as a consistency
    estimate of the effective size.
    """
    config = validate_configuration(config)
    a = strength_values(strengths, config.n)
    epoly, _ = expand(a, config, freq_tol=freq_tol, cancel_tol=cancel_tol)
    b_nu = epoly.effective_size
    v = size_v(config, mode="assignment").v
    tol = class_tol * max(1.0, v)
    if abs(b_nu - v) <= tol:
        classification = WEYL
    elif b_nu < v - tol:
        classification = NON_WEYL
    else:
        classification = INCONCLUSIVE
    discrepancies = {"b_nu_vs_v": abs(b_nu - v) / max(1.0, v)}

    radii_out = counts = residuals = None
    slope = intercept = w_est = None
    if radii is not None:
        zero_counts = counting_function(
            a, config, radii, freq_tol=freq_tol, cancel_tol=cancel_tol
        )
        radii_out = tuple(zc.radius for zc in zero_counts)
        counts = tuple(zc.count for zc in zero_counts)
        residuals = tuple(zc.winding_residual for zc in zero_counts)
        if skip is None:
            skip = sum(1 for r in radii_out if r < 20.0 / b_nu)
        slope, intercept = fit_slope(radii_out, counts, skip=skip)
        w_est = np.pi * slope
        discrepancies["slope_vs_b_nu"] = abs(w_est - b_nu) / b_nu
    return CountingReport(
        b_nu=b_nu,
        v=v,
        classification=classification,
        relative_discrepancies=discrepancies,
        radii=radii_out,
        counts=counts,
        winding_residuals=residuals,
        fitted_slope=slope,
        fitted_intercept=intercept,
        w_est=w_est,
    )


def _quantiles(values: np.ndarray) -> dict:
    if len(values) == 0:
        return {}
    qs = np.quantile(values, [0.0, 0.25, 0.5, 0.75, 1.0])
    return {
        "min": float(qs[0]),
        "p25": float(qs[1]),
        "median": float(qs[2]),
        "p75": float(qs[3]),
        "max": float(qs[4]),
    }


def genericity_scan(
    n: int,
    trials: int,
    seed: int,
    box_side: float = 1.0,
    min_gap: float | None = None,
    strengths=None,
    gap_tol: float | None = None,
    class_tol: float = DEFAULT_CLASS_TOL,
    freq_tol: float = DEFAULT_FREQ_TOL,
    cancel_tol: float = DEFAULT_CANCEL_TOL,
    near_factor: float = 10.0,
) -> ScanSummary:
    """Randomized scan of configurations for genericity and Weyl-ness.

    Draws `trials` configurations uniformly in the cube (per-trial RNG
    streams spawned deterministically from the seed), records the fraction
    that is generic, the fraction classified Weyl, the distribution of the
    genericity gap, and any trial whose expansion had a frequency group
    within near_factor * cancel_tol of cancelling.
    """
    if strengths is None:
        strengths = np.zeros(n, dtype=complex)
    a = strength_values(strengths, n)
    streams = np.random.SeedSequence(seed).spawn(max(trials, 0))
    generic_flags = []
    weyl_flags = []
    min_gaps = []
    near_trials = []
    near_count = 0
    for t in range(trials):
        config = random_configuration(
            n, np.random.default_rng(streams[t]), box_side=box_side, min_gap=min_gap
        )
        report = is_generic(config, gap_tol=gap_tol)
        generic_flags.append(report.is_generic)
        min_gaps.append(report.min_gap)
        epoly, cancels = expand(a, config, freq_tol=freq_tol, cancel_tol=cancel_tol)
        v = size_v(config, mode="assignment").v
        weyl_flags.append(abs(epoly.effective_size - v) <= class_tol * max(1.0, v))
        near = cancels.near_cancellations(factor=near_factor)
        if near:
            near_count += len(near)
            near_trials.append(t)
    return ScanSummary(
        n=n,
        trials=trials,
        seed=seed,
        fraction_generic=float(np.mean(generic_flags)) if trials else None,
        fraction_weyl=float(np.mean(weyl_flags)) if trials else None,
        min_gap_quantiles=_quantiles(np.asarray(min_gaps)),
        near_cancellation_count=near_count,
        near_cancellation_trials=tuple(near_trials),
    )
