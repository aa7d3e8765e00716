"""Zero counting and localization by the argument principle.

Counts are winding numbers (1/2 pi i) * contour integral of f'/f, evaluated
by trapezoid quadrature with point doubling until the raw value sits within
a fixed residual of an integer and the rounded count stabilizes.  A zero on
(or hugging) the contour shows up either as a vanishing |f| sample or as a
residual stalled near a half-integer; both trigger a contour nudge.
Localization quadrisects a rectangle, recursing on subcounts; singleton
boxes are polished by Newton iteration and unresolved multi-zero boxes at
maximum depth are reported as clusters with their total multiplicity.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ContourThroughZero, QuadratureDivergence, ValidationError
from .expoly import expand
from .geometry import Configuration

# Raw winding integrals must land this close to an integer.
DEFAULT_RESIDUAL_TOL = 1e-3
# Contour samples with |f| below this fraction of the median trigger a nudge.
_CONTOUR_GUARD = 1e-12
_MAX_NUDGES = 5
# Hard budget of quadrature points per disk contour.
_MAX_POINTS = 1 << 22
# Doubling budget per rectangle contour (failures are retried with moved
# edges, so a tight budget keeps bad splits cheap).
_RECT_DOUBLINGS = 12
# Consecutive stable-but-nonintegral refinements before declaring the
# contour to run through a zero.
_STALL_LIMIT = 3
# Newton polishing limits.
_NEWTON_MAX_ITER = 50
_NEWTON_STEP_TOL = 1e-12


@dataclass(frozen=True)
class Rectangle:
    """Axis-aligned closed rectangle in the complex plane."""

    re_min: float
    re_max: float
    im_min: float
    im_max: float

    def __post_init__(self):
        if not (self.re_min < self.re_max and self.im_min < self.im_max):
            raise ValidationError(f"degenerate rectangle: {self}")

    @property
    def width(self) -> float:
        return self.re_max - self.re_min

    @property
    def height(self) -> float:
        return self.im_max - self.im_min

    @property
    def center(self) -> complex:
        return complex((self.re_min + self.re_max) / 2, (self.im_min + self.im_max) / 2)

    @property
    def corners(self) -> tuple[complex, complex, complex, complex]:
        return (
            complex(self.re_min, self.im_min),
            complex(self.re_max, self.im_min),
            complex(self.re_max, self.im_max),
            complex(self.re_min, self.im_max),
        )

    def contains(self, z: complex, pad: float = 0.0) -> bool:
        return (
            self.re_min - pad <= z.real <= self.re_max + pad
            and self.im_min - pad <= z.imag <= self.im_max + pad
        )

    def expanded(self, factor: float) -> "Rectangle":
        c = self.center
        w = self.width * factor / 2
        h = self.height * factor / 2
        return Rectangle(c.real - w, c.real + w, c.imag - h, c.imag + h)


@dataclass(frozen=True)
class ZeroCount:
    """Argument-principle count of zeros inside one contour."""

    radius: float
    count: int
    winding_residual: float
    quadrature_points: int
    contour_radius: float


@dataclass(frozen=True)
class Resonance:
    """A localized zero (or unresolved cluster) with multiplicity."""

    location: complex
    multiplicity: int
    residual: float
    is_cluster: bool = False


class _Stalled(Exception):
    """Internal: winding refinement pinned away from an integer."""


def _is_stalled(history: list[complex]) -> bool:
    if len(history) < _STALL_LIMIT + 1:
        return False
    recent = history[-(_STALL_LIMIT + 1):]
    residuals = [abs(r - round(r.real)) for r in recent]
    steps = [abs(a - b) for a, b in zip(recent, recent[1:])]
    return all(0.15 <= r <= 0.85 for r in residuals) and all(s <= 0.02 for s in steps)


def _disk_raw(f, df, center: complex, r: float, n: int):
    theta = 2 * np.pi * np.arange(n) / n
    unit = np.exp(1j * theta)
    z = center + r * unit
    fv = np.asarray(f(z), dtype=complex)
    absf = np.abs(fv)
    if absf.min() < _CONTOUR_GUARD * np.median(absf):
        return None
    with np.errstate(all="ignore"):
        raw = complex(np.mean(np.asarray(df(z), dtype=complex) / fv * r * unit))
    if not np.isfinite(raw):
        return None
    return raw


def count_zeros_disk(
    f,
    df,
    radius: float,
    center: complex = 0.0,
    freq_scale: float = 1.0,
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
) -> ZeroCount:
    """Count zeros (with multiplicity) of f in the disk |z - center| < radius.

    f and df must accept complex ndarray arguments.  The initial grid
    resolves oscillation at scale freq_scale * radius and is doubled until
    the rounded winding number repeats and the residual drops below
    residual_tol.  A contour running through a zero is nudged upward by
    parts in 1e-6 before giving up, so zeros within the nudge scale of the
    boundary are attributed by the nudged contour.
    """
    if not (radius > 0):
        raise ValidationError(f"radius must be positive, got {radius}")
    saw_zero_signal = False
    for k in range(_MAX_NUDGES + 1):
        r = radius * (1 + 1e-6 * k)
        n = max(256, int(math.ceil(8 * r * freq_scale)))
        history: list[complex] = []
        # budget exhaustion also falls through to the next nudge: a zero
        # just inside the contour slows trapezoid convergence the same way
        # a zero on it does
        while n <= _MAX_POINTS:
            raw = _disk_raw(f, df, center, r, n)
            if raw is None:
                saw_zero_signal = True
                break
            history.append(raw)
            if len(history) >= 2:
                count = int(round(raw.real))
                residual = abs(raw - count)
                if count == int(round(history[-2].real)) and residual <= residual_tol:
                    return ZeroCount(radius, count, residual, n, r)
            if _is_stalled(history):
                saw_zero_signal = True
                break
            n *= 2
    if saw_zero_signal:
        raise ContourThroughZero(
            f"contour |z - {center}| = {radius} passes through a zero "
            f"(after {_MAX_NUDGES} nudges)",
            where=radius,
        )
    raise QuadratureDivergence(
        f"winding number did not stabilize on |z - {center}| = {radius} "
        f"within {_MAX_POINTS} points per contour",
        where=radius,
    )


def _rect_raw(f, df, rect: Rectangle, points_per_unit: float, min_points: int):
    corners = rect.corners
    total = 0.0 + 0.0j
    f_min = np.inf
    f_abs = []
    for a, b in zip(corners, corners[1:] + corners[:1]):
        n = max(min_points, int(math.ceil(points_per_unit * abs(b - a))))
        t = np.linspace(0.0, 1.0, n + 1)
        z = a + (b - a) * t
        fv = np.asarray(f(z), dtype=complex)
        with np.errstate(all="ignore"):
            g = np.asarray(df(z), dtype=complex) / fv
        weights = np.ones(n + 1)
        weights[0] = weights[-1] = 0.5
        total += (b - a) / n * np.sum(weights * g)
        absf = np.abs(fv)
        f_min = min(f_min, float(absf.min()))
        f_abs.append(absf)
    if f_min < _CONTOUR_GUARD * np.median(np.concatenate(f_abs)):
        return None
    raw = total / (2j * np.pi)
    if not np.isfinite(raw):
        return None
    return complex(raw)


def count_zeros_rect(
    f,
    df,
    rect: Rectangle,
    freq_scale: float = 1.0,
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
) -> int:
    """Count zeros of f inside a rectangle.

    Raises ContourThroughZero when a zero sits on (or hugs) the boundary;
    callers own the geometry and retry with moved edges.
    """
    per_unit = 8 * freq_scale
    min_points = 64
    history: list[complex] = []
    for _ in range(_RECT_DOUBLINGS):
        raw = _rect_raw(f, df, rect, per_unit, min_points)
        if raw is None:
            raise ContourThroughZero(f"zero on the boundary of {rect}", where=rect)
        history.append(raw)
        if len(history) >= 2:
            count = int(round(raw.real))
            if count == int(round(history[-2].real)) and abs(raw - count) <= residual_tol:
                return count
        if _is_stalled(history):
            raise ContourThroughZero(
                f"winding stalled off-integer on {rect}", where=rect
            )
        per_unit *= 2
        min_points *= 2
    raise QuadratureDivergence(
        f"winding number did not stabilize on {rect}", where=rect
    )


def newton_polish(f, df, z0: complex, max_iter: int = _NEWTON_MAX_ITER):
    """Newton iteration on f from z0; returns (z, converged)."""
    z = complex(z0)
    for _ in range(max_iter):
        dfz = complex(df(z))
        if dfz == 0 or not np.isfinite(dfz):
            return z, False
        step = complex(f(z)) / dfz
        z -= step
        if not np.isfinite(z):
            return z, False
        if abs(step) <= _NEWTON_STEP_TOL * (1 + abs(z)):
            return z, True
    return z, False


def _newton_in_box(f, df, box: Rectangle):
    diag = math.hypot(box.width, box.height)
    for z0 in (box.center,) + box.corners:
        z, ok = newton_polish(f, df, z0)
        if ok and box.contains(z, pad=1e-9 * diag):
            return z
    return None


def _newton_common_point(f, df, box: Rectangle):
    """Common Newton limit from the box corners and center, if any."""
    diag = math.hypot(box.width, box.height)
    points = []
    for z0 in (box.center,) + box.corners:
        z, ok = newton_polish(f, df, z0)
        if not ok:
            return None
        points.append(z)
    ref = points[0]
    if all(abs(p - ref) <= 1e-8 * (1 + abs(ref)) for p in points) and box.contains(
        ref, pad=diag
    ):
        return ref
    return None


# Deterministic split-line shift sequence (fractions of the box size) used
# when a zero lands on a proposed subdivision line.
_SPLIT_SHIFTS = (0.0, 1e-3, -1e-3, 3.7e-3, -3.7e-3, 7.1e-3)


def _split_box(f, df, box: Rectangle, count: int, freq_scale: float, residual_tol: float):
    for shift in _SPLIT_SHIFTS:
        xm = (box.re_min + box.re_max) / 2 + shift * box.width
        ym = (box.im_min + box.im_max) / 2 + shift * box.height
        children = (
            Rectangle(box.re_min, xm, box.im_min, ym),
            Rectangle(xm, box.re_max, box.im_min, ym),
            Rectangle(box.re_min, xm, ym, box.im_max),
            Rectangle(xm, box.re_max, ym, box.im_max),
        )
        try:
            counts = [
                count_zeros_rect(f, df, child, freq_scale, residual_tol)
                for child in children
            ]
        except (ContourThroughZero, QuadratureDivergence):
            continue
        if sum(counts) == count:
            return list(zip(children, counts))
    raise QuadratureDivergence(
        f"could not split {box} consistently (count {count})", where=box
    )


def find_resonances(
    f,
    df,
    region: Rectangle,
    max_depth: int = 14,
    freq_scale: float = 1.0,
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
) -> list[Resonance]:
    """Locate the zeros of f in a rectangle with multiplicities.

    Recursive quadrisection by argument-principle counts: single-zero boxes
    are polished by Newton iteration; boxes still holding several zeros at
    max_depth are reported with is_cluster=True (at the box center) unless
    Newton converges to one common point from the box corners, in which
    case that point carries the whole multiplicity.  Total multiplicity
    always equals the region count.
    """
    root = count = None
    for k in range(_MAX_NUDGES + 1):
        candidate = region if k == 0 else region.expanded(1 + 1e-6 * k)
        try:
            count = count_zeros_rect(f, df, candidate, freq_scale, residual_tol)
            root = candidate
            break
        except (ContourThroughZero, QuadratureDivergence):
            continue
    if root is None:
        raise ContourThroughZero(
            f"zeros on the boundary of {region} persist after nudging", where=region
        )

    out: list[Resonance] = []
    stack = [(root, count, 0)]
    while stack:
        box, c, depth = stack.pop()
        if c == 0:
            continue
        if c == 1:
            z = _newton_in_box(f, df, box)
            if z is not None:
                out.append(Resonance(z, 1, abs(complex(f(z))), False))
                continue
        if depth >= max_depth:
            z = _newton_common_point(f, df, box)
            if z is not None:
                out.append(Resonance(z, c, abs(complex(f(z))), False))
            else:
                zc = box.center
                out.append(Resonance(zc, c, abs(complex(f(zc))), True))
            continue
        for child, cc in _split_box(f, df, box, c, freq_scale, residual_tol):
            stack.append((child, cc, depth + 1))
    out.sort(key=lambda r: (r.location.real, r.location.imag))
    return out


def counting_function(
    strengths,
    config: Configuration,
    radii,
    freq_tol: float | None = None,
    cancel_tol: float | None = None,
    residual_tol: float = DEFAULT_RESIDUAL_TOL,
) -> list[ZeroCount]:
    """Zero counts of the expanded determinant in disks |z| < R.

    Radii must be strictly increasing; counts are nondecreasing since the
    disks are nested.
    """
    radii = [float(r) for r in radii]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise ValidationError("radii must be strictly increasing")
    kwargs = {}
    if freq_tol is not None:
        kwargs["freq_tol"] = freq_tol
    if cancel_tol is not None:
        kwargs["cancel_tol"] = cancel_tol
    epoly, _ = expand(strengths, config, **kwargs)
    f = epoly.evaluate
    df = epoly.derivative().evaluate
    scale = max(epoly.effective_size, 1e-3)
    return [
        count_zeros_disk(f, df, r, freq_scale=scale, residual_tol=residual_tol)
        for r in radii
    ]
