"""Exponential-polynomial form of the characteristic determinant.

Expanding det of the interaction matrix over permutations writes D(z) as a
finite sum of terms sign * K1 * prod_{fixed j}(i z - 4 pi a_j) * e^{i V z},
one per permutation, where V is the permutation's total bond length and K1
the product of reciprocal bond lengths.  Grouping terms by frequency and
summing the polynomial parts yields the canonical form

    D(z) = sum_j P_{b_j}(z) e^{i b_j z},   0 = b_0 < b_1 < ... < b_nu,

after pruning frequency groups whose polynomials cancel.  The top surviving
frequency b_nu is the effective size governing the resonance counting
asymptotics; cancellation diagnostics record how close each group came to
vanishing.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np
from numpy.polynomial import polynomial as npoly

from . import _sweep
from .errors import TooLarge, ValidationError
from .geometry import Configuration, distance_matrix, strength_values, validate_configuration
from .permutations import MAX_ENUM_N, Permutation, cycle_decompose
from .sizing import _v_of_image

# Relative gap threshold for clustering nearly-equal term frequencies.
DEFAULT_FREQ_TOL = 1e-9
# A frequency group counts as cancelled when its summed coefficients drop
# below this fraction of the largest pre-sum coefficient magnitude.
DEFAULT_CANCEL_TOL = 1e-10


@dataclass(frozen=True)
class LeibnizTerm:
    """One determinant-expansion term for a single permutation."""

    sigma: Permutation
    frequency: float
    sign: int
    k1: float
    fixed_points: tuple[int, ...]

    def polynomial(self, strengths) -> np.ndarray:
        """Coefficients (ascending) of sign * k1 * prod(i z - 4 pi a_j)."""
        a = strength_values(strengths, self.sigma.n)
        coeffs = np.array([self.sign * self.k1], dtype=complex)
        for j in self.fixed_points:
            coeffs = npoly.polymul(coeffs, np.array([-4 * np.pi * a[j], 1j]))
        return coeffs


@dataclass(frozen=True)
class CancellationGroup:
    """Survival diagnostics for one frequency cluster."""

    frequency: float
    pre_scale: float
    post_scale: float
    cancelled: bool


@dataclass(frozen=True)
class CancellationReport:
    """Which term frequencies survived the summation, and how narrowly."""

    groups: tuple[CancellationGroup, ...]
    cancelled_frequencies: tuple[float, ...]
    freq_tol: float
    cancel_tol: float

    def near_cancellations(self, factor: float = 10.0) -> tuple[CancellationGroup, ...]:
        """Groups whose residual is within factor * cancel_tol of vanishing."""
        thr = factor * self.cancel_tol
        return tuple(g for g in self.groups if g.post_scale <= thr * g.pre_scale)


class ExpoPolynomial:
    """Canonical exponential polynomial sum_j P_{b_j}(z) e^{i b_j z}.

    Frequencies are strictly increasing nonnegative reals; every stored
    polynomial is nonzero.  Construction merges exactly-equal frequencies
    and trims trailing zero coefficients.
    """

    __slots__ = ("terms",)

    def __init__(self, terms):
        merged: dict[float, np.ndarray] = {}
        for freq, coeffs in terms:
            freq = float(freq)
            coeffs = np.atleast_1d(np.asarray(coeffs, dtype=complex))
            if freq in merged:
                width = max(len(merged[freq]), len(coeffs))
                buf = np.zeros(width, dtype=complex)
                buf[: len(merged[freq])] += merged[freq]
                buf[: len(coeffs)] += coeffs
                merged[freq] = buf
            else:
                merged[freq] = coeffs.copy()
        out = []
        for freq in sorted(merged):
            coeffs = merged[freq]
            nz = np.nonzero(coeffs)[0]
            if len(nz) == 0:
                continue
            coeffs = coeffs[: nz[-1] + 1]
            coeffs.setflags(write=False)
            out.append((freq, coeffs))
        self.terms = tuple(out)

    @property
    def frequencies(self) -> np.ndarray:
        return np.array([b for b, _ in self.terms])

    @property
    def nu(self) -> int:
        return len(self.terms) - 1

    @property
    def effective_size(self) -> float:
        """The largest surviving frequency."""
        if not self.terms:
            raise ValidationError("empty exponential polynomial has no top frequency")
        return self.terms[-1][0]

    def coefficients(self, frequency: float) -> np.ndarray:
        for b, c in self.terms:
            if b == frequency:
                return c
        raise KeyError(frequency)

    def evaluate(self, z):
        """Evaluate at a complex point or array (Horner per polynomial)."""
        zz = np.asarray(z, dtype=complex)
        total = np.zeros_like(zz)
        for b, coeffs in self.terms:
            total = total + npoly.polyval(zz, coeffs) * np.exp(1j * b * zz)
        if zz.ndim == 0:
            return complex(total)
        return total

    __call__ = evaluate

    def derivative(self) -> "ExpoPolynomial":
        """Termwise derivative (P' + i b P) e^{i b z}."""
        out = []
        for b, coeffs in self.terms:
            dc = 1j * b * coeffs.astype(complex)
            dc = np.concatenate([dc, [0.0]])[: max(len(coeffs), 1)]
            if len(coeffs) > 1:
                dc[:-1] += np.arange(1, len(coeffs)) * coeffs[1:]
            out.append((b, dc))
        return ExpoPolynomial(out)

    def to_jsonable(self) -> list[dict]:
        return [
            {
                "frequency": b,
                "coefficients": [[float(c.real), float(c.imag)] for c in coeffs],
            }
            for b, coeffs in self.terms
        ]

    def __repr__(self) -> str:
        freqs = ", ".join(f"{b:.6g}" for b, _ in self.terms)
        return f"ExpoPolynomial(frequencies=[{freqs}])"


def _check_expand_n(n: int) -> None:
    if n > MAX_ENUM_N:
        raise TooLarge(f"determinant expansion capped at N <= {MAX_ENUM_N}, got {n}")


def zero_frequency_polynomial(strengths) -> ExpoPolynomial:
    """The zero-frequency part prod_j (i z - 4 pi a_j) as a one-term form.

    Its zeros sit at -4 pi i a_j; handy as a synthetic test signal.
    """
    a = strength_values(strengths)
    coeffs = np.array([1.0], dtype=complex)
    for aj in a:
        coeffs = npoly.polymul(coeffs, np.array([-4 * np.pi * aj, 1j]))
    return ExpoPolynomial([(0.0, coeffs)])


def leibniz_terms(strengths, config: Configuration) -> list[LeibnizTerm]:
    """One expansion term per permutation, in lexicographic order.

    Materializes all N! terms; intended for small N (expand() streams the
    same data without building term objects).
    """
    config = validate_configuration(config)
    _check_expand_n(config.n)
    strength_values(strengths, config.n)  # validate pairing
    d = distance_matrix(config)
    n = config.n
    terms = []
    for image in itertools.permutations(range(n)):
        sigma = Permutation(image)
        moved = [j for j in range(n) if image[j] != j]
        k1 = 1.0
        for j in moved:
            k1 /= d[j, image[j]]
        sign = -1 if (n - cycle_decompose(sigma).m) % 2 else 1
        terms.append(
            LeibnizTerm(
                sigma=sigma,
                frequency=_v_of_image(d, image),
                sign=sign,
                k1=k1,
                fixed_points=tuple(j for j in range(n) if image[j] == j),
            )
        )
    return terms


def _mask_polynomial(mask: int, minus_4pi_a: np.ndarray) -> np.ndarray:
    """prod over set bits j of (i z - 4 pi a_j), ascending coefficients."""
    coeffs = np.array([1.0], dtype=complex)
    j = 0
    m = mask
    while m:
        if m & 1:
            coeffs = npoly.polymul(coeffs, np.array([minus_4pi_a[j], 1j]))
        m >>= 1
        j += 1
    return coeffs


def expand(
    strengths,
    config: Configuration,
    freq_tol: float = DEFAULT_FREQ_TOL,
    cancel_tol: float = DEFAULT_CANCEL_TOL,
) -> tuple[ExpoPolynomial, CancellationReport]:
    """Group the determinant expansion by frequency into canonical form.

    Frequencies are clustered by single-linkage on the sorted V values with
    absolute gap threshold freq_tol * max(1, V(Y)).  Within each cluster the
    polynomial parts are summed (fixed summation order, so results are
    reproducible); a cluster is pruned as cancelled when its summed
    coefficients all fall below cancel_tol times the largest pre-sum
    coefficient magnitude.  The zero-frequency group always survives: its
    polynomial is prod_j (i z - 4 pi a_j), of degree exactly N.
    """
    config = validate_configuration(config)
    _check_expand_n(config.n)
    a = strength_values(strengths, config.n)
    d = distance_matrix(config)
    n = config.n

    v_all, w_all, mask_all = _sweep.term_arrays(d)
    order = np.argsort(v_all, kind="stable")
    v_sorted = v_all[order]
    tol_abs = freq_tol * max(1.0, float(v_sorted[-1]))
    splits = np.nonzero(np.diff(v_sorted) > tol_abs)[0] + 1
    bounds = np.concatenate([[0], splits, [len(v_sorted)]])

    minus_4pi_a = -4 * np.pi * a
    poly_cache: dict[int, np.ndarray] = {}
    peak_cache: dict[int, float] = {}

    surviving = []
    groups = []
    cancelled_freqs = []
    for lo, hi in zip(bounds[:-1], bounds[1:]):
        idx = order[lo:hi]
        freq = 0.0 if v_sorted[lo] == 0.0 else float(v_sorted[lo:hi].mean())
        masks = mask_all[idx]
        weights = w_all[idx]
        unique_masks, inverse = np.unique(masks, return_inverse=True)
        weight_sums = np.zeros(len(unique_masks))
        np.add.at(weight_sums, inverse, weights)

        peaks = np.empty(len(unique_masks))
        for i, m in enumerate(unique_masks):
            m = int(m)
            if m not in poly_cache:
                poly_cache[m] = _mask_polynomial(m, minus_4pi_a)
                peak_cache[m] = float(np.abs(poly_cache[m]).max())
            peaks[i] = peak_cache[m]
        pre_scale = float((np.abs(weights) * peaks[inverse]).max())

        summed = np.zeros(n + 1, dtype=complex)
        for m, ws in zip(unique_masks, weight_sums):
            c = poly_cache[int(m)]
            summed[: len(c)] += ws * c
        post_scale = float(np.abs(summed).max())

        cancelled = freq > 0.0 and post_scale <= cancel_tol * pre_scale
        groups.append(CancellationGroup(freq, pre_scale, post_scale, cancelled))
        if cancelled:
            cancelled_freqs.append(freq)
        else:
            surviving.append((freq, summed))

    report = CancellationReport(
        tuple(groups), tuple(cancelled_freqs), freq_tol, cancel_tol
    )
    return ExpoPolynomial(surviving), report
