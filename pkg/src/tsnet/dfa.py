"""Detrended fluctuation analysis.

The series is integrated into a profile, the profile is split into
non-overlapping windows of each scale (taken from both the front and
the back so trailing samples are never discarded), a least-squares
polynomial is removed per window, and F(n) is the RMS of the residuals.
The Hurst exponent is the slope of ln F(n) against ln n.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._fit import linear_fit, log_spaced_ints
from .errors import DegenerateFit, InvalidParam, ScaleOutOfRange, SeriesTooShort
from .visibility import _series_values

_MIN_SCALE = 8
_DEFAULT_SCALE_COUNT = 20


@dataclass
class DfaResult:
    """Fluctuation function and, once fitted, the Hurst estimate."""

    scales: np.ndarray
    fluctuations: np.ndarray
    order: int
    hurst: float | None = None
    fit_r2: float | None = None
    fit_range: tuple[int, int] | None = None
    n_obs: int = 0


def default_scales(n: int, order: int = 2, count: int = _DEFAULT_SCALE_COUNT) -> np.ndarray:
    """Log-spaced integer scales from max(8, order + 2) to n // 4."""
    lo = max(_MIN_SCALE, order + 2)
    hi = n // 4
    if hi < lo:
        raise SeriesTooShort(f"n={n} leaves no valid scale (need n >= {4 * lo})")
    return log_spaced_ints(lo, hi, count)


def dfa_fluctuation(ts, scales=None, order: int = 2) -> DfaResult:
    """Compute F(n) over the given scales (default grid if omitted)."""
    y = _series_values(ts)
    n = y.size
    if order < 0:
        raise InvalidParam(f"detrending order must be >= 0, got {order}")
    if scales is None:
        scale_arr = default_scales(n, order=order)
    else:
        scale_arr = np.asarray([int(s) for s in scales], dtype=np.int64)
        if scale_arr.size == 0:
            raise InvalidParam("empty scale list")
        for s in scale_arr:
            if s < order + 2 or s > n // 4:
                raise ScaleOutOfRange(
                    f"scale {s} outside [{order + 2}, {n // 4}] for n={n}"
                )
    profile = np.cumsum(y - y.mean())
    flucts = np.empty(scale_arr.size, dtype=np.float64)
    for idx, s in enumerate(scale_arr):
        flucts[idx] = _fluctuation_at_scale(profile, int(s), order)
    return DfaResult(
        scales=scale_arr, fluctuations=flucts, order=order, n_obs=n
    )


def _fluctuation_at_scale(profile: np.ndarray, s: int, order: int) -> float:
    n = profile.size
    k = n // s
    # forward and backward segmentation; every sample contributes
    windows = np.concatenate(
        [profile[: k * s].reshape(k, s), profile[n - k * s :].reshape(k, s)]
    )
    # centered, range-normalized abscissa keeps the Vandermonde system
    # well conditioned even for large scales and high orders
    x = np.arange(s, dtype=np.float64) - (s - 1) / 2.0
    x /= x[-1] if x[-1] > 0 else 1.0
    v = np.vander(x, order + 1, increasing=True)
    a = v.T @ v
    b = v.T @ windows.T
    coef = np.linalg.solve(a, b)
    resid = windows.T - v @ coef
    return float(np.sqrt(np.mean(resid * resid)))


def hurst(result: DfaResult, fit_range: tuple[int, int] | None = None) -> float:
    """Fit ln F(n) vs ln n and store the slope on the result.

    Scales with F(n) == 0 carry no log information and are dropped;
    fewer than two usable scales is a degenerate fit.
    """
    scales = result.scales
    flucts = result.fluctuations
    if fit_range is not None:
        lo, hi = fit_range
        keep = (scales >= lo) & (scales <= hi)
        scales, flucts = scales[keep], flucts[keep]
    positive = flucts > 0.0
    scales, flucts = scales[positive], flucts[positive]
    if scales.size < 2:
        raise DegenerateFit(
            f"{scales.size} usable scales after filtering, need 2"
        )
    fit = linear_fit(np.log(scales.astype(np.float64)), np.log(flucts))
    result.hurst = fit.slope
    result.fit_r2 = fit.r2
    result.fit_range = (int(scales[0]), int(scales[-1]))
    return fit.slope


def estimate_hurst(ts, scales=None, order: int = 2,
                   fit_range: tuple[int, int] | None = None) -> DfaResult:
    """Fluctuation function and Hurst fit in one call."""
    result = dfa_fluctuation(ts, scales=scales, order=order)
    hurst(result, fit_range=fit_range)
    return result


def classify_persistence(h: float, tol: float = 1e-9) -> str:
    """Label an exponent: anti-persistent (< 0.5), uncorrelated, persistent."""
    if not np.isfinite(h):
        raise InvalidParam(f"non-finite Hurst exponent {h!r}")
    if abs(h - 0.5) <= tol:
        return "uncorrelated"
    return "anti-persistent" if h < 0.5 else "persistent"
