"""Fidelity metrics between an original and a watermarked or attacked image.

MSE, MAE and PSNR pool all three channels. UIQI, SSIM and entropy work on the
BT.601 luma plane (rounded to 8 bits) with global, whole-image statistics.
Variances and covariances use the population (1/N) convention.
"""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass

import numpy as np

from .image import RgbImage

PEAK = 255.0
SSIM_C1 = (0.01 * PEAK) ** 2
SSIM_C2 = (0.03 * PEAK) ** 2
LUMA_WEIGHTS = (0.299, 0.587, 0.114)


class MetricError(ValueError):
    pass


class UndefinedMetricError(MetricError):
    """The metric has no value for these inputs (e.g. zero variance for UIQI)."""


@dataclass(frozen=True)
class QualityReport:
    mse: float
    mae: float
    psnr: float
    uiqi: float
    ssim: float
    entropy: float

    def as_dict(self) -> dict:
        return asdict(self)


def _pair(a: RgbImage, b: RgbImage) -> tuple[np.ndarray, np.ndarray]:
    if a.shape != b.shape:
        raise MetricError(f"image sizes differ: {a.shape} vs {b.shape}")
    return a.to_array().astype(np.float64), b.to_array().astype(np.float64)


def luma(image: RgbImage) -> np.ndarray:
    wr, wg, wb = LUMA_WEIGHTS
    y = wr * image.red.astype(np.float64) + wg * image.green + wb * image.blue
    return np.clip(np.floor(y + 0.5), 0, 255)


def mse(a: RgbImage, b: RgbImage) -> float:
    x, y = _pair(a, b)
    return float(np.mean((x - y) ** 2))


def mae(a: RgbImage, b: RgbImage) -> float:
    x, y = _pair(a, b)
    return float(np.mean(np.abs(x - y)))


def psnr_from_mse(value: float) -> float:
    if value == 0:
        return math.inf
    return float(10.0 * math.log10(PEAK ** 2 / value))


def psnr(a: RgbImage, b: RgbImage) -> float:
    """Peak signal-to-noise ratio in dB; ``inf`` for identical images."""
    return psnr_from_mse(mse(a, b))


def _luma_stats(a: RgbImage, b: RgbImage):
    _pair(a, b)
    x, y = luma(a).ravel(), luma(b).ravel()
    mx, my = x.mean(), y.mean()
    dx, dy = x - mx, y - my
    return mx, my, np.mean(dx * dx), np.mean(dy * dy), np.mean(dx * dy)


def uiqi(a: RgbImage, b: RgbImage) -> float:
    """Universal image quality index: correlation x luminance x contrast terms."""
    mx, my, vx, vy, cxy = _luma_stats(a, b)
    if vx == 0 or vy == 0:
        raise UndefinedMetricError("UIQI is undefined when either luma plane is constant")
    if mx == 0 and my == 0:
        raise UndefinedMetricError("UIQI is undefined when both luma planes are all zero")
    sx, sy = math.sqrt(vx), math.sqrt(vy)
    correlation = cxy / (sx * sy)
    luminance = 2 * mx * my / (mx ** 2 + my ** 2)
    contrast = 2 * sx * sy / (vx + vy)
    return float(correlation * luminance * contrast)


def ssim(a: RgbImage, b: RgbImage) -> float:
    mx, my, vx, vy, cxy = _luma_stats(a, b)
    num = (2 * mx * my + SSIM_C1) * (2 * cxy + SSIM_C2)
    den = (mx ** 2 + my ** 2 + SSIM_C1) * (vx + vy + SSIM_C2)
    return float(num / den)


def entropy(image: RgbImage) -> float:
    """Shannon entropy (bits/pixel) of the 256-bin luma histogram."""
    counts = np.bincount(luma(image).astype(np.int64).ravel(), minlength=256)
    p = counts[counts > 0] / counts.sum()
    return float(max(0.0, -np.sum(p * np.log2(p))))


def quality_report(original: RgbImage, other: RgbImage) -> QualityReport:
    """All metrics of ``other`` against ``original``; entropy is that of ``other``.

    An undefined UIQI is reported as NaN rather than raised.
    """
    m = mse(original, other)
    try:
        q = uiqi(original, other)
    except UndefinedMetricError:
        q = math.nan
    return QualityReport(m, mae(original, other), psnr_from_mse(m), q,
                         ssim(original, other), entropy(other))
