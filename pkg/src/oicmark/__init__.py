"""Fragile blockwise-DCT watermarking of RGB medical images.

A key derived from the capture device ID enciphers the blue channel; one DCT
coefficient per 8x8 red block is replaced by the matching coefficient of that
ciphertext. A receiver holding the ID recomputes the expected coefficients and
flags blocks that no longer match.
"""

__version__ = "0.1.0"

from .attacks import AttackSpec, apply_attack  # noqa: E402
from .embed import Strategy, WatermarkedImage, embed  # noqa: E402
from .image import RgbImage, load_image, save_image  # noqa: E402
from .metrics import QualityReport, quality_report  # noqa: E402
from .verify import TamperMap, Verdict, summarize, verify  # noqa: E402

__all__ = [
    "AttackSpec",
    "QualityReport",
    "RgbImage",
    "Strategy",
    "TamperMap",
    "Verdict",
    "WatermarkedImage",
    "apply_attack",
    "embed",
    "load_image",
    "quality_report",
    "save_image",
    "summarize",
    "verify",
]
