import numpy as np

from oicmark.image import RgbImage

# the ID the bundled calibration was computed with
CAL_ID = "OIC-CALIBRATION-0001"
OTHER_ID = "scanner-B/SN-7731"


def random_image(rng, rows, cols):
    return RgbImage.from_array(rng.integers(0, 256, size=(rows, cols, 3), dtype=np.uint8))


def smooth_image(rng, rows, cols):
    """Low-frequency content plus mild noise, so coefficient statistics look natural."""
    r, c = np.mgrid[0:rows, 0:cols]
    base = np.stack([
        110 + 80 * np.sin(r / 17.0 + k) * np.cos(c / 23.0 - k) for k in range(3)
    ], axis=-1)
    base += rng.normal(0, 3, base.shape)
    return RgbImage.from_array(np.clip(np.round(base), 0, 255).astype(np.uint8))
