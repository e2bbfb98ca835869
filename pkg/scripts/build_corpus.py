"""Regenerate the bundled test corpus under src/oicmark/data/corpus/.

Needs scikit-image (only for this script). Sources are the CC0 / public-domain
sample images shipped with scikit-image plus two seeded synthetic images.
"""

from pathlib import Path

import numpy as np
from PIL import Image
from scipy import ndimage
from skimage import data
from skimage.transform import resize

OUT = Path(__file__).resolve().parents[1] / "src" / "oicmark" / "data" / "corpus"


def to_u8(x):
    return np.clip(np.floor(x + 0.5), 0, 255).astype(np.uint8)


def gray_to_rgb(g):
    return np.stack([g, g, g], axis=-1)


def synthetic_gradient(rows, cols, rng):
    r, c = np.mgrid[0:rows, 0:cols] / np.array([rows, cols])[:, None, None]
    img = np.stack([40 + 180 * c, 30 + 150 * r, 200 - 120 * (r + c) / 2], axis=-1)
    for _ in range(6):
        cy, cx = rng.uniform(0, 1, 2)
        s = rng.uniform(0.04, 0.12)
        blob = np.exp(-((r - cy) ** 2 + (c - cx) ** 2) / (2 * s * s))
        img += blob[..., None] * rng.uniform(-60, 60, 3)
    # hard-edged discs, like organ outlines
    for _ in range(8):
        cy, cx = rng.uniform(0.1, 0.9, 2)
        rad = rng.uniform(0.05, 0.2)
        disc = ((r - cy) ** 2 + (c - cx) ** 2) < rad * rad
        img[disc] = 0.5 * img[disc] + rng.uniform(0, 255, 3) * 0.5
    img += rng.normal(0, 2.0, img.shape)
    return to_u8(img)


def synthetic_tissue(rows, cols, rng):
    field = ndimage.gaussian_filter(rng.normal(0, 1, (rows, cols)), 6)
    field = (field - field.min()) / np.ptp(field)
    fine = ndimage.gaussian_filter(rng.normal(0, 1, (rows, cols)), 1.5)
    base = 15 + 225 * field ** 1.5 + 10 * fine
    img = np.stack([base * 1.05, base * 0.75, base * 0.85], axis=-1)
    return to_u8(img)


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(20200624)
    images = {
        "ihc_472x499": data.immunohistochemistry()[:472, :499],
        "retina_480x480": to_u8(resize(data.retina(), (480, 480), anti_aliasing=True) * 255),
        "phantom_400x400": gray_to_rgb(to_u8(data.shepp_logan_phantom() * 255)),
        "cell_480x544": gray_to_rgb(data.cell()[:480, :544]),
        "gradient_288x348": synthetic_gradient(288, 348, rng),
        "tissue_480x640": synthetic_tissue(480, 640, rng),
    }
    for name, arr in images.items():
        Image.fromarray(arr).save(OUT / f"{name}.png")
        print(name, arr.shape)


if __name__ == "__main__":
    main()
