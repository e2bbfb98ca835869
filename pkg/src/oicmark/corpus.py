"""Bundled evaluation images (six PNGs, each at most 480x640)."""

from importlib import resources

from .image import RgbImage, load_image


def corpus_names() -> list[str]:
    root = resources.files("oicmark").joinpath("data/corpus")
    return sorted(p.name[:-4] for p in root.iterdir() if p.name.endswith(".png"))


def load_corpus() -> dict[str, RgbImage]:
    root = resources.files("oicmark").joinpath("data/corpus")
    out = {}
    for name in corpus_names():
        with resources.as_file(root.joinpath(f"{name}.png")) as path:
            out[name] = load_image(path)
    return out
