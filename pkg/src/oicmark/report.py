"""Structured (JSON) documents: embed manifest, tamper report, metric reports."""

from __future__ import annotations

import json
import math
from pathlib import Path

from . import __version__
from .metrics import QualityReport
from .verify import COVERED_CHANNELS, TamperMap, Verdict

MANIFEST_SUFFIX = ".oic.json"


class ManifestError(ValueError):
    pass


def _num(x: float):
    # JSON has no inf/nan; keep them readable
    if math.isinf(x):
        return "inf" if x > 0 else "-inf"
    if math.isnan(x):
        return "nan"
    return x


def manifest_path(image_path) -> Path:
    p = Path(image_path)
    return p.with_name(p.name + MANIFEST_SUFFIX)


def build_manifest(digest_hex: str, strategy, height: int, width: int,
                   cipher_mode: str) -> dict:
    return {
        "tool": "oicmark",
        "version": __version__,
        "device_digest": digest_hex,
        "strategy": strategy.name,
        "cipher_mode": cipher_mode,
        "height": height,
        "width": width,
    }


def read_manifest(path) -> dict:
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise ManifestError(f"cannot read manifest {path}: {exc}") from exc
    for field in ("device_digest", "strategy"):
        if field not in data:
            raise ManifestError(f"manifest {path} lacks {field!r}")
    return data


def quality_dict(report: QualityReport) -> dict:
    return {k: _num(v) for k, v in report.as_dict().items()}


def tamper_report(tmap: TamperMap, verdict: Verdict) -> dict:
    flagged = [
        {
            "block": [br, bc],
            "pixels": {"top": box[0], "left": box[1], "bottom": box[2], "right": box[3]},
            "observed": float(tmap.observed[br - 1, bc - 1]),
            "expected": float(tmap.expected[br - 1, bc - 1]),
            "deviation": float(tmap.deviation[br - 1, bc - 1]),
        }
        for (br, bc), box in zip(verdict.flagged_blocks, verdict.bounding_boxes)
    ]
    return {
        "tampered": verdict.tampered,
        "flagged_count": verdict.flagged_count,
        "tolerance": _num(tmap.tolerance),
        "strategy": tmap.strategy.name,
        "blocks": [tmap.block_rows, tmap.block_cols],
        "uncovered_blocks": int((~tmap.covered).sum()),
        "max_deviation": _num(tmap.max_deviation),
        "channels_covered": list(COVERED_CHANNELS),
        "flagged": flagged,
    }


def dump(doc: dict, path=None) -> str:
    text = json.dumps(doc, indent=2)
    if path is not None:
        Path(path).write_text(text + "\n")
    return text


def sweep_table(rows: dict[str, QualityReport]) -> str:
    """One table per metric, one column per strategy."""
    names = list(rows)
    lines = []
    for metric in ("mae", "mse", "psnr", "ssim", "uiqi", "entropy"):
        lines.append(metric.upper())
        lines.append("  ".join(f"{n:>12}" for n in names))
        lines.append("  ".join(f"{getattr(rows[n], metric):>12.6g}" for n in names))
        lines.append("")
    return "\n".join(lines).rstrip() + "\n"
