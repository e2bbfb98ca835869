"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line."""

import hashlib
import json

import numpy as np
import oracles
import pytest
from helpers import CAL_ID, OTHER_ID, random_image
from PIL import Image

from oicmark import metrics
from oicmark.attacks import DISTINCT_PRESETS, apply_attack, changed_samples, preset
from oicmark.cli import EXIT_TAMPERED, main
from oicmark.crypto.aes import encrypt_ecb
from oicmark.crypto.sha1 import sha1_hex
from oicmark.embed import Strategy, embed
from oicmark.metrics import quality_report
from oicmark.transform import dct2_block, idct2_block
from oicmark.verify import summarize, verify


@pytest.fixture
def report(capsys):
    def emit(number, title, ok, detail=""):
        with capsys.disabled():
            print(f"\n[{'PASS' if ok else 'FAIL'}] criterion {number}: {title}"
                  + (f" -- {detail}" if detail else ""))
        assert ok, detail
    return emit


def _overlaps(box, rows, cols):
    top, left, bottom, right = box
    return top <= rows[1] and bottom >= rows[0] and left <= cols[1] and right >= cols[0]


def test_c1_transform_round_trip(report):
    rng = np.random.default_rng(1)
    worst_inv, worst_parseval = 0.0, 0.0
    for _ in range(1000):
        b = rng.uniform(0, 255, (8, 8))
        c = dct2_block(b)
        worst_inv = max(worst_inv, np.abs(idct2_block(c) - b).max())
        worst_parseval = max(worst_parseval, abs(np.sum(c ** 2) / np.sum(b ** 2) - 1))
    report(1, "DCT round trip and Parseval on 1000 blocks",
           worst_inv < 1e-10 and worst_parseval < 1e-6,
           f"max |idct(dct(B))-B| = {worst_inv:.2e}, max Parseval rel err = {worst_parseval:.2e}")


def test_c2_crypto_vectors(report):
    checks = {
        "sha1('abc')": sha1_hex(b"abc") == "a9993e364706816aba3e25717850c26c9cd0d89d",
        "sha1('')": sha1_hex(b"") == "da39a3ee5e6b4b0d3255bfef95601890afd80709",
        "sha1(448-bit)": sha1_hex(
            b"abcdbcdecdefdefgefghfghighijhijkijkljklmklmnlmnomnopnopq"
        ) == "84983e441c3bd26ebaae4aa1f95129e5e54670f1",
        "sha1(1M x 'a')": sha1_hex(b"a" * 1_000_000)
        == "34aa973cd4c4daa4f61eeb2bdbad27316534016f",
        "aes FIPS-197 C.1": encrypt_ecb(
            bytes.fromhex("000102030405060708090a0b0c0d0e0f"),
            bytes.fromhex("00112233445566778899aabbccddeeff"),
        ).hex() == "69c4e0d86a7b0430d8cdb78070b4c55a",
        "aes FIPS-197 B": encrypt_ecb(
            bytes.fromhex("2b7e151628aed2a6abf7158809cf4f3c"),
            bytes.fromhex("3243f6a8885a308d313198a2e0370734"),
        ).hex() == "3925841d02dc09fbdc118597196a0b32",
    }
    assert hashlib.sha1(b"abc").hexdigest() == sha1_hex(b"abc")
    failed = [k for k, ok in checks.items() if not ok]
    report(2, "SHA-1 and AES-128 standard vectors", not failed,
           f"{len(checks) - len(failed)}/{len(checks)} vectors" + (f", failed {failed}" if failed else ""))


def test_c3_fidelity_ordering(report, corpus, watermarked):
    problems, lines = [], []
    for name, img in corpus.items():
        q = {s: quality_report(img, watermarked(name, s)) for s in ("DC", "FAC", "MAC")}
        dc, fac, mac = q["DC"], q["FAC"], q["MAC"]
        lines.append(f"{name}: MSE {dc.mse:.1f}>{fac.mse:.1f}>={mac.mse:.1f} "
                     f"PSNR {mac.psnr:.2f} vs {dc.psnr:.2f} SSIM {mac.ssim:.4f} "
                     f"UIQI {mac.uiqi:.4f}")
        if not dc.mse > fac.mse >= mac.mse:
            problems.append(f"{name}: MSE ordering")
        if not mac.psnr > dc.psnr + 10:
            problems.append(f"{name}: PSNR gap")
        if not mac.ssim > 0.90:
            problems.append(f"{name}: SSIM")
        if not mac.uiqi > 0.98:
            problems.append(f"{name}: UIQI")
    detail = "; ".join(problems) if problems else f"{len(corpus)} images"
    report(3, "fidelity ordering DC/FAC/MAC", not problems, detail + "\n    " + "\n    ".join(lines))


def test_c4_zero_false_positives(report, corpus, watermarked):
    bad = []
    for name, img in corpus.items():
        for s in Strategy:
            n = int(verify(watermarked(name, s.name), CAL_ID, s).flagged.sum())
            if n:
                bad.append(f"{name}/{s.name}: {n}")
    report(4, "zero false positives at calibrated tolerance", not bad,
           ", ".join(bad) or f"{len(corpus)} images x {len(Strategy)} strategies clean")


def test_c5_attack_detection(report, corpus, watermarked):
    missed, checked, skipped = [], 0, 0
    for name, img in corpus.items():
        marked = watermarked(name, "MAC")
        for p in DISTINCT_PRESETS:
            spec = preset(p).clipped(img.height, img.width)
            if spec is None:
                skipped += 1
                continue
            attacked = apply_attack(marked, spec)
            if changed_samples(marked, attacked) == 0:
                skipped += 1
                continue
            checked += 1
            v = summarize(verify(attacked, CAL_ID, Strategy.MAC))
            if not any(_overlaps(b, spec.rows, spec.cols) for b in v.bounding_boxes):
                missed.append(f"{name}/{p}")
    report(5, "attack presets detected in the attacked region", not missed and checked > 0,
           f"{checked} attacks detected, {skipped} no-op/out-of-range skipped"
           + (f", missed {missed}" if missed else ""))


def test_c6_wrong_key(report, corpus, watermarked):
    rates = {}
    for name in corpus:
        tmap = verify(watermarked(name, "MAC"), OTHER_ID, Strategy.MAC)
        rates[name] = float(tmap.flagged.mean())
    worst = min(rates, key=rates.get)
    report(6, "wrong device ID flags >= 95% of blocks", rates[worst] >= 0.95,
           f"lowest {worst} {rates[worst]:.2%}")


def test_c7_metric_oracles(report):
    rng = np.random.default_rng(7)
    worst = 0.0
    for _ in range(20):
        rows, cols = rng.integers(8, 24, 2)
        a, b = random_image(rng, rows, cols), random_image(rng, rows, cols)
        A, B = a.to_array().tolist(), b.to_array().tolist()
        for fn in ("mse", "mae", "psnr", "uiqi", "ssim"):
            ref = getattr(oracles, fn)(A, B)
            worst = max(worst, abs(getattr(metrics, fn)(a, b) - ref) / abs(ref))
        worst = max(worst, abs(metrics.entropy(b) - oracles.entropy(B)) / oracles.entropy(B))
    report(7, "metrics match brute-force oracles on 20 pairs", worst < 1e-9,
           f"max relative error {worst:.2e}")


def test_c8_channel_isolation(report, corpus, watermarked):
    bad = [
        f"{name}/{s.name}"
        for name, img in corpus.items()
        for s in Strategy
        if not (np.array_equal(watermarked(name, s.name).green, img.green)
                and np.array_equal(watermarked(name, s.name).blue, img.blue))
    ]
    report(8, "green and blue bit-identical after embedding", not bad, ", ".join(bad) or "exact")


def test_c9_cli_end_to_end(report, tmp_path, corpus, capsys):
    src = tmp_path / "tissue.png"
    Image.fromarray(corpus["tissue_480x640"].to_array()).save(src)
    wm, bad, rep = tmp_path / "wm.png", tmp_path / "bad.png", tmp_path / "report.json"
    codes = [
        main(["embed", str(src), str(wm), "--id", CAL_ID]),
        main(["attack", str(wm), str(bad), "--preset", "fig10a"]),
        main(["verify", str(bad), "--id", CAL_ID, "--report", str(rep)]),
    ]
    capsys.readouterr()
    doc = json.loads(rep.read_text())
    boxes = [tuple(f["pixels"][k] for k in ("top", "left", "bottom", "right"))
             for f in doc["flagged"]]
    hit = [b for b in boxes if _overlaps(b, (238, 241), (300, 303))]
    ok = codes == [0, 0, EXIT_TAMPERED] and boxes and len(hit) > 0
    report(9, "CLI embed -> attack fig10a -> verify", ok,
           f"exit codes {codes}, {len(boxes)} flagged boxes, {len(hit)} intersect rows "
           f"238-241 x cols 300-303")
