"""Command-line front end.

Exit codes: 0 success / clean image, 1 usage or I/O error, 2 tampering detected.
"""

from __future__ import annotations

import shutil
import sys
from pathlib import Path

import click

from . import attacks as atk
from .corpus import load_corpus
from .crypto import CIPHER_MODES, derive_key
from .embed import Strategy, embed
from .image import load_image, save_image
from .metrics import quality_report
from .report import (
    build_manifest,
    dump,
    manifest_path,
    quality_dict,
    read_manifest,
    sweep_table,
    tamper_report,
)
from .verify import (
    TOLERANCE_FLOOR,
    calibrate_tolerance,
    summarize,
    verify,
)

EXIT_OK, EXIT_ERROR, EXIT_TAMPERED = 0, 1, 2

STRATEGY_CHOICE = click.Choice([s.name.lower() for s in Strategy], case_sensitive=False)
CHANNEL_CHOICE = click.Choice(["red", "green", "blue"], case_sensitive=False)


def _device_id(device_id, id_file) -> str:
    if device_id and id_file:
        raise click.UsageError("use either --id or --id-file, not both")
    if id_file:
        text = Path(id_file).read_text(encoding="utf-8").splitlines()
        device_id = text[0] if text else ""
    if not device_id:
        raise click.UsageError("a device ID is required (--id or --id-file)")
    return device_id


def id_options(f):
    f = click.option("--id-file", type=click.Path(exists=True, dir_okay=False),
                     help="File whose first line is the device ID.")(f)
    f = click.option("--id", "device_id", help="Capture-device identifier.")(f)
    return f


@click.group()
@click.version_option(package_name="artifact", prog_name="oicmark")
def cli():
    """Embed, attack, verify and score device-keyed DCT watermarks."""


@cli.command("embed")
@click.argument("source", type=click.Path(exists=True, dir_okay=False))
@click.argument("output", type=click.Path(dir_okay=False))
@id_options
@click.option("--strategy", type=STRATEGY_CHOICE, default="mac", show_default=True)
@click.option("--manifest", type=click.Path(dir_okay=False),
              help="Sidecar manifest path [default: OUTPUT.oic.json].")
@click.option("--cipher-mode", type=click.Choice(CIPHER_MODES), default="indexed",
              show_default=True)
@click.option("--no-settle", is_flag=True,
              help="Skip the post-rounding settle pass (plain substitution output).")
def embed_cmd(source, output, device_id, id_file, strategy, manifest, cipher_mode, no_settle):
    """Watermark SOURCE and write the result losslessly to OUTPUT (PNG)."""
    device_id = _device_id(device_id, id_file)
    image = load_image(source)
    strategy = Strategy.parse(strategy)
    marked = embed(image, device_id, strategy, settle_blocks=not no_settle,
                   cipher_mode=cipher_mode)
    save_image(marked.image, output)
    doc = build_manifest(marked.device_id_fingerprint, strategy, image.height, image.width,
                         cipher_mode)
    dump(doc, manifest or manifest_path(output))
    click.echo(dump({"output": str(output), "strategy": strategy.name,
                     "quality": quality_dict(quality_report(image, marked.image))}))
    return EXIT_OK


@cli.command("verify")
@click.argument("image_path", type=click.Path(exists=True, dir_okay=False))
@id_options
@click.option("--strategy", type=STRATEGY_CHOICE, help="Overrides the manifest only with --force.")
@click.option("--manifest", type=click.Path(dir_okay=False),
              help="Sidecar manifest [default: IMAGE.oic.json if present].")
@click.option("--force", is_flag=True, help="Let --strategy win over the manifest.")
@click.option("--tolerance", type=float, help="Deviation threshold [default: calibrated].")
@click.option("--report", "report_path", type=click.Path(dir_okay=False),
              help="Also write the JSON tamper report here.")
def verify_cmd(image_path, device_id, id_file, strategy, manifest, force, tolerance, report_path):
    """Check IMAGE for tampering; exit 2 if any block is flagged."""
    device_id = _device_id(device_id, id_file)
    image = load_image(image_path)

    mpath = Path(manifest) if manifest else manifest_path(image_path)
    meta = read_manifest(mpath) if (manifest or mpath.exists()) else None
    cipher_mode = "indexed"
    chosen = Strategy.parse(strategy) if strategy else Strategy.MAC
    if meta is not None:
        recorded = Strategy.parse(meta["strategy"])
        cipher_mode = meta.get("cipher_mode", cipher_mode)
        if strategy and Strategy.parse(strategy) is not recorded:
            if force:
                click.echo(f"warning: using --strategy {chosen.name} over manifest "
                           f"{recorded.name}", err=True)
            else:
                click.echo(f"warning: manifest records {recorded.name}; ignoring --strategy "
                           f"{Strategy.parse(strategy).name} (use --force)", err=True)
                chosen = recorded
        else:
            chosen = recorded
        if meta["device_digest"].upper() != derive_key(device_id).digest_hex:
            click.echo("warning: device ID does not match the manifest digest", err=True)

    tmap = verify(image, device_id, chosen, tolerance, cipher_mode)
    verdict = summarize(tmap)
    doc = tamper_report(tmap, verdict)
    click.echo(dump(doc, report_path))
    return EXIT_TAMPERED if verdict.tampered else EXIT_OK


@cli.command("attack")
@click.argument("source", type=click.Path(exists=True, dir_okay=False))
@click.argument("output", type=click.Path(dir_okay=False))
@click.option("--preset", help=f"One of: {', '.join(atk.PRESETS)}.")
@click.option("--spec", "spec_file", type=click.Path(exists=True, dir_okay=False),
              help="JSON attack spec {channel, rows, cols, value | copy_from}.")
@click.option("--channel", type=CHANNEL_CHOICE, help="Target channel.")
@click.option("--rows", help="1-based inclusive range, e.g. 238:241.")
@click.option("--cols", help="1-based inclusive range, e.g. 300:303.")
@click.option("--value", type=click.IntRange(0, 255), help="Constant fill value.")
@click.option("--copy-from", type=CHANNEL_CHOICE, help="Copy this channel into the region.")
@click.option("--clip", is_flag=True, help="Clip the region to the image instead of failing.")
def attack_cmd(source, output, preset, spec_file, channel, rows, cols, value, copy_from, clip):
    """Overwrite a region of one channel of SOURCE and write OUTPUT (PNG).

    A sidecar manifest next to SOURCE is copied next to OUTPUT.
    """
    manual = any(x is not None for x in (channel, rows, cols, value, copy_from))
    if sum([preset is not None, spec_file is not None, manual]) != 1:
        raise click.UsageError("give exactly one of --preset, --spec or --channel/--rows/--cols")
    if preset:
        spec = atk.preset(preset)
    elif spec_file:
        spec = atk.load_spec_file(spec_file)
    else:
        if not (channel and rows and cols):
            raise click.UsageError("--channel, --rows and --cols are all required")
        spec = atk.AttackSpec(channel.lower(), atk.parse_range(rows), atk.parse_range(cols),
                              value=value, source=copy_from.lower() if copy_from else None)

    image = load_image(source)
    if clip:
        clipped = spec.clipped(image.height, image.width)
        if clipped is None:
            raise click.UsageError("attack region lies entirely outside the image")
        spec = clipped
    attacked = atk.apply_attack(image, spec)
    save_image(attacked, output)
    src_manifest = manifest_path(source)
    if src_manifest.exists():
        shutil.copyfile(src_manifest, manifest_path(output))
    click.echo(dump({"output": str(output), "attack": spec.describe(),
                     "changed_samples": atk.changed_samples(image, attacked)}))
    return EXIT_OK


@cli.command("metrics")
@click.argument("original", type=click.Path(exists=True, dir_okay=False))
@click.argument("other", required=False, type=click.Path(exists=True, dir_okay=False))
@click.option("--sweep", is_flag=True, help="Embed with every strategy and tabulate.")
@id_options
@click.option("--json", "as_json", is_flag=True, help="Sweep output as JSON instead of tables.")
@click.option("--output", type=click.Path(dir_okay=False), help="Also write the report here.")
def metrics_cmd(original, other, sweep, device_id, id_file, as_json, output):
    """Quality of OTHER against ORIGINAL, or a per-strategy sweep with --sweep."""
    base = load_image(original)
    if sweep == (other is not None):
        raise click.UsageError("give either OTHER or --sweep")
    if other is not None:
        click.echo(dump(quality_dict(quality_report(base, load_image(other))), output))
        return EXIT_OK

    device_id = _device_id(device_id, id_file)
    rows = {
        s.name: quality_report(base, embed(base, device_id, s).image) for s in Strategy
    }
    if as_json:
        text = dump({k: quality_dict(v) for k, v in rows.items()}, output)
    else:
        text = sweep_table(rows)
        if output:
            Path(output).write_text(text)
    click.echo(text.rstrip("\n"))
    return EXIT_OK


@cli.command("calibrate")
@click.argument("images", nargs=-1, type=click.Path(exists=True, dir_okay=False))
@id_options
@click.option("--strategy", type=click.Choice(["all"] + [s.name.lower() for s in Strategy],
                                              case_sensitive=False), default="all",
              show_default=True)
@click.option("--cipher-mode", type=click.Choice(CIPHER_MODES), default="indexed",
              show_default=True)
@click.option("--output", type=click.Path(dir_okay=False), help="Write the calibration JSON.")
def calibrate_cmd(images, device_id, id_file, strategy, cipher_mode, output):
    """Derive default tolerances from clean round trips (bundled corpus if no IMAGES)."""
    device_id = _device_id(device_id, id_file)
    if images:
        corpus = {Path(p).stem: load_image(p) for p in images}
    else:
        corpus = load_corpus()
    chosen = list(Strategy) if strategy.lower() == "all" else [Strategy.parse(strategy)]
    table = {
        s.name: calibrate_tolerance(corpus.values(), device_id, s, cipher_mode) for s in chosen
    }
    doc = {
        "device_digest": derive_key(device_id).digest_hex,
        "cipher_mode": cipher_mode,
        "floor": TOLERANCE_FLOOR,
        "corpus": sorted(corpus),
        "tolerance": table,
    }
    click.echo(dump(doc, output))
    return EXIT_OK


def main(argv=None) -> int:
    try:
        rv = cli.main(args=argv, prog_name="oicmark", standalone_mode=False)
    except click.ClickException as exc:
        exc.show()
        return EXIT_ERROR
    except click.exceptions.Abort:
        click.echo("aborted", err=True)
        return EXIT_ERROR
    except (ValueError, OSError) as exc:
        click.echo(f"error: {exc}", err=True)
        return EXIT_ERROR
    return rv if isinstance(rv, int) else EXIT_OK


def run():
    sys.exit(main())


if __name__ == "__main__":
    run()
