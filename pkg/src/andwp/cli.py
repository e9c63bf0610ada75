"""Command-line entry point: corrupt, denoise, tune, evaluate, benchmark.

Subcommands:

    add-noise   clean PGM in, noisy PGM + truth-mask PGM out
    denoise     noisy PGM + explicit (iterations, threshold, decay) in,
                restored PGM (+ optional JSON stats) out
    tune        noisy PGM + clean reference in, swarm-tuned parameters +
                restored PGM (+ optional JSON trace) out
    evaluate    clean + noisy + restored + truth mask in, report JSON out
    benchmark   clean PGM + density list in, one tune+evaluate cycle per
                density, aggregated CSV + JSON out

Seeding: subcommands that draw random numbers take ``--seed``; when the
flag is absent the ``ANDWP_SEED`` environment variable is used, and
failing that, seed 0. ``benchmark`` splits its one seed into independent
per-density noise and swarm streams with ``numpy.random.SeedSequence``,
so a single flag reproduces the whole table byte for byte.

Validation failures and I/O errors exit nonzero with a one-line message
on stderr. No subcommand modifies its input files.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from pathlib import Path
from typing import Optional

import numpy as np

from .denoising import DenoiseResult, FilterParams, denoise
from .metrics import EvaluationReport, build_report, params_to_dict, psnr, stats_to_dict
from .noise import NoiseKind, NoiseSpec, corrupt
from .pgm import PgmError, image_to_mask, mask_to_image, read_pgm, write_pgm
from .pso import SwarmConfig, tune

DEFAULT_DENSITIES = (0.2, 0.3, 0.4, 0.5, 0.6)

CSV_HEADER = "density,psnr_noisy,psnr_restored,miss,false,sen,spc"


def _resolve_seed(flag_value: Optional[int]) -> int:
    if flag_value is not None:
        return flag_value
    env = os.environ.get("ANDWP_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise ValueError(f"ANDWP_SEED must be an integer, got {env!r}") from None
    return 0


def _spawn_seeds(seed: int, count: int) -> list[int]:
    """Derive ``count`` independent integer seeds from one master seed."""
    children = np.random.SeedSequence(seed).spawn(count)
    return [int(child.generate_state(1, np.uint64)[0]) for child in children]


def _write_json(path: str, obj) -> None:
    Path(path).write_text(json.dumps(obj, indent=2) + "\n")


def _write_detected(path: str, result: DenoiseResult) -> None:
    write_pgm(path, mask_to_image(result.ever_changed))


def _fmt_db(value: float) -> str:
    return "inf" if math.isinf(value) else f"{value:.4f}"


def _report_row(density: float, report: EvaluationReport) -> str:
    return ",".join(
        [
            f"{density:g}",
            _fmt_db(report.psnr_noisy_db),
            _fmt_db(report.psnr_restored_db),
            str(report.miss),
            str(report.false_positives),
            f"{report.sensitivity_pct:.2f}",
            f"{report.specificity_pct:.2f}",
        ]
    )


def _cmd_add_noise(args: argparse.Namespace) -> int:
    spec = NoiseSpec(
        kind=NoiseKind(args.kind),
        probability=args.p,
        seed=_resolve_seed(args.seed),
    )
    clean = read_pgm(args.in_path)
    noisy, truth = corrupt(clean, spec)
    write_pgm(args.out_path, noisy)
    mask_path = args.mask if args.mask else str(Path(args.out_path).with_suffix(".mask.pgm"))
    write_pgm(mask_path, mask_to_image(truth))
    return 0


def _cmd_denoise(args: argparse.Namespace) -> int:
    params = FilterParams(
        iterations=args.iterations, threshold=args.threshold, decay=args.decay
    )
    noisy = read_pgm(args.in_path)
    result = denoise(noisy, params)
    write_pgm(args.out_path, result.restored)
    if args.detected_out:
        _write_detected(args.detected_out, result)
    if args.report:
        _write_json(
            args.report,
            {
                "params": params_to_dict(params),
                "iterations": [stats_to_dict(s) for s in result.stats],
            },
        )
    return 0


def _cmd_tune(args: argparse.Namespace) -> int:
    cfg = SwarmConfig(
        swarm_size=args.swarm_size,
        max_iterations=args.pso_iterations,
        seed=_resolve_seed(args.seed),
    )
    noisy = read_pgm(args.in_path)
    reference = read_pgm(args.reference)
    params, opt = tune(noisy, reference, cfg=cfg)
    result = denoise(noisy, params)
    write_pgm(args.out_path, result.restored)
    if args.detected_out:
        _write_detected(args.detected_out, result)
    if args.report:
        _write_json(
            args.report,
            {
                "params": params_to_dict(params),
                "psnr_noisy_db": _json_value(psnr(reference, noisy)),
                "psnr_restored_db": _json_value(psnr(reference, result.restored)),
                "best_fitness_db": _json_value(opt.best_fitness),
                "history_db": [_json_value(v) for v in opt.history],
                "iterations": [stats_to_dict(s) for s in result.stats],
            },
        )
    return 0


def _json_value(value: float):
    return "inf" if math.isinf(value) else value


def _cmd_evaluate(args: argparse.Namespace) -> int:
    clean = read_pgm(args.clean)
    noisy = read_pgm(args.noisy)
    restored = read_pgm(args.restored)
    truth = image_to_mask(read_pgm(args.mask))
    if args.detected:
        detected = image_to_mask(read_pgm(args.detected))
    else:
        detected = noisy != restored
    report = build_report(clean, noisy, restored, truth, detected)
    _write_json(args.report, report.to_dict())
    return 0


def _cmd_benchmark(args: argparse.Namespace) -> int:
    densities = _parse_densities(args.densities)
    kind = NoiseKind(args.kind)
    seed = _resolve_seed(args.seed)
    clean = read_pgm(args.clean)
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)

    seeds = _spawn_seeds(seed, 2 * len(densities))
    rows = []
    entries = []
    for i, density in enumerate(densities):
        noise_seed, pso_seed = seeds[2 * i], seeds[2 * i + 1]
        noisy, truth = corrupt(clean, NoiseSpec(kind=kind, probability=density, seed=noise_seed))
        cfg = SwarmConfig(
            swarm_size=args.swarm_size, max_iterations=args.pso_iterations, seed=pso_seed
        )
        params, opt = tune(noisy, clean, cfg=cfg)
        result = denoise(noisy, params)
        report = build_report(
            clean, noisy, result.restored, truth, result.ever_changed,
            params=params, iterations=result.stats,
        )
        rows.append(_report_row(density, report))
        entry = {"density": density, "seed_noise": noise_seed, "seed_pso": pso_seed}
        entry.update(report.to_dict())
        entry["history_db"] = [_json_value(v) for v in opt.history]
        entries.append(entry)

    csv_text = "\n".join([CSV_HEADER] + rows) + "\n"
    (out_dir / "benchmark.csv").write_text(csv_text)
    _write_json(str(out_dir / "benchmark.json"), {"seed": seed, "rows": entries})
    return 0


def _parse_densities(text: str) -> list[float]:
    try:
        densities = [float(part) for part in text.split(",") if part.strip()]
    except ValueError:
        raise ValueError(f"bad density list {text!r}; expected comma-separated floats") from None
    if not densities:
        raise ValueError("density list is empty")
    for d in densities:
        if not 0.0 <= d <= 1.0:
            raise ValueError(f"noise density must lie in [0, 1], got {d}")
    return densities


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="andwp",
        description="Impulse-noise detection and directional filtering for 8-bit PGM images.",
    )
    sub = parser.add_subparsers(dest="subcommand", required=True)

    p = sub.add_parser("add-noise", help="corrupt a clean image with impulse noise")
    p.add_argument("--in", dest="in_path", required=True, help="clean input PGM")
    p.add_argument("--out", dest="out_path", required=True, help="noisy output PGM")
    p.add_argument("--mask", help="truth-mask output PGM (default: <out>.mask.pgm)")
    p.add_argument(
        "--kind", choices=[k.value for k in NoiseKind], default=NoiseKind.RANDOM_VALUED.value,
        help="impulse model (default: random)",
    )
    p.add_argument("--p", type=float, required=True, help="corruption probability in [0, 1]")
    p.add_argument("--seed", type=int, help="RNG seed (default: $ANDWP_SEED, else 0)")
    p.set_defaults(func=_cmd_add_noise)

    p = sub.add_parser("denoise", help="restore an image with explicit parameters")
    p.add_argument("--in", dest="in_path", required=True, help="noisy input PGM")
    p.add_argument("--out", dest="out_path", required=True, help="restored output PGM")
    p.add_argument("--iterations", type=int, default=4, help="filtering passes (default: 4)")
    p.add_argument(
        "--threshold", type=float, default=510.0, help="initial decision threshold (default: 510)"
    )
    p.add_argument(
        "--decay", type=float, default=0.8, help="per-pass threshold decay factor (default: 0.8)"
    )
    p.add_argument("--report", help="write per-pass stats JSON here")
    p.add_argument("--detected-out", help="write the detected-pixel mask PGM here")
    p.set_defaults(func=_cmd_denoise)

    p = sub.add_parser("tune", help="swarm-tune parameters against a clean reference")
    p.add_argument("--in", dest="in_path", required=True, help="noisy input PGM")
    p.add_argument(
        "--reference", required=True,
        help="clean reference PGM (tuning is supervised and maximizes PSNR against it)",
    )
    p.add_argument("--out", dest="out_path", required=True, help="restored output PGM")
    p.add_argument("--report", help="write tuned-parameter and trace JSON here")
    p.add_argument("--detected-out", help="write the detected-pixel mask PGM here")
    p.add_argument("--swarm-size", type=int, default=8, help="particles (default: 8)")
    p.add_argument("--pso-iterations", type=int, default=15, help="swarm iterations (default: 15)")
    p.add_argument("--seed", type=int, help="RNG seed (default: $ANDWP_SEED, else 0)")
    p.set_defaults(func=_cmd_tune)

    p = sub.add_parser("evaluate", help="score a restoration against ground truth")
    p.add_argument("--clean", required=True, help="clean original PGM")
    p.add_argument("--noisy", required=True, help="corrupted PGM")
    p.add_argument("--restored", required=True, help="restored PGM")
    p.add_argument("--mask", required=True, help="ground-truth corruption mask PGM")
    p.add_argument(
        "--detected",
        help="detected-pixel mask PGM (default: pixels where noisy and restored differ)",
    )
    p.add_argument("--report", required=True, help="write the evaluation JSON here")
    p.set_defaults(func=_cmd_evaluate)

    p = sub.add_parser("benchmark", help="tune+evaluate across a sweep of noise densities")
    p.add_argument("--clean", required=True, help="clean input PGM")
    p.add_argument("--out-dir", required=True, help="directory for benchmark.csv/benchmark.json")
    p.add_argument(
        "--densities", default=",".join(f"{d:g}" for d in DEFAULT_DENSITIES),
        help="comma-separated noise densities (default: 0.2,0.3,0.4,0.5,0.6)",
    )
    p.add_argument(
        "--kind", choices=[k.value for k in NoiseKind], default=NoiseKind.RANDOM_VALUED.value,
        help="impulse model (default: random)",
    )
    p.add_argument("--seed", type=int, help="master seed (default: $ANDWP_SEED, else 0)")
    p.add_argument("--swarm-size", type=int, default=8, help="particles (default: 8)")
    p.add_argument("--pso-iterations", type=int, default=15, help="swarm iterations (default: 15)")
    p.set_defaults(func=_cmd_benchmark)

    return parser


def run(argv: Optional[list[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (PgmError, ValueError, OSError) as exc:
        print(f"andwp: error: {exc}", file=sys.stderr)
        return 1


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
