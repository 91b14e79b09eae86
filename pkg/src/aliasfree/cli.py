"""Command line front end.

Every subcommand takes --out and a --seed (default 0) and writes only to
the path(s) derived from --out, so identical invocations produce byte
identical files. Exit status is 0 on success, 2 for usage errors, and 1
for runtime failures such as unreadable input files.

Examples:

  aliasfree kernel --beta 1 --normalized --out kernel.txt
  aliasfree freq --beta 0 --normalized --N 64 --out response.csv
  aliasfree resample --in img.pgm --mode af --dir down --beta 1 --normalized --out half.pgm
  aliasfree activate --in img.pgm --act relu --wrapped --beta 1 --normalized --out act.pgm
  aliasfree rotate --in img.pgm --phi 0.4487989505 --fill replicate --out rot.pgm
  aliasfree sample --config classical --T 50 --shape 1x8x8 \\
      --denoiser gaussian:mu=0.3,sigma0=0.05 --n 4 --seed 7 --out run/sample
  aliasfree analyze --report equivariance --pipeline D --beta 1 --normalized \\
      --phi 0.448798950512827 --out equiv.csv

sample writes one raster per trajectory ({out}-000.pgm, {out}-001.pgm,
and so on), each drawn from its own stream seeded with seed XOR index.
"""

import argparse
import math
import sys

import numpy as np

from .activation import ACTIVATIONS, apply_pointwise, wrapped_activation
from .diffusion import (AnalyticGaussianDenoiser, ConstantDenoiser,
                        GaussianDataSpec, ZeroDenoiser, linear_schedule,
                        sample_classical, sample_rotated, SIGMA_MODES)
from .filter_design import FilterSpec, design_kernel, kernel_to_text
from .image_io import read_raster, write_raster
from .resample import (PADDING_MODES, downsample2x_af, downsample2x_naive,
                       upsample2x_af, upsample2x_naive)
from .rng import Rng
from .rotation import FILL_MODES, rotate
from .spectral import (PIPELINE_KINDS, PipelineConfig, alias_energy,
                       band_limited_corpus, config_name, equivariance_error,
                       freq_response, spectrum_freqs)

RESAMPLE_CUTOFF = math.pi / 2.0


def parse_angle(text: str) -> float:
    """Float radians, with the convenience token half-pi."""
    if text.strip() == "half-pi":
        return RESAMPLE_CUTOFF
    return float(text)


def parse_shape(text: str) -> tuple:
    parts = text.lower().split("x")
    if len(parts) != 3:
        raise ValueError(f"shape must look like CxHxW, got {text!r}")
    dims = tuple(int(p) for p in parts)
    if min(dims) < 1:
        raise ValueError(f"shape dimensions must be >= 1, got {text!r}")
    return dims


def parse_denoiser_spec(text: str):
    """Parse --denoiser values: zero, constant:v=V, gaussian:mu=M,sigma0=S."""
    kind, _, arg_text = text.partition(":")
    args = {}
    if arg_text:
        for item in arg_text.split(","):
            key, sep, value = item.partition("=")
            if not sep or not key:
                raise ValueError(f"bad denoiser argument {item!r}")
            args[key.strip()] = float(value)
    if kind == "zero":
        expected = set()
    elif kind == "constant":
        expected = {"v"}
    elif kind == "gaussian":
        expected = {"mu", "sigma0"}
    else:
        raise ValueError(f"unknown denoiser kind {kind!r}")
    if set(args) != expected:
        raise ValueError(
            f"denoiser {kind!r} takes arguments {sorted(expected)}, got {sorted(args)}")
    return kind, args


def _build_denoiser(kind, args, sched, shape):
    if kind == "zero":
        return ZeroDenoiser()
    if kind == "constant":
        return ConstantDenoiser(args["v"])
    data = GaussianDataSpec(mean=args["mu"], stddev=args["sigma0"], shape=shape)
    return AnalyticGaussianDenoiser(data, sched)


def _read_image(path: str) -> np.ndarray:
    with open(path, "rb") as handle:
        return read_raster(handle.read())


def _write_bytes(path: str, payload: bytes) -> None:
    with open(path, "wb") as handle:
        handle.write(payload)


def _write_text(path: str, text: str) -> None:
    _write_bytes(path, text.encode("ascii"))


def _csv(rows) -> str:
    return "\n".join(",".join(str(cell) for cell in row) for row in rows) + "\n"


def _filter_spec(args) -> FilterSpec:
    return FilterSpec(kaiser_beta=args.beta, normalized=args.normalized,
                      cutoff=args.cutoff, kernel_size=args.size)


def cmd_kernel(args) -> int:
    kernel = design_kernel(_filter_spec(args))
    _write_text(args.out, kernel_to_text(kernel))
    return 0


def cmd_freq(args) -> int:
    kernel = design_kernel(_filter_spec(args))
    mag = freq_response(kernel, args.N)
    ks = np.arange(args.N) - args.N // 2
    rows = [("k1", "k2", "magnitude")]
    for i, k1 in enumerate(ks):
        for j, k2 in enumerate(ks):
            rows.append((k1, k2, repr(float(mag[i, j]))))
    _write_text(args.out, _csv(rows))
    return 0


def cmd_resample(args) -> int:
    img = _read_image(args.input)
    if args.mode == "naive":
        out = downsample2x_naive(img) if args.dir == "down" else upsample2x_naive(img)
    else:
        kernel = design_kernel(_filter_spec(args))
        if args.dir == "down":
            out = downsample2x_af(img, kernel, args.padding)
        else:
            out = upsample2x_af(img, kernel, args.padding)
    _write_bytes(args.out, write_raster(out))
    return 0


def cmd_activate(args) -> int:
    img = _read_image(args.input)
    if args.wrapped:
        kernel = design_kernel(_filter_spec(args))
        out = wrapped_activation(img, args.act, kernel, args.padding)
    else:
        out = apply_pointwise(img, args.act)
    _write_bytes(args.out, write_raster(out))
    return 0


def cmd_rotate(args) -> int:
    img = _read_image(args.input)
    _write_bytes(args.out, write_raster(rotate(img, args.phi, args.fill)))
    return 0


def cmd_sample(args) -> int:
    if args.n < 1:
        raise ValueError(f"--n must be >= 1, got {args.n}")
    sched = linear_schedule(args.T, args.beta_start, args.beta_end, args.sigma_mode)
    kind, dn_args = args.denoiser
    denoiser = _build_denoiser(kind, dn_args, sched, args.shape)
    ext = "pgm" if args.shape[0] == 1 else "ppm"
    for i in range(args.n):
        rng = Rng(args.seed ^ i)
        if args.config == "classical":
            x = sample_classical(denoiser, sched, args.shape, rng)
        else:
            x = sample_rotated(denoiser, sched, args.shape, args.phi, rng, args.fill)
        _write_bytes(f"{args.out}-{i:03d}.{ext}", write_raster(x))
    return 0


def cmd_analyze(args) -> int:
    corpus = band_limited_corpus(args.count, args.N)
    spec = FilterSpec(kaiser_beta=args.beta, normalized=args.normalized)
    if args.report == "alias":
        kernel = design_kernel(spec)
        rows = [("image", "naive_roundtrip", "af_roundtrip",
                 "relu_alias", "wrapped_relu_alias")]
        for i, img in enumerate(corpus):
            scale = float(np.linalg.norm(img))
            naive = upsample2x_naive(downsample2x_naive(img))
            af = upsample2x_af(downsample2x_af(img, kernel), kernel)
            rows.append((i,
                         repr(float(np.linalg.norm(naive - img)) / scale),
                         repr(float(np.linalg.norm(af - img)) / scale),
                         repr(alias_energy(apply_pointwise(img, "relu"))),
                         repr(alias_energy(wrapped_activation(img, "relu", kernel)))))
    else:
        if args.pipeline == "A":
            config = PipelineConfig("A")
        else:
            config = PipelineConfig(args.pipeline, spec)
        rows = [("image", "config", "phi", "error")]
        for i, img in enumerate(corpus):
            err = equivariance_error(config, img, args.phi)
            rows.append((i, config_name(config), repr(args.phi), repr(err)))
    _write_text(args.out, _csv(rows))
    return 0


def _add_filter_flags(parser, with_size=True):
    parser.add_argument("--beta", type=float, default=1.0,
                        help="Kaiser window beta (default 1)")
    parser.add_argument("--normalized", action="store_true",
                        help="rescale kernel taps to unit sum")
    if with_size:
        parser.add_argument("--size", type=int, default=3,
                            help="odd kernel size (default 3)")
        parser.add_argument("--cutoff", type=parse_angle, default=RESAMPLE_CUTOFF,
                            help="angular cutoff in radians, or half-pi (default)")


def _add_padding_flag(parser):
    parser.add_argument("--padding", choices=PADDING_MODES, default="reflect",
                        help="border rule for filtering (default reflect)")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="aliasfree",
        description="Alias-free resampling and diffusion sampling tools.")
    subs = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0,
                        help="stream seed for anything random (default 0)")
    common.add_argument("--out", required=True,
                        help="output path, or path prefix for sample")

    p = subs.add_parser("kernel", parents=[common],
                        help="write kernel taps as text")
    _add_filter_flags(p)
    p.set_defaults(handler=cmd_kernel)

    p = subs.add_parser("freq", parents=[common],
                        help="write a kernel magnitude response as CSV")
    _add_filter_flags(p)
    p.add_argument("--N", type=int, default=64, help="DFT grid size (default 64)")
    p.set_defaults(handler=cmd_freq)

    p = subs.add_parser("resample", parents=[common],
                        help="2x resample a raster image")
    p.add_argument("--in", dest="input", required=True, help="input PGM/PPM path")
    p.add_argument("--mode", choices=("naive", "af"), required=True)
    p.add_argument("--dir", choices=("up", "down"), required=True)
    _add_filter_flags(p)
    _add_padding_flag(p)
    p.set_defaults(handler=cmd_resample)

    p = subs.add_parser("activate", parents=[common],
                        help="apply a nonlinearity to a raster image")
    p.add_argument("--in", dest="input", required=True, help="input PGM/PPM path")
    p.add_argument("--act", choices=ACTIVATIONS, required=True)
    p.add_argument("--wrapped", action="store_true",
                   help="evaluate at doubled resolution between alias-free resamplers")
    _add_filter_flags(p)
    _add_padding_flag(p)
    p.set_defaults(handler=cmd_activate)

    p = subs.add_parser("rotate", parents=[common], help="rotate a raster image")
    p.add_argument("--in", dest="input", required=True, help="input PGM/PPM path")
    p.add_argument("--phi", type=parse_angle, required=True,
                   help="angle in radians, counterclockwise positive")
    p.add_argument("--fill", choices=FILL_MODES, default="replicate")
    p.set_defaults(handler=cmd_rotate)

    p = subs.add_parser("sample", parents=[common],
                        help="draw reverse-diffusion samples as rasters")
    p.add_argument("--config", choices=("classical", "rotated"), required=True)
    p.add_argument("--T", type=int, default=1000, help="number of steps (default 1000)")
    p.add_argument("--beta-start", type=float, default=1e-4)
    p.add_argument("--beta-end", type=float, default=0.02)
    p.add_argument("--sigma-mode", choices=SIGMA_MODES, default="beta")
    p.add_argument("--shape", type=parse_shape, default=(1, 8, 8),
                   help="CxHxW sample shape (default 1x8x8)")
    p.add_argument("--denoiser", type=parse_denoiser_spec,
                   default=("gaussian", {"mu": 0.0, "sigma0": 1.0}),
                   help="zero | constant:v=V | gaussian:mu=M,sigma0=S "
                        "(default gaussian:mu=0,sigma0=1)")
    p.add_argument("--n", type=int, default=1, help="number of trajectories")
    p.add_argument("--phi", type=parse_angle, default=0.0,
                   help="total rotation for the rotated config")
    p.add_argument("--fill", choices=FILL_MODES, default="replicate")
    p.set_defaults(handler=cmd_sample)

    p = subs.add_parser("analyze", parents=[common],
                        help="write corpus measurements as CSV")
    p.add_argument("--report", choices=("alias", "equivariance"), required=True)
    p.add_argument("--pipeline", choices=PIPELINE_KINDS, default="D",
                   help="pipeline kind for the equivariance report")
    _add_filter_flags(p, with_size=False)
    p.add_argument("--phi", type=parse_angle, default=math.pi / 4,
                   help="test rotation for the equivariance report")
    p.add_argument("--count", type=int, default=8, help="corpus image count")
    p.add_argument("--N", type=int, default=64, help="corpus image size")
    p.set_defaults(handler=cmd_analyze)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code) if exc.code is not None else 0
    try:
        return args.handler(args)
    except (ValueError, OSError) as exc:
        print(f"aliasfree: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
