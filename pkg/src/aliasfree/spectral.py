"""Spectral measurements and the standing evaluation pipelines.

Everything here is measurement machinery: centered 2D DFTs, kernel
frequency responses, the fraction of signal energy above a cutoff, a
deterministic band-limited image corpus, and the four processing
pipelines whose rotation equivariance gets compared.

Pipelines pair one downsampler, one nonlinearity stage, and one
upsampler at matched resolution:

    A: naive down, plain nonlinearity, naive up
    B: alias-free down, plain nonlinearity, alias-free up
    C: naive down, wrapped nonlinearity, naive up
    D: alias-free down, wrapped nonlinearity, alias-free up

Names like "D-1N" append the filter beta and an N for a normalized
kernel; config A carries no filter at all.
"""

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .activation import apply_pointwise, wrapped_activation
from .filter_design import HALF_PI, FilterSpec, Kernel2D, design_kernel
from .resample import (check_image, downsample2x_af, downsample2x_naive,
                       upsample2x_af, upsample2x_naive)
from .rng import Rng
from .rotation import rotate

PIPELINE_KINDS = ("A", "B", "C", "D")


def dft2(img) -> np.ndarray:
    """Centered 2D DFT of a square single-channel matrix.

    Bin (i, j) of the result holds frequency (w1, w2) = 2 pi (k1, k2) / N
    with k = i - N // 2, so the zero-frequency bin sits at the center.
    """
    arr = np.asarray(img, dtype=float)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
        raise ValueError(f"expected a square 2D matrix, got shape {arr.shape}")
    return np.fft.fftshift(np.fft.fft2(arr))


def spectrum_freqs(N: int) -> np.ndarray:
    """Angular frequency of each centered-DFT bin: 2 pi k / N, k = -N//2 .. N//2 - 1."""
    N = int(N)
    if N < 1:
        raise ValueError(f"N must be >= 1, got {N}")
    return 2.0 * np.pi * (np.arange(N) - N // 2) / N


def freq_response(kernel: Kernel2D, N: int) -> np.ndarray:
    """Magnitude response of a kernel on the N x N centered-DFT grid.

    The kernel is embedded at the center of an otherwise zero N x N
    field; the DC bin of the result equals the tap sum.
    """
    N = int(N)
    if N < kernel.size:
        raise ValueError(f"N = {N} is smaller than the kernel size {kernel.size}")
    field = np.zeros((N, N))
    r = kernel.radius
    c = N // 2
    # embedding position only shifts phase; magnitudes are unaffected
    field[c - r: c + r + 1, c - r: c + r + 1] = kernel.taps
    return np.abs(dft2(field))


def alias_energy(img, cutoff: float = HALF_PI) -> float:
    """Fraction of spectral energy with max(|w1|, |w2|) above the cutoff.

    Accepts a single H x W matrix or a C x H x W tensor; channels pool
    their energy. Returns 0 for an all-zero input.
    """
    arr = np.asarray(img, dtype=float)
    if arr.ndim == 2:
        arr = arr[None, :, :]
    arr = check_image(arr)
    _, H, W = arr.shape
    if H != W:
        raise ValueError(f"expected square images, got {H} x {W}")
    if not (0.0 < cutoff <= math.pi):
        raise ValueError(f"cutoff must lie in (0, pi], got {cutoff}")
    w = np.abs(spectrum_freqs(H))
    above = np.maximum(w[:, None], w[None, :]) > cutoff
    total = 0.0
    high = 0.0
    for channel in arr:
        power = np.abs(dft2(channel)) ** 2
        total += float(power.sum())
        high += float(power[above].sum())
    if total == 0.0:
        return 0.0
    return high / total


def band_limited_corpus(count: int = 8, size: int = 64, seed: int = 2024) -> np.ndarray:
    """Deterministic band-limited test images, shape (count, 1, size, size).

    Image i starts as white noise from Rng(seed ^ i), keeps only the DFT
    bins with max(|w1|, |w2|) strictly below 0.8 * (pi / 2), drops DC, and
    is rescaled to peak magnitude 0.8. The 20 percent guard band below
    the resampling cutoff means any above-cutoff energy seen after
    processing was created by the pipeline under test, not carried in.
    """
    count = int(count)
    size = int(size)
    if count < 1:
        raise ValueError(f"count must be >= 1, got {count}")
    if size < 16 or size % 2:
        raise ValueError(f"size must be even and >= 16, got {size}")
    kmax = math.ceil(0.2 * size) - 1  # largest k with 2 pi k / size < 0.4 pi
    ks = np.fft.fftfreq(size, d=1.0 / size).astype(int)
    keep = np.abs(ks) <= kmax
    mask = keep[:, None] & keep[None, :]
    mask[0, 0] = False
    images = np.empty((count, 1, size, size))
    for i in range(count):
        rng = Rng(seed ^ i)
        noise = rng.normal((size, size))
        spec = np.fft.fft2(noise) * mask
        img = np.fft.ifft2(spec).real
        images[i, 0] = img * (0.8 / np.max(np.abs(img)))
    return images


@dataclass(frozen=True)
class PipelineConfig:
    """One pipeline kind plus the filter its resamplers use (None for A)."""

    kind: str
    filter_spec: Optional[FilterSpec] = None

    def __post_init__(self):
        if self.kind not in PIPELINE_KINDS:
            raise ValueError(f"unknown pipeline kind {self.kind!r}")
        if self.kind == "A" and self.filter_spec is not None:
            raise ValueError("pipeline A uses no filter")
        if self.kind != "A" and self.filter_spec is None:
            raise ValueError(f"pipeline {self.kind} needs a filter spec")


def config_name(config: PipelineConfig) -> str:
    """Short name like "A" or "D-1N"."""
    if config.filter_spec is None:
        return config.kind
    beta = config.filter_spec.kaiser_beta
    beta_txt = str(int(beta)) if beta == int(beta) else repr(beta)
    suffix = "N" if config.filter_spec.normalized else ""
    return f"{config.kind}-{beta_txt}{suffix}"


def parse_config_name(name: str) -> PipelineConfig:
    """Inverse of config_name, accepting names like "A", "B-2", "D-1N"."""
    parts = str(name).strip().split("-")
    if parts[0] not in PIPELINE_KINDS:
        raise ValueError(f"bad pipeline name {name!r}")
    if len(parts) == 1:
        if parts[0] != "A":
            raise ValueError(f"pipeline {parts[0]} needs a filter suffix, got {name!r}")
        return PipelineConfig("A")
    if len(parts) != 2 or parts[0] == "A" or not parts[1]:
        raise ValueError(f"bad pipeline name {name!r}")
    tail = parts[1]
    normalized = tail.endswith("N")
    if normalized:
        tail = tail[:-1]
    try:
        beta = float(tail)
    except ValueError:
        raise ValueError(f"bad filter beta in pipeline name {name!r}") from None
    return PipelineConfig(parts[0], FilterSpec(kaiser_beta=beta, normalized=normalized))


def apply_pipeline(config: PipelineConfig, img, act: str = "relu",
                   padding: str = "reflect") -> np.ndarray:
    """Downsample, apply the nonlinearity stage, upsample back."""
    arr = check_image(img)
    if config.kind == "A":
        return upsample2x_naive(apply_pointwise(downsample2x_naive(arr), act))
    kernel = design_kernel(config.filter_spec)
    if config.kind == "B":
        low = apply_pointwise(downsample2x_af(arr, kernel, padding), act)
        return upsample2x_af(low, kernel, padding)
    if config.kind == "C":
        low = wrapped_activation(downsample2x_naive(arr), act, kernel, padding)
        return upsample2x_naive(low)
    low = wrapped_activation(downsample2x_af(arr, kernel, padding), act, kernel, padding)
    return upsample2x_af(low, kernel, padding)


def equivariance_error(config: PipelineConfig, img, phi: float,
                       act: str = "relu", padding: str = "reflect") -> float:
    """Relative L2 gap between rotate-then-process and process-then-rotate.

    Rotations here use zero fill: replicate fill floods the turned-in
    corners with flat extrapolated content, and the comparison then
    mostly scores how a pipeline treats synthetic borders rather than
    the image itself. With zero fill both operand orders see the same
    vacated corners.
    """
    rotated_first = apply_pipeline(config, rotate(img, phi, fill="zero"), act, padding)
    rotated_last = rotate(apply_pipeline(config, img, act, padding), phi, fill="zero")
    denom = float(np.linalg.norm(rotated_last))
    gap = float(np.linalg.norm(rotated_first - rotated_last))
    if denom == 0.0:
        return gap
    return gap / denom
