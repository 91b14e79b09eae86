"""DDPM forward process, training objective, and reverse-time samplers.

The schedule is a linear ramp of per-step variances beta_t. With
alpha_t = 1 - beta_t and alpha_bar_t their running product, the forward
process admits the closed form

    x_t = sqrt(alpha_bar_t) * x_0 + sqrt(1 - alpha_bar_t) * eps

and the reverse update removes the predicted noise component

    x_{t-1} = (x_t - (1 - alpha_t) / sqrt(1 - alpha_bar_t) * eps_hat)
              / sqrt(alpha_t) + sigma_t * z

with z fresh standard noise, skipped at t = 1. Steps t are 1-based at
every interface; schedule arrays are indexed [t - 1].

Denoisers are pluggable objects with predict(x_t, t). For isotropic
Gaussian data the exact posterior-mean noise predictor has a closed
form, which lets the whole chain be exercised without any training.
"""

import math
from dataclasses import dataclass

import numpy as np

from .rng import Rng
from .rotation import rotate

SIGMA_MODES = ("beta", "zero")


@dataclass(frozen=True)
class NoiseSchedule:
    """Per-step arrays, each of length T, indexed [t - 1]."""

    T: int
    beta: np.ndarray
    alpha: np.ndarray
    alpha_bar: np.ndarray
    sigma: np.ndarray


def linear_schedule(T: int, beta_start: float = 1e-4, beta_end: float = 0.02,
                    sigma_mode: str = "beta") -> NoiseSchedule:
    """Linearly spaced variance schedule from beta_start to beta_end.

    T = 1 degenerates to the single value beta_start. sigma_mode "beta"
    sets sigma_t = sqrt(beta_t); "zero" makes the sampler deterministic.
    """
    T = int(T)
    if T < 1:
        raise ValueError(f"T must be >= 1, got {T}")
    if not (0.0 < beta_start <= beta_end < 1.0):
        raise ValueError(
            f"need 0 < beta_start <= beta_end < 1, got {beta_start}, {beta_end}")
    if sigma_mode not in SIGMA_MODES:
        raise ValueError(f"unknown sigma_mode {sigma_mode!r}, expected one of {SIGMA_MODES}")
    beta = np.linspace(beta_start, beta_end, T)
    alpha = 1.0 - beta
    alpha_bar = np.cumprod(alpha)
    sigma = np.sqrt(beta) if sigma_mode == "beta" else np.zeros(T)
    for a in (beta, alpha, alpha_bar, sigma):
        a.setflags(write=False)
    return NoiseSchedule(T=T, beta=beta, alpha=alpha, alpha_bar=alpha_bar, sigma=sigma)


def _check_step(sched: NoiseSchedule, t: int) -> int:
    t = int(t)
    if not 1 <= t <= sched.T:
        raise ValueError(f"step t must lie in 1..{sched.T}, got {t}")
    return t


def forward_noise(x0, t: int, eps, sched: NoiseSchedule) -> np.ndarray:
    """Closed-form jump to noise level t: mix x0 with one noise draw."""
    x0 = np.asarray(x0, dtype=float)
    eps = np.asarray(eps, dtype=float)
    if x0.shape != eps.shape:
        raise ValueError(f"x0 shape {x0.shape} does not match eps shape {eps.shape}")
    t = _check_step(sched, t)
    ab = sched.alpha_bar[t - 1]
    return math.sqrt(ab) * x0 + math.sqrt(1.0 - ab) * eps


@dataclass(frozen=True)
class GaussianDataSpec:
    """Isotropic Gaussian data distribution: N(mean, stddev^2 I) per element."""

    mean: float
    stddev: float
    shape: tuple

    def __post_init__(self):
        if not (self.stddev > 0.0):
            raise ValueError(f"stddev must be > 0, got {self.stddev}")
        shape = tuple(int(d) for d in self.shape)
        if len(shape) != 3 or min(shape) < 1:
            raise ValueError(f"shape must be a positive C x H x W triple, got {self.shape}")
        object.__setattr__(self, "shape", shape)

    def draw(self, rng: Rng) -> np.ndarray:
        return self.mean + self.stddev * rng.normal(self.shape)


class ZeroDenoiser:
    """Predicts no noise anywhere. Useful as a null baseline."""

    def predict(self, x_t, t):
        return np.zeros_like(np.asarray(x_t, dtype=float))


class ConstantDenoiser:
    """Predicts the same value for every element regardless of input."""

    def __init__(self, value: float):
        self.value = float(value)

    def predict(self, x_t, t):
        return np.full_like(np.asarray(x_t, dtype=float), self.value)


class AnalyticGaussianDenoiser:
    """Exact posterior-mean noise predictor for isotropic Gaussian data.

    For x_t built from N(mean, stddev^2 I) data, the conditional
    expectation of the noise given x_t is linear:

        E[eps | x_t] = sqrt(1 - ab_t) * (x_t - sqrt(ab_t) * mean)
                       / (ab_t * stddev^2 + 1 - ab_t)

    This is the unique minimizer of the noise-prediction objective, so it
    stands in for a perfectly trained network.
    """

    def __init__(self, data: GaussianDataSpec, sched: NoiseSchedule):
        self.data = data
        self.sched = sched

    def coefficient(self, t: int) -> float:
        """Slope of the prediction in (x_t - sqrt(ab_t) * mean)."""
        t = _check_step(self.sched, t)
        ab = self.sched.alpha_bar[t - 1]
        return math.sqrt(1.0 - ab) / (ab * self.data.stddev ** 2 + 1.0 - ab)

    def predict(self, x_t, t):
        x_t = np.asarray(x_t, dtype=float)
        t = _check_step(self.sched, t)
        ab = self.sched.alpha_bar[t - 1]
        centered = x_t - math.sqrt(ab) * self.data.mean
        return self.coefficient(t) * centered


def training_loss(denoiser, data: GaussianDataSpec, sched: NoiseSchedule,
                  n_draws: int, rng: Rng) -> float:
    """Monte-Carlo noise-prediction objective.

    Each draw samples x0 from the data distribution, a step t uniform on
    1..T, and a fresh eps, then scores ||eps - predict(x_t, t)||^2. The
    per-draw order is x0 elements, then t, then eps elements, so a fixed
    seed pins the entire sequence.
    """
    n_draws = int(n_draws)
    if n_draws < 1:
        raise ValueError(f"n_draws must be >= 1, got {n_draws}")
    total = 0.0
    for _ in range(n_draws):
        x0 = data.draw(rng)
        t = rng.randint(sched.T)
        eps = rng.normal(data.shape)
        x_t = forward_noise(x0, t, eps, sched)
        err = eps - denoiser.predict(x_t, t)
        total += float(np.sum(err * err))
    return total / n_draws


def _reverse_step(denoiser, sched: NoiseSchedule, x: np.ndarray, t: int,
                  rng: Rng) -> np.ndarray:
    i = t - 1
    eps_hat = denoiser.predict(x, t)
    x = (x - (1.0 - sched.alpha[i]) / math.sqrt(1.0 - sched.alpha_bar[i]) * eps_hat) \
        / math.sqrt(sched.alpha[i])
    if t > 1 and sched.sigma[i] != 0.0:
        x = x + sched.sigma[i] * rng.normal(x.shape)
    return x


def sample_classical(denoiser, sched: NoiseSchedule, shape, rng: Rng) -> np.ndarray:
    """Run the reverse chain from pure noise down to a data sample.

    Draw order: the initial x_T, then one fresh noise image per step with
    t > 1 (whenever sigma_t is nonzero).
    """
    shape = tuple(int(d) for d in shape)
    x = rng.normal(shape)
    for t in range(sched.T, 0, -1):
        x = _reverse_step(denoiser, sched, x, t, rng)
    return x


def sample_rotated(denoiser, sched: NoiseSchedule, shape, phi: float, rng: Rng,
                   fill: str = "replicate") -> np.ndarray:
    """Reverse chain that spreads one rotation across the trajectory.

    After every reverse step, including t = 1, the state turns by phi / T,
    so the total applied rotation is phi. phi = 0 reproduces the classical
    sampler exactly, draw for draw.
    """
    shape = tuple(int(d) for d in shape)
    step_angle = float(phi) / sched.T
    x = rng.normal(shape)
    for t in range(sched.T, 0, -1):
        x = _reverse_step(denoiser, sched, x, t, rng)
        x = rotate(x, step_angle, fill)
    return x
