"""Independent reference implementations used only by the tests.

Everything here is deliberately written the slow, obvious way: explicit
loops, explicit index arithmetic, extended-precision series. None of it
shares code with the package under test.
"""

import math

import mpmath as mp
import numpy as np

mp.mp.dps = 50

_FACT = [mp.factorial(k) for k in range(130)]


def j1_series_60(x):
    """J1 by 60 explicit extended-precision series terms."""
    x = mp.mpf(float(x))
    total = mp.mpf(0)
    for k in range(60):
        total += (-1) ** k * (x / 2) ** (2 * k + 1) / (_FACT[k] * _FACT[k + 1])
    return float(total)


def i0_series_60(x):
    """I0 by 60 explicit extended-precision series terms."""
    x = mp.mpf(float(x))
    total = mp.mpf(0)
    for k in range(60):
        total += (x / 2) ** (2 * k) / (_FACT[k] ** 2)
    return float(total)


def jinc_series_60(x):
    if float(x) == 0.0:
        return 0.5
    return float(mp.mpf(j1_series_60(x)) / mp.mpf(float(x)))


def pad_index(n, size, mode):
    """Resolve an out-of-range index under a border rule."""
    if 0 <= n < size:
        return n
    if mode == "zero":
        return None
    # reflect without repeating the edge sample: ..., 2, 1, 0, 1, 2, ...
    period = 2 * size - 2 if size > 1 else 1
    n = n % period
    if n >= size:
        n = period - n
    return n


def conv2d_loops(img, taps, padding):
    """Triple-loop direct convolution, one channel at a time."""
    img = np.asarray(img, dtype=float)
    taps = np.asarray(taps, dtype=float)
    C, H, W = img.shape
    size = taps.shape[0]
    r = (size - 1) // 2
    out = np.zeros_like(img)
    for c in range(C):
        for n1 in range(H):
            for n2 in range(W):
                acc = 0.0
                for i in range(-r, r + 1):
                    for j in range(-r, r + 1):
                        src_r = pad_index(n1 - i, H, padding)
                        src_c = pad_index(n2 - j, W, padding)
                        if src_r is None or src_c is None:
                            continue
                        acc += taps[i + r, j + r] * img[c, src_r, src_c]
                out[c, n1, n2] = acc
    return out


def downsample_af_loops(img, taps, padding):
    return conv2d_loops(img, taps, padding)[:, ::2, ::2]


def upsample_af_loops(img, taps, padding):
    img = np.asarray(img, dtype=float)
    C, H, W = img.shape
    stuffed = np.zeros((C, 2 * H, 2 * W))
    for c in range(C):
        for n1 in range(H):
            for n2 in range(W):
                stuffed[c, 2 * n1, 2 * n2] = img[c, n1, n2]
    return 4.0 * conv2d_loops(stuffed, taps, padding)


def bilinear_rotate_loops(img, phi, fill):
    """Inverse-map bilinear rotation, scalar math only."""
    img = np.asarray(img, dtype=float)
    C, H, W = img.shape
    cy = (H - 1) / 2.0
    cx = (W - 1) / 2.0
    cos_p = math.cos(phi)
    sin_p = math.sin(phi)
    out = np.zeros_like(img)
    for ch in range(C):
        for r in range(H):
            for c in range(W):
                dr = r - cy
                dc = c - cx
                sr = cy + cos_p * dr + sin_p * dc
                sc = cx - sin_p * dr + cos_p * dc
                if fill == "zero" and not (0.0 <= sr <= H - 1 and 0.0 <= sc <= W - 1):
                    continue
                sr = min(max(sr, 0.0), H - 1)
                sc = min(max(sc, 0.0), W - 1)
                r0 = int(math.floor(sr))
                c0 = int(math.floor(sc))
                r1 = min(r0 + 1, H - 1)
                c1 = min(c0 + 1, W - 1)
                fr = sr - r0
                fc = sc - c0
                top = (1 - fc) * img[ch, r0, c0] + fc * img[ch, r0, c1]
                bot = (1 - fc) * img[ch, r1, c0] + fc * img[ch, r1, c1]
                out[ch, r, c] = (1 - fr) * top + fr * bot
    return out


def dft2_loops(img):
    """Direct O(N^4) centered 2D DFT."""
    img = np.asarray(img, dtype=float)
    N = img.shape[0]
    out = np.zeros((N, N), dtype=complex)
    for ki in range(N):
        for kj in range(N):
            k1 = ki - N // 2
            k2 = kj - N // 2
            acc = 0.0 + 0.0j
            for n1 in range(N):
                for n2 in range(N):
                    acc += img[n1, n2] * np.exp(-2j * np.pi * (k1 * n1 + k2 * n2) / N)
            out[ki, kj] = acc
    return out
