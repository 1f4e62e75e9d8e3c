"""Monophonic fundamental-frequency estimation (YIN).

Per frame the estimator computes the difference function

    d(tau) = sum_j (x[j] - x[j + tau])^2

via FFT autocorrelation, normalizes it to the cumulative-mean-normalized
difference function

    d'(0) = 1,   d'(tau) = d(tau) * tau / sum_{j<=tau} d(j),

takes the smallest lag where d' drops below an absolute threshold, walks
down to the local minimum, and refines the lag by parabolic interpolation.
A frame is voiced only if some lag beats the threshold AND the implied
frequency lies inside [fmin_hz, fmax_hz]; candidate search itself is not
clamped to the band, so a clearly periodic signal outside the band is
reported unvoiced rather than folded onto an in-band subharmonic.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .audio import Segment
from .errors import ConfigError

UNVOICED = math.nan


@dataclass(frozen=True, eq=False)
class F0Track:
    """Per-frame F0 estimates; unvoiced frames hold NaN."""

    times_s: np.ndarray
    f0_hz: np.ndarray
    fmin_hz: float
    fmax_hz: float

    def __post_init__(self):
        if self.times_s.shape != self.f0_hz.shape:
            raise ValueError("times and f0 arrays must have equal length")
        if self.times_s.size > 1 and not np.all(np.diff(self.times_s) > 0):
            raise ValueError("frame times must be strictly increasing")
        voiced = self.voiced_values()
        if voiced.size and (voiced.min() < self.fmin_hz or voiced.max() > self.fmax_hz):
            raise ValueError("voiced f0 outside the configured band")

    @property
    def voiced_mask(self) -> np.ndarray:
        return ~np.isnan(self.f0_hz)

    def voiced_values(self) -> np.ndarray:
        return self.f0_hz[self.voiced_mask]

    def __len__(self) -> int:
        return self.f0_hz.size


def _frame(samples: np.ndarray, frame_len: int, hop_len: int) -> np.ndarray:
    if samples.size < frame_len:
        return np.empty((0, frame_len))
    return np.lib.stride_tricks.sliding_window_view(samples, frame_len)[::hop_len]


def _difference_function(frames: np.ndarray, tau_max: int) -> np.ndarray:
    """d(tau) for tau = 0..tau_max per frame, via zero-padded FFT."""
    n_frames, w = frames.shape
    fft_size = 1 << int(w + tau_max - 1).bit_length()
    spec = np.fft.rfft(frames, fft_size, axis=1)
    acf = np.fft.irfft(spec * spec.conj(), fft_size, axis=1)[:, :tau_max + 1]
    energy = np.concatenate(
        [np.zeros((n_frames, 1)), np.cumsum(frames * frames, axis=1)], axis=1)
    head = energy[:, w - np.arange(tau_max + 1)]
    tail = energy[:, [w]] - energy[:, :tau_max + 1]
    return head + tail - 2.0 * acf


def _cmndf(d: np.ndarray) -> np.ndarray:
    out = np.ones_like(d)
    cums = np.cumsum(d[:, 1:], axis=1)
    taus = np.arange(1, d.shape[1])
    with np.errstate(invalid="ignore", divide="ignore"):
        ratio = d[:, 1:] * taus / cums
    # cums == 0 means no contrast at all (silence / DC): no periodicity evidence
    out[:, 1:] = np.where(cums > 0, ratio, 1.0)
    return out


def _parabolic_min(y: np.ndarray, i: int) -> float:
    if i <= 0 or i >= y.size - 1:
        return float(i)
    a, b, c = y[i - 1], y[i], y[i + 1]
    denom = a - 2.0 * b + c
    if denom <= 0:
        return float(i)
    return i + 0.5 * (a - c) / denom


def estimate_f0(segment: Segment, fmin_hz: float = 65.0, fmax_hz: float = 2093.0,
                frame_len: int = 2048, hop_len: int = 512,
                threshold: float = 0.1) -> F0Track:
    """Estimate a per-frame F0 track for one segment.

    Frames whose best period candidate never beats the threshold, or whose
    refined frequency falls outside [fmin_hz, fmax_hz], are marked UNVOICED.
    """
    sr = segment.sample_rate
    if not (0 < fmin_hz < fmax_hz):
        raise ConfigError(f"invalid frequency band [{fmin_hz}, {fmax_hz}]")
    if frame_len < 2 * sr / fmin_hz:
        raise ConfigError(
            f"frame_len {frame_len} shorter than two periods of {fmin_hz} Hz "
            f"at {sr} Hz")
    if hop_len < 1:
        raise ConfigError(f"hop_len must be >= 1, got {hop_len}")

    tau_lo = 2
    tau_max = min(int(math.ceil(sr / fmin_hz)), frame_len - 2)
    frames = _frame(np.asarray(segment.samples, dtype=np.float64),
                    frame_len, hop_len)
    n_frames = frames.shape[0]
    times = (np.arange(n_frames) * hop_len + frame_len / 2) / sr
    f0 = np.full(n_frames, UNVOICED)
    if n_frames == 0:
        return F0Track(times, f0, fmin_hz, fmax_hz)

    cmndf = _cmndf(_difference_function(frames, tau_max))
    below = cmndf[:, tau_lo:] < threshold
    has_candidate = below.any(axis=1)
    first = np.argmax(below, axis=1) + tau_lo

    for k in range(n_frames):
        if not has_candidate[k]:
            continue
        row = cmndf[k]
        tau = int(first[k])
        while tau + 1 <= tau_max and row[tau + 1] < row[tau]:
            tau += 1
        freq = sr / _parabolic_min(row, tau)
        if fmin_hz <= freq <= fmax_hz:
            f0[k] = freq

    return F0Track(times, f0, fmin_hz, fmax_hz)
