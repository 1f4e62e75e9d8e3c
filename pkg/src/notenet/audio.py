"""Audio decoding and fixed-length segmentation.

Clips are decoded to mono float64 in [-1, 1] and cut into consecutive
non-overlapping windows taken from the start of the clip; a trailing
partial window is discarded.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from pathlib import Path

import numpy as np
from scipy.io import wavfile

from .errors import ConfigError, DataError


@dataclass(frozen=True, eq=False)
class AudioClip:
    """A decoded mono audio clip with provenance."""

    samples: np.ndarray
    sample_rate: int
    source_id: str
    label: str

    def __post_init__(self):
        if self.sample_rate <= 0:
            raise DataError(f"sample rate must be positive, got {self.sample_rate}")
        if self.samples.ndim != 1 or self.samples.size == 0:
            raise DataError("clip must hold a non-empty 1-D sample array")
        if not np.all(np.isfinite(self.samples)):
            raise DataError("clip contains non-finite amplitudes")

    @property
    def duration_s(self) -> float:
        return self.samples.size / self.sample_rate


@dataclass(frozen=True, eq=False)
class Segment:
    """A fixed-length window of a clip."""

    samples: np.ndarray
    sample_rate: int
    source_id: str
    label: str
    segment_index: int
    duration_s: float


def decode_audio(path: str | Path, source_id: str | None = None,
                 label: str = "") -> AudioClip:
    """Decode a PCM WAV file to a mono AudioClip normalized to [-1, 1].

    Stereo input is downmixed by channel mean. Integer sample formats are
    scaled by their type's full range; float formats are clipped to [-1, 1].
    """
    path = Path(path)
    try:
        rate, data = wavfile.read(path)
    except FileNotFoundError:
        raise DataError(f"cannot read audio file: {path}") from None
    except (ValueError, EOFError, struct.error) as exc:
        raise DataError(f"unsupported or corrupt audio file {path}: {exc}") from None
    if data.size == 0:
        raise DataError(f"zero-length audio stream: {path}")

    if data.dtype == np.uint8:
        samples = (data.astype(np.float64) - 128.0) / 128.0
    elif data.dtype.kind == "i":
        samples = data.astype(np.float64) / float(np.iinfo(data.dtype).max + 1)
    else:
        samples = np.clip(data.astype(np.float64), -1.0, 1.0)
    if samples.ndim == 2:
        samples = samples.mean(axis=1)

    sid = source_id if source_id is not None else path.stem
    return AudioClip(samples=samples, sample_rate=int(rate),
                     source_id=sid, label=label)


def segment_clip(clip: AudioClip, seg_len_s: float = 3.0,
                 max_segments: int = 10) -> list[Segment]:
    """Cut a clip into up to max_segments consecutive windows of seg_len_s.

    Windows start at sample 0 and do not overlap; the trailing remainder is
    discarded. A clip shorter than one window yields an empty list.
    """
    if seg_len_s <= 0:
        raise ConfigError(f"segment length must be positive, got {seg_len_s}")
    if max_segments < 0:
        raise ConfigError(f"max_segments must be >= 0, got {max_segments}")
    win = int(round(seg_len_s * clip.sample_rate))
    n = min(max_segments, clip.samples.size // win)
    return [
        Segment(
            samples=clip.samples[i * win:(i + 1) * win].copy(),
            sample_rate=clip.sample_rate,
            source_id=clip.source_id,
            label=clip.label,
            segment_index=i,
            duration_s=win / clip.sample_rate,
        )
        for i in range(n)
    ]
