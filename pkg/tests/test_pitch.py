import numpy as np
import pytest

from notenet.audio import Segment
from notenet.errors import ConfigError
from notenet.pitch import estimate_f0

from synthdata import sine

SR = 22050


def _segment(samples, sr=SR):
    return Segment(samples=samples, sample_rate=sr, source_id="s", label="x",
                   segment_index=0, duration_s=samples.size / sr)


def _track_for_sine(freq, duration=1.0, sr=SR, **kwargs):
    return estimate_f0(_segment(sine(freq, duration, sr), sr), **kwargs)


def test_440hz_sine_all_voiced_and_accurate():
    track = _track_for_sine(440.0)
    assert len(track) > 0
    assert track.voiced_mask.all()
    median = np.median(track.voiced_values())
    assert 438.0 <= median <= 442.0


def test_silence_all_unvoiced():
    track = estimate_f0(_segment(np.zeros(3 * SR)))
    assert len(track) > 0
    assert not track.voiced_mask.any()


def test_3000hz_sine_all_unvoiced():
    track = _track_for_sine(3000.0)
    assert len(track) > 0
    assert not track.voiced_mask.any()


@pytest.mark.parametrize("freq", [80.0, 130.8, 261.6, 440.0, 987.8, 2000.0])
def test_band_sines_within_one_percent(freq):
    track = _track_for_sine(freq)
    voiced = track.voiced_values()
    assert voiced.size > 0
    assert abs(np.median(voiced) - freq) <= 0.01 * freq


def test_no_voiced_frame_outside_band():
    for freq in (66.0, 100.0, 1500.0, 2080.0):
        track = _track_for_sine(freq)
        voiced = track.voiced_values()
        assert ((voiced >= track.fmin_hz) & (voiced <= track.fmax_hz)).all()


def test_deterministic():
    a = _track_for_sine(220.0)
    b = _track_for_sine(220.0)
    assert np.array_equal(a.f0_hz, b.f0_hz, equal_nan=True)
    assert np.array_equal(a.times_s, b.times_s)


def test_times_strictly_increasing():
    track = _track_for_sine(330.0)
    assert (np.diff(track.times_s) > 0).all()


def test_frame_len_too_short_raises():
    with pytest.raises(ConfigError):
        estimate_f0(_segment(sine(220.0, 1.0)), fmin_hz=20.0, frame_len=1024)


def test_segment_shorter_than_frame_yields_empty_track():
    track = estimate_f0(_segment(sine(440.0, 0.01)))
    assert len(track) == 0
