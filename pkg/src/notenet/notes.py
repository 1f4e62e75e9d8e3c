"""Quantization of F0 tracks into two-character natural-note symbols.

Frequencies are snapped to the nearest equal-tempered chromatic pitch
(A4 = 440 Hz) and the sharp sign is stripped from the pitch name, so every
note renders as exactly one letter plus one octave digit (C#4 becomes C4).
Sequences serialize one per line as

    source_id,segment_index,label: G3 C2 B2 C2
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, TextIO

from .errors import DataError
from .pitch import F0Track

PITCH_CLASS_NAMES = ("C", "C#", "D", "D#", "E", "F", "F#", "G", "G#", "A", "A#", "B")
NATURAL_LETTERS = "CDEFGAB"

SHARP_STRIP = "strip"
SHARP_DROP = "drop"
SHARP_POLICIES = (SHARP_STRIP, SHARP_DROP)

_TOKEN_RE = re.compile(r"\S+")


@dataclass(frozen=True)
class NoteSymbol:
    """A natural pitch letter plus a single octave digit."""

    letter: str
    octave: int

    def __post_init__(self):
        if self.letter not in NATURAL_LETTERS:
            raise ValueError(f"invalid note letter {self.letter!r}")
        if not 0 <= self.octave <= 9:
            raise ValueError(f"octave {self.octave} not a single digit")

    def __str__(self) -> str:
        return f"{self.letter}{self.octave}"

    @property
    def sort_key(self) -> tuple[int, int]:
        """Orders symbols by pitch: octave first, then letter within octave."""
        return (self.octave, NATURAL_LETTERS.index(self.letter))

    @classmethod
    def parse(cls, token: str) -> "NoteSymbol":
        if len(token) != 2 or token[0] not in NATURAL_LETTERS or not token[1].isdigit():
            raise ValueError(f"malformed note token {token!r}")
        return cls(token[0], int(token[1]))


@dataclass
class NoteSequence:
    """Ordered notes for one segment, with provenance."""

    notes: list[NoteSymbol] = field(default_factory=list)
    source_id: str = ""
    segment_index: int = 0
    label: str = ""

    def __len__(self) -> int:
        return len(self.notes)


def freq_to_midi(f0_hz: float) -> int:
    """Nearest chromatic pitch number (A4 = 69 = 440 Hz)."""
    if not (math.isfinite(f0_hz) and f0_hz > 0):
        raise ValueError(f"frequency must be finite and positive, got {f0_hz}")
    return int(round(69 + 12 * math.log2(f0_hz / 440.0)))


def midi_is_sharp(midi: int) -> bool:
    return "#" in PITCH_CLASS_NAMES[midi % 12]


def midi_to_note(midi: int) -> NoteSymbol:
    """Natural note for a chromatic pitch number; sharps collapse downward."""
    letter = PITCH_CLASS_NAMES[midi % 12][0]
    return NoteSymbol(letter, midi // 12 - 1)


def freq_to_note(f0_hz: float) -> NoteSymbol:
    return midi_to_note(freq_to_midi(f0_hz))


def track_to_sequence(track: F0Track, source_id: str = "", segment_index: int = 0,
                      label: str = "", sharp_policy: str = SHARP_STRIP) -> NoteSequence:
    """Quantize one F0 track; unvoiced frames are skipped.

    sharp_policy "strip" merges sharp pitches into their natural letter;
    "drop" discards frames that quantize to a sharp pitch.
    """
    if sharp_policy not in SHARP_POLICIES:
        raise ValueError(f"unknown sharp policy {sharp_policy!r}")
    notes = []
    for f in track.voiced_values():
        midi = freq_to_midi(float(f))
        if sharp_policy == SHARP_DROP and midi_is_sharp(midi):
            continue
        notes.append(midi_to_note(midi))
    return NoteSequence(notes, source_id, segment_index, label)


def _check_header_field(value: str, what: str) -> str:
    if "," in value or ":" in value or "\n" in value:
        raise DataError(f"{what} {value!r} must not contain ',' ':' or newlines")
    return value


def format_sequence_line(seq: NoteSequence) -> str:
    _check_header_field(seq.source_id, "source_id")
    _check_header_field(seq.label, "label")
    head = f"{seq.source_id},{seq.segment_index},{seq.label}:"
    if not seq.notes:
        return head
    return head + " " + " ".join(str(n) for n in seq.notes)


def parse_sequence_line(line: str, lineno: int = 1) -> NoteSequence:
    line = line.rstrip("\n")
    head, sep, body = line.partition(":")
    if not sep:
        raise DataError(f"line {lineno}: missing ':' separator")
    parts = head.split(",")
    if len(parts) != 3:
        raise DataError(f"line {lineno}: header must be source_id,segment_index,label")
    source_id, idx_text, label = parts
    try:
        segment_index = int(idx_text)
    except ValueError:
        raise DataError(f"line {lineno}: bad segment index {idx_text!r}") from None
    notes = []
    offset = len(head) + 1
    for m in _TOKEN_RE.finditer(body):
        try:
            notes.append(NoteSymbol.parse(m.group()))
        except ValueError:
            col = offset + m.start() + 1
            raise DataError(
                f"line {lineno}, column {col}: malformed note token {m.group()!r}"
            ) from None
    return NoteSequence(notes, source_id, segment_index, label)


def write_sequence(seq: NoteSequence, sink: TextIO) -> None:
    sink.write(format_sequence_line(seq) + "\n")


def read_sequence(source: TextIO | str) -> NoteSequence:
    line = source if isinstance(source, str) else source.readline()
    return parse_sequence_line(line)


def write_sequence_file(seqs: Iterable[NoteSequence], path: str | Path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for seq in seqs:
            write_sequence(seq, fh)


def read_sequence_file(path: str | Path) -> list[NoteSequence]:
    try:
        fh = open(path, "r", encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read sequence file {path}: {exc}") from None
    with fh:
        return [parse_sequence_line(line, lineno)
                for lineno, line in enumerate(fh, start=1) if line.strip()]
