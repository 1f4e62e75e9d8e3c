"""Command-line pipeline driver.

Stages communicate through files so each one is independently runnable and
the feature CSV can feed external classifiers:

    notenet extract  -m manifest.csv -o out/   -> out/sequences.txt
    notenet features -i sequences.txt -o out/  -> out/features.csv
    notenet evaluate -i features.csv -o out/   -> out/report.txt, out/confusion.csv
    notenet pipeline -m manifest.csv -o out/   -> all of the above

Exit codes: 0 success, 1 usage/config error, 2 data error.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import logging
import sys
from dataclasses import dataclass
from pathlib import Path

from .audio import decode_audio, segment_clip
from .errors import ConfigError, DataError
from .evaluate import cross_validate
from .features import (ThresholdPlan, build_matrix, minmax_rescale, read_matrix,
                       write_matrix)
from .graph import SELF_EDGE_POLICIES, TraversalParams
from .notes import (SHARP_POLICIES, read_sequence_file, track_to_sequence,
                    write_sequence_file)
from .pitch import estimate_f0

log = logging.getLogger("notenet")

RESCALE_GLOBAL = "global"
RESCALE_TRAIN_ONLY = "train_only"
RESCALE_SCOPES = (RESCALE_GLOBAL, RESCALE_TRAIN_ONLY)

SWEEP_LEVELS = tuple(range(11)) + (15, 20, 25, 30)

SEQUENCES_NAME = "sequences.txt"
FEATURES_NAME = "features.csv"
REPORT_NAME = "report.txt"
CONFUSION_NAME = "confusion.csv"
SIDECAR_NAME = "run_config.json"


@dataclass(frozen=True)
class RunConfig:
    ws: int = 2
    st: int = 2
    t_max: int = 30
    seg_len_s: float = 3.0
    max_segments: int = 10
    fmin_hz: float = 65.0
    fmax_hz: float = 2093.0
    knn_k: int = 1
    folds: int = 10
    seed: int = 0
    sharp_policy: str = "strip"
    self_edge_policy: str = "skip"
    rescale_scope: str = RESCALE_GLOBAL

    def validate(self) -> "RunConfig":
        if self.ws < 1 or self.st < 1:
            raise ConfigError("ws and st must be >= 1")
        if not 0 <= self.t_max <= 1000:
            raise ConfigError(f"t_max must be in 0..1000, got {self.t_max}")
        if self.seg_len_s <= 0:
            raise ConfigError("seg_len_s must be positive")
        if self.max_segments < 1:
            raise ConfigError("max_segments must be >= 1")
        if not 0 < self.fmin_hz < self.fmax_hz:
            raise ConfigError("need 0 < fmin_hz < fmax_hz")
        if self.knn_k < 1:
            raise ConfigError("knn_k must be >= 1")
        if self.folds < 2:
            raise ConfigError("folds must be >= 2")
        if self.sharp_policy not in SHARP_POLICIES:
            raise ConfigError(f"sharp_policy must be one of {SHARP_POLICIES}")
        if self.self_edge_policy not in SELF_EDGE_POLICIES:
            raise ConfigError(f"self_edge_policy must be one of {SELF_EDGE_POLICIES}")
        if self.rescale_scope not in RESCALE_SCOPES:
            raise ConfigError(f"rescale_scope must be one of {RESCALE_SCOPES}")
        return self

    def to_file(self, path: Path) -> None:
        payload = dataclasses.asdict(self)
        path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                        encoding="utf-8")

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        try:
            payload = json.loads(Path(path).read_text(encoding="utf-8"))
        except OSError as exc:
            raise ConfigError(f"cannot read config {path}: {exc}") from None
        except json.JSONDecodeError as exc:
            raise ConfigError(f"bad config JSON in {path}: {exc}") from None
        known = {f.name for f in dataclasses.fields(cls)}
        unknown = set(payload) - known
        if unknown:
            raise ConfigError(f"unknown config keys in {path}: {sorted(unknown)}")
        return cls(**payload)


def load_manifest(path: str | Path) -> list[tuple[Path, str, str]]:
    """Rows of (audio path, label, source_id); paths resolve relative to the manifest."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DataError(f"cannot read manifest {path}: {exc}") from None
    entries = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        if lineno == 1 and line.replace(" ", "") in ("path,label", "path,label,source_id"):
            continue
        parts = [p.strip() for p in line.split(",")]
        if len(parts) not in (2, 3):
            raise DataError(f"{path}:{lineno}: expected 'path,label[,source_id]'")
        audio = Path(parts[0])
        if not audio.is_absolute():
            audio = path.parent / audio
        label = parts[1]
        if not label:
            raise DataError(f"{path}:{lineno}: empty label")
        source_id = parts[2] if len(parts) == 3 and parts[2] else Path(parts[0]).stem
        if source_id in seen:
            raise DataError(f"{path}:{lineno}: duplicate source_id {source_id!r}")
        seen.add(source_id)
        entries.append((audio, label, source_id))
    if not entries:
        raise DataError(f"manifest {path} has no entries")
    return entries


def _guard_outputs(paths: list[Path], force: bool) -> None:
    for p in paths:
        if p.exists() and not force:
            raise ConfigError(f"output {p} exists; pass --force to overwrite")


def _prepare_out(out_dir: str | Path) -> Path:
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    return out


def cmd_extract(manifest_path: str | Path, out_dir: str | Path,
                config: RunConfig, force: bool = False) -> Path:
    """Decode, segment, track and quantize every manifest entry."""
    config.validate()
    out = _prepare_out(out_dir)
    target = out / SEQUENCES_NAME
    _guard_outputs([target], force)
    sequences = []
    ok = 0
    for audio_path, label, source_id in load_manifest(manifest_path):
        try:
            clip = decode_audio(audio_path, source_id=source_id, label=label)
            for seg in segment_clip(clip, config.seg_len_s, config.max_segments):
                track = estimate_f0(seg, config.fmin_hz, config.fmax_hz)
                sequences.append(track_to_sequence(
                    track, source_id=source_id, segment_index=seg.segment_index,
                    label=label, sharp_policy=config.sharp_policy))
            ok += 1
        except DataError as exc:
            log.warning("skipping %s (%s): %s", source_id, audio_path, exc)
    if ok == 0:
        raise DataError("no manifest entry could be processed")
    sequences.sort(key=lambda s: (s.source_id, s.segment_index))
    write_sequence_file(sequences, target)
    config.to_file(out / SIDECAR_NAME)
    return target


def cmd_features(sequence_path: str | Path, out_dir: str | Path,
                 config: RunConfig, force: bool = False,
                 t_max: int | None = None, suffix: str = "") -> Path:
    """Build the (optionally rescaled) feature matrix CSV from a sequence file."""
    config.validate()
    out = _prepare_out(out_dir)
    target = out / (FEATURES_NAME if not suffix else f"features_{suffix}.csv")
    _guard_outputs([target], force)
    level = config.t_max if t_max is None else t_max
    sequences = read_sequence_file(sequence_path)
    matrix = build_matrix(sequences, TraversalParams(config.ws, config.st),
                          ThresholdPlan.fixed(level),
                          self_edges=config.self_edge_policy)
    if config.rescale_scope == RESCALE_GLOBAL:
        matrix = minmax_rescale(matrix)
    write_matrix(matrix, target)
    config.to_file(out / SIDECAR_NAME)
    return target


def cmd_evaluate(features_path: str | Path, out_dir: str | Path,
                 config: RunConfig, force: bool = False,
                 suffix: str = "") -> tuple[Path, Path]:
    """Cross-validate the k-NN baseline and write report + confusion CSV."""
    config.validate()
    out = _prepare_out(out_dir)
    report_path = out / (REPORT_NAME if not suffix else f"report_{suffix}.txt")
    confusion_path = out / (CONFUSION_NAME if not suffix else f"confusion_{suffix}.csv")
    _guard_outputs([report_path, confusion_path], force)
    train_only = config.rescale_scope == RESCALE_TRAIN_ONLY
    matrix = read_matrix(features_path, rescaled=not train_only)
    report = cross_validate(matrix, k_folds=config.folds, knn_k=config.knn_k,
                            seed=config.seed, train_only_rescale=train_only)
    report.write(report_path, confusion_path)
    config.to_file(out / SIDECAR_NAME)
    return report_path, confusion_path


def cmd_pipeline(manifest_path: str | Path, out_dir: str | Path,
                 config: RunConfig, force: bool = False,
                 threshold_sweep: bool = False) -> None:
    """extract + features + evaluate; --threshold-sweep fans out over T levels."""
    sequence_path = cmd_extract(manifest_path, out_dir, config, force)
    if not threshold_sweep:
        features_path = cmd_features(sequence_path, out_dir, config, force)
        cmd_evaluate(features_path, out_dir, config, force)
        return
    for level in SWEEP_LEVELS:
        suffix = f"T{level}"
        features_path = cmd_features(sequence_path, out_dir, config, force,
                                     t_max=level, suffix=suffix)
        cmd_evaluate(features_path, out_dir, config, force, suffix=suffix)


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise ConfigError(message)


def _add_config_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--config", help="load settings from a run_config.json sidecar")
    p.add_argument("--ws", type=int)
    p.add_argument("--st", type=int)
    p.add_argument("--t-max", type=int, dest="t_max")
    p.add_argument("--seg-len-s", type=float, dest="seg_len_s")
    p.add_argument("--max-segments", type=int, dest="max_segments")
    p.add_argument("--fmin", type=float, dest="fmin_hz")
    p.add_argument("--fmax", type=float, dest="fmax_hz")
    p.add_argument("--knn-k", type=int, dest="knn_k")
    p.add_argument("--folds", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--sharp-policy", choices=SHARP_POLICIES, dest="sharp_policy")
    p.add_argument("--self-edge-policy", choices=SELF_EDGE_POLICIES,
                   dest="self_edge_policy")
    p.add_argument("--rescale-scope", choices=RESCALE_SCOPES, dest="rescale_scope")
    p.add_argument("--force", action="store_true")
    p.add_argument("-o", "--out", required=True, help="output directory")


def resolve_config(args: argparse.Namespace) -> RunConfig:
    config = RunConfig.from_file(args.config) if args.config else RunConfig()
    overrides = {}
    for f in dataclasses.fields(RunConfig):
        value = getattr(args, f.name, None)
        if value is not None:
            overrides[f.name] = value
    if overrides:
        config = dataclasses.replace(config, **overrides)
    return config.validate()


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="notenet",
                     description="Note-network topology features for genre separation")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("extract", help="manifest -> note sequences")
    p.add_argument("-m", "--manifest", required=True)
    _add_config_flags(p)

    p = sub.add_parser("features", help="note sequences -> feature CSV")
    p.add_argument("-i", "--input", required=True, help="sequence file")
    _add_config_flags(p)

    p = sub.add_parser("evaluate", help="feature CSV -> CV report")
    p.add_argument("-i", "--input", required=True, help="feature CSV")
    _add_config_flags(p)

    p = sub.add_parser("pipeline", help="manifest -> sequences, features, report")
    p.add_argument("-m", "--manifest", required=True)
    p.add_argument("--threshold-sweep", action="store_true",
                   help="emit one feature CSV and report per sweep level")
    _add_config_flags(p)

    return parser


def main(argv: list[str] | None = None) -> int:
    logging.basicConfig(level=logging.INFO, format="%(levelname)s %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:  # --help
        return 0 if exc.code in (0, None) else 1
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    try:
        config = resolve_config(args)
        if args.command == "extract":
            cmd_extract(args.manifest, args.out, config, args.force)
        elif args.command == "features":
            cmd_features(args.input, args.out, config, args.force)
        elif args.command == "evaluate":
            cmd_evaluate(args.input, args.out, config, args.force)
        elif args.command == "pipeline":
            cmd_pipeline(args.manifest, args.out, config, args.force,
                         threshold_sweep=args.threshold_sweep)
    except ConfigError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
