"""notenet: note-adjacency network features for musical genre classification.

Pipeline: decode audio, cut 3-second segments, track the fundamental
frequency, quantize to natural-note symbols, map each segment's note
sequence to an undirected weighted network, measure the network topology
across weight thresholds, and evaluate genre separability of the resulting
feature matrix with a nearest-neighbor baseline.
"""

from .audio import AudioClip, Segment, decode_audio, segment_clip
from .errors import ConfigError, DataError
from .evaluate import CVReport, cross_validate, knn_classify, stratified_folds
from .features import (FeatureMatrix, FeatureRow, ThresholdPlan, build_matrix,
                       extract_features, feature_column_names, minmax_rescale,
                       read_matrix, write_matrix)
from .graph import (TraversalParams, WeightedGraph, build_network,
                    prune_by_weight)
from .notes import (NoteSequence, NoteSymbol, freq_to_note, read_sequence,
                    read_sequence_file, track_to_sequence, write_sequence,
                    write_sequence_file)
from .pitch import UNVOICED, F0Track, estimate_f0
from .topology import (MEASUREMENT_NAMES, MeasurementVector, aspl,
                       assortativity_degree, backend_name, betweenness_avg,
                       clustering_global, degree_stats, measure_all,
                       motif_counts)

__version__ = "0.1.0"

__all__ = [
    "AudioClip", "Segment", "decode_audio", "segment_clip",
    "ConfigError", "DataError",
    "F0Track", "UNVOICED", "estimate_f0",
    "NoteSymbol", "NoteSequence", "freq_to_note", "track_to_sequence",
    "write_sequence", "read_sequence", "write_sequence_file", "read_sequence_file",
    "WeightedGraph", "TraversalParams", "build_network", "prune_by_weight",
    "MeasurementVector", "MEASUREMENT_NAMES", "measure_all", "degree_stats",
    "aspl", "betweenness_avg", "clustering_global", "assortativity_degree",
    "motif_counts", "backend_name",
    "ThresholdPlan", "FeatureRow", "FeatureMatrix", "extract_features",
    "build_matrix", "minmax_rescale", "feature_column_names",
    "write_matrix", "read_matrix",
    "CVReport", "stratified_folds", "knn_classify", "cross_validate",
    "__version__",
]
