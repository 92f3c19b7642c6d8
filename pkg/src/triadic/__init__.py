"""Triadic closure in temporal coauthorship networks.

Three coefficients over an author-paper corpus: NCC (closed 2-paths in the
one-mode projection), OCC (closed 4-paths in the two-mode network) and TCC
(open pairs from a preceding window that coauthor in a target year).
"""

__version__ = "0.1.0"

from .corpus import (
    Corpus,
    CorpusError,
    FilterConfig,
    PaperRecord,
    WindowSpec,
    apply_filters,
    author_activity_set,
    parse_corpus,
    percentile_threshold,
    read_corpus,
    serialize_corpus,
    slice_window,
)
from .experiments import SynthConfig, TimeseriesRow, generate_synthetic, run_timeseries
from .projection import OneModeGraph, project_one_mode
from .static_metrics import (
    FourPath,
    MetricReport,
    count_closed_four_paths,
    count_closed_two_paths,
    count_four_paths,
    count_two_paths,
    ncc,
    occ,
)
from .temporal_metrics import (
    PairObservation,
    TccReport,
    closure_by_shared_count,
    involvement_ratio,
    open_pairs,
    overlap_ratios,
    tcc,
    window_sweep,
)
