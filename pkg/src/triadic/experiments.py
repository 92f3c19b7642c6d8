"""Per-year NCC/OCC/TCC series and a seeded synthetic corpus generator."""

from __future__ import annotations

import logging
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import asdict, dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .corpus import Corpus, CorpusError, PaperRecord, WindowSpec
from .projection import project_range
from .static_metrics import fraction_decimal, fraction_text, four_path_range
from . import kernels
from .temporal_metrics import involvement_ratio, overlap_from_masks, tcc_arrays

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TimeseriesRow:
    year: int
    ncc: Fraction | None
    occ: Fraction | None
    tcc_by_window: dict[int, Fraction | None]
    overlap_target: Fraction | None
    overlap_preceding: Fraction | None
    involvement: Fraction | None
    partial_window: bool = False

    def ratios(self) -> list[Fraction | None]:
        return [
            self.ncc,
            self.occ,
            *self.tcc_by_window.values(),
            self.overlap_target,
            self.overlap_preceding,
            self.involvement,
        ]

    def to_dict(self) -> dict:
        def both(v):
            return {"ratio": fraction_text(v), "decimal": fraction_decimal(v)}

        return {
            "year": self.year,
            "ncc": both(self.ncc),
            "occ": both(self.occ),
            "tcc": {str(k): both(v) for k, v in self.tcc_by_window.items()},
            "overlap_target": both(self.overlap_target),
            "overlap_preceding": both(self.overlap_preceding),
            "involvement": both(self.involvement),
            "partial_window": self.partial_window,
        }


def _ratio(num: int, den: int) -> Fraction | None:
    return Fraction(num, den) if den else None


def _row(
    corpus: Corpus,
    year: int,
    window_len: int,
    sweep_lengths: Sequence[int],
    require_dual_activity: bool,
    eligibility: str,
) -> TimeseriesRow:
    arrays = corpus.arrays
    lo, hi = arrays.year_range(year - window_len + 1, year)
    indptr, indices = project_range(arrays, lo, hi)
    two, closed_two = kernels.active.two_path_counts(indptr, indices)
    four, closed_four = four_path_range(arrays, lo, hi)

    reports = {
        n: tcc_arrays(corpus, WindowSpec(year, n), require_dual_activity, eligibility)
        for n in dict.fromkeys([*sweep_lengths, window_len])
    }
    default = reports[window_len]
    tlo, thi = arrays.year_range(year, year)
    plo, phi = arrays.year_range(year - window_len, year - 1)
    overlap_t, overlap_p = overlap_from_masks(arrays.active_mask(tlo, thi), arrays.active_mask(plo, phi))

    span = corpus.year_span
    partial = span is None or year - window_len < span[0] or year > span[1]
    return TimeseriesRow(
        year=year,
        ncc=_ratio(closed_two, two),
        occ=_ratio(closed_four, four),
        tcc_by_window={n: reports[n].ratio for n in sweep_lengths},
        overlap_target=overlap_t,
        overlap_preceding=overlap_p,
        involvement=involvement_ratio(default),
        partial_window=partial,
    )


def run_timeseries(
    corpus: Corpus,
    start_year: int,
    end_year: int,
    window_len: int = 5,
    sweep_lengths: Sequence[int] = (1, 2, 3, 4, 5),
    *,
    require_dual_activity: bool = True,
    eligibility: str = "strict",
    threads: int | None = None,
) -> list[TimeseriesRow]:
    """One row per year: NCC/OCC over the trailing ``window_len`` years, TCC per sweep length.

    Years run concurrently on ``threads`` workers; rows come back in year order.
    """
    if start_year > end_year:
        raise CorpusError(f"inverted year range {start_year}..{end_year}")
    if window_len < 1 or not sweep_lengths or min(sweep_lengths) < 1:
        raise CorpusError("window and sweep lengths must be >= 1")
    years = list(range(start_year, end_year + 1))
    span = corpus.year_span
    if span is None or start_year - window_len < span[0] or end_year > span[1]:
        log.warning("series %d..%d reaches outside corpus coverage %s", start_year, end_year, span)
    corpus.arrays  # build the shared encoding once, before fanning out

    def job(year: int) -> TimeseriesRow:
        return _row(corpus, year, window_len, list(sweep_lengths), require_dual_activity, eligibility)

    if threads == 1:
        return [job(y) for y in years]
    with ThreadPoolExecutor(max_workers=threads) as pool:
        return list(pool.map(job, years))


def timeseries_header(sweep_lengths: Sequence[int]) -> list[str]:
    return [
        "year",
        "ncc",
        "occ",
        *(f"tcc_w{n}" for n in sweep_lengths),
        "overlap_target",
        "overlap_preceding",
        "involvement",
    ]


# -- synthetic corpora ---------------------------------------------------------


@dataclass(frozen=True)
class SynthConfig:
    """Generator settings.

    ``authors_per_paper`` is either a fixed byline size or a mapping
    size -> weight. ``closure_prob`` seeds a byline with a pair joined by an
    open 4-path in the last ``closure_lookback`` years; ``repeat_collab_prob``
    seeds it with a past coauthor pair.
    """

    years: int = 15
    papers_per_year: int = 100
    authors_per_paper: int | Mapping[int, float] = 3
    author_pool_growth: int = 100
    repeat_collab_prob: float = 0.0
    closure_prob: float = 0.0
    seed: int = 0
    start_year: int = 1995
    initial_pool: int = 200
    closure_lookback: int = 5

    def __post_init__(self) -> None:
        for name in ("repeat_collab_prob", "closure_prob"):
            value = getattr(self, name)
            if not 0 <= value <= 1:
                raise CorpusError(f"{name} must lie in [0, 1], got {value}")
        if self.years < 1 or self.papers_per_year < 0 or self.author_pool_growth < 0:
            raise CorpusError("years must be >= 1; counts must be non-negative")
        if self.closure_lookback < 1:
            raise CorpusError("closure_lookback must be >= 1")
        sizes = self.size_weights()
        if min(sizes) < 1:
            raise CorpusError("byline sizes must be >= 1")
        if max(sizes) > self.initial_pool:
            raise CorpusError(
                f"byline size {max(sizes)} exceeds initial author pool {self.initial_pool}"
            )

    def size_weights(self) -> dict[int, float]:
        if isinstance(self.authors_per_paper, int):
            return {self.authors_per_paper: 1.0}
        return {int(k): float(v) for k, v in self.authors_per_paper.items()}

    def to_dict(self) -> dict:
        d = asdict(self)
        d["authors_per_paper"] = (
            self.authors_per_paper
            if isinstance(self.authors_per_paper, int)
            else {str(k): v for k, v in self.size_weights().items()}
        )
        return d


@dataclass(frozen=True)
class PlantedClosure:
    paper_id: str
    year: int
    pair: tuple[str, str]
    middle: str

    def to_dict(self) -> dict:
        return {"paper_id": self.paper_id, "year": self.year, "pair": list(self.pair), "middle": self.middle}


@dataclass
class _History:
    papers: list[tuple[int, list[str]]] = field(default_factory=list)
    by_author: dict[str, list[int]] = field(default_factory=dict)
    pairs: set[tuple[str, str]] = field(default_factory=set)
    year_start: dict[int, int] = field(default_factory=dict)

    def add(self, year: int, authors: list[str]) -> None:
        idx = len(self.papers)
        self.papers.append((year, authors))
        for a in authors:
            self.by_author.setdefault(a, []).append(idx)
        for u in authors:
            for v in authors:
                if u < v:
                    self.pairs.add((u, v))


def _author_name(i: int) -> str:
    return f"a{i:07d}"


def _open_pair(rng: random.Random, hist: _History, lo: int, hi: int, tries: int = 20):
    """Draw Y-A-X-B-Z from papers [lo, hi) with Y and Z never coauthors."""
    if hi - lo < 2:
        return None
    for _ in range(tries):
        _, a_auth = hist.papers[rng.randrange(lo, hi)]
        x = rng.choice(a_auth)
        others = [p for p in hist.by_author[x] if lo <= p < hi]
        if len(others) < 2:
            continue
        b = rng.choice(others)
        b_auth = hist.papers[b][1]
        ys = [a for a in a_auth if a != x]
        zs = [a for a in b_auth if a != x]
        if not ys or not zs:
            continue
        y, z = rng.choice(ys), rng.choice(zs)
        if y == z or (min(y, z), max(y, z)) in hist.pairs:
            continue
        return (min(y, z), max(y, z)), x
    return None


def generate_synthetic(cfg: SynthConfig, planted: list[PlantedClosure] | None = None) -> Corpus:
    """Deterministic corpus for ``cfg``; closure-seeded bylines are appended to ``planted``."""
    rng = random.Random(cfg.seed)
    weights = cfg.size_weights()
    sizes, probs = list(weights), list(weights.values())
    hist = _History()
    records: list[PaperRecord] = []
    pool = cfg.initial_pool
    serial = 0
    for offset in range(cfg.years):
        year = cfg.start_year + offset
        if offset:
            pool += cfg.author_pool_growth
        hist.year_start[year] = len(hist.papers)
        lookback_lo = hist.year_start.get(year - cfg.closure_lookback, 0)
        prior_hi = hist.year_start[year]
        this_year = []
        for _ in range(cfg.papers_per_year):
            k = sizes[0] if len(sizes) == 1 else rng.choices(sizes, probs)[0]
            if k > pool:
                raise CorpusError(f"byline size {k} exceeds author pool {pool}")
            byline: list[str] = []
            seed_log = None
            if k >= 2 and rng.random() < cfg.closure_prob:
                drawn = _open_pair(rng, hist, lookback_lo, prior_hi)
                if drawn is not None:
                    (y, z), x = drawn
                    byline = [y, z]
                    seed_log = (y, z), x
            if not byline and k >= 2 and prior_hi and rng.random() < cfg.repeat_collab_prob:
                _, past = hist.papers[rng.randrange(0, prior_hi)]
                if len(past) >= 2:
                    byline = rng.sample(past, 2)
            chosen = set(byline)
            while len(byline) < k:
                a = _author_name(rng.randrange(pool))
                if a not in chosen:
                    chosen.add(a)
                    byline.append(a)
            pid = f"p{serial:08d}"
            serial += 1
            records.append(PaperRecord(pid, year, frozenset(byline)))
            this_year.append(byline)
            if seed_log is not None and planted is not None:
                planted.append(PlantedClosure(pid, year, seed_log[0], seed_log[1]))
        for byline in this_year:
            hist.add(year, byline)
    return Corpus(records)
