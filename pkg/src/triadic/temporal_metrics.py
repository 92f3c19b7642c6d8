"""Over-time closure (TCC) and the analyses built on its pair table."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable

import numpy as np

from . import kernels
from .corpus import Corpus, CorpusArrays, CorpusError, WindowSpec
from .static_metrics import fraction_decimal, fraction_text

ELIGIBILITY_MODES = ("strict", "literal")


@dataclass(frozen=True)
class PairObservation:
    """An author pair linked by an open 4-path in the preceding window.

    ``closed`` and ``involvement`` stay ``None`` until the pair is checked
    against a target year.
    """

    pair: tuple[str, str]
    middle_authors: frozenset[str]
    closed: bool | None = None
    closing_papers: frozenset[str] = frozenset()
    involvement: bool | None = None

    @property
    def n_shared(self) -> int:
        return len(self.middle_authors)

    def to_dict(self) -> dict:
        return {
            "pair": list(self.pair),
            "middle_authors": sorted(self.middle_authors),
            "n_shared": self.n_shared,
            "closed": self.closed,
            "closing_papers": sorted(self.closing_papers),
            "involvement": self.involvement,
        }


@dataclass(eq=False)
class TccReport:
    window: WindowSpec
    eligible_pairs: int
    closed_pairs: int
    involved_pairs: int
    dual_activity_filtered: bool
    eligibility: str
    shared_counts: np.ndarray
    closed_mask: np.ndarray
    involved_mask: np.ndarray
    warnings: tuple[str, ...] = ()
    _loader: Callable[[], list[PairObservation]] | None = field(default=None, repr=False)
    _observations: list[PairObservation] | None = field(default=None, repr=False)

    @classmethod
    def from_observations(
        cls,
        window: WindowSpec,
        observations: Iterable[PairObservation],
        *,
        dual_activity_filtered: bool,
        eligibility: str,
        warnings: tuple[str, ...] = (),
    ) -> "TccReport":
        obs = sorted(observations, key=lambda o: o.pair)
        closed = np.array([bool(o.closed) for o in obs], dtype=bool)
        involved = np.array([bool(o.involvement) for o in obs], dtype=bool)
        return cls(
            window=window,
            eligible_pairs=len(obs),
            closed_pairs=int(closed.sum()),
            involved_pairs=int(involved.sum()),
            dual_activity_filtered=dual_activity_filtered,
            eligibility=eligibility,
            shared_counts=np.array([o.n_shared for o in obs], dtype=np.int64),
            closed_mask=closed,
            involved_mask=involved,
            warnings=warnings,
            _observations=obs,
        )

    @property
    def observations(self) -> list[PairObservation]:
        """Per-pair detail in canonical (sorted pair) order, built on first access."""
        if self._observations is None:
            self._observations = self._loader() if self._loader else []
        return self._observations

    @property
    def numerator(self) -> int:
        return self.closed_pairs

    @property
    def denominator(self) -> int:
        return self.eligible_pairs

    @property
    def defined(self) -> bool:
        return self.eligible_pairs > 0

    @property
    def ratio(self) -> Fraction | None:
        if not self.defined:
            return None
        return Fraction(self.closed_pairs, self.eligible_pairs)

    def to_dict(self) -> dict:
        return {
            "metric": "TCC",
            "window": self.window.to_dict(),
            "numerator": self.closed_pairs,
            "denominator": self.eligible_pairs,
            "ratio": fraction_text(self.ratio),
            "decimal": fraction_decimal(self.ratio),
            "defined": self.defined,
            "involved_pairs": self.involved_pairs,
            "dual_activity": self.dual_activity_filtered,
            "eligibility": self.eligibility,
            "warnings": list(self.warnings),
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, TccReport):
            return NotImplemented
        return self.to_dict() == other.to_dict() and self.observations == other.observations


def _check_mode(eligibility: str) -> None:
    if eligibility not in ELIGIBILITY_MODES:
        raise CorpusError(f"eligibility must be one of {ELIGIBILITY_MODES}, got {eligibility!r}")


# -- array-level core ---------------------------------------------------------


@dataclass(frozen=True)
class PairTable:
    """Eligible pairs as author numbers with their middle authors in CSR form."""

    ys: np.ndarray
    zs: np.ndarray
    mid_ptr: np.ndarray
    mids: np.ndarray

    def __len__(self) -> int:
        return len(self.ys)

    @property
    def shared_counts(self) -> np.ndarray:
        return np.diff(self.mid_ptr)

    def subset(self, mask: np.ndarray) -> "PairTable":
        counts = self.shared_counts
        rows = np.repeat(np.arange(len(self.ys)), counts)
        ptr = np.zeros(int(mask.sum()) + 1, dtype=np.int64)
        np.cumsum(counts[mask], out=ptr[1:])
        return PairTable(self.ys[mask], self.zs[mask], ptr, self.mids[mask[rows]])


def open_pair_table(
    arrays: CorpusArrays, lo: int, hi: int, active: np.ndarray | None, strict: bool
) -> PairTable:
    keys, counts = kernels.pair_index(arrays, lo, hi)
    mask = active if active is not None else np.zeros(0, dtype=np.uint8)
    ys, zs, xs, closed = kernels.active.four_path_triples(
        arrays.paper_ptr,
        arrays.paper_authors,
        arrays.author_ptr,
        arrays.author_papers,
        lo,
        hi,
        keys,
        counts,
        mask,
        strict,
    )
    pair = ys.astype(np.int64) * arrays.n_authors + zs
    if not strict and len(pair):
        keep = ~np.isin(pair, np.unique(pair[closed.astype(bool)]))
        pair, ys, zs, xs = pair[keep], ys[keep], zs[keep], xs[keep]
    order = np.lexsort((xs, pair))
    pair, ys, zs, xs = pair[order], ys[order], zs[order], xs[order]
    first = np.ones(len(pair), dtype=bool)
    first[1:] = (pair[1:] != pair[:-1]) | (xs[1:] != xs[:-1])
    pair, ys, zs, xs = pair[first], ys[first], zs[first], xs[first]
    _, starts = np.unique(pair, return_index=True)
    mid_ptr = np.append(starts, len(pair)).astype(np.int64)
    return PairTable(ys[starts], zs[starts], mid_ptr, xs.astype(np.int32))


def _closing_papers(arrays: CorpusArrays, corpus: Corpus, y: int, z: int, lo: int, hi: int):
    def papers_of(a):
        seg = arrays.author_papers[arrays.author_ptr[a] : arrays.author_ptr[a + 1]]
        return seg[(seg >= lo) & (seg < hi)]

    joint = np.intersect1d(papers_of(y), papers_of(z))
    return frozenset(corpus.papers[arrays.paper_rows[p]].paper_id for p in joint.tolist())


def _coverage_warnings(corpus: Corpus, window: WindowSpec) -> tuple[str, ...]:
    span = corpus.year_span
    if span is None:
        return ("corpus is empty",)
    if window.preceding_start < span[0] or window.target_year > span[1]:
        return (
            f"window {window.preceding_start}..{window.target_year} extends beyond "
            f"corpus years {span[0]}..{span[1]}",
        )
    return ()


def tcc_arrays(
    corpus: Corpus,
    window: WindowSpec,
    require_dual_activity: bool = True,
    eligibility: str = "strict",
) -> TccReport:
    _check_mode(eligibility)
    arrays = corpus.arrays
    plo, phi = arrays.year_range(window.preceding_start, window.preceding_end)
    tlo, thi = arrays.year_range(window.target_year, window.target_year)
    active = None
    if require_dual_activity:
        active = arrays.active_mask(plo, phi) & arrays.active_mask(tlo, thi)
    table = open_pair_table(arrays, plo, phi, active, eligibility == "strict")

    n = np.int64(arrays.n_authors)
    target_keys, _ = kernels.pair_index(arrays, tlo, thi)
    closed = np.isin(table.ys.astype(np.int64) * n + table.zs, target_keys)
    involved = np.zeros(len(table), dtype=bool)
    if closed.any():
        sub = table.subset(closed)
        flags = kernels.active.involvement(
            arrays.paper_ptr,
            arrays.paper_authors,
            arrays.author_ptr,
            arrays.author_papers,
            tlo,
            thi,
            sub.ys,
            sub.zs,
            sub.mid_ptr,
            sub.mids,
        )
        involved[closed] = flags.astype(bool)

    def load() -> list[PairObservation]:
        names = arrays.authors
        out = []
        ptr = table.mid_ptr.tolist()
        mids = table.mids.tolist()
        for i, (y, z) in enumerate(zip(table.ys.tolist(), table.zs.tolist())):
            is_closed = bool(closed[i])
            out.append(
                PairObservation(
                    pair=(names[y], names[z]),
                    middle_authors=frozenset(names[m] for m in mids[ptr[i] : ptr[i + 1]]),
                    closed=is_closed,
                    closing_papers=(
                        _closing_papers(arrays, corpus, y, z, tlo, thi) if is_closed else frozenset()
                    ),
                    involvement=bool(involved[i]),
                )
            )
        return out

    return TccReport(
        window=window,
        eligible_pairs=len(table),
        closed_pairs=int(closed.sum()),
        involved_pairs=int(involved.sum()),
        dual_activity_filtered=require_dual_activity,
        eligibility=eligibility,
        shared_counts=table.shared_counts,
        closed_mask=closed,
        involved_mask=involved,
        warnings=_coverage_warnings(corpus, window),
        _loader=load,
    )


# -- public operations ---------------------------------------------------------


def open_pairs(
    preceding: Corpus,
    active_filter: Iterable[str] | None = None,
    eligibility: str = "strict",
) -> list[PairObservation]:
    """Pairs joined by a 4-path in ``preceding`` that have not yet closed.

    ``strict`` drops pairs that share any paper in the window; ``literal``
    drops only pairs that sit in a closed 4-path. Each pair appears once,
    however many 4-paths join it.
    """
    _check_mode(eligibility)
    arrays = preceding.arrays
    active = None
    if active_filter is not None:
        wanted = set(active_filter)
        active = np.fromiter((a in wanted for a in arrays.authors), dtype=np.uint8, count=arrays.n_authors)
    table = open_pair_table(arrays, 0, arrays.n_papers, active, eligibility == "strict")
    names = arrays.authors
    ptr = table.mid_ptr.tolist()
    mids = table.mids.tolist()
    return [
        PairObservation(
            pair=(names[y], names[z]),
            middle_authors=frozenset(names[m] for m in mids[ptr[i] : ptr[i + 1]]),
        )
        for i, (y, z) in enumerate(zip(table.ys.tolist(), table.zs.tolist()))
    ]


def tcc(
    corpus: Corpus,
    window: WindowSpec,
    require_dual_activity: bool = True,
    eligibility: str = "strict",
) -> TccReport:
    """Share of open preceding-window pairs that publish together in the target year."""
    return tcc_arrays(corpus, window, require_dual_activity, eligibility)


def window_sweep(
    corpus: Corpus,
    target_year: int,
    lengths: Iterable[int],
    require_dual_activity: bool = True,
    eligibility: str = "strict",
) -> list[TccReport]:
    lengths = list(lengths)
    if not lengths:
        raise CorpusError("lengths must be non-empty")
    return [
        tcc(corpus, WindowSpec(target_year, n), require_dual_activity, eligibility)
        for n in lengths
    ]


def involvement_ratio(report: TccReport) -> Fraction | None:
    """Fraction of closed pairs where a shared middle author is on a closing paper."""
    if report.closed_pairs == 0:
        return None
    return Fraction(report.involved_pairs, report.closed_pairs)


def closure_by_shared_count(report: TccReport) -> dict[int, tuple[int, int, Fraction]]:
    """Bucket pairs by number of shared collaborators: n -> (eligible, closed, ratio)."""
    out: dict[int, tuple[int, int, Fraction]] = {}
    counts = np.asarray(report.shared_counts, dtype=np.int64)
    closed = np.asarray(report.closed_mask, dtype=bool)
    for n in np.unique(counts).tolist():
        sel = counts == n
        eligible = int(sel.sum())
        k = int(closed[sel].sum())
        out[n] = (eligible, k, Fraction(k, eligible))
    return out


def overlap_ratios(corpus: Corpus, window: WindowSpec) -> tuple[Fraction | None, Fraction | None]:
    """(|T & P| / |T|, |T & P| / |P|) for authors active in target year T and preceding window P."""
    arrays = corpus.arrays
    tlo, thi = arrays.year_range(window.target_year, window.target_year)
    plo, phi = arrays.year_range(window.preceding_start, window.preceding_end)
    return overlap_from_masks(arrays.active_mask(tlo, thi), arrays.active_mask(plo, phi))


def overlap_from_masks(target: np.ndarray, preceding: np.ndarray):
    n_t = int(target.sum())
    n_p = int(preceding.sum())
    both = int((target & preceding).sum())
    return (
        Fraction(both, n_t) if n_t else None,
        Fraction(both, n_p) if n_p else None,
    )
