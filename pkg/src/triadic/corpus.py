"""Author-paper records: parsing, validation, filtering and time slicing."""

from __future__ import annotations

import io
import json
import logging
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from types import MappingProxyType
from typing import IO, Iterable, Mapping

import numpy as np

log = logging.getLogger(__name__)

FORMATS = ("jsonl", "tsv")


class CorpusError(ValueError):
    """Raised for malformed input or invalid corpus configuration."""


@dataclass(frozen=True)
class PaperRecord:
    paper_id: str
    year: int
    authors: frozenset[str]

    def __post_init__(self) -> None:
        if not isinstance(self.authors, frozenset):
            object.__setattr__(self, "authors", frozenset(self.authors))

    @property
    def n_authors(self) -> int:
        return len(self.authors)


@dataclass(frozen=True)
class FilterConfig:
    """Corpus filter.

    ``max_authors`` is an explicit byline cap; ``percentile`` instead derives
    the cap from the authors-per-paper distribution. At most one may be set.
    """

    min_year: int | None = None
    max_year: int | None = None
    max_authors: int | None = None
    percentile: float | None = None
    drop_single_authored: bool = True
    percentile_before_single_drop: bool = False

    def __post_init__(self) -> None:
        if (
            self.min_year is not None
            and self.max_year is not None
            and self.min_year > self.max_year
        ):
            raise CorpusError(f"min_year {self.min_year} > max_year {self.max_year}")
        if self.max_authors is not None and self.percentile is not None:
            raise CorpusError("give either max_authors or percentile, not both")
        if self.max_authors is not None and self.max_authors < 2:
            raise CorpusError(f"max_authors must be >= 2, got {self.max_authors}")
        if self.percentile is not None and not 0 < self.percentile <= 1:
            raise CorpusError(f"percentile must lie in (0, 1], got {self.percentile}")


@dataclass(frozen=True)
class FilterReport:
    papers_in: int
    dropped_year: int = 0
    dropped_single_authored: int = 0
    dropped_max_authors: int = 0
    cap: int | None = None

    @property
    def papers_out(self) -> int:
        return (
            self.papers_in
            - self.dropped_year
            - self.dropped_single_authored
            - self.dropped_max_authors
        )

    def to_dict(self) -> dict:
        return {
            "papers_in": self.papers_in,
            "papers_out": self.papers_out,
            "dropped_year": self.dropped_year,
            "dropped_single_authored": self.dropped_single_authored,
            "dropped_max_authors": self.dropped_max_authors,
            "cap": self.cap,
        }


@dataclass(frozen=True)
class WindowSpec:
    """A target year and the ``preceding_len`` years right before it."""

    target_year: int
    preceding_len: int = 5

    def __post_init__(self) -> None:
        if self.preceding_len < 1:
            raise CorpusError(f"preceding_len must be >= 1, got {self.preceding_len}")

    @property
    def preceding_start(self) -> int:
        return self.target_year - self.preceding_len

    @property
    def preceding_end(self) -> int:
        return self.target_year - 1

    def to_dict(self) -> dict:
        return {
            "target_year": self.target_year,
            "preceding_len": self.preceding_len,
            "preceding": [self.preceding_start, self.preceding_end],
        }


@dataclass(frozen=True, eq=False)
class CorpusArrays:
    """Integer CSR encoding of a corpus used by the counting kernels.

    Authors are numbered in sorted identifier order. Papers are renumbered in
    (year, input order) order so a year interval is a contiguous paper range.
    Both incidence directions are sorted ascending.
    """

    authors: tuple[str, ...]
    paper_rows: np.ndarray
    years: np.ndarray
    paper_ptr: np.ndarray
    paper_authors: np.ndarray
    author_ptr: np.ndarray
    author_papers: np.ndarray

    @property
    def n_authors(self) -> int:
        return len(self.authors)

    @property
    def n_papers(self) -> int:
        return len(self.years)

    def year_range(self, from_year: int, to_year: int) -> tuple[int, int]:
        lo = int(np.searchsorted(self.years, from_year, side="left"))
        hi = int(np.searchsorted(self.years, to_year, side="right"))
        return lo, max(lo, hi)

    def active_mask(self, lo: int, hi: int) -> np.ndarray:
        mask = np.zeros(self.n_authors, dtype=np.uint8)
        mask[self.paper_authors[self.paper_ptr[lo] : self.paper_ptr[hi]]] = 1
        return mask


def _encode(papers: tuple[PaperRecord, ...]) -> CorpusArrays:
    authors = tuple(sorted({a for p in papers for a in p.authors}))
    author_no = {a: i for i, a in enumerate(authors)}
    years_in = np.fromiter((p.year for p in papers), dtype=np.int64, count=len(papers))
    rows = np.argsort(years_in, kind="stable")
    sizes = np.fromiter(
        (len(papers[r].authors) for r in rows), dtype=np.int64, count=len(papers)
    )
    paper_ptr = np.zeros(len(papers) + 1, dtype=np.int64)
    np.cumsum(sizes, out=paper_ptr[1:])
    flat = np.empty(int(paper_ptr[-1]), dtype=np.int32)
    for k, r in enumerate(rows.tolist()):
        ids = sorted(author_no[a] for a in papers[r].authors)
        flat[paper_ptr[k] : paper_ptr[k + 1]] = ids
    owner = np.repeat(np.arange(len(papers), dtype=np.int32), sizes)
    # incidences sorted by (author, paper): stable sort on author keeps papers ascending
    order = np.argsort(flat, kind="stable")
    author_papers = owner[order]
    counts = np.bincount(flat, minlength=len(authors)) if len(authors) else np.zeros(0, np.int64)
    author_ptr = np.zeros(len(authors) + 1, dtype=np.int64)
    np.cumsum(counts, out=author_ptr[1:])
    return CorpusArrays(
        authors=authors,
        paper_rows=rows,
        years=years_in[rows],
        paper_ptr=paper_ptr,
        paper_authors=flat,
        author_ptr=author_ptr,
        author_papers=author_papers.astype(np.int32),
    )


class Corpus:
    """Immutable, indexed collection of :class:`PaperRecord`."""

    def __init__(
        self,
        papers: Iterable[PaperRecord] = (),
        *,
        duplicate_authors: int = 0,
        filter_report: FilterReport | None = None,
    ) -> None:
        papers = tuple(papers)
        seen: dict[str, int] = {}
        for i, p in enumerate(papers):
            if p.paper_id in seen:
                raise CorpusError(
                    f"duplicate paper_id {p.paper_id!r} at records {seen[p.paper_id] + 1} and {i + 1}"
                )
            seen[p.paper_id] = i
        self._papers = papers
        self.duplicate_authors = duplicate_authors
        self.filter_report = filter_report

    @property
    def papers(self) -> tuple[PaperRecord, ...]:
        return self._papers

    def __len__(self) -> int:
        return len(self._papers)

    def __iter__(self):
        return iter(self._papers)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Corpus):
            return NotImplemented
        return self._papers == other._papers

    def __hash__(self) -> int:
        return hash(self._papers)

    def __repr__(self) -> str:
        return f"Corpus({len(self._papers)} papers, {len(self.author_index)} authors)"

    @cached_property
    def author_index(self) -> Mapping[str, tuple[PaperRecord, ...]]:
        index: dict[str, list[PaperRecord]] = {}
        for p in sorted(self._papers, key=lambda p: p.year):
            for a in p.authors:
                index.setdefault(a, []).append(p)
        return MappingProxyType({a: tuple(ps) for a, ps in index.items()})

    @cached_property
    def year_index(self) -> Mapping[int, tuple[PaperRecord, ...]]:
        index: dict[int, list[PaperRecord]] = {}
        for p in self._papers:
            index.setdefault(p.year, []).append(p)
        return MappingProxyType({y: tuple(index[y]) for y in sorted(index)})

    @cached_property
    def arrays(self) -> CorpusArrays:
        return _encode(self._papers)

    @property
    def authors(self) -> frozenset[str]:
        return frozenset(self.author_index)

    @property
    def year_span(self) -> tuple[int, int] | None:
        if not self._papers:
            return None
        return min(self.year_index), max(self.year_index)

    def authors_per_paper(self) -> dict[int, int]:
        return dict(sorted(Counter(p.n_authors for p in self._papers).items()))

    def stats(self) -> dict:
        span = self.year_span
        return {
            "papers": len(self._papers),
            "authors": len(self.author_index),
            "years": list(span) if span else None,
            "duplicate_author_warnings": self.duplicate_authors,
            "authors_per_paper": {str(k): v for k, v in self.authors_per_paper().items()},
        }


# -- parsing -----------------------------------------------------------------


def _lines(source) -> Iterable[tuple[int, str]]:
    if isinstance(source, (bytes, bytearray)):
        source = io.BytesIO(source)
    if isinstance(source, str):
        source = io.StringIO(source)
    for lineno, raw in enumerate(source, start=1):
        if isinstance(raw, (bytes, bytearray)):
            try:
                raw = raw.decode("utf-8")
            except UnicodeDecodeError as exc:
                raise CorpusError(f"line {lineno}: not valid UTF-8 ({exc})") from None
        yield lineno, raw.rstrip("\r\n")


def _parse_jsonl(lineno: int, line: str) -> tuple[str, int, list]:
    try:
        obj = json.loads(line)
    except json.JSONDecodeError as exc:
        raise CorpusError(f"line {lineno}: invalid JSON ({exc.msg})") from None
    if not isinstance(obj, dict):
        raise CorpusError(f"line {lineno}: expected a JSON object")
    for key in ("paper_id", "year", "authors"):
        if key not in obj:
            raise CorpusError(f"line {lineno}: missing field {key!r}")
    pid, year, authors = obj["paper_id"], obj["year"], obj["authors"]
    if not isinstance(pid, str):
        raise CorpusError(f"line {lineno}: paper_id must be a string")
    if isinstance(year, bool) or not isinstance(year, int):
        raise CorpusError(f"line {lineno}: year is not an integer: {year!r}")
    if not isinstance(authors, list) or not all(isinstance(a, str) for a in authors):
        raise CorpusError(f"line {lineno}: authors must be an array of strings")
    return pid, year, authors


def _parse_tsv(lineno: int, line: str, first: bool) -> tuple[str, int, list] | None:
    parts = line.split("\t")
    if len(parts) != 3:
        raise CorpusError(f"line {lineno}: expected 3 tab-separated fields, got {len(parts)}")
    pid, year_s, authors_s = parts
    try:
        year = int(year_s)
    except ValueError:
        if first:
            return None  # header
        raise CorpusError(f"line {lineno}: year is not an integer: {year_s!r}") from None
    authors = [a for a in authors_s.split(";") if a] if authors_s else []
    return pid, year, authors


def parse_corpus(source: bytes | str | IO, format: str = "jsonl") -> Corpus:
    """Parse JSONL or TSV records into a :class:`Corpus`.

    Blank lines are skipped. Repeated authors within one byline are collapsed
    and counted in ``Corpus.duplicate_authors``.
    """
    if format not in FORMATS:
        raise CorpusError(f"unknown format {format!r}; expected one of {FORMATS}")
    papers: list[PaperRecord] = []
    first_line: dict[str, int] = {}
    duplicates = 0
    first = True
    for lineno, line in _lines(source):
        if not line.strip():
            continue
        if format == "jsonl":
            parsed = _parse_jsonl(lineno, line)
        else:
            parsed = _parse_tsv(lineno, line, first)
        first = False
        if parsed is None:
            continue
        pid, year, authors = parsed
        if pid in first_line:
            raise CorpusError(
                f"duplicate paper_id {pid!r} on lines {first_line[pid]} and {lineno}"
            )
        first_line[pid] = lineno
        unique = frozenset(authors)
        duplicates += len(authors) - len(unique)
        papers.append(PaperRecord(pid, year, unique))
    if duplicates:
        log.warning("collapsed %d duplicate author entries", duplicates)
    return Corpus(papers, duplicate_authors=duplicates)


def read_corpus(path: str, format: str | None = None) -> Corpus:
    if format is None:
        format = "tsv" if path.endswith((".tsv", ".txt")) else "jsonl"
    with open(path, "rb") as fh:
        return parse_corpus(fh, format)


def serialize_corpus(corpus: Corpus, format: str = "jsonl") -> bytes:
    """Inverse of :func:`parse_corpus`; authors are written in sorted order."""
    out = []
    for p in corpus.papers:
        authors = sorted(p.authors)
        if format == "jsonl":
            rec = {"paper_id": p.paper_id, "year": p.year, "authors": authors}
            out.append(json.dumps(rec, ensure_ascii=False))
        elif format == "tsv":
            bad = [a for a in authors if any(c in a for c in "\t\n\r;")]
            if bad or any(c in p.paper_id for c in "\t\n\r"):
                raise CorpusError(f"paper {p.paper_id!r} cannot be written as TSV")
            out.append(f"{p.paper_id}\t{p.year}\t{';'.join(authors)}")
        else:
            raise CorpusError(f"unknown format {format!r}")
    return "".join(line + "\n" for line in out).encode("utf-8")


# -- filtering and slicing ---------------------------------------------------


def percentile_threshold(corpus: Corpus, q: float) -> int:
    """Smallest k such that at least a fraction ``q`` of papers have <= k authors."""
    if not 0 < q <= 1:
        raise CorpusError(f"q must lie in (0, 1], got {q}")
    n = len(corpus)
    if n == 0:
        raise CorpusError("no papers")
    need = Fraction(str(q)) * n
    seen = 0
    for k, count in corpus.authors_per_paper().items():
        seen += count
        if seen >= need:
            return k
    raise AssertionError("unreachable: cumulative count reaches n")


def apply_filters(corpus: Corpus, cfg: FilterConfig) -> Corpus:
    """Keep papers in the year range, with >= 2 authors and <= the byline cap.

    A dropped paper is attributed to the first rule it fails, in the order
    year, single-author, cap.
    """
    lo = cfg.min_year if cfg.min_year is not None else -(10**9)
    hi = cfg.max_year if cfg.max_year is not None else 10**9
    in_range = [p for p in corpus.papers if lo <= p.year <= hi]
    multi = [p for p in in_range if p.n_authors >= 2] if cfg.drop_single_authored else in_range

    cap = cfg.max_authors
    if cfg.percentile is not None:
        basis = in_range if cfg.percentile_before_single_drop else multi
        cap = percentile_threshold(Corpus(basis), cfg.percentile) if basis else None
    kept = [p for p in multi if cap is None or p.n_authors <= cap]

    report = FilterReport(
        papers_in=len(corpus),
        dropped_year=len(corpus) - len(in_range),
        dropped_single_authored=len(in_range) - len(multi),
        dropped_max_authors=len(multi) - len(kept),
        cap=cap,
    )
    return Corpus(kept, duplicate_authors=corpus.duplicate_authors, filter_report=report)


def slice_window(corpus: Corpus, from_year: int, to_year: int) -> Corpus:
    if from_year > to_year:
        raise CorpusError(f"inverted year range {from_year}..{to_year}")
    return Corpus(p for p in corpus.papers if from_year <= p.year <= to_year)


def author_activity_set(corpus: Corpus) -> frozenset[str]:
    return frozenset(a for p in corpus.papers for a in p.authors)
