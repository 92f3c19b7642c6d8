"""Static closure coefficients: NCC on the projection, OCC on the two-mode corpus.

Counts are exact Python integers and ratios exact :class:`~fractions.Fraction`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import kernels
from .corpus import Corpus, CorpusArrays
from .projection import OneModeGraph


def fraction_text(value: Fraction | None) -> str | None:
    if value is None:
        return None
    return f"{value.numerator}/{value.denominator}"


def fraction_decimal(value: Fraction | None) -> float | None:
    return None if value is None else float(value)


@dataclass(frozen=True)
class MetricReport:
    metric_name: str
    numerator: int
    denominator: int

    @property
    def defined(self) -> bool:
        return self.denominator > 0

    @property
    def ratio(self) -> Fraction | None:
        if not self.defined:
            return None
        return Fraction(self.numerator, self.denominator)

    def to_dict(self) -> dict:
        return {
            "metric": self.metric_name,
            "numerator": self.numerator,
            "denominator": self.denominator,
            "ratio": fraction_text(self.ratio),
            "decimal": fraction_decimal(self.ratio),
            "defined": self.defined,
        }


@dataclass(frozen=True)
class FourPath:
    """Author-ended path ``Y - A - X - B - Z``, stored in canonical orientation.

    The path and its reversal are the same object: ``path`` is the
    lexicographically smaller of the two spellings.
    """

    path: tuple[str, str, str, str, str]

    @classmethod
    def of(cls, y: str, a: str, x: str, b: str, z: str) -> "FourPath":
        fwd = (y, a, x, b, z)
        rev = (z, b, x, a, y)
        return cls(min(fwd, rev))

    @property
    def endpoints(self) -> frozenset[str]:
        return frozenset((self.path[0], self.path[4]))

    @property
    def middle(self) -> str:
        return self.path[2]

    @property
    def papers(self) -> frozenset[str]:
        return frozenset((self.path[1], self.path[3]))

    def __str__(self) -> str:
        return "-".join(self.path)


def count_two_paths(g: OneModeGraph) -> int:
    """Sum over nodes of C(deg, 2)."""
    return kernels.active.two_path_counts(g.indptr, g.indices)[0]


def count_closed_two_paths(g: OneModeGraph) -> int:
    """Three times the triangle count."""
    return kernels.active.two_path_counts(g.indptr, g.indices)[1]


def ncc(g: OneModeGraph) -> MetricReport:
    two, closed = kernels.active.two_path_counts(g.indptr, g.indices)
    return MetricReport("NCC", closed, two)


def four_path_range(arrays: CorpusArrays, lo: int, hi: int) -> tuple[int, int]:
    keys, counts = kernels.pair_index(arrays, lo, hi)
    return kernels.active.four_path_counts(
        arrays.paper_ptr,
        arrays.paper_authors,
        arrays.author_ptr,
        arrays.author_papers,
        lo,
        hi,
        keys,
        counts,
    )


def _four_paths(corpus: Corpus) -> tuple[int, int]:
    arrays = corpus.arrays
    return four_path_range(arrays, 0, arrays.n_papers)


def count_four_paths(corpus: Corpus) -> int:
    """Number of distinct author-ended 4-paths.

    For a middle author X and two of X's papers A, B the path count is
    ``(|A|-1)(|B|-1) - |A & B \\ {X}|``; the subtracted term removes Y == Z.
    """
    return _four_paths(corpus)[0]


def count_closed_four_paths(corpus: Corpus) -> int:
    """4-paths whose endpoints share some third paper C not in {A, B}."""
    return _four_paths(corpus)[1]


def occ(corpus: Corpus) -> MetricReport:
    total, closed = _four_paths(corpus)
    return MetricReport("OCC", closed, total)
