"""Brute-force reference counts, written directly from the definitions.

Nothing here touches the integer encoding or the kernels; inputs are capped
because enumeration is exponential in practice.
"""

from __future__ import annotations

from itertools import combinations, permutations

from .corpus import Corpus, CorpusError, PaperRecord, WindowSpec
from .projection import OneModeGraph
from .static_metrics import FourPath, MetricReport
from .temporal_metrics import ELIGIBILITY_MODES, PairObservation, TccReport

MAX_NODES = 64
MAX_PAPERS = 32


class OracleCapExceeded(CorpusError):
    pass


def _check_papers(papers, cap: int) -> None:
    if len(papers) > cap:
        raise OracleCapExceeded(f"oracle refuses {len(papers)} papers (cap {cap})")


def brute_two_paths(g: OneModeGraph, cap: int = MAX_NODES) -> tuple[int, int]:
    """(centred triples u-c-v, how many have u-v adjacent)."""
    if len(g.nodes) > cap:
        raise OracleCapExceeded(f"oracle refuses {len(g.nodes)} nodes (cap {cap})")
    adj = {v: set(nbrs) for v, nbrs in g.adjacency.items()}
    total = closed = 0
    for center, nbrs in adj.items():
        for u, v in combinations(sorted(nbrs), 2):
            total += 1
            if v in adj[u]:
                closed += 1
    return total, closed


def brute_projection(corpus: Corpus) -> OneModeGraph:
    edges = set()
    for p in corpus.papers:
        for u in p.authors:
            for v in p.authors:
                if u < v:
                    edges.add((u, v))
    nodes = {a for p in corpus.papers for a in p.authors}
    return OneModeGraph.from_edges(sorted(edges), nodes)


def brute_ncc(corpus: Corpus, cap: int = MAX_NODES) -> MetricReport:
    total, closed = brute_two_paths(brute_projection(corpus), cap)
    return MetricReport("NCC", closed, total)


def _enumerate_four_paths(papers: list[PaperRecord]) -> dict[FourPath, bool]:
    found: dict[FourPath, bool] = {}
    for a, b in permutations(papers, 2):
        for x in a.authors & b.authors:
            for y in a.authors:
                for z in b.authors:
                    if len({x, y, z}) < 3:
                        continue
                    fp = FourPath.of(y, a.paper_id, x, b.paper_id, z)
                    if fp in found:
                        continue
                    found[fp] = any(
                        c is not a and c is not b and y in c.authors and z in c.authors
                        for c in papers
                    )
    return found


def brute_four_paths(corpus: Corpus, cap: int = MAX_PAPERS) -> list[tuple[FourPath, bool]]:
    """Every distinct 4-path with its closed flag, sorted by path spelling."""
    _check_papers(corpus.papers, cap)
    found = _enumerate_four_paths(list(corpus.papers))
    return sorted(found.items(), key=lambda item: item[0].path)


def brute_occ(corpus: Corpus, cap: int = MAX_PAPERS) -> MetricReport:
    paths = brute_four_paths(corpus, cap)
    return MetricReport("OCC", sum(closed for _, closed in paths), len(paths))


def brute_tcc(
    corpus: Corpus,
    window: WindowSpec,
    require_dual_activity: bool = True,
    eligibility: str = "strict",
    cap: int = MAX_PAPERS,
) -> TccReport:
    if eligibility not in ELIGIBILITY_MODES:
        raise CorpusError(f"unknown eligibility {eligibility!r}")
    _check_papers(corpus.papers, cap)
    preceding = [
        p for p in corpus.papers if window.preceding_start <= p.year <= window.preceding_end
    ]
    target = [p for p in corpus.papers if p.year == window.target_year]
    in_target = {a for p in target for a in p.authors}
    in_preceding = {a for p in preceding for a in p.authors}

    by_pair: dict[tuple[str, str], list[tuple[FourPath, bool]]] = {}
    for fp, closed in _enumerate_four_paths(preceding).items():
        y, z = sorted(fp.endpoints)
        by_pair.setdefault((y, z), []).append((fp, closed))

    observations = []
    for (y, z), paths in sorted(by_pair.items()):
        if require_dual_activity and not (
            y in in_target and z in in_target and y in in_preceding and z in in_preceding
        ):
            continue
        if eligibility == "strict":
            if any(y in p.authors and z in p.authors for p in preceding):
                continue
        elif any(closed for _, closed in paths):
            continue
        middles = frozenset(fp.middle for fp, _ in paths)
        closing = [p for p in target if y in p.authors and z in p.authors]
        observations.append(
            PairObservation(
                pair=(y, z),
                middle_authors=middles,
                closed=bool(closing),
                closing_papers=frozenset(p.paper_id for p in closing),
                involvement=any(middles & p.authors for p in closing),
            )
        )

    span = (min(p.year for p in corpus.papers), max(p.year for p in corpus.papers)) if corpus.papers else None
    if span is None:
        warnings: tuple[str, ...] = ("corpus is empty",)
    elif window.preceding_start < span[0] or window.target_year > span[1]:
        warnings = (
            f"window {window.preceding_start}..{window.target_year} extends beyond "
            f"corpus years {span[0]}..{span[1]}",
        )
    else:
        warnings = ()
    return TccReport.from_observations(
        window,
        observations,
        dual_activity_filtered=require_dual_activity,
        eligibility=eligibility,
        warnings=warnings,
    )
