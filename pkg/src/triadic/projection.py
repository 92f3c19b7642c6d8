"""One-mode (author-author) projection of a two-mode corpus."""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from types import MappingProxyType
from typing import Mapping

import numpy as np

from . import kernels
from .corpus import Corpus, CorpusArrays


@dataclass(frozen=True, eq=False)
class OneModeGraph:
    """Simple undirected coauthorship graph stored as CSR over sorted node names.

    ``indices[indptr[i]:indptr[i+1]]`` are the neighbours of ``nodes[i]``,
    ascending. Nodes may have degree zero.
    """

    nodes: tuple[str, ...]
    indptr: np.ndarray
    indices: np.ndarray

    @classmethod
    def from_edges(cls, edges, nodes=()) -> "OneModeGraph":
        adj: dict[str, set[str]] = {v: set() for v in nodes}
        for u, v in edges:
            if u == v:
                continue
            adj.setdefault(u, set()).add(v)
            adj.setdefault(v, set()).add(u)
        names = tuple(sorted(adj))
        no = {v: i for i, v in enumerate(names)}
        indptr = [0]
        indices: list[int] = []
        for v in names:
            indices.extend(sorted(no[w] for w in adj[v]))
            indptr.append(len(indices))
        return cls(names, np.asarray(indptr, np.int64), np.asarray(indices, np.int32))

    @cached_property
    def adjacency(self) -> Mapping[str, tuple[str, ...]]:
        ptr = self.indptr.tolist()
        flat = self.indices.tolist()
        return MappingProxyType(
            {
                v: tuple(self.nodes[w] for w in flat[ptr[i] : ptr[i + 1]])
                for i, v in enumerate(self.nodes)
            }
        )

    def degree(self, node: str) -> int:
        return len(self.adjacency[node])

    @property
    def n_edges(self) -> int:
        return len(self.indices) // 2

    def edges(self) -> list[tuple[str, str]]:
        """Edges as ``(u, v)`` with ``u < v``, lexicographically ordered."""
        return [(u, v) for u, nbrs in self.adjacency.items() for v in nbrs if u < v]

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, OneModeGraph):
            return NotImplemented
        return (
            self.nodes == other.nodes
            and np.array_equal(self.indptr, other.indptr)
            and np.array_equal(self.indices, other.indices)
        )


def project_range(arrays: CorpusArrays, lo: int, hi: int) -> tuple[np.ndarray, np.ndarray]:
    return kernels.active.project(
        arrays.paper_ptr, arrays.paper_authors, arrays.author_ptr, arrays.author_papers, lo, hi
    )


def project_one_mode(corpus: Corpus) -> OneModeGraph:
    """Link two authors iff they share at least one byline; multiplicity is dropped."""
    arrays = corpus.arrays
    indptr, indices = project_range(arrays, 0, arrays.n_papers)
    return OneModeGraph(arrays.authors, indptr, indices)


def format_edge_list(g: OneModeGraph) -> str:
    return "".join(f"{u}\t{v}\n" for u, v in g.edges())
