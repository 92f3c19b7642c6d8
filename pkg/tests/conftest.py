import random

import pytest

from triadic import kernels
from triadic.corpus import Corpus, PaperRecord


def corpus_of(*papers) -> Corpus:
    """``corpus_of(("A", 2004, "XY"), ...)``; single-letter author names."""
    return Corpus(PaperRecord(pid, year, frozenset(authors)) for pid, year, authors in papers)


@pytest.fixture
def table6():
    # E is the target-year paper; A-D sit in the preceding five years
    return corpus_of(
        ("A", 2004, "XY"),
        ("B", 2005, "XY"),
        ("C", 2006, "XZ"),
        ("D", 2008, "WZ"),
        ("E", 2009, "YZ"),
    )


@pytest.fixture
def table3_case1():
    return corpus_of(("A", 2000, "XY"), ("B", 2000, "XZ"), ("C", 2000, "YZ"))


@pytest.fixture
def single_paper():
    return corpus_of(("D", 2000, "XYZ"))


@pytest.fixture
def table5_case2():
    return corpus_of(("A", 2000, "WXY"), ("B", 2000, "WXZ"), ("C", 2000, "XY"))


@pytest.fixture
def table8_case1():
    return corpus_of(("A", 2004, "XY"), ("B", 2005, "XZ"), ("C", 2009, "YZ"))


@pytest.fixture
def table8_case2():
    return corpus_of(("A", 2004, "XY"), ("B", 2005, "XZ"), ("D", 2009, "XYZ"))


def random_corpus(
    rng: random.Random,
    max_papers: int = 8,
    max_authors: int = 10,
    sizes: tuple[int, int] = (2, 4),
    years: tuple[int, int] = (1, 3),
    base_year: int = 2000,
) -> Corpus:
    n_authors = rng.randint(2, max_authors)
    names = [f"a{i}" for i in range(n_authors)]
    n_years = rng.randint(*years)
    papers = []
    for i in range(rng.randint(1, max_papers)):
        k = min(rng.randint(*sizes), n_authors)
        papers.append(
            PaperRecord(f"p{i}", base_year + rng.randrange(n_years), frozenset(rng.sample(names, k)))
        )
    return Corpus(papers)


@pytest.fixture(params=kernels.available(), scope="module")
def backend(request):
    previous = kernels.use(request.param)
    yield request.param
    kernels.active = previous
