import random
from fractions import Fraction

import pytest

from triadic.corpus import Corpus, CorpusError, PaperRecord, WindowSpec, serialize_corpus, slice_window
from triadic.experiments import (
    PlantedClosure,
    SynthConfig,
    generate_synthetic,
    run_timeseries,
    timeseries_header,
)
from triadic.projection import project_one_mode
from triadic.static_metrics import ncc, occ
from triadic.temporal_metrics import tcc

from conftest import corpus_of, random_corpus


@pytest.fixture
def table6_dated():
    return corpus_of(
        ("A", 2004, "XY"),
        ("B", 2005, "XY"),
        ("C", 2006, "XZ"),
        ("D", 2008, "WZ"),
        ("E", 2009, "YZ"),
    )


class TestTimeseries:
    def test_table6_row(self, table6_dated):
        (row,) = run_timeseries(table6_dated, 2009, 2009, require_dual_activity=False)
        recent = slice_window(table6_dated, 2005, 2009)
        assert row.ncc == ncc(project_one_mode(recent)).ratio
        assert row.occ == occ(recent).ratio
        assert row.tcc_by_window[5] == Fraction(1, 2)
        assert row.overlap_target == 1 and row.overlap_preceding == Fraction(1, 2)
        assert row.involvement == 0

    def test_empty_corpus(self):
        rows = run_timeseries(Corpus(), 2000, 2002)
        assert len(rows) == 3
        assert all(v is None for r in rows for v in r.ratios())

    def test_single_year(self):
        c = corpus_of(("A", 2005, "XY"), ("B", 2005, "XZ"), ("C", 2005, "YZ"))
        (row,) = run_timeseries(c, 2005, 2005)
        assert row.ncc == 1 and row.occ == 1
        assert all(v is None for v in row.tcc_by_window.values())
        assert row.partial_window

    @pytest.mark.parametrize("seed", range(8))
    def test_windowing_is_local(self, seed):
        c = random_corpus(random.Random(seed), max_papers=25, max_authors=12, years=(6, 8))
        full = {r.year: r for r in run_timeseries(c, 2002, 2007, window_len=3, sweep_lengths=(1, 2, 3))}
        for year, row in full.items():
            local = slice_window(c, year - 3, year)
            (again,) = run_timeseries(local, year, year, window_len=3, sweep_lengths=(1, 2, 3))
            assert again.ratios() == row.ratios()

    def test_threads_do_not_change_rows(self):
        c = generate_synthetic(SynthConfig(years=8, papers_per_year=60, seed=3, closure_prob=0.3))
        one = run_timeseries(c, 1995, 2002, threads=1)
        many = run_timeseries(c, 1995, 2002, threads=4)
        assert [r.to_dict() for r in one] == [r.to_dict() for r in many]

    def test_matches_direct_tcc(self):
        c = random_corpus(random.Random(4), max_papers=25, years=(5, 6))
        for row in run_timeseries(c, 2003, 2005, require_dual_activity=False, eligibility="literal"):
            for n, value in row.tcc_by_window.items():
                assert value == tcc(c, WindowSpec(row.year, n), False, "literal").ratio

    def test_bad_range(self):
        with pytest.raises(CorpusError):
            run_timeseries(Corpus(), 2005, 2004)

    def test_header(self):
        assert timeseries_header([1, 2, 3, 4, 5]) == [
            "year", "ncc", "occ", "tcc_w1", "tcc_w2", "tcc_w3", "tcc_w4", "tcc_w5",
            "overlap_target", "overlap_preceding", "involvement",
        ]


class TestSynthetic:
    def test_deterministic(self):
        cfg = SynthConfig(years=5, papers_per_year=40, seed=9, closure_prob=0.2, repeat_collab_prob=0.2)
        a, b = generate_synthetic(cfg), generate_synthetic(cfg)
        assert a == b
        assert serialize_corpus(a) == serialize_corpus(b)

    def test_seed_matters(self):
        cfg = dict(years=3, papers_per_year=30)
        assert generate_synthetic(SynthConfig(seed=1, **cfg)) != generate_synthetic(SynthConfig(seed=2, **cfg))

    def test_shape(self):
        cfg = SynthConfig(years=4, papers_per_year=25, authors_per_paper={2: 1, 4: 1}, start_year=2000)
        c = generate_synthetic(cfg)
        assert len(c) == 100
        assert {p.year for p in c} == {2000, 2001, 2002, 2003}
        assert {p.n_authors for p in c} <= {2, 4}

    def test_no_closure_mechanism(self):
        cfg = SynthConfig(years=10, papers_per_year=200, authors_per_paper=2,
                          initial_pool=20000, author_pool_growth=2000, seed=4)
        rows = run_timeseries(generate_synthetic(cfg), 2000, 2004, require_dual_activity=False)
        values = [float(v) for r in rows for v in r.tcc_by_window.values() if v is not None]
        print("max TCC without planted closure:", max(values, default=0.0))
        assert max(values, default=0.0) < 0.01

    def test_planted_log_is_open_pair(self):
        planted: list[PlantedClosure] = []
        cfg = SynthConfig(years=6, papers_per_year=80, closure_prob=0.5, seed=2)
        c = generate_synthetic(cfg, planted)
        assert planted
        by_id = {p.paper_id: p for p in c}
        for entry in planted:
            paper = by_id[entry.paper_id]
            y, z = entry.pair
            assert {y, z} <= paper.authors
            earlier = [p for p in c if p.year < entry.year]
            assert not any({y, z} <= p.authors for p in earlier)
            assert any({y, entry.middle} <= p.authors for p in earlier)
            assert any({z, entry.middle} <= p.authors for p in earlier)

    def test_closure_prob_raises_tcc(self):
        higher = 0
        for seed in range(10):
            means = []
            for prob in (0.5, 0.05):
                cfg = SynthConfig(years=8, papers_per_year=120, initial_pool=400,
                                  author_pool_growth=50, closure_prob=prob, seed=seed)
                rows = run_timeseries(generate_synthetic(cfg), 1999, 2002, require_dual_activity=False)
                vals = [float(r.tcc_by_window[5]) for r in rows if r.tcc_by_window[5] is not None]
                means.append(sum(vals) / len(vals))
            print(f"seed {seed}: TCC {means[0]:.4f} (p=0.5) vs {means[1]:.4f} (p=0.05)")
            higher += means[0] > means[1]
        assert higher == 10

    @pytest.mark.parametrize(
        "kwargs",
        [
            dict(closure_prob=1.5),
            dict(repeat_collab_prob=-0.1),
            dict(authors_per_paper=500, initial_pool=100),
            dict(years=0),
        ],
    )
    def test_invalid(self, kwargs):
        with pytest.raises(CorpusError):
            SynthConfig(**kwargs)


def test_paper_records_unique_ids():
    c = generate_synthetic(SynthConfig(years=2, papers_per_year=10))
    assert len({p.paper_id for p in c}) == len(c)
    assert all(isinstance(p, PaperRecord) for p in c)
