import json
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from triadic import oracle
from triadic.corpus import Corpus, PaperRecord, WindowSpec, slice_window
from triadic.temporal_metrics import (
    PairObservation,
    closure_by_shared_count,
    involvement_ratio,
    open_pairs,
    overlap_ratios,
    tcc,
    window_sweep,
)

from conftest import corpus_of, random_corpus

pytestmark = pytest.mark.usefixtures("backend")

W2009 = WindowSpec(2009, 5)


def rename(corpus: Corpus, prefix: str) -> Corpus:
    return Corpus(
        PaperRecord(prefix + p.paper_id, p.year, frozenset(prefix + a for a in p.authors))
        for p in corpus
    )


class TestOpenPairs:
    def test_table5_case2_one_pair(self, table5_case2):
        obs = open_pairs(table5_case2)
        assert obs == [PairObservation(("Y", "Z"), frozenset({"W", "X"}))]
        assert obs[0].closed is None and obs[0].involvement is None

    def test_table6_preceding(self, table6):
        obs = open_pairs(slice_window(table6, 2004, 2008))
        assert [(o.pair, o.middle_authors) for o in obs] == [
            (("W", "X"), {"Z"}),
            (("Y", "Z"), {"X"}),
        ]

    def test_already_coauthors_excluded(self, table3_case1):
        assert open_pairs(table3_case1) == []
        assert open_pairs(table3_case1, eligibility="literal") == []
        paths = [fp for fp, closed in oracle.brute_four_paths(table3_case1) if fp.endpoints == {"Y", "Z"}]
        assert paths and all(closed for fp, closed in oracle.brute_four_paths(table3_case1))

    def test_strict_and_literal_differ(self):
        # Y and Z share only A, which is itself on the path Y-A-X-B-Z
        c = corpus_of(("A", 2000, "XYZ"), ("B", 2000, "XZ"))
        assert ("Y", "Z") not in [o.pair for o in open_pairs(c)]
        assert ("Y", "Z") in [o.pair for o in open_pairs(c, eligibility="literal")]

    def test_active_filter(self, table6):
        obs = open_pairs(slice_window(table6, 2004, 2008), active_filter={"Y", "Z"})
        assert [o.pair for o in obs] == [("Y", "Z")]


class TestTcc:
    def test_table6_without_dual_activity(self, table6):
        r = tcc(table6, W2009, require_dual_activity=False)
        assert (r.closed_pairs, r.eligible_pairs) == (1, 2)
        assert r.ratio == Fraction(1, 2)

    def test_table6_with_dual_activity(self, table6):
        r = tcc(table6, W2009, require_dual_activity=True)
        assert r.ratio == 1
        assert [o.pair for o in r.observations] == [("Y", "Z")]

    def test_nothing_closes(self):
        c = corpus_of(("A", 2005, "XY"), ("B", 2006, "XZ"))
        r = tcc(c, W2009, require_dual_activity=False)
        assert (r.closed_pairs, r.eligible_pairs) == (0, 1)
        assert r.ratio == 0
        assert r.warnings  # target year lies beyond the corpus

    def test_empty_preceding(self):
        r = tcc(corpus_of(("E", 2009, "YZ")), W2009)
        assert not r.defined and r.to_dict()["ratio"] is None

    def test_closing_papers_recorded(self, table6):
        (obs,) = [o for o in tcc(table6, W2009, False).observations if o.closed]
        assert obs.closing_papers == {"E"}

    def test_invariants(self):
        for seed in range(40):
            c = random_corpus(random.Random(seed), max_papers=12, years=(2, 4))
            for dual in (True, False):
                for mode in ("strict", "literal"):
                    r = tcc(c, WindowSpec(2003, 3), dual, mode)
                    assert r.closed_pairs <= r.eligible_pairs
                    for o in r.observations:
                        assert o.middle_authors
                        assert bool(o.closing_papers) == o.closed
                        assert o.closed or not o.involvement

    @settings(max_examples=80, deadline=None)
    @given(seed=st.integers(0, 10**6), mode=st.sampled_from(["strict", "literal"]))
    def test_dual_activity_shrinks_denominator(self, seed, mode):
        c = random_corpus(random.Random(seed), years=(2, 3))
        w = WindowSpec(2002, 2)
        assert tcc(c, w, True, mode).eligible_pairs <= tcc(c, w, False, mode).eligible_pairs

    def test_extra_four_path_leaves_report_unchanged(self, table5_case2):
        base = [(p.paper_id, 2005, "".join(sorted(p.authors))) for p in table5_case2]
        before = corpus_of(*base, ("T", 2009, "YZ"))
        # another route Y-D-V-E-Z between the same pair
        after = corpus_of(*base, ("D", 2006, "VY"), ("E", 2007, "VZ"), ("T", 2009, "YZ"))
        r0, r1 = tcc(before, W2009, True), tcc(after, W2009, True)
        assert (r0.eligible_pairs, r0.closed_pairs) == (r1.eligible_pairs, r1.closed_pairs) == (1, 1)

    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 10**6))
    def test_window_growth(self, seed):
        c = random_corpus(random.Random(seed), max_papers=10, years=(3, 5))
        target = 2005
        for n in range(1, 5):
            short = {o.pair for o in tcc(c, WindowSpec(target, n), False, "literal").observations}
            long_ = tcc(c, WindowSpec(target, n + 1), False, "literal")
            assert short <= {o.pair for o in long_.observations} | _closed_in(c, target, n + 1)
            strict_short = {o.pair for o in tcc(c, WindowSpec(target, n), False).observations}
            strict_long = {o.pair for o in tcc(c, WindowSpec(target, n + 1), False).observations}
            for pair in strict_short - strict_long:
                y, z = pair
                assert any(
                    y in p.authors and z in p.authors
                    for p in slice_window(c, target - n - 1, target - 1)
                )

    def test_ratios_rederive_from_observations(self, table6):
        r = tcc(table6, W2009, False)
        rows = [json.loads(json.dumps(o.to_dict())) for o in r.observations]
        closed = sum(1 for row in rows if row["closed"])
        assert Fraction(closed, len(rows)) == r.ratio
        assert r.to_dict()["ratio"] == "1/2"


def _closed_in(corpus, target, n):
    """Pairs that sit in a closed 4-path in the preceding ``n`` years (literal mode)."""
    pre = slice_window(corpus, target - n, target - 1)
    return {tuple(sorted(fp.endpoints)) for fp, closed in oracle.brute_four_paths(pre) if closed}


class TestSweep:
    def test_four_path_three_years_back(self):
        c = corpus_of(("A", 2006, "XY"), ("B", 2006, "XZ"), ("C", 2009, "YZ"))
        reports = window_sweep(c, 2009, [1, 2, 3, 4, 5], require_dual_activity=False)
        expected = {}
        for n in range(1, 6):
            pre = slice_window(c, 2009 - n, 2008)
            expected[n] = len(open_pairs(pre))
        assert expected == {1: 0, 2: 0, 3: 1, 4: 1, 5: 1}
        assert [r.eligible_pairs for r in reports] == [expected[n] for n in range(1, 6)]

    def test_singleton_equals_tcc(self, table6):
        (r,) = window_sweep(table6, 2009, [5])
        assert r == tcc(table6, W2009)

    def test_nothing_before_target(self):
        c = corpus_of(("A", 2009, "XY"), ("B", 2009, "XZ"))
        assert all(not r.defined for r in window_sweep(c, 2009, [1, 2, 3]))


class TestInvolvement:
    def test_case1_not_involved(self, table8_case1):
        assert involvement_ratio(tcc(table8_case1, W2009)) == 0

    def test_case2_involved(self, table8_case2):
        assert involvement_ratio(tcc(table8_case2, W2009)) == 1

    def test_mixed(self, table8_case1, table8_case2):
        both = Corpus(rename(table8_case1, "1").papers + rename(table8_case2, "2").papers)
        assert involvement_ratio(tcc(both, W2009)) == Fraction(1, 2)

    def test_undefined_without_closure(self):
        c = corpus_of(("A", 2005, "XY"), ("B", 2006, "XZ"), ("C", 2009, "XW"))
        assert involvement_ratio(tcc(c, W2009, False)) is None


class TestSharedCurve:
    def test_table6(self, table6):
        assert closure_by_shared_count(tcc(table6, W2009, False)) == {1: (2, 1, Fraction(1, 2))}

    def test_table5_two_middles(self, table5_case2):
        c = Corpus(
            [PaperRecord(p.paper_id, 2005, p.authors) for p in table5_case2]
            + [PaperRecord("T", 2009, frozenset("YZ"))]
        )
        assert closure_by_shared_count(tcc(c, W2009, False)) == {2: (1, 1, Fraction(1))}

    def test_empty(self):
        assert closure_by_shared_count(tcc(Corpus(), W2009)) == {}

    @settings(max_examples=60, deadline=None)
    @given(seed=st.integers(0, 10**6), dual=st.booleans())
    def test_buckets_sum_to_report(self, seed, dual):
        c = random_corpus(random.Random(seed), max_papers=12, years=(2, 4))
        r = tcc(c, WindowSpec(2003, 3), dual)
        buckets = closure_by_shared_count(r)
        assert sum(e for e, _, _ in buckets.values()) == r.eligible_pairs
        assert sum(k for _, k, _ in buckets.values()) == r.closed_pairs
        assert all(e > 0 for e, _, _ in buckets.values())


class TestOverlap:
    def test_table6(self, table6):
        authors_t = {"Y", "Z"}
        authors_p = {"W", "X", "Y", "Z"}
        expected = (
            Fraction(len(authors_t & authors_p), len(authors_t)),
            Fraction(len(authors_t & authors_p), len(authors_p)),
        )
        assert expected == (1, Fraction(1, 2))
        assert overlap_ratios(table6, W2009) == expected

    def test_disjoint(self):
        c = corpus_of(("A", 2005, "XY"), ("B", 2009, "ZW"))
        assert overlap_ratios(c, W2009) == (0, 0)

    def test_identical(self):
        c = corpus_of(("A", 2005, "XY"), ("B", 2009, "XY"))
        assert overlap_ratios(c, W2009) == (1, 1)

    def test_undefined_sides(self):
        assert overlap_ratios(Corpus(), W2009) == (None, None)
