"""Time the compiled and pure-Python kernels on one synthetic corpus.

    python benchmarks/bench_backends.py --papers-per-year 300 --years 10
"""

import argparse
import time

from triadic import kernels
from triadic.corpus import WindowSpec
from triadic.experiments import SynthConfig, generate_synthetic, run_timeseries
from triadic.projection import project_one_mode
from triadic.static_metrics import ncc, occ
from triadic.temporal_metrics import tcc


def timed(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        result = fn()
        best = min(best, time.perf_counter() - start)
    return best, result


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--years", type=int, default=10)
    ap.add_argument("--papers-per-year", type=int, default=300)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    cfg = SynthConfig(
        years=args.years,
        papers_per_year=args.papers_per_year,
        authors_per_paper={2: 0.3, 3: 0.4, 4: 0.3},
        initial_pool=max(200, args.papers_per_year),
        author_pool_growth=args.papers_per_year // 3,
        repeat_collab_prob=0.2,
        closure_prob=0.1,
        seed=args.seed,
    )
    corpus = generate_synthetic(cfg)
    corpus.arrays
    last = cfg.start_year + cfg.years - 1
    cases = {
        "ncc": lambda: ncc(project_one_mode(corpus)).ratio,
        "occ": lambda: occ(corpus).ratio,
        "tcc": lambda: tcc(corpus, WindowSpec(last, 5)).ratio,
        "timeseries": lambda: [r.ratios() for r in run_timeseries(corpus, last - 4, last, threads=1)],
    }
    print(f"{len(corpus)} papers, backends: {', '.join(kernels.available())}")
    print(f"{'case':<12}" + "".join(f"{b:>12}" for b in kernels.available()) + f"{'speedup':>10}")
    for name, fn in cases.items():
        times, results = {}, {}
        for backend in kernels.available():
            previous = kernels.use(backend)
            try:
                times[backend], results[backend] = timed(fn, args.repeat)
            finally:
                kernels.active = previous
        if len(set(map(repr, results.values()))) != 1:
            raise SystemExit(f"{name}: backends disagree: {results}")
        speedup = times["python"] / times["cython"] if "cython" in times else float("nan")
        row = "".join(f"{times[b]:>11.3f}s" for b in kernels.available())
        print(f"{name:<12}{row}{speedup:>9.1f}x")


if __name__ == "__main__":
    main()
