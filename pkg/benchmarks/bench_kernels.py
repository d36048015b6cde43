"""Compiled vs pure-Python counting kernels.

    python3 benchmarks/bench_kernels.py [--repeat 3] [--seed 0]

Times table construction, single-player removal and a whole-game report
on random games, once per available backend, and checks that every
backend returns identical numbers.
"""
import argparse
import random
import time

from wvgpower import counting, full_report, new_game


def _best(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def cases(seed):
    rng = random.Random(seed)
    out = []
    for n, wmax in ((20, 1000), (40, 500), (60, 200)):
        weights = [rng.randint(1, wmax) for _ in range(n)]
        out.append(new_game(weights, sum(weights) // 2 + 1))
    return out


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()

    backends = counting.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the pure-Python backend is available")
    header = f"{'workload':<34}" + "".join(f"{b:>12}" for b in backends)
    if len(backends) > 1:
        header += f"{'speedup':>10}"
    print(header)

    for game in cases(args.seed):
        label = f"n={game.n} W={game.total_weight}"
        workloads = [
            (f"count table   {label}", lambda g=game: counting.build_weight_table(g).as_dict()),
            (f"card table    {label}", lambda g=game: counting.build_weight_card_table(g, limit=g.quota).total()),
            (f"banzhaf report {label}", lambda g=game: full_report(g, "banzhaf").raw),
            (f"shapley report {label}", lambda g=game: full_report(g, "shapley-shubik").raw),
        ]
        for name, fn in workloads:
            times, results = [], []
            for b in backends:
                with counting.use_backend(b):
                    t, out = _best(fn, args.repeat)
                times.append(t)
                results.append(out)
            if any(r != results[0] for r in results):
                raise SystemExit(f"backends disagree on {name}")
            row = f"{name:<34}" + "".join(f"{t * 1e3:>10.1f}ms" for t in times)
            if len(times) > 1:
                # pure Python time over compiled time
                row += f"{times[backends.index('python')] / times[backends.index('cython')]:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
