"""Compare the numba kernels against the pure-numpy fallback.

    python benchmarks/bench_kernels.py [--repeat 5]

Both variants run in one process (the compiled kernels are always built when
numba is installed); results are checked for agreement before timing.
"""
import argparse
import time

import numpy as np

from synq import _kernels as K
from synq._accel import HAVE_NUMBA
from synq.game import GameSpec, complete_graph, cycle_graph, make_easiest, make_graph_game, petersen_graph, random_graph
from synq.repcheck import make_rng


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        out = fn()
        times.append(time.perf_counter() - t)
    return min(times), out


def star_cases():
    rng = make_rng(3)
    return [
        ("star Petersen", make_graph_game(petersen_graph())),
        ("star random n=16", make_graph_game(random_graph(16, 0.5, rng))),
        ("star easiest(20,20)", make_easiest(20, 20)),
        # witness found late: only the last extra zero breaks (star)
        ("star crafted n=12", GameSpec.synchronous(12, 12, [(11, 11, 10, 11)])),
    ]


def enum_cases():
    rng = make_rng(4)
    return [
        ("End(Petersen)", make_graph_game(petersen_graph()), False),
        ("Aut(Petersen)", make_graph_game(petersen_graph()), True),
        ("End(C8)", make_graph_game(cycle_graph(8)), False),
        ("End(K6)", make_graph_game(complete_graph(6)), False),
        ("End(random n=9)", make_graph_game(random_graph(9, 0.3, rng)), False),
    ]


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    if not HAVE_NUMBA:
        raise SystemExit("numba is not installed; nothing to compare")

    # warm up the JIT so compile time is not counted
    K.star_witness_nb(np.ascontiguousarray(make_easiest(2, 2).allowed, dtype=np.bool_))
    K.enumerate_maps_nb(K.compatibility(make_easiest(2, 2).allowed), False)

    print(f"{'case':<24}{'numpy s':>12}{'numba s':>12}{'speedup':>10}  result")
    for name, spec in star_cases():
        allowed = np.ascontiguousarray(spec.allowed, dtype=np.bool_)
        t_np, r_np = best_of(lambda: K.star_witness_np(allowed), args.repeat)
        t_nb, r_nb = best_of(lambda: K.star_witness_nb(allowed), args.repeat)
        assert np.array_equal(r_np, r_nb), (name, r_np, r_nb)
        witness = tuple(int(v) for v in r_np) if r_np[0] >= 0 else None
        print(f"{name:<24}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>10.1f}  witness {witness}")
    for name, spec, inv in enum_cases():
        compat = K.compatibility(spec.allowed)
        t_np, r_np = best_of(lambda: K.enumerate_maps_np(compat, inv), args.repeat)
        t_nb, r_nb = best_of(lambda: K.enumerate_maps_nb(compat, inv), args.repeat)
        assert np.array_equal(r_np, r_nb), name
        print(f"{name:<24}{t_np:>12.4f}{t_nb:>12.4f}{t_np / t_nb:>10.1f}  {len(r_np)} maps")


if __name__ == "__main__":
    main()
