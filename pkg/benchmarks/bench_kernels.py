"""Compare the compiled and pure-Python kernels.

    python3 benchmarks/bench_kernels.py [--repeat 5] [--size 2000]

Times the raw DAG best-path and Viterbi kernels on random inputs, then
end-to-end segmentation of the shipped lexicon with each backend swapped in.
"""

import argparse
import math
import random
import timeit
from array import array

from wusandhi import kernels
from wusandhi.config import load_config
from wusandhi.emitter import Frontend
from wusandhi.segmenter import segment


def dag_input(rng, n, max_len=4):
    offsets, ends, logps = [0], [], []
    for i in range(n):
        for j in range(i + 1, min(n, i + max_len) + 1):
            if j == i + 1 or rng.random() < 0.4:
                ends.append(j)
                logps.append(math.log(rng.uniform(1e-6, 1e-2)))
        offsets.append(len(ends))
    return offsets, ends, logps


def viterbi_input(rng, n):
    emit = [math.log(rng.uniform(0.01, 0.3)) for _ in range(4 * n)]
    start = [math.log(0.4), -math.inf, -math.inf, math.log(0.6)]
    trans = [-math.inf] * 16
    for a, b in [(0, 1), (0, 2), (1, 1), (1, 2), (2, 0), (2, 3), (3, 0), (3, 3)]:
        trans[a * 4 + b] = math.log(0.5)
    return emit, start, trans


def best_of(fn, repeat):
    return min(timeit.repeat(fn, number=1, repeat=repeat))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--size", type=int, default=2000, help="characters per kernel input")
    args = ap.parse_args(argv)

    rng = random.Random(0)
    impls = kernels.implementations()
    if "cython" not in impls:
        print("compiled extension not importable; timing the pure-Python backend only")

    offsets, ends, logps = dag_input(rng, args.size)
    emit, start, trans = viterbi_input(rng, args.size)
    packed = {
        "python": ((offsets, ends, logps), (emit, start, trans)),
        "cython": ((array("q", offsets), array("q", ends), array("d", logps)),
                   (array("d", emit), array("d", start), array("d", trans))),
    }

    fe = Frontend(load_config())
    lex, hmm = fe.lexicon, fe.hmm
    heads = [e.headword for e in lex]
    text = "".join(rng.choice(heads) for _ in range(args.size // 2))

    rows = []
    for name, impl in impls.items():
        dag_args, vit_args = packed[name]
        t_dag = best_of(lambda: impl.best_path(args.size, *dag_args, kernels.TIE_EPS), args.repeat)
        t_vit = best_of(lambda: impl.viterbi(args.size, *vit_args, kernels.TIE_EPS), args.repeat)
        saved = kernels._impl
        kernels._impl = impl
        try:
            t_seg = best_of(lambda: segment(text, lex, hmm), args.repeat)
        finally:
            kernels._impl = saved
        rows.append((name, t_dag, t_vit, t_seg))

    print(f"{'backend':<8} {'best_path ms':>13} {'viterbi ms':>11} {'segment ms':>11}  (n={args.size})")
    for name, t_dag, t_vit, t_seg in rows:
        print(f"{name:<8} {t_dag * 1e3:>13.3f} {t_vit * 1e3:>11.3f} {t_seg * 1e3:>11.3f}")
    if len(rows) == 2:
        py, cy = rows[0], rows[1]
        print(f"{'speedup':<8} {py[1] / cy[1]:>12.1f}x {py[2] / cy[2]:>10.1f}x {py[3] / cy[3]:>10.1f}x")


if __name__ == "__main__":
    main()
