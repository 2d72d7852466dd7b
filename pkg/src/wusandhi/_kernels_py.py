"""Pure-Python twins of the compiled kernels in ``_kernels.pyx``."""

from math import inf


def best_path(n, offsets, ends, logps, eps):
    score = [0.0] * (n + 1)
    nxt = [n] * (n + 1)
    for i in range(n - 1, -1, -1):
        best = -inf
        bj = -1
        for k in range(offsets[i], offsets[i + 1]):
            j = ends[k]
            s = logps[k] + score[j]
            if bj < 0 or s > best + eps or (s >= best - eps and j > bj):
                best = s
                bj = j
        score[i] = best
        nxt[i] = bj
    return nxt[:n], score[0]


def viterbi(length, emit, start, trans, eps):
    if length == 0:
        return []
    v = [start[y] + emit[y] for y in range(4)]
    back = []
    for t in range(1, length):
        row = []
        ptr = []
        for y in range(4):
            best = -inf
            arg = -1
            for y0 in range(4):
                s = v[y0] + trans[y0 * 4 + y]
                if s > best + eps:
                    best = s
                    arg = y0
            row.append(best + emit[t * 4 + y])
            ptr.append(arg)
        v = row
        back.append(ptr)
    arg = 2 if v[2] >= v[3] - eps else 3
    if v[arg] == -inf:
        raise ValueError("no state sequence with positive probability")
    states = [arg]
    for ptr in reversed(back):
        arg = ptr[arg]
        states.append(arg)
    states.reverse()
    return states
