"""Maximum-probability DAG segmentation with a BMES-HMM fallback for unknown runs."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from . import kernels
from .lexicon import Lexicon

STATES = ("B", "M", "E", "S")
_ALLOWED = {
    "B": ("M", "E"),
    "M": ("M", "E"),
    "E": ("B", "S"),
    "S": ("B", "S"),
}
NEG_INF = -math.inf


class Origin(str, Enum):
    KNOWN = "known-word"
    INFERRED = "inferred-word"
    FALLBACK = "single-char-fallback"
    PUNCT = "punctuation"


@dataclass(frozen=True)
class Token:
    text: str
    origin: Origin
    char_span: tuple[int, int]

    @property
    def is_punct(self) -> bool:
        return self.origin is Origin.PUNCT


@dataclass(frozen=True)
class Edge:
    end: int
    word: str
    logp: float


@dataclass(frozen=True)
class SegmentationDAG:
    text: str
    edges: tuple[tuple[Edge, ...], ...]

    @property
    def n(self) -> int:
        return len(self.text)


@dataclass(frozen=True)
class HmmParams:
    """BMES parameters as natural-log probabilities; missing entries are -inf."""

    start_logp: Mapping[str, float]
    trans_logp: Mapping[str, Mapping[str, float]]
    emit_logp: Mapping[str, Mapping[str, float]]
    emit_floor: float = -12.0

    def __post_init__(self):
        for s, v in self.start_logp.items():
            _check_logp(v, f"start[{s}]")
        for a, row in self.trans_logp.items():
            for b, v in row.items():
                if b not in _ALLOWED.get(a, ()) and v != NEG_INF:
                    raise ValueError(f"illegal transition {a}->{b} has finite log-probability")
                _check_logp(v, f"trans[{a}][{b}]")
        for s, row in self.emit_logp.items():
            for c, v in row.items():
                _check_logp(v, f"emit[{s}][{c}]")
        _check_logp(self.emit_floor, "emit_floor")

    def start(self, s):
        return self.start_logp.get(s, NEG_INF)

    def trans(self, a, b):
        if b not in _ALLOWED[a]:
            return NEG_INF
        return self.trans_logp.get(a, {}).get(b, NEG_INF)

    def emit(self, s, char):
        return self.emit_logp.get(s, {}).get(char, self.emit_floor)

    def flat_tables(self):
        start = [self.start(s) for s in STATES]
        trans = [self.trans(a, b) for a in STATES for b in STATES]
        return start, trans


def _check_logp(v, where):
    if not (v <= 0.0) or math.isnan(v):
        raise ValueError(f"{where}: log-probability {v} outside (-inf, 0]")


def load_hmm(path) -> HmmParams:
    """Read HMM parameters from JSON with ``start``/``transition``/``emission`` sections."""
    with open(path, encoding="utf-8") as f:
        raw = json.load(f)
    missing = [k for k in ("start", "transition", "emission") if k not in raw]
    if missing:
        raise ValueError(f"{path}: missing sections {missing}")
    return HmmParams(
        start_logp={k: float(v) for k, v in raw["start"].items()},
        trans_logp={a: {b: float(v) for b, v in row.items()} for a, row in raw["transition"].items()},
        emit_logp={s: {c: float(v) for c, v in row.items()} for s, row in raw["emission"].items()},
        emit_floor=float(raw.get("floor", -12.0)),
    )


def word_logp(lex: Lexicon, word: str, oov_logp: float | None = None) -> float:
    if oov_logp is None:
        oov_logp = -math.log(max(lex.total_weight, 1))
    entry = lex.entries.get(word)
    if entry is None or entry.weight == 0:
        return oov_logp
    return math.log(entry.weight) - math.log(lex.total_weight)


def build_dag(text: str, lex: Lexicon, oov_logp: float | None = None) -> SegmentationDAG:
    """All lexicon words at each position, plus a single-character edge everywhere."""
    edges = []
    for i in range(len(text)):
        out = [Edge(j, text[i:j], word_logp(lex, text[i:j], oov_logp)) for j in lex.matches(text, i)]
        if not out or out[0].end != i + 1:
            out.insert(0, Edge(i + 1, text[i], word_logp(lex, text[i], oov_logp)))
        edges.append(tuple(out))
    return SegmentationDAG(text, tuple(edges))


def max_prob_segment(dag: SegmentationDAG, impl=None) -> list[tuple[int, int]]:
    n = dag.n
    if n == 0:
        return []
    offsets = [0]
    ends: list[int] = []
    logps: list[float] = []
    for out in dag.edges:
        for e in out:
            ends.append(e.end)
            logps.append(e.logp)
        offsets.append(len(ends))
    nxt, _ = kernels.best_path(n, offsets, ends, logps, impl=impl)
    spans = []
    i = 0
    while i < n:
        j = nxt[i]
        spans.append((i, j))
        i = j
    return spans


def viterbi_states(span: str, hmm: HmmParams, impl=None) -> list[str]:
    if not span:
        return []
    emit = [hmm.emit(s, c) for c in span for s in STATES]
    start, trans = hmm.flat_tables()
    return [STATES[k] for k in kernels.viterbi(len(span), emit, start, trans, impl=impl)]


def viterbi_label(span: str, hmm: HmmParams, lex: Lexicon | None = None,
                  offset: int = 0, impl=None) -> list[Token]:
    """Decode the best BMES labelling of ``span`` into tokens.

    B..E groups become inferred words. S singletons count as known words
    when ``lex`` has them, otherwise as single-character fallbacks.
    """
    tokens = []
    begin = 0
    for i, state in enumerate(viterbi_states(span, hmm, impl=impl)):
        if state == "B":
            begin = i
        elif state == "E":
            tokens.append(Token(span[begin:i + 1], Origin.INFERRED, (offset + begin, offset + i + 1)))
        elif state == "S":
            origin = Origin.KNOWN if lex is not None and span[i] in lex else Origin.FALLBACK
            tokens.append(Token(span[i], origin, (offset + i, offset + i + 1)))
    return tokens


def is_han(char: str) -> bool:
    cp = ord(char)
    return (
        0x4E00 <= cp <= 0x9FFF
        or 0x3400 <= cp <= 0x4DBF
        or 0x20000 <= cp <= 0x323AF
        or 0xF900 <= cp <= 0xFAFF
        or cp == 0x3007
    )


def _chunks(text: str, lex: Lexicon):
    """Split into (is_word_run, start, end) chunks."""
    i = 0
    n = len(text)
    while i < n:
        wordy = is_han(text[i]) or text[i] in lex
        j = i + 1
        while j < n and (is_han(text[j]) or text[j] in lex) == wordy:
            j += 1
        yield wordy, i, j
        i = j


def segment(text: str, lex: Lexicon, hmm: HmmParams | None = None, use_hmm: bool = True,
            oov_logp: float | None = None) -> list[Token]:
    tokens: list[Token] = []
    for wordy, start, end in _chunks(text, lex):
        if not wordy:
            tokens.append(Token(text[start:end], Origin.PUNCT, (start, end)))
            continue
        run = text[start:end]
        spans = max_prob_segment(build_dag(run, lex, oov_logp))
        buf: list[tuple[int, int]] = []
        for i, j in spans + [(len(run), len(run) + 2)]:
            if j - i == 1:
                buf.append((i, j))
                continue
            if buf:
                tokens.extend(_flush_singles(run, buf, start, lex, hmm if use_hmm else None))
                buf = []
            if i < len(run):
                tokens.append(Token(run[i:j], _word_origin(lex, run[i:j]), (start + i, start + j)))
    return tokens


def _word_origin(lex, word):
    # weight-only entries (frequency patches) have no pronunciation of their own
    entry = lex.entries.get(word)
    return Origin.KNOWN if entry is not None and entry.romanisation else Origin.INFERRED


def _flush_singles(run, buf, offset, lex, hmm):
    lo, hi = buf[0][0], buf[-1][1]
    piece = run[lo:hi]
    if hmm is not None and len(buf) > 1 and piece not in lex:
        return viterbi_label(piece, hmm, lex, offset + lo)
    return [
        Token(run[i], Origin.KNOWN if run[i] in lex else Origin.FALLBACK, (offset + i, offset + j))
        for i, j in buf
    ]
