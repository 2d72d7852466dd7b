"""MOS questionnaire statistics: cell means, 95% t-intervals, Welch t-tests."""

from __future__ import annotations

import csv
import itertools
import logging
import math
from collections import defaultdict
from dataclasses import dataclass, field
from statistics import fmean, stdev

from scipy.stats import t as student_t

from .errors import InsufficientData, RatingRowError

log = logging.getLogger(__name__)

METRICS = ("accuracy", "comprehensibility", "intelligibility", "naturalness")
GROUPINGS = {
    "speaker": ("speaker",),
    "metric": ("speaker", "metric"),
    "sentence": ("speaker", "sentence"),
}
CONFIDENCE = 0.95


@dataclass(frozen=True)
class RatingRecord:
    participant: str
    speaker: int
    sentence: int
    metric: str
    score: int


@dataclass
class RatingSet:
    records: list[RatingRecord] = field(default_factory=list)
    dropped: list[str] = field(default_factory=list)

    def __len__(self):
        return len(self.records)

    def __iter__(self):
        return iter(self.records)


@dataclass(frozen=True)
class MosCell:
    mean: float
    ci_halfwidth: float
    n: int

    def __str__(self):
        return f"{self.mean:.2f} ± {self.ci_halfwidth:.2f}"


def _parse_row(row, lineno):
    try:
        participant = row["participant"].strip()
        speaker = int(row["speaker"])
        sentence = int(row["sentence"])
        metric = row["metric"].strip().lower()
        score = int(row["score"])
    except (KeyError, TypeError, ValueError, AttributeError) as exc:
        raise RatingRowError(lineno, f"unparseable row {row!r}: {exc}") from None
    if not participant:
        raise RatingRowError(lineno, "empty participant id")
    if metric not in METRICS:
        raise RatingRowError(lineno, f"unknown metric {metric!r}")
    if not 1 <= score <= 5:
        raise RatingRowError(lineno, f"score {score} outside 1..5")
    return RatingRecord(participant, speaker, sentence, metric, score)


def load_ratings(path) -> RatingSet:
    """Read ``participant,speaker,sentence,metric,score`` rows.

    Participants missing any (speaker, sentence, metric) cell of the design
    seen in the file are dropped whole and listed in ``RatingSet.dropped``.
    """
    with open(path, encoding="utf-8", newline="") as f:
        rows = list(csv.DictReader(f))
    records = [_parse_row(r, i) for i, r in enumerate(rows, start=2)]
    if not records:
        return RatingSet()
    design = set(itertools.product(
        {r.speaker for r in records}, {r.sentence for r in records}, {r.metric for r in records}
    ))
    cells: dict[str, set] = defaultdict(set)
    for r in records:
        key = (r.speaker, r.sentence, r.metric)
        if key in cells[r.participant]:
            raise RatingRowError(0, f"participant {r.participant} rated {key} twice")
        cells[r.participant].add(key)
    dropped = sorted(p for p, got in cells.items() if got != design)
    for p in dropped:
        log.warning("dropping incomplete questionnaire from participant %s", p)
    keep = [r for r in records if r.participant not in dropped]
    return RatingSet(keep, dropped)


def t_quantile(df: int, confidence: float = CONFIDENCE) -> float:
    return float(student_t.ppf(0.5 + confidence / 2, df))


def mos_cell(scores) -> MosCell:
    scores = list(scores)
    n = len(scores)
    if n == 0:
        raise InsufficientData("empty cell")
    mean = fmean(scores)
    if n == 1:
        return MosCell(mean, math.nan, 1)
    s = stdev(scores)
    return MosCell(mean, t_quantile(n - 1) * s / math.sqrt(n), n)


def mos(records, group_by: str = "speaker") -> dict[tuple, MosCell | None]:
    """MOS per cell. Cells of the observed grid with no scores map to ``None``."""
    keys = GROUPINGS[group_by]
    records = list(records)
    groups = defaultdict(list)
    for r in records:
        groups[tuple(getattr(r, k) for k in keys)].append(r.score)
    grid = itertools.product(*(sorted({getattr(r, k) for r in records}) for k in keys))
    return {key: (mos_cell(groups[key]) if groups.get(key) else None) for key in grid}


def welch_p(a, b) -> float:
    a, b = list(a), list(b)
    if len(a) < 2 or len(b) < 2:
        raise InsufficientData("each cell needs at least two scores")
    ma, mb = fmean(a), fmean(b)
    va, vb = stdev(a) ** 2 / len(a), stdev(b) ** 2 / len(b)
    if ma == mb:
        return 1.0
    if va + vb == 0:
        return 0.0
    t_stat = (ma - mb) / math.sqrt(va + vb)
    df = (va + vb) ** 2 / (va ** 2 / (len(a) - 1) + vb ** 2 / (len(b) - 1))
    return float(min(1.0, 2 * student_t.sf(abs(t_stat), df)))


def select(records, **where):
    return [r.score for r in records if all(getattr(r, k) == v for k, v in where.items())]


def pairwise_test(records, cell_a: dict, cell_b: dict) -> float:
    """Two-sided Welch t-test p-value between two cells given as field filters."""
    records = list(records)
    return welch_p(select(records, **cell_a), select(records, **cell_b))


def _column_label(key):
    return key.capitalize() if isinstance(key, str) else f"Sentence {key}"


def table_rows(cells: dict, group_by: str):
    """Pivot ``mos`` output into (header, rows) with one row per speaker."""
    speakers = sorted({k[0] for k in cells})
    if group_by == "speaker":
        header = ["Speaker", "Overall MOS"]
        rows = [[str(s), _fmt(cells[(s,)])] for s in speakers]
        return header, rows
    cols = sorted({k[1] for k in cells})
    header = ["Speaker"] + [_column_label(c) for c in cols]
    rows = [[str(s)] + [_fmt(cells.get((s, c))) for c in cols] for s in speakers]
    return header, rows


def _fmt(cell):
    if cell is None:
        return "missing"
    if math.isnan(cell.ci_halfwidth):
        return f"{cell.mean:.2f} ± n/a"
    return str(cell)


def format_table(cells: dict, group_by: str) -> str:
    header, rows = table_rows(cells, group_by)
    widths = [max(len(r[i]) for r in [header] + rows) for i in range(len(header))]
    lines = ["  ".join(h.ljust(w) for h, w in zip(header, widths)).rstrip()]
    for r in rows:
        lines.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    lines.append(f"Confidence interval: {CONFIDENCE:.0%} (Student t)")
    return "\n".join(lines)


def cells_to_json(cells: dict, group_by: str) -> list[dict]:
    out = []
    for key, cell in cells.items():
        item = dict(zip(GROUPINGS[group_by], key))
        if cell is None:
            item["missing"] = True
        else:
            item.update(mean=cell.mean, ci_halfwidth=None if math.isnan(cell.ci_halfwidth) else cell.ci_halfwidth, n=cell.n)
        out.append(item)
    return out
