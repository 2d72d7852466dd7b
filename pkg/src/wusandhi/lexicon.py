"""Pronunciation/frequency lexicon and simplified-to-traditional conversion."""

from __future__ import annotations

import logging
import unicodedata
from dataclasses import dataclass, field
from pathlib import Path
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping

from .errors import LexiconRowError

log = logging.getLogger(__name__)

DEFAULT_OVERLAY_WEIGHT = 1000


def nfc(text: str) -> str:
    return unicodedata.normalize("NFC", text)


@dataclass(frozen=True)
class LexiconEntry:
    headword: str
    romanisation: tuple[str, ...] = ()
    weight: int = 0

    def __post_init__(self):
        if not self.headword or any(c.isspace() for c in self.headword):
            raise ValueError(f"bad headword {self.headword!r}")
        if self.romanisation and len(self.romanisation) != len(self.headword):
            raise ValueError(
                f"{self.headword}: {len(self.romanisation)} syllables for "
                f"{len(self.headword)} characters"
            )
        if self.weight < 0:
            raise ValueError(f"{self.headword}: negative weight {self.weight}")


class Lexicon:
    """Immutable headword-keyed lexicon with a prefix index.

    The prefix index maps every prefix of every headword to whether that
    prefix is itself a headword, which is all a left-to-right scan needs.
    """

    def __init__(self, entries: Iterable[LexiconEntry] = ()):
        table: dict[str, LexiconEntry] = {}
        for e in entries:
            table[e.headword] = e
        self._entries = MappingProxyType(table)
        self.total_weight = sum(e.weight for e in table.values())
        prefixes: dict[str, bool] = {}
        for word in table:
            for k in range(1, len(word)):
                prefixes.setdefault(word[:k], False)
            prefixes[word] = True
        self._prefixes = prefixes
        self.max_word_length = max((len(w) for w in table), default=0)
        self.row_errors: list[LexiconRowError] = []

    @property
    def entries(self) -> Mapping[str, LexiconEntry]:
        return self._entries

    def __len__(self):
        return len(self._entries)

    def __contains__(self, word):
        return word in self._entries

    def __iter__(self) -> Iterator[LexiconEntry]:
        return iter(self._entries.values())

    def __eq__(self, other):
        if not isinstance(other, Lexicon):
            return NotImplemented
        return dict(self._entries) == dict(other._entries)

    def matches(self, text: str, start: int) -> Iterator[int]:
        """Yield end offsets ``j`` such that ``text[start:j]`` is a headword."""
        j = start + 1
        n = len(text)
        while j <= n:
            is_word = self._prefixes.get(text[start:j])
            if is_word is None:
                return
            if is_word:
                yield j
            j += 1

    def without(self, *words: str) -> "Lexicon":
        return Lexicon(e for e in self if e.headword not in words)


def lookup(lex: Lexicon, word: str) -> LexiconEntry | None:
    return lex.entries.get(word)


def _parse_weight(raw, path, lineno, fmt, default_weight):
    raw = raw.strip()
    if not raw:
        if fmt == "overlay":
            return default_weight
        raise LexiconRowError(path, lineno, "missing weight")
    try:
        weight = int(raw)
    except ValueError:
        raise LexiconRowError(path, lineno, f"weight {raw!r} is not an integer") from None
    if weight < 0:
        raise LexiconRowError(path, lineno, f"negative weight {weight}")
    return weight


def _parse_rows(path, fmt, default_weight, strict):
    errors = []
    rows = []
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = nfc(line.rstrip("\r\n"))
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            try:
                if len(cols) != 3:
                    raise LexiconRowError(path, lineno, f"expected 3 columns, got {len(cols)}")
                head, rom, raw_w = cols
                head = head.strip()
                weight = _parse_weight(raw_w, path, lineno, fmt, default_weight)
                try:
                    entry = LexiconEntry(head, tuple(rom.split()), weight)
                except ValueError as exc:
                    raise LexiconRowError(path, lineno, str(exc)) from None
            except LexiconRowError as exc:
                if strict:
                    raise
                log.warning("%s", exc)
                errors.append(exc)
                continue
            rows.append(entry)
    return rows, errors


def load_lexicon(path, format: str = "base", default_weight: int = DEFAULT_OVERLAY_WEIGHT,
                 strict: bool = True) -> Lexicon:
    """Load a lexicon TSV (``headword<TAB>syllables<TAB>weight``).

    ``format="overlay"`` allows an empty weight column, filled with
    ``default_weight``. Duplicate headwords keep the maximum weight and the
    first non-empty romanisation. With ``strict=False`` malformed rows are
    skipped and collected on ``Lexicon.row_errors`` instead of raising.
    """
    if format not in ("base", "overlay"):
        raise ValueError(f"unknown lexicon format {format!r}")
    rows, errors = _parse_rows(Path(path), format, default_weight, strict)
    merged: dict[str, LexiconEntry] = {}
    for e in rows:
        prev = merged.get(e.headword)
        if prev is None:
            merged[e.headword] = e
            continue
        merged[e.headword] = LexiconEntry(
            e.headword,
            prev.romanisation or e.romanisation,
            max(prev.weight, e.weight),
        )
    lex = Lexicon(merged.values())
    lex.row_errors = errors
    return lex


def dump_lexicon(lex: Lexicon, path) -> None:
    with open(path, "w", encoding="utf-8") as f:
        for e in lex:
            f.write(f"{e.headword}\t{' '.join(e.romanisation)}\t{e.weight}\n")


def merge_weights(base: Lexicon, overlay: Lexicon) -> Lexicon:
    """Overlay entries replace base weights; overlay romanisations win when present."""
    table = dict(base.entries)
    for e in overlay:
        prev = table.get(e.headword)
        rom = e.romanisation or (prev.romanisation if prev else ())
        table[e.headword] = LexiconEntry(e.headword, rom, e.weight)
    return Lexicon(table.values())


@dataclass(frozen=True)
class CharMapping:
    pairs: Mapping[str, str] = field(default_factory=dict)

    @property
    def max_key_length(self) -> int:
        return max((len(k) for k in self.pairs), default=1)


def load_char_mapping(path) -> CharMapping:
    pairs = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = nfc(line.rstrip("\r\n"))
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 2 or not cols[0] or not cols[1]:
                raise LexiconRowError(path, lineno, "expected from<TAB>to")
            pairs[cols[0]] = cols[1]
    return CharMapping(MappingProxyType(pairs))


def to_traditional(text: str, mapping: CharMapping) -> str:
    """Longest-match replacement of simplified sequences by traditional ones."""
    pairs = mapping.pairs
    width = mapping.max_key_length
    out = []
    i = 0
    n = len(text)
    while i < n:
        for k in range(min(width, n - i), 0, -1):
            rep = pairs.get(text[i:i + k])
            if rep is not None:
                out.append(rep)
                i += k
                break
        else:
            out.append(text[i])
            i += 1
    return "".join(out)
