"""Romanisation lookup, tone derivation and broad-IPA conversion.

Romanised syllables are Yahwe-style: a consonant initial, a final, an
optional ``q`` for the glottal coda and an optional trailing tone digit.
Tone comes from the shape of the syllable (initial voicing + coda). A bare
voiceless open syllable is T2; T1 on a voiceless initial must be written
with the digit, e.g. ``se1``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Mapping

from .errors import AmbiguousTokenization, MappingGap, ToneUnderivable, UnromanisableCharacter
from .lexicon import Lexicon, nfc
from .segmenter import Origin, Token

CITATION_CONTOURS = {"T1": "53", "T2": "334", "T3": "23", "T4": "5", "T5": "12"}
CONTOUR_ALIASES = {"51": "T1", "34": "T2", "55": "T4"}
CATEGORIES = tuple(CITATION_CONTOURS)

VOICELESS_INITIALS = ("p", "ph", "t", "th", "ts", "tsh", "s", "sh", "f", "k", "kh", "h", "c", "ch")
VOICED_INITIALS = ("b", "d", "g", "gh", "v", "z", "zh", "j", "m", "n", "l", "ng", "gn")
SYLLABIC = {"m": "T3", "n": "T3", "ng": "T3", "r": "T3"}
_INITIALS = sorted(VOICELESS_INITIALS + VOICED_INITIALS, key=len, reverse=True)
_SYLLABLE_RE = re.compile(r"([a-z]+)([1-5])?")


@dataclass(frozen=True)
class ToneValue:
    category: str
    contour: str
    checked: bool

    @classmethod
    def of(cls, category: str) -> "ToneValue":
        return cls(category, CITATION_CONTOURS[category], category in ("T4", "T5"))

    @classmethod
    def from_contour(cls, contour: str) -> "ToneValue":
        for cat, c in CITATION_CONTOURS.items():
            if c == contour:
                return cls.of(cat)
        if contour in CONTOUR_ALIASES:
            return cls.of(CONTOUR_ALIASES[contour])
        raise ValueError(f"unknown citation contour {contour!r}")


class Source(str, Enum):
    LEXICON = "lexicon"
    SUBWORD = "subword"
    CHAR = "char-fallback"


@dataclass(frozen=True)
class RomanSyllable:
    text: str
    tone: ToneValue
    source: Source = Source.LEXICON
    piece: int = 0  # which lexicon entry inside the token supplied this syllable

    @property
    def bare(self) -> str:
        return self.text.rstrip("12345")

    @property
    def tone_digit(self) -> str:
        return self.text[len(self.bare):]


@dataclass(frozen=True)
class IpaSyllable:
    segments: tuple[str, ...]
    tone: ToneValue
    roman: RomanSyllable | None = None

    @property
    def text(self) -> str:
        return "".join(self.segments)


@dataclass(frozen=True)
class PhonemisedToken:
    token: Token
    roman: tuple[RomanSyllable, ...] = ()
    ipa: tuple[IpaSyllable, ...] = ()


def split_initial(bare: str) -> tuple[str, str]:
    for ini in _INITIALS:
        if bare.startswith(ini) and len(bare) > len(ini):
            return ini, bare[len(ini):]
    return "", bare


def assign_tone(syllable: str) -> ToneValue:
    m = _SYLLABLE_RE.fullmatch(syllable)
    if m is None:
        raise ToneUnderivable(syllable)
    bare, digit = m.groups()
    if digit:
        return ToneValue.of(f"T{digit}")
    if bare in SYLLABIC:
        return ToneValue.of(SYLLABIC[bare])
    initial, final = split_initial(bare)
    if not re.search(r"[aeiouy]", final):
        raise ToneUnderivable(syllable)
    voiced = initial in VOICED_INITIALS
    if final.endswith("q"):
        if len(final) < 2:
            raise ToneUnderivable(syllable)
        return ToneValue.of("T5" if voiced else "T4")
    return ToneValue.of("T3" if voiced else "T2")


def romanise(token: Token, lex: Lexicon) -> list[RomanSyllable]:
    """Romanise a word token, composing from sub-words when it has no own entry.

    Composition is forward longest match over romanised entries; each match
    becomes one ``piece``. A character with no romanised entry at all raises
    :class:`UnromanisableCharacter`.
    """
    if token.is_punct:
        raise ValueError("punctuation tokens carry no syllables")
    text = token.text
    entry = lex.entries.get(text)
    if entry is not None and entry.romanisation:
        return [RomanSyllable(s, assign_tone(s), Source.LEXICON, 0) for s in entry.romanisation]
    out = []
    i = 0
    piece = 0
    while i < len(text):
        best = None
        for j in lex.matches(text, i):
            sub = lex.entries[text[i:j]]
            if sub.romanisation:
                best = sub
        if best is None:
            raise UnromanisableCharacter(text[i], token.char_span[0] + i)
        source = Source.CHAR if len(best.headword) == 1 else Source.SUBWORD
        out.extend(RomanSyllable(s, assign_tone(s), source, piece) for s in best.romanisation)
        i += len(best.headword)
        piece += 1
    return out


@dataclass(frozen=True)
class IpaTable:
    graphemes: Mapping[str, tuple[str, ...]]

    @property
    def max_grapheme(self) -> int:
        return max(len(g) for g in self.graphemes)

    @property
    def inventory(self) -> frozenset[str]:
        return frozenset(s for syms in self.graphemes.values() for s in syms)


def load_ipa_table(path) -> IpaTable:
    rows = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = nfc(line.rstrip("\r\n"))
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 2 or not cols[0] or not cols[1].split():
                raise ValueError(f"{path}:{lineno}: expected grapheme<TAB>ipa symbols")
            rows[cols[0]] = tuple(cols[1].split())
    return IpaTable(rows)


def retokenize(text: str, inventory) -> list[str]:
    """Greedy longest-match split of an IPA string into inventory symbols."""
    width = max(len(s) for s in inventory)
    out = []
    i = 0
    while i < len(text):
        for k in range(min(width, len(text) - i), 0, -1):
            if text[i:i + k] in inventory:
                out.append(text[i:i + k])
                i += k
                break
        else:
            raise AmbiguousTokenization(text, None, out + [text[i:]])
    return out


def to_ipa(syl: RomanSyllable, table: IpaTable, check: bool = True) -> IpaSyllable:
    bare = syl.bare
    width = table.max_grapheme
    segments: list[str] = []
    i = 0
    while i < len(bare):
        for k in range(min(width, len(bare) - i), 0, -1):
            syms = table.graphemes.get(bare[i:i + k])
            if syms is not None:
                segments.extend(syms)
                i += k
                break
        else:
            raise MappingGap(syl.text, bare[i:])
    if check:
        got = retokenize("".join(segments), table.inventory)
        if got != segments:
            raise AmbiguousTokenization("".join(segments), segments, got)
    return IpaSyllable(tuple(segments), syl.tone, syl)


def phonemise(token: Token, lex: Lexicon, table: IpaTable) -> PhonemisedToken:
    if token.is_punct:
        return PhonemisedToken(token)
    roman = romanise(token, lex)
    return PhonemisedToken(token, tuple(roman), tuple(to_ipa(s, table) for s in roman))


def render_token(pt: PhonemisedToken, mode: str = "ipa") -> str:
    """One token in segmentation notation.

    Known words join every syllable with ``-``. Inferred words join with
    ``=``, except inside a multi-syllable lexicon word they were composed
    from, which keeps its ``-`` (e.g. ``vəʔ-ni=vəʔ=se1``).
    """
    if pt.token.is_punct:
        return pt.token.text.strip()
    parts = []
    inferred = pt.token.origin is not Origin.KNOWN
    composed = len({r.piece for r in pt.roman}) > 1
    for k, (r, p) in enumerate(zip(pt.roman, pt.ipa)):
        if k:
            same_piece = r.piece == pt.roman[k - 1].piece
            parts.append("=" if inferred and not (composed and same_piece) else "-")
        parts.append(r.text if mode == "roman" else p.text + r.tone_digit)
    return "".join(parts)
