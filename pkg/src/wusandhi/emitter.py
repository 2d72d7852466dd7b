"""Segmentation rendering, model-input symbol sequences, and the full pipeline."""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property

from .config import Config, load_config
from .errors import PipelineError
from .lexicon import load_char_mapping, load_lexicon, merge_weights, nfc, to_traditional
from .phonemizer import PhonemisedToken, RomanSyllable, assign_tone, load_ipa_table, phonemise, render_token, to_ipa
from .sandhi import AnnotatedUtterance, Clitic, annotate, load_sandhi_table, render_contour
from .segmenter import load_hmm, segment

BLANK = "_"
WORD_BOUNDARY = "#"
DOMAIN_OPEN = "⟨"
DOMAIN_CLOSE = "⟩"


@dataclass(frozen=True)
class SymbolSequence:
    symbols: tuple[str, ...]
    blank_interleaved: bool = False

    def __len__(self):
        return len(self.symbols)


def render_segmentation(tokens: list[PhonemisedToken], mode: str = "ipa") -> str:
    """Known-word syllables joined by ``-``, inferred ones by ``=``, tokens by spaces."""
    return " ".join(r for r in (render_token(pt, mode) for pt in tokens) if r)


def interleave(symbols, blank=BLANK):
    out = [blank]
    for s in symbols:
        out.append(s)
        out.append(blank)
    return out


def emit_symbols(utt: AnnotatedUtterance, interleave_blank: bool = False) -> SymbolSequence:
    symbols: list[str] = []
    k = 0
    for d in utt.domains:
        symbols.append(DOMAIN_OPEN)
        for i, syl in enumerate(d.syllables):
            if i and d.token_of and d.token_of[i] != d.token_of[i - 1]:
                symbols.append(WORD_BOUNDARY)
            symbols.extend(syl.segments)
            symbols.append(utt.surface[k].pitch)
            k += 1
        symbols.append(DOMAIN_CLOSE)
    if interleave_blank:
        symbols = interleave(symbols)
    return SymbolSequence(tuple(symbols), interleave_blank)


class Frontend:
    """Loaded tables for one configuration; immutable once built."""

    def __init__(self, config: Config | None = None):
        self.config = config or load_config()

    @cached_property
    def lexicon(self):
        cfg = self.config
        base = load_lexicon(cfg.base_lexicon, "base")
        if cfg.overlay_lexicon is None:
            return base
        overlay = load_lexicon(cfg.overlay_lexicon, "overlay", cfg.default_overlay_weight)
        return merge_weights(base, overlay)

    @cached_property
    def char_mapping(self):
        return load_char_mapping(self.config.char_mapping)

    @cached_property
    def hmm(self):
        return load_hmm(self.config.hmm)

    @cached_property
    def ipa_table(self):
        return load_ipa_table(self.config.ipa_table)

    @cached_property
    def sandhi_table(self):
        return load_sandhi_table(self.config.sandhi_table, self.config.domain_max_length)

    @cached_property
    def clitics(self) -> dict[str, Clitic]:
        out = {}
        for word, form in self.config.clitics.items():
            sylls = None
            if form:
                sylls = tuple(
                    to_ipa(RomanSyllable(s, assign_tone(s)), self.ipa_table) for s in form.split()
                )
                if len(sylls) != len(word):
                    raise ValueError(f"clitic {word}: form {form!r} has wrong syllable count")
            out[word] = Clitic(word, sylls)
        return out

    def with_lexicon(self, lexicon) -> "Frontend":
        fe = Frontend(self.config)
        fe.__dict__["lexicon"] = lexicon
        for name in ("char_mapping", "hmm", "ipa_table", "sandhi_table", "clitics"):
            if name in self.__dict__:
                fe.__dict__[name] = self.__dict__[name]
        return fe

    def normalise(self, text: str) -> str:
        return to_traditional(nfc(text), self.char_mapping)

    def tokens(self, text: str):
        return segment(text, self.lexicon, self.hmm, self.config.use_hmm)

    def phonemise(self, tokens):
        return [phonemise(t, self.lexicon, self.ipa_table) for t in tokens]

    def annotate(self, ptokens) -> AnnotatedUtterance:
        return annotate(ptokens, self.sandhi_table, self.clitics, self.config.split_policy)


def _stage(name, fn, *args):
    try:
        return fn(*args)
    except Exception as exc:
        raise PipelineError(name, exc) from exc


def pipeline(text: str, fe: Frontend | None = None, interleave_blank: bool | None = None) -> dict:
    """Run every stage on one utterance and return all intermediate results."""
    fe = fe or Frontend()
    if interleave_blank is None:
        interleave_blank = fe.config.interleave_blank
    trad = _stage("normalise", fe.normalise, text)
    tokens = _stage("segment", fe.tokens, trad)
    ptokens = _stage("phonemise", fe.phonemise, tokens)
    utt = _stage("sandhi", fe.annotate, ptokens)
    symbols = emit_symbols(utt, interleave_blank)
    return {
        "input": text,
        "traditional": trad,
        "tokens": [
            {"text": t.text, "origin": t.origin.value, "span": list(t.char_span)} for t in tokens
        ],
        "romanisation": render_segmentation(ptokens, "roman"),
        "ipa": render_segmentation(ptokens, "ipa"),
        "domains": [
            {
                "syllables": [s.text for s in d.syllables],
                "head_token": d.head_token,
                "has_clitic": d.has_clitic,
            }
            for d in utt.domains
        ],
        "surface": [[t.pitch for t in _domain_surface(utt, i)] for i in range(len(utt.domains))],
        "shortened": [i for i, t in enumerate(utt.surface) if t.shortened],
        "contour": render_contour(utt),
        "symbols": list(symbols.symbols),
    }


def _domain_surface(utt, index):
    start = sum(len(d) for d in utt.domains[:index])
    return utt.surface[start:start + len(utt.domains[index])]


def dumps_record(record: dict) -> str:
    return json.dumps(record, ensure_ascii=False, separators=(",", ":"))
