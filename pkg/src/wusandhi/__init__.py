"""Shanghainese TTS text front-end.

Raw character text goes through simplified-to-traditional conversion,
maximum-probability word segmentation (HMM fallback for unknown runs),
romanisation and broad IPA, then left-dominant tone sandhi domains and
surface tones, and finally a symbol sequence for a synthesis model.
"""

from .emitter import Frontend, emit_symbols, pipeline, render_segmentation
from .kernels import BACKEND
from .lexicon import Lexicon, LexiconEntry, load_lexicon, lookup, merge_weights, to_traditional
from .sandhi import apply_ld, diff_domains, mark_ld_domains, render_contour
from .segmenter import Token, build_dag, max_prob_segment, segment, viterbi_label

__all__ = [
    "BACKEND", "Frontend", "Lexicon", "LexiconEntry", "Token", "apply_ld", "build_dag",
    "diff_domains", "emit_symbols", "load_lexicon", "lookup", "mark_ld_domains",
    "max_prob_segment", "merge_weights", "pipeline", "render_contour", "render_segmentation",
    "segment", "to_traditional", "viterbi_label",
]
__version__ = "0.1.0"
