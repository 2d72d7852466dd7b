"""Left-dominant (LD) sandhi: domain formation and surface tone lookup."""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Mapping, Sequence

from .errors import DomainTooLong, IncomparableAnalyses, IncompleteSandhiTable
from .phonemizer import CATEGORIES, CITATION_CONTOURS, IpaSyllable, PhonemisedToken, ToneValue
from .segmenter import Token

DEFAULT_MAX_LENGTH = 8


@dataclass(frozen=True)
class LDDomain:
    syllables: tuple[IpaSyllable, ...]
    head_token: int
    has_clitic: bool = False
    # token index of every syllable, aligned with ``syllables``
    token_of: tuple[int, ...] = ()
    rd_group: int | None = None

    def __len__(self):
        return len(self.syllables)


@dataclass(frozen=True)
class SurfaceTone:
    pitch: str
    shortened: bool = False


@dataclass(frozen=True)
class SandhiPatternTable:
    rows: Mapping[tuple[str, int], tuple[str, ...]]
    max_length: int

    def row(self, category: str, length: int) -> tuple[str, ...]:
        if length > self.max_length:
            raise DomainTooLong(length, self.max_length)
        return self.rows[(category, length)]


@dataclass
class AnnotatedUtterance:
    tokens: list[PhonemisedToken]
    domains: list[LDDomain]
    surface: list[SurfaceTone] = field(default_factory=list)

    @property
    def syllables(self) -> list[IpaSyllable]:
        return [s for d in self.domains for s in d.syllables]


def check_table(rows, max_length):
    missing = [(c, n) for c in CATEGORIES for n in range(1, max_length + 1) if (c, n) not in rows]
    if missing:
        raise IncompleteSandhiTable(missing)
    for c in CATEGORIES:
        if rows[(c, 1)] != (CITATION_CONTOURS[c],):
            raise ValueError(f"{c} monosyllable row {rows[(c, 1)]} differs from citation contour")


def load_sandhi_table(path, max_length: int | None = None) -> SandhiPatternTable:
    """Read ``category<TAB>length<TAB>targets`` rows and check completeness."""
    rows: dict[tuple[str, int], tuple[str, ...]] = {}
    with open(path, encoding="utf-8") as f:
        for lineno, line in enumerate(f, start=1):
            line = line.rstrip("\r\n")
            if not line.strip() or line.startswith("#"):
                continue
            cols = line.split("\t")
            if len(cols) != 3:
                raise ValueError(f"{path}:{lineno}: expected 3 columns")
            cat, length, targets = cols[0].strip(), int(cols[1]), tuple(cols[2].split())
            if cat not in CATEGORIES:
                raise ValueError(f"{path}:{lineno}: unknown tone category {cat!r}")
            if len(targets) != length:
                raise ValueError(f"{path}:{lineno}: {len(targets)} targets for length {length}")
            if not all(t.isdigit() and set(t) <= set("12345") for t in targets):
                raise ValueError(f"{path}:{lineno}: targets must be Chao digit strings")
            rows[(cat, length)] = targets
    if max_length is None:
        max_length = max((n for _, n in rows), default=0)
    check_table(rows, max_length)
    return SandhiPatternTable(rows, max_length)


@dataclass(frozen=True)
class Clitic:
    """A word that joins the preceding LD domain, optionally changing shape."""

    headword: str
    form: tuple[IpaSyllable, ...] | None = None


def mark_ld_domains(tokens: Sequence[PhonemisedToken],
                    clitics: Mapping[str, Clitic] | None = None) -> list[LDDomain]:
    clitics = clitics or {}
    domains: list[LDDomain] = []
    open_ok = False  # may the next clitic attach to domains[-1]?
    for idx, pt in enumerate(tokens):
        tok: Token = pt.token
        if tok.is_punct:
            open_ok = False
            continue
        if not pt.ipa:
            continue
        clitic = clitics.get(tok.text)
        if clitic is not None and open_ok:
            sylls = clitic.form if clitic.form is not None else pt.ipa
            last = domains[-1]
            domains[-1] = replace(
                last,
                syllables=last.syllables + tuple(sylls),
                token_of=last.token_of + (idx,) * len(sylls),
                has_clitic=True,
            )
            continue
        domains.append(LDDomain(pt.ipa, idx, False, (idx,) * len(pt.ipa)))
        open_ok = True
    return domains


def split_long_domains(domains: Sequence[LDDomain], max_length: int) -> list[LDDomain]:
    """Split over-long domains at their rightmost interior token boundary, recursively."""
    out: list[LDDomain] = []
    for d in domains:
        out.extend(_split(d, max_length))
    return out


def _split(d: LDDomain, max_length: int) -> list[LDDomain]:
    if len(d) <= max_length:
        return [d]
    cut = next((k for k in range(len(d) - 1, 0, -1) if d.token_of[k] != d.token_of[k - 1]), None)
    if cut is None:
        cut = max_length
    left = _sub(d, 0, cut, d.head_token)
    right = _sub(d, cut, len(d), d.token_of[cut])
    return _split(left, max_length) + _split(right, max_length)


def _sub(d, lo, hi, head):
    token_of = d.token_of[lo:hi]
    return LDDomain(
        d.syllables[lo:hi], head,
        has_clitic=d.has_clitic and len(set(token_of)) > 1,
        token_of=token_of, rd_group=d.rd_group,
    )


def apply_ld(domain: LDDomain, table: SandhiPatternTable) -> list[SurfaceTone]:
    """Surface tones from the first syllable's category and the domain length only."""
    if not domain.syllables:
        return []
    row = table.row(domain.syllables[0].tone.category, len(domain))
    return [SurfaceTone(p, s.tone.checked) for p, s in zip(row, domain.syllables)]


def annotate(tokens: Sequence[PhonemisedToken], table: SandhiPatternTable,
             clitics: Mapping[str, Clitic] | None = None,
             split_policy: str = "split") -> AnnotatedUtterance:
    domains = mark_ld_domains(tokens, clitics)
    if split_policy == "split":
        domains = split_long_domains(domains, table.max_length)
    surface = [t for d in domains for t in apply_ld(d, table)]
    return AnnotatedUtterance(list(tokens), domains, surface)


def render_contour(utt: AnnotatedUtterance) -> str:
    """``[zã2 he4] [...]``: IPA syllables with surface pitch digits, one bracket per domain."""
    parts = []
    k = 0
    for d in utt.domains:
        sylls = []
        for s in d.syllables:
            sylls.append(s.text + utt.surface[k].pitch)
            k += 1
        parts.append("[" + " ".join(sylls) + "]")
    return " ".join(parts)


@dataclass(frozen=True)
class DomainDiff:
    """Boundary changes going from analysis ``a`` to ``b``.

    Positions count syllables before the boundary, so 2 means "after the
    second syllable".
    """

    inserted: tuple[int, ...] = ()
    deleted: tuple[int, ...] = ()
    rd_inserted: tuple[int, ...] = ()
    rd_deleted: tuple[int, ...] = ()

    def __bool__(self):
        return bool(self.inserted or self.deleted or self.rd_inserted or self.rd_deleted)


def _boundaries(domains):
    out, pos = set(), 0
    for d in domains[:-1]:
        pos += len(d)
        out.add(pos)
    return out


def _rd_boundaries(domains):
    out, pos = set(), 0
    for prev, nxt in zip(domains, domains[1:]):
        pos += len(prev)
        if prev.rd_group != nxt.rd_group:
            out.add(pos)
    return out


def diff_domains(a: Sequence[LDDomain], b: Sequence[LDDomain]) -> DomainDiff:
    sa = [s.segments for d in a for s in d.syllables]
    sb = [s.segments for d in b for s in d.syllables]
    if sa != sb:
        raise IncomparableAnalyses("analyses cover different syllable sequences")
    ba, bb = _boundaries(a), _boundaries(b)
    ra, rb = _rd_boundaries(a), _rd_boundaries(b)
    return DomainDiff(
        tuple(sorted(bb - ba)), tuple(sorted(ba - bb)),
        tuple(sorted(rb - ra)), tuple(sorted(ra - rb)),
    )


def domains_from_groups(syllables: Sequence[IpaSyllable], sizes: Sequence[int],
                        rd_groups: Sequence[int | None] | None = None) -> list[LDDomain]:
    """Build an analysis directly from domain sizes (for comparing hand analyses)."""
    if sum(sizes) != len(syllables):
        raise ValueError("domain sizes do not cover the syllables")
    rd_groups = rd_groups or [None] * len(sizes)
    out, pos = [], 0
    for k, (n, rd) in enumerate(zip(sizes, rd_groups)):
        out.append(LDDomain(tuple(syllables[pos:pos + n]), k, False, (k,) * n, rd))
        pos += n
    return out


__all__ = [
    "AnnotatedUtterance", "Clitic", "DomainDiff", "LDDomain", "SandhiPatternTable",
    "SurfaceTone", "ToneValue", "annotate", "apply_ld", "diff_domains", "domains_from_groups",
    "load_sandhi_table", "mark_ld_domains", "render_contour", "split_long_domains",
]
