"""Sentence splitting and tokenization.

Counting conventions:

* every line break ends a sentence, and so does ``.``/``!``/``?`` followed by
  whitespace and an uppercase letter or digit, unless the period closes a
  known abbreviation;
* a "word" is a word or number token; punctuation and symbols never count.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from bisect import bisect_left
from functools import lru_cache
from itertools import compress, repeat
from importlib import resources
from typing import NamedTuple, Optional

WORD = "word"
NUMBER = "number"
PUNCT = "punctuation"
SYMBOL = "symbol"

COUNTED_KINDS = frozenset((WORD, NUMBER))

BULLET_MARKERS = ("-", "•", "*")

# pronouns that may follow a hyphen in French inversion ("peut-il", "a-t-il")
_FR_CLITIC_SEGMENTS = frozenset(
    "je tu il elle on nous vous ils elles le la les lui leur y en moi toi t ce".split())

# elided forms that are one word, not clitic + host
_FR_ELISION_EXEMPT = r"aujourd['’]hui|quelqu['’]une?s?|presqu['’]île|prud['’]hom\w*"

class Token(NamedTuple):
    surface: str
    start: int
    end: int
    kind: str
    tag: Optional[object] = None

    @property
    def span(self):
        return (self.start, self.end)


@dataclass(frozen=True)
class Sentence:
    text: str
    tokens: tuple
    start: int
    end: int
    bullet: bool = False
    n_words: int = -1

    def __post_init__(self):
        if self.n_words < 0:
            object.__setattr__(self, "n_words", word_count(self.tokens))

    @property
    def source_span(self):
        return (self.start, self.end)

    def words(self):
        return [t for t in self.tokens if t.kind is WORD]


@lru_cache(maxsize=None)
def _token_re(language):
    parts = []
    if language == "fr":
        parts.append(rf"(?i:{_FR_ELISION_EXEMPT})(?!\w)")
        # clitic + apostrophe splits from its host: d'enchaîner -> d' enchaîner
        parts.append(r"[^\W\d_]+['’](?=[^\W\d_])")
    parts.append(r"\d+(?:[.,]\d+)+")
    parts.append(r"\w+(?:-\w+)*")
    if language == "en":
        parts.append(r"(?<=\w)['’](?i:s|re|ll|ve|d|m|t)(?!\w)")
    parts.append(r"\.\.\.")
    parts.append(r"\S")
    return re.compile("|".join(parts))


_PUNCT_SET = frozenset(""".,;:!?()[]{}"«»“”‘’'/–—-""")


def _chunk_kind(surface):
    if any(c.isalpha() for c in surface):
        return WORD
    if any(c.isdigit() for c in surface):
        return NUMBER
    return SYMBOL


def _split_hyphenated(surface, start, language, compounds):
    """Hyphenated chunk: whole token, or parts plus hyphen punctuation.

    Returns (surface, start, kind) triples.
    """
    segments = surface.split("-")
    keep = surface.lower() in compounds or (
        all(any(c.isalpha() for c in seg) for seg in segments)
        and not (language == "fr" and any(s.lower() in _FR_CLITIC_SEGMENTS for s in segments[1:])))
    if keep:
        return [(surface, start, WORD)]
    out = []
    pos = start
    for i, seg in enumerate(segments):
        if i:
            out.append(("-", pos, PUNCT))
            pos += 1
        out.append((seg, pos, _chunk_kind(seg)))
        pos += len(seg)
    return out


_new_token = tuple.__new__


# Fast pass: one broad word pattern.  Tokens where it may disagree with the
# exact pattern (decimals, apostrophes that are not plain elisions) are
# rescanned with the exact pattern.
_FAST_RE = re.compile(r"\w+(?:[.,]\d+)*(?:-\w+)*(?:['’](?=[^\W\d_]))?|\.\.\.|\S")
_FR_EXEMPT_STEMS = frozenset(("aujourd", "quelqu", "presqu", "prud"))

_SPLIT = "split"  # hyphenated chunk that breaks into parts
_RESCAN = "rescan"
_DECIMAL_RE = re.compile(r"\d+(?:[.,]\d+)+")
# (language, compounds) -> {surface: kind}; split parts are cached alongside
_KIND_CACHE = {}
_PARTS_CACHE = {}


def _caches(language, compounds):
    key = (language, compounds)
    kinds = _KIND_CACHE.get(key)
    if kinds is None or len(kinds) > 200_000:
        kinds = _KIND_CACHE[key] = {}
        _PARTS_CACHE[key] = {}
    return kinds, _PARTS_CACHE[key]


def _surface_kind(surface):
    if surface.isalpha():
        return WORD
    if len(surface) == 1:
        if surface.isdigit():
            return NUMBER
        return PUNCT if surface in _PUNCT_SET else SYMBOL
    if surface == "...":
        return PUNCT
    if "-" in surface:
        return _SPLIT
    if surface.isdigit():
        return NUMBER
    return _chunk_kind(surface)


def _fast_kind(surface, language, compounds, kinds, parts):
    kind = None
    if len(surface) > 1 and surface != "...":
        if "." in surface or "," in surface:
            # a bare decimal is exactly what the exact pattern would produce
            kind = NUMBER if _DECIMAL_RE.fullmatch(surface) else _RESCAN
        elif surface[-1] in "'’":
            stem = surface[:-1]
            if language != "fr" or not stem.isalpha() or stem.lower() in _FR_EXEMPT_STEMS:
                kind = _RESCAN
    if kind is None:
        kind = _surface_kind(surface)
        if kind is _SPLIT:
            split = _split_hyphenated(surface, 0, language, compounds)
            if len(split) == 1:
                kind = split[0][2]
            else:
                parts[surface] = split
    kinds[surface] = kind
    return kind


_SPECIAL = frozenset((_SPLIT, _RESCAN))


def _emit(out, surface, start, kind, language, compounds, split=None):
    if kind is _SPLIT:
        if split is None:
            split = _split_hyphenated(surface, 0, language, compounds)
        for seg, a, k in split:
            a += start
            out[0].append(seg)
            out[1].append(a)
            out[2].append(a + len(seg))
            out[3].append(k)
    else:
        out[0].append(surface)
        out[1].append(start)
        out[2].append(start + len(surface))
        out[3].append(kind)


def _exact_until(text, language, pos, stop, out, compounds):
    """Emit exact-pattern tokens from *pos* until one reaches *stop*; return the end reached."""
    for m in _token_re(language).finditer(text, pos):
        g = m.group()
        _emit(out, g, m.start(), _surface_kind(g), language, compounds)
        pos = m.end()
        if pos >= stop:
            break
    return pos


def _resolve_special(text, language, compounds, surfaces, starts, ends, kinds, special, parts):
    """Replace split/rescan tokens, copying the clean runs between them in bulk."""
    out = ([], [], [], [])
    n = len(surfaces)
    prev = 0
    for idx in special:
        if idx < prev:
            continue  # already covered by an earlier rescan
        for lst, src in zip(out, (surfaces, starts, ends, kinds)):
            lst.extend(src[prev:idx])
        if kinds[idx] is _SPLIT:
            _emit(out, surfaces[idx], starts[idx], _SPLIT, language, compounds, parts.get(surfaces[idx]))
            prev = idx + 1
            continue
        pos = _exact_until(text, language, starts[idx], ends[idx], out, compounds)
        j = idx + 1
        while j < n and starts[j] < pos:
            if ends[j] > pos:
                pos = _exact_until(text, language, pos, ends[j], out, compounds)
            j += 1
        prev = j
    for lst, src in zip(out, (surfaces, starts, ends, kinds)):
        lst.extend(src[prev:])
    return out


def _scan(text, language, compounds, offset):
    """Token fields as parallel lists: surfaces, starts, ends, kinds."""
    surfaces = _FAST_RE.findall(text)
    if not surfaces:
        return [], [], [], []
    starts = []
    push = starts.append
    find = text.find
    pos = 0
    for surface in surfaces:
        # tokens are separated by whitespace only, so the next hit is this token
        pos = find(surface, pos)
        push(pos)
        pos += len(surface)
    ends = list(map(int.__add__, starts, map(len, surfaces)))
    cache, parts = _caches(language, compounds)
    kinds = list(map(cache.get, surfaces))
    if None in kinds:
        kinds = [k if k is not None else (cache.get(s) or _fast_kind(s, language, compounds, cache, parts))
                 for s, k in zip(surfaces, kinds)]
    special = list(compress(range(len(kinds)), map(_SPECIAL.__contains__, kinds)))
    if special:
        surfaces, starts, ends, kinds = _resolve_special(
            text, language, compounds, surfaces, starts, ends, kinds, special, parts)
    if offset:
        starts = list(map(offset.__add__, starts))
        ends = list(map(offset.__add__, ends))
    return surfaces, starts, ends, kinds


def _build(surfaces, starts, ends, kinds, tags):
    return tuple(map(_new_token, repeat(Token), zip(surfaces, starts, ends, kinds, tags)))


def tokenize(text, language="fr", compounds=frozenset(), offset=0):
    """Split *text* into tokens; spans are shifted by *offset*."""
    surfaces, starts, ends, kinds = _scan(text, language, compounds, offset)
    return list(_build(surfaces, starts, ends, kinds, repeat(None)))


def word_count(tokens):
    return sum(1 for t in tokens if t.kind in COUNTED_KINDS)


def load_abbreviations(path=None, language="fr"):
    """Abbreviation list: one entry per line, ``#`` comments, dots ignored."""
    if path is None:
        text = resources.files("reqlint").joinpath(f"data/abbreviations_{language}.txt").read_text("utf-8")
    else:
        with open(path, encoding="utf-8") as fh:
            text = fh.read()
    out = set()
    for line in text.splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.add(line.replace(".", "").lower())
    return frozenset(out)


@lru_cache(maxsize=None)
def default_abbreviations(language):
    return load_abbreviations(None, language)


_LINE_RE = re.compile(r"[^\r\n]+")
_BOUNDARY_RE = re.compile(r"[.!?]+[)\]\"»”’']*(\s+)")
_PRECEDING_WORD_RE = re.compile(r"(\w[\w.]*)$")


def _is_bullet(content):
    return len(content) > 1 and content[0] in BULLET_MARKERS and content[1].isspace()


_has_alnum = re.compile(r"[^\W_]").search


def _boundaries(line, abbreviations):
    """Offsets within *line* where a new sentence starts."""
    cuts = []
    for m in _BOUNDARY_RE.finditer(line):
        nxt = m.end()
        if nxt >= len(line):
            continue
        ch = line[nxt]
        if not (ch.isupper() or ch.isdigit()):
            continue
        punct = m.group()[: m.start(1) - m.start()]
        if punct.startswith(".") and punct.rstrip(")]\"»”’'") == ".":
            w = _PRECEDING_WORD_RE.search(line, 0, m.start())
            if w and w.group(1).replace(".", "").lower() in abbreviations:
                continue
        cuts.append(nxt)
    return cuts


def sentence_spans(text, abbreviations):
    """(start, end, bullet) for each sentence of *text*, whitespace trimmed."""
    spans = []
    for lm in _LINE_RE.finditer(text):
        line = lm.group()
        base = lm.start()
        content = line.strip()
        if not content or not _has_alnum(content):
            continue
        lead = len(line) - len(line.lstrip())
        if _is_bullet(content):
            spans.append((base + lead, base + lead + len(content), True))
            continue
        cuts = _boundaries(line, abbreviations)
        if not cuts:
            spans.append((base + lead, base + lead + len(content), False))
            continue
        prev = lead
        cuts.append(len(line))
        for cut in cuts:
            seg = line[prev:cut]
            stripped = seg.strip()
            if stripped and _has_alnum(stripped):
                s = prev + len(seg) - len(seg.lstrip())
                spans.append((base + s, base + s + len(stripped), False))
            prev = cut
    return spans


def split_sentences(text, language="fr", abbreviations=None, compounds=frozenset(), tagger=None):
    """Sentences of *text*, each tokenized, spans relative to *text*.

    *tagger*, if given, maps (surfaces, kinds) to one tag per token.
    """
    if abbreviations is None:
        abbreviations = default_abbreviations(language)
    spans = sentence_spans(text, abbreviations)
    if not spans:
        return []
    # tokens never straddle a sentence boundary (boundaries sit on whitespace),
    # so the whole text is scanned once and partitioned
    surfaces, starts, ends, kinds = _scan(text, language, compounds, 0)
    sentences = []
    append = sentences.append
    i = 0
    for start, end, bullet in spans:
        i = bisect_left(starts, start, i)
        j = bisect_left(starts, end, i)
        s_surf = surfaces[i:j]
        s_kind = kinds[i:j]
        tags = tagger(s_surf, s_kind) if tagger is not None else repeat(None)
        tokens = _build(s_surf, starts[i:j], ends[i:j], s_kind, tags)
        append(Sentence(text[start:end], tokens, start, end, bullet,
                        s_kind.count(WORD) + s_kind.count(NUMBER)))
        i = j
    return sentences
