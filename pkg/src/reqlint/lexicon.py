"""Closed-class lexicons and the contextual tagger.

A lexicon maps surfaces to their possible category tags. Unambiguous hits
are tagged directly; ambiguous surfaces go through a fixed, ordered set of
context rules (first match wins), so tagging is deterministic and local to
one sentence.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from itertools import compress, repeat
from importlib import resources
from types import MappingProxyType
from typing import Mapping, Optional

from .errors import MalformedLexiconLine, UnknownCategory
from .segment import WORD, Sentence

COORDINATOR = "coordinator"
SUBORDINATOR = "subordinator"
PRONOUN = "pronoun"
OTHER = "other"
MAJORS = (COORDINATOR, SUBORDINATOR, PRONOUN, OTHER)

PERSONAL_SUBJECT = "personal_subject"
PERSONAL_OBJECT = "personal_object"
IMPERSONAL = "impersonal"
RELATIVE = "relative"
DEMONSTRATIVE = "demonstrative"
INDEFINITE = "indefinite"
SUBTYPES = (PERSONAL_SUBJECT, PERSONAL_OBJECT, IMPERSONAL, RELATIVE, DEMONSTRATIVE, INDEFINITE)

LEXICON_UNAMBIGUOUS = "lexicon_unambiguous"
CONTEXT_RULE = "context_rule"
DEFAULT = "default"


@dataclass(frozen=True)
class CategoryTag:
    major: str
    pronoun_subtype: Optional[str] = None
    provenance: str = DEFAULT

    def __post_init__(self):
        if self.major not in MAJORS:
            raise ValueError(f"unknown major category {self.major!r}")
        if (self.major == PRONOUN) != (self.pronoun_subtype is not None):
            raise ValueError("pronoun_subtype is required for pronouns and forbidden otherwise")
        if self.pronoun_subtype is not None and self.pronoun_subtype not in SUBTYPES:
            raise ValueError(f"unknown pronoun subtype {self.pronoun_subtype!r}")

    def with_provenance(self, provenance):
        return category(self.major, self.pronoun_subtype, provenance)


_CANONICAL = {v: v for v in MAJORS + SUBTYPES + (LEXICON_UNAMBIGUOUS, CONTEXT_RULE, DEFAULT)}


@lru_cache(maxsize=None)
def category(major, subtype=None, provenance=DEFAULT):
    """Interned tag; field values are the module constants, so ``is`` comparisons hold."""
    c = _CANONICAL.get
    return CategoryTag(c(major, major), c(subtype, subtype), c(provenance, provenance))


OTHER_DEFAULT = category(OTHER, None, DEFAULT)


@dataclass(frozen=True)
class LexEntry:
    tags: tuple  # possible tags, in file order
    ambiguous: bool
    direct: Optional[CategoryTag] = field(default=None, compare=False)

    def __post_init__(self):
        if not self.ambiguous:
            object.__setattr__(self, "direct", self.tags[0].with_provenance(LEXICON_UNAMBIGUOUS))


def normalize(surface):
    return surface.replace("’", "'")


_FOLD_CACHE = {}


def fold(surface):
    """Lowercased surface with typographic apostrophes straightened."""
    key = _FOLD_CACHE.get(surface)
    if key is None:
        key = normalize(surface).lower()
        if len(_FOLD_CACHE) > 200_000:
            _FOLD_CACHE.clear()
        _FOLD_CACHE[surface] = key
    return key


def fold_all(surfaces):
    keys = list(map(_FOLD_CACHE.get, surfaces))
    if None in keys:
        keys = [k if k is not None else fold(s) for s, k in zip(surfaces, keys)]
    return keys


@dataclass(frozen=True)
class Lexicon:
    language: str
    entries: Mapping[str, LexEntry]
    verb_forms: frozenset
    verb_suffixes: tuple
    impersonal_adjectives: frozenset
    _verb_cache: dict = field(default_factory=dict, compare=False, repr=False)
    _index: dict = field(default_factory=dict, compare=False, repr=False)
    compounds: frozenset = field(default=frozenset(), compare=False, repr=False)
    _tables: dict = field(default_factory=dict, compare=False, repr=False)

    def __post_init__(self):
        self._index.update(self.entries)
        # hyphenated closed-class words the tokenizer keeps whole
        object.__setattr__(self, "compounds", frozenset(s.lower() for s in self.entries if "-" in s))

    def lookup(self, surface, sentence_initial=False):
        key = normalize(surface) if "’" in surface else surface
        entry = self._index.get(key)
        if entry is None and sentence_initial and key:
            entry = self._index.get(key[0].lower() + key[1:])
        return entry

    def is_verb_cue(self, surface):
        hit = self._verb_cache.get(surface)
        if hit is None:
            hit = self._verb_cue(surface)
            self._verb_cache[surface] = hit
        return hit

    def verb_flags(self, surfaces):
        flags = list(map(self._verb_cache.get, surfaces))
        if None in flags:
            flags = [f if f is not None else self.is_verb_cue(s) for s, f in zip(surfaces, flags)]
        return flags

    def _verb_cue(self, surface):
        s = normalize(surface)
        forms = self.verb_forms
        if s in forms or (s[:1].lower() + s[1:]) in forms:
            return True
        if "-" in s:
            # ré-initialise, auto-détecte
            return self._verb_cue(s.rsplit("-", 1)[1])
        if not s.islower() or s in self.entries:
            return False
        return any(len(s) > len(suf) + 1 and s.endswith(suf) for suf in self.verb_suffixes)


# ---------------------------------------------------------------------------
# loading


def _parse_lexicon_text(text):
    entries = {}
    ambiguous = set()
    verb_forms = set()
    verb_suffixes = []
    adjectives = set()
    section = "entries"
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip("\r")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        stripped = line.strip()
        if stripped.startswith("[") and stripped.endswith("]"):
            name = stripped[1:-1].strip()
            if name not in ("entries", "verb_cues", "impersonal_adjectives"):
                raise MalformedLexiconLine("unknown section", lineno, line)
            section = name
            continue
        if section == "verb_cues":
            if "\t" in stripped or " " in stripped:
                raise MalformedLexiconLine("verb cue must be a single form", lineno, line)
            if stripped.startswith("*"):
                if len(stripped) < 2:
                    raise MalformedLexiconLine("empty suffix pattern", lineno, line)
                verb_suffixes.append(stripped[1:])
            else:
                verb_forms.add(normalize(stripped))
            continue
        if section == "impersonal_adjectives":
            if "\t" in stripped or " " in stripped:
                raise MalformedLexiconLine("adjective must be a single form", lineno, line)
            adjectives.add(normalize(stripped))
            continue

        fields = line.split("\t")
        if len(fields) < 2 or any(not f.strip() for f in fields):
            raise MalformedLexiconLine("expected surface<TAB>major[<TAB>subtype][<TAB>ambiguous]", lineno, line)
        surface, major, *rest = (f.strip() for f in fields)
        if major not in MAJORS:
            raise UnknownCategory(f"unknown category {major!r}", lineno, line)
        subtype = None
        amb = False
        for extra in rest:
            if extra == "ambiguous":
                amb = True
            elif extra in SUBTYPES:
                if major != PRONOUN or subtype is not None:
                    raise MalformedLexiconLine("pronoun subtype only allowed once, on pronouns", lineno, line)
                subtype = extra
            else:
                raise UnknownCategory(f"unknown subtype or flag {extra!r}", lineno, line)
        if major == PRONOUN and subtype is None:
            raise MalformedLexiconLine("pronoun entry needs a subtype", lineno, line)
        surface = normalize(surface)
        tags = entries.setdefault(surface, [])
        tag = category(major, subtype, DEFAULT)
        if tag not in tags:
            tags.append(tag)
        if amb:
            ambiguous.add(surface)
    return entries, ambiguous, verb_forms, verb_suffixes, adjectives


def _builtin_text(language):
    return resources.files("reqlint").joinpath(f"data/lexicon_{language}.tsv").read_text("utf-8")


def load_lexicon(path=None, language="fr", builtin=True):
    """Build a lexicon from the builtin data, overlaid with the file at *path*.

    User entries replace builtin entries for the same surface; verb cues and
    impersonal adjectives from the file are added to the builtin sets.
    """
    if language not in ("fr", "en"):
        raise ValueError(f"unsupported language {language!r}")
    entries, ambiguous, forms, suffixes, adjectives = {}, set(), set(), [], set()
    sources = []
    if builtin:
        sources.append(_builtin_text(language))
    if path is not None:
        with open(path, encoding="utf-8") as fh:
            sources.append(fh.read())
    for text in sources:
        e, a, f, s, adj = _parse_lexicon_text(text)
        for surface, tags in e.items():
            entries[surface] = tags
            ambiguous.discard(surface)
        ambiguous |= a
        forms |= f
        suffixes += [x for x in s if x not in suffixes]
        adjectives |= adj
    frozen = {
        s: LexEntry(tuple(tags), s in ambiguous or len(tags) > 1)
        for s, tags in entries.items()
    }
    return Lexicon(
        language=language,
        entries=MappingProxyType(frozen),
        verb_forms=frozenset(forms),
        verb_suffixes=tuple(suffixes),
        impersonal_adjectives=frozenset(adjectives),
    )


@lru_cache(maxsize=None)
def builtin_lexicon(language):
    return load_lexicon(None, language)


# ---------------------------------------------------------------------------
# context rules

FR_NEGATION = frozenset(("ne", "n'", "pas", "plus", "jamais"))
FR_IMPERSONAL_VERBS = frozenset(("faut", "faudra", "fallait", "suffit", "convient", "importe"))
FR_ETRE = frozenset(("est", "sera", "serait", "était", "fut"))
FR_AVOIR_AFTER_Y = frozenset(("a", "aura", "avait", "aurait"))
FR_NE = frozenset(("ne", "n'"))
# "si grand", "si souvent": intensifier, not a conjunction
FR_SI_INTENSIFIERS = frozenset("""grand grande grands grandes petit petite petits petites peu bien souvent
long longue longs longues longtemps rapide rapides rapidement lent lente lents lentes lentement fort forte
faible faibles élevé élevée élevés élevées important importante importants importantes nombreux nombreuses
tard tôt vite loin près haut haute bas basse simple complexe""".split())

EN_SKIP = frozenset(("not", "never", "will", "shall", "would", "should", "must", "also"))
EN_BE = frozenset(("is", "be", "was", "were", "are"))
EN_IMPERSONAL_VERBS = frozenset(("seems", "appears"))

DETERMINERS = {
    "fr": frozenset("""le la les l' un une des du au aux ce cet cette ces son sa ses leur leurs mon ma mes
notre nos votre vos chaque tout toute tous toutes plusieurs aucun aucune quelques certains certaines""".split()),
    "en": frozenset("""the a an this that these those each every any its their his her our your some all no
another""".split()),
}


def _tag(major, subtype=None):
    return category(major, subtype, CONTEXT_RULE)


class _Context:
    __slots__ = ("lex", "surfaces", "_lower", "tags", "n")

    def __init__(self, lex, surfaces):
        self.lex = lex
        self.surfaces = surfaces
        self._lower = None
        self.tags = []
        self.n = len(surfaces)

    @property
    def lower(self):
        if self._lower is None:
            self._lower = fold_all(self.surfaces)
        return self._lower

    def prev_tag(self, k):
        return self.tags[k - 1] if k > 0 else None

    def next_is_verb(self, k):
        return k + 1 < self.n and self.lex.is_verb_cue(self.surfaces[k + 1])

    def prev_is_verb(self, k):
        return k > 0 and self.lex.is_verb_cue(self.surfaces[k - 1])


def _fr_que(ctx, k):
    prev = ctx.prev_tag(k)
    if prev is not None and prev.major == OTHER and not ctx.prev_is_verb(k):
        return _tag(PRONOUN, RELATIVE)
    return _tag(SUBORDINATOR)


def _fr_clitic_object(ctx, k):
    prev = ctx.prev_tag(k)
    if k > 0 and ((prev.major == PRONOUN and prev.pronoun_subtype == PERSONAL_SUBJECT)
                  or ctx.lower[k - 1] in FR_NE):
        return _tag(PRONOUN, PERSONAL_OBJECT)
    if ctx.next_is_verb(k):
        return _tag(PRONOUN, PERSONAL_OBJECT)
    return _tag(OTHER)


def _fr_y(ctx, k):
    prev = ctx.prev_tag(k)
    if prev is not None and prev.pronoun_subtype == IMPERSONAL:
        return _tag(PRONOUN, IMPERSONAL)
    return _fr_clitic_object(ctx, k)


def _fr_il(ctx, k):
    low = ctx.lower
    j = k + 1
    budget = 2
    while j < ctx.n and budget and low[j] in FR_NEGATION:
        j += 1
        budget -= 1
    if j < ctx.n:
        w = low[j]
        if w in FR_IMPERSONAL_VERBS:
            return _tag(PRONOUN, IMPERSONAL)
        if w == "s'" and j + 1 < ctx.n and low[j + 1] == "agit":
            return _tag(PRONOUN, IMPERSONAL)
        if w == "y" and j + 1 < ctx.n and low[j + 1] in FR_AVOIR_AFTER_Y:
            return _tag(PRONOUN, IMPERSONAL)
        if w in FR_ETRE:
            j += 1
            while j < ctx.n and budget and low[j] in FR_NEGATION:
                j += 1
                budget -= 1
            if j < ctx.n and normalize(ctx.surfaces[j]) in ctx.lex.impersonal_adjectives:
                return _tag(PRONOUN, IMPERSONAL)
    return _tag(PRONOUN, PERSONAL_SUBJECT)


def _fr_si(ctx, k):
    if k + 1 < ctx.n and ctx.lower[k + 1] in FR_SI_INTENSIFIERS:
        return _tag(OTHER)
    return _tag(SUBORDINATOR)


def _fr_s_elided(ctx, k):
    # s'il / s'ils is the elided "si"; otherwise reflexive
    if k + 1 < ctx.n and ctx.lower[k + 1] in ("il", "ils"):
        return _tag(SUBORDINATOR)
    return _tag(PRONOUN, PERSONAL_OBJECT)


def _en_that(ctx, k):
    if ctx.prev_is_verb(k):
        return _tag(SUBORDINATOR)
    prev = ctx.prev_tag(k)
    if prev is not None and prev.major == OTHER:
        return _tag(PRONOUN, RELATIVE)
    if ctx.next_is_verb(k):
        return _tag(PRONOUN, DEMONSTRATIVE)
    if k + 1 < ctx.n and ctx.lex.lookup(ctx.surfaces[k + 1]) is None:
        return _tag(OTHER)
    return _tag(PRONOUN, DEMONSTRATIVE)


def _en_this(ctx, k):
    if k + 1 >= ctx.n or ctx.next_is_verb(k):
        return _tag(PRONOUN, DEMONSTRATIVE)
    return _tag(OTHER)


def _en_it(ctx, k):
    low = ctx.lower
    j = k + 1
    budget = 2
    while j < ctx.n and budget and low[j] in EN_SKIP:
        j += 1
        budget -= 1
    if j < ctx.n:
        w = low[j]
        if w in EN_IMPERSONAL_VERBS:
            return _tag(PRONOUN, IMPERSONAL)
        if w in EN_BE:
            j += 1
            while j < ctx.n and budget and low[j] in EN_SKIP:
                j += 1
                budget -= 1
            if j < ctx.n and low[j] in ctx.lex.impersonal_adjectives:
                return _tag(PRONOUN, IMPERSONAL)
    return _tag(PRONOUN, PERSONAL_SUBJECT)


CONTEXT_RULES = {
    "fr": {
        "que": _fr_que, "qu'": _fr_que,
        "le": _fr_clitic_object, "la": _fr_clitic_object, "les": _fr_clitic_object,
        "l'": _fr_clitic_object, "leur": _fr_clitic_object, "en": _fr_clitic_object,
        "y": _fr_y,
        "il": _fr_il, "ils": _fr_il,
        "si": _fr_si,
        "s'": _fr_s_elided,
    },
    "en": {
        "that": _en_that,
        "this": _en_this, "these": _en_this, "those": _en_this,
        "it": _en_it,
    },
}


def _fallback(entry):
    return entry.tags[0].with_provenance(CONTEXT_RULE)


def _fast_tables(lexicon):
    """Surface -> tag for unambiguous entries, plus the ambiguous surfaces."""
    tables = lexicon._tables
    if not tables:
        direct = {}
        ambiguous = set()
        for surface, entry in lexicon._index.items():
            variants = {surface, surface.replace("'", "’")}
            if entry.direct is not None:
                for v in variants:
                    direct[v] = entry.direct
            else:
                ambiguous |= variants
        tables["direct"] = direct
        tables["ambiguous"] = frozenset(ambiguous)
    return tables["direct"], tables["ambiguous"]


_WORD_DEFAULT = {WORD: OTHER_DEFAULT}.get
_is_word = WORD.__eq__


def _resolve(surfaces, tags, lexicon, ambiguous):
    """Fill in context-dependent tags in place; *tags* holds the direct lookups.

    Returns the word positions whose tag changed.
    """
    changed = []
    if tags[0] is OTHER_DEFAULT:
        entry = lexicon.lookup(surfaces[0], sentence_initial=True)
        if entry is not None:
            if entry.direct is not None:
                tags[0] = entry.direct
                changed.append(0)
            else:
                tags[0] = None
    pending = [k for k, s in enumerate(surfaces) if s in ambiguous or tags[k] is None]
    if not pending:
        return changed
    ctx = _Context(lexicon, surfaces)
    ctx.tags = tags
    rules = CONTEXT_RULES.get(lexicon.language, {})
    for k in pending:
        rule = rules.get(ctx.lower[k])
        if rule is not None:
            tags[k] = rule(ctx, k)
        else:
            tags[k] = _fallback(lexicon.lookup(surfaces[k], sentence_initial=(k == 0)))
        changed.append(k)
    return changed


def tag_words(surfaces, lexicon: Lexicon):
    """Tags for the word surfaces of one sentence, in order."""
    if not surfaces:
        return []
    direct, ambiguous = _fast_tables(lexicon)
    tags = list(map(direct.get, surfaces, repeat(OTHER_DEFAULT)))
    _resolve(surfaces, tags, lexicon, ambiguous)
    return tags


def token_tagger(lexicon: Lexicon):
    """Callable mapping token (surfaces, kinds) to tags; non-words get None."""
    direct, ambiguous = _fast_tables(lexicon)
    lookup = lexicon.lookup

    def tagger(surfaces, kinds):
        # every token containing a letter is a word, and every entry has a letter,
        # so a direct hit can only land on a word token
        tags = list(map(direct.get, surfaces, map(_WORD_DEFAULT, kinds)))
        if ambiguous.isdisjoint(surfaces):
            try:
                first = kinds.index(WORD)
            except ValueError:
                return tags
            if tags[first] is not OTHER_DEFAULT or lookup(surfaces[first], sentence_initial=True) is None:
                return tags
        idx = list(compress(range(len(kinds)), map(_is_word, kinds)))
        wtags = list(map(tags.__getitem__, idx))
        for k in _resolve(list(map(surfaces.__getitem__, idx)), wtags, lexicon, ambiguous):
            tags[idx[k]] = wtags[k]
        return tags
    return tagger


def tag_tokens(sentence: Sentence, lexicon: Lexicon) -> Sentence:
    """Return *sentence* with every word token carrying a CategoryTag."""
    tokens = sentence.tokens
    tags = token_tagger(lexicon)([t[0] for t in tokens], [t[3] for t in tokens])
    out = tuple(tok._replace(tag=tag) for tok, tag in zip(tokens, tags))
    return Sentence(sentence.text, out, sentence.start, sentence.end, sentence.bullet, sentence.n_words)
