"""Requirement checks: combinators, pronouns, sentence length, mixed and/or,
and unconnected bullet lists.

Every conjunction and pronoun gets exactly one classification on the
mandatory / useful / undesirable / ambiguous / non_autonomous scale.
Mandatory uses are info findings that ``run_all`` drops unless asked to
report them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import accumulate, compress
from operator import itemgetter
from types import MappingProxyType
from typing import Mapping

from .errors import ConfigError
from .lexicon import (
    COORDINATOR,
    DEMONSTRATIVE,
    DETERMINERS,
    IMPERSONAL,
    INDEFINITE,
    OTHER,
    PERSONAL_OBJECT,
    PERSONAL_SUBJECT,
    PRONOUN,
    RELATIVE,
    SUBORDINATOR,
    builtin_lexicon,
    fold,
    fold_all,
    normalize,
)
from .pipeline import gc_paused, prepare_corpus
from .segment import COUNTED_KINDS, PUNCT, WORD, word_count

R1 = "R1_combinator"
R2 = "R2_pronoun"
R3 = "R3_long_sentence"
R4 = "R4_mixed_connectives"
R5 = "R5_list_connective"
RULE_IDS = (R1, R2, R3, R4, R5)
RULE_ALIASES = {r.split("_", 1)[0]: r for r in RULE_IDS}

ERROR, WARNING, INFO = "error", "warning", "info"
SEVERITIES = (ERROR, WARNING, INFO)

MANDATORY = "mandatory"
USEFUL = "useful"
UNDESIRABLE = "undesirable"
AMBIGUOUS = "ambiguous"
NON_AUTONOMOUS = "non_autonomous"
CLASSIFICATIONS = (MANDATORY, USEFUL, UNDESIRABLE, AMBIGUOUS, NON_AUTONOMOUS)

DEFAULT_SEVERITY = {
    MANDATORY: INFO,
    USEFUL: INFO,
    UNDESIRABLE: WARNING,
    AMBIGUOUS: WARNING,
    NON_AUTONOMOUS: ERROR,
}

DEFAULT_THRESHOLD = {"fr": 25, "en": 20}


def resolve_rule_id(name):
    name = name.strip()
    if name in RULE_IDS:
        return name
    if name.upper() in RULE_ALIASES:
        return RULE_ALIASES[name.upper()]
    raise ConfigError(f"unknown rule {name!r} (known: {', '.join(RULE_ALIASES)})")


@dataclass(frozen=True)
class Finding:
    rule_id: str
    requirement_id: str
    sentence_index: int
    span: tuple
    severity: str
    classification: str
    message: str
    evidence: tuple = ()
    corpus: str = ""

    def to_dict(self):
        return {
            "rule_id": self.rule_id,
            "requirement_id": self.requirement_id,
            "sentence_index": self.sentence_index,
            "span": list(self.span),
            "severity": self.severity,
            "classification": self.classification,
            "message": self.message,
            "evidence": list(self.evidence),
            "corpus": self.corpus,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            rule_id=d["rule_id"],
            requirement_id=d["requirement_id"],
            sentence_index=d["sentence_index"],
            span=tuple(d["span"]),
            severity=d["severity"],
            classification=d["classification"],
            message=d["message"],
            evidence=tuple(d["evidence"]),
            corpus=d.get("corpus", ""),
        )


@dataclass(frozen=True)
class RuleConfig:
    long_sentence_threshold: int = 25
    report_mandatory: bool = False
    enabled_rules: frozenset = frozenset(RULE_IDS)
    severity_overrides: Mapping[str, str] = field(default_factory=lambda: MappingProxyType({}))

    def __post_init__(self):
        if not isinstance(self.long_sentence_threshold, int) or self.long_sentence_threshold < 1:
            raise ConfigError("long_sentence_threshold must be an integer >= 1")
        unknown = set(self.enabled_rules) - set(RULE_IDS)
        if unknown:
            raise ConfigError(f"unknown rules enabled: {sorted(unknown)}")
        for rule, sev in self.severity_overrides.items():
            if rule not in RULE_IDS or sev not in SEVERITIES:
                raise ConfigError(f"bad severity override {rule}={sev}")

    @classmethod
    def for_language(cls, language, **kw):
        kw.setdefault("long_sentence_threshold", DEFAULT_THRESHOLD[language])
        return cls(**kw)


def parse_config_text(text, language="fr"):
    """``key = value`` lines: long_sentence_threshold, report_mandatory,
    disable, severity.<rule>."""
    threshold = DEFAULT_THRESHOLD[language]
    report_mandatory = False
    disabled = set()
    overrides = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigError(f"config line {lineno}: expected 'key = value': {raw!r}")
        key, value = (p.strip() for p in line.split("=", 1))
        if key == "long_sentence_threshold":
            try:
                threshold = int(value)
            except ValueError:
                raise ConfigError(f"config line {lineno}: threshold must be an integer") from None
        elif key == "report_mandatory":
            if value.lower() not in ("true", "false", "yes", "no", "1", "0"):
                raise ConfigError(f"config line {lineno}: report_mandatory must be a boolean")
            report_mandatory = value.lower() in ("true", "yes", "1")
        elif key == "disable":
            disabled |= {resolve_rule_id(v) for v in value.split(",") if v.strip()}
        elif key.startswith("severity."):
            rule = resolve_rule_id(key[len("severity."):])
            if value not in SEVERITIES:
                raise ConfigError(f"config line {lineno}: unknown severity {value!r}")
            overrides[rule] = value
        else:
            raise ConfigError(f"config line {lineno}: unknown key {key!r}")
    return RuleConfig(
        long_sentence_threshold=threshold,
        report_mandatory=report_mandatory,
        enabled_rules=frozenset(RULE_IDS) - disabled,
        severity_overrides=MappingProxyType(overrides),
    )


def load_config(path, language="fr"):
    with open(path, encoding="utf-8") as fh:
        return parse_config_text(fh.read(), language)


# ---------------------------------------------------------------------------
# language cues

@dataclass(frozen=True)
class Cues:
    interval_open: frozenset
    interval_and: frozenset
    adversative: frozenset
    apodosis: frozenset
    conditional_subs: frozenset
    alternative: frozenset
    alternative_selectors: frozenset
    conjunctive: frozenset
    ordering: frozenset
    infinitive_markers: frozenset
    infinitive_endings: tuple
    complementizers: frozenset
    reflexives: frozenset
    list_coordinators: frozenset
    quantifiers: tuple
    nearest_noun_suffixes: tuple


CUES = {
    "fr": Cues(
        interval_open=frozenset({"entre"}),
        interval_and=frozenset({"et"}),
        adversative=frozenset({"mais"}),
        apodosis=frozenset({"alors"}),
        conditional_subs=frozenset({"si", "s'", "lorsque", "lorsqu'", "quand"}),
        alternative=frozenset({"ou"}),
        alternative_selectors=frozenset({"si", "s'", "sinon", "selon"}),
        conjunctive=frozenset({"et"}),
        ordering=frozenset({"puis", "ensuite", "alors"}),
        infinitive_markers=frozenset({"de", "d'", "à"}),
        infinitive_endings=("er", "ir", "re", "oir"),
        complementizers=frozenset({"que", "qu'"}),
        reflexives=frozenset({"se", "s'"}),
        list_coordinators=frozenset({"et", "ou"}),
        quantifiers=("l'une des", "l'un des", "une des", "un des", "toutes les", "tous les",
                     "au moins", "chacune des", "chacun des"),
        nearest_noun_suffixes=("-ci", "-là"),
    ),
    "en": Cues(
        interval_open=frozenset({"between"}),
        interval_and=frozenset({"and"}),
        adversative=frozenset({"but"}),
        apodosis=frozenset({"then"}),
        conditional_subs=frozenset({"if", "when", "whenever", "unless"}),
        alternative=frozenset({"or"}),
        alternative_selectors=frozenset({"if", "otherwise", "depending", "according", "unless", "whether"}),
        conjunctive=frozenset({"and"}),
        ordering=frozenset({"then", "afterwards", "subsequently", "next"}),
        infinitive_markers=frozenset({"to"}),
        infinitive_endings=("",),
        complementizers=frozenset({"that"}),
        reflexives=frozenset({"itself", "themselves", "himself", "herself"}),
        list_coordinators=frozenset({"and", "or"}),
        quantifiers=("any of", "all of", "one of", "each of", "at least", "either"),
        nearest_noun_suffixes=("latter", "former"),
    ),
}

_OPEN = frozenset("([{")
_CLOSE = frozenset(")]}")
# tokens an interval bound may contain besides words and numbers
_INTERVAL_PUNCT = frozenset("-+")


def _depths(tokens, text=None):
    if text is not None and not any(c in text for c in "([{"):
        return [0] * len(tokens)
    out = []
    d = 0
    for t in tokens:
        if t[3] is PUNCT and t[0] in _CLOSE:
            d = max(0, d - 1)
            out.append(d)
            continue
        out.append(d)
        if t[3] is PUNCT and t[0] in _OPEN:
            d += 1
    return out


def _low(tok):
    return fold(tok[0])


_new = object.__new__


def _finding(rule, unit, si, span, classification, message, evidence=(), severity=None):
    # same result as Finding(...), without the per-field frozen __setattr__ cost
    f = _new(Finding)
    f.__dict__.update(
        rule_id=rule,
        requirement_id=unit.id,
        sentence_index=si,
        span=tuple(span),
        severity=severity or DEFAULT_SEVERITY[classification],
        classification=classification,
        message=message,
        evidence=tuple(evidence),
        corpus=unit.corpus,
    )
    return f


_surface_of = itemgetter(0)
_kind_of = itemgetter(3)
_tag_of = itemgetter(4)
_is_word = WORD.__eq__


def _word_indices(tokens):
    return list(compress(range(len(tokens)), map(_is_word, map(_kind_of, tokens))))


class _SentenceView:
    """Per-sentence precomputation shared by the combinator tests.

    Lists named ``lower``, ``verb``, ``tags`` are indexed by word position k;
    ``pos`` maps a token index to its word position.
    """

    def __init__(self, sentence, lexicon):
        toks = self.tokens = sentence.tokens
        self.depth = _depths(toks, sentence.text)
        self.words = words = _word_indices(toks)
        wtoks = list(map(toks.__getitem__, words))
        surfaces = list(map(_surface_of, wtoks))
        self.tags = list(map(_tag_of, wtoks))
        self.lower = lower = fold_all(surfaces)
        self.pos = dict(zip(words, range(len(words))))
        self.verb = verb = lexicon.verb_flags(surfaces)
        verbs_before = list(accumulate(verb, initial=0))
        self.total_verbs = verbs_before.pop()
        self.verbs_before = verbs_before
        self.lowset = set(lower)
        self.count = sentence.n_words

    def verb_before(self, k):
        return self.verbs_before[k] > 0

    def verb_after(self, k):
        return self.total_verbs - self.verbs_before[k] - self.verb[k] > 0


def _in_interval(view, i, cues):
    """``entre <X> et``: up to four words/numbers between, no break in between."""
    toks = view.tokens
    depth = view.depth
    lexical = 0
    j = i - 1
    while j >= 0:
        t = toks[j]
        if t[3] is PUNCT and t[0] not in _INTERVAL_PUNCT:
            return False
        if depth[j] != depth[i]:
            return False
        if t[3] is WORD and view.lower[view.pos[j]] in cues.interval_open:
            return 1 <= lexical <= 4
        if t[3] in COUNTED_KINDS:
            lexical += 1
            if lexical > 4:
                return False
        j -= 1
    return False


def _next_predicate_is_verb(view, k, lexicon):
    """Next word after position k, skipping object clitics and negation, is a verb cue."""
    for kk in range(k + 1, len(view.words)):
        tag = view.tags[kk]
        if tag is not None and tag.major == PRONOUN and tag.pronoun_subtype == PERSONAL_OBJECT:
            continue
        if view.lower[kk] in ("ne", "n'"):
            continue
        return view.verb[kk]
    return False


def _infinitive_follows(view, k, cues):
    if k + 2 >= len(view.words) or view.lower[k + 1] not in cues.infinitive_markers:
        return False
    nxt = view.lower[k + 2]
    return any(nxt.endswith(e) for e in cues.infinitive_endings)


def _classify_coordinator(view, k, cues, lexicon, config):
    i = view.words[k]
    low = view.lower[k]
    at_top = view.depth[i] == 0
    before, after = view.verb_before(k), view.verb_after(k)
    long_sentence = view.count > config.long_sentence_threshold

    if low in cues.interval_and and _in_interval(view, i, cues):
        return MANDATORY, "coordinator sets the bounds of an interval"
    if low in cues.adversative and before and after:
        return MANDATORY, "coordinator carries logical information between clauses"
    if low in cues.apodosis and any(
            view.lower[w] in cues.conditional_subs and view.tags[w].major == SUBORDINATOR
            for w in range(k)):
        return MANDATORY, "coordinator introduces the consequence of a condition"

    if low in cues.alternative and at_top and not (view.lowset & cues.alternative_selectors):
        return AMBIGUOUS, "alternatives with no criterion for choosing between them"
    if (low in cues.conjunctive and at_top and before and _next_predicate_is_verb(view, k, lexicon)
            and not (view.lowset & cues.ordering)):
        return AMBIGUOUS, "two actions of one subject with no indication of order or simultaneity"
    if at_top and before and after:
        msg = "coordinator joins clauses; multiple requirements should be written"
        if long_sentence:
            msg += f"; sentence exceeds {config.long_sentence_threshold} words, consider a bullet list"
        return UNDESIRABLE, msg
    if low in cues.conjunctive and at_top and before and long_sentence and _infinitive_follows(view, k, cues):
        return UNDESIRABLE, (f"coordinated actions in a sentence over {config.long_sentence_threshold} words; "
                             "multiple requirements should be written, e.g. as a bullet list")
    return USEFUL, "coordination avoids repeating the sentence"


def _classify_subordinator(view, k, cues):
    if view.lower[k] in cues.complementizers:
        return MANDATORY, "complementizer introduces the dependent clause"
    return USEFUL, "subordinate clause states the condition or circumstance"


def _cue_surfaces(lexicon, majors):
    """Surfaces that can carry one of *majors*, with typographic apostrophe variants."""
    key = ("cue_surfaces", majors)
    hit = lexicon._tables.get(key)
    if hit is None:
        out = set()
        for surface, entry in lexicon.entries.items():
            if any(t.major in majors for t in entry.tags):
                for v in (surface, surface[:1].upper() + surface[1:]):
                    out.add(v)
                    out.add(v.replace("'", "’"))
        hit = lexicon._tables[key] = frozenset(out)
    return hit


def _candidates(tokens, surfaces):
    """Token indices whose surface is in *surfaces*."""
    return list(compress(range(len(tokens)), map(surfaces.__contains__, map(_surface_of, tokens))))


def check_combinators(unit, config, lexicon=None):
    lexicon = lexicon or builtin_lexicon(unit.language)
    cues = CUES[unit.language]
    cue_surfaces = _cue_surfaces(lexicon, (COORDINATOR, SUBORDINATOR))
    keep_mandatory = config.report_mandatory
    out = []
    for si, sentence in enumerate(unit.sentences):
        toks = sentence.tokens
        view = None
        for i in _candidates(toks, cue_surfaces):
            tok = toks[i]
            tag = tok[4]
            if tag is None or (tag.major is not COORDINATOR and tag.major is not SUBORDINATOR):
                continue
            if view is None:
                view = _SentenceView(sentence, lexicon)
            k = view.pos[i]
            if tag.major is COORDINATOR:
                cls, msg = _classify_coordinator(view, k, cues, lexicon, config)
            else:
                cls, msg = _classify_subordinator(view, k, cues)
            if cls is MANDATORY and not keep_mandatory:
                continue
            out.append(_finding(R1, unit, si, (tok[1], tok[2]), cls, f"{tag.major} '{tok[0]}': {msg}", (tok[0],)))
    return out


def check_mixed_connectives(unit, config, lexicon=None):
    cues = CUES[unit.language]
    out = []
    for si, sentence in enumerate(unit.sentences):
        toks = sentence.tokens
        hits = [i for i, t in enumerate(toks)
                if t[4] is not None and t[4].major is COORDINATOR and _low(t) in cues.list_coordinators]
        if len(hits) < 2:
            continue
        depth = _depths(toks, sentence.text)
        by_depth = {}
        for i in hits:
            by_depth.setdefault(depth[i], []).append(i)
        for d in sorted(by_depth):
            group = by_depth[d]
            if len({_low(toks[i]) for i in group}) > 1:
                out.append(_finding(
                    R4, unit, si, (toks[group[0]].start, toks[group[-1]].end), AMBIGUOUS,
                    "'and' and 'or' mixed at the same level: operator priority is unclear",
                    [toks[i].surface for i in group]))
                break
    return out


def _ends_with_coordinator(sentence, cues):
    for t in reversed(sentence.tokens):
        if t.kind is PUNCT:
            continue
        return t.kind is WORD and _low(t) in cues.list_coordinators
    return False


def check_list_connectives(unit, config, lexicon=None):
    cues = CUES[unit.language]
    out = []
    sents = unit.sentences
    for si, intro in enumerate(sents):
        if intro.bullet or not intro.text.endswith(":"):
            continue
        items = []
        j = si + 1
        while j < len(sents) and sents[j].bullet:
            items.append(sents[j])
            j += 1
        if len(items) < 2:
            continue
        if _ends_with_coordinator(items[-2], cues):
            continue
        intro_low = normalize(intro.text).lower()
        if any(q in intro_low for q in cues.quantifiers):
            continue
        out.append(_finding(
            R5, unit, si, intro.source_span, AMBIGUOUS,
            f"list of {len(items)} items with no coordinator between items: "
            "and-or list ambiguity (must all conditions hold, or any of them?)",
            [":"] + [s.text[0] for s in items]))
    return out


def _is_antecedent(tokens, words, k, low, lexicon, determiners):
    tok = tokens[words[k]]
    tag = tok.tag
    if tag is None or tag.major != OTHER or low in determiners or lexicon.is_verb_cue(tok.surface):
        return False
    if k > 0:
        prev = tokens[words[k - 1]]
        if fold(prev.surface) in determiners and prev.tag.major == OTHER:
            return True
        return tok.surface[:1].isupper()
    return False


def _classify_pronoun(tok, low, first_word, antecedent, cues):
    sub = tok.tag.pronoun_subtype
    if sub in (RELATIVE, IMPERSONAL) or low in cues.reflexives:
        kind = {RELATIVE: "relative", IMPERSONAL: "impersonal"}.get(sub, "reflexive")
        return MANDATORY, f"{kind} pronoun '{tok.surface}' cannot be replaced by a noun"
    if sub in (PERSONAL_SUBJECT, DEMONSTRATIVE):
        if first_word or not antecedent:
            return NON_AUTONOMOUS, (f"pronoun '{tok.surface}' has no antecedent in this requirement; "
                                    "the requirement is not autonomous, repeat the noun")
        msg = f"pronoun '{tok.surface}' refers to a noun earlier in the requirement"
        if sub == DEMONSTRATIVE and low.endswith(cues.nearest_noun_suffixes):
            msg += "; nearest-noun reference"
        return USEFUL, msg
    if sub == PERSONAL_OBJECT:
        if antecedent:
            return USEFUL, f"pronoun '{tok.surface}' refers to a noun earlier in the requirement"
        return AMBIGUOUS, f"object pronoun '{tok.surface}' has no antecedent in this requirement"
    return USEFUL, f"indefinite pronoun '{tok.surface}' needs no antecedent"


def check_pronouns(unit, config, lexicon=None):
    lexicon = lexicon or builtin_lexicon(unit.language)
    cues = CUES[unit.language]
    determiners = DETERMINERS[unit.language]
    keep_mandatory = config.report_mandatory
    out = []
    antecedent = False
    for si, sentence in enumerate(unit.sentences):
        toks = sentence.tokens
        if antecedent:
            # only pronouns matter once an antecedent has been seen
            for tok in toks:
                tag = tok[4]
                if tag is not None and tag.major == PRONOUN:
                    cls, msg = _classify_pronoun(tok, _low(tok), False, True, cues)
                    if cls is MANDATORY and not keep_mandatory:
                        continue
                    out.append(_finding(R2, unit, si, tok.span, cls, msg, [tok.surface]))
            continue
        words = [i for i, t in enumerate(toks) if t[3] is WORD]
        for k, i in enumerate(words):
            tok = toks[i]
            low = _low(tok)
            if tok.tag.major != PRONOUN:
                if not antecedent and _is_antecedent(toks, words, k, low, lexicon, determiners):
                    antecedent = True
                continue
            cls, msg = _classify_pronoun(tok, low, si == 0 and k == 0, antecedent, cues)
            if cls is MANDATORY and not keep_mandatory:
                continue
            out.append(_finding(R2, unit, si, tok.span, cls, msg, [tok.surface]))
    return out


def check_sentence_length(unit, config, lexicon=None):
    out = []
    limit = config.long_sentence_threshold
    for si, sentence in enumerate(unit.sentences):
        n = sentence.n_words
        if n > limit:
            out.append(_finding(R3, unit, si, sentence.source_span, UNDESIRABLE,
                                f"sentence has {n} words (limit {limit})"))
    return out


CHECKS = (
    (R1, check_combinators),
    (R2, check_pronouns),
    (R3, check_sentence_length),
    (R4, check_mixed_connectives),
    (R5, check_list_connectives),
)
_RULE_ORDER = {r: n for n, r in enumerate(RULE_IDS)}


def check_unit(unit, config, lexicon=None):
    """All enabled checks for one analyzed unit, before filtering/overrides."""
    lexicon = lexicon or builtin_lexicon(unit.language)
    out = []
    for rule, check in CHECKS:
        if rule in config.enabled_rules:
            out.extend(check(unit, config, lexicon))
    return out


def finalize(findings, config, corpus_name=""):
    out = []
    for f in findings:
        if f.classification == MANDATORY:
            if not config.report_mandatory:
                continue
        elif f.rule_id in config.severity_overrides:
            f = Finding(f.rule_id, f.requirement_id, f.sentence_index, f.span,
                        config.severity_overrides[f.rule_id], f.classification, f.message, f.evidence, f.corpus)
        if corpus_name and f.corpus != corpus_name:
            f = Finding(f.rule_id, f.requirement_id, f.sentence_index, f.span,
                        f.severity, f.classification, f.message, f.evidence, corpus_name)
        out.append(f)
    return out


def findings_for_units(units, config, lexicon, corpus_name=""):
    keyed = []
    with gc_paused():
        for n, unit in enumerate(units):
            for f in check_unit(unit, config, lexicon):
                keyed.append(((n, f.sentence_index, f.span[0], _RULE_ORDER[f.rule_id], f.span[1]), f))
        keyed.sort(key=lambda kf: kf[0])
        return finalize([f for _, f in keyed], config, corpus_name)


def run_all(corpus, lexicon=None, config=None, abbreviations=None):
    """Findings for every requirement, in requirement / sentence / span order."""
    lexicon = lexicon or builtin_lexicon(corpus.language)
    config = config or RuleConfig.for_language(corpus.language)
    units = prepare_corpus(corpus, lexicon, abbreviations)
    return findings_for_units(units, config, lexicon, corpus.name)
