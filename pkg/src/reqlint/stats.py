"""Genre statistics: conjunction and pronoun frequencies, sentence lengths.

All ratios are computed on exact fractions and rounded half-up only when
rendered, so the displayed values never depend on float representation.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import permutations
from typing import Optional

from .errors import EmptyCorpus, TargetTooSmall
from .lexicon import COORDINATOR, PRONOUN, SUBORDINATOR, builtin_lexicon
from .pipeline import gc_paused, prepare_corpus
from .rules import RuleConfig

COUNT_KEYS = ("coordinator", "subordinator", "conjunction_total", "pronoun")


def round_half_up(value, places=0):
    """Exact half-up rounding of a non-negative rational; returns an int scaled by 10**places."""
    value = Fraction(value)
    if value < 0:
        raise ValueError("negative values are not rounded here")
    scaled = value * 10 ** places
    return int(scaled + Fraction(1, 2))


def format_fixed(value, places):
    """Render *value* half-up rounded with exactly *places* decimals."""
    n = round_half_up(value, places)
    if places == 0:
        return str(n)
    whole, frac = divmod(n, 10 ** places)
    return f"{whole}.{frac:0{places}d}"


def percent(part, whole):
    return Fraction(part * 100, whole)


@dataclass(frozen=True)
class CorpusStats:
    corpus_name: str
    total_words: int
    counts: dict
    percentages: dict
    sentence_count: int
    long_sentence_count: int
    long_sentence_percent: str
    avg_sentence_length: int
    threshold_used: int

    @classmethod
    def from_counts(cls, corpus_name, total_words, coordinator, subordinator, pronoun,
                    sentence_count, long_sentence_count, threshold_used):
        if total_words <= 0 or sentence_count <= 0:
            raise EmptyCorpus(f"corpus {corpus_name!r} has no words")
        counts = {
            "coordinator": coordinator,
            "subordinator": subordinator,
            "conjunction_total": coordinator + subordinator,
            "pronoun": pronoun,
        }
        return cls(
            corpus_name=corpus_name,
            total_words=total_words,
            counts=counts,
            percentages={k: format_fixed(percent(v, total_words), 2) for k, v in counts.items()},
            sentence_count=sentence_count,
            long_sentence_count=long_sentence_count,
            long_sentence_percent=format_fixed(percent(long_sentence_count, sentence_count), 1),
            avg_sentence_length=round_half_up(Fraction(total_words, sentence_count)),
            threshold_used=threshold_used,
        )

    def frequency(self, key):
        """Exact occurrences per word for a count key."""
        return Fraction(self.counts[key], self.total_words)

    def to_dict(self):
        return {
            "corpus_name": self.corpus_name,
            "total_words": self.total_words,
            "counts": dict(self.counts),
            "percentages": dict(self.percentages),
            "sentence_count": self.sentence_count,
            "long_sentence_count": self.long_sentence_count,
            "long_sentence_percent": self.long_sentence_percent,
            "avg_sentence_length": self.avg_sentence_length,
            "threshold_used": self.threshold_used,
        }

    @classmethod
    def from_dict(cls, d):
        return cls(
            corpus_name=d["corpus_name"],
            total_words=d["total_words"],
            counts=dict(d["counts"]),
            percentages=dict(d["percentages"]),
            sentence_count=d["sentence_count"],
            long_sentence_count=d["long_sentence_count"],
            long_sentence_percent=d["long_sentence_percent"],
            avg_sentence_length=d["avg_sentence_length"],
            threshold_used=d["threshold_used"],
        )


def combine(parts, corpus_name=None):
    """Stats of the concatenation of corpora: raw counts add, ratios are recomputed."""
    parts = list(parts)
    if not parts:
        raise EmptyCorpus("nothing to combine")
    thresholds = {p.threshold_used for p in parts}
    if len(thresholds) != 1:
        raise ValueError("cannot combine stats computed with different long-sentence thresholds")
    return CorpusStats.from_counts(
        corpus_name if corpus_name is not None else "+".join(p.corpus_name for p in parts),
        sum(p.total_words for p in parts),
        sum(p.counts["coordinator"] for p in parts),
        sum(p.counts["subordinator"] for p in parts),
        sum(p.counts["pronoun"] for p in parts),
        sum(p.sentence_count for p in parts),
        sum(p.long_sentence_count for p in parts),
        thresholds.pop(),
    )


def count_units(units, threshold):
    """Raw tallies over analyzed units: words, majors, sentences, long sentences."""
    words = coord = sub = pron = sentences = long_ = 0
    for unit in units:
        for sentence in unit.sentences:
            n = sentence.n_words
            words += n
            sentences += 1
            if n > threshold:
                long_ += 1
            for tok in sentence.tokens:
                tag = tok[4]
                if tag is None:
                    continue
                major = tag.major
                if major is COORDINATOR:
                    coord += 1
                elif major is SUBORDINATOR:
                    sub += 1
                elif major is PRONOUN:
                    pron += 1
    return words, coord, sub, pron, sentences, long_


def compute_stats(corpus, lexicon=None, config: Optional[RuleConfig] = None, units=None, abbreviations=None):
    """CorpusStats for one corpus; *units* may be passed to reuse an earlier analysis."""
    lexicon = lexicon or builtin_lexicon(corpus.language)
    config = config or RuleConfig.for_language(corpus.language)
    if units is None:
        units = prepare_corpus(corpus, lexicon, abbreviations)
    threshold = config.long_sentence_threshold
    with gc_paused():
        words, coord, sub, pron, sentences, long_ = count_units(units, threshold)
    if words == 0:
        raise EmptyCorpus(f"corpus {corpus.name!r} has no words")
    return CorpusStats.from_counts(corpus.name, words, coord, sub, pron, sentences, long_, threshold)


def unit_word_counts(corpus, lexicon=None, abbreviations=None):
    """Word count of each requirement (tagged) or of each sentence (plain), with its end offset."""
    lexicon = lexicon or builtin_lexicon(corpus.language)
    units = prepare_corpus(corpus, lexicon, abbreviations)
    if corpus.mode == "tagged":
        return [(sum(s.n_words for s in u.sentences), None) for u in units]
    return [(s.n_words, s.end) for s in units[0].sentences]


def truncate_corpus(corpus, target_words, lexicon=None, abbreviations=None):
    """Longest prefix of whole units whose word count does not exceed *target_words*."""
    if target_words < 1:
        raise ValueError("target_words must be at least 1")
    sizes = unit_word_counts(corpus, lexicon, abbreviations)
    kept = 0
    total = 0
    for n, _ in sizes:
        if total + n > target_words:
            break
        total += n
        kept += 1
    if kept == len(sizes):
        return corpus
    if kept == 0:
        raise TargetTooSmall(
            f"first unit of {corpus.name!r} has {sizes[0][0]} words, more than the target {target_words}")
    if corpus.mode == "tagged":
        return replace(corpus, requirements=corpus.requirements[:kept], diagnostics=())
    return replace(corpus, body=corpus.body[:sizes[kept - 1][1]])


def corpus_word_count(corpus, lexicon=None, abbreviations=None):
    return sum(n for n, _ in unit_word_counts(corpus, lexicon, abbreviations))


@dataclass(frozen=True)
class FrequencyRatio:
    numerator: str
    denominator: str
    category: str
    value: Optional[Fraction]  # None when the denominator corpus has no occurrence

    def to_dict(self):
        return {
            "numerator": self.numerator,
            "denominator": self.denominator,
            "category": self.category,
            "ratio": None if self.value is None else format_fixed(self.value, 2),
        }


@dataclass(frozen=True)
class ComparisonTable:
    rows: tuple
    ratios: tuple = field(default=())

    def ratio(self, numerator, denominator, category):
        for r in self.ratios:
            if (r.numerator, r.denominator, r.category) == (numerator, denominator, category):
                return r.value
        raise KeyError((numerator, denominator, category))

    def to_dict(self):
        return {"rows": [r.to_dict() for r in self.rows], "ratios": [r.to_dict() for r in self.ratios]}


def compare_corpora(stats_list):
    """One row per corpus plus frequency ratios for every ordered pair of corpora."""
    rows = tuple(stats_list)
    if len(rows) < 2:
        raise ValueError("comparison needs at least two corpora")
    ratios = []
    for a, b in permutations(rows, 2):
        for key in COUNT_KEYS:
            fb = b.frequency(key)
            ratios.append(FrequencyRatio(a.corpus_name, b.corpus_name, key,
                                         None if fb == 0 else a.frequency(key) / fb))
    return ComparisonTable(rows, tuple(ratios))
