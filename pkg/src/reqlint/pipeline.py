"""Segment and tag corpus units (requirements, or a plain body)."""

from __future__ import annotations

import gc
from contextlib import contextmanager
from dataclasses import dataclass

from .lexicon import builtin_lexicon, token_tagger
from .segment import default_abbreviations, split_sentences


@dataclass(frozen=True)
class AnalyzedUnit:
    id: str
    text: str
    language: str
    sentences: tuple  # tagged Sentence objects
    corpus: str = ""


@contextmanager
def gc_paused():
    """Suspend the cyclic collector while building millions of small acyclic objects."""
    was_enabled = gc.isenabled()
    gc.disable()
    try:
        yield
    finally:
        if was_enabled:
            gc.enable()


def analyze_text(text, lexicon, abbreviations=None):
    if abbreviations is None:
        abbreviations = default_abbreviations(lexicon.language)
    compounds = lexicon.compounds
    return tuple(split_sentences(text, lexicon.language, abbreviations, compounds, token_tagger(lexicon)))


def analyze_unit(unit_id, text, lexicon, abbreviations=None, corpus=""):
    return AnalyzedUnit(unit_id, text, lexicon.language, analyze_text(text, lexicon, abbreviations), corpus)


def prepare_corpus(corpus, lexicon=None, abbreviations=None):
    """One AnalyzedUnit per requirement (tagged) or for the whole body (plain)."""
    if lexicon is None:
        lexicon = builtin_lexicon(corpus.language)
    if lexicon.language != corpus.language:
        raise ValueError(f"lexicon language {lexicon.language!r} does not match corpus {corpus.language!r}")
    with gc_paused():
        return [analyze_unit(uid, text, lexicon, abbreviations, corpus.name) for uid, text in corpus.units()]
