import pytest

from reqlint.errors import MalformedLexiconLine, UnknownCategory
from reqlint.lexicon import (
    CONTEXT_RULE,
    COORDINATOR,
    IMPERSONAL,
    LEXICON_UNAMBIGUOUS,
    OTHER,
    PERSONAL_OBJECT,
    PERSONAL_SUBJECT,
    PRONOUN,
    RELATIVE,
    SUBORDINATOR,
    DEMONSTRATIVE,
    CategoryTag,
    builtin_lexicon,
    load_lexicon,
    tag_tokens,
    tag_words,
)
from reqlint.segment import WORD, split_sentences, tokenize


def tags(text, language="fr", lex=None):
    lex = lex or builtin_lexicon(language)
    words = [t.surface for t in tokenize(text, language, lex.compounds) if t.kind == WORD]
    return {w: (t.major, t.pronoun_subtype) for w, t in zip(words, tag_words(words, lex))
            if t.major != OTHER}


def tag_of(text, word, language="fr"):
    return tags(text, language).get(word, (OTHER, None))


def test_category_tag_invariants():
    with pytest.raises(ValueError):
        CategoryTag(PRONOUN)
    with pytest.raises(ValueError):
        CategoryTag(COORDINATOR, RELATIVE)
    with pytest.raises(ValueError):
        CategoryTag("verb")


def test_unambiguous_entries_carry_provenance():
    lex = builtin_lexicon("fr")
    [et] = tag_words(["et"], lex)
    assert (et.major, et.provenance) == (COORDINATOR, LEXICON_UNAMBIGUOUS)
    [_, que] = tag_words(["vérifiera", "que"], lex)
    assert que.provenance == CONTEXT_RULE


def test_que():
    assert tag_of("Le logiciel vérifiera que le paquet est valide.", "que") == (SUBORDINATOR, None)
    assert tag_of("Le paquet que le logiciel envoie.", "que") == (PRONOUN, RELATIVE)
    assert tag_of("Le paquet qui arrive.", "qui") == (PRONOUN, RELATIVE)


def test_il():
    assert tag_of("Il ne sera pas utile de le refaire.", "Il") == (PRONOUN, IMPERSONAL)
    assert tag_of("Il faut envoyer le paquet.", "Il") == (PRONOUN, IMPERSONAL)
    assert tag_of("Il calculera la moyenne.", "Il") == (PRONOUN, PERSONAL_SUBJECT)
    assert tag_of("Elle est donnée.", "Elle") == (PRONOUN, PERSONAL_SUBJECT)


def test_il_y_a():
    t = tags("Il y a un paquet.")
    assert t["Il"] == (PRONOUN, IMPERSONAL)
    assert t["y"] == (PRONOUN, IMPERSONAL)


def test_si_and_clitics():
    t = tags("s'il le veut")
    assert t["s'"] == (SUBORDINATOR, None)
    assert t["il"] == (PRONOUN, PERSONAL_SUBJECT)
    assert t["le"] == (PRONOUN, PERSONAL_OBJECT)
    assert tags("Le paquet est si grand.") == {}
    assert tag_of("Si le paquet arrive, il est traité.", "Si") == (SUBORDINATOR, None)
    assert tag_of("il la gère", "la") == (PRONOUN, PERSONAL_OBJECT)
    # articles stay out of the pronoun counts
    assert "la" not in tags("la moyenne")


def test_english_rules():
    t = tags("It is necessary to check.", "en")
    assert t["It"] == (PRONOUN, IMPERSONAL)
    words = ["checks", "that", "the", "value", "that", "is", "set"]
    out = tag_words(words, builtin_lexicon("en"))
    assert (out[1].major, out[4].pronoun_subtype) == (SUBORDINATOR, RELATIVE)
    assert tag_of("This is fine.", "This", "en") == (PRONOUN, DEMONSTRATIVE)
    assert tag_of("This packet is fine.", "This", "en") == (OTHER, None)
    assert tag_of("That packet is fine.", "That", "en") == (OTHER, None)


def test_sentence_initial_case():
    lex = builtin_lexicon("fr")
    assert tag_words(["Et"], lex)[0].major == COORDINATOR
    # mid-sentence capitals are names or identifiers, not closed-class words
    assert tag_words(["le", "mode", "Et"], lex)[2].major == OTHER
    assert tag_words(["ET"], lex)[0].major == OTHER


def test_every_word_token_gets_exactly_one_tag():
    lex = builtin_lexicon("fr")
    for s in split_sentences("Le paquet, qu'il envoie, est-il `ID_1` ou 1.5 ? Oui.", "fr", compounds=lex.compounds):
        for tok in tag_tokens(s, lex).tokens:
            if tok.kind == WORD:
                assert isinstance(tok.tag, CategoryTag)
            else:
                assert tok.tag is None


def test_load_errors(tmp_path):
    bad = tmp_path / "bad.tsv"
    bad.write_text("foo\tverb\n", "utf-8")
    with pytest.raises(UnknownCategory) as exc:
        load_lexicon(bad, "fr")
    assert exc.value.line == 1
    bad.write_text("# ok\nfoo\n", "utf-8")
    with pytest.raises(MalformedLexiconLine) as exc:
        load_lexicon(bad, "fr")
    assert exc.value.line == 2
    bad.write_text("lui\tpronoun\n", "utf-8")
    with pytest.raises(MalformedLexiconLine):
        load_lexicon(bad, "fr")
    bad.write_text("[nouns]\n", "utf-8")
    with pytest.raises(MalformedLexiconLine):
        load_lexicon(bad, "fr")


def test_user_entries_override_builtin(tmp_path):
    extra = tmp_path / "extra.tsv"
    extra.write_text("foo\tcoordinator\nou\tother\n[verb_cues]\nfrobnique\n", "utf-8")
    lex = load_lexicon(extra, "fr")
    out = tag_words(["un", "foo", "ou", "bar"], lex)
    assert [t.major for t in out] == [OTHER, COORDINATOR, OTHER, OTHER]
    assert lex.is_verb_cue("frobnique")
    assert not builtin_lexicon("fr").is_verb_cue("frobnique")
    assert load_lexicon(extra, "fr", builtin=False).lookup("et") is None


def test_verb_cues():
    lex = builtin_lexicon("fr")
    assert lex.is_verb_cue("calculera")
    assert lex.is_verb_cue("ré-initialise")
    assert not lex.is_verb_cue("paquet")


def test_languages_are_separate():
    assert builtin_lexicon("en").lookup("et") is None
    assert builtin_lexicon("fr").lookup("and") is None
    with pytest.raises(ValueError):
        load_lexicon(None, "de")
