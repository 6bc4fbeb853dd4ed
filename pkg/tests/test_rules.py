from types import MappingProxyType

import pytest

from reqlint.errors import ConfigError
from reqlint.ingest import Corpus, parse_requirement_text
from reqlint.rules import (
    R1,
    R2,
    R3,
    R4,
    R5,
    RULE_IDS,
    Finding,
    RuleConfig,
    load_config,
    parse_config_text,
    resolve_rule_id,
    run_all,
)


def corpus(*bodies, language="fr"):
    text = "".join(f"[REQ X{n}]\n{b}\n[/REQ]\n" for n, b in enumerate(bodies, 1))
    return parse_requirement_text(text, language, name="c")


def findings(body, rule=None, language="fr", **kw):
    config = RuleConfig.for_language(language, **kw)
    out = run_all(corpus(body, language=language), config=config)
    return [f for f in out if rule is None or f.rule_id == rule]


def summary(fs):
    return [(f.rule_id[:2], f.severity, f.classification, f.evidence) for f in fs]


def test_clean_requirement():
    assert findings("Le champ X sera extrait.") == []


def test_empty_corpus():
    assert run_all(Corpus("e", "fr", "tagged", requirements=())) == []


def test_combinator_classifications():
    assert summary(findings("Le paquet est généré et le fichier est envoyé.", R1)) == [
        ("R1", "warning", "undesirable", ("et",))]
    assert [f.classification for f in findings("A et (B ou C)", R1)] == ["useful", "useful"]
    assert summary(findings("A et B. C ou D.", R1)) == [
        ("R1", "info", "useful", ("et",)), ("R1", "warning", "ambiguous", ("ou",))]


def test_mandatory_findings_only_on_request():
    body = "La valeur est comprise entre 0 et 10."
    assert findings(body, R1) == []
    [f] = findings(body, R1, report_mandatory=True)
    assert (f.classification, f.severity) == ("mandatory", "info")


def test_mixed_connectives():
    [f] = findings("A et B ou C", R4)
    assert (f.severity, f.evidence) == ("warning", ("et", "ou"))
    assert findings("A et (B ou C)", R4) == []
    assert findings("A et B. C ou D.", R4) == []


def test_mixed_connectives_symmetric():
    a = findings("Le paquet A et le paquet B ou le paquet C.", R4)
    b = findings("Le paquet A ou le paquet B et le paquet C.", R4)
    assert len(a) == len(b) == 1
    assert set(a[0].evidence) == set(b[0].evidence) == {"et", "ou"}


def test_list_connective():
    listed = "Le mode est rejeté si :\n- le mode A est actif,\n- le mode B est actif,\n- le mode C est actif."
    [f] = findings(listed, R5)
    assert f.evidence == (":", "-", "-", "-")
    fixed = listed.replace("B est actif,", "B est actif, ou")
    assert findings(fixed, R5) == []
    choice = listed.replace("rejeté si :", "rejeté si l'une des conditions suivantes est vraie :")
    assert findings(choice, R5) == []


def test_pronouns():
    [f] = findings("Il calculera la moyenne.", R2)
    assert (f.severity, f.classification, f.evidence) == ("error", "non_autonomous", ("Il",))
    fs = findings("Le paquet est généré. Il sera envoyé.", R2)
    assert [(f.sentence_index, f.classification, f.severity) for f in fs] == [(1, "useful", "info")]


def test_long_sentence_threshold_is_strict():
    assert len(findings(" ".join(["mot"] * 26) + ".", R3)) == 1
    assert findings(" ".join(["mot"] * 25) + ".", R3) == []
    assert len(findings(" ".join(["word"] * 21) + ".", R3, language="en")) == 1


@pytest.mark.parametrize("n", [5, 20, 26, 40])
def test_long_sentence_monotone_in_threshold(n):
    body = " ".join(["mot"] * n) + "."
    hits = [bool(findings(body, R3, long_sentence_threshold=t)) for t in range(1, 50)]
    # once a threshold clears the sentence, every larger one does too
    assert hits == sorted(hits, reverse=True)
    assert hits.count(True) == n - 1


def test_disable_and_overrides():
    body = "Il calculera la moyenne et la variance. " + " ".join(["mot"] * 30)
    all_rules = {f.rule_id for f in findings(body)}
    assert {R2, R3} <= all_rules
    only = findings(body, enabled_rules=frozenset({R3}))
    assert {f.rule_id for f in only} == {R3}
    bumped = findings(body, R3, severity_overrides=MappingProxyType({R3: "error"}))
    assert bumped and all(f.severity == "error" for f in bumped)


def test_overrides_leave_mandatory_alone():
    body = "La valeur est comprise entre 0 et 10."
    [f] = findings(body, R1, report_mandatory=True, severity_overrides=MappingProxyType({R1: "error"}))
    assert f.severity == "info"


def test_findings_are_ordered_and_tagged_with_corpus():
    c = corpus(" ".join(["mot"] * 30), "Il calculera la moyenne et la variance.")
    fs = run_all(c)
    assert [f.requirement_id for f in fs] == sorted(f.requirement_id for f in fs)
    assert {f.corpus for f in fs} == {"c"}


def test_finding_round_trip():
    for f in findings("Il calculera la moyenne et la variance."):
        assert Finding.from_dict(f.to_dict()) == f


def test_config_parsing(tmp_path):
    cfg = parse_config_text("# c\nlong_sentence_threshold = 30\nreport_mandatory = yes\n"
                            "disable = R1, r4\nseverity.R2 = warning\n")
    assert cfg.long_sentence_threshold == 30
    assert cfg.report_mandatory
    assert cfg.enabled_rules == frozenset({R2, R3, R5})
    assert dict(cfg.severity_overrides) == {R2: "warning"}
    assert parse_config_text("", "en").long_sentence_threshold == 20
    p = tmp_path / "c.cfg"
    p.write_text("long_sentence_threshold = 12\n", "utf-8")
    assert load_config(p).long_sentence_threshold == 12


@pytest.mark.parametrize("text", [
    "long_sentence_threshold = 0",
    "long_sentence_threshold = many",
    "report_mandatory = perhaps",
    "disable = R9",
    "severity.R1 = fatal",
    "colour = blue",
    "no equals sign",
])
def test_config_errors(text):
    with pytest.raises(ConfigError):
        parse_config_text(text)


def test_rule_ids():
    assert resolve_rule_id("r3") == R3
    assert resolve_rule_id(R5) == R5
    assert len(RULE_IDS) == 5
    with pytest.raises(ConfigError):
        resolve_rule_id("R6")
