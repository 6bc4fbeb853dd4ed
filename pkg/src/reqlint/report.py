"""Report assembly, exit status and rendering (plain text tables, JSON)."""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field

from . import __version__
from .rules import ERROR, RULE_IDS, SEVERITIES, WARNING, Finding
from .stats import COUNT_KEYS, ComparisonTable, CorpusStats

SCHEMA_VERSION = 1

FAIL_ON = ("error", "warning", "never")


def exit_status(findings, fail_on="warning"):
    """0 clean, 1 warnings, 2 errors; ``fail_on`` lowers what counts as failure."""
    if fail_on not in FAIL_ON:
        raise ValueError(f"fail_on must be one of {FAIL_ON}")
    if fail_on == "never":
        return 0
    severities = {f.severity for f in findings}
    if ERROR in severities:
        return 2
    if fail_on == "warning" and WARNING in severities:
        return 1
    return 0


def summarize(findings):
    by_severity = Counter(f.severity for f in findings)
    by_rule = Counter(f.rule_id for f in findings)
    return {
        "total": len(findings),
        "by_severity": {s: by_severity.get(s, 0) for s in SEVERITIES},
        "by_rule": {r: by_rule.get(r, 0) for r in RULE_IDS},
    }


@dataclass(frozen=True)
class Report:
    invocation: tuple
    corpora: tuple  # CorpusStats
    findings: tuple  # Finding
    exit_status: int
    summary: dict = field(default_factory=dict)
    tool_version: str = __version__
    schema_version: int = SCHEMA_VERSION

    @classmethod
    def build(cls, invocation, corpora, findings, fail_on="warning"):
        findings = tuple(findings)
        return cls(
            invocation=tuple(invocation),
            corpora=tuple(corpora),
            findings=findings,
            exit_status=exit_status(findings, fail_on),
            summary=summarize(findings),
        )

    def to_dict(self):
        return {
            "schema_version": self.schema_version,
            "tool_version": self.tool_version,
            "invocation": list(self.invocation),
            "corpora": [c.to_dict() for c in self.corpora],
            "findings": [f.to_dict() for f in self.findings],
            "summary": self.summary,
            "exit_status": self.exit_status,
        }

    def to_json(self):
        return json.dumps(self.to_dict(), ensure_ascii=False)

    @classmethod
    def from_dict(cls, d):
        if d.get("schema_version") != SCHEMA_VERSION:
            raise ValueError(f"unsupported report schema {d.get('schema_version')!r}")
        return cls(
            invocation=tuple(d["invocation"]),
            corpora=tuple(CorpusStats.from_dict(c) for c in d["corpora"]),
            findings=tuple(Finding.from_dict(f) for f in d["findings"]),
            exit_status=d["exit_status"],
            summary=d["summary"],
            tool_version=d["tool_version"],
            schema_version=d["schema_version"],
        )

    @classmethod
    def from_json(cls, text):
        return cls.from_dict(json.loads(text))


# ---------------------------------------------------------------------------
# text rendering

def format_finding(f):
    where = f"{f.corpus}:" if f.corpus else ""
    ev = f" [{' '.join(f.evidence)}]" if f.evidence else ""
    return (f"{where}{f.requirement_id}:{f.sentence_index}:{f.span[0]}-{f.span[1]}: "
            f"{f.severity}: {f.rule_id} ({f.classification}) {f.message}{ev}")


def _table(header, rows):
    widths = [max(len(str(r[i])) for r in [header] + rows) for i in range(len(header))]
    lines = []
    for n, row in enumerate([header] + rows):
        cells = [str(c).ljust(w) if i == 0 else str(c).rjust(w) for i, (c, w) in enumerate(zip(row, widths))]
        lines.append("  ".join(cells).rstrip())
        if n == 0:
            lines.append("  ".join("-" * w for w in widths))
    return "\n".join(lines)


def stats_table(stats_rows):
    """Conjunction/pronoun counts with percentages, then sentence-length columns."""
    header = ["corpus", "words", "coordinators", "subordinators", "conjunctions", "pronouns",
              "sentences", "long sentences", "avg length"]
    rows = []
    for s in stats_rows:
        row = [s.corpus_name, s.total_words]
        row += [f"{s.counts[k]} ({s.percentages[k]}%)" for k in COUNT_KEYS]
        row += [s.sentence_count, f"{s.long_sentence_count} ({s.long_sentence_percent}%)", s.avg_sentence_length]
        rows.append(row)
    thresholds = sorted({s.threshold_used for s in stats_rows})
    note = "long sentence: more than " + "/".join(str(t) for t in thresholds) + " words"
    return _table(header, rows) + "\n" + note


def ratios_table(table: ComparisonTable):
    header = ["ratio"] + list(COUNT_KEYS)
    rows = []
    seen = []
    for r in table.ratios:
        pair = (r.numerator, r.denominator)
        if pair not in seen:
            seen.append(pair)
    for a, b in seen:
        row = [f"{a} / {b}"]
        for key in COUNT_KEYS:
            d = next(r for r in table.ratios if (r.numerator, r.denominator, r.category) == (a, b, key)).to_dict()
            row.append(d["ratio"] if d["ratio"] is not None else "n/a")
        rows.append(row)
    return _table(header, rows)


def render_text(report: Report):
    out = [format_finding(f) for f in report.findings]
    s = report.summary
    sev = ", ".join(f"{n} {k}" for k, n in s["by_severity"].items())
    out.append("")
    out.append(f"{s['total']} findings ({sev})")
    if report.corpora:
        out.append("")
        out.append(stats_table(report.corpora))
    return "\n".join(out) + "\n"


def render_comparison_text(table: ComparisonTable):
    return stats_table(table.rows) + "\n\nfrequency ratios (per word)\n" + ratios_table(table) + "\n"


def comparison_json(table: ComparisonTable, invocation=()):
    doc = {"schema_version": SCHEMA_VERSION, "tool_version": __version__, "invocation": list(invocation)}
    doc.update(table.to_dict())
    return json.dumps(doc, ensure_ascii=False, indent=1)
