"""Reading specification files into corpora.

Two modes:

* tagged: requirements are framed by delimiter lines ``[REQ <id>]`` and
  ``[/REQ]``; everything outside a block is discarded.
* plain: the whole file is one undifferentiated body (comparison corpora).
"""

from __future__ import annotations

import logging
import re
from dataclasses import dataclass, field
from pathlib import Path

from .errors import (
    DecodeError,
    DuplicateId,
    EmptyFile,
    EmptyRequirement,
    NoRequirements,
    UnbalancedDelimiter,
)

log = logging.getLogger(__name__)

LANGUAGES = ("fr", "en")

OPEN_RE = re.compile(r"\[REQ ([A-Za-z0-9_.-]+)\]")
CLOSE_LINE = "[/REQ]"

# courtesy detector for leftover tables: mostly | and + characters, or tab cells
_TABLE_CHARS = set("|+-=")


@dataclass(frozen=True)
class SourceSpan:
    file: str
    start_line: int
    end_line: int


@dataclass(frozen=True)
class Requirement:
    id: str
    body: str
    source_span: SourceSpan
    line_count: int


@dataclass(frozen=True)
class Diagnostic:
    line: int
    message: str


@dataclass(frozen=True)
class Corpus:
    name: str
    language: str
    mode: str
    requirements: tuple[Requirement, ...] = ()
    body: str = ""
    diagnostics: tuple[Diagnostic, ...] = field(default=(), compare=False)

    def __post_init__(self):
        if self.language not in LANGUAGES:
            raise ValueError(f"unsupported language {self.language!r}")
        if self.mode not in ("tagged", "plain"):
            raise ValueError(f"unknown corpus mode {self.mode!r}")

    def units(self):
        """(unit id, text) pairs: one per requirement, or the plain body."""
        if self.mode == "tagged":
            return [(r.id, r.body) for r in self.requirements]
        return [(self.name, self.body)]


def _split_lines(text):
    # bit-exact line content: only the trailing newline is removed
    lines = text.split("\n")
    if lines and lines[-1] == "":
        lines.pop()
    return lines


def _delimiter_view(line):
    # CRLF files: a carriage return never keeps a delimiter from matching
    return line[:-1] if line.endswith("\r") else line


def looks_like_table(line):
    stripped = line.strip()
    if not stripped:
        return False
    if line.count("\t") >= 2:
        return True
    table = sum(1 for ch in stripped if ch in _TABLE_CHARS)
    return "|" in stripped and table * 2 >= len(stripped.replace(" ", ""))


def parse_requirement_text(text, language, name="<string>", source=None):
    """Parse delimiter-framed requirements out of *text*."""
    source = source if source is not None else name
    requirements = []
    diagnostics = []
    seen = {}
    current_id = None
    open_line = 0
    block = []

    for lineno, line in enumerate(_split_lines(text), start=1):
        bare = _delimiter_view(line)
        m = OPEN_RE.fullmatch(bare)
        if m:
            if current_id is not None:
                raise UnbalancedDelimiter(
                    f"opening delimiter inside block {current_id!r} (opened at line {open_line})",
                    source, lineno)
            current_id = m.group(1)
            open_line = lineno
            block = []
            continue
        if bare == CLOSE_LINE:
            if current_id is None:
                raise UnbalancedDelimiter("closing delimiter without opening delimiter", source, lineno)
            body = "\n".join(block)
            if not body.strip():
                raise EmptyRequirement(f"requirement {current_id!r} has no content", source, open_line)
            if current_id in seen:
                raise DuplicateId(
                    f"requirement id {current_id!r} already used at line {seen[current_id]}",
                    source, open_line)
            seen[current_id] = open_line
            requirements.append(Requirement(
                id=current_id,
                body=body,
                source_span=SourceSpan(source, open_line + 1, lineno - 1),
                line_count=len(block),
            ))
            current_id = None
            continue
        if current_id is not None:
            block.append(line)
            if looks_like_table(line):
                diagnostics.append(Diagnostic(lineno, "line looks like a table row; tables should be removed before analysis"))

    if current_id is not None:
        raise UnbalancedDelimiter(f"requirement {current_id!r} is never closed", source, open_line)
    if not requirements:
        raise NoRequirements("no delimited requirements found", source)

    for d in diagnostics:
        log.warning("%s:%d: %s", source, d.line, d.message)
    return Corpus(name=name, language=language, mode="tagged",
                  requirements=tuple(requirements), diagnostics=tuple(diagnostics))


def _read_text(path):
    path = Path(path)
    data = path.read_bytes()
    if not data:
        raise EmptyFile("file is empty", str(path))
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise DecodeError(f"not valid UTF-8 at byte {exc.start}", str(path)) from None


def parse_requirement_file(path, language):
    text = _read_text(path)
    return parse_requirement_text(text, language, name=Path(path).name, source=str(path))


def parse_plain_text(text, language, name="<string>"):
    if not text.strip():
        raise EmptyFile("corpus has no content", name)
    return Corpus(name=name, language=language, mode="plain", body=text)


def parse_plain_corpus(path, language):
    text = _read_text(path)
    if not text.strip():
        raise EmptyFile("file has only whitespace", str(path))
    return Corpus(name=Path(path).name, language=language, mode="plain", body=text)


def has_delimiters(text):
    return any(OPEN_RE.fullmatch(_delimiter_view(line)) for line in _split_lines(text))


def load_corpus(path, language, mode="auto"):
    """Read *path* in the given mode; ``auto`` picks tagged when any opening delimiter is present."""
    if mode == "tagged":
        return parse_requirement_file(path, language)
    if mode == "plain":
        return parse_plain_corpus(path, language)
    text = _read_text(path)
    if has_delimiters(text):
        return parse_requirement_text(text, language, name=Path(path).name, source=str(path))
    return parse_plain_text(text, language, name=Path(path).name)


def serialize_corpus(corpus):
    """Render a tagged corpus back to the delimiter format."""
    out = []
    for req in corpus.requirements:
        out.append(f"[REQ {req.id}]\n{req.body}\n{CLOSE_LINE}\n")
    return "".join(out)
