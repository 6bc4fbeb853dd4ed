"""Exception hierarchy.

Everything raised on bad input derives from ``ReqlintError`` so the CLI can
map it to exit code 65 in one place.
"""


class ReqlintError(Exception):
    pass


class IngestError(ReqlintError):
    def __init__(self, message, path=None, line=None):
        self.path = path
        self.line = line
        where = ""
        if path is not None:
            where = f"{path}:"
        if line is not None:
            where += f"{line}:"
        super().__init__(f"{where} {message}" if where else message)


class UnbalancedDelimiter(IngestError):
    pass


class DuplicateId(IngestError):
    pass


class EmptyRequirement(IngestError):
    pass


class DecodeError(IngestError):
    pass


class EmptyFile(IngestError):
    pass


class NoRequirements(IngestError):
    pass


class LexiconError(ReqlintError):
    def __init__(self, message, line=None, content=None):
        self.line = line
        self.content = content
        if line is not None:
            message = f"line {line}: {message}: {content!r}"
        super().__init__(message)


class MalformedLexiconLine(LexiconError):
    pass


class UnknownCategory(LexiconError):
    pass


class ConfigError(ReqlintError):
    pass


class EmptyCorpus(ReqlintError):
    pass


class TargetTooSmall(ReqlintError):
    pass
