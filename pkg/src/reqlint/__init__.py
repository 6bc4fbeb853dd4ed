"""Requirement-text linter: conjunction and pronoun checks, genre statistics."""

__version__ = "0.1.0"

from .errors import ReqlintError  # noqa: E402
from .ingest import Corpus, load_corpus  # noqa: E402
from .lexicon import builtin_lexicon, load_lexicon  # noqa: E402
from .rules import Finding, RuleConfig, run_all  # noqa: E402
from .stats import CorpusStats, compare_corpora, compute_stats, truncate_corpus  # noqa: E402

__all__ = [
    "__version__",
    "ReqlintError",
    "Corpus",
    "load_corpus",
    "builtin_lexicon",
    "load_lexicon",
    "Finding",
    "RuleConfig",
    "run_all",
    "CorpusStats",
    "compare_corpora",
    "compute_stats",
    "truncate_corpus",
]
