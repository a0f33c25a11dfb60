"""Passage-to-summary corpus mining from MediaWiki revision-history dumps."""

__version__ = "0.1.0"

from .diffing import RevisionDelta, added_elements, compute_delta
from .ingest import (
    IngestPolicy,
    PageHistory,
    RevisionSnapshot,
    adjacent_revision_pairs,
    filter_page,
    open_dump,
)
from .mining import (
    CandidatePair,
    CorpusExample,
    MinerConfig,
    best_passage,
    mine_delta,
    mine_page,
    overlap_score,
)
from .textproc import NonbreakingPrefixes, StopwordList, content_tokens, split_sentences, tokenize
from .wikitext import Document, ParseConfig, parse_document, strip_wikicode

__all__ = [
    "__version__",
    "RevisionSnapshot",
    "PageHistory",
    "IngestPolicy",
    "open_dump",
    "filter_page",
    "adjacent_revision_pairs",
    "Document",
    "ParseConfig",
    "strip_wikicode",
    "parse_document",
    "StopwordList",
    "NonbreakingPrefixes",
    "split_sentences",
    "tokenize",
    "content_tokens",
    "RevisionDelta",
    "added_elements",
    "compute_delta",
    "MinerConfig",
    "CandidatePair",
    "CorpusExample",
    "overlap_score",
    "best_passage",
    "mine_delta",
    "mine_page",
]
