from .collapse import CollapsedEdge, CollapsedView, collapse
from .coverage import (
    CoverageReport,
    KeywordMatch,
    WordList,
    coverage_report,
    match_keywords,
    normalized_prob,
)
from .groups import GroupResult, semantic_groups
from .ranking import annotate_ranks, rank_tree
from .sentiment import SentimentLexicon, SentimentScore, sentiment_score

__all__ = [
    "CollapsedEdge",
    "CollapsedView",
    "CoverageReport",
    "GroupResult",
    "KeywordMatch",
    "SentimentLexicon",
    "SentimentScore",
    "WordList",
    "annotate_ranks",
    "collapse",
    "coverage_report",
    "match_keywords",
    "normalized_prob",
    "rank_tree",
    "semantic_groups",
    "sentiment_score",
]
