"""Citation-window semantics for the forward (citation-counting) and backward
(reference-counting) approaches.

The publication year itself is never counted; a forward window of length W over
publication year y covers calendar years y+1 .. y+W. Cohort eligibility demands
the full window be observable inside the corpus span.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from citeconc.corpus import Corpus

FORWARD = "forward"
BACKWARD = "backward"


@dataclass(frozen=True)
class WindowSpec:
    direction: str
    length: int
    exclude_pub_year: bool = True

    def __post_init__(self):
        if self.direction not in (FORWARD, BACKWARD):
            raise ValueError(f"unknown window direction {self.direction!r}")
        if self.length < 1:
            raise ValueError("window length must be >= 1")
        if not self.exclude_pub_year:
            raise ValueError("same-year citations are never counted")


def counted_years(pub_year: int, w: WindowSpec) -> range:
    """Calendar years in which citations to an article published in pub_year count."""
    if w.direction != FORWARD:
        raise ValueError("counted_years requires a forward window")
    return range(pub_year + 1, pub_year + w.length + 1)


def eligible_pub_years_forward(span: tuple[int, int], w: WindowSpec) -> range:
    """Publication years whose full forward window fits inside the span."""
    if w.direction != FORWARD:
        raise ValueError("forward window required")
    start, end = span
    return range(start, end - w.length + 1)


def cited_population_backward(ref_year: int, span: tuple[int, int], w: WindowSpec) -> range | None:
    """Publication years of the cited population for a reference year, or None
    when the backward window would leave the span."""
    if w.direction != BACKWARD:
        raise ValueError("backward window required")
    if ref_year - w.length < span[0]:
        return None
    return range(ref_year - w.length, ref_year)


def in_window_edge_mask(corpus: Corpus, length: int, exclude_self: bool = False) -> np.ndarray:
    """Boolean mask over corpus edges whose citing-to-cited year gap is in [1, length]."""
    delta = corpus.citing_year.astype(np.int64) - corpus.cited_year
    mask = (delta >= 1) & (delta <= length)
    if exclude_self:
        mask &= ~corpus.self_edge
    return mask


def citations_in_window(article_id: str, w: WindowSpec, corpus: Corpus, exclude_self: bool = False) -> dict[int, int]:
    """Per-year incoming citation counts for one article, restricted to its window."""
    if w.direction != FORWARD:
        raise ValueError("forward window required")
    idx = corpus.id_index[article_id]
    mask = (corpus.cited == idx) & in_window_edge_mask(corpus, w.length, exclude_self)
    years, counts = np.unique(corpus.citing_year[mask], return_counts=True)
    return {int(y): int(c) for y, c in zip(years, counts)}
