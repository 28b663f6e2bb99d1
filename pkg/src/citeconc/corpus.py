"""Article/edge ingestion and the immutable indexed Corpus.

Input files are UTF-8 TSV with a header row:

    articles: id  pub_year  field  region  journal_id  author_ids
    edges:    citing_id  cited_id

author_ids is a ``;``-separated list (possibly empty).
"""

from __future__ import annotations

import csv
from dataclasses import dataclass
from typing import IO, Iterable, Iterator

import numpy as np

ARTICLE_COLUMNS = ["id", "pub_year", "field", "region", "journal_id", "author_ids"]
EDGE_COLUMNS = ["citing_id", "cited_id"]

ARTICLE_DROP_REASONS = ("out_of_span",)
EDGE_DROP_REASONS = ("dangling", "self_loop", "future_dated", "duplicate_edge")


class DataError(Exception):
    """Malformed input that cannot be skipped (bad row shape, bad year, duplicate id)."""


@dataclass(frozen=True)
class Article:
    id: str
    pub_year: int
    field: str
    region: str
    journal_id: str
    author_ids: frozenset[str]


@dataclass(frozen=True)
class CitationEdge:
    citing_id: str
    cited_id: str


class Corpus:
    """Immutable column store of articles plus a deduplicated citation edge list.

    Arrays are frozen after construction; every downstream operation treats the
    corpus as read-only, so unrestricted concurrent reads are safe.
    """

    def __init__(
        self,
        *,
        ids: list[str],
        pub_year: np.ndarray,
        field_code: np.ndarray,
        fields: list[str],
        region_code: np.ndarray,
        regions: list[str],
        journal_code: np.ndarray,
        journals: list[str],
        author_sets: list[tuple[str, ...]],
        citing: np.ndarray,
        cited: np.ndarray,
        span: tuple[int, int],
        drops: dict[str, int],
        rows_read: tuple[int, int] = (0, 0),
    ):
        self.ids = ids
        self.id_index = {a: i for i, a in enumerate(ids)}
        if len(self.id_index) != len(ids):
            raise DataError("duplicate article id in corpus construction")
        self.pub_year = np.asarray(pub_year, dtype=np.int32)
        self.field_code = np.asarray(field_code, dtype=np.int32)
        self.fields = list(fields)
        self.region_code = np.asarray(region_code, dtype=np.int32)
        self.regions = list(regions)
        self.journal_code = np.asarray(journal_code, dtype=np.int32)
        self.journals = list(journals)
        self.author_sets = author_sets
        self.citing = np.asarray(citing, dtype=np.int64)
        self.cited = np.asarray(cited, dtype=np.int64)
        self.span = (int(span[0]), int(span[1]))
        self.drops = dict(drops)
        self.rows_read = rows_read
        self.citing_year = self.pub_year[self.citing] if len(self.citing) else np.zeros(0, np.int32)
        self.cited_year = self.pub_year[self.cited] if len(self.cited) else np.zeros(0, np.int32)
        self.self_edge = _compute_self_edges(self.author_sets, self.citing, self.cited)
        for arr in (self.pub_year, self.field_code, self.region_code, self.journal_code,
                    self.citing, self.cited, self.citing_year, self.cited_year, self.self_edge):
            arr.flags.writeable = False

    @property
    def n_articles(self) -> int:
        return len(self.ids)

    @property
    def n_edges(self) -> int:
        return len(self.citing)

    def article(self, article_id: str) -> Article:
        i = self.id_index[article_id]
        return Article(
            id=self.ids[i],
            pub_year=int(self.pub_year[i]),
            field=self.fields[self.field_code[i]],
            region=self.regions[self.region_code[i]],
            journal_id=self.journals[self.journal_code[i]],
            author_ids=frozenset(self.author_sets[i]),
        )

    def articles(self) -> Iterator[Article]:
        for a in self.ids:
            yield self.article(a)

    def edges(self) -> Iterator[CitationEdge]:
        for j in range(self.n_edges):
            yield CitationEdge(self.ids[self.citing[j]], self.ids[self.cited[j]])

    def ncits_by_year(self) -> dict[int, int]:
        """Total retained citations made in each year (year of the citing article)."""
        years, counts = np.unique(self.citing_year, return_counts=True)
        return {int(y): int(c) for y, c in zip(years, counts)}

    def subset(self, keep: np.ndarray) -> "Corpus":
        """New corpus restricted to the articles flagged in ``keep``; edges are
        restricted to retained endpoints. Vocabularies are carried over unchanged."""
        keep = np.asarray(keep, dtype=bool)
        old_idx = np.flatnonzero(keep)
        remap = np.full(self.n_articles, -1, dtype=np.int64)
        remap[old_idx] = np.arange(len(old_idx))
        edge_keep = keep[self.citing] & keep[self.cited] if self.n_edges else np.zeros(0, bool)
        return Corpus(
            ids=[self.ids[i] for i in old_idx],
            pub_year=self.pub_year[old_idx],
            field_code=self.field_code[old_idx],
            fields=self.fields,
            region_code=self.region_code[old_idx],
            regions=self.regions,
            journal_code=self.journal_code[old_idx],
            journals=self.journals,
            author_sets=[self.author_sets[i] for i in old_idx],
            citing=remap[self.citing[edge_keep]],
            cited=remap[self.cited[edge_keep]],
            span=self.span,
            drops={"filtered_endpoint": int(self.n_edges - int(edge_keep.sum()))},
        )


def _compute_self_edges(author_sets: list[tuple[str, ...]], citing: np.ndarray, cited: np.ndarray) -> np.ndarray:
    out = np.zeros(len(citing), dtype=bool)
    if len(citing) == 0:
        return out
    vocab: dict[str, int] = {}
    codes = []
    max_k = 0
    for s in author_sets:
        row = [vocab.setdefault(a, len(vocab)) for a in s]
        codes.append(row)
        if len(row) > max_k:
            max_k = len(row)
    if max_k == 0:
        return out
    if max_k <= 8:
        pad = np.full((len(codes), max_k), -1, dtype=np.int64)
        for i, row in enumerate(codes):
            pad[i, : len(row)] = row
        chunk = 1_000_000
        for s in range(0, len(citing), chunk):
            a = pad[citing[s : s + chunk]]
            b = pad[cited[s : s + chunk]]
            eq = (a[:, :, None] == b[:, None, :]) & (a[:, :, None] >= 0)
            out[s : s + chunk] = eq.any(axis=(1, 2))
    else:
        sets = [frozenset(c) for c in codes]
        for j in range(len(citing)):
            out[j] = not sets[citing[j]].isdisjoint(sets[cited[j]])
    return out


def is_self_citation(edge: CitationEdge, corpus: Corpus) -> bool:
    """True iff the citing and cited articles share at least one author id."""
    a = corpus.author_sets[corpus.id_index[edge.citing_id]]
    b = corpus.author_sets[corpus.id_index[edge.cited_id]]
    return not frozenset(a).isdisjoint(b)


def _parse_article_row(row: list[str], lineno: int) -> tuple[str, int, str, str, str, tuple[str, ...]]:
    if len(row) != len(ARTICLE_COLUMNS):
        raise DataError(f"articles line {lineno}: expected {len(ARTICLE_COLUMNS)} columns, got {len(row)}")
    art_id, year_s, fld, region, journal, authors_s = row
    try:
        year = int(year_s)
    except ValueError:
        raise DataError(f"articles line {lineno}: unparsable year {year_s!r}") from None
    if not fld:
        raise DataError(f"articles line {lineno}: empty field label")
    authors = tuple(sorted({a for a in authors_s.split(";") if a}))
    return art_id, year, fld, region, journal, authors


def _check_header(row: list[str] | None, expected: list[str], name: str) -> None:
    if row is None or [c.strip() for c in row] != expected:
        raise DataError(f"{name}: bad or missing header, expected {chr(9).join(expected)!r}")


def load_corpus(
    articles_source: Iterable[str] | IO[str],
    edges_source: Iterable[str] | IO[str],
    span: tuple[int, int],
) -> Corpus:
    """Read article and edge TSV streams into an indexed corpus.

    Rows that violate soft rules (out-of-span year, dangling endpoint, citation
    to the future, duplicate edge, self loop) are dropped and tallied by reason;
    malformed rows and duplicate article ids raise :class:`DataError`.
    """
    start, end = int(span[0]), int(span[1])
    if start > end:
        raise ValueError(f"invalid span {span}")
    drops = {r: 0 for r in ARTICLE_DROP_REASONS + EDGE_DROP_REASONS}

    ids: list[str] = []
    id_index: dict[str, int] = {}
    years: list[int] = []
    field_vocab: dict[str, int] = {}
    field_code: list[int] = []
    region_vocab: dict[str, int] = {}
    region_code: list[int] = []
    journal_vocab: dict[str, int] = {}
    journal_code: list[int] = []
    author_sets: list[tuple[str, ...]] = []

    art_rows = 0
    reader = csv.reader(articles_source, delimiter="\t")
    _check_header(next(reader, None), ARTICLE_COLUMNS, "articles")
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        art_rows += 1
        art_id, year, fld, region, journal, authors = _parse_article_row(row, lineno)
        if art_id in id_index:
            raise DataError(f"articles line {lineno}: duplicate article id {art_id!r}")
        if year < start or year > end:
            drops["out_of_span"] += 1
            continue
        id_index[art_id] = len(ids)
        ids.append(art_id)
        years.append(year)
        field_code.append(field_vocab.setdefault(fld, len(field_vocab)))
        region_code.append(region_vocab.setdefault(region, len(region_vocab)))
        journal_code.append(journal_vocab.setdefault(journal, len(journal_vocab)))
        author_sets.append(authors)

    pub_year = np.asarray(years, dtype=np.int32)
    citing: list[int] = []
    cited: list[int] = []
    seen_edges: set[tuple[int, int]] = set()
    edge_rows = 0
    reader = csv.reader(edges_source, delimiter="\t")
    _check_header(next(reader, None), EDGE_COLUMNS, "edges")
    for lineno, row in enumerate(reader, start=2):
        if not row:
            continue
        edge_rows += 1
        if len(row) != 2:
            raise DataError(f"edges line {lineno}: expected 2 columns, got {len(row)}")
        src, dst = row
        if src == dst:
            drops["self_loop"] += 1
            continue
        i = id_index.get(src)
        j = id_index.get(dst)
        if i is None or j is None:
            drops["dangling"] += 1
            continue
        if pub_year[i] < pub_year[j]:
            drops["future_dated"] += 1
            continue
        if (i, j) in seen_edges:
            drops["duplicate_edge"] += 1
            continue
        seen_edges.add((i, j))
        citing.append(i)
        cited.append(j)

    return Corpus(
        ids=ids,
        pub_year=pub_year,
        field_code=np.asarray(field_code, dtype=np.int32),
        fields=list(field_vocab),
        region_code=np.asarray(region_code, dtype=np.int32),
        regions=list(region_vocab),
        journal_code=np.asarray(journal_code, dtype=np.int32),
        journals=list(journal_vocab),
        author_sets=author_sets,
        citing=np.asarray(citing, dtype=np.int64),
        cited=np.asarray(cited, dtype=np.int64),
        span=(start, end),
        drops=drops,
        rows_read=(art_rows, edge_rows),
    )


def load_corpus_files(articles_path: str, edges_path: str, span: tuple[int, int]) -> Corpus:
    with open(articles_path, encoding="utf-8", newline="") as fa, open(edges_path, encoding="utf-8", newline="") as fe:
        return load_corpus(fa, fe, span)


def filter_core_journals(corpus: Corpus) -> Corpus:
    """Restrict to journals that publish at least one article in every year of
    the corpus span. Idempotent; the result may be empty."""
    start, end = corpus.span
    n_years = end - start + 1
    key = corpus.journal_code.astype(np.int64) * n_years + (corpus.pub_year - start)
    pairs = np.unique(key)
    journal_of_pair = pairs // n_years
    per_journal = np.bincount(journal_of_pair, minlength=len(corpus.journals))
    core = per_journal >= n_years
    return corpus.subset(core[corpus.journal_code])


def write_tables(corpus: Corpus, articles_path: str, edges_path: str) -> None:
    """Emit the corpus back to the tabular formats accepted by load_corpus."""
    with open(articles_path, "w", encoding="utf-8", newline="") as f:
        wr = csv.writer(f, delimiter="\t", lineterminator="\n")
        wr.writerow(ARTICLE_COLUMNS)
        for i, art_id in enumerate(corpus.ids):
            wr.writerow([
                art_id,
                int(corpus.pub_year[i]),
                corpus.fields[corpus.field_code[i]],
                corpus.regions[corpus.region_code[i]],
                corpus.journals[corpus.journal_code[i]],
                ";".join(corpus.author_sets[i]),
            ])
    with open(edges_path, "w", encoding="utf-8", newline="") as f:
        wr = csv.writer(f, delimiter="\t", lineterminator="\n")
        wr.writerow(EDGE_COLUMNS)
        for j in range(corpus.n_edges):
            wr.writerow([corpus.ids[corpus.citing[j]], corpus.ids[corpus.cited[j]]])
