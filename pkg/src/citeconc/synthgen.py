"""Deterministic synthetic citation-corpus generator.

Articles are created year by year; each article draws its reference targets
without replacement from previously published articles, with probability
proportional to (in-degree + a)^exponent times an optional recency decay.
Self-citations are injected by sharing an author id between the citing article
and a sampled fraction of its targets. Everything derives from one seed.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from citeconc.corpus import Corpus


def linear_schedule(start: float, end: float, n: int) -> tuple[float, ...]:
    if n == 1:
        return (float(start),)
    return tuple(start + (end - start) * t / (n - 1) for t in range(n))


def geometric_schedule(start: float, end: float, n: int) -> tuple[float, ...]:
    if n == 1:
        return (float(start),)
    ratio = end / start
    return tuple(start * ratio ** (t / (n - 1)) for t in range(n))


@dataclass(frozen=True)
class GenParams:
    span: tuple[int, int]
    articles_per_year: tuple[int, ...]
    refs_per_article: tuple[float, ...]   # Poisson mean per year
    field_mix: tuple[tuple[str, float], ...] = (("F0", 0.5), ("F1", 0.3), ("F2", 0.2))
    region_mix: tuple[tuple[str, float, float], ...] = (
        ("NorthAmerica", 0.45, 0.45),
        ("Europe", 0.3, 0.3),
        ("Asia", 0.15, 0.15),
        ("Africa", 0.05, 0.05),
        ("Other", 0.05, 0.05),
    )  # (label, share at span start, share at span end); linear in between
    attachment_constant: float = 1.0
    attachment_exponent: float = 1.0
    recency_halflife: float | None = None
    self_citation_rate: float = 0.0
    authors_min: int = 1
    authors_max: int = 3
    author_pool_scale: float = 0.5  # pool size per region relative to its article count
    n_journals: int = 20
    seed: int = 0

    def __post_init__(self):
        n_years = self.span[1] - self.span[0] + 1
        if len(self.articles_per_year) != n_years or len(self.refs_per_article) != n_years:
            raise ValueError("schedules must have one entry per span year")
        if min(self.articles_per_year) < 0 or min(self.refs_per_article) < 0:
            raise ValueError("schedules must be non-negative")
        for probs in (tuple(p for _, p in self.field_mix),
                      tuple(p for _, p, _ in self.region_mix),
                      tuple(p for _, _, p in self.region_mix)):
            if abs(sum(probs) - 1.0) > 1e-9:
                raise ValueError("probability mix must sum to 1")
        if self.attachment_constant < 0:
            raise ValueError("attachment constant must be >= 0")


def _first_distinct(draws: np.ndarray, quota: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Keep, per row, the first `quota` distinct values in draw order.

    Returns (keep mask over draws, per-row number kept).
    """
    n_rows, n_cols = draws.shape
    rows = np.repeat(np.arange(n_rows), n_cols)
    vals = draws.ravel()
    pos = np.tile(np.arange(n_cols), n_rows)
    order = np.lexsort((pos, vals, rows))
    rs, vs = rows[order], vals[order]
    head = np.ones(len(vs), dtype=bool)
    head[1:] = (rs[1:] != rs[:-1]) | (vs[1:] != vs[:-1])
    keep = np.zeros(n_rows * n_cols, dtype=bool)
    keep[order[head]] = True
    keep = keep.reshape(n_rows, n_cols)
    rank = np.cumsum(keep, axis=1)
    keep &= rank <= quota[:, None]
    return keep, keep.sum(axis=1)


def generate(params: GenParams) -> Corpus:
    start, end = params.span
    n_years = end - start + 1
    counts = np.asarray(params.articles_per_year, dtype=np.int64)
    n_total = int(counts.sum())
    rng = np.random.default_rng(params.seed)

    pub_year = np.repeat(np.arange(start, end + 1, dtype=np.int32), counts)
    year_first = np.concatenate([[0], np.cumsum(counts)])[:-1]

    field_labels = [f for f, _ in params.field_mix]
    field_probs = np.asarray([p for _, p in params.field_mix])
    field_code = rng.choice(len(field_labels), size=n_total, p=field_probs).astype(np.int32)

    region_labels = [r for r, _, _ in params.region_mix]
    p0 = np.asarray([p for _, p, _ in params.region_mix])
    p1 = np.asarray([p for _, _, p in params.region_mix])
    region_code = np.empty(n_total, dtype=np.int32)
    for t in range(n_years):
        frac = t / (n_years - 1) if n_years > 1 else 0.0
        p = p0 + (p1 - p0) * frac
        p = p / p.sum()
        sl = slice(year_first[t], year_first[t] + counts[t])
        region_code[sl] = rng.choice(len(region_labels), size=int(counts[t]), p=p)

    journal_code = rng.integers(0, params.n_journals, size=n_total).astype(np.int32)

    # Per-region author pools; reuse within a pool is what creates shared authors.
    region_totals = np.bincount(region_code, minlength=len(region_labels))
    pool_size = np.maximum(5, (region_totals * params.author_pool_scale).astype(np.int64))
    pool_offset = np.concatenate([[0], np.cumsum(pool_size)])[:-1]
    n_authors = rng.integers(params.authors_min, params.authors_max + 1, size=n_total)
    flat_regions = np.repeat(region_code, n_authors)
    flat_codes = pool_offset[flat_regions] + (rng.random(int(n_authors.sum())) * pool_size[flat_regions]).astype(np.int64)
    bounds = np.cumsum(n_authors)[:-1]
    author_lists = [list(dict.fromkeys(chunk.tolist())) for chunk in np.split(flat_codes, bounds)]

    indeg = np.zeros(n_total, dtype=np.int64)
    citing_parts: list[np.ndarray] = []
    cited_parts: list[np.ndarray] = []
    clamped = 0
    for t in range(n_years):
        a_count = int(counts[t])
        n_prior = int(year_first[t])
        if a_count == 0:
            continue
        requested = rng.poisson(params.refs_per_article[t], size=a_count)
        if n_prior == 0:
            clamped += int(requested.sum())
            continue
        quota = np.minimum(requested, n_prior)
        clamped += int((requested - quota).sum())
        if quota.max() == 0:
            continue
        weights = (indeg[:n_prior] + params.attachment_constant) ** params.attachment_exponent
        if params.recency_halflife is not None:
            age = (start + t) - pub_year[:n_prior]
            weights = weights * np.power(0.5, age / params.recency_halflife)
        if weights.sum() <= 0:
            weights = np.ones(n_prior)
        cdf = np.cumsum(weights)
        cdf /= cdf[-1]

        n_cols = int(quota.max()) + max(4, int(quota.max()) // 2)
        draws = np.searchsorted(cdf, rng.random((a_count, n_cols))).astype(np.int64)
        np.clip(draws, 0, n_prior - 1, out=draws)
        keep, got = _first_distinct(draws, quota)
        citing = year_first[t] + np.repeat(np.arange(a_count), got)
        cited = draws[keep]
        deficit_rows = np.flatnonzero(got < quota)
        if len(deficit_rows):
            extra_citing = []
            extra_cited = []
            for i in deficit_rows:
                have = set(draws[i][keep[i]].tolist())
                while len(have) < quota[i]:
                    c = int(np.searchsorted(cdf, rng.random()))
                    c = min(c, n_prior - 1)
                    if c not in have:
                        have.add(c)
                        extra_citing.append(year_first[t] + i)
                        extra_cited.append(c)
            citing = np.concatenate([citing, np.asarray(extra_citing, dtype=np.int64)])
            cited = np.concatenate([cited, np.asarray(extra_cited, dtype=np.int64)])
        citing_parts.append(citing)
        cited_parts.append(cited)
        indeg[:n_prior] += np.bincount(cited, minlength=n_prior)

        if params.self_citation_rate > 0:
            sc = np.flatnonzero(rng.random(len(citing)) < params.self_citation_rate)
            for e in sc:
                src, dst = int(citing[e]), int(cited[e])
                shared = author_lists[dst][0]
                if shared not in author_lists[src]:
                    author_lists[src].append(shared)

    citing = np.concatenate(citing_parts) if citing_parts else np.zeros(0, dtype=np.int64)
    cited = np.concatenate(cited_parts) if cited_parts else np.zeros(0, dtype=np.int64)

    width = max(6, len(str(n_total)))
    ids = [f"p{i:0{width}d}" for i in range(n_total)]
    author_sets = [tuple(sorted(f"a{c}" for c in lst)) for lst in author_lists]

    return Corpus(
        ids=ids,
        pub_year=pub_year,
        field_code=field_code,
        fields=field_labels,
        region_code=region_code,
        regions=region_labels,
        journal_code=journal_code,
        journals=[f"J{j}" for j in range(params.n_journals)],
        author_sets=author_sets,
        citing=citing,
        cited=cited,
        span=params.span,
        drops={"clamped_refs": clamped},
    )


SCENARIOS = ("stationary", "declining-uncitedness", "region-shift")


def scenario(name: str, seed: int | None = None) -> GenParams:
    """Named generator presets exercising the mechanisms the studies measure."""
    if name == "stationary":
        n = 30
        params = GenParams(
            span=(1980, 1980 + n - 1),
            articles_per_year=tuple([800] * n),
            refs_per_article=tuple([8.0] * n),
            attachment_constant=2.0,
            attachment_exponent=1.0,
            recency_halflife=5.0,
            self_citation_rate=0.05,
            seed=20240601,
        )
    elif name == "declining-uncitedness":
        # Large first-year cohort keeps early uncitedness high (the citing
        # volume of the first years would otherwise all land on a tiny pool);
        # geometric reference growth drives uncitedness down year over year.
        n = 35
        params = GenParams(
            span=(1980, 1980 + n - 1),
            articles_per_year=(30000,) + tuple(int(round(v)) for v in linear_schedule(4000, 12000, n - 1)),
            refs_per_article=geometric_schedule(0.8, 5.6, n),
            attachment_constant=12.0,
            attachment_exponent=1.0,
            recency_halflife=2.0,
            self_citation_rate=0.05,
            seed=6,
        )
    elif name == "region-shift":
        n = 35
        params = GenParams(
            span=(1980, 1980 + n - 1),
            articles_per_year=(25000,) + tuple(int(round(v)) for v in linear_schedule(4000, 10000, n - 1)),
            refs_per_article=geometric_schedule(0.8, 5.0, n),
            region_mix=(
                ("NorthAmerica", 0.60, 0.15),
                ("Europe", 0.24, 0.33),
                ("Asia", 0.08, 0.45),
                ("Africa", 0.04, 0.04),
                ("Other", 0.04, 0.03),
            ),
            attachment_constant=12.0,
            attachment_exponent=1.0,
            recency_halflife=2.0,
            self_citation_rate=0.05,
            seed=20240603,
        )
    else:
        raise ValueError(f"unknown scenario {name!r}; available: {', '.join(SCENARIOS)}")
    if seed is not None:
        params = replace(params, seed=seed)
    return params
