"""Flat key=value run configuration for the batch analyzer.

A config file is a sequence of `key = value` lines (`#` comments, blank lines
ignored). Global keys set defaults; per-study keys are prefixed with the study
name declared in `studies`, e.g.::

    corpus.scenario = declining-uncitedness
    output.dir = out
    output.formats = csv,json
    studies = g1 u1

    g1.type = gini
    g1.study.approach = citation_based
    g1.window.length = 5
    g1.study.include_uncited = true
    g1.normalize.enabled = true

    u1.type = uncited
    u1.window.length = 10
    u1.study.exclude_self = true
"""

from __future__ import annotations

from dataclasses import dataclass, field

from citeconc.studies import CITATION_BASED, REFERENCE_BASED, StudyConfig
from citeconc.windows import BACKWARD, FORWARD, WindowSpec


class ConfigError(Exception):
    pass


STUDY_TYPES = ("gini", "uncited", "region_removal", "region_tails", "top_shares", "gini_by_field")

GLOBAL_KEYS = {
    "corpus.articles", "corpus.edges", "corpus.scenario",
    "span.start", "span.end",
    "seed",
    "output.dir", "output.formats",
    "studies",
    "gen.seed", "gen.span.start", "gen.span.end",
    "gen.articles.start", "gen.articles.end",
    "gen.refs.start", "gen.refs.end",
}

STUDY_KEYS = {
    "type",
    "study.approach", "study.include_uncited", "study.exclude_self",
    "study.core_only", "study.field", "study.pcts", "study.top_pct",
    "study.citing_level",
    "window.length", "window.direction", "window.drop_earliest_population",
    "normalize.enabled", "normalize.mics_per_year", "normalize.rho_scope",
    "regions.remove",
}

# study-scoped keys may also appear globally as defaults
DEFAULTABLE = STUDY_KEYS - {"type"}


@dataclass
class StudySpec:
    name: str
    kind: str
    config: StudyConfig
    pcts: tuple[float, ...] = (0.01, 0.05, 0.10)
    top_pct: float = 0.01
    citing_level: str = "edge"


@dataclass
class RunConfig:
    articles_path: str | None
    edges_path: str | None
    scenario: str | None
    span: tuple[int, int] | None
    seed: int | None
    out_dir: str
    formats: tuple[str, ...]
    studies: list[StudySpec] = field(default_factory=list)
    gen_overrides: dict[str, str] = field(default_factory=dict)


def parse_config(text: str) -> dict[str, str]:
    out: dict[str, str] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        if "=" not in stripped:
            raise ConfigError(f"config line {lineno}: expected 'key = value'")
        key, _, value = stripped.partition("=")
        key = key.strip()
        value = value.strip()
        if not key:
            raise ConfigError(f"config line {lineno}: empty key")
        if key in out:
            raise ConfigError(f"config line {lineno}: duplicate key {key!r}")
        out[key] = value
    return out


def _bool(value: str, key: str) -> bool:
    if value.lower() in ("true", "yes", "1"):
        return True
    if value.lower() in ("false", "no", "0"):
        return False
    raise ConfigError(f"{key}: expected a boolean, got {value!r}")


def _int(value: str, key: str) -> int:
    try:
        return int(value)
    except ValueError:
        raise ConfigError(f"{key}: expected an integer, got {value!r}") from None


def build_run(raw: dict[str, str]) -> RunConfig:
    study_names = raw.get("studies", "").split()
    for key in raw:
        if key in GLOBAL_KEYS or key in DEFAULTABLE:
            continue
        prefix, _, rest = key.partition(".")
        if prefix in study_names and rest in STUDY_KEYS:
            continue
        raise ConfigError(f"unknown config key {key!r}")

    has_files = "corpus.articles" in raw or "corpus.edges" in raw
    has_scenario = "corpus.scenario" in raw
    if has_files == has_scenario:
        raise ConfigError("exactly one of corpus.articles/corpus.edges or corpus.scenario must be set")
    if has_files and ("corpus.articles" not in raw or "corpus.edges" not in raw):
        raise ConfigError("both corpus.articles and corpus.edges are required for file input")

    span = None
    if "span.start" in raw or "span.end" in raw:
        if "span.start" not in raw or "span.end" not in raw:
            raise ConfigError("span.start and span.end must be set together")
        span = (_int(raw["span.start"], "span.start"), _int(raw["span.end"], "span.end"))
    if has_files and span is None:
        raise ConfigError("span.start/span.end are required for file input")

    formats = tuple(f.strip() for f in raw.get("output.formats", "csv,json").split(",") if f.strip())
    for f in formats:
        if f not in ("csv", "json"):
            raise ConfigError(f"output.formats: unknown format {f!r}")

    run = RunConfig(
        articles_path=raw.get("corpus.articles"),
        edges_path=raw.get("corpus.edges"),
        scenario=raw.get("corpus.scenario"),
        span=span,
        seed=_int(raw["seed"], "seed") if "seed" in raw else None,
        out_dir=raw.get("output.dir", "."),
        formats=formats,
        gen_overrides={k: v for k, v in raw.items() if k.startswith("gen.")},
    )

    if not study_names:
        raise ConfigError("no studies configured (set `studies = name1 name2 ...`)")
    for name in study_names:
        scoped = {k: raw[f"{name}.{k}"] for k in STUDY_KEYS if f"{name}.{k}" in raw}
        for k in DEFAULTABLE:
            if k not in scoped and k in raw:
                scoped[k] = raw[k]
        run.studies.append(_build_study(name, scoped))
    return run


def _build_study(name: str, scoped: dict[str, str]) -> StudySpec:
    kind = scoped.get("type", "gini")
    if kind not in STUDY_TYPES:
        raise ConfigError(f"{name}.type: unknown study type {kind!r}; available: {', '.join(STUDY_TYPES)}")
    approach = scoped.get("study.approach", CITATION_BASED)
    if approach not in (CITATION_BASED, REFERENCE_BASED):
        raise ConfigError(f"{name}.study.approach: unknown approach {approach!r}")
    direction = scoped.get("window.direction")
    if direction is None:
        direction = FORWARD if approach == CITATION_BASED else BACKWARD
    elif direction not in (FORWARD, BACKWARD):
        raise ConfigError(f"{name}.window.direction: must be forward or backward")
    length = _int(scoped.get("window.length", "5"), f"{name}.window.length")
    rho_scope = scoped.get("normalize.rho_scope", "study")
    if rho_scope not in ("study", "all_edges"):
        raise ConfigError(f"{name}.normalize.rho_scope: must be study or all_edges")
    citing_level = scoped.get("study.citing_level", "edge")
    if citing_level not in ("edge", "article"):
        raise ConfigError(f"{name}.study.citing_level: must be edge or article")
    try:
        cfg = StudyConfig(
            window=WindowSpec(direction, length),
            approach=approach,
            include_uncited=_bool(scoped.get("study.include_uncited", "true"), f"{name}.study.include_uncited"),
            exclude_self_citations=_bool(scoped.get("study.exclude_self", "false"), f"{name}.study.exclude_self"),
            core_only=_bool(scoped.get("study.core_only", "false"), f"{name}.study.core_only"),
            normalized=_bool(scoped.get("normalize.enabled", "true"), f"{name}.normalize.enabled"),
            field_filter=scoped.get("study.field"),
            region_removed=scoped.get("regions.remove"),
            drop_earliest_population=_bool(scoped.get("window.drop_earliest_population", "false"),
                                           f"{name}.window.drop_earliest_population"),
            mics_per_year=_bool(scoped.get("normalize.mics_per_year", "false"), f"{name}.normalize.mics_per_year"),
            rho_scope=rho_scope,
        )
    except ValueError as e:
        raise ConfigError(f"{name}: {e}") from None
    pcts = tuple(float(p) for p in scoped.get("study.pcts", "0.01,0.05,0.10").split(","))
    for p in pcts:
        if not 0 < p <= 1:
            raise ConfigError(f"{name}.study.pcts: values must lie in (0, 1]")
    top_pct = float(scoped.get("study.top_pct", "0.01"))
    if not 0 < top_pct <= 1:
        raise ConfigError(f"{name}.study.top_pct: must lie in (0, 1]")
    return StudySpec(name=name, kind=kind, config=cfg, pcts=pcts, top_pct=top_pct, citing_level=citing_level)
