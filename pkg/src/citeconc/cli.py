"""Command-line entry point: `citeconc validate|analyze|generate`.

Exit codes: 0 success, 1 usage/config error, 2 data error.
"""

from __future__ import annotations

import argparse
import csv
import os
import sys
from collections import Counter
from dataclasses import replace

from citeconc import corpus as corpus_mod
from citeconc import report as report_mod
from citeconc import studies as studies_mod
from citeconc import synthgen
from citeconc.config import ConfigError, RunConfig, StudySpec, build_run, parse_config
from citeconc.corpus import ARTICLE_COLUMNS, EDGE_COLUMNS, DataError

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_DATA = 2


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"error: {message}", file=sys.stderr)
        sys.exit(EXIT_USAGE)


def _build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="citeconc", description="Citation-concentration analytics")
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("validate", help="check tabular inputs and print drop tallies")
    v.add_argument("articles")
    v.add_argument("edges")
    v.add_argument("--span", nargs=2, type=int, metavar=("START", "END"))

    a = sub.add_parser("analyze", help="run a configured study battery")
    a.add_argument("config")

    g = sub.add_parser("generate", help="write a synthetic corpus to TSV files")
    g.add_argument("--scenario", required=True, help=f"one of: {', '.join(synthgen.SCENARIOS)}")
    g.add_argument("--out", required=True, help="output directory")
    g.add_argument("--seed", type=int, default=None)
    return p


def cmd_validate(articles_path: str, edges_path: str, span: tuple[int, int] | None) -> int:
    try:
        fa = open(articles_path, encoding="utf-8", newline="")
    except OSError as e:
        print(f"error: cannot read {articles_path}: {e}", file=sys.stderr)
        return EXIT_DATA
    drops = Counter()
    year_hist = Counter()
    field_hist = Counter()
    region_hist = Counter()
    id_year: dict[str, int] = {}
    art_rows = 0
    try:
        with fa:
            reader = csv.reader(fa, delimiter="\t")
            corpus_mod._check_header(next(reader, None), ARTICLE_COLUMNS, "articles")
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                art_rows += 1
                art_id, year, fld, region, _journal, _authors = corpus_mod._parse_article_row(row, lineno)
                if art_id in id_year:
                    raise DataError(f"articles line {lineno}: duplicate article id {art_id!r}")
                if span and not (span[0] <= year <= span[1]):
                    drops["out_of_span"] += 1
                    continue
                id_year[art_id] = year
                year_hist[year] += 1
                field_hist[fld] += 1
                region_hist[region] += 1
    except DataError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA

    edge_rows = 0
    seen: set[tuple[str, str]] = set()
    try:
        fe = open(edges_path, encoding="utf-8", newline="")
    except OSError as e:
        print(f"error: cannot read {edges_path}: {e}", file=sys.stderr)
        return EXIT_DATA
    try:
        with fe:
            reader = csv.reader(fe, delimiter="\t")
            corpus_mod._check_header(next(reader, None), EDGE_COLUMNS, "edges")
            for lineno, row in enumerate(reader, start=2):
                if not row:
                    continue
                edge_rows += 1
                if len(row) != 2:
                    raise DataError(f"edges line {lineno}: expected 2 columns, got {len(row)}")
                src, dst = row
                if src == dst:
                    drops["self_loop"] += 1
                elif src not in id_year or dst not in id_year:
                    drops["dangling"] += 1
                elif id_year[src] < id_year[dst]:
                    drops["future_dated"] += 1
                elif (src, dst) in seen:
                    drops["duplicate_edge"] += 1
                else:
                    seen.add((src, dst))
    except DataError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_DATA

    print(f"articles read: {art_rows}")
    print(f"articles retained: {len(id_year)}")
    print(f"edges read: {edge_rows}")
    print(f"edges retained: {len(seen)}")
    print("drops:")
    for reason in ("out_of_span", "dangling", "self_loop", "future_dated", "duplicate_edge"):
        print(f"  {reason}: {drops[reason]}")
    for title, hist in (("years", year_hist), ("fields", field_hist), ("regions", region_hist)):
        print(f"{title}:")
        for k in sorted(hist):
            print(f"  {k}: {hist[k]}")
    return EXIT_OK


def _gen_params(run: RunConfig) -> synthgen.GenParams:
    params = synthgen.scenario(run.scenario)
    ov = run.gen_overrides
    if "gen.span.start" in ov or "gen.span.end" in ov:
        start = int(ov.get("gen.span.start", params.span[0]))
        end = int(ov.get("gen.span.end", params.span[1]))
        n = end - start + 1
        a0 = int(ov.get("gen.articles.start", params.articles_per_year[0]))
        a1 = int(ov.get("gen.articles.end", params.articles_per_year[-1]))
        r0 = float(ov.get("gen.refs.start", params.refs_per_article[0]))
        r1 = float(ov.get("gen.refs.end", params.refs_per_article[-1]))
        params = replace(
            params,
            span=(start, end),
            articles_per_year=tuple(int(round(v)) for v in synthgen.linear_schedule(a0, a1, n)),
            refs_per_article=synthgen.linear_schedule(r0, r1, n),
        )
    elif {"gen.articles.start", "gen.articles.end", "gen.refs.start", "gen.refs.end"} & set(ov):
        n = params.span[1] - params.span[0] + 1
        a0 = int(ov.get("gen.articles.start", params.articles_per_year[0]))
        a1 = int(ov.get("gen.articles.end", params.articles_per_year[-1]))
        r0 = float(ov.get("gen.refs.start", params.refs_per_article[0]))
        r1 = float(ov.get("gen.refs.end", params.refs_per_article[-1]))
        params = replace(
            params,
            articles_per_year=tuple(int(round(v)) for v in synthgen.linear_schedule(a0, a1, n)),
            refs_per_article=synthgen.linear_schedule(r0, r1, n),
        )
    if "gen.seed" in ov:
        params = replace(params, seed=int(ov["gen.seed"]))
    elif run.seed is not None:
        params = replace(params, seed=run.seed)
    return params


def _run_study(corpus, spec: StudySpec) -> list[studies_mod.SeriesReport]:
    cfg = spec.config
    if spec.kind == "gini":
        return [studies_mod.gini_series(corpus, cfg, study_id=spec.name)]
    if spec.kind == "gini_by_field":
        reports = []
        for fld, rep in studies_mod.gini_by_field(corpus, cfg).items():
            rep.study_id = f"{spec.name}_{fld}"
            reports.append(rep)
        return reports
    work = corpus
    if cfg.core_only and spec.kind != "uncited":
        work = corpus_mod.filter_core_journals(work)
    if spec.kind == "uncited":
        return [studies_mod.uncited_share_series(
            corpus, cfg.window, exclude_self=cfg.exclude_self_citations, core_only=cfg.core_only,
            study_id=spec.name)]
    if spec.kind == "region_removal":
        if cfg.region_removed is None:
            raise ConfigError(f"{spec.name}: region_removal requires regions.remove")
        return [studies_mod.region_removal_uncitedness(
            work, cfg.region_removed, cfg.window, exclude_self=cfg.exclude_self_citations,
            study_id=spec.name)]
    if spec.kind == "region_tails":
        return [studies_mod.region_tail_shares(
            work, cfg.window, exclude_self=cfg.exclude_self_citations,
            top_pct=spec.top_pct, citing_level=spec.citing_level, study_id=spec.name)]
    if spec.kind == "top_shares":
        return [studies_mod.top_share_series(
            work, cfg.window, list(spec.pcts), exclude_self=cfg.exclude_self_citations,
            study_id=spec.name)]
    raise ConfigError(f"{spec.name}: unknown study type {spec.kind!r}")


def cmd_analyze(config_path: str) -> int:
    try:
        with open(config_path, encoding="utf-8") as f:
            run = build_run(parse_config(f.read()))
    except OSError as e:
        print(f"error: cannot read {config_path}: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_USAGE

    try:
        if run.scenario is not None:
            corpus = synthgen.generate(_gen_params(run))
        else:
            corpus = corpus_mod.load_corpus_files(run.articles_path, run.edges_path, run.span)
    except ValueError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except (OSError, DataError) as e:
        print(f"data error: {e}", file=sys.stderr)
        return EXIT_DATA

    os.makedirs(run.out_dir, exist_ok=True)
    manifest = []
    try:
        for spec in run.studies:
            for rep in _run_study(corpus, spec):
                files = []
                if "csv" in run.formats:
                    path = os.path.join(run.out_dir, f"{rep.study_id}.csv")
                    report_mod.write_csv(rep, path)
                    files.append(os.path.basename(path))
                if "json" in run.formats:
                    path = os.path.join(run.out_dir, f"{rep.study_id}.json")
                    report_mod.write_json(rep, path)
                    files.append(os.path.basename(path))
                manifest.append({
                    "study": spec.name,
                    "id": rep.study_id,
                    "files": files,
                    "columns": rep.columns,
                    "config_hash": report_mod.config_hash(rep.config),
                })
    except ConfigError as e:
        print(f"config error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as e:
        print(f"data error: {e}", file=sys.stderr)
        return EXIT_DATA
    report_mod.write_manifest(manifest, os.path.join(run.out_dir, "manifest.json"))
    print(f"wrote {len(manifest)} series to {run.out_dir}")
    return EXIT_OK


def cmd_generate(scenario_name: str, out_dir: str, seed: int | None) -> int:
    try:
        params = synthgen.scenario(scenario_name, seed=seed)
    except ValueError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_USAGE
    corpus = synthgen.generate(params)
    os.makedirs(out_dir, exist_ok=True)
    articles_path = os.path.join(out_dir, "articles.tsv")
    edges_path = os.path.join(out_dir, "edges.tsv")
    corpus_mod.write_tables(corpus, articles_path, edges_path)
    print(f"scenario: {scenario_name}")
    print(f"seed: {params.seed}")
    print(f"span: {params.span[0]}-{params.span[1]}")
    print(f"articles: {corpus.n_articles}")
    print(f"edges: {corpus.n_edges}")
    print(f"clamped_refs: {corpus.drops.get('clamped_refs', 0)}")
    print(f"wrote {articles_path} and {edges_path}")
    return EXIT_OK


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    if args.command == "validate":
        span = tuple(args.span) if args.span else None
        return cmd_validate(args.articles, args.edges, span)
    if args.command == "analyze":
        return cmd_analyze(args.config)
    if args.command == "generate":
        return cmd_generate(args.scenario, args.out, args.seed)
    return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
