import json
from pathlib import Path

import pytest

from citeconc.cli import main
from conftest import ARTICLES_TSV, EDGES_TSV

GEN_OVERRIDES = """\
gen.span.start = 1990
gen.span.end = 1999
gen.articles.start = 150
gen.articles.end = 150
gen.refs.start = 4
gen.refs.end = 4
gen.seed = 11
"""


def write_fixture_tables(tmp_path):
    arts = tmp_path / "articles.tsv"
    edges = tmp_path / "edges.tsv"
    arts.write_text(ARTICLES_TSV)
    edges.write_text(EDGES_TSV)
    return str(arts), str(edges)


def test_validate_clean_fixture(tmp_path, capsys):
    arts, edges = write_fixture_tables(tmp_path)
    rc = main(["validate", arts, edges, "--span", "2000", "2004"])
    out = capsys.readouterr().out
    assert rc == 0
    assert "articles read: 5" in out
    assert "articles retained: 5" in out
    assert "dangling: 1" in out
    assert "duplicate_edge: 1" in out
    assert "future_dated: 1" in out
    assert "edges retained: 5" in out


def test_validate_bad_row_reports_line_number(tmp_path, capsys):
    arts = tmp_path / "articles.tsv"
    arts.write_text(
        "id\tpub_year\tfield\tregion\tjournal_id\tauthor_ids\n"
        "A\t2000\tF\tR\tJ\t\n"
        "B\tnotayear\tF\tR\tJ\t\n"
    )
    edges = tmp_path / "edges.tsv"
    edges.write_text("citing_id\tcited_id\n")
    rc = main(["validate", str(arts), str(edges)])
    err = capsys.readouterr().err
    assert rc == 2
    assert "line 3" in err


def test_validate_duplicate_id_is_error(tmp_path, capsys):
    arts = tmp_path / "articles.tsv"
    arts.write_text(
        "id\tpub_year\tfield\tregion\tjournal_id\tauthor_ids\n"
        "A\t2000\tF\tR\tJ\t\n"
        "A\t2001\tF\tR\tJ\t\n"
    )
    edges = tmp_path / "edges.tsv"
    edges.write_text("citing_id\tcited_id\n")
    rc = main(["validate", str(arts), str(edges)])
    assert rc == 2
    assert "duplicate article id" in capsys.readouterr().err


def test_validate_missing_file(tmp_path, capsys):
    rc = main(["validate", str(tmp_path / "nope.tsv"), str(tmp_path / "nope2.tsv")])
    assert rc == 2
    assert "cannot read" in capsys.readouterr().err


def test_usage_error_exits_one(capsys):
    with pytest.raises(SystemExit) as exc:
        main([])
    assert exc.value.code == 1


def test_generate_unknown_scenario(tmp_path, capsys):
    rc = main(["generate", "--scenario", "bogus", "--out", str(tmp_path)])
    assert rc == 1
    assert "unknown scenario" in capsys.readouterr().err


def test_generate_deterministic_and_round_trips(tmp_path, capsys):
    d1, d2 = tmp_path / "r1", tmp_path / "r2"
    # the stationary preset is the smallest; shrink nothing, just compare runs
    assert main(["generate", "--scenario", "stationary", "--out", str(d1), "--seed", "5"]) == 0
    summary = capsys.readouterr().out
    assert main(["generate", "--scenario", "stationary", "--out", str(d2), "--seed", "5"]) == 0
    capsys.readouterr()
    assert (d1 / "articles.tsv").read_bytes() == (d2 / "articles.tsv").read_bytes()
    assert (d1 / "edges.tsv").read_bytes() == (d2 / "edges.tsv").read_bytes()

    n_edges = int(next(l for l in summary.splitlines() if l.startswith("edges:")).split()[1])
    span = next(l for l in summary.splitlines() if l.startswith("span:")).split()[1]
    start, end = span.split("-")
    rc = main(["validate", str(d1 / "articles.tsv"), str(d1 / "edges.tsv"), "--span", start, end])
    out = capsys.readouterr().out
    assert rc == 0
    assert f"edges retained: {n_edges}" in out
    for reason in ("out_of_span", "dangling", "self_loop", "future_dated", "duplicate_edge"):
        assert f"{reason}: 0" in out


def analyze_config(out_dir, extra=""):
    return (
        "corpus.scenario = stationary\n"
        + GEN_OVERRIDES
        + f"output.dir = {out_dir}\n"
        "output.formats = csv,json\n"
        "studies = g5 u5\n"
        "g5.type = gini\n"
        "g5.window.length = 5\n"
        "u5.type = uncited\n"
        "u5.window.length = 5\n"
        + extra
    )


def test_analyze_writes_outputs_and_manifest(tmp_path):
    out_dir = tmp_path / "out"
    cfg = tmp_path / "run.conf"
    cfg.write_text(analyze_config(out_dir))
    assert main(["analyze", str(cfg)]) == 0
    manifest = json.loads((out_dir / "manifest.json").read_text())["outputs"]
    assert len(manifest) == 2
    names = {entry["study"] for entry in manifest}
    assert names == {"g5", "u5"}
    for entry in manifest:
        assert len(entry["files"]) == 2
        for fname in entry["files"]:
            assert (out_dir / fname).exists()
        assert len(entry["config_hash"]) == 64


def test_analyze_rerun_byte_identical(tmp_path):
    outs = []
    for run in ("a", "b"):
        out_dir = tmp_path / run
        cfg = tmp_path / f"{run}.conf"
        cfg.write_text(analyze_config(out_dir))
        assert main(["analyze", str(cfg)]) == 0
        outs.append(out_dir)
    a, b = outs
    files = sorted(p.name for p in a.iterdir())
    assert files == sorted(p.name for p in b.iterdir())
    for name in files:
        assert (a / name).read_bytes() == (b / name).read_bytes()


def test_analyze_four_approach_battery(tmp_path):
    out_dir = tmp_path / "out"
    cfg = tmp_path / "run.conf"
    lines = [
        "corpus.scenario = stationary",
        GEN_OVERRIDES.rstrip(),
        f"output.dir = {out_dir}",
        "output.formats = json",
        "studies = ci ce ri re",
    ]
    for name, approach, include in (
        ("ci", "citation_based", "true"), ("ce", "citation_based", "false"),
        ("ri", "reference_based", "true"), ("re", "reference_based", "false"),
    ):
        lines += [f"{name}.type = gini",
                  f"{name}.study.approach = {approach}",
                  f"{name}.study.include_uncited = {include}",
                  f"{name}.window.length = 3"]
    cfg.write_text("\n".join(lines) + "\n")
    assert main(["analyze", str(cfg)]) == 0
    manifest = json.loads((out_dir / "manifest.json").read_text())["outputs"]
    assert [e["study"] for e in manifest] == ["ci", "ce", "ri", "re"]
    assert len({e["config_hash"] for e in manifest}) == 4
    for e in manifest:
        rows = json.loads((out_dir / e["files"][0]).read_text())["rows"]
        assert len(rows) > 0


def test_analyze_unknown_key_fails_before_compute(tmp_path, capsys):
    out_dir = tmp_path / "out"
    cfg = tmp_path / "run.conf"
    cfg.write_text(analyze_config(out_dir, extra="g5.window.lenght = 5\n"))
    rc = main(["analyze", str(cfg)])
    assert rc == 1
    assert "unknown config key" in capsys.readouterr().err
    assert not out_dir.exists()


def test_analyze_requires_exactly_one_source(tmp_path, capsys):
    cfg = tmp_path / "run.conf"
    cfg.write_text("output.dir = x\nstudies = g\ng.type = gini\n")
    assert main(["analyze", str(cfg)]) == 1
    assert "exactly one" in capsys.readouterr().err


def test_analyze_missing_config(tmp_path, capsys):
    assert main(["analyze", str(tmp_path / "none.conf")]) == 1
    assert "cannot read" in capsys.readouterr().err


def test_analyze_file_input(tmp_path):
    arts, edges = write_fixture_tables(tmp_path)
    out_dir = tmp_path / "out"
    cfg = tmp_path / "run.conf"
    cfg.write_text(
        f"corpus.articles = {arts}\n"
        f"corpus.edges = {edges}\n"
        "span.start = 2000\nspan.end = 2004\n"
        f"output.dir = {out_dir}\n"
        "output.formats = csv\n"
        "studies = u\n"
        "u.type = uncited\n"
        "u.window.length = 1\n"
    )
    assert main(["analyze", str(cfg)]) == 0
    csv_text = (out_dir / "u.csv").read_text()
    assert "uncited_share" in csv_text.splitlines()[0]


def test_analyze_data_error_exit_two(tmp_path, capsys):
    arts = tmp_path / "articles.tsv"
    arts.write_text("id\tpub_year\tfield\tregion\tjournal_id\tauthor_ids\nA\tbad\tF\tR\tJ\t\n")
    edges = tmp_path / "edges.tsv"
    edges.write_text("citing_id\tcited_id\n")
    cfg = tmp_path / "run.conf"
    cfg.write_text(
        f"corpus.articles = {arts}\ncorpus.edges = {edges}\n"
        "span.start = 2000\nspan.end = 2004\n"
        f"output.dir = {tmp_path / 'out'}\n"
        "studies = u\nu.type = uncited\n"
    )
    assert main(["analyze", str(cfg)]) == 2
    assert "data error" in capsys.readouterr().err


def test_console_script_installed():
    import shutil
    import subprocess

    exe = shutil.which("citeconc")
    if exe is None:
        pytest.skip("console script not on PATH")
    proc = subprocess.run([exe, "generate", "--scenario", "bogus", "--out", "/tmp/x"],
                          capture_output=True, text=True)
    assert proc.returncode == 1
