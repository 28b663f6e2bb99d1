"""CSV/JSON emission for series reports. All writes are atomic
(write to a temp file in the target directory, then rename)."""

from __future__ import annotations

import csv
import hashlib
import json
import os
import tempfile

from citeconc.studies import SeriesReport


def _atomic_write(path: str, data: str) -> None:
    d = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=d, prefix=".tmp-", text=True)
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as f:
            f.write(data)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return repr(v)
    return str(v)


def write_csv(report: SeriesReport, path: str) -> None:
    import io

    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(report.columns)
    for row in report.rows:
        wr.writerow([_cell(row.get(c)) for c in report.columns])
    _atomic_write(path, buf.getvalue())


def write_json(report: SeriesReport, path: str) -> None:
    payload = {
        "study": report.study_id,
        "config": report.config,
        "columns": report.columns,
        "rows": report.rows,
    }
    _atomic_write(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def config_hash(config: dict) -> str:
    return hashlib.sha256(json.dumps(config, sort_keys=True).encode()).hexdigest()


def write_manifest(entries: list[dict], path: str) -> None:
    _atomic_write(path, json.dumps({"outputs": entries}, indent=2, sort_keys=True) + "\n")
