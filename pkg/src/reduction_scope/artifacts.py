"""Scan CSV / summary JSON persistence and the on-disk scan cache."""

from __future__ import annotations

import csv
import hashlib
import json
import os
from pathlib import Path
from typing import Optional, Sequence, Union

from .classify import ReductionType
from .density import DensityReport, ScanRow, scan_rows
from .errors import ConfigError
from .numberfield import NumberField, SplitClass

CSV_COLUMNS = ("p", "degrees", "split_class", "inert_count", "reduction_type")
CACHE_ENV = "REDUCTION_SCOPE_CACHE"


def dumps(obj) -> str:
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def row_to_record(row: ScanRow) -> list[str]:
    return [
        str(row.p),
        "-".join(map(str, row.degrees)),
        row.split_class.value,
        "" if row.inert_count is None else str(row.inert_count),
        "" if row.reduction is None else row.reduction.value,
    ]


def record_to_row(rec: Sequence[str]) -> ScanRow:
    p, degrees, sc, inert, red = rec
    return ScanRow(
        p=int(p),
        degrees=tuple(int(d) for d in degrees.split("-")) if degrees else (),
        split_class=SplitClass(sc),
        inert_count=int(inert) if inert else None,
        reduction=ReductionType(red) if red else None,
    )


def write_scan_csv(rows: Sequence[ScanRow], path: Union[str, Path]) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, lineterminator="\n")
        w.writerow(CSV_COLUMNS)
        for row in rows:
            w.writerow(row_to_record(row))


def read_scan_csv(path: Union[str, Path]) -> list[ScanRow]:
    with open(path, newline="") as fh:
        r = csv.reader(fh)
        header = next(r, None)
        if tuple(header or ()) != CSV_COLUMNS:
            raise ConfigError(f"{path}: not a scan CSV (header {header})")
        try:
            return [record_to_row(rec) for rec in r]
        except ValueError as e:
            raise ConfigError(f"{path}: malformed row: {e}") from None


def write_summary(report: DensityReport, path: Union[str, Path]) -> None:
    Path(path).write_text(dumps(report.to_summary()))


def cache_dir() -> Path:
    env = os.environ.get(CACHE_ENV)
    if env:
        return Path(env)
    return Path(os.environ.get("XDG_CACHE_HOME", Path.home() / ".cache")) / "reduction-scope"


def field_key(K: NumberField, K0: Optional[NumberField], other_rule: Optional[ReductionType]) -> str:
    ident = {
        "poly": list(K.defining_poly),
        "k0_poly": list(K0.defining_poly) if K0 else None,
        "other_rule": other_rule.value if other_rule else None,
    }
    return hashlib.sha256(json.dumps(ident, sort_keys=True).encode()).hexdigest()[:24]


def cached_scan_rows(
    K: NumberField,
    bound: int,
    K0: Optional[NumberField] = None,
    other_rule: Optional[ReductionType] = None,
    workers: int = 1,
    directory: Optional[Path] = None,
) -> list[ScanRow]:
    """Scan rows for primes <= bound, reusing and extending any cached scan of the same field."""
    directory = directory or cache_dir()
    directory.mkdir(parents=True, exist_ok=True)
    key = field_key(K, K0, other_rule)
    csv_path, meta_path = directory / f"{key}.csv", directory / f"{key}.json"
    rows: list[ScanRow] = []
    have = 1
    if csv_path.exists() and meta_path.exists():
        try:
            have = int(json.loads(meta_path.read_text())["bound"])
            rows = read_scan_csv(csv_path)
        except (ValueError, KeyError, ConfigError):
            rows, have = [], 1
    if have >= bound:
        return [r for r in rows if r.p <= bound]
    rows += scan_rows(K, have + 1, bound, K0, other_rule, workers)
    tmp = csv_path.with_suffix(".tmp")
    write_scan_csv(rows, tmp)
    os.replace(tmp, csv_path)
    meta_path.write_text(dumps({"bound": bound, "poly": list(K.defining_poly)}))
    return rows
