"""Classify app-store permission datasets and compute platform statistics.

Permissions map to one of three classes: IDP (directly exposes someone
else's data), PIDP (potentially does), NIDP (neither). The mapping lives
in a versioned TOML config; datasets are ingested from CSV.
"""

from __future__ import annotations

import argparse
import csv
import json
import logging
import statistics
import sys
from dataclasses import asdict, dataclass
from enum import Enum
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping

try:
    import tomllib
except ModuleNotFoundError:  # python < 3.11
    import tomli as tomllib

logger = logging.getLogger(__name__)


class Platform(str, Enum):
    ANDROID = "android"
    FIREFOX = "firefox"
    OPERA = "opera"
    WORKSPACE = "workspace"
    ZOOM = "zoom"


class PermissionClass(str, Enum):
    IDP = "IDP"
    PIDP = "PIDP"
    NIDP = "NIDP"


class BadHeader(ValueError):
    pass


class EmptyDataset(ValueError):
    pass


@dataclass
class AppRecord:
    platform: Platform
    name: str
    category: str
    permissions: list[str]
    users: int | None = None
    rating: float | None = None


@dataclass(frozen=True)
class RowError:
    line: int
    message: str


@dataclass
class LoadResult:
    records: list[AppRecord]
    errors: list[RowError]


@dataclass(frozen=True)
class PlatformSummary:
    total_apps: int
    apps_with_idp: int
    apps_with_pidp: int
    apps_with_either: int
    ratio_either: float
    mean_idp_pidp_per_app: float
    mean_total_per_app: float
    proportion: float


@dataclass(frozen=True)
class CategoryStats:
    apps: int
    mean_total: float
    mean_idp_pidp: float
    histogram: dict[int, int]


class PermissionMap:
    """The (platform, permission) -> class mapping from a config file.

    Unknown permission strings classify as NIDP with a logged warning so
    full-store runs stay robust while config drift remains visible.
    """

    def __init__(self, table: Mapping[Platform, Mapping[str, PermissionClass]], version: int):
        self._table = {Platform(p): dict(m) for p, m in table.items()}
        self.version = version
        self._warned: set[tuple[Platform, str]] = set()

    @classmethod
    def from_toml(cls, path: str | Path) -> "PermissionMap":
        raw = tomllib.loads(Path(path).read_text(encoding="utf-8"))
        return cls._from_parsed(raw)

    @classmethod
    def bundled(cls) -> "PermissionMap":
        raw = tomllib.loads(
            (resources.files("idpf") / "data" / "audit" / "tables.toml").read_text(encoding="utf-8")
        )
        return cls._from_parsed(raw)

    @classmethod
    def _from_parsed(cls, raw: Mapping) -> "PermissionMap":
        table: dict[Platform, dict[str, PermissionClass]] = {}
        for platform in Platform:
            section = raw.get(platform.value, {})
            mapping: dict[str, PermissionClass] = {}
            for cls_name in ("idp", "pidp", "nidp"):
                for perm in section.get(cls_name, []):
                    mapping.setdefault(perm, PermissionClass(cls_name.upper()))
            table[platform] = mapping
        return cls(table, int(raw.get("version", 0)))

    def classify(self, platform: Platform | str, permission: str) -> PermissionClass:
        platform = Platform(platform)
        found = self._table.get(platform, {}).get(permission)
        if found is not None:
            return found
        key = (platform, permission)
        if key not in self._warned:
            self._warned.add(key)
            logger.warning("unmapped permission on %s: %r (classified NIDP)", platform.value, permission)
        return PermissionClass.NIDP

    def known(self, platform: Platform | str, permission: str) -> bool:
        return permission in self._table.get(Platform(platform), {})


REQUIRED_COLUMNS = ("name", "category", "permissions")


def load_dataset(path: str | Path, platform: Platform | str) -> LoadResult:
    """Read one app per CSV row; malformed rows go to the error report."""
    platform = Platform(platform)
    path = Path(path)
    if not path.is_file():
        raise FileNotFoundError(str(path))
    records: list[AppRecord] = []
    errors: list[RowError] = []
    with path.open(newline="", encoding="utf-8") as handle:
        reader = csv.DictReader(handle)
        header = reader.fieldnames or []
        missing = [col for col in REQUIRED_COLUMNS if col not in header]
        if missing:
            raise BadHeader(f"missing columns: {missing}")
        for row in reader:
            line = reader.line_num
            if any(row.get(col) is None for col in REQUIRED_COLUMNS):
                errors.append(RowError(line, "short row"))
                continue
            raw_perms = row["permissions"] or ""
            perms = [p.strip() for p in raw_perms.split(";") if p.strip()]
            users: int | None = None
            rating: float | None = None
            try:
                if (row.get("users") or "").strip():
                    users = int(row["users"])
                if (row.get("rating") or "").strip():
                    rating = float(row["rating"])
            except ValueError as exc:
                errors.append(RowError(line, f"bad numeric field: {exc}"))
                continue
            if not row["name"].strip():
                errors.append(RowError(line, "empty app name"))
                continue
            records.append(
                AppRecord(platform, row["name"], row["category"], perms, users, rating)
            )
    return LoadResult(records, errors)


def _idp_pidp_count(record: AppRecord, pmap: PermissionMap) -> tuple[int, int]:
    idp = 0
    pidp = 0
    for perm in record.permissions:
        cls = pmap.classify(record.platform, perm)
        if cls is PermissionClass.IDP:
            idp += 1
        elif cls is PermissionClass.PIDP:
            pidp += 1
    return idp, pidp


def summarize(records: Iterable[AppRecord], pmap: PermissionMap) -> PlatformSummary:
    records = list(records)
    if not records:
        raise EmptyDataset("no records")
    with_idp = 0
    with_pidp = 0
    with_either = 0
    idp_pidp_total = 0
    perm_total = 0
    for record in records:
        idp, pidp = _idp_pidp_count(record, pmap)
        perm_total += len(record.permissions)
        idp_pidp_total += idp + pidp
        if idp:
            with_idp += 1
        if pidp:
            with_pidp += 1
        if idp or pidp:
            with_either += 1
    total = len(records)
    mean_ip = idp_pidp_total / total
    mean_all = perm_total / total
    return PlatformSummary(
        total_apps=total,
        apps_with_idp=with_idp,
        apps_with_pidp=with_pidp,
        apps_with_either=with_either,
        ratio_either=with_either / total,
        mean_idp_pidp_per_app=mean_ip,
        mean_total_per_app=mean_all,
        proportion=(mean_ip / mean_all) if mean_all else 0.0,
    )


def category_histogram(
    records: Iterable[AppRecord], pmap: PermissionMap
) -> dict[str, CategoryStats]:
    """Per app-category permission means and the IDP/PIDP count histogram."""
    records = list(records)
    if not records:
        raise EmptyDataset("no records")
    buckets: dict[str, list[AppRecord]] = {}
    for record in records:
        buckets.setdefault(record.category, []).append(record)
    out: dict[str, CategoryStats] = {}
    for category in sorted(buckets):
        group = buckets[category]
        counts = []
        totals = []
        for record in group:
            idp, pidp = _idp_pidp_count(record, pmap)
            counts.append(idp + pidp)
            totals.append(len(record.permissions))
        histogram: dict[int, int] = {}
        for count in counts:
            histogram[count] = histogram.get(count, 0) + 1
        out[category] = CategoryStats(
            apps=len(group),
            mean_total=statistics.fmean(totals),
            mean_idp_pidp=statistics.fmean(counts),
            histogram=dict(sorted(histogram.items())),
        )
    return out


def write_histogram_csv(stats: Mapping[str, CategoryStats], path: str | Path) -> None:
    """Long-format, plot-ready rows: one per (category, idp_pidp_count)."""
    with Path(path).open("w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(
            ["category", "apps", "mean_total", "mean_idp_pidp", "idp_pidp_count", "app_count"]
        )
        for category, cs in stats.items():
            for count, apps in cs.histogram.items():
                writer.writerow(
                    [category, cs.apps, f"{cs.mean_total:.4f}", f"{cs.mean_idp_pidp:.4f}", count, apps]
                )


def _load_map(arg: str | None) -> PermissionMap:
    return PermissionMap.from_toml(arg) if arg else PermissionMap.bundled()


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(prog="idp-audit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_sum = sub.add_parser("summarize", help="platform-level IDP/PIDP statistics")
    p_sum.add_argument("--platform", required=True, choices=[p.value for p in Platform])
    p_sum.add_argument("--input", required=True)
    p_sum.add_argument("--mapping", default=None, help="mapping TOML (default: bundled)")
    p_sum.add_argument("--out", default=None, help="write summary JSON here")

    p_hist = sub.add_parser("histogram", help="per-category permission histogram")
    p_hist.add_argument("--platform", required=True, choices=[p.value for p in Platform])
    p_hist.add_argument("--input", required=True)
    p_hist.add_argument("--mapping", default=None)
    p_hist.add_argument("--bucket", default="category", choices=["category"])
    p_hist.add_argument("--out", default=None, help="write plot-ready CSV here")

    args = parser.parse_args(argv)
    pmap = _load_map(args.mapping)
    loaded = load_dataset(args.input, args.platform)
    for err in loaded.errors:
        print(f"row error at line {err.line}: {err.message}", file=sys.stderr)

    if args.command == "summarize":
        summary = summarize(loaded.records, pmap)
        payload = {
            "platform": args.platform,
            "mapping_version": pmap.version,
            "summary": asdict(summary),
            "row_errors": [asdict(e) for e in loaded.errors],
        }
        text = json.dumps(payload, indent=2)
        if args.out:
            Path(args.out).write_text(text + "\n", encoding="utf-8")
        print(text)
    else:
        stats = category_histogram(loaded.records, pmap)
        if args.out:
            write_histogram_csv(stats, args.out)
        print(f"{'category':<24} {'apps':>5} {'mean_total':>11} {'mean_idp_pidp':>14}")
        for category, cs in stats.items():
            print(f"{category:<24} {cs.apps:>5} {cs.mean_total:>11.2f} {cs.mean_idp_pidp:>14.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
