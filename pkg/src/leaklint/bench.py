"""Scores checker findings against a known-bug manifest.

The manifest is a CSV with header
``app,resource_class,file,method,buggy_rev,fix_rev,report_url,extent,consequence``.
A finding matches an entry when the file paths and resource class are equal
and the methods match (an entry with an empty method matches any).  Matching
is one-to-one: each entry absorbs at most one finding, extra findings on an
already-matched entry count as false positives, so tp+fp equals the number
of findings and tp+fn the number of entries.

``stats`` reproduces the aggregate shape of a manifest: totals, counts per
resource class and consequence mark, and the leak-extent split with
percentages (one decimal, round half up).
"""

from __future__ import annotations

import csv
from collections import Counter
from dataclasses import dataclass, field
from decimal import ROUND_HALF_UP, Decimal

from .errors import ManifestFormatError, ManifestValidationError

MANIFEST_HEADER = [
    "app", "resource_class", "file", "method", "buggy_rev",
    "fix_rev", "report_url", "extent", "consequence",
]

_EXTENTS = {"complete", "exceptional", "normal", ""}
_CONSEQUENCES = {"I", "II", "III", ""}

# Which resource classes each checker is responsible for when computing
# per-checker recall; None means the checker is generic.
CHECKER_SCOPE: dict[str, set[str] | None] = {
    "move_to_first": {"android.database.Cursor"},
    "get_count": {"android.database.Cursor"},
    "swap_cursor": {"android.database.Cursor"},
    "reacquire_counted": {
        "android.os.PowerManager.WakeLock",
        "android.net.wifi.WifiManager.WifiLock",
        "java.util.concurrent.Semaphore",
    },
    "lost_reference": None,
    "lacking_reference": None,
    "lifecycle_pairing": None,
}


@dataclass(frozen=True)
class ManifestEntry:
    app: str
    resource_class: str
    file: str
    method: str
    buggy_rev: str
    fix_rev: str = ""
    report_url: str = ""
    extent: str = ""
    consequence: str = ""

    def key(self):
        return (self.app, self.file, self.method, self.buggy_rev, self.resource_class)


def load_manifest(path) -> list[ManifestEntry]:
    try:
        with open(path, "r", encoding="utf-8", newline="") as fh:
            reader = csv.reader(fh)
            rows = list(reader)
    except OSError as exc:
        raise ManifestFormatError(f"cannot read manifest {path}: {exc}") from exc
    if not rows:
        raise ManifestFormatError("manifest is empty (missing header)")
    if rows[0] != MANIFEST_HEADER:
        raise ManifestFormatError(
            f"bad header {rows[0]!r}; expected {','.join(MANIFEST_HEADER)}", row=1
        )
    entries: list[ManifestEntry] = []
    seen = set()
    for i, row in enumerate(rows[1:], start=2):
        if not row:
            continue
        if len(row) != len(MANIFEST_HEADER):
            raise ManifestFormatError(f"expected {len(MANIFEST_HEADER)} fields, got {len(row)}", row=i)
        entry = ManifestEntry(*[cell.strip() for cell in row])
        for required in ("app", "resource_class", "file", "buggy_rev"):
            if not getattr(entry, required):
                raise ManifestFormatError(f"missing {required}", row=i)
        if entry.extent not in _EXTENTS:
            raise ManifestFormatError(f"bad extent {entry.extent!r}", row=i)
        if entry.consequence not in _CONSEQUENCES:
            raise ManifestFormatError(f"bad consequence {entry.consequence!r}", row=i)
        if entry.key() in seen:
            raise ManifestValidationError(f"duplicate entry at row {i}: {entry.key()}")
        seen.add(entry.key())
        entries.append(entry)
    return entries


# -- scoring ---------------------------------------------------------------------


@dataclass
class Metrics:
    tp: int = 0
    fp: int = 0
    fn: int = 0

    @property
    def precision(self) -> float:
        return self.tp / (self.tp + self.fp) if (self.tp + self.fp) else 1.0

    @property
    def recall(self) -> float:
        return self.tp / (self.tp + self.fn) if (self.tp + self.fn) else 1.0

    def to_json(self) -> dict:
        return {
            "tp": self.tp, "fp": self.fp, "fn": self.fn,
            "precision": self.precision, "recall": self.recall,
        }


@dataclass
class Evaluation:
    overall: Metrics = field(default_factory=Metrics)
    per_checker: dict[str, Metrics] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "overall": self.overall.to_json(),
            "per_checker": {k: m.to_json() for k, m in sorted(self.per_checker.items())},
        }


def _norm_path(path: str) -> str:
    path = path.replace("\\", "/")
    while path.startswith("./"):
        path = path[2:]
    return path


def _matches(finding: dict, entry: ManifestEntry) -> bool:
    if _norm_path(finding.get("file", "")) != _norm_path(entry.file):
        return False
    if finding.get("resource_class", "") != entry.resource_class:
        return False
    return not entry.method or finding.get("method", "") == entry.method


def _score(findings: list[dict], entries: list[ManifestEntry]) -> Metrics:
    findings = sorted(
        findings,
        key=lambda f: (f.get("file", ""), f.get("line", 0), f.get("checker", ""), f.get("method", "")),
    )
    entries = sorted(entries, key=lambda e: e.key())
    used: set[int] = set()
    metrics = Metrics()
    for entry in entries:
        for i, finding in enumerate(findings):
            if i not in used and _matches(finding, entry):
                used.add(i)
                metrics.tp += 1
                break
        else:
            metrics.fn += 1
    metrics.fp = len(findings) - len(used)
    return metrics


def evaluate(findings: list[dict], entries: list[ManifestEntry]) -> Evaluation:
    """Precision/recall of findings against the manifest, overall and per checker."""
    result = Evaluation(overall=_score(findings, entries))
    checkers = sorted({f.get("checker", "?") for f in findings} | set(CHECKER_SCOPE))
    for checker in checkers:
        scope = CHECKER_SCOPE.get(checker)
        in_scope = [e for e in entries if scope is None or e.resource_class in scope]
        own = [f for f in findings if f.get("checker") == checker]
        result.per_checker[checker] = _score(own, in_scope)
    return result


# -- aggregate statistics ------------------------------------------------------------


@dataclass
class StatsReport:
    total: int
    by_resource_class: dict[str, int]
    by_consequence: dict[str, int]
    by_extent: dict[str, int]
    extent_pct: dict[str, float]

    def to_json(self) -> dict:
        return {
            "total": self.total,
            "by_resource_class": dict(sorted(self.by_resource_class.items())),
            "by_consequence": dict(sorted(self.by_consequence.items())),
            "by_extent": {
                cat: {"count": self.by_extent.get(cat, 0), "pct": self.extent_pct.get(cat, 0.0)}
                for cat in ("complete", "normal", "exceptional", "")
                if cat in self.by_extent
            },
        }


def _pct(count: int, total: int) -> float:
    if total == 0:
        return 0.0
    value = Decimal(count) * 100 / Decimal(total)
    return float(value.quantize(Decimal("0.1"), rounding=ROUND_HALF_UP))


def load_bug_counts() -> dict[str, int]:
    """Bundled per-resource-class bug counts of the mined dataset."""
    from importlib import resources

    text = resources.files("leaklint").joinpath("data/bug_counts.csv").read_text("utf-8")
    counts: dict[str, int] = {}
    for row in csv.DictReader(text.splitlines()):
        counts[row["class"]] = int(row["bugs"])
    return counts


def stats(entries: list[ManifestEntry]) -> StatsReport:
    by_class = Counter(e.resource_class for e in entries)
    by_consequence = Counter(e.consequence or "" for e in entries)
    by_extent = Counter(e.extent or "" for e in entries)
    specified = sum(count for cat, count in by_extent.items() if cat)
    extent_pct = {
        cat: _pct(count, specified) for cat, count in by_extent.items() if cat
    }
    return StatsReport(
        total=len(entries),
        by_resource_class=dict(by_class),
        by_consequence=dict(by_consequence),
        by_extent=dict(by_extent),
        extent_pct=extent_pct,
    )
