"""Semi-automated mining of leak-fix commits from version-control history.

A commit is a candidate when its log message contains a resource-management
keyword (after canonicalization, noise-phrase removal, and stemming) or when
its diff adds a line invoking a known resource-releasing API.  The output is
a triage queue, not a verdict; every candidate still needs human review.

Keyword matching pipeline for logs:

    canonicalize -> remove_noise -> split -> stem -> compare stems

Noise phrases such as "release v1.0.1" or "close issue #168" contain the
keywords by accident and are deleted before matching.  Because
canonicalization replaces punctuation with spaces, the removal patterns are
applied in an internal space-tolerant variant (digit runs may be split by
single spaces, '#' cannot occur) at word boundaries of the canonical text.
"""

from __future__ import annotations

import json
import re
import subprocess
from dataclasses import dataclass, field

from .errors import InvalidPatternError, MiningInputError
from .porter import stem_word

DEFAULT_LOG_KEYWORDS = [
    "leak", "leakage", "release", "recycle", "cancel",
    "unload", "unlock", "unmount", "unregister", "close",
]

DEFAULT_DIFF_SIGNATURES = [
    ".close(", ".release(", ".removeUpdates(",
    ".unlock(", ".stop(", ".abandonAudioFocus(",
    ".cancel(", ".disableNetwork(", ".stopPreview(",
    ".stopFaceDetection(", ".unregisterListener(",
]

DEFAULT_REMOVAL_PATTERNS = [
    "release (v|ver)?[0-9]+",
    "close issue #?[0-9]+",
]

DEFAULT_MAX_DIFF_BYTES = 1_048_576


def _canonical_variant(pattern: str) -> str:
    """Rewrite a removal pattern to match canonicalized text.

    '#' never survives canonicalization and digit runs may have been split
    by punctuation, so '#'/'#?' atoms are dropped and digit runs accept
    single internal spaces.
    """
    variant = pattern
    for atom in ("\\#?", "\\#", "#?", "#"):
        variant = variant.replace(atom, "")
    variant = variant.replace("[0-9]+", "[0-9]+(?: [0-9]+)*")
    return r"\b(?:" + variant + r")\b"


@dataclass
class MiningConfig:
    """Keyword tables and limits controlling the miner."""

    log_keywords: list[str] = field(default_factory=lambda: list(DEFAULT_LOG_KEYWORDS))
    removal_patterns: list[str] = field(default_factory=lambda: list(DEFAULT_REMOVAL_PATTERNS))
    diff_signatures: list[str] = field(default_factory=lambda: list(DEFAULT_DIFF_SIGNATURES))
    max_diff_bytes: int = DEFAULT_MAX_DIFF_BYTES

    def __post_init__(self):
        self._compiled = []
        for pattern in self.removal_patterns:
            try:
                self._compiled.append(re.compile(_canonical_variant(pattern)))
            except re.error as exc:
                raise InvalidPatternError(f"bad removal pattern {pattern!r}: {exc}") from None
        self._keyword_stems = {stem_word(k): k for k in self.log_keywords}


def load_config(path) -> MiningConfig:
    """Load a miner config file; user removal patterns extend the defaults."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise MiningInputError(f"cannot read config {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise MiningInputError(f"config {path} is not valid JSON: {exc.msg}") from None
    if not isinstance(doc, dict):
        raise MiningInputError("config top level must be an object")
    known = {"log_keywords", "removal_patterns", "diff_signatures", "max_diff_bytes"}
    unknown = set(doc) - known
    if unknown:
        raise MiningInputError(f"unknown config fields {sorted(unknown)}")
    removal = list(DEFAULT_REMOVAL_PATTERNS)
    for pattern in doc.get("removal_patterns", []):
        if pattern not in removal:
            removal.append(pattern)
    return MiningConfig(
        log_keywords=list(doc.get("log_keywords", DEFAULT_LOG_KEYWORDS)),
        removal_patterns=removal,
        diff_signatures=list(doc.get("diff_signatures", DEFAULT_DIFF_SIGNATURES)),
        max_diff_bytes=int(doc.get("max_diff_bytes", DEFAULT_MAX_DIFF_BYTES)),
    )


@dataclass(frozen=True)
class CommitRecord:
    """One revision: id, log message, unified diff text (possibly empty)."""

    commit_id: str
    log: str
    diff: str = ""


@dataclass
class CandidateCommit:
    """A commit whose log or diff looks like a resource-leak fix."""

    commit_id: str
    matched_log_stems: list[str]
    matched_diff_lines: list[tuple[str, str]]
    reason: str  # "log" | "diff" | "both"
    diff_skipped: bool = False


def canonicalize(text: str) -> str:
    """Lowercase, punctuation to spaces, whitespace collapsed and trimmed."""
    return re.sub(r"[^a-z0-9]+", " ", text.lower()).strip()


def remove_noise(text: str, config: MiningConfig) -> str:
    """Delete noise phrases from canonical text until no pattern matches."""
    while True:
        new = text
        for regex in config._compiled:
            new = regex.sub(" ", new)
        new = re.sub(r"\s+", " ", new).strip()
        if new == text:
            return new
        text = new


def match_log(log: str, config: MiningConfig) -> list[str]:
    """Keywords (from the config table) whose stems occur in the log."""
    cleaned = remove_noise(canonicalize(log), config)
    token_stems = {stem_word(tok) for tok in cleaned.split()}
    return [kw for kw in config.log_keywords if stem_word(kw) in token_stems]


_HUNK_RE = re.compile(r"^@@ -\d+(?:,\d+)? \+\d+(?:,\d+)? @@")


def scan_diff(diff: str, config: MiningConfig) -> tuple[list[tuple[str, str]], list[str]]:
    """Added lines containing a release-API signature, attributed to files.

    Returns (matches, diagnostics); malformed hunk headers are reported and
    skipped without aborting the scan.
    """
    matches: list[tuple[str, str]] = []
    diagnostics: list[str] = []
    current_file = "<unknown>"
    for lineno, line in enumerate(diff.splitlines(), start=1):
        if line.startswith("+++ "):
            target = line[4:].strip()
            if target.startswith("b/"):
                target = target[2:]
            current_file = target
            continue
        if line.startswith("@@"):
            if not _HUNK_RE.match(line):
                diagnostics.append(f"line {lineno}: malformed hunk header {line!r}")
            continue
        if line.startswith("+") and not line.startswith("+++"):
            content = line[1:]
            if any(sig in content for sig in config.diff_signatures):
                matches.append((current_file, content))
    return matches, diagnostics


def mine(history, config: MiningConfig) -> list[CandidateCommit]:
    """Candidates from an ordered commit sequence, preserving input order."""
    candidates: list[CandidateCommit] = []
    for record in history:
        keywords = match_log(record.log, config)
        diff_skipped = len(record.diff.encode("utf-8", "replace")) > config.max_diff_bytes
        if diff_skipped:
            diff_matches: list[tuple[str, str]] = []
        else:
            diff_matches, _ = scan_diff(record.diff, config)
        if not keywords and not diff_matches:
            continue
        reason = "both" if keywords and diff_matches else ("log" if keywords else "diff")
        candidates.append(
            CandidateCommit(
                commit_id=record.commit_id,
                matched_log_stems=[stem_word(k) for k in keywords],
                matched_diff_lines=diff_matches,
                reason=reason,
                diff_skipped=diff_skipped,
            )
        )
    return candidates


# ---------------------------------------------------------------------------
# History readers: a JSON-lines export (one {"id","log","diff"} object per
# line) or a git working copy read via the git CLI.
# ---------------------------------------------------------------------------


def read_jsonl_history(path) -> tuple[list[CommitRecord], list[str]]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            lines = fh.readlines()
    except OSError as exc:
        raise MiningInputError(f"cannot read history {path}: {exc}") from exc
    records: list[CommitRecord] = []
    diagnostics: list[str] = []
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            obj = json.loads(line)
            records.append(CommitRecord(str(obj["id"]), str(obj["log"]), str(obj.get("diff", ""))))
        except (json.JSONDecodeError, KeyError, TypeError) as exc:
            diagnostics.append(f"{path}:{lineno}: unreadable commit record ({exc})")
    return records, diagnostics


_GIT_RECORD = "\x01"
_GIT_FIELD = "\x02"


def read_git_history(repo_dir) -> tuple[list[CommitRecord], list[str]]:
    cmd = [
        "git", "-C", str(repo_dir), "log", "--reverse", "--no-color",
        f"--pretty=format:{_GIT_RECORD}%H{_GIT_FIELD}%B{_GIT_FIELD}", "-p",
    ]
    try:
        proc = subprocess.run(cmd, capture_output=True, text=True, errors="replace")
    except OSError as exc:
        raise MiningInputError(f"cannot run git in {repo_dir}: {exc}") from exc
    if proc.returncode != 0:
        raise MiningInputError(f"git log failed in {repo_dir}: {proc.stderr.strip()}")
    records: list[CommitRecord] = []
    diagnostics: list[str] = []
    for chunk in proc.stdout.split(_GIT_RECORD):
        if not chunk.strip():
            continue
        parts = chunk.split(_GIT_FIELD)
        if len(parts) != 3:
            diagnostics.append(f"unparseable git log record: {chunk[:60]!r}")
            continue
        commit_id, message, diff = parts
        records.append(CommitRecord(commit_id.strip(), message.strip(), diff.strip("\n")))
    return records, diagnostics


def read_history(path) -> tuple[list[CommitRecord], list[str]]:
    """Dispatch between a git working copy and a JSON-lines export."""
    import os

    if os.path.isdir(path):
        if not os.path.isdir(os.path.join(path, ".git")):
            raise MiningInputError(f"{path} is a directory but not a git working copy")
        return read_git_history(path)
    return read_jsonl_history(path)
