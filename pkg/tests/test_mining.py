import json
import string
import subprocess

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from leaklint.errors import InvalidPatternError, MiningInputError
from leaklint.mining import (
    DEFAULT_DIFF_SIGNATURES,
    DEFAULT_LOG_KEYWORDS,
    DEFAULT_REMOVAL_PATTERNS,
    CommitRecord,
    MiningConfig,
    canonicalize,
    load_config,
    match_log,
    mine,
    read_git_history,
    read_history,
    read_jsonl_history,
    remove_noise,
    scan_diff,
)


@pytest.fixture(scope="module")
def config():
    return MiningConfig()


# -- defaults ---------------------------------------------------------------------


def test_default_log_keywords():
    assert DEFAULT_LOG_KEYWORDS == [
        "leak", "leakage", "release", "recycle", "cancel",
        "unload", "unlock", "unmount", "unregister", "close",
    ]


def test_default_diff_signatures():
    assert DEFAULT_DIFF_SIGNATURES == [
        ".close(", ".release(", ".removeUpdates(", ".unlock(", ".stop(",
        ".abandonAudioFocus(", ".cancel(", ".disableNetwork(",
        ".stopPreview(", ".stopFaceDetection(", ".unregisterListener(",
    ]


def test_default_removal_patterns_byte_match_published_forms():
    assert DEFAULT_REMOVAL_PATTERNS == [
        "release (v|ver)?[0-9]+",
        "close issue #?[0-9]+",
    ]


def test_bad_removal_pattern_rejected():
    with pytest.raises(InvalidPatternError):
        MiningConfig(removal_patterns=["release ([0-9"])


# -- canonicalize -----------------------------------------------------------------


def test_canonicalize_examples():
    assert canonicalize("Fixed Cursor LEAK!!") == "fixed cursor leak"
    assert canonicalize("Release v1.0.1") == "release v1 0 1"
    assert canonicalize("") == ""


@settings(max_examples=300)
@given(st.text(max_size=60))
def test_canonicalize_idempotent_and_alphabet(text):
    once = canonicalize(text)
    assert canonicalize(once) == once
    assert set(once) <= set(string.ascii_lowercase + string.digits + " ")


# -- remove_noise ------------------------------------------------------------------


def test_remove_noise_examples(config):
    assert remove_noise("release v101 fix cursor leak", config) == "fix cursor leak"
    assert remove_noise("close issue 168", config) == ""
    assert remove_noise("unlock screen faster", config) == "unlock screen faster"


def test_remove_noise_canonical_variant(config):
    # Punctuation became spaces during canonicalization.
    assert remove_noise(canonicalize("Bump version, release v1.0.1"), config) == "bump version"
    assert remove_noise(canonicalize("Close issue #168"), config) == ""


@settings(max_examples=300)
@given(st.text(alphabet=string.ascii_lowercase + string.digits + " ", max_size=60))
def test_remove_noise_idempotent(text):
    config = MiningConfig()
    once = remove_noise(text, config)
    assert remove_noise(once, config) == once


# -- match_log ----------------------------------------------------------------------


def test_match_log_examples(config):
    assert match_log("Fix wakelock leak in service", config) == ["leak"]
    assert match_log("Bump version, release v1.0.1", config) == []
    assert match_log("Unregistering listeners on destroy", config) == ["unregister"]


def test_match_log_stemmed_forms(config):
    assert match_log("Recycled bitmaps when closing the viewer", config) == ["recycle", "close"]
    assert match_log("cancelling stale timers", config) == ["cancel"]


@settings(max_examples=200)
@given(
    st.lists(
        st.sampled_from(["fix", "cursor", "leak", "update", "ui", "unlock", "timer"]),
        max_size=6,
    ),
    st.integers(min_value=0, max_value=6),
)
def test_match_log_invariant_under_release_phrase(words, position):
    config = MiningConfig()
    base = " ".join(words)
    inserted = words[: position] + ["release v1.0.1"] + words[position:]
    assert match_log(" ".join(inserted), config) == match_log(base, config)


# -- scan_diff -----------------------------------------------------------------------


DIFF = """diff --git a/src/CamHolder.java b/src/CamHolder.java
index 01234..56789 100644
--- a/src/CamHolder.java
+++ b/src/CamHolder.java
@@ -10,6 +10,7 @@ class CamHolder {
         stopRecording();
+        mCamera.release();
-        cursor.close();
@@ -31,3 +32,4 @@ class CamHolder {
+        // tidy up listeners
+        manager.unregisterListener(probe);
"""


def test_scan_diff_matches_added_lines_only(config):
    matches, diagnostics = scan_diff(DIFF, config)
    assert diagnostics == []
    assert matches == [
        ("src/CamHolder.java", "        mCamera.release();"),
        ("src/CamHolder.java", "        manager.unregisterListener(probe);"),
    ]


def test_scan_diff_ignores_file_headers(config):
    matches, _ = scan_diff("+++ b/a.close(weird).java\n", config)
    assert matches == []


def test_scan_diff_malformed_hunk_reported(config):
    matches, diagnostics = scan_diff("@@ broken @@\n+ c.close();\n", config)
    assert len(diagnostics) == 1
    assert matches == [("<unknown>", " c.close();")]


# -- mine ---------------------------------------------------------------------------


def test_mine_diff_only_candidate(config):
    history = [
        CommitRecord("c1", "update docs", ""),
        CommitRecord("c2", "refactor layout", "+++ b/A.java\n@@ -1,1 +1,2 @@\n+ lock.release();\n"),
        CommitRecord("c3", "polish strings", ""),
    ]
    got = mine(history, config)
    assert [(c.commit_id, c.reason) for c in got] == [("c2", "diff")]


def test_mine_log_only_candidate(config):
    got = mine([CommitRecord("c9", "fix cursor leak", "")], config)
    assert [(c.commit_id, c.reason) for c in got] == [("c9", "log")]
    assert got[0].matched_log_stems == ["leak"]


def test_mine_release_decoy_excluded(config):
    assert mine([CommitRecord("c1", "release v2", "")], config) == []


def test_mine_empty_tables_yield_nothing():
    config = MiningConfig(log_keywords=[], diff_signatures=[])
    history = [CommitRecord("c1", "fix cursor leak", "+ c.close();\n")]
    assert mine(history, config) == []


def test_mine_oversized_diff_flagged():
    config = MiningConfig(max_diff_bytes=10)
    record = CommitRecord("c1", "fix leak", "+ giant.release();\n" * 100)
    got = mine([record], config)
    assert got[0].diff_skipped
    assert got[0].reason == "log"
    assert got[0].matched_diff_lines == []


def test_mine_deterministic(config):
    history = [
        CommitRecord(f"c{i}", log, "")
        for i, log in enumerate(["fix leak", "noop", "unmount fix", "release v3"])
    ]
    first = [(c.commit_id, c.reason, tuple(c.matched_log_stems)) for c in mine(history, config)]
    second = [(c.commit_id, c.reason, tuple(c.matched_log_stems)) for c in mine(history, config)]
    assert first == second


# -- config and history readers ---------------------------------------------------------


def test_load_config_extends_removal_patterns(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"removal_patterns": ["autogenerated [0-9]+"]}))
    config = load_config(path)
    assert config.removal_patterns[:2] == DEFAULT_REMOVAL_PATTERNS
    assert "autogenerated [0-9]+" in config.removal_patterns
    assert config.log_keywords == DEFAULT_LOG_KEYWORDS


def test_load_config_rejects_unknown_fields(tmp_path):
    path = tmp_path / "config.json"
    path.write_text(json.dumps({"keywords": ["leak"]}))
    with pytest.raises(MiningInputError):
        load_config(path)


def test_jsonl_reader_isolates_bad_lines(tmp_path):
    path = tmp_path / "history.jsonl"
    path.write_text(
        '{"id": "a1", "log": "fix leak", "diff": ""}\n'
        "this is not json\n"
        '{"id": "a2", "log": "noop", "diff": ""}\n'
    )
    records, diagnostics = read_jsonl_history(path)
    assert [r.commit_id for r in records] == ["a1", "a2"]
    assert len(diagnostics) == 1


def test_read_history_rejects_plain_directory(tmp_path):
    with pytest.raises(MiningInputError):
        read_history(tmp_path)


def _git(repo, *args):
    subprocess.run(["git", "-C", str(repo), *args], check=True, capture_output=True)


def test_git_history_reader(tmp_path, config):
    repo = tmp_path / "repo"
    repo.mkdir()
    _git(repo, "init", "-q")
    _git(repo, "config", "user.email", "dev@example.com")
    _git(repo, "config", "user.name", "dev")
    (repo / "A.java").write_text("class A {}\n")
    _git(repo, "add", ".")
    _git(repo, "commit", "-qm", "initial import")
    (repo / "A.java").write_text("class A { void done(Cursor c) { c.close(); } }\n")
    _git(repo, "commit", "-qam", "Fix cursor leak when rotating")
    records, diagnostics = read_git_history(repo)
    assert diagnostics == []
    assert [r.log for r in records] == ["initial import", "Fix cursor leak when rotating"]
    candidates = mine(records, config)
    assert len(candidates) == 1
    assert candidates[0].reason == "both"
