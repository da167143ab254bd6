import json

import pytest

from leaklint.errors import (
    AmbiguousMatchError,
    RegistryFormatError,
    RegistryIOError,
    RegistryValidationError,
)
from leaklint.registry import (
    ApiSignature,
    Consequence,
    Registry,
    ResourceSpec,
    builtin_registry,
    dump_registry,
    load_registry,
    match_acquire,
    match_release,
    registry_to_dict,
)


def test_builtin_has_all_37_classes(registry):
    assert len(registry.specs) == 37
    android = [c for c in registry.specs if c.startswith("android.")]
    assert len(android) == 11
    assert len(registry.specs) - len(android) == 26


def test_builtin_cursor_is_memory_waste(registry):
    spec = registry.specs["android.database.Cursor"]
    assert spec.consequence is Consequence.MEMORY_WASTE


def test_builtin_wakelock_counted_energy(registry):
    spec = registry.specs["android.os.PowerManager.WakeLock"]
    assert spec.counted
    assert spec.consequence is Consequence.ENERGY_WASTE


def test_builtin_camera_exclusive_functionality(registry):
    spec = registry.specs["android.hardware.Camera"]
    assert spec.exclusive
    assert spec.consequence is Consequence.FUNCTIONALITY_LOSS


def test_builtin_decorator_streams_close_wrapped(registry):
    for name in (
        "java.io.BufferedReader",
        "java.io.FilterInputStream",
        "java.io.ObjectOutputStream",
        "java.io.InputStreamReader",
        "java.io.OutputStreamWriter",
    ):
        assert registry.specs[name].closes_wrapped, name
    assert not registry.specs["java.io.FileInputStream"].closes_wrapped


def test_builtin_lifecycle_pairs(registry):
    for pair in [
        ("onCreate", "onDestroy"),
        ("onStart", "onStop"),
        ("onResume", "onPause"),
        ("surfaceCreated", "surfaceDestroyed"),
    ]:
        assert pair in registry.lifecycle_pairs


def test_match_acquire_camera_open(registry):
    spec = match_acquire(registry, ApiSignature("Camera", "open", 0))
    assert spec.class_name == "android.hardware.Camera"


def test_match_acquire_unregistered_none(registry):
    assert match_acquire(registry, ApiSignature("String", "length", 0)) is None


def test_match_acquire_rawquery_gives_cursor(registry):
    spec = match_acquire(registry, ApiSignature("SQLiteDatabase", "rawQuery", 2))
    assert spec.class_name == "android.database.Cursor"


def test_match_acquire_wildcard_on_unknown_receiver(registry):
    match = registry.acquire_match(ApiSignature("*", "rawQuery", 2))
    assert match.spec.class_name == "android.database.Cursor"
    assert match.wildcard


def test_match_release_examples(registry):
    assert match_release(registry, ApiSignature("Cursor", "close", 0)).class_name == \
        "android.database.Cursor"
    assert match_release(registry, ApiSignature("WakeLock", "release", 0)).class_name == \
        "android.os.PowerManager.WakeLock"
    assert match_release(registry, ApiSignature("Cursor", "moveToFirst", 0)) is None


def test_release_self_consistency(registry):
    """Every typed release signature resolves back to its own spec."""
    for spec in registry.specs.values():
        for sig in spec.release:
            if sig.receiver == "*":
                continue
            got = match_release(registry, ApiSignature(sig.receiver, sig.method, sig.arity))
            assert got is spec, (spec.class_name, sig)


def test_match_is_deterministic(registry):
    site = ApiSignature("SQLiteDatabase", "query", None)
    results = {match_acquire(registry, site).class_name for _ in range(10)}
    assert results == {"android.database.Cursor"}


def test_ambiguous_match_raises():
    dup = dict(
        acquire=(ApiSignature("*", "grab"),),
        release=(ApiSignature("*", "drop"),),
        consequence=Consequence.MEMORY_WASTE,
    )
    reg = Registry(
        specs={
            "a.A": ResourceSpec(class_name="a.A", **dup),
            "b.B": ResourceSpec(class_name="b.B", **dup),
        }
    )
    with pytest.raises(AmbiguousMatchError):
        reg.acquire_match(ApiSignature("*", "grab", 0))


def test_signature_parse_roundtrip():
    for text in ("android.database.Cursor#close", "*#rawQuery", "java.io.FileReader#<init>/1"):
        assert ApiSignature.parse(text).unparse() == text


def test_signature_invariants():
    with pytest.raises(RegistryValidationError):
        ApiSignature("a.A", "")
    with pytest.raises(RegistryValidationError):
        ApiSignature("", "close")
    with pytest.raises(RegistryFormatError):
        ApiSignature.parse("no-separator")


def test_spec_requires_nonempty_signature_lists():
    with pytest.raises(RegistryValidationError):
        ResourceSpec(
            class_name="a.A", acquire=(), release=(ApiSignature("a.A", "close"),),
            consequence=Consequence.MEMORY_WASTE,
        )


# -- registry file handling --------------------------------------------------------


def test_load_empty_file_equals_builtin(tmp_path, registry):
    path = tmp_path / "empty.json"
    path.write_text("")
    assert registry_to_dict(load_registry(path)) == registry_to_dict(registry)


def test_load_override_wins(tmp_path, registry):
    path = tmp_path / "override.json"
    path.write_text(json.dumps({
        "specs": [{
            "class": "android.database.Cursor",
            "acquire": ["android.database.sqlite.SQLiteDatabase#rawQuery"],
            "release": ["android.database.Cursor#close"],
            "consequence": "I",
        }],
    }))
    reg = load_registry(path)
    assert len(reg.specs["android.database.Cursor"].release) == 1
    assert len(reg.specs) == 37


def test_load_duplicate_class_rejected(tmp_path):
    entry = {
        "class": "a.A", "acquire": ["a.A#<init>"], "release": ["a.A#close"],
        "consequence": "I",
    }
    path = tmp_path / "dup.json"
    path.write_text(json.dumps({"specs": [entry, entry]}))
    with pytest.raises(RegistryValidationError):
        load_registry(path)


def test_load_unknown_field_rejected(tmp_path):
    path = tmp_path / "unknown.json"
    path.write_text(json.dumps({
        "specs": [{
            "class": "a.A", "acquire": ["a.A#<init>"], "release": ["a.A#close"],
            "consequence": "I", "color": "red",
        }],
    }))
    with pytest.raises(RegistryFormatError) as exc:
        load_registry(path)
    assert "specs[0]" in str(exc.value)


def test_load_bad_json_has_line_locus(tmp_path):
    path = tmp_path / "broken.json"
    path.write_text('{"specs": [}')
    with pytest.raises(RegistryFormatError) as exc:
        load_registry(path)
    assert "line" in str(exc.value)


def test_load_missing_file_is_io_error(tmp_path):
    with pytest.raises(RegistryIOError):
        load_registry(tmp_path / "nope.json")


def test_roundtrip_builtin(tmp_path, registry):
    path = tmp_path / "dump.json"
    dump_registry(registry, path)
    reloaded = load_registry(path)
    assert registry_to_dict(reloaded) == registry_to_dict(registry)
    assert reloaded.lifecycle_pairs == registry.lifecycle_pairs


def test_roundtrip_with_extension(tmp_path, registry):
    registry = builtin_registry()
    registry.specs["com.example.Pool"] = ResourceSpec(
        class_name="com.example.Pool",
        acquire=(ApiSignature("com.example.Pool", "borrow"),),
        release=(ApiSignature("com.example.Pool", "give"),),
        consequence=Consequence.MEMORY_WASTE,
    )
    path = tmp_path / "ext.json"
    dump_registry(registry, path)
    assert registry_to_dict(load_registry(path)) == registry_to_dict(registry)
