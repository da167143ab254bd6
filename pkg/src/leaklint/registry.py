"""Catalog of leakable resource classes and their acquire/release APIs.

The registry maps Java classes to the API calls that acquire and release
them, together with per-class semantics used by the analysis:

* ``counted``       -- release calls must numerically balance acquire calls
                       (wake locks and Wi-Fi locks are reference counted by
                       default, semaphores hold permits).
* ``exclusive``     -- only one client may hold the resource at a time, so a
                       leak blocks every other client (camera, semaphore).
* ``closes_wrapped``-- releasing this object transitively releases resource
                       objects passed to its constructor (decorator streams
                       such as BufferedReader).

Signatures are written ``receiver#method`` or ``receiver#method/arity``.
The receiver is a fully qualified class name or ``*``; ``*`` signatures
match by method name alone and yield low-confidence results downstream.
Constructors use the method name ``<init>``.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass, field

from .errors import (
    AmbiguousMatchError,
    RegistryFormatError,
    RegistryIOError,
    RegistryValidationError,
)

WILDCARD = "*"
CONSTRUCTOR = "<init>"


class Consequence(enum.Enum):
    """What leaking this resource costs: memory, energy, or functionality."""

    MEMORY_WASTE = "I"
    ENERGY_WASTE = "II"
    FUNCTIONALITY_LOSS = "III"

    @classmethod
    def from_mark(cls, mark: str) -> "Consequence":
        try:
            return cls(mark)
        except ValueError:
            raise RegistryFormatError(f"unknown consequence mark {mark!r}") from None


@dataclass(frozen=True)
class ApiSignature:
    """One acquire or release API: receiver class (or ``*``), name, optional arity."""

    receiver: str
    method: str
    arity: int | None = None

    def __post_init__(self):
        if not self.method:
            raise RegistryValidationError("signature method name must be non-empty")
        if not self.receiver:
            raise RegistryValidationError(
                f"signature receiver for {self.method!r} must be non-empty or '*'"
            )
        if self.arity is not None and self.arity < 0:
            raise RegistryValidationError(f"negative arity on {self.method!r}")

    @classmethod
    def parse(cls, text: str) -> "ApiSignature":
        """Parse the ``receiver#method`` / ``receiver#method/arity`` form."""
        receiver, sep, rest = text.partition("#")
        if not sep:
            raise RegistryFormatError(f"signature {text!r} lacks a '#' separator")
        method, sep, arity_text = rest.partition("/")
        arity = None
        if sep:
            try:
                arity = int(arity_text)
            except ValueError:
                raise RegistryFormatError(f"bad arity in signature {text!r}") from None
        return cls(receiver, method, arity)

    def unparse(self) -> str:
        base = f"{self.receiver}#{self.method}"
        return f"{base}/{self.arity}" if self.arity is not None else base


def _declared_type_matches(declared: str, fqn: str) -> bool:
    """True when a declared source type plausibly denotes the registry class.

    Declared types are usually simple (``Cursor``) or partially qualified
    (``PowerManager.WakeLock``); registry classes are fully qualified.
    """
    return declared == fqn or fqn.endswith("." + declared)


@dataclass(frozen=True)
class ResourceSpec:
    """All registry knowledge about one resource class."""

    class_name: str
    acquire: tuple[ApiSignature, ...]
    release: tuple[ApiSignature, ...]
    consequence: Consequence
    counted: bool = False
    exclusive: bool = False
    closes_wrapped: bool = False

    def __post_init__(self):
        if not self.class_name:
            raise RegistryValidationError("spec class name must be non-empty")
        if not self.acquire:
            raise RegistryValidationError(f"{self.class_name}: empty acquire list")
        if not self.release:
            raise RegistryValidationError(f"{self.class_name}: empty release list")


@dataclass(frozen=True)
class SigMatch:
    """A resolved call-site match: the owning spec plus the signature that hit."""

    spec: ResourceSpec
    signature: ApiSignature

    @property
    def wildcard(self) -> bool:
        return self.signature.receiver == WILDCARD


@dataclass
class Registry:
    """Immutable-after-load collection of ResourceSpecs plus lifecycle pairs."""

    specs: dict[str, ResourceSpec] = field(default_factory=dict)
    lifecycle_pairs: list[tuple[str, str]] = field(default_factory=list)

    def validate(self) -> None:
        if len(set(self.lifecycle_pairs)) != len(self.lifecycle_pairs):
            raise RegistryValidationError("duplicate lifecycle pairs")
        for name, spec in self.specs.items():
            if name != spec.class_name:
                raise RegistryValidationError(f"spec keyed under wrong name: {name}")

    # -- call-site matching --------------------------------------------------

    def _match(self, site: ApiSignature, side: str) -> SigMatch | None:
        hits: list[SigMatch] = []
        for spec in self.specs.values():
            sigs = spec.acquire if side == "acquire" else spec.release
            best: ApiSignature | None = None
            for sig in sigs:
                if sig.method != site.method:
                    continue
                if sig.arity is not None and site.arity is not None and sig.arity != site.arity:
                    continue
                if site.receiver == WILDCARD:
                    # Unknown receiver type: only name-directed signatures apply.
                    if sig.receiver != WILDCARD:
                        continue
                elif sig.receiver != WILDCARD and not _declared_type_matches(
                    site.receiver, sig.receiver
                ):
                    continue
                # Prefer a typed hit over a wildcard hit within one spec.
                if best is None or (best.receiver == WILDCARD and sig.receiver != WILDCARD):
                    best = sig
            if best is not None:
                hits.append(SigMatch(spec, best))
        if not hits:
            return None
        if len(hits) > 1:
            names = ", ".join(sorted(m.spec.class_name for m in hits))
            raise AmbiguousMatchError(
                f"{side} call {site.unparse()} matches multiple specs: {names}"
            )
        return hits[0]

    def acquire_match(self, site: ApiSignature) -> SigMatch | None:
        return self._match(site, "acquire")

    def release_match(self, site: ApiSignature) -> SigMatch | None:
        return self._match(site, "release")

    def spec_for_type(self, declared: str) -> ResourceSpec | None:
        """Spec whose class the declared source type denotes, if any."""
        for spec in self.specs.values():
            if _declared_type_matches(declared, spec.class_name):
                return spec
        return None

    def lifecycle_role(self, method_name: str) -> tuple[int, str] | None:
        """(pair index, 'acquirer'|'releaser') when the name is a lifecycle callback."""
        for i, (acq, rel) in enumerate(self.lifecycle_pairs):
            if method_name == acq:
                return (i, "acquirer")
            if method_name == rel:
                return (i, "releaser")
        return None


def match_acquire(reg: Registry, site: ApiSignature) -> ResourceSpec | None:
    """Spec acquired by the given call site, or None."""
    m = reg.acquire_match(site)
    return m.spec if m else None


def match_release(reg: Registry, site: ApiSignature) -> ResourceSpec | None:
    """Spec released by the given call site, or None."""
    m = reg.release_match(site)
    return m.spec if m else None


# ---------------------------------------------------------------------------
# Built-in catalog.
#
# Release-side names cover the standard teardown APIs plus the full keyword
# set used by the diff miner, so that every mined release name resolves to a
# spec.  Acquire pairings are taken from the Android SDK and JDK reference
# documentation; the source is noted per entry.
# ---------------------------------------------------------------------------

_I = Consequence.MEMORY_WASTE
_II = Consequence.ENERGY_WASTE
_III = Consequence.FUNCTIONALITY_LOSS


def _spec(cls, acquire, release, consequence, counted=False, exclusive=False, wraps=False):
    return ResourceSpec(
        class_name=cls,
        acquire=tuple(ApiSignature.parse(s) for s in acquire),
        release=tuple(ApiSignature.parse(s) for s in release),
        consequence=consequence,
        counted=counted,
        exclusive=exclusive,
        closes_wrapped=wraps,
    )


def _stream(cls, acquire, wraps=False, extra_release=()):
    return _spec(cls, acquire, [f"{cls}#close", *extra_release], _I, wraps=wraps)


_BUILTIN_SPECS = [
    # --- Android platform resources ---
    # SQLiteDatabase.query/rawQuery[WithFactory] and ContentResolver/
    # ContentProviderClient.query return Cursor; Activity.managedQuery is the
    # deprecated pre-Honeycomb form (Android SDK reference).
    _spec(
        "android.database.Cursor",
        [
            "android.database.sqlite.SQLiteDatabase#query",
            "android.database.sqlite.SQLiteDatabase#rawQuery",
            "android.database.sqlite.SQLiteDatabase#queryWithFactory",
            "android.database.sqlite.SQLiteDatabase#rawQueryWithFactory",
            "android.content.ContentResolver#query",
            "android.content.ContentProviderClient#query",
            "android.app.Activity#managedQuery",
            "*#query",
            "*#rawQuery",
            "*#managedQuery",
        ],
        ["android.database.Cursor#close"],
        _I,
    ),
    # SQLiteOpenHelper.get{Writable,Readable}Database and the static
    # SQLiteDatabase.open* factories return SQLiteDatabase (Android SDK).
    _spec(
        "android.database.sqlite.SQLiteDatabase",
        [
            "android.database.sqlite.SQLiteOpenHelper#getWritableDatabase",
            "android.database.sqlite.SQLiteOpenHelper#getReadableDatabase",
            "android.database.sqlite.SQLiteDatabase#openDatabase",
            "android.database.sqlite.SQLiteDatabase#openOrCreateDatabase",
            "android.content.Context#openOrCreateDatabase",
        ],
        ["android.database.sqlite.SQLiteDatabase#close"],
        _I,
    ),
    # PowerManager.newWakeLock creates an *unheld* lock; only acquire() takes
    # the resource, and locks are reference counted by default (Android SDK).
    _spec(
        "android.os.PowerManager.WakeLock",
        ["android.os.PowerManager.WakeLock#acquire"],
        ["android.os.PowerManager.WakeLock#release"],
        _II,
        counted=True,
    ),
    # MediaPlayer is constructed or obtained via the static create() factory;
    # stop() is kept as a mined release alias alongside release() (Android SDK).
    _spec(
        "android.media.MediaPlayer",
        ["android.media.MediaPlayer#<init>", "android.media.MediaPlayer#create"],
        [
            "android.media.MediaPlayer#release",
            "android.media.MediaPlayer#stop",
            # Audio focus is abandoned on AudioManager, which has no catalog
            # entry of its own; the name is owned here so mined release names
            # always resolve.
            "*#abandonAudioFocus",
        ],
        _I,
    ),
    # WifiManager.createWifiLock creates an unheld lock; acquire() takes it
    # and locks are reference counted by default (Android SDK).
    _spec(
        "android.net.wifi.WifiManager.WifiLock",
        ["android.net.wifi.WifiManager.WifiLock#acquire"],
        [
            "android.net.wifi.WifiManager.WifiLock#release",
            # WifiManager teardown alias for mined names (see above).
            "*#disableNetwork",
        ],
        _II,
        counted=True,
    ),
    # Listener registration model: LocationManager.requestLocationUpdates
    # acquires the listener passed as an argument, removeUpdates releases it
    # (Android SDK).  unregisterListener/cancel are kept as generic listener
    # teardown aliases.
    _spec(
        "android.location.LocationListener",
        [
            "android.location.LocationManager#requestLocationUpdates",
            "*#requestLocationUpdates",
        ],
        [
            "android.location.LocationManager#removeUpdates",
            "*#removeUpdates",
            "*#unregisterListener",
            "*#cancel",
        ],
        _II,
    ),
    _spec(
        "android.database.sqlite.SQLiteOpenHelper",
        ["android.database.sqlite.SQLiteOpenHelper#<init>"],
        ["android.database.sqlite.SQLiteOpenHelper#close"],
        _I,
    ),
    # MotionEvent/Parcel use obtain()/recycle() pooling (Android SDK).
    _spec(
        "android.view.MotionEvent",
        ["android.view.MotionEvent#obtain", "android.view.MotionEvent#obtainNoHistory"],
        ["android.view.MotionEvent#recycle"],
        _I,
    ),
    _spec(
        "android.os.ParcelFileDescriptor",
        [
            "android.os.ParcelFileDescriptor#open",
            "android.os.ParcelFileDescriptor#dup",
            "android.content.ContentResolver#openFileDescriptor",
        ],
        ["android.os.ParcelFileDescriptor#close"],
        _I,
    ),
    _spec(
        "android.os.Parcel",
        ["android.os.Parcel#obtain"],
        ["android.os.Parcel#recycle"],
        _I,
    ),
    # Camera.open returns the (exclusive) camera; unlock/stopPreview/
    # stopFaceDetection are real Camera teardown APIs (Android SDK).
    _spec(
        "android.hardware.Camera",
        ["android.hardware.Camera#open"],
        [
            "android.hardware.Camera#release",
            "android.hardware.Camera#unlock",
            "android.hardware.Camera#stopPreview",
            "android.hardware.Camera#stopFaceDetection",
        ],
        _III,
        exclusive=True,
    ),
    # --- General Java platform resources ---
    # Producer APIs returning InputStream: URL/URLConnection/Socket/Process/
    # ContentResolver/AssetManager (JDK and Android SDK reference).
    _stream(
        "java.io.InputStream",
        [
            "java.net.URL#openStream",
            "java.net.URLConnection#getInputStream",
            "java.net.Socket#getInputStream",
            "java.lang.Process#getInputStream",
            "android.content.ContentResolver#openInputStream",
            "android.content.res.AssetManager#open",
            "*#openStream",
            "*#openInputStream",
        ],
    ),
    _stream(
        "java.io.FileInputStream",
        [
            "java.io.FileInputStream#<init>",
            "android.content.Context#openFileInput",
            "*#openFileInput",
        ],
    ),
    _stream(
        "java.io.FileOutputStream",
        [
            "java.io.FileOutputStream#<init>",
            "android.content.Context#openFileOutput",
            "*#openFileOutput",
        ],
    ),
    _stream("java.io.BufferedReader", ["java.io.BufferedReader#<init>"], wraps=True),
    _stream("java.io.FilterOutputStream", ["java.io.FilterOutputStream#<init>"], wraps=True),
    _stream(
        "java.io.OutputStream",
        [
            "java.net.Socket#getOutputStream",
            "java.net.URLConnection#getOutputStream",
            "java.lang.Process#getOutputStream",
            "android.content.ContentResolver#openOutputStream",
            "*#openOutputStream",
        ],
    ),
    _stream("java.io.FilterInputStream", ["java.io.FilterInputStream#<init>"], wraps=True),
    _stream(
        "org.apache.http.impl.client.DefaultHttpClient",
        ["org.apache.http.impl.client.DefaultHttpClient#<init>"],
    ),
    _stream("java.io.BufferedOutputStream", ["java.io.BufferedOutputStream#<init>"], wraps=True),
    # Semaphore permits must be balanced and block other acquirers (JDK).
    _spec(
        "java.util.concurrent.Semaphore",
        [
            "java.util.concurrent.Semaphore#acquire",
            "java.util.concurrent.Semaphore#acquireUninterruptibly",
        ],
        ["java.util.concurrent.Semaphore#release"],
        _III,
        counted=True,
        exclusive=True,
    ),
    _stream("java.io.BufferedWriter", ["java.io.BufferedWriter#<init>"], wraps=True),
    _stream("java.io.ByteArrayOutputStream", ["java.io.ByteArrayOutputStream#<init>"]),
    # FileWriter is the convenience subclass of OutputStreamWriter (JDK).
    _stream(
        "java.io.OutputStreamWriter",
        ["java.io.OutputStreamWriter#<init>", "java.io.FileWriter#<init>"],
        wraps=True,
    ),
    _stream(
        "java.net.Socket",
        [
            "java.net.Socket#<init>",
            "javax.net.SocketFactory#createSocket",
            "java.net.ServerSocket#accept",
        ],
    ),
    _stream("java.util.Scanner", ["java.util.Scanner#<init>"]),
    # AndroidHttpClient.newInstance is the platform factory (Android SDK).
    _stream(
        "org.apache.http.impl.client.HttpClient",
        [
            "org.apache.http.impl.client.HttpClient#<init>",
            "android.net.http.AndroidHttpClient#newInstance",
        ],
    ),
    _stream("java.io.ObjectInputStream", ["java.io.ObjectInputStream#<init>"], wraps=True),
    _stream("java.io.ObjectOutputStream", ["java.io.ObjectOutputStream#<init>"], wraps=True),
    _stream("java.io.PipedOutputStream", ["java.io.PipedOutputStream#<init>"]),
    _stream(
        "com.fasterxml.jackson.core.JsonParser",
        [
            "com.fasterxml.jackson.core.JsonFactory#createParser",
            "com.fasterxml.jackson.core.JsonFactory#createJsonParser",
        ],
    ),
    _stream("com.google.gson.JsonParser", ["com.google.gson.JsonParser#<init>"]),
    _stream("java.io.DataOutputStream", ["java.io.DataOutputStream#<init>"]),
    # FileReader is the convenience subclass of InputStreamReader (JDK).
    _stream(
        "java.io.InputStreamReader",
        ["java.io.InputStreamReader#<init>", "java.io.FileReader#<init>"],
        wraps=True,
    ),
    _stream("java.io.PipedInputStream", ["java.io.PipedInputStream#<init>"]),
    _stream("java.util.Formatter", ["java.util.Formatter#<init>"]),
    _stream("java.util.logging.FileHandler", ["java.util.logging.FileHandler#<init>"]),
]

_BUILTIN_LIFECYCLE_PAIRS = [
    ("onCreate", "onDestroy"),
    ("onStart", "onStop"),
    ("onResume", "onPause"),
    ("surfaceCreated", "surfaceDestroyed"),
]


def builtin_registry() -> Registry:
    """Fresh Registry populated with the built-in catalog."""
    reg = Registry(
        specs={spec.class_name: spec for spec in _BUILTIN_SPECS},
        lifecycle_pairs=list(_BUILTIN_LIFECYCLE_PAIRS),
    )
    reg.validate()
    return reg


# ---------------------------------------------------------------------------
# Registry file format: a JSON object with `specs` (list of entries) and
# `lifecycle_pairs` (list of two-element lists).  Entry fields are exactly
# class/acquire/release/counted/exclusive/closes_wrapped/consequence; unknown
# fields are rejected.  File entries override built-in entries by class name.
# ---------------------------------------------------------------------------

_ENTRY_FIELDS = {"class", "acquire", "release", "counted", "exclusive", "closes_wrapped", "consequence"}
_REQUIRED_FIELDS = {"class", "acquire", "release", "consequence"}


def _entry_to_spec(entry: dict, index: int) -> ResourceSpec:
    locus = f"specs[{index}]"
    if not isinstance(entry, dict):
        raise RegistryFormatError("spec entry is not an object", locus)
    unknown = set(entry) - _ENTRY_FIELDS
    if unknown:
        raise RegistryFormatError(f"unknown fields {sorted(unknown)}", locus)
    missing = _REQUIRED_FIELDS - set(entry)
    if missing:
        raise RegistryFormatError(f"missing fields {sorted(missing)}", locus)
    for key in ("acquire", "release"):
        if not isinstance(entry[key], list) or not all(isinstance(s, str) for s in entry[key]):
            raise RegistryFormatError(f"{key} must be a list of strings", locus)
    try:
        return ResourceSpec(
            class_name=entry["class"],
            acquire=tuple(ApiSignature.parse(s) for s in entry["acquire"]),
            release=tuple(ApiSignature.parse(s) for s in entry["release"]),
            consequence=Consequence.from_mark(entry["consequence"]),
            counted=bool(entry.get("counted", False)),
            exclusive=bool(entry.get("exclusive", False)),
            closes_wrapped=bool(entry.get("closes_wrapped", False)),
        )
    except (RegistryFormatError, RegistryValidationError) as exc:
        raise type(exc)(f"{locus}: {exc}") from None


def registry_to_dict(reg: Registry) -> dict:
    """Serialize to the registry file structure (inverse of load_registry)."""
    return {
        "specs": [
            {
                "class": spec.class_name,
                "acquire": [s.unparse() for s in spec.acquire],
                "release": [s.unparse() for s in spec.release],
                "counted": spec.counted,
                "exclusive": spec.exclusive,
                "closes_wrapped": spec.closes_wrapped,
                "consequence": spec.consequence.value,
            }
            for spec in sorted(reg.specs.values(), key=lambda s: s.class_name)
        ],
        "lifecycle_pairs": [list(pair) for pair in reg.lifecycle_pairs],
    }


def registry_digest(reg: Registry) -> str:
    import hashlib

    blob = json.dumps(registry_to_dict(reg), sort_keys=True).encode("utf-8")
    return hashlib.sha256(blob).hexdigest()


def dump_registry(reg: Registry, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        json.dump(registry_to_dict(reg), fh, indent=2)
        fh.write("\n")


def load_registry(path) -> Registry:
    """Load a registry file and merge it over the built-in defaults."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            text = fh.read()
    except OSError as exc:
        raise RegistryIOError(f"cannot read registry {path}: {exc}") from exc
    try:
        doc = json.loads(text) if text.strip() else {}
    except json.JSONDecodeError as exc:
        raise RegistryFormatError(f"invalid JSON: {exc.msg}", f"line {exc.lineno}") from None
    if not isinstance(doc, dict):
        raise RegistryFormatError("top level must be an object")
    unknown = set(doc) - {"specs", "lifecycle_pairs"}
    if unknown:
        raise RegistryFormatError(f"unknown top-level fields {sorted(unknown)}")

    reg = builtin_registry()
    seen: set[str] = set()
    entries = doc.get("specs", [])
    if not isinstance(entries, list):
        raise RegistryFormatError("specs must be a list")
    for i, entry in enumerate(entries):
        spec = _entry_to_spec(entry, i)
        if spec.class_name in seen:
            raise RegistryValidationError(f"duplicate class {spec.class_name!r} in file")
        seen.add(spec.class_name)
        reg.specs[spec.class_name] = spec

    pairs = doc.get("lifecycle_pairs")
    if pairs is not None:
        if not isinstance(pairs, list) or not all(
            isinstance(p, list) and len(p) == 2 and all(isinstance(x, str) for x in p)
            for p in pairs
        ):
            raise RegistryFormatError("lifecycle_pairs must be a list of string pairs")
        reg.lifecycle_pairs = [tuple(p) for p in pairs]
    reg.validate()
    return reg
