"""Static resource-leak analysis for Android/Java source code.

The package bundles a resource catalog, a Java-subset frontend with
exception-aware control-flow graphs, a forward dataflow engine, seven
pattern checkers, a leak-fix commit miner, and a benchmark scorer.
"""

__version__ = "0.1.0"

from .registry import (  # noqa: F401
    ApiSignature,
    Consequence,
    Registry,
    ResourceSpec,
    builtin_registry,
    load_registry,
    match_acquire,
    match_release,
)
from .dataflow import (  # noqa: F401
    AbstractState,
    Binding,
    LeakExtent,
    analyze,
    brute_force_paths,
    classify_extent,
    leaks_at_exit,
)
from .checkers import CHECKER_IDS, Finding, run_all, scan_source  # noqa: F401
from .mining import CandidateCommit, CommitRecord, MiningConfig, mine  # noqa: F401
from .porter import stem_word  # noqa: F401
from .bench import ManifestEntry, evaluate, load_manifest, stats  # noqa: F401
