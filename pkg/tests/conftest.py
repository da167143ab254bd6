import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from leaklint.frontend import build_cfg, parse_unit
from leaklint.registry import builtin_registry

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")
BUGGY_DIR = os.path.join(FIXTURES, "buggy")
CLEAN_DIR = os.path.join(FIXTURES, "clean")
EXTENT_DIR = os.path.join(FIXTURES, "extent")


@pytest.fixture(scope="session")
def registry():
    return builtin_registry()


def parse_method(source: str, path: str = "Test.java"):
    """First method of the first class of the given source."""
    unit = parse_unit(source, path)
    return unit.classes[0].methods[0]


def method_cfg(source: str):
    return build_cfg(parse_method(source))


def wrap_method(body: str, params: str = "SQLiteDatabase db, boolean flag") -> str:
    return "class T { void m(%s) { %s } }" % (params, body)


def fixture_files(directory: str):
    return sorted(
        os.path.join(directory, name)
        for name in os.listdir(directory)
        if name.endswith(".java")
    )


def all_fixture_methods():
    """(path, class_decl, method) for every method in the fixture corpus."""
    out = []
    for directory in (BUGGY_DIR, CLEAN_DIR, EXTENT_DIR):
        for path in fixture_files(directory):
            with open(path, "r", encoding="utf-8") as fh:
                unit = parse_unit(fh.read(), path)
            for class_decl in unit.classes:
                for method in class_decl.methods:
                    out.append((path, class_decl, method))
    return out
