"""Java-subset frontend: parser, per-method IR, and control-flow graphs."""

from . import ir  # noqa: F401
from .cfg import CFG, Edge, Node, build_cfg  # noqa: F401
from .lexer import tokenize  # noqa: F401
from .parser import parse_unit  # noqa: F401


def lifecycle_role(method, registry):
    """(pair index, 'acquirer'|'releaser') when the method is a lifecycle callback."""
    name = method.name if hasattr(method, "name") else str(method)
    return registry.lifecycle_role(name)
