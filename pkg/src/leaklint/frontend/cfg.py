"""Per-method control-flow graphs with branch, exception, and finally edges.

Every statement containing a call is treated as may-throw: it gets an
exception edge to the innermost handler chain (each catch of the enclosing
try), or through the enclosing finally blocks to the exceptional exit when
unhandled.  Finally blocks are duplicated per continuation route (normal
completion, exception propagation, return), so each copy lies on exactly
the paths that execute it; a copy ends in a region-exit anchor whose
outgoing edge carries the ``finally-resume`` label.

Returns route through the enclosing finally chain to the normal exit.
Loops contribute a loop-head node with true/false edges and a back edge;
the dataflow engine iterates them to a fixpoint.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from . import ir
from ..errors import MalformedIRError

SEQ = "seq"
TRUE = "true"
FALSE = "false"
EXCEPTION = "exception"
FINALLY_RESUME = "finally-resume"


@dataclass(frozen=True)
class Edge:
    src: int
    dst: int
    label: str


@dataclass
class Node:
    node_id: int
    kind: str  # entry | exit | xexit | stmt | if | loop | return | throw | catch | finally | region-exit
    stmt: object | None = None
    line: int = 0


@dataclass
class CFG:
    method: ir.MethodIR
    nodes: dict[int, Node] = field(default_factory=dict)
    edges: list[Edge] = field(default_factory=list)
    entry: int = 0
    normal_exit: int = 0
    exceptional_exit: int = 0

    def __post_init__(self):
        self._succ: dict[int, list[Edge]] | None = None
        self._pred: dict[int, list[Edge]] | None = None

    def _index(self):
        self._succ = {nid: [] for nid in self.nodes}
        self._pred = {nid: [] for nid in self.nodes}
        for edge in self.edges:
            self._succ[edge.src].append(edge)
            self._pred[edge.dst].append(edge)

    def out_edges(self, nid: int) -> list[Edge]:
        if self._succ is None:
            self._index()
        return self._succ[nid]

    def in_edges(self, nid: int) -> list[Edge]:
        if self._pred is None:
            self._index()
        return self._pred[nid]

    def successors(self, nid: int) -> list[int]:
        return [e.dst for e in self.out_edges(nid)]

    @property
    def exits(self) -> tuple[int, int]:
        return (self.normal_exit, self.exceptional_exit)

    def statement_nodes(self):
        for nid in sorted(self.nodes):
            node = self.nodes[nid]
            if node.kind in ("stmt", "if", "loop", "return", "throw"):
                yield node

    def reachable_from(self, start: int) -> set[int]:
        seen = {start}
        stack = [start]
        while stack:
            nid = stack.pop()
            for succ in self.successors(nid):
                if succ not in seen:
                    seen.add(succ)
                    stack.append(succ)
        return seen


class _Builder:
    def __init__(self, method: ir.MethodIR):
        self.method = method
        self.nodes: dict[int, Node] = {}
        self.edge_set: set[Edge] = set()
        self.edges: list[Edge] = []
        self.next_id = 0

    def new_node(self, kind: str, stmt=None, line: int = 0) -> int:
        nid = self.next_id
        self.next_id += 1
        self.nodes[nid] = Node(node_id=nid, kind=kind, stmt=stmt, line=line)
        return nid

    def add_edge(self, src: int, dst: int, label: str):
        edge = Edge(src, dst, label)
        if edge not in self.edge_set:
            self.edge_set.add(edge)
            self.edges.append(edge)

    def connect(self, frontier: list[tuple[int, str]], target: int):
        for nid, label in frontier:
            self.add_edge(nid, target, label)

    # -- recursive construction ------------------------------------------------

    def build(self) -> CFG:
        entry = self.new_node("entry")
        normal_exit = self.new_node("exit")
        exceptional_exit = self.new_node("xexit")
        ctx = {"exc": lambda: [exceptional_exit], "ret": lambda: normal_exit}
        frontier = self.build_seq(self.method.body, [(entry, SEQ)], ctx)
        self.connect(frontier, normal_exit)
        cfg = CFG(
            method=self.method,
            nodes=self.nodes,
            edges=self.edges,
            entry=entry,
            normal_exit=normal_exit,
            exceptional_exit=exceptional_exit,
        )
        _prune_unreachable(cfg)
        return cfg

    def build_seq(self, stmts, frontier, ctx):
        for stmt in stmts:
            if not frontier:
                break  # dead code after return/throw
            frontier = self.build_stmt(stmt, frontier, ctx)
        return frontier

    def build_stmt(self, stmt, frontier, ctx):
        if isinstance(stmt, ir.IfStmt):
            if stmt.cond is None:
                raise MalformedIRError(f"if without a condition at line {stmt.line}")
            node = self.new_node("if", stmt, stmt.line)
            self.connect(frontier, node)
            self._exception_edges(node, stmt, ctx)
            then_f = self.build_seq(stmt.then_body, [(node, TRUE)], ctx)
            else_f = self.build_seq(stmt.else_body, [(node, FALSE)], ctx)
            return then_f + else_f
        if isinstance(stmt, ir.LoopStmt):
            head = self.new_node("loop", stmt, stmt.line)
            self.connect(frontier, head)
            self._exception_edges(head, stmt, ctx)
            body_f = self.build_seq(stmt.body, [(head, TRUE)], ctx)
            self.connect(body_f, head)  # back edges
            return [(head, FALSE)]
        if isinstance(stmt, ir.TryStmt):
            return self.build_try(stmt, frontier, ctx)
        if isinstance(stmt, ir.ReturnStmt):
            node = self.new_node("return", stmt, stmt.line)
            self.connect(frontier, node)
            self._exception_edges(node, stmt, ctx)
            self.add_edge(node, ctx["ret"](), SEQ)
            return []
        if isinstance(stmt, ir.ThrowStmt):
            node = self.new_node("throw", stmt, stmt.line)
            self.connect(frontier, node)
            for target in ctx["exc"]():
                self.add_edge(node, target, EXCEPTION)
            return []
        node = self.new_node("stmt", stmt, stmt.line)
        self.connect(frontier, node)
        self._exception_edges(node, stmt, ctx)
        return [(node, SEQ)]

    def _exception_edges(self, node: int, stmt, ctx):
        if ir.stmt_may_throw(stmt):
            for target in ctx["exc"]():
                self.add_edge(node, target, EXCEPTION)

    def build_try(self, stmt: ir.TryStmt, frontier, ctx):
        outer_exc = ctx["exc"]
        outer_ret = ctx["ret"]
        has_finally = stmt.finally_body is not None
        memo: dict[str, int] = {}

        def finally_copy(key: str, continuations, resume_label=FINALLY_RESUME) -> int:
            """Build one copy of the finally block routed to `continuations`."""
            if key in memo:
                return memo[key]
            enter = self.new_node("finally", ir.Marker("FinallyEnter", stmt.line), stmt.line)
            memo[key] = enter
            inner_ctx = {"exc": outer_exc, "ret": outer_ret}
            f_frontier = self.build_seq(stmt.finally_body, [(enter, SEQ)], inner_ctx)
            rx = self.new_node("region-exit", ir.Marker("RegionExit", stmt.line), stmt.line)
            self.connect(f_frontier, rx)
            for target in continuations():
                self.add_edge(rx, target, resume_label)
            return enter

        def exc_targets_after_body():
            if stmt.catches:
                return catch_nodes
            if has_finally:
                return [finally_copy("exc", outer_exc)]
            return outer_exc()

        def exc_targets_after_catch():
            if has_finally:
                return [finally_copy("exc", outer_exc)]
            return outer_exc()

        def ret_target():
            if has_finally:
                return finally_copy("ret", lambda: [outer_ret()])
            return outer_ret()

        catch_nodes = [
            self.new_node("catch", ir.Marker("CatchEnter", c.line), c.line) for c in stmt.catches
        ]

        body_ctx = {"exc": exc_targets_after_body, "ret": ret_target}
        body_frontier = self.build_seq(stmt.body, frontier, body_ctx)

        catch_ctx = {"exc": exc_targets_after_catch, "ret": ret_target}
        normal_frontier = list(body_frontier)
        for cnode, clause in zip(catch_nodes, stmt.catches):
            normal_frontier += self.build_seq(clause.body, [(cnode, SEQ)], catch_ctx)

        if not has_finally:
            return normal_frontier
        if not normal_frontier:
            return []  # every route returns or throws; finally copies already built
        enter = self.new_node("finally", ir.Marker("FinallyEnter", stmt.line), stmt.line)
        inner_ctx = {"exc": outer_exc, "ret": outer_ret}
        f_frontier = self.build_seq(stmt.finally_body, [(enter, SEQ)], inner_ctx)
        rx = self.new_node("region-exit", ir.Marker("RegionExit", stmt.line), stmt.line)
        self.connect(f_frontier, rx)
        self.connect(normal_frontier, enter)
        return [(rx, FINALLY_RESUME)]


def _prune_unreachable(cfg: CFG):
    keep = cfg.reachable_from(cfg.entry)
    keep.add(cfg.normal_exit)
    keep.add(cfg.exceptional_exit)
    cfg.nodes = {nid: node for nid, node in cfg.nodes.items() if nid in keep}
    cfg.edges = [e for e in cfg.edges if e.src in keep and e.dst in keep]
    cfg._succ = None
    cfg._pred = None


def build_cfg(method: ir.MethodIR) -> CFG:
    """Control-flow graph for one method body."""
    return _Builder(method).build()
